//! The validation suite: every acceptance criterion as a runnable check.
//!
//! The same checks back the `validate` CLI subcommand and the acceptance
//! integration tests. `Fast` trims instance counts to keep the whole suite
//! around a minute; `Full` runs the complete grids. Tolerances are fixed
//! here, not configurable.

use num_complex::Complex64;

use crate::forward::{
    far_field_single, fibonacci_sphere, modal_coefficients, modal_coefficients_up_to,
    scattered_field, scattered_field_dr, transmitted_field, transmitted_field_dr, uniform_circle,
    BallMedium, Dimension, Layer, Profile, ScatteringConfig,
};
use crate::geom::{add, dot, scale, Point};
use crate::inverse::{
    invert_ball_and_n, invert_constant_n, invert_layered_profile, uniqueness_probe, InverseBounds,
    InverseModel, InversionTask, RecoveredModel,
};
use crate::ite::{
    greens_identity_residual, k0_bounds, lemma32_verify, scan_spectrum, ITEProblem,
};
use crate::numerics::SplitMix64;
use crate::specialfn::{
    cyl_jy_real_seq, double_factorial, ln_double_factorial, sph_bessel_j, sph_bessel_j_prime,
    sph_bessel_j_prime_seq, sph_bessel_j_seq, sph_hankel1, sph_neumann_seq,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} — {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

fn outcome(
    id: &'static str,
    name: &'static str,
    started: std::time::Instant,
    failures: Vec<String>,
    summary: String,
) -> CheckOutcome {
    CheckOutcome {
        id,
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            summary
        } else {
            failures.join("; ")
        },
        seconds: started.elapsed().as_secs_f64(),
    }
}

struct ForwardCase {
    label: &'static str,
    cfg: ScatteringConfig,
    med: BallMedium,
}

fn forward_cases(suite: Suite) -> Vec<ForwardCase> {
    let c3 = |k: f64| ScatteringConfig::new(k, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
    let c2 = |k: f64| ScatteringConfig::new(k, [1.0, 0.0, 0.0], Dimension::Two).unwrap();
    let n = |re: f64, im: f64| Complex64::new(re, im);
    let layered = |r1: f64, n1: Complex64, r2: f64, n2: Complex64| {
        Profile::Layered(vec![
            Layer {
                outer_radius: r1,
                n: n1,
            },
            Layer {
                outer_radius: r2,
                n: n2,
            },
        ])
    };
    let mut cases = vec![
        ForwardCase {
            label: "3d-reference",
            cfg: c3(1.0),
            med: BallMedium::constant([0.0; 3], 1.0, n(2.0, 0.0)).unwrap(),
        },
        ForwardCase {
            label: "3d-offcenter",
            cfg: c3(2.0),
            med: BallMedium::constant([0.3, -0.2, 0.1], 0.8, n(1.5, 0.0)).unwrap(),
        },
        ForwardCase {
            label: "2d-reference",
            cfg: c2(1.0),
            med: BallMedium::constant([0.0; 3], 1.0, n(2.0, 0.0)).unwrap(),
        },
        ForwardCase {
            label: "3d-absorbing",
            cfg: c3(0.7),
            med: BallMedium::constant([0.0; 3], 1.2, n(1.7, 0.3)).unwrap(),
        },
    ];
    if suite == Suite::Full {
        cases.extend([
            ForwardCase {
                label: "3d-soundsoft",
                cfg: c3(1.5),
                med: BallMedium::sound_soft([0.0; 3], 1.0).unwrap(),
            },
            ForwardCase {
                label: "3d-layered",
                cfg: c3(1.0),
                med: BallMedium::new([0.0; 3], 1.0, layered(0.5, n(1.8, 0.0), 1.0, n(1.3, 0.0)))
                    .unwrap(),
            },
            ForwardCase {
                label: "2d-absorbing-offcenter",
                cfg: c2(0.9),
                med: BallMedium::constant([0.2, 0.1, 0.0], 0.7, n(1.4, 0.2)).unwrap(),
            },
            ForwardCase {
                label: "2d-soundsoft",
                cfg: c2(1.2),
                med: BallMedium::sound_soft([0.0; 3], 1.0).unwrap(),
            },
            ForwardCase {
                label: "2d-layered",
                cfg: c2(0.8),
                med: BallMedium::new([0.0; 3], 1.0, layered(0.6, n(1.6, 0.0), 1.0, n(1.2, 0.0)))
                    .unwrap(),
            },
            ForwardCase {
                label: "3d-high-k",
                cfg: c3(2.2),
                med: BallMedium::constant([0.0, 0.0, 0.4], 1.0, n(1.3, 0.0)).unwrap(),
            },
        ]);
    }
    cases
}

fn probe_direction(dim: Dimension) -> Point {
    match dim {
        Dimension::Three => [0.48, 0.6, 0.64],
        Dimension::Two => [0.6, 0.8, 0.0],
    }
}

/// AC1: large-radius extraction of the far field decays at rate O(1/r).
pub fn criterion_1(suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    let cases = forward_cases(suite);
    let count = cases.len();
    for case in &cases {
        let mc = match modal_coefficients(&case.cfg, &case.med, 1e-12) {
            Ok(mc) => mc,
            Err(e) => {
                failures.push(format!("{}: {e}", case.label));
                continue;
            }
        };
        let xhat = probe_direction(case.cfg.dim);
        let uinf = far_field_single(&mc, &case.cfg, &case.med, &xhat);
        let pw = (case.cfg.dim.ambient() as f64 - 1.0) / 2.0;
        let mut errs = Vec::new();
        for factor in [1.0e3, 2.0e3, 4.0e3] {
            // extraction is anchored at the origin: x = r x̂, phase e^{-ikr}
            let r = factor * case.med.radius;
            let x = scale(&xhat, r);
            let us = scattered_field(&mc, &case.cfg, &case.med, &x).unwrap();
            let extracted = us * r.powf(pw) * (-Complex64::i() * case.cfg.k * r).exp();
            errs.push((extracted - uinf).norm());
        }
        for pair in errs.windows(2) {
            let rate = (pair[0] / pair[1]).log2();
            if !(0.8..=1.2).contains(&rate) {
                failures.push(format!(
                    "{}: extraction rate {rate:.3} outside [0.8, 1.2] (errs {errs:?})",
                    case.label
                ));
            }
        }
    }
    outcome(
        "AC1",
        "far-field extraction rate",
        started,
        failures,
        format!("{count} configurations, all extraction rates in [0.8, 1.2]"),
    )
}

/// AC2: finite-difference Helmholtz residual order in [1.8, 2.2] inside and
/// outside; interface jumps below 1e-8 relative.
pub fn criterion_2(suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    let cases = forward_cases(suite);
    let count = cases.len();
    for case in &cases {
        let mc = modal_coefficients(&case.cfg, &case.med, 1e-13).unwrap();
        let cfg = &case.cfg;
        let med = &case.med;
        let k = cfg.k;

        // PDE residual orders (skip the interior for sound-soft)
        let ext_field = |p: &Point| scattered_field(&mc, cfg, med, p).unwrap();
        let x_out = add(&med.center, &scale(&probe_direction(cfg.dim), 1.9 * med.radius));
        let r1 =
            crate::numerics::fd_helmholtz_residual(&ext_field, &x_out, cfg.dim, k, 1.0.into(), 2e-2)
                .norm();
        let r2 =
            crate::numerics::fd_helmholtz_residual(&ext_field, &x_out, cfg.dim, k, 1.0.into(), 1e-2)
                .norm();
        let order = crate::numerics::empirical_order(r1, r2);
        if !(1.8..=2.2).contains(&order) {
            failures.push(format!("{}: exterior order {order:.3}", case.label));
        }
        if let Profile::Constant(n) = med.profile {
            let int_field = |p: &Point| transmitted_field(&mc, cfg, med, p).unwrap();
            let x_in = add(&med.center, &scale(&probe_direction(cfg.dim), 0.35 * med.radius));
            let r1 = crate::numerics::fd_helmholtz_residual(&int_field, &x_in, cfg.dim, k, n, 2e-2)
                .norm();
            let r2 = crate::numerics::fd_helmholtz_residual(&int_field, &x_in, cfg.dim, k, n, 1e-2)
                .norm();
            let order = crate::numerics::empirical_order(r1, r2);
            if !(1.8..=2.2).contains(&order) {
                failures.push(format!("{}: interior order {order:.3}", case.label));
            }
        }

        // interface jumps measured a relative 1e-13 off the boundary
        let delta = 1e-13 * med.radius;
        let dirhat = probe_direction(cfg.dim);
        let x_in = add(&med.center, &scale(&dirhat, med.radius - delta));
        let x_out = add(&med.center, &scale(&dirhat, med.radius + delta));
        let incident = (Complex64::i() * k * dot(&x_out, &cfg.d)).exp();
        let u_out = incident + scattered_field(&mc, cfg, med, &x_out).unwrap();
        match med.profile {
            Profile::SoundSoft => {
                if u_out.norm() > 1e-8 {
                    failures.push(format!(
                        "{}: Dirichlet boundary value {:.3e}",
                        case.label,
                        u_out.norm()
                    ));
                }
            }
            _ => {
                let u_in = transmitted_field(&mc, cfg, med, &x_in).unwrap();
                let scale_u = u_out.norm().max(1.0);
                if (u_in - u_out).norm() / scale_u > 1e-8 {
                    failures.push(format!(
                        "{}: value jump {:.3e}",
                        case.label,
                        (u_in - u_out).norm() / scale_u
                    ));
                }
                let du_in = transmitted_field_dr(&mc, cfg, med, &x_in).unwrap();
                let d_incident =
                    Complex64::i() * k * dot(&dirhat, &cfg.d) * incident;
                let du_out = d_incident + scattered_field_dr(&mc, cfg, med, &x_out).unwrap();
                let scale_du = du_out.norm().max(k);
                if (du_in - du_out).norm() / scale_du > 1e-8 {
                    failures.push(format!(
                        "{}: derivative jump {:.3e}",
                        case.label,
                        (du_in - du_out).norm() / scale_du
                    ));
                }
            }
        }
    }
    outcome(
        "AC2",
        "PDE residual order and interface continuity",
        started,
        failures,
        format!("{count} configurations: orders in [1.8, 2.2], jumps < 1e-8"),
    )
}

/// AC3: normalized coefficient decay ratio varies by less than 10x over
/// m in [2M0, 4M0].
pub fn criterion_3(_suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    for t in [0.5, 1.0, 3.0] {
        let cfg = ScatteringConfig::new(t, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
        let med = BallMedium::constant([0.0; 3], 1.0, Complex64::new(2.0, 0.0)).unwrap();
        let m0 = t.ceil() as usize + 2;
        let mc = modal_coefficients_up_to(&cfg, &med, 4 * m0).unwrap();
        let mut ratios = Vec::new();
        for m in 2 * m0..=4 * m0 {
            let a = mc.exterior[m].norm();
            if a == 0.0 {
                failures.push(format!("t={t}: A_{m} underflowed"));
                continue;
            }
            let ln_ratio = a.ln() + 2.0 * ln_double_factorial(2 * m as u64 + 1)
                - (2.0 * m as f64 + 1.0) * t.ln();
            ratios.push(ln_ratio.exp());
        }
        let max = ratios.iter().cloned().fold(0.0, f64::max);
        let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(max / min < 10.0) {
            failures.push(format!("t={t}: ratio spread {:.2}", max / min));
        }
    }
    outcome(
        "AC3",
        "modal coefficient decay",
        started,
        failures,
        "t in {0.5, 1, 3}: |A_m|((2m+1)!!)²/t^{2m+1} varies by < 10x".into(),
    )
}

/// AC4: the spectrum below k0_effective is empty for every admissible pair.
pub fn criterion_4(suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    let n_star = 3.0;
    let indices = [0.7, 1.3, 1.9, 2.4, 3.0];
    let radii: &[f64] = match suite {
        Suite::Fast => &[1.0],
        Suite::Full => &[0.6, 1.0, 1.7],
    };
    let dims: &[Dimension] = match suite {
        Suite::Fast => &[Dimension::Three],
        Suite::Full => &[Dimension::Three, Dimension::Two],
    };
    let mut cases = 0usize;
    for &dim in dims {
        for &radius in radii {
            let k0 = k0_bounds(radius, dim, n_star).k0_effective;
            for (i, &n) in indices.iter().enumerate() {
                for &nt in indices.iter().skip(i + 1) {
                    cases += 1;
                    let prob = ITEProblem::new(
                        radius,
                        dim,
                        Complex64::new(n, 0.0),
                        Complex64::new(nt, 0.0),
                        1e-6,
                        k0 * (1.0 - 1e-12),
                        6,
                    )
                    .unwrap();
                    let spectrum = scan_spectrum(&prob);
                    if !spectrum.entries.is_empty() {
                        failures.push(format!(
                            "({n}, {nt}) R={radius} {dim:?}: {} eigenvalues below k0={k0:.4}",
                            spectrum.entries.len()
                        ));
                    }
                }
            }
        }
    }
    outcome(
        "AC4",
        "eigenvalue-free interval below k0",
        started,
        failures,
        format!("{cases} admissible pairs scanned over (0, k0_effective): all empty"),
    )
}

fn eigenvalue_inventory(suite: Suite) -> Vec<(ITEProblem, Vec<(usize, f64)>)> {
    let mk = |r: f64, dim, n: f64, nt: f64, k_hi: f64, m_max| {
        ITEProblem::new(
            r,
            dim,
            Complex64::new(n, 0.0),
            Complex64::new(nt, 0.0),
            0.3,
            k_hi,
            m_max,
        )
        .unwrap()
    };
    let mut problems = vec![
        mk(1.0, Dimension::Three, 2.0, 1.0, 10.0, 4),
        mk(1.0, Dimension::Three, 2.3, 1.1, 9.0, 3),
    ];
    if suite == Suite::Full {
        problems.push(mk(1.0, Dimension::Two, 1.8, 1.2, 12.0, 3));
        problems.push(mk(0.8, Dimension::Three, 3.0, 1.5, 9.0, 2));
    }
    problems
        .into_iter()
        .map(|prob| {
            let entries = scan_spectrum(&prob)
                .entries
                .iter()
                .map(|e| (e.m, e.k))
                .collect();
            (prob, entries)
        })
        .collect()
}

/// AC5: Green's-identity residual below 1e-6 at every refined eigenvalue
/// (at least 20 eigenvalues total).
pub fn criterion_5(suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    let mut total = 0usize;
    for (prob, entries) in eigenvalue_inventory(suite) {
        for (m, k) in entries {
            total += 1;
            match greens_identity_residual(&prob, m, k) {
                Ok(res) => {
                    if res >= 1e-6 {
                        failures.push(format!(
                            "m={m} k={k:.6} ({:?}, n={}, ñ={}): residual {res:.3e}",
                            prob.dim, prob.n, prob.n_tilde
                        ));
                    }
                }
                Err(e) => failures.push(format!("m={m} k={k:.6}: {e}")),
            }
        }
    }
    if total < 20 {
        failures.push(format!("only {total} eigenvalues found, need >= 20"));
    }
    outcome(
        "AC5",
        "Green's identity at eigenvalues",
        started,
        failures,
        format!("{total} eigenvalues, all identity residuals < 1e-6"),
    )
}

/// AC6: the source-problem bound holds for seeded radial sources, with the
/// median ratio approaching the bound monotonically as k grows.
pub fn criterion_6(suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    let sources = match suite {
        Suite::Fast => 25,
        Suite::Full => 100,
    };
    let rep = k0_bounds(1.0, Dimension::Three, 2.0);
    let mut medians = Vec::new();
    for factor in [0.3, 0.6, 0.9] {
        let k = factor * rep.k0_lemma;
        let mut ratios = Vec::new();
        let mut rng = SplitMix64::new(0xAC06);
        for trial in 0..sources {
            let coeffs: Vec<f64> = (0..20).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
            match lemma32_verify(1.0, Dimension::Three, k, &coeffs) {
                Ok((ratio, bound)) => {
                    if ratio > bound {
                        failures.push(format!(
                            "trial {trial} k={k:.4}: ratio {ratio:.6} > bound {bound:.6}"
                        ));
                    }
                    ratios.push(ratio);
                }
                Err(e) => failures.push(format!("trial {trial}: {e}")),
            }
        }
        ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(ratios[ratios.len() / 2]);
    }
    if !(medians[0] <= medians[1] && medians[1] <= medians[2]) {
        failures.push(format!("medians not monotone in k: {medians:?}"));
    }
    outcome(
        "AC6",
        "source-problem bound",
        started,
        failures,
        format!(
            "{sources} sources x 3 wavenumbers: ratio <= √2·C1, medians {medians:.3?} monotone"
        ),
    )
}

/// AC7: inversion roundtrips (noiseless to 1e-6 relative, 1% noise to 3%
/// median relative error for the ball model).
pub fn criterion_7(suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();

    // constant index below k0
    {
        let truth = Complex64::new(1.5, 0.0);
        let cfg = ScatteringConfig::new(0.29, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
        let med = BallMedium::constant([0.0; 3], 1.0, truth).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        let data =
            crate::forward::far_field(&mc, &cfg, &med, &fibonacci_sphere(32)).unwrap();
        let task = InversionTask {
            data,
            model: InverseModel::ConstantN {
                center: [0.0; 3],
                radius: 1.0,
            },
            bounds: InverseBounds {
                n_re: (0.3, 3.0),
                n_im: (0.0, 1.0),
                center: None,
                radius: None,
            },
            noise_level: 0.0,
            multistart: 4,
            seed: 7,
        };
        match invert_constant_n(&task) {
            Ok(res) => {
                let RecoveredModel::ConstantN { n } = res.model else {
                    unreachable!()
                };
                let rel = (n - truth).norm() / truth.norm();
                if rel > 1e-6 {
                    failures.push(format!("constant: relative error {rel:.3e}"));
                }
                if !res.guarantee {
                    failures.push("constant: guarantee flag not set below k0".into());
                }
            }
            Err(e) => failures.push(format!("constant: {e}")),
        }
    }

    // ball and index, noiseless
    let ball_truth_center = [0.3, -0.2, 0.1];
    let ball_truth_radius = 0.8;
    let ball_truth_n = Complex64::new(1.7, 0.0);
    let ball_cfg = ScatteringConfig::new(2.0, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
    let ball_data = {
        let med = BallMedium::constant(ball_truth_center, ball_truth_radius, ball_truth_n).unwrap();
        let mc = modal_coefficients(&ball_cfg, &med, 1e-12).unwrap();
        crate::forward::far_field(&mc, &ball_cfg, &med, &fibonacci_sphere(128)).unwrap()
    };
    let ball_task = |data| InversionTask {
        data,
        model: InverseModel::BallAndN,
        bounds: InverseBounds {
            n_re: (1.05, 3.0),
            n_im: (0.0, 0.5),
            center: Some(vec![(-1.0, 1.0); 3]),
            radius: Some((0.3, 1.5)),
        },
        noise_level: 0.0,
        multistart: 6,
        seed: 3,
    };
    match invert_ball_and_n(&ball_task(ball_data.clone())) {
        Ok(res) => {
            let RecoveredModel::BallAndN { center, radius, n } = res.model else {
                unreachable!()
            };
            let errs = [
                (center[0] - ball_truth_center[0]).abs(),
                (center[1] - ball_truth_center[1]).abs(),
                (center[2] - ball_truth_center[2]).abs(),
                (radius - ball_truth_radius).abs() / ball_truth_radius,
                (n - ball_truth_n).norm() / ball_truth_n.norm(),
            ];
            let worst = errs.iter().cloned().fold(0.0, f64::max);
            if worst > 1e-6 {
                failures.push(format!("ball noiseless: worst relative error {worst:.3e}"));
            }
        }
        Err(e) => failures.push(format!("ball noiseless: {e}")),
    }

    // ball and index under 1% multiplicative noise: median over trials
    let trials = match suite {
        Suite::Fast => 6,
        Suite::Full => 20,
    };
    let mut trial_errors = Vec::new();
    for trial in 0..trials {
        let mut rng = SplitMix64::new(0xAC07_0000 + trial as u64);
        let noisy_values: Vec<Complex64> = ball_data
            .values
            .iter()
            .map(|&v| {
                let eps = Complex64::new(rng.next_normal(), rng.next_normal())
                    / std::f64::consts::SQRT_2;
                v * (1.0 + 0.01 * eps)
            })
            .collect();
        let noisy = crate::forward::FarFieldPattern::new(
            ball_data.directions.clone(),
            noisy_values,
            ball_cfg,
        )
        .unwrap();
        let mut task = ball_task(noisy);
        task.noise_level = 0.01;
        task.seed = 1000 + trial as u64;
        match invert_ball_and_n(&task) {
            Ok(res) => {
                let RecoveredModel::BallAndN { center, radius, n } = res.model else {
                    unreachable!()
                };
                let rel = [
                    (center[0] - ball_truth_center[0]).abs(),
                    (center[1] - ball_truth_center[1]).abs(),
                    (center[2] - ball_truth_center[2]).abs(),
                    (radius - ball_truth_radius).abs() / ball_truth_radius,
                    (n - ball_truth_n).norm() / ball_truth_n.norm(),
                ]
                .iter()
                .cloned()
                .fold(0.0, f64::max);
                trial_errors.push(rel);
            }
            Err(e) => failures.push(format!("ball noisy trial {trial}: {e}")),
        }
    }
    trial_errors.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = trial_errors
        .get(trial_errors.len() / 2)
        .copied()
        .unwrap_or(f64::INFINITY);
    if median > 0.03 {
        failures.push(format!("ball noisy: median relative error {median:.4}"));
    }

    // layered profile
    {
        let truth = [Complex64::new(1.8, 0.0), Complex64::new(1.3, 0.0)];
        let cfg = ScatteringConfig::new(3.0, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
        let layers: Vec<Layer> = truth
            .iter()
            .enumerate()
            .map(|(l, &n)| Layer {
                outer_radius: (l + 1) as f64 / 2.0,
                n,
            })
            .collect();
        let med = BallMedium::new([0.0; 3], 1.0, Profile::Layered(layers)).unwrap();
        let mc = crate::forward::layered_modal_coefficients(&cfg, &med, 1e-12).unwrap();
        let data = crate::forward::far_field(&mc, &cfg, &med, &fibonacci_sphere(64)).unwrap();
        let task = InversionTask {
            data,
            model: InverseModel::LayeredRadial {
                center: [0.0; 3],
                radius: 1.0,
                layers: 2,
            },
            bounds: InverseBounds {
                n_re: (0.8, 2.5),
                n_im: (0.0, 0.4),
                center: None,
                radius: None,
            },
            noise_level: 0.0,
            multistart: 6,
            seed: 29,
        };
        match invert_layered_profile(&task) {
            Ok(res) => {
                let RecoveredModel::LayeredRadial { layers } = res.model else {
                    unreachable!()
                };
                for (got, want) in layers.iter().zip(&truth) {
                    let rel = (got - want).norm() / want.norm();
                    if rel > 1e-6 {
                        failures.push(format!("layered: relative error {rel:.3e}"));
                    }
                }
            }
            Err(e) => failures.push(format!("layered: {e}")),
        }
    }

    outcome(
        "AC7",
        "inversion roundtrips",
        started,
        failures,
        format!(
            "constant/ball/layered noiseless to 1e-6; {trials} noisy ball trials median {median:.4} < 0.03"
        ),
    )
}

/// AC8: the misfit curve has a unique zero at the truth for k below k0.
pub fn criterion_8(suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    let n_star = 3.0;
    let configs: Vec<(f64, f64, Dimension)> = match suite {
        Suite::Fast => vec![(1.0, 1.5, Dimension::Three), (0.8, 2.2, Dimension::Two)],
        Suite::Full => vec![
            (1.0, 1.5, Dimension::Three),
            (1.0, 2.2, Dimension::Three),
            (1.0, 0.7, Dimension::Three),
            (0.7, 1.4, Dimension::Three),
            (1.4, 1.8, Dimension::Three),
            (1.0, 2.8, Dimension::Three),
            (0.8, 2.2, Dimension::Two),
            (1.0, 1.3, Dimension::Two),
            (1.2, 1.9, Dimension::Two),
            (0.6, 2.5, Dimension::Two),
        ],
    };
    let count = configs.len();
    for (radius, truth, dim) in configs {
        let k = 0.5 * k0_bounds(radius, dim, n_star).k0_effective;
        let d0 = match dim {
            Dimension::Three => [0.0, 0.0, 1.0],
            Dimension::Two => [1.0, 0.0, 0.0],
        };
        let cfg = ScatteringConfig::new(k, d0, dim).unwrap();
        let dirs = match dim {
            Dimension::Three => fibonacci_sphere(32),
            Dimension::Two => uniform_circle(32),
        };
        // 200-point grid containing the truth exactly
        let mut grid: Vec<f64> = (0..200)
            .map(|i| 0.1 + (n_star - 0.1) * i as f64 / 199.0)
            .collect();
        let slot = grid
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (*a - truth).abs().partial_cmp(&(*b - truth).abs()).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        grid[slot] = truth;
        let step = (n_star - 0.1) / 199.0;
        match uniqueness_probe(&cfg, &[0.0; 3], radius, Complex64::new(truth, 0.0), &grid, &dirs) {
            Ok(curve) => {
                let zeros: Vec<f64> = curve
                    .iter()
                    .filter(|p| p.misfit < 1e-12)
                    .map(|p| p.n)
                    .collect();
                if zeros != vec![truth] {
                    failures.push(format!(
                        "{dim:?} R={radius} n={truth}: zeros at {zeros:?}"
                    ));
                }
                let margin = curve
                    .iter()
                    .filter(|p| (p.n - truth).abs() > 1.5 * step)
                    .map(|p| p.misfit)
                    .fold(f64::INFINITY, f64::min);
                if margin < 1e-10 {
                    failures.push(format!(
                        "{dim:?} R={radius} n={truth}: margin {margin:.3e}"
                    ));
                }
            }
            Err(e) => failures.push(format!("{dim:?} R={radius} n={truth}: {e}")),
        }
    }
    outcome(
        "AC8",
        "uniqueness probe",
        started,
        failures,
        format!("{count} configurations: unique zero at the truth, margin >= 1e-10"),
    )
}

/// AC9: special-function bedrock (Wronskians, recurrences, asymptotics).
pub fn criterion_9(suite: Suite) -> CheckOutcome {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    let x_step = match suite {
        Suite::Fast => 2.5,
        Suite::Full => 0.7,
    };

    // spherical Wronskian and recurrence over [0.1, 50], m <= 40
    let mut x = 0.1;
    while x <= 50.0 {
        let xc = Complex64::new(x, 0.0);
        let j = sph_bessel_j_seq(41, xc);
        let jp = sph_bessel_j_prime_seq(40, xc);
        let y = sph_neumann_seq(41, xc);
        let expected = 1.0 / (x * x);
        for m in 0..=40usize {
            let yp = if m == 0 {
                -y[1]
            } else {
                y[m - 1] - ((m + 1) as f64 / xc) * y[m]
            };
            let w = (j[m] * yp - jp[m] * y[m]).re;
            if ((w - expected) / expected).abs() > 1e-10 {
                failures.push(format!("spherical Wronskian x={x} m={m}: {w}"));
            }
            if m >= 1 && m < 40 {
                let lhs = j[m - 1] + j[m + 1];
                let rhs = (2 * m + 1) as f64 / x * j[m];
                let scale = lhs.norm().max(rhs.norm()).max(1e-280);
                if (lhs - rhs).norm() / scale > 1e-10 {
                    failures.push(format!("spherical recurrence x={x} m={m}"));
                }
            }
        }
        // cylindrical Wronskian J Y' - J' Y = 2/(pi x)
        let s = cyl_jy_real_seq(30, x);
        let expected_cyl = 2.0 / (std::f64::consts::PI * x);
        for m in 0..=30usize {
            if !s.y[m].is_finite() {
                continue;
            }
            let w = s.j[m] * s.yp[m] - s.jp[m] * s.y[m];
            if ((w - expected_cyl) / expected_cyl).abs() > 1e-10 {
                failures.push(format!("cylindrical Wronskian x={x} m={m}: {w}"));
            }
        }
        x += x_step;
    }

    // small-argument asymptotic ratios
    for m in 1..=8usize {
        for &t in &[1e-2f64, 1e-3] {
            let lead_j = t.powi(m as i32) / double_factorial(2 * m as u64 + 1);
            let rj = sph_bessel_j(m, Complex64::new(t, 0.0)).re / lead_j;
            if (rj - 1.0).abs() > 1e-3 {
                failures.push(format!("j_{m}({t}) asymptotic ratio {rj}"));
            }
            let lead_jp = m as f64 * t.powi(m as i32 - 1) / double_factorial(2 * m as u64 + 1);
            let rjp = sph_bessel_j_prime(m, Complex64::new(t, 0.0)).re / lead_jp;
            if (rjp - 1.0).abs() > 1e-3 {
                failures.push(format!("j_{m}'({t}) asymptotic ratio {rjp}"));
            }
            let h = sph_hankel1(m, t);
            let rh = h * Complex64::i() * t.powi(m as i32 + 1)
                / double_factorial(2 * m as u64 - 1);
            if (rh - 1.0).norm() > 1e-3 {
                failures.push(format!("h_{m}({t}) asymptotic ratio {rh}"));
            }
        }
    }

    // derivatives against central differences away from zeros
    for &(m, x) in &[(0usize, 1.3f64), (3, 2.5), (7, 4.2), (15, 9.0)] {
        let h = 1e-6;
        let fd = (sph_bessel_j(m, Complex64::new(x + h, 0.0))
            - sph_bessel_j(m, Complex64::new(x - h, 0.0)))
            / Complex64::new(2.0 * h, 0.0);
        let an = sph_bessel_j_prime(m, Complex64::new(x, 0.0));
        if (an - fd).norm() / an.norm().max(1e-10) > 1e-7 {
            failures.push(format!("j_{m}'({x}) vs finite difference"));
        }
    }

    // conjugate symmetry at complex argument
    for &z in &[Complex64::new(2.0, 1.5), Complex64::new(11.0, 2.0)] {
        for m in [0usize, 3, 9] {
            let a = sph_bessel_j(m, z.conj());
            let b = sph_bessel_j(m, z).conj();
            if (a - b).norm() > 1e-13 * b.norm() {
                failures.push(format!("conjugate symmetry m={m} z={z}"));
            }
        }
    }

    outcome(
        "AC9",
        "special-function bedrock",
        started,
        failures,
        "Wronskian, recurrence, asymptotic-ratio and derivative suites pass".into(),
    )
}

/// Runs every criterion (plus nothing else: the criteria already exercise
/// each module's invariants).
pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    vec![
        criterion_1(suite),
        criterion_2(suite),
        criterion_3(suite),
        criterion_4(suite),
        criterion_5(suite),
        criterion_6(suite),
        criterion_7(suite),
        criterion_8(suite),
        criterion_9(suite),
    ]
}
