//! Joint recovery of center, radius and constant index.
//!
//! Stage 1 estimates the center from the structure of the modal series: for
//! the true center z the recentred pattern e^{-ikz·d} e^{ikz·x̂} u_inf(x̂)
//! is a function of c = x̂·d alone, and (being a truncated modal series) a
//! polynomial of low degree in c. The stage-1 objective is therefore the
//! residual of a least-squares fit of the recentred values onto a Legendre
//! basis in c: it vanishes at the true center and is invariant under
//! rotations of the direction set about the d-axis. A coarse grid over the
//! center box (quarter-wavelength spacing) is refined by descent.
//!
//! Stage 2 polishes (z, R, Re n, Im n) jointly by multistart least squares.

use num_complex::Complex64;

use super::constant_n::{barrier, predict_constant};
use super::{
    pattern_residual, InverseError, InverseModel, InversionResult, InversionTask, RecoveredModel,
};
use crate::forward::ScatteringConfig;
use crate::geom::{dot, Point};
use crate::numerics::{least_squares_minimize, solve_dense, LsqOptions};
use crate::specialfn::legendre_p_seq;

/// Least-squares projection residual of the recentred pattern onto Legendre
/// polynomials in c = x̂·d, for one trial center.
pub(crate) fn recentring_residual(
    cfg: &ScatteringConfig,
    directions: &[Point],
    values: &[Complex64],
    degree: usize,
    trial: &Point,
) -> Vec<f64> {
    let k = cfg.k;
    let phase_d = (-Complex64::i() * k * dot(trial, &cfg.d)).exp();
    let recentred: Vec<Complex64> = directions
        .iter()
        .zip(values)
        .map(|(xhat, &u)| phase_d * (Complex64::i() * k * dot(trial, xhat)).exp() * u)
        .collect();
    let basis: Vec<Vec<f64>> = directions
        .iter()
        .map(|xhat| legendre_p_seq(degree, dot(xhat, &cfg.d).clamp(-1.0, 1.0)))
        .collect();

    // normal equations, shared by the real and imaginary right-hand sides
    let p = degree + 1;
    let mut ata = vec![vec![0.0; p]; p];
    let mut rhs_re = vec![0.0; p];
    let mut rhs_im = vec![0.0; p];
    for (row, g) in basis.iter().zip(&recentred) {
        for i in 0..p {
            for j in i..p {
                ata[i][j] += row[i] * row[j];
            }
            rhs_re[i] += row[i] * g.re;
            rhs_im[i] += row[i] * g.im;
        }
    }
    for i in 0..p {
        for j in 0..i {
            ata[i][j] = ata[j][i];
        }
        ata[i][i] += 1e-12 * (1.0 + ata[i][i]);
    }
    let beta_re = solve_dense(&ata, &rhs_re).unwrap_or_else(|| vec![0.0; p]);
    let beta_im = solve_dense(&ata, &rhs_im).unwrap_or_else(|| vec![0.0; p]);

    let mut out = Vec::with_capacity(2 * recentred.len());
    for (row, g) in basis.iter().zip(&recentred) {
        let fit_re: f64 = row.iter().zip(&beta_re).map(|(a, b)| a * b).sum();
        let fit_im: f64 = row.iter().zip(&beta_im).map(|(a, b)| a * b).sum();
        out.push(g.re - fit_re);
        out.push(g.im - fit_im);
    }
    out
}

fn stage1_center(
    cfg: &ScatteringConfig,
    task: &InversionTask,
    degree: usize,
) -> Result<Point, InverseError> {
    let boxes = task.bounds.center.as_ref().expect("validated");
    let dim = cfg.dim.ambient();
    let wavelength = 2.0 * std::f64::consts::PI / cfg.k;

    // coarse grid at quarter-wavelength spacing, capped per axis
    let mut axes: Vec<Vec<f64>> = Vec::new();
    for &(lo, hi) in boxes.iter() {
        let span = hi - lo;
        let count = ((span / (wavelength / 4.0)).ceil() as usize + 1).clamp(2, 9);
        axes.push(
            (0..count)
                .map(|i| lo + span * i as f64 / (count - 1) as f64)
                .collect(),
        );
    }
    let objective = |z: &Point| -> f64 {
        recentring_residual(cfg, &task.data.directions, &task.data.values, degree, z)
            .iter()
            .map(|r| r * r)
            .sum()
    };
    let mut best = [0.0; 3];
    let mut best_val = f64::INFINITY;
    let counts: Vec<usize> = axes.iter().map(|a| a.len()).collect();
    let total: usize = counts.iter().product();
    for flat in 0..total {
        let mut idx = flat;
        let mut z = [0.0; 3];
        for axis in 0..dim {
            z[axis] = axes[axis][idx % counts[axis]];
            idx /= counts[axis];
        }
        let v = objective(&z);
        if v < best_val {
            best_val = v;
            best = z;
        }
    }

    // descent from the best grid node
    let directions = task.data.directions.clone();
    let values = task.data.values.clone();
    let residual = |p: &[f64]| -> Vec<f64> {
        let mut z = [0.0; 3];
        z[..p.len()].copy_from_slice(p);
        recentring_residual(cfg, &directions, &values, degree, &z)
    };
    let bounds: Vec<(f64, f64)> = boxes.clone();
    let initial: Vec<f64> = best[..dim].to_vec();
    let opts = LsqOptions {
        multistart: 1,
        seed: task.seed,
        ..Default::default()
    };
    let sol = least_squares_minimize(&residual, &initial, &bounds, &opts)?;
    let mut z = [0.0; 3];
    z[..dim].copy_from_slice(&sol.params);
    Ok(z)
}

pub fn invert_ball_and_n(task: &InversionTask) -> Result<InversionResult, InverseError> {
    task.validate()?;
    if task.model != InverseModel::BallAndN {
        return Err(InverseError::InvalidTask(
            "invert_ball_and_n needs the BallAndN model".into(),
        ));
    }
    let cfg = task.data.config;
    let dim = cfg.dim.ambient();

    let data_scale = task.data.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if data_scale < 1e-12 * (1.0 + task.noise_level) {
        return Err(InverseError::DegenerateData);
    }

    // polynomial degree for the stage-1 fit: enough to represent the modal
    // series of any ball admitted by the radius box
    let r_max = task.bounds.radius.expect("validated").1;
    let degree = ((std::f64::consts::E * cfg.k * r_max / 2.0).ceil() as usize + 6)
        .min(task.data.directions.len() / 3)
        .clamp(4, 24);
    let z_est = stage1_center(&cfg, task, degree)?;

    // stage 2: joint refinement over (z, R, Re n, Im n)
    let mut bounds: Vec<(f64, f64)> = task.bounds.center.clone().expect("validated");
    bounds.push(task.bounds.radius.expect("validated"));
    bounds.push(task.bounds.n_re);
    bounds.push(task.bounds.n_im);

    let mut initial: Vec<f64> = z_est[..dim].to_vec();
    initial.push(0.5 * (bounds[dim].0 + bounds[dim].1));
    initial.push(0.5 * (task.bounds.n_re.0 + task.bounds.n_re.1));
    initial.push(0.5 * (task.bounds.n_im.0 + task.bounds.n_im.1));

    let directions = task.data.directions.clone();
    let measured = task.data.values.clone();
    let residual = |p: &[f64]| -> Vec<f64> {
        let mut center = [0.0; 3];
        center[..dim].copy_from_slice(&p[..dim]);
        let radius = p[dim];
        let n = Complex64::new(p[dim + 1], p[dim + 2]);
        match predict_constant(&cfg, &center, radius, n, &directions) {
            Some(values) => pattern_residual(&values, &measured),
            None => barrier(measured.len()),
        }
    };
    let opts = LsqOptions {
        multistart: task.multistart,
        seed: task.seed,
        max_iterations: 300,
        ..Default::default()
    };
    let sol = least_squares_minimize(&residual, &initial, &bounds, &opts)?;

    // unlike the constant-index model there is no smallness condition on k;
    // the verifiable hypothesis is that the admissible box excludes n = 0
    let guarantee = !(task.bounds.n_re.0 <= 0.0
        && task.bounds.n_re.1 >= 0.0
        && task.bounds.n_im.0 <= 0.0
        && task.bounds.n_im.1 >= 0.0);

    Ok(InversionResult {
        model: RecoveredModel::BallAndN {
            center: sol.params[..dim].to_vec(),
            radius: sol.params[dim],
            n: Complex64::new(sol.params[dim + 1], sol.params[dim + 2]),
        },
        misfit: sol.misfit,
        iterations: sol.iterations,
        starts_tried: sol.starts_tried,
        best_start: sol.best_start,
        guarantee,
        warnings: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{
        far_field, fibonacci_sphere, modal_coefficients, BallMedium, Dimension, FarFieldPattern,
    };
    use crate::inverse::InverseBounds;

    fn synthetic_ball(
        k: f64,
        center: Point,
        radius: f64,
        n: Complex64,
        ndirs: usize,
    ) -> FarFieldPattern {
        let cfg = ScatteringConfig::new(k, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
        let med = BallMedium::constant(center, radius, n).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        far_field(&mc, &cfg, &med, &fibonacci_sphere(ndirs)).unwrap()
    }

    fn ball_task(data: FarFieldPattern) -> InversionTask {
        InversionTask {
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
        }
    }

    #[test]
    fn stage1_objective_vanishes_at_true_center() {
        let z = [0.0; 3];
        let pat = synthetic_ball(2.0, z, 0.8, Complex64::new(1.7, 0.0), 64);
        let cfg = pat.config;
        let v0: f64 = recentring_residual(&cfg, &pat.directions, &pat.values, 14, &z)
            .iter()
            .map(|r| r * r)
            .sum();
        assert!(v0 < 1e-20, "objective at truth {v0}");
        let off: f64 = recentring_residual(&cfg, &pat.directions, &pat.values, 14, &[0.3, 0.0, 0.0])
            .iter()
            .map(|r| r * r)
            .sum();
        assert!(off > 1e3 * v0.max(1e-24), "off-center objective {off}");
    }

    #[test]
    fn stage1_invariant_under_rotation_about_d() {
        // rotating the direction set about d leaves the objective unchanged
        let z = [0.2, -0.1, 0.15];
        let pat = synthetic_ball(2.0, z, 0.8, Complex64::new(1.7, 0.0), 48);
        let cfg = pat.config;
        let alpha = 0.83_f64;
        let (ca, sa) = (alpha.cos(), alpha.sin());
        // d = e_z, so rotation about d acts on (x, y)
        let rotated: Vec<Point> = pat
            .directions
            .iter()
            .map(|v| [ca * v[0] - sa * v[1], sa * v[0] + ca * v[1], v[2]])
            .collect();
        let med = BallMedium::constant(z, 0.8, Complex64::new(1.7, 0.0)).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        let rotated_pat = far_field(&mc, &cfg, &med, &rotated).unwrap();
        let trial = [0.05, 0.1, -0.2];
        let v_orig: f64 = recentring_residual(&cfg, &pat.directions, &pat.values, 12, &trial)
            .iter()
            .map(|r| r * r)
            .sum();
        // the objective landscape rotates about the true center:
        // V_rot(z + R(trial - z)) = V_orig(trial)
        let rel = [trial[0] - z[0], trial[1] - z[1], trial[2] - z[2]];
        let trial_rot = [
            z[0] + ca * rel[0] - sa * rel[1],
            z[1] + sa * rel[0] + ca * rel[1],
            z[2] + rel[2],
        ];
        let v_rot: f64 =
            recentring_residual(&cfg, &rotated_pat.directions, &rotated_pat.values, 12, &trial_rot)
                .iter()
                .map(|r| r * r)
                .sum();
        assert!(
            (v_orig - v_rot).abs() <= 1e-9 * v_orig.max(1e-12),
            "{v_orig} vs {v_rot}"
        );
        // and at the true center itself the objective vanishes for both sets
        let at_truth: f64 = recentring_residual(&cfg, &rotated_pat.directions, &rotated_pat.values, 12, &z)
            .iter()
            .map(|r| r * r)
            .sum();
        assert!(at_truth < 1e-20, "objective at truth {at_truth}");
    }

    #[test]
    fn noiseless_joint_recovery() {
        let z = [0.3, -0.2, 0.1];
        let truth_r = 0.8;
        let truth_n = Complex64::new(1.7, 0.0);
        let pat = synthetic_ball(2.0, z, truth_r, truth_n, 128);
        let res = invert_ball_and_n(&ball_task(pat)).unwrap();
        let RecoveredModel::BallAndN { center, radius, n } = res.model else {
            panic!()
        };
        for axis in 0..3 {
            assert!((center[axis] - z[axis]).abs() < 1e-6, "axis {axis}: {center:?}");
        }
        assert!((radius - truth_r).abs() < 1e-6, "radius {radius}");
        assert!((n - truth_n).norm() < 1e-6, "n {n}");
        assert!(res.guarantee);
    }

    #[test]
    fn two_dimensional_disc_recovery() {
        use crate::forward::uniform_circle;
        let z = [0.25, -0.15, 0.0];
        let truth_r = 0.7;
        let truth_n = Complex64::new(1.6, 0.0);
        let cfg = ScatteringConfig::new(2.2, [1.0, 0.0, 0.0], Dimension::Two).unwrap();
        let med = BallMedium::constant(z, truth_r, truth_n).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        let data = far_field(&mc, &cfg, &med, &uniform_circle(64)).unwrap();
        let task = InversionTask {
            data,
            model: InverseModel::BallAndN,
            bounds: InverseBounds {
                n_re: (1.05, 3.0),
                n_im: (0.0, 0.5),
                center: Some(vec![(-1.0, 1.0); 2]),
                radius: Some((0.3, 1.5)),
            },
            noise_level: 0.0,
            multistart: 6,
            seed: 12,
        };
        let res = invert_ball_and_n(&task).unwrap();
        let RecoveredModel::BallAndN { center, radius, n } = res.model else {
            panic!()
        };
        assert_eq!(center.len(), 2);
        assert!((center[0] - z[0]).abs() < 1e-6 && (center[1] - z[1]).abs() < 1e-6);
        assert!((radius - truth_r).abs() < 1e-6);
        assert!((n - truth_n).norm() < 1e-6);
    }

    #[test]
    fn degenerate_data_is_rejected() {
        let cfg = ScatteringConfig::new(1.0, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
        let pat = FarFieldPattern::new(
            fibonacci_sphere(32),
            vec![Complex64::new(0.0, 0.0); 32],
            cfg,
        )
        .unwrap();
        assert!(matches!(
            invert_ball_and_n(&ball_task(pat)),
            Err(InverseError::DegenerateData)
        ));
    }
}
