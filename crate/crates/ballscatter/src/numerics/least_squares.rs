//! Multistart Levenberg-Marquardt with finite-difference Jacobians.
//!
//! Box constraints are enforced by projection. The multistart seed is fixed
//! and every start derives its own SplitMix64 stream, so the result is
//! deterministic and independent of whether starts run in parallel.

use thiserror::Error;

use super::linalg::solve_dense;
use super::parallel::parallel_map;
use super::rng::SplitMix64;

/// Relative finite-difference step and its absolute floor; these balance
/// truncation against round-off for f64 objectives.
const FD_RELATIVE_STEP: f64 = 1e-6;
const FD_ABSOLUTE_FLOOR: f64 = 1e-8;

#[derive(Debug, Error)]
#[error("no start reduced the misfit below its initial value (best {best_misfit:.3e} > initial {initial_misfit:.3e})")]
pub struct NonConvergence {
    pub initial_misfit: f64,
    pub best_misfit: f64,
}

#[derive(Debug, Clone)]
pub struct LsqOptions {
    pub max_iterations: usize,
    pub step_tol: f64,
    pub grad_tol: f64,
    pub multistart: usize,
    pub seed: u64,
}

impl Default for LsqOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            step_tol: 1e-12,
            grad_tol: 1e-14,
            multistart: 1,
            seed: 0x0BA1_15CA_77E3, // fixed for reproducible runs
        }
    }
}

#[derive(Debug, Clone)]
pub struct LsqSolution {
    pub params: Vec<f64>,
    /// Final misfit ½‖r‖².
    pub misfit: f64,
    pub iterations: usize,
    pub starts_tried: usize,
    pub best_start: usize,
}

/// Minimizes ½‖residual(p)‖² over the box `bounds`, restarting from
/// `multistart` sampled points (start 0 is the supplied initial guess).
pub fn least_squares_minimize<F>(
    residual: &F,
    initial: &[f64],
    bounds: &[(f64, f64)],
    opts: &LsqOptions,
) -> Result<LsqSolution, NonConvergence>
where
    F: Fn(&[f64]) -> Vec<f64> + Sync,
{
    assert_eq!(initial.len(), bounds.len(), "one bound pair per parameter");
    assert!(bounds.iter().all(|(lo, hi)| lo < hi), "need lo < hi bounds");
    let n_starts = opts.multistart.max(1);

    let p0 = project(initial, bounds);
    let initial_misfit = misfit(&residual(&p0));

    let starts: Vec<Vec<f64>> = (0..n_starts)
        .map(|s| {
            if s == 0 {
                p0.clone()
            } else {
                let mut rng = SplitMix64::new(opts.seed.wrapping_add(s as u64));
                bounds.iter().map(|&(lo, hi)| rng.uniform_in(lo, hi)).collect()
            }
        })
        .collect();

    let runs = parallel_map(&starts, |start| lm_single(residual, start, bounds, opts));

    let (best_start, best) = runs
        .into_iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.1.partial_cmp(&b.1)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(ia.cmp(ib))
        })
        .expect("at least one start");

    if best.1 > initial_misfit {
        return Err(NonConvergence {
            initial_misfit,
            best_misfit: best.1,
        });
    }
    Ok(LsqSolution {
        params: best.0,
        misfit: best.1,
        iterations: best.2,
        starts_tried: n_starts,
        best_start,
    })
}

fn misfit(r: &[f64]) -> f64 {
    0.5 * r.iter().map(|v| v * v).sum::<f64>()
}

fn project(p: &[f64], bounds: &[(f64, f64)]) -> Vec<f64> {
    p.iter()
        .zip(bounds)
        .map(|(&v, &(lo, hi))| v.clamp(lo, hi))
        .collect()
}

fn fd_jacobian<F>(residual: &F, p: &[f64], r0: &[f64]) -> Vec<Vec<f64>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let m = r0.len();
    let n = p.len();
    let mut jt = vec![vec![0.0; m]; n]; // row j = column of J
    for j in 0..n {
        let step = (FD_RELATIVE_STEP * p[j].abs()).max(FD_ABSOLUTE_FLOOR);
        let mut pp = p.to_vec();
        pp[j] += step;
        let rj = residual(&pp);
        for i in 0..m {
            jt[j][i] = (rj[i] - r0[i]) / step;
        }
    }
    jt
}

/// One LM descent from a single start. Returns (params, misfit, iterations).
fn lm_single<F>(
    residual: &F,
    start: &[f64],
    bounds: &[(f64, f64)],
    opts: &LsqOptions,
) -> (Vec<f64>, f64, usize)
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = start.len();
    let mut p = project(start, bounds);
    let mut r = residual(&p);
    let mut cost = misfit(&r);
    let mut lambda = 1e-3;
    let mut iterations = 0;

    for _ in 0..opts.max_iterations {
        iterations += 1;
        if cost < 1e-28 {
            break;
        }
        let jt = fd_jacobian(residual, &p, &r);
        // gradient g = J^T r and normal matrix A = J^T J
        let g: Vec<f64> = jt
            .iter()
            .map(|col| col.iter().zip(&r).map(|(a, b)| a * b).sum())
            .collect();
        if g.iter().map(|v| v.abs()).fold(0.0, f64::max) < opts.grad_tol {
            break;
        }
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v: f64 = jt[i].iter().zip(&jt[j]).map(|(x, y)| x * y).sum();
                a[i][j] = v;
                a[j][i] = v;
            }
        }

        let mut stepped = false;
        for _attempt in 0..30 {
            let mut damped = a.clone();
            for (i, row) in damped.iter_mut().enumerate() {
                row[i] += lambda * a[i][i].max(1e-12);
            }
            let rhs: Vec<f64> = g.iter().map(|v| -v).collect();
            let Some(delta) = solve_dense(&damped, &rhs) else {
                lambda *= 10.0;
                continue;
            };
            let trial: Vec<f64> = p.iter().zip(&delta).map(|(a, b)| a + b).collect();
            let trial = project(&trial, bounds);
            let r_trial = residual(&trial);
            let cost_trial = misfit(&r_trial);
            if cost_trial < cost {
                let step_norm: f64 = trial
                    .iter()
                    .zip(&p)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                let p_norm: f64 = p.iter().map(|v| v * v).sum::<f64>().sqrt();
                p = trial;
                r = r_trial;
                cost = cost_trial;
                lambda = (lambda * 0.3).max(1e-14);
                stepped = true;
                if step_norm < opts.step_tol * (p_norm + opts.step_tol) {
                    return (p, cost, iterations);
                }
                break;
            }
            lambda *= 4.0;
        }
        if !stepped {
            break;
        }
    }
    (p, cost, iterations)
}
