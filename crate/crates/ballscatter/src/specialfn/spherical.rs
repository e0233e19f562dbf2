//! Spherical Bessel functions j_m, y_m, h_m^{(1)} and derivatives.
//!
//! j_m accepts complex arguments (the transmitted-field series evaluates at
//! k·n·r with complex n). Evaluation strategy per the stability of the
//! three-term recurrence:
//!
//! * `|x| < 0.5`: ascending power series (forward recurrence would divide by
//!   a tiny x and the series converges in a handful of terms),
//! * `m ≤ |x|`: upward recurrence from the closed forms of j_0, j_1,
//! * `m > |x|`: Miller's downward recurrence, normalized against whichever
//!   of j_0, j_1 is larger in magnitude (upward recurrence is unstable in
//!   this regime because j_m is the minimal solution).
//!
//! y_m is the dominant solution, so its upward recurrence is always stable.

use num_complex::Complex64;

use super::factorial::ln_double_factorial;

const SERIES_RADIUS: f64 = 0.5;
// Rescale bound for the downward recurrence: complex division computes
// norm_sqr of the denominator, which overflows past ~1.3e154, so the
// unnormalized values must stay far below that. Powers of two keep the
// rescaling exact.
const RESCALE_THRESHOLD: f64 = f64::from_bits((1023u64 + 490) << 52); // 2^490
const RESCALE_FACTOR: f64 = f64::from_bits((1023u64 - 490) << 52); // 2^-490

/// j_0(x) ... j_{m_max}(x) at complex x.
pub fn sph_bessel_j_seq(m_max: usize, x: Complex64) -> Vec<Complex64> {
    let xa = x.norm();
    if xa == 0.0 {
        let mut out = vec![Complex64::new(0.0, 0.0); m_max + 1];
        out[0] = Complex64::new(1.0, 0.0);
        return out;
    }
    if xa < SERIES_RADIUS {
        return (0..=m_max).map(|m| j_series(m, x)).collect();
    }
    if (m_max as f64) <= xa {
        return j_upward(m_max, x);
    }
    j_miller(m_max, x)
}

/// Spherical Bessel function j_m(x); x = 0 returns the analytic limit.
pub fn sph_bessel_j(m: usize, x: Complex64) -> Complex64 {
    // avoid a full Miller pass of length m_max when only one order is wanted
    // and the series applies
    let xa = x.norm();
    if xa > 0.0 && xa < SERIES_RADIUS {
        return j_series(m, x);
    }
    sph_bessel_j_seq(m, x)[m]
}

/// j_0'(x) ... j_{m_max}'(x) via j_m' = j_{m-1} - ((m+1)/x) j_m.
pub fn sph_bessel_j_prime_seq(m_max: usize, x: Complex64) -> Vec<Complex64> {
    if x.norm() == 0.0 {
        let mut out = vec![Complex64::new(0.0, 0.0); m_max + 1];
        if m_max >= 1 {
            out[1] = Complex64::new(1.0 / 3.0, 0.0);
        }
        return out;
    }
    let j = sph_bessel_j_seq(m_max + 1, x);
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(-j[1]);
    for m in 1..=m_max {
        out.push(j[m - 1] - ((m + 1) as f64 / x) * j[m]);
    }
    out
}

pub fn sph_bessel_j_prime(m: usize, x: Complex64) -> Complex64 {
    sph_bessel_j_prime_seq(m, x)[m]
}

/// y_0(x) ... y_{m_max}(x) at complex x != 0 (upward recurrence).
pub fn sph_neumann_seq(m_max: usize, x: Complex64) -> Vec<Complex64> {
    assert!(x.norm() > 0.0, "spherical Neumann function needs x != 0");
    let mut y = Vec::with_capacity(m_max + 1);
    y.push(-x.cos() / x);
    if m_max == 0 {
        return y;
    }
    y.push(-x.cos() / (x * x) - x.sin() / x);
    for m in 1..m_max {
        let next = ((2 * m + 1) as f64 / x) * y[m] - y[m - 1];
        y.push(next);
    }
    y
}

/// Spherical Neumann function y_m(x) for real x > 0.
pub fn sph_neumann(m: usize, x: f64) -> f64 {
    assert!(x > 0.0, "spherical Neumann function needs x > 0, got {x}");
    sph_neumann_seq(m, Complex64::new(x, 0.0))[m].re
}

/// h_0^{(1)} ... h_{m_max}^{(1)} at real x > 0.
pub fn sph_hankel1_seq(m_max: usize, x: f64) -> Vec<Complex64> {
    assert!(x > 0.0, "spherical Hankel function needs x > 0, got {x}");
    let xc = Complex64::new(x, 0.0);
    let j = sph_bessel_j_seq(m_max, xc);
    let y = sph_neumann_seq(m_max, xc);
    (0..=m_max)
        .map(|m| Complex64::new(j[m].re, y[m].re))
        .collect()
}

/// Spherical Hankel function of the first kind, h_m^{(1)}(x) = j_m + i y_m.
pub fn sph_hankel1(m: usize, x: f64) -> Complex64 {
    sph_hankel1_seq(m, x)[m]
}

/// Derivative of h_m^{(1)} via h' = h_{m-1} - ((m+1)/x) h_m.
pub fn sph_hankel1_prime(m: usize, x: f64) -> Complex64 {
    let h = sph_hankel1_seq(m + 1, x);
    if m == 0 {
        -h[1]
    } else {
        h[m - 1] - ((m + 1) as f64 / x) * h[m]
    }
}

/// Ascending series j_m(x) = x^m/(2m+1)!! Σ_k (-x²/2)^k / (k!(2m+3)(2m+5)...).
fn j_series(m: usize, x: Complex64) -> Complex64 {
    let q = -x * x * 0.5;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..60 {
        term *= q / (k as f64 * (2 * m + 2 * k + 1) as f64);
        sum += term;
        if term.norm() < 1e-20 * sum.norm() {
            break;
        }
    }
    prefactor(m, x) * sum
}

/// x^m / (2m+1)!!, switching to log-domain once either factor leaves the
/// comfortable double range.
fn prefactor(m: usize, x: Complex64) -> Complex64 {
    if m <= 40 {
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..m {
            p *= x;
        }
        p / super::double_factorial(2 * m as u64 + 1)
    } else {
        let ln_mag = m as f64 * x.norm().ln() - ln_double_factorial(2 * m as u64 + 1);
        if ln_mag < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        let arg = m as f64 * x.arg();
        Complex64::from_polar(ln_mag.exp(), arg)
    }
}

fn j_upward(m_max: usize, x: Complex64) -> Vec<Complex64> {
    let mut j = Vec::with_capacity(m_max + 1);
    j.push(x.sin() / x);
    if m_max == 0 {
        return j;
    }
    j.push(x.sin() / (x * x) - x.cos() / x);
    for m in 1..m_max {
        let next = ((2 * m + 1) as f64 / x) * j[m] - j[m - 1];
        j.push(next);
    }
    j
}

fn j_miller(m_max: usize, x: Complex64) -> Vec<Complex64> {
    let xa = x.norm();
    // enough guard orders that the contaminating dominant solution decays
    // below 1e-17 relative before reaching m_max, including the slow Airy
    // transition region near m ~ |x|
    let start = m_max + 40 + (10.0 * xa.cbrt()).ceil() as usize;

    let mut out = vec![Complex64::new(0.0, 0.0); m_max + 1];
    let mut f_hi = Complex64::new(0.0, 0.0); // f_{k+1}
    let mut f_lo = Complex64::new(1e-30, 0.0); // f_k
    let mut k = start;
    loop {
        if k <= m_max {
            out[k] = f_lo;
        }
        if k == 0 {
            break;
        }
        let f_next = ((2 * k + 1) as f64 / x) * f_lo - f_hi; // f_{k-1}
        f_hi = f_lo;
        f_lo = f_next;
        k -= 1;
        if f_lo.norm() > RESCALE_THRESHOLD {
            f_lo *= RESCALE_FACTOR;
            f_hi *= RESCALE_FACTOR;
            // keep already-stored orders (indices >= k+1) in the new scale
            let lo = (k + 1).min(m_max + 1);
            for v in out[lo..].iter_mut() {
                *v *= RESCALE_FACTOR;
            }
        }
    }

    let j0_true = x.sin() / x;
    let j1_true = x.sin() / (x * x) - x.cos() / x;
    let scale = if j0_true.norm() >= j1_true.norm() {
        j0_true / f_lo
    } else {
        j1_true / f_hi
    };
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}
