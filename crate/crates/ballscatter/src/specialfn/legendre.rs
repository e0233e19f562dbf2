//! Legendre polynomials and cosine multiples (the angular factors of the
//! 3D and 2D modal series).

/// Legendre polynomial P_m(t) on [-1, 1] by the three-term recurrence.
///
/// Arguments up to 1e-12 outside the interval are clamped (round-off from
/// normalized inner products); anything further out panics.
pub fn legendre_p(m: usize, t: f64) -> f64 {
    *legendre_p_seq(m, t).last().unwrap()
}

/// All of P_0(t) ... P_m(t).
pub fn legendre_p_seq(m_max: usize, t: f64) -> Vec<f64> {
    assert!(
        t.abs() <= 1.0 + 1e-12,
        "Legendre argument {t} outside [-1, 1]"
    );
    let t = t.clamp(-1.0, 1.0);
    let mut p = Vec::with_capacity(m_max + 1);
    p.push(1.0);
    if m_max == 0 {
        return p;
    }
    p.push(t);
    for l in 1..m_max {
        let next = ((2 * l + 1) as f64 * t * p[l] - l as f64 * p[l - 1]) / (l + 1) as f64;
        p.push(next);
    }
    p
}

/// cos(mθ) for m = 0..=m_max given c = cosθ, via the Chebyshev recurrence
/// cos((m+1)θ) = 2c·cos(mθ) − cos((m−1)θ). No trigonometric calls.
pub fn cos_multiples_seq(m_max: usize, c: f64) -> Vec<f64> {
    let c = c.clamp(-1.0, 1.0);
    let mut v = Vec::with_capacity(m_max + 1);
    v.push(1.0);
    if m_max == 0 {
        return v;
    }
    v.push(c);
    for m in 1..m_max {
        v.push(2.0 * c * v[m] - v[m - 1]);
    }
    v
}
