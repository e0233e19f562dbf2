//! Cylindrical Bessel functions J_m, Y_m, H_m^{(1)} for the 2D (disc) case.
//!
//! J_m at complex argument: ascending series for |z| <= 9 (cancellation
//! stays under ~3 digits there), otherwise Miller's downward recurrence
//! normalized with the Neumann sum J_0(z) + 2 Σ J_{2k}(z) = 1, which holds
//! for any complex z and avoids needing an independent J_0.
//!
//! Y_m at real argument: ascending series for x < 2, otherwise the Steed
//! continued fraction for (J_0' + i Y_0')/(J_0 + i Y_0) combined with the
//! Miller-normalized J_0, then upward recurrence (stable: Y is the dominant
//! solution). The two branches overlap on [2, 9] and are cross-checked in
//! the tests. Y_m at complex argument (layered media with absorption) uses
//! the ascending series and is supported for |z| up to ~12.

use num_complex::Complex64;

use super::factorial::ln_factorial;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_RADIUS: f64 = 9.0;
// see the spherical module: stay well below the norm_sqr overflow range of
// complex division; powers of two rescale exactly
const RESCALE_THRESHOLD: f64 = f64::from_bits((1023u64 + 490) << 52); // 2^490
const RESCALE_FACTOR: f64 = f64::from_bits((1023u64 - 490) << 52); // 2^-490

/// J_0(z) ... J_{m_max}(z) at complex z.
pub fn cyl_bessel_j_seq(m_max: usize, z: Complex64) -> Vec<Complex64> {
    let za = z.norm();
    if za == 0.0 {
        let mut out = vec![Complex64::new(0.0, 0.0); m_max + 1];
        out[0] = Complex64::new(1.0, 0.0);
        return out;
    }
    if za <= SERIES_RADIUS {
        return (0..=m_max).map(|m| j_series(m, z)).collect();
    }
    j_miller_unity(m_max, z)
}

/// Cylindrical Bessel function of the first kind, J_m(z).
pub fn cyl_bessel_j(m: usize, z: Complex64) -> Complex64 {
    let za = z.norm();
    if za > 0.0 && za <= SERIES_RADIUS {
        return j_series(m, z);
    }
    cyl_bessel_j_seq(m, z)[m]
}

/// J_m'(z) via J_m' = J_{m-1} - (m/z) J_m (and J_0' = -J_1).
pub fn cyl_bessel_j_prime(m: usize, z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        return match m {
            1 => Complex64::new(0.5, 0.0),
            _ => Complex64::new(0.0, 0.0),
        };
    }
    let j = cyl_bessel_j_seq(m + 1, z);
    if m == 0 {
        -j[1]
    } else {
        j[m - 1] - (m as f64 / z) * j[m]
    }
}

/// Joint evaluation of J, J', Y, Y' for orders 0..=m_max at real x > 0.
pub struct CylJySeq {
    pub j: Vec<f64>,
    pub jp: Vec<f64>,
    pub y: Vec<f64>,
    pub yp: Vec<f64>,
}

pub fn cyl_jy_real_seq(m_max: usize, x: f64) -> CylJySeq {
    assert!(x > 0.0, "cylindrical Y/H need x > 0, got {x}");
    let z = Complex64::new(x, 0.0);
    // J plus one extra order for the derivative recurrence
    let jc = cyl_bessel_j_seq(m_max + 1, z);
    let j: Vec<f64> = jc.iter().map(|v| v.re).collect();
    let mut jp = Vec::with_capacity(m_max + 1);
    jp.push(-j[1]);
    for m in 1..=m_max {
        jp.push(j[m - 1] - m as f64 / x * j[m]);
    }

    let (y0, y1) = if x < 2.0 {
        let (a, b) = y01_series(z);
        (a.re, b.re)
    } else {
        let (p, q) = hankel_ratio_cf2(x);
        // J_0' = p J_0 - q Y_0 and Y_0' = q J_0 + p Y_0, so
        let y0 = (p * j[0] - jp[0]) / q;
        let y0p = q * j[0] + p * y0;
        (y0, -y0p) // Y_1 = -Y_0'
    };
    let mut y = Vec::with_capacity(m_max + 2);
    y.push(y0);
    y.push(y1);
    for m in 1..m_max {
        let next = 2.0 * m as f64 / x * y[m] - y[m - 1];
        y.push(next);
    }
    y.truncate(m_max + 1);
    let mut yp = Vec::with_capacity(m_max + 1);
    yp.push(if m_max >= 1 { -y[1] } else { -y1 });
    for m in 1..=m_max {
        let ym1 = y[m - 1];
        yp.push(ym1 - m as f64 / x * y[m]);
    }

    CylJySeq {
        j: j[..=m_max].to_vec(),
        jp,
        y,
        yp,
    }
}

/// Cylindrical Neumann function Y_m(x) for real x > 0.
pub fn cyl_bessel_y(m: usize, x: f64) -> f64 {
    cyl_jy_real_seq(m, x).y[m]
}

pub fn cyl_bessel_y_prime(m: usize, x: f64) -> f64 {
    cyl_jy_real_seq(m, x).yp[m]
}

/// Hankel function of the first kind H_m^{(1)}(x) = J_m + i Y_m, x > 0.
pub fn cyl_hankel1(m: usize, x: f64) -> Complex64 {
    let s = cyl_jy_real_seq(m, x);
    Complex64::new(s.j[m], s.y[m])
}

pub fn cyl_hankel1_prime(m: usize, x: f64) -> Complex64 {
    let s = cyl_jy_real_seq(m, x);
    Complex64::new(s.jp[m], s.yp[m])
}

/// Y_0(z) ... Y_{m_max}(z) at complex z by ascending series plus upward
/// recurrence. Cancellation grows with |z|; intended for |z| <= ~12 (layer
/// arguments k·n·r with complex n stay well inside that at desk scale).
pub fn cyl_neumann_seq_complex(m_max: usize, z: Complex64) -> Vec<Complex64> {
    assert!(z.norm() > 0.0, "cylindrical Neumann function needs z != 0");
    let (y0, y1) = y01_series(z);
    let mut y = Vec::with_capacity(m_max + 1);
    y.push(y0);
    if m_max == 0 {
        return y;
    }
    y.push(y1);
    for m in 1..m_max {
        let next = (2.0 * m as f64 / z) * y[m] - y[m - 1];
        y.push(next);
    }
    y
}

/// Ascending series J_m(z) = (z/2)^m/m! Σ_k (-(z/2)²)^k / (k! (m+k)!/m!).
fn j_series(m: usize, z: Complex64) -> Complex64 {
    let q = -(z * 0.5) * (z * 0.5);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..200 {
        term *= q / (k as f64 * (m + k) as f64);
        sum += term;
        if term.norm() < 1e-20 * sum.norm() {
            break;
        }
    }
    prefactor(m, z) * sum
}

/// (z/2)^m / m!, in log-domain for large m.
fn prefactor(m: usize, z: Complex64) -> Complex64 {
    let h = z * 0.5;
    if m <= 30 {
        let mut p = Complex64::new(1.0, 0.0);
        for k in 1..=m {
            p *= h / k as f64;
        }
        p
    } else {
        let ln_mag = m as f64 * h.norm().ln() - ln_factorial(m as u64);
        if ln_mag < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(ln_mag.exp(), m as f64 * h.arg())
    }
}

fn j_miller_unity(m_max: usize, z: Complex64) -> Vec<Complex64> {
    let za = z.norm();
    let base = (m_max as f64).max(za);
    let start = base.ceil() as usize + 30 + (12.0 * base.cbrt()).ceil() as usize;

    let mut out = vec![Complex64::new(0.0, 0.0); m_max + 1];
    let mut sum = Complex64::new(0.0, 0.0); // J_0 + 2 Σ J_{2k}
    let mut f_hi = Complex64::new(0.0, 0.0);
    let mut f_lo = Complex64::new(1e-30, 0.0);
    let mut k = start;
    loop {
        if k <= m_max {
            out[k] = f_lo;
        }
        if k % 2 == 0 {
            sum += if k == 0 { f_lo } else { 2.0 * f_lo };
        }
        if k == 0 {
            break;
        }
        let f_next = (2 * k) as f64 / z * f_lo - f_hi;
        f_hi = f_lo;
        f_lo = f_next;
        k -= 1;
        if f_lo.norm() > RESCALE_THRESHOLD {
            f_lo *= RESCALE_FACTOR;
            f_hi *= RESCALE_FACTOR;
            sum *= RESCALE_FACTOR;
            let lo = (k + 1).min(m_max + 1);
            for v in out[lo..].iter_mut() {
                *v *= RESCALE_FACTOR;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= sum;
    }
    out
}

/// Ascending series for Y_0(z), Y_1(z) (principal branch of ln).
fn y01_series(z: Complex64) -> (Complex64, Complex64) {
    let two_over_pi = std::f64::consts::FRAC_2_PI;
    let lg = (z * 0.5).ln() + EULER_GAMMA;
    let q = (z * 0.5) * (z * 0.5);

    // Y_0 = (2/pi)[(ln(z/2)+gamma) J_0 + Σ_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2]
    let j0 = j_series(0, z);
    let mut term = Complex64::new(1.0, 0.0); // (-q)^k/(k!)^2
    let mut harmonic = 0.0;
    let mut sum0 = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        term *= -q / ((k * k) as f64);
        harmonic += 1.0 / k as f64;
        let contrib = -harmonic * term; // (-1)^{k+1} H_k q^k/(k!)^2
        sum0 += contrib;
        if term.norm() * harmonic < 1e-19 * sum0.norm().max(1.0) {
            break;
        }
    }
    let y0 = two_over_pi * (lg * j0 + sum0);

    // Y_1 = (2/pi) ln(z/2) J_1 - 2/(pi z)
    //       - (z/(2pi)) Σ_k [psi(k+1)+psi(k+2)] (-q)^k / (k!(k+1)!)
    let j1 = j_series(1, z);
    let mut term = Complex64::new(1.0, 0.0); // (-q)^k/(k!(k+1)!)
    let mut hk = 0.0; // H_k
    let mut sum1 = Complex64::new(0.0, 0.0);
    for k in 0..200 {
        if k > 0 {
            term *= -q / ((k * (k + 1)) as f64);
            hk += 1.0 / k as f64;
        }
        let psi_sum = -2.0 * EULER_GAMMA + 2.0 * hk + 1.0 / (k + 1) as f64;
        let contrib = psi_sum * term;
        sum1 += contrib;
        if k > 3 && contrib.norm() < 1e-19 * sum1.norm().max(1.0) {
            break;
        }
    }
    let y1 = two_over_pi * ((z * 0.5).ln() * j1) - two_over_pi / z
        - z * 0.5 * std::f64::consts::FRAC_1_PI * sum1;

    (y0, y1)
}

/// Steed's continued fraction for p + i q = H_0^{(1)'}(x)/H_0^{(1)}(x),
/// convergent for x >= 2:
///   p + iq = i - 1/(2x) + (i/x) K,
///   K = a_1/(b_1 + a_2/(b_2 + ...)), a_k = (k - 1/2)^2, b_k = 2(x + k i).
fn hankel_ratio_cf2(x: f64) -> (f64, f64) {
    // Lentz seed: small enough to not bias the fraction, large enough that
    // norm_sqr() in complex division stays normal
    let tiny = Complex64::new(1e-100, 0.0);
    let mut f = tiny;
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..10_000 {
        let a = Complex64::new((k as f64 - 0.5).powi(2), 0.0);
        let b = Complex64::new(2.0 * x, 2.0 * k as f64);
        d = b + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        d = d.inv();
        c = b + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    let ratio = Complex64::new(-0.5 / x, 1.0) + Complex64::i() / x * f;
    (ratio.re, ratio.im)
}
