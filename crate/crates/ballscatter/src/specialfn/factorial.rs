//! Odd double factorials m!! = 1·3·5···m.

/// Double factorial of an odd positive integer, as a float.
///
/// Exact product semantics while the result fits in f64 (the product is
/// exactly representable up to 2^53 ≈ 9e15, i.e. m ≤ 19, and correctly
/// rounded well beyond); overflows to infinity past m ≈ 300. Large-order
/// series should use [`ln_double_factorial`] instead.
///
/// Panics if `m` is even or not positive.
pub fn double_factorial(m: u64) -> f64 {
    assert!(m >= 1 && m % 2 == 1, "double factorial needs odd m >= 1, got {m}");
    let mut acc = 1.0_f64;
    let mut k = 1;
    while k <= m {
        acc *= k as f64;
        k += 2;
    }
    acc
}

/// Natural log of the odd double factorial, safe for m up to millions.
pub fn ln_double_factorial(m: u64) -> f64 {
    assert!(m >= 1 && m % 2 == 1, "double factorial needs odd m >= 1, got {m}");
    let mut acc = 0.0_f64;
    let mut k = 3;
    while k <= m {
        acc += (k as f64).ln();
        k += 2;
    }
    acc
}

/// ln(m!) by direct summation; orders stay small enough that this is both
/// exact to ~1 ulp per term and cheap.
pub(crate) fn ln_factorial(m: u64) -> f64 {
    let mut acc = 0.0_f64;
    for k in 2..=m {
        acc += (k as f64).ln();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(double_factorial(1), 1.0);
        assert_eq!(double_factorial(5), 15.0);
        // direct product oracle: 1*3*5*7*9*11*13*15
        let direct: u64 = (1..=15u64).step_by(2).product();
        assert_eq!(direct, 2027025);
        assert_eq!(double_factorial(15), direct as f64);
    }

    #[test]
    fn log_domain_matches_direct_range() {
        for m in (1..=99u64).step_by(2) {
            let rel = (ln_double_factorial(m) - double_factorial(m).ln()).abs()
                / double_factorial(m).ln().abs().max(1.0);
            assert!(rel < 1e-13, "m={m} rel={rel}");
        }
        // survives where the direct product overflows
        assert!(double_factorial(401).is_infinite());
        assert!(ln_double_factorial(401).is_finite());
    }

    #[test]
    #[should_panic]
    fn even_argument_is_a_domain_error() {
        double_factorial(4);
    }

    #[test]
    #[should_panic]
    fn zero_argument_is_a_domain_error() {
        double_factorial(0);
    }
}
