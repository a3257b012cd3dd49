//! Big-integer combinatorics and logarithms of exact values.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) const LN_2: f64 = core::f64::consts::LN_2;

/// `x (x-1) ... (x-m+1)`; zero when `m > x`.
pub fn falling(x: u64, m: u64) -> BigUint {
    if m > x {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..m {
        acc *= x - i;
    }
    acc
}

pub fn factorial(x: u64) -> BigUint {
    falling(x, x)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // multiplicative formula keeps every prefix integral
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}

/// Natural log of a positive big integer, accurate to a few ulps.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return libm::log(x.to_u64().unwrap() as f64);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    libm::log(top as f64) + shift as f64 * LN_2
}

/// Natural log of a non-negative rational; `-inf` for zero.
pub fn ln_rational(x: &BigRational) -> f64 {
    assert!(!x.is_negative(), "log of a negative rational");
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    ln_biguint(num) - ln_biguint(den)
}

pub fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

pub fn ln_factorial(x: u64) -> f64 {
    if x < 2 {
        0.0
    } else {
        ln_gamma(x as f64 + 1.0)
    }
}

/// `ln(x (x-1) ... (x-m+1))`. Short products are summed term by term so
/// that large `x` does not lose digits to a difference of two huge log-gammas.
pub fn ln_falling(x: u64, m: u64) -> f64 {
    if m > x {
        return f64::NEG_INFINITY;
    }
    if m <= 4096 {
        (0..m).map(|i| libm::log((x - i) as f64)).sum()
    } else {
        ln_factorial(x) - ln_factorial(x - m)
    }
}

pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    ln_falling(n, k) - ln_factorial(k)
}

/// `ln(sum exp(terms))`.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let s: f64 = terms.iter().map(|t| libm::exp(t - max)).sum();
    max + libm::log(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(falling(10, 3), BigUint::from(720u32));
        assert_eq!(falling(2, 3), BigUint::zero());
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(big_pow(3, 4), BigUint::from(81u32));
    }

    #[test]
    fn binomial_matches_factorial_ratio() {
        for n in 0..40u64 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k),
                    factorial(n) / (factorial(k) * factorial(n - k))
                );
            }
        }
    }

    #[test]
    fn logs_of_big_values() {
        let f = factorial(300);
        let direct: f64 = (2..=300).map(|i| libm::log(i as f64)).sum();
        assert!((ln_biguint(&f) - direct).abs() < 1e-9);
        assert!((ln_factorial(300) - direct).abs() < 1e-9);
        assert!((ln_falling(10_000, 5000) - (ln_factorial(10_000) - ln_factorial(5000))).abs() < 1e-6);
    }

    #[test]
    fn log_sum_exp_basics() {
        let v = log_sum_exp(&[libm::log(2.0), libm::log(3.0)]);
        assert!((v - libm::log(5.0)).abs() < 1e-15);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }
}
