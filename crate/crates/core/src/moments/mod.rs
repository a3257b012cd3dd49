//! Closed-form first and second moment quantities for k-matchings, and the
//! threshold functions for matchings, cliques and trees.
//!
//! Every value comes back as a [`ScalarValue`]: an exact rational when the
//! operands stay under a size cap, and always a natural-log value computed
//! along an independent floating-point route (log-gamma and log-sum-exp), so
//! `n = 10^6` is as cheap as `n = 6`.

mod regime;

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::bigmath::{
    big_pow, binomial, factorial, falling, ln_binomial, ln_factorial, ln_falling, ln_rational,
    log_sum_exp, ratio, LN_2,
};
use crate::error::{Error, Result};
use crate::oracle::count_k_matchings;
use crate::query::{PropertyQuery, SubgraphKind};

pub use regime::{classify_regime, GrowthFn, Regime, RegimeConstants};

/// Exact evaluation is skipped once the operands would exceed this many bits.
pub const DEFAULT_EXACT_BITS: u64 = 64 * 1024;

/// A value known exactly, in log space, or both.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarValue {
    pub exact: Option<BigRational>,
    /// Natural log; `-inf` encodes zero.
    pub log_value: f64,
}

impl ScalarValue {
    pub fn zero() -> Self {
        ScalarValue {
            exact: Some(BigRational::zero()),
            log_value: f64::NEG_INFINITY,
        }
    }

    /// `log_value` is taken from `exact` when present; `log_fallback` is the
    /// log-space evaluation used otherwise.
    fn new(exact: Option<BigRational>, log_fallback: f64) -> Self {
        let log_value = exact.as_ref().map_or(log_fallback, ln_rational);
        ScalarValue { exact, log_value }
    }

    /// `exp(log_value)`; overflows to infinity for huge values.
    pub fn value(&self) -> f64 {
        libm::exp(self.log_value)
    }

    /// Natural log of the exact value, if present.
    pub fn exact_log(&self) -> Option<f64> {
        self.exact.as_ref().map(ln_rational)
    }
}

/// Evaluator with a configurable exact-arithmetic size cap.
#[derive(Clone, Copy, Debug)]
pub struct Moments {
    pub exact_bits: u64,
}

impl Default for Moments {
    fn default() -> Self {
        Moments {
            exact_bits: DEFAULT_EXACT_BITS,
        }
    }
}

fn check_matching(n: u64, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    check_size(n, k)
}

fn check_size(n: u64, k: u64) -> Result<()> {
    if k.checked_mul(2).is_none_or(|m| m > n) {
        return Err(Error::invalid(format!("2k exceeds n (k = {k}, n = {n})")));
    }
    Ok(())
}

fn check_r(r: u64) -> Result<()> {
    if r == 0 {
        Err(Error::invalid("r must be at least 1"))
    } else {
        Ok(())
    }
}

fn ln(x: u64) -> f64 {
    libm::log(x as f64)
}

impl Moments {
    fn fits(&self, ln_size: f64) -> bool {
        ln_size / LN_2 <= self.exact_bits as f64
    }

    /// `E(X) = n! / ((n-2k)! 2^k k! r^(k-1))`, the expected number of
    /// monochromatic k-matchings.
    /// `k = 0` gives `r`: the empty matching is monochromatic in every color.
    pub fn expected_mono(&self, n: u64, k: u64, r: u64) -> Result<ScalarValue> {
        check_size(n, k)?;
        check_r(r)?;
        if k == 0 {
            return Ok(ScalarValue::new(Some(BigRational::from_integer(r.into())), ln(r)));
        }
        let (num, den) = (ln_falling(n, 2 * k), k as f64 * LN_2 + ln_factorial(k) + (k - 1) as f64 * ln(r));
        let exact = self.fits(num + den).then(|| {
            ratio(
                falling(n, 2 * k),
                big_pow(2, k) * factorial(k) * big_pow(r, k - 1),
            )
        });
        Ok(ScalarValue::new(exact, num - den))
    }

    /// `E(Y) = n! / ((n-2k)! 2^k k!) * r! / ((r-k)! r^k)`, the expected number
    /// of rainbow k-matchings; zero when `r < k`.
    pub fn expected_hetero(&self, n: u64, k: u64, r: u64) -> Result<ScalarValue> {
        check_size(n, k)?;
        check_r(r)?;
        if k == 0 {
            return Ok(ScalarValue::new(Some(BigRational::from_integer(1.into())), 0.0));
        }
        if r < k {
            return Ok(ScalarValue::zero());
        }
        let num = ln_falling(n, 2 * k) + ln_falling(r, k);
        let den = k as f64 * LN_2 + ln_factorial(k) + k as f64 * ln(r);
        let exact = self.fits(num + den).then(|| {
            ratio(
                falling(n, 2 * k) * falling(r, k),
                big_pow(2, k) * factorial(k) * big_pow(r, k),
            )
        });
        Ok(ScalarValue::new(exact, num - den))
    }

    /// `E(X) = n! / ((n/2)! 2^(n/2) r^(n/2-1))` for perfect matchings.
    pub fn expected_mono_perfect(&self, n: u64, r: u64) -> Result<ScalarValue> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::invalid(format!("perfect matchings need even n >= 2, got {n}")));
        }
        check_r(r)?;
        let h = n / 2;
        let num = ln_factorial(n);
        let den = ln_factorial(h) + h as f64 * LN_2 + (h - 1) as f64 * ln(r);
        let exact = self.fits(num + den).then(|| {
            ratio(
                factorial(n),
                factorial(h) * big_pow(2, h) * big_pow(r, h - 1),
            )
        });
        Ok(ScalarValue::new(exact, num - den))
    }

    /// Upper bound on `Δ / E(X)^2`:
    /// `(k!^2 / n!) Σ_{s=1}^{k-1} (n-2s)! 2^s r^(s-1) / (s! (k-s)!^2)`.
    /// Zero (empty sum) for `k = 1`.
    pub fn delta_ratio_bound_mono(&self, n: u64, k: u64, r: u64) -> Result<ScalarValue> {
        check_matching(n, k)?;
        check_r(r)?;
        if k == 1 {
            return Ok(ScalarValue::zero());
        }
        let lk = ln_factorial(k);
        let terms: Vec<f64> = (1..k)
            .map(|s| {
                2.0 * lk - ln_falling(n, 2 * s) + s as f64 * LN_2 + (s - 1) as f64 * ln(r)
                    - ln_factorial(s)
                    - 2.0 * ln_factorial(k - s)
            })
            .collect();
        let size = ln_falling(n, 2 * k) + 3.0 * lk + k as f64 * (LN_2 + ln(r));
        let exact = self.fits(size).then(|| {
            let k2 = factorial(k).pow(2u32);
            (1..k).fold(BigRational::zero(), |acc, s| {
                acc + ratio(
                    &k2 * big_pow(2, s) * big_pow(r, s - 1),
                    falling(n, 2 * s) * factorial(s) * factorial(k - s).pow(2u32),
                )
            })
        });
        Ok(ScalarValue::new(exact, log_sum_exp(&terms)))
    }

    /// Upper bound on `Δ' / E(Y)^2`:
    /// `(k!^2 / (n! r!)) Σ_{s=1}^{k-1} (n-2s)! (r-s)! (2r)^s / (s! (k-s)!^2)`.
    /// Requires `r >= k`; zero for `k = 1`.
    pub fn delta_ratio_bound_hetero(&self, n: u64, k: u64, r: u64) -> Result<ScalarValue> {
        check_matching(n, k)?;
        if r < k {
            return Err(Error::invalid(format!("rainbow bound needs r >= k, got r = {r}, k = {k}")));
        }
        if k == 1 {
            return Ok(ScalarValue::zero());
        }
        let lk = ln_factorial(k);
        let l2r = LN_2 + ln(r);
        let terms: Vec<f64> = (1..k)
            .map(|s| {
                2.0 * lk + s as f64 * l2r
                    - ln_falling(n, 2 * s)
                    - ln_falling(r, s)
                    - ln_factorial(s)
                    - 2.0 * ln_factorial(k - s)
            })
            .collect();
        let size = ln_falling(n, 2 * k) + ln_falling(r, k) + 3.0 * lk + k as f64 * l2r;
        let exact = self.fits(size).then(|| {
            let k2 = factorial(k).pow(2u32);
            (1..k).fold(BigRational::zero(), |acc, s| {
                acc + ratio(
                    &k2 * big_pow(2 * r, s),
                    falling(n, 2 * s) * falling(r, s) * factorial(s) * factorial(k - s).pow(2u32),
                )
            })
        });
        Ok(ScalarValue::new(exact, log_sum_exp(&terms)))
    }

    /// Threshold function in `r` for the monochromatic property:
    ///
    /// * matching: `(n! / ((n-2k)! 2^k k!))^(1/(k-1))`, `k >= 2`
    /// * clique: `n^(k / (C(k,2) - 1))`, `k >= 3`
    /// * tree: `k C(n,k)^(1/(k-2))`, `k >= 3`
    ///
    /// `exact` is set only when the root is an integer.
    pub fn threshold(&self, kind: SubgraphKind, n: u64, k: u64) -> Result<ScalarValue> {
        match kind {
            SubgraphKind::Matching => {
                check_matching(n, k)?;
                if k < 2 {
                    return Err(Error::invalid("matching threshold needs k >= 2"));
                }
                let ln_q = ln_falling(n, 2 * k) - k as f64 * LN_2 - ln_factorial(k);
                let exact = if self.fits(ln_q) {
                    integral_root(&count_k_matchings(n as usize, k as usize)?, k - 1)
                        .map(|root| BigRational::from_integer(root.into()))
                } else {
                    None
                };
                Ok(ScalarValue::new(exact, ln_q / (k - 1) as f64))
            }
            SubgraphKind::Clique => {
                if k < 3 || k > n {
                    return Err(Error::invalid(format!("clique threshold needs 3 <= k <= n, got k = {k}")));
                }
                let m = k * (k - 1) / 2 - 1;
                let exact = self
                    .fits(k as f64 * ln(n))
                    .then(|| integral_root(&big_pow(n, k), m))
                    .flatten()
                    .map(|root| BigRational::from_integer(root.into()));
                Ok(ScalarValue::new(exact, k as f64 * ln(n) / m as f64))
            }
            SubgraphKind::Tree => {
                if k < 3 || k > n {
                    return Err(Error::invalid(format!("tree threshold needs 3 <= k <= n, got k = {k}")));
                }
                let ln_c = ln_binomial(n, k);
                let exact = self
                    .fits(ln_c)
                    .then(|| integral_root(&binomial(n, k), k - 2))
                    .flatten()
                    .map(|root| BigRational::from_integer((root * k).into()));
                Ok(ScalarValue::new(exact, ln(k) + ln_c / (k - 2) as f64))
            }
        }
    }

    pub fn report(&self, n: u64, k: u64, r: u64, consts: &RegimeConstants) -> Result<MomentReport> {
        check_matching(n, k)?;
        check_r(r)?;
        let q = count_k_matchings(n as usize, k as usize)?;
        let query = PropertyQuery::mono_matching(k as usize);
        Ok(MomentReport {
            n,
            k,
            r,
            q,
            e_mono: self.expected_mono(n, k, r)?,
            e_hetero: self.expected_hetero(n, k, r)?,
            delta_ratio_bound_mono: self.delta_ratio_bound_mono(n, k, r)?,
            delta_ratio_bound_hetero: (r >= k).then(|| self.delta_ratio_bound_hetero(n, k, r)).transpose()?,
            threshold_value: (k >= 2).then(|| self.threshold(SubgraphKind::Matching, n, k)).transpose()?,
            regime: classify_regime(&query, n, r, consts)?,
        })
    }
}

/// `x^(1/m)` when it is an integer.
fn integral_root(x: &BigUint, m: u64) -> Option<BigUint> {
    if m == 1 {
        return Some(x.clone());
    }
    let root = x.nth_root(u32::try_from(m).ok()?);
    (Pow::pow(&root, m as u32) == *x).then_some(root)
}

/// Closed-form k-matching quantities at one `(n, k, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport {
    pub n: u64,
    pub k: u64,
    pub r: u64,
    /// Number of k-matchings of `K_n`.
    pub q: BigUint,
    pub e_mono: ScalarValue,
    pub e_hetero: ScalarValue,
    pub delta_ratio_bound_mono: ScalarValue,
    /// Absent when `r < k`.
    pub delta_ratio_bound_hetero: Option<ScalarValue>,
    /// Matching threshold; absent for `k = 1`.
    pub threshold_value: Option<ScalarValue>,
    /// Predicted limit for the monochromatic k-matching property.
    pub regime: Regime,
}

pub fn expected_mono(n: u64, k: u64, r: u64) -> Result<ScalarValue> {
    Moments::default().expected_mono(n, k, r)
}

pub fn expected_hetero(n: u64, k: u64, r: u64) -> Result<ScalarValue> {
    Moments::default().expected_hetero(n, k, r)
}

pub fn expected_mono_perfect(n: u64, r: u64) -> Result<ScalarValue> {
    Moments::default().expected_mono_perfect(n, r)
}

pub fn delta_ratio_bound_mono(n: u64, k: u64, r: u64) -> Result<ScalarValue> {
    Moments::default().delta_ratio_bound_mono(n, k, r)
}

pub fn delta_ratio_bound_hetero(n: u64, k: u64, r: u64) -> Result<ScalarValue> {
    Moments::default().delta_ratio_bound_hetero(n, k, r)
}

pub fn threshold(kind: SubgraphKind, n: u64, k: u64) -> Result<ScalarValue> {
    Moments::default().threshold(kind, n, k)
}

pub fn report(n: u64, k: u64, r: u64, consts: &RegimeConstants) -> Result<MomentReport> {
    Moments::default().report(n, k, r, consts)
}

impl MomentReport {
    /// `e_mono == q * r^(1-k)` as rationals, when exact values are present.
    pub fn is_consistent(&self) -> bool {
        match &self.e_mono.exact {
            Some(e) => {
                let rhs = ratio(self.q.clone() * self.r, big_pow(self.r, self.k));
                *e == rhs
            }
            None => true,
        }
    }
}
