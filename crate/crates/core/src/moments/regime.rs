//! Finite-n reading of the asymptotic zero/one statements.
//!
//! Each rule is an asymptotic statement; to apply it at a concrete `(n, r, k)`
//! "much larger" and "much smaller" are read as a factor of `margin`, and
//! unspecified constants come from [`RegimeConstants`]. Zero conditions are
//! checked before one conditions, which keeps the answer monotone in `r`.

use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::bigmath::{ln_binomial, ln_factorial, ln_falling, LN_2};
use crate::error::{Error, Result};
use crate::query::{Chromatic, PropertyQuery, SubgraphKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Property holds with probability tending to 0.
    Zero,
    /// Property holds with probability tending to 1.
    One,
    /// No rule applies.
    Unknown,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Zero => "zero",
            Regime::One => "one",
            Regime::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Slowly growing function added to `ln n` in the perfect-matching one-rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthFn {
    LogLog,
    Log,
    Zero,
}

impl GrowthFn {
    /// Clamped at 0 so tiny `n` do not shrink the denominator.
    pub fn eval(self, n: f64) -> f64 {
        let v = match self {
            GrowthFn::LogLog => libm::log(libm::log(n)),
            GrowthFn::Log => libm::log(n),
            GrowthFn::Zero => 0.0,
        };
        if v.is_finite() { v.max(0.0) } else { 0.0 }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GrowthFn::LogLog => "loglog",
            GrowthFn::Log => "log",
            GrowthFn::Zero => "zero",
        }
    }
}

impl FromStr for GrowthFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "loglog" => Ok(GrowthFn::LogLog),
            "log" => Ok(GrowthFn::Log),
            "zero" => Ok(GrowthFn::Zero),
            _ => Err(Error::invalid(format!("unknown growth function {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeConstants {
    /// Exponent slack in `k <= n^(1-eps)` and `r >= n^(4+eps)`.
    pub epsilon: f64,
    /// Perfect matchings vanish for `r >= n / c4`.
    pub c4: f64,
    /// Perfect matchings appear for `r <= n / (ln n + c5(n))`.
    pub c5: GrowthFn,
    /// Spanning mono trees vanish for `r >= c7 n`.
    pub c7: f64,
    /// Mono cliques appear for `k <= log_r(n) / divisor`.
    pub clique_lower_divisor: f64,
    /// Factor read as "much larger than".
    pub margin: f64,
}

impl Default for RegimeConstants {
    fn default() -> Self {
        RegimeConstants {
            epsilon: 0.1,
            c4: 2.5,
            c5: GrowthFn::LogLog,
            c7: 2.0,
            clique_lower_divisor: 1.704e9,
            margin: 10.0,
        }
    }
}

impl RegimeConstants {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("epsilon must lie in (0, 1)", self.epsilon > 0.0 && self.epsilon < 1.0),
            ("c4 must lie in (0, e)", self.c4 > 0.0 && self.c4 < core::f64::consts::E),
            ("c7 must exceed 1", self.c7 > 1.0 && self.c7.is_finite()),
            (
                "clique_lower_divisor must be positive",
                self.clique_lower_divisor > 0.0 && self.clique_lower_divisor.is_finite(),
            ),
            ("margin must exceed 1", self.margin > 1.0 && self.margin.is_finite()),
        ];
        match checks.iter().find(|(_, ok)| !ok) {
            Some((msg, _)) => Err(Error::invalid(*msg)),
            None => Ok(()),
        }
    }
}

/// Predicted limit of `P(property)` at `(n, r)`.
pub fn classify_regime(q: &PropertyQuery, n: u64, r: u64, c: &RegimeConstants) -> Result<Regime> {
    c.validate()?;
    if r == 0 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let n_usize = usize::try_from(n).map_err(|_| Error::invalid("n does not fit in usize"))?;
    q.validate(n_usize)?;
    let ctx = Ctx {
        n,
        r,
        k: q.k as u64,
        ln_n: libm::log(n as f64),
        ln_r: libm::log(r as f64),
        c,
    };
    Ok(match (q.kind, q.chromatic) {
        (SubgraphKind::Matching, Chromatic::Mono) => ctx.mono_matching(),
        (SubgraphKind::Matching, Chromatic::Hetero) => ctx.hetero_matching(),
        (SubgraphKind::Clique, Chromatic::Mono) => ctx.mono_clique(),
        (SubgraphKind::Clique, Chromatic::Hetero) => ctx.hetero_clique(),
        (SubgraphKind::Tree, Chromatic::Mono) => ctx.mono_tree(),
        (SubgraphKind::Tree, Chromatic::Hetero) => ctx.hetero_tree(),
    })
}

struct Ctx<'a> {
    n: u64,
    r: u64,
    k: u64,
    ln_n: f64,
    ln_r: f64,
    c: &'a RegimeConstants,
}

impl Ctx<'_> {
    fn ln_margin(&self) -> f64 {
        libm::log(self.c.margin)
    }

    /// `margin * r * ln n <= n`: `G(n, 1/r)` is then far above its
    /// connectivity and perfect-matching threshold.
    fn dense_color_class(&self) -> bool {
        self.n >= 3 && self.ln_margin() + self.ln_r + libm::log(self.ln_n) <= self.ln_n
    }

    fn mono_matching(&self) -> Regime {
        let (n, k) = (self.n, self.k);
        if k == 1 {
            return Regime::One;
        }
        let nf = n as f64;
        if 2 * k + 1 >= n {
            if self.r as f64 >= nf / self.c.c4 {
                return Regime::Zero;
            }
            if self.dense_color_class() || self.r as f64 <= nf / (self.ln_n + self.c.c5.eval(nf)) {
                return Regime::One;
            }
            return Regime::Unknown;
        }
        let ln_t = (ln_falling(n, 2 * k) - k as f64 * LN_2 - ln_factorial(k)) / (k - 1) as f64;
        if self.ln_r >= self.ln_margin() + ln_t {
            return Regime::Zero;
        }
        if self.dense_color_class() || self.ln_margin() + self.ln_r <= ln_t {
            return Regime::One;
        }
        Regime::Unknown
    }

    fn hetero_matching(&self) -> Regime {
        if self.r < self.k {
            return Regime::Zero;
        }
        if self.k == 1 || (self.k as f64) <= libm::pow(self.n as f64, 1.0 - self.c.epsilon) {
            return Regime::One;
        }
        Regime::Unknown
    }

    fn mono_clique(&self) -> Regime {
        let k = self.k;
        if k <= 2 || self.r == 1 {
            return Regime::One;
        }
        let m = (k * (k - 1) / 2 - 1) as f64;
        let ln_t = k as f64 * self.ln_n / m;
        // Fixed-k rule first: it is the sharper of the two at small k.
        if self.ln_r >= self.ln_margin() + ln_t {
            return Regime::Zero;
        }
        if self.ln_r <= ln_t - (LN_2 + ln_factorial(k)) / m {
            return Regime::One;
        }
        let log_r_n = self.ln_n / self.ln_r;
        if k as f64 >= 2.0 * log_r_n {
            return Regime::Zero;
        }
        if k as f64 <= log_r_n / self.c.clique_lower_divisor {
            return Regime::One;
        }
        Regime::Unknown
    }

    fn hetero_clique(&self) -> Regime {
        let k = self.k;
        if k <= 2 {
            return Regime::One;
        }
        if self.r < k * (k - 1) / 2 {
            return Regime::Zero;
        }
        if self.ln_r >= (4.0 + self.c.epsilon) * self.ln_n {
            return Regime::One;
        }
        Regime::Unknown
    }

    fn mono_tree(&self) -> Regime {
        let (n, k) = (self.n, self.k);
        if k <= 2 || self.r == 1 {
            return Regime::One;
        }
        let fixed_k = k < n;
        let ln_t = libm::log(k as f64) + ln_binomial(n, k) / (k - 2) as f64;
        if fixed_k && self.ln_r >= self.ln_margin() + ln_t {
            return Regime::Zero;
        }
        if k == n && self.r as f64 >= self.c.c7 * n as f64 {
            return Regime::Zero;
        }
        if fixed_k && self.ln_r <= ln_t - self.ln_n {
            return Regime::One;
        }
        if self.dense_color_class() {
            return Regime::One;
        }
        Regime::Unknown
    }

    fn hetero_tree(&self) -> Regime {
        let k = self.k;
        if k == 1 {
            return Regime::One;
        }
        if self.r < k - 1 {
            return Regime::Zero;
        }
        if (k as f64) <= self.ln_n {
            return Regime::One;
        }
        Regime::Unknown
    }
}
