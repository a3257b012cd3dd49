//! Text and JSON encodings for colorings, rationals, log values and results.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use chromathresh_core::detect::Detection;
use chromathresh_core::moments::{MomentReport, ScalarValue};
use chromathresh_core::montecarlo::Estimate;
use chromathresh_core::oracle::ExactStats;
use chromathresh_core::graph::{edge_count, edge_endpoints};
use chromathresh_core::{ColoredGraph, PropertyQuery};

use crate::error::{Error, Result};

/// `"n r"` on the first line, then the `C(n,2)` colors in edge-index order.
pub fn write_text(g: &ColoredGraph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.r());
    if !g.colors().is_empty() {
        let cols: Vec<String> = g.colors().iter().map(u32::to_string).collect();
        s.push_str(&cols.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_text(input: &str) -> Result<ColoredGraph> {
    let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(Error::Parse {
            line: hl + 1,
            msg: format!("expected header \"n r\", got {header:?}"),
        });
    }
    let n: usize = parse_num(nums[0], hl)?;
    let r: u32 = parse_num(nums[1], hl)?;
    let mut colors = Vec::with_capacity(edge_count(n));
    for (i, line) in lines {
        for tok in line.split_whitespace() {
            colors.push(parse_num(tok, i)?);
        }
    }
    if colors.len() != edge_count(n) {
        return Err(Error::Parse {
            line: hl + 1,
            msg: format!("expected {} colors for n = {n}, got {}", edge_count(n), colors.len()),
        });
    }
    Ok(ColoredGraph::new(n, r, colors)?)
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line: line + 1,
        msg: format!("not a non-negative integer: {tok:?}"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub n: usize,
    pub r: u32,
    pub colors: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ColoringJson {
    pub fn new(g: &ColoredGraph, seed: Option<u64>) -> Self {
        ColoringJson {
            n: g.n(),
            r: g.r(),
            colors: g.colors().to_vec(),
            seed,
        }
    }

    pub fn into_graph(self) -> Result<ColoredGraph> {
        Ok(ColoredGraph::new(self.n, self.r, self.colors)?)
    }
}

/// Accepts either encoding; JSON is recognized by a leading `{`.
pub fn parse_coloring(input: &str) -> Result<ColoredGraph> {
    if input.trim_start().starts_with('{') {
        serde_json::from_str::<ColoringJson>(input)?.into_graph()
    } else {
        parse_text(input)
    }
}

/// Reduced `"num/den"`, always with a denominator.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Usage(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => return parse_decimal(s),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.sign() == Sign::NoSign {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// `"12.5"` as the exact rational 25/2.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::Usage(format!("not a decimal number: {s:?}"));
    let s = s.trim();
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{frac}", if int.is_empty() { "0" } else { int });
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(num, den))
}

/// Natural-log values: 15 significant digits, `"-inf"` for zero.
pub fn log_string(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = 14 - mag;
    if (0..=20).contains(&decimals) {
        let s = format!("{x:.*}", decimals as usize);
        trim_zeros(&s)
    } else {
        format!("{x:.14e}")
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub log_value: String,
}

impl From<&ScalarValue> for ScalarJson {
    fn from(v: &ScalarValue) -> Self {
        ScalarJson {
            exact: v.exact.as_ref().map(rational_string),
            log_value: log_string(v.log_value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentsJson {
    pub n: u64,
    pub k: u64,
    pub r: u64,
    pub q: String,
    pub e_mono: ScalarJson,
    pub e_hetero: ScalarJson,
    pub delta_ratio_bound_mono: ScalarJson,
    pub delta_ratio_bound_hetero: Option<ScalarJson>,
    pub threshold_value: Option<ScalarJson>,
    pub regime: String,
}

impl From<&MomentReport> for MomentsJson {
    fn from(m: &MomentReport) -> Self {
        MomentsJson {
            n: m.n,
            k: m.k,
            r: m.r,
            q: m.q.to_string(),
            e_mono: (&m.e_mono).into(),
            e_hetero: (&m.e_hetero).into(),
            delta_ratio_bound_mono: (&m.delta_ratio_bound_mono).into(),
            delta_ratio_bound_hetero: m.delta_ratio_bound_hetero.as_ref().map(Into::into),
            threshold_value: m.threshold_value.as_ref().map(Into::into),
            regime: m.regime.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactJson {
    pub n: usize,
    pub r: u64,
    pub property: String,
    pub k: usize,
    pub total_colorings: String,
    pub colorings_with_property: String,
    pub probability: String,
    pub expected_count: String,
    pub delta: String,
}

impl ExactJson {
    pub fn new(n: usize, r: u64, q: &PropertyQuery, s: &ExactStats) -> Self {
        ExactJson {
            n,
            r,
            property: q.label().to_string(),
            k: q.k,
            total_colorings: s.total_colorings.to_string(),
            colorings_with_property: s.colorings_with_property.to_string(),
            probability: rational_string(&s.probability),
            expected_count: rational_string(&s.expected_count),
            delta: rational_string(&s.delta),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub kind: String,
    pub chromatic: String,
    pub k: usize,
    /// `[u, v, color]` triples.
    pub edges: Vec<[u64; 3]>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetectionJson {
    pub property: String,
    pub k: usize,
    pub exists: bool,
    pub witness: Option<WitnessJson>,
}

impl DetectionJson {
    pub fn new(g: &ColoredGraph, q: &PropertyQuery, d: &Detection) -> Self {
        let witness = d.witness.as_ref().map(|w| WitnessJson {
            kind: q.kind.as_str().into(),
            chromatic: q.chromatic.as_str().into(),
            k: q.k,
            edges: w
                .edges
                .iter()
                .map(|&e| {
                    let (u, v) = edge_endpoints(e, g.n()).expect("witness edge in range");
                    [u as u64, v as u64, u64::from(g.edge_color(e))]
                })
                .collect(),
            vertices: w.vertices.clone(),
        });
        DetectionJson {
            property: q.label().to_string(),
            k: q.k,
            exists: d.exists,
            witness,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EstimateJson {
    pub successes: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl From<&Estimate> for EstimateJson {
    fn from(e: &Estimate) -> Self {
        EstimateJson {
            successes: e.successes,
            trials: e.trials,
            p_hat: e.p_hat,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chromathresh_core::SeedSpec;
    use proptest::prelude::*;

    #[test]
    fn text_round_trip() {
        let g = ColoredGraph::sample(6, 3, SeedSpec::new(42, 0)).unwrap();
        let s = write_text(&g);
        assert!(s.starts_with("6 3\n"));
        assert_eq!(parse_text(&s).unwrap(), g);
        assert_eq!(parse_coloring(&s).unwrap(), g);
        let one = ColoredGraph::new(1, 4, vec![]).unwrap();
        assert_eq!(write_text(&one), "1 4\n");
        assert_eq!(parse_text("1 4\n").unwrap(), one);
    }

    #[test]
    fn text_errors() {
        assert!(parse_text("").is_err());
        assert!(parse_text("3\n0 0 0\n").is_err());
        assert!(parse_text("3 2\n0 1\n").is_err());
        assert!(parse_text("3 2\n0 1 2\n").is_err());
        assert!(parse_text("3 2\n0 x 1\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = ColoredGraph::sample(5, 2, SeedSpec::new(1, 3)).unwrap();
        let j = serde_json::to_string(&ColoringJson::new(&g, Some(7))).unwrap();
        assert!(j.contains("\"seed\":7"));
        assert_eq!(parse_coloring(&j).unwrap(), g);
        assert!(parse_coloring(r#"{"n":3,"r":2,"colors":[0,1]}"#).is_err());
    }

    #[test]
    fn rationals() {
        let x = parse_rational("56/64").unwrap();
        assert_eq!(rational_string(&x), "7/8");
        assert_eq!(rational_string(&parse_rational("4").unwrap()), "4/1");
        assert_eq!(rational_string(&parse_decimal("0.1").unwrap()), "1/10");
        assert_eq!(rational_string(&parse_decimal("20").unwrap()), "20/1");
        assert_eq!(rational_string(&parse_decimal("2.50").unwrap()), "5/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("-").is_err());
    }

    #[test]
    fn log_strings() {
        assert_eq!(log_string(f64::NEG_INFINITY), "-inf");
        assert_eq!(log_string(0.0), "0");
        assert_eq!(log_string(std::f64::consts::LN_2), "0.693147180559945");
        assert_eq!(log_string(1234.5), "1234.5");
        assert_eq!(log_string(-2.0), "-2");
        assert_eq!(log_string(1.5e30), "1.50000000000000e30");
    }

    proptest! {
        #[test]
        fn log_strings_keep_15_digits(x in -1e6f64..1e6) {
            let s = log_string(x);
            let back: f64 = s.parse().unwrap();
            prop_assert!((back - x).abs() <= 1e-14 * x.abs().max(1e-300) * 10.0);
        }
    }
}
