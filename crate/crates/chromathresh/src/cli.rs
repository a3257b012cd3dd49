//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chromathresh_core::detect::{detect_with_budget, DEFAULT_BUDGET};
use chromathresh_core::moments::{self, classify_regime, GrowthFn, RegimeConstants};
use chromathresh_core::montecarlo::{TrialPlan, Z_95};
use chromathresh_core::oracle::DEFAULT_COLORING_CAP;
use chromathresh_core::{ColoredGraph, PropertyLabel, SeedSpec, SubgraphKind};

use crate::error::{Error, Result};
use crate::format::{self, DetectionJson, ExactJson, MomentsJson, ScalarJson};
use crate::parallel::{self, Threads};
use crate::sweep::{self, GridPoint, SweepOptions, SweepRecordJson};
use crate::verify::{self, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "chromathresh", version, about = "Thresholds for mono- and heterochromatic subgraphs of randomly edge-colored complete graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a uniform r-coloring of K_n
    Sample(SampleArgs),
    /// Decide whether a coloring contains a property, with a witness
    Detect(DetectArgs),
    /// Closed-form moments, bounds, thresholds and regime for k-matchings
    Moments(MomentsArgs),
    /// Exact statistics by enumerating every coloring
    Exact(ExactArgs),
    /// Monte Carlo estimates over a grid of (n, k, r)
    Sweep(SweepArgs),
    /// Predicted zero/one regime for a property
    Classify(ClassifyArgs),
    /// Run the detector and formula self-checks
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct Output {
    /// Output format [default: json, text for `sample`]
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SeedArg {
    /// Master seed
    #[arg(long, env = "CHROMATHRESH_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u32,
    #[command(flatten)]
    seed: SeedArg,
    /// Trial index combined with the seed
    #[arg(long, default_value_t = 0)]
    trial: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DetectArgs {
    /// mono-matching, hetero-matching, mono-clique, hetero-clique, mono-tree or hetero-tree
    #[arg(long)]
    property: PropertyLabel,
    #[arg(long)]
    k: usize,
    /// Coloring file (text or JSON); if absent one is sampled from --n, --r and --seed
    #[arg(long, conflicts_with_all = ["n", "r"])]
    input: Option<PathBuf>,
    #[arg(long, required_unless_present = "input")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "input")]
    r: Option<u32>,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = 0)]
    trial: u64,
    /// Search node budget
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Clone, Copy)]
struct RegimeArgs {
    /// Multiplicative margin read as "much larger/smaller"
    #[arg(long, default_value_t = 10.0)]
    margin: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 2.5)]
    c4: f64,
    /// Unbounded growth term in the perfect-matching rule: loglog, log or zero
    #[arg(long, default_value = "loglog")]
    c5: GrowthFn,
    #[arg(long, default_value_t = 2.0)]
    c7: f64,
    /// Divisor in the k <= log_r(n) / divisor clique rule
    #[arg(long, default_value_t = 1.704e9)]
    clique_divisor: f64,
}

impl RegimeArgs {
    fn consts(&self) -> Result<RegimeConstants> {
        let c = RegimeConstants {
            epsilon: self.epsilon,
            c4: self.c4,
            c5: self.c5,
            c7: self.c7,
            clique_lower_divisor: self.clique_divisor,
            margin: self.margin,
        };
        c.validate()?;
        Ok(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Matching,
    Clique,
    Tree,
}

impl From<Kind> for SubgraphKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Matching => SubgraphKind::Matching,
            Kind::Clique => SubgraphKind::Clique,
            Kind::Tree => SubgraphKind::Tree,
        }
    }
}

#[derive(Args, Debug)]
struct MomentsArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    /// Number of colors; not needed for clique and tree thresholds
    #[arg(long, required_if_eq("kind", "matching"))]
    r: Option<u64>,
    /// clique and tree report only the threshold
    #[arg(long, value_enum, default_value_t = Kind::Matching)]
    kind: Kind,
    /// Exact arithmetic is skipped past this many bits
    #[arg(long, default_value_t = moments::DEFAULT_EXACT_BITS)]
    exact_bits: u64,
    #[command(flatten)]
    regime: RegimeArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    property: PropertyLabel,
    #[arg(long)]
    k: usize,
    /// Largest number of colorings to enumerate
    #[arg(long, default_value_t = DEFAULT_COLORING_CAP)]
    cap: u64,
    /// Worker threads; 1 runs serially, 0 uses all cores
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    property: PropertyLabel,
    /// Grid point "n,k,r"; repeatable
    #[arg(long = "point", value_name = "N,K,R", conflicts_with = "r_multipliers")]
    points: Vec<GridPoint>,
    /// With --n and --k: r = ceil(m * threshold) for each multiplier m
    #[arg(long, value_delimiter = ',', requires_all = ["n", "k"])]
    r_multipliers: Vec<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[command(flatten)]
    seed: SeedArg,
    /// Normal quantile for the Wilson interval
    #[arg(long, default_value_t = Z_95)]
    z: f64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads; 1 runs serially, 0 uses all cores
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Write 0 for elapsed_ms so output is byte-stable
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    regime: RegimeArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    property: PropertyLabel,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: u64,
    #[command(flatten)]
    regime: RegimeArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Random graphs in the detector check
    #[arg(long, default_value_t = 1000)]
    graphs: u64,
    /// Largest n in the detector check
    #[arg(long, default_value_t = 10)]
    max_graph_n: usize,
    /// Largest n in the exhaustive formula checks
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Largest r in the exhaustive formula checks
    #[arg(long, default_value_t = 3)]
    max_r: u64,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[command(flatten)]
    output: Output,
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code: 0 success, 2 usage or input error, 3 resource cap exceeded,
/// 4 failed self-check.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Sample(a) => sample(a, out),
        Command::Detect(a) => detect(a, out),
        Command::Moments(a) => moments_cmd(a, out),
        Command::Exact(a) => exact(a, out),
        Command::Sweep(a) => sweep_cmd(a, out),
        Command::Classify(a) => classify(a, out),
        Command::Verify(a) => verify_cmd(a, out),
    }
}

fn emit(output: &Output, out: &mut dyn Write, body: &[u8]) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Error::io(path.display().to_string(), e)),
        None => out.write_all(body).map_err(|e| Error::io("stdout", e)),
    }
}

fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

fn no_csv(format: Format, cmd: &str) -> Result<()> {
    if format == Format::Csv {
        Err(Error::Usage(format!("`{cmd}` has no csv output")))
    } else {
        Ok(())
    }
}

fn sample(a: SampleArgs, out: &mut dyn Write) -> Result<()> {
    let format = a.output.format.unwrap_or(Format::Text);
    no_csv(format, "sample")?;
    let g = ColoredGraph::sample(a.n, a.r, SeedSpec::new(a.seed.seed, a.trial))?;
    let body = match format {
        Format::Json => json_bytes(&format::ColoringJson::new(&g, Some(a.seed.seed)))?,
        _ => format::write_text(&g).into_bytes(),
    };
    emit(&a.output, out, &body)
}

fn detect(a: DetectArgs, out: &mut dyn Write) -> Result<()> {
    let format = a.output.format.unwrap_or(Format::Json);
    no_csv(format, "detect")?;
    let q = a.property.with_k(a.k);
    let g = match &a.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
            format::parse_coloring(&text)?
        }
        None => ColoredGraph::sample(
            a.n.expect("required by clap"),
            a.r.expect("required by clap"),
            SeedSpec::new(a.seed.seed, a.trial),
        )?,
    };
    q.validate(g.n())?;
    let d = detect_with_budget(&g, &q, a.budget)?;
    let j = DetectionJson::new(&g, &q, &d);
    let body = match format {
        Format::Json => json_bytes(&j)?,
        _ => {
            let mut s = format!("{}\n", j.exists);
            if let Some(w) = &j.witness {
                let edges: Vec<String> = w.edges.iter().map(|[u, v, c]| format!("{u}-{v}:{c}")).collect();
                s.push_str(&edges.join(" "));
                s.push('\n');
            }
            s.into_bytes()
        }
    };
    emit(&a.output, out, &body)
}

fn text_lines(pairs: &[(&str, String)]) -> Vec<u8> {
    pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect::<String>().into_bytes()
}

fn scalar_text(v: &ScalarJson) -> String {
    match &v.exact {
        Some(x) => format!("{x} (log {})", v.log_value),
        None => format!("log {}", v.log_value),
    }
}

#[derive(Serialize)]
struct ThresholdJson {
    kind: &'static str,
    n: u64,
    k: u64,
    threshold: ScalarJson,
}

fn moments_cmd(a: MomentsArgs, out: &mut dyn Write) -> Result<()> {
    let format = a.output.format.unwrap_or(Format::Json);
    no_csv(format, "moments")?;
    let m = moments::Moments {
        exact_bits: a.exact_bits,
    };
    let kind = SubgraphKind::from(a.kind);
    if kind != SubgraphKind::Matching {
        let t = ScalarJson::from(&m.threshold(kind, a.n, a.k)?);
        let body = match format {
            Format::Json => json_bytes(&ThresholdJson {
                kind: kind.as_str(),
                n: a.n,
                k: a.k,
                threshold: t,
            })?,
            _ => text_lines(&[("threshold", scalar_text(&t))]),
        };
        return emit(&a.output, out, &body);
    }
    let r = a.r.expect("required by clap");
    let rep = m.report(a.n, a.k, r, &a.regime.consts()?)?;
    let j = MomentsJson::from(&rep);
    let body = match format {
        Format::Json => json_bytes(&j)?,
        _ => {
            let opt = |v: &Option<ScalarJson>| v.as_ref().map_or("none".into(), scalar_text);
            text_lines(&[
                ("q", j.q.clone()),
                ("e_mono", scalar_text(&j.e_mono)),
                ("e_hetero", scalar_text(&j.e_hetero)),
                ("delta_ratio_bound_mono", scalar_text(&j.delta_ratio_bound_mono)),
                ("delta_ratio_bound_hetero", opt(&j.delta_ratio_bound_hetero)),
                ("threshold", opt(&j.threshold_value)),
                ("regime", j.regime.clone()),
            ])
        }
    };
    emit(&a.output, out, &body)
}

fn exact(a: ExactArgs, out: &mut dyn Write) -> Result<()> {
    let format = a.output.format.unwrap_or(Format::Json);
    no_csv(format, "exact")?;
    let q = a.property.with_k(a.k);
    let stats = parallel::exact_stats(a.n, a.r, &q, a.cap, Threads::from_count(Some(a.threads)))?;
    let j = ExactJson::new(a.n, a.r, &q, &stats);
    let body = match format {
        Format::Json => json_bytes(&j)?,
        _ => text_lines(&[
            ("total_colorings", j.total_colorings.clone()),
            ("colorings_with_property", j.colorings_with_property.clone()),
            ("probability", j.probability.clone()),
            ("expected_count", j.expected_count.clone()),
            ("delta", j.delta.clone()),
        ]),
    };
    emit(&a.output, out, &body)
}

fn sweep_cmd(a: SweepArgs, out: &mut dyn Write) -> Result<()> {
    let format = a.output.format.unwrap_or(Format::Json);
    let grid = if a.r_multipliers.is_empty() {
        if a.points.is_empty() {
            return Err(Error::Usage("give at least one --point or --r-multipliers with --n and --k".into()));
        }
        a.points.clone()
    } else {
        let ms = a
            .r_multipliers
            .iter()
            .map(|m| format::parse_rational(m))
            .collect::<Result<Vec<_>>>()?;
        sweep::threshold_grid(a.property, a.n.expect("required"), a.k.expect("required"), &ms)?
    };
    // the base plan only carries settings; every point overrides n, k and r
    let base = TrialPlan::new(2, 1, a.property.with_k(1), a.trials, a.seed.seed)?
        .with_z(a.z)
        .with_budget(a.budget);
    base.validate()?;
    let opts = SweepOptions {
        threads: Threads::from_count(Some(a.threads)),
        consts: a.regime.consts()?,
        timing: !a.no_timing,
    };
    let records = sweep::sweep(&base, &grid, &opts);
    let body = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            sweep::write_csv(&records, &mut buf)?;
            buf
        }
        Format::Json => json_bytes(&records.iter().map(SweepRecordJson::from).collect::<Vec<_>>())?,
        Format::Text => {
            let mut s = String::new();
            for rec in &records {
                let j = SweepRecordJson::from(rec);
                let est = match (j.p_hat, j.ci_low, j.ci_high) {
                    (Some(p), Some(lo), Some(hi)) => format!("p_hat {p:.6} [{lo:.6}, {hi:.6}]"),
                    _ => format!("error: {}", j.error.unwrap_or_default()),
                };
                s.push_str(&format!("n={} k={} r={} {} {est} regime {}\n", j.n, j.k, j.r, j.property, j.regime.unwrap_or_default()));
            }
            s.into_bytes()
        }
    };
    emit(&a.output, out, &body)
}

#[derive(Serialize)]
struct ClassifyJson {
    property: String,
    n: u64,
    k: usize,
    r: u64,
    regime: String,
}

fn classify(a: ClassifyArgs, out: &mut dyn Write) -> Result<()> {
    let format = a.output.format.unwrap_or(Format::Json);
    no_csv(format, "classify")?;
    let q = a.property.with_k(a.k);
    let regime = classify_regime(&q, a.n, a.r, &a.regime.consts()?)?;
    let body = match format {
        Format::Json => json_bytes(&ClassifyJson {
            property: a.property.to_string(),
            n: a.n,
            k: a.k,
            r: a.r,
            regime: regime.to_string(),
        })?,
        _ => format!("{regime}\n").into_bytes(),
    };
    emit(&a.output, out, &body)
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let format = a.output.format.unwrap_or(Format::Json);
    no_csv(format, "verify")?;
    if a.max_graph_n < 2 {
        return Err(Error::Usage("--max-graph-n must be at least 2".into()));
    }
    let opts = VerifyOptions {
        max_exact_n: a.max_n,
        max_exact_r: a.max_r,
        graphs: a.graphs,
        max_graph_n: a.max_graph_n,
        seed: a.seed.seed,
        threads: Threads::from_count(Some(a.threads)),
        ..Default::default()
    };
    let rep = verify::run(&opts)?;
    let body = match format {
        Format::Json => json_bytes(&rep)?,
        _ => rep
            .checks
            .iter()
            .map(|c| {
                let status = if c.passed() { "ok" } else { "FAIL" };
                format!("{status} {} cases={} skipped={} mismatches={}\n", c.name, c.cases, c.skipped, c.mismatches)
            })
            .collect::<String>()
            .into_bytes(),
    };
    emit(&a.output, out, &body)?;
    if rep.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        Err(Error::Invariant(format!("verification failed: {}", failed.join(", "))))
    }
}
