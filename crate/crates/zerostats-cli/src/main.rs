//! Command-line pipeline for zero statistics.
//!
//! Subcommands compose the library end to end: compute or ingest zero
//! sequences, build delta histograms, detect and match deficit spikes, print
//! ene-product predictions, export CSV/SVG, and run bundled recipes.

mod recipe;
mod sources;
mod svg;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use zerostats::{
    auto_deltas_parallel, character, combine, cross_deltas, detect_deficits, detrend,
    find_dirichlet_zeros, find_riemann_zeros, match_zeros, moving_average, predict_deltas,
    write_cache, DeltaHistogram, EulerProductSymbol, LBase, PredictedLine, Threshold,
    WindowParams, ZFunctionConfig, ZeroSequence,
};

#[derive(Parser)]
#[command(name = "zerostats", version, about = "Delta statistics of critical-line zeros")]
struct Cli {
    /// Worker threads for zero searches and delta sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute zeros of zeta or of a Dirichlet L-function into a cache file.
    Zeros(ZerosArgs),
    /// Parse a text zero table into a cache file.
    Ingest(IngestArgs),
    /// Histogram of pairwise deltas within one sequence.
    Deltas(DeltasArgs),
    /// Histogram of cross deltas between two sequences (mating).
    Mate(MateArgs),
    /// Detect deficit groups in a histogram CSV and match against references.
    Analyze(AnalyzeArgs),
    /// Print the ene-product closed form and predicted deficit lines.
    Predict(PredictArgs),
    /// Render a histogram CSV as an SVG plot.
    Plot(PlotArgs),
    /// Download configured URLs into a data directory.
    Fetch(FetchArgs),
    /// Run a bundled or custom end-to-end recipe.
    Recipe(RecipeArgs),
}

#[derive(Args)]
struct ZerosArgs {
    /// Number of zeros (positive branch for L-functions).
    #[arg(long)]
    count: usize,
    /// Dirichlet modulus; omit for zeta zeros.
    #[arg(long)]
    modulus: Option<u64>,
    /// Character index in the stable ordering (0 = principal).
    #[arg(long, default_value_t = 0)]
    char_index: u64,
    /// Negative-branch zeros to compute (complex characters only).
    #[arg(long, default_value_t = 0)]
    n_neg: usize,
    /// Riemann-Siegel remainder terms / evaluator budget.
    #[arg(long, default_value_t = 4)]
    term_budget: usize,
    /// Root refinement tolerance in ordinate units.
    #[arg(long, default_value_t = 1e-9)]
    refine_tolerance: f64,
    /// Output cache file.
    #[arg(long)]
    out: PathBuf,
    /// Also write a plain text table to this path.
    #[arg(long)]
    plain: Option<PathBuf>,
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = DialectArg::Plain)]
    dialect: DialectArg,
    #[arg(long, default_value_t = 0)]
    skip_rows: usize,
    #[arg(long)]
    max_rows: Option<usize>,
    /// 1-based ordinate column (columnar dialect).
    #[arg(long, default_value_t = 1)]
    column: usize,
    /// Base height added to every parsed value.
    #[arg(long, default_value_t = 0.0)]
    offset: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum DialectArg {
    Plain,
    Columnar,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum BranchArg {
    Pos,
    Neg,
    Both,
}

#[derive(Args)]
struct DeltasArgs {
    /// Zero sequence: cache file or plain text table.
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    t_max: f64,
    /// Bin width epsilon.
    #[arg(long)]
    bin: f64,
    #[arg(long)]
    include_bin_zero: bool,
    /// Branch selection for signed sources; `both` sums the branch histograms.
    #[arg(long, value_enum, default_value_t = BranchArg::Pos)]
    branch: BranchArg,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MateArgs {
    #[arg(long)]
    source_a: PathBuf,
    #[arg(long)]
    source_b: PathBuf,
    #[arg(long)]
    t_max: f64,
    #[arg(long)]
    bin: f64,
    #[arg(long)]
    include_bin_zero: bool,
    #[arg(long, value_enum, default_value_t = BranchArg::Pos)]
    branch_a: BranchArg,
    #[arg(long, value_enum, default_value_t = BranchArg::Pos)]
    branch_b: BranchArg,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Histogram CSV produced by `deltas` or `mate`.
    #[arg(long)]
    hist: PathBuf,
    /// Centered moving-average window (odd) applied before detection.
    #[arg(long)]
    smooth: Option<usize>,
    /// Detrend window (odd, >= 3): analyze hist minus its moving average.
    #[arg(long)]
    detrend_window: Option<usize>,
    #[arg(long)]
    threshold_quantile: Option<f64>,
    #[arg(long)]
    threshold_abs: Option<f64>,
    #[arg(long, default_value_t = 0)]
    gap: usize,
    #[arg(long, default_value_t = 1.0)]
    exclude_near_zero: f64,
    /// Reference zeros (cache or plain text) to match against.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long, default_value_t = 0.25)]
    tol: f64,
    /// Write the recovered-vs-reference table as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    /// First symbol: `zeta`, `chi:Q,I`, or `factor:P`.
    #[arg(long)]
    a: String,
    /// Second symbol, same syntax.
    #[arg(long)]
    b: String,
    /// How many locations to print per predicted line family.
    #[arg(long, default_value_t = 5)]
    lines: usize,
    /// Skip computing zero locations for L-function lines.
    #[arg(long)]
    no_compute: bool,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    hist: PathBuf,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long, value_enum, default_value_t = StyleArg::Bars)]
    style: StyleArg,
    /// Comma-separated ordinates to mark with vertical lines.
    #[arg(long)]
    annotate: Option<String>,
    /// Read annotation ordinates from a cache or plain text file.
    #[arg(long)]
    annotate_file: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Bars,
    Line,
}

#[derive(Args)]
struct FetchArgs {
    /// TOML file with a [[file]] list of {url, name} entries.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    dest: PathBuf,
}

#[derive(Args)]
struct RecipeArgs {
    /// Bundled recipe name; see --list.
    #[arg(long)]
    name: Option<String>,
    /// Custom recipe TOML file.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Override [source.a] with a cache file (e.g. a large ingested run).
    #[arg(long)]
    source_a: Option<PathBuf>,
    #[arg(long)]
    list: bool,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
            .context("worker pool already initialized")?;
    }
    match cli.command {
        Command::Zeros(a) => cmd_zeros(a),
        Command::Ingest(a) => cmd_ingest(a),
        Command::Deltas(a) => cmd_deltas(a),
        Command::Mate(a) => cmd_mate(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Plot(a) => cmd_plot(a),
        Command::Fetch(a) => cmd_fetch(a),
        Command::Recipe(a) => recipe::cmd_recipe(a.name, a.file, a.out_dir, a.source_a, a.list),
    }
}

fn cmd_zeros(a: ZerosArgs) -> Result<()> {
    let cfg = ZFunctionConfig {
        term_budget: a.term_budget,
        refine_tolerance: a.refine_tolerance,
    };
    let seq = match a.modulus {
        None => find_riemann_zeros(a.count, &cfg)?,
        Some(q) => {
            let chi = character(q, a.char_index)?;
            find_dirichlet_zeros(&chi, a.count, a.n_neg, &cfg)?
        }
    };
    write_cache(&a.out, &seq)?;
    if let Some(p) = &a.plain {
        let mut w = BufWriter::new(File::create(p)?);
        for v in seq.ordinates() {
            writeln!(w, "{v:.12}")?;
        }
    }
    println!(
        "wrote {} ordinates (max |gamma| = {:.6}) to {}",
        seq.len(),
        seq.max_ordinate(),
        a.out.display()
    );
    Ok(())
}

fn cmd_ingest(a: IngestArgs) -> Result<()> {
    let mut spec = match a.dialect {
        DialectArg::Plain => zerostats::ZeroFileSpec::plain(&a.input),
        DialectArg::Columnar => zerostats::ZeroFileSpec::columnar(&a.input, a.column),
    };
    spec.skip_rows = a.skip_rows;
    spec.max_rows = a.max_rows;
    spec.offset = a.offset;
    let seq = zerostats::parse_zero_file(&spec)?;
    write_cache(&a.out, &seq)?;
    println!(
        "ingested {} ordinates ({}) to {}",
        seq.len(),
        if seq.is_signed() { "signed" } else { "unsigned" },
        a.out.display()
    );
    Ok(())
}

/// Applies a branch selection, returning the sequences to histogram.
fn branches(seq: &ZeroSequence, branch: BranchArg) -> Result<Vec<ZeroSequence>> {
    if !seq.is_signed() {
        return Ok(vec![seq.clone()]);
    }
    let (pos, neg) = seq.split_signed()?;
    Ok(match branch {
        BranchArg::Pos => vec![pos],
        BranchArg::Neg => vec![neg],
        BranchArg::Both => vec![pos, neg],
    })
}

fn cmd_deltas(a: DeltasArgs) -> Result<()> {
    let seq = sources::load_sequence(&a.source)?;
    let w = WindowParams::new(a.t_max, a.bin)?.with_bin_zero(a.include_bin_zero);
    let mut hist: Option<DeltaHistogram> = None;
    for part in &branches(&seq, a.branch)? {
        let h = auto_deltas_parallel(part, &w)?;
        hist = Some(match hist {
            None => h,
            Some(acc) => combine(&acc, &h)?,
        });
    }
    let hist = hist.expect("at least one branch");
    write_histogram(&hist, &a.out)?;
    println!(
        "{} bins, {} deltas -> {}",
        hist.len(),
        hist.total(),
        a.out.display()
    );
    Ok(())
}

fn cmd_mate(a: MateArgs) -> Result<()> {
    let sa = sources::load_sequence(&a.source_a)?;
    let sb = sources::load_sequence(&a.source_b)?;
    let w = WindowParams::new(a.t_max, a.bin)?.with_bin_zero(a.include_bin_zero);
    let mut hist: Option<DeltaHistogram> = None;
    for pa in &branches(&sa, a.branch_a)? {
        for pb in &branches(&sb, a.branch_b)? {
            let h = cross_deltas(pa, pb, &w)?;
            hist = Some(match hist {
                None => h,
                Some(acc) => combine(&acc, &h)?,
            });
        }
    }
    let hist = hist.expect("at least one branch pair");
    write_histogram(&hist, &a.out)?;
    println!(
        "{} bins, {} deltas -> {}",
        hist.len(),
        hist.total(),
        a.out.display()
    );
    Ok(())
}

fn write_histogram(hist: &DeltaHistogram, path: &PathBuf) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    hist.write_csv(&mut w)?;
    Ok(())
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<()> {
    let mut hist = DeltaHistogram::read_csv(BufReader::new(File::open(&a.hist)?))?;
    if let Some(tau) = a.smooth {
        hist = moving_average(&hist, tau, zerostats::EdgeMode::Truncate)?;
    }
    if let Some(w) = a.detrend_window {
        hist = detrend(&hist, w)?;
    }
    let threshold = match (a.threshold_abs, a.threshold_quantile) {
        (Some(v), None) => Threshold::Absolute(v),
        (None, Some(q)) => Threshold::Quantile(q),
        (None, None) => Threshold::Quantile(0.10),
        (Some(_), Some(_)) => bail!("choose one of --threshold-abs / --threshold-quantile"),
    };
    let groups = detect_deficits(&hist, threshold, a.gap, a.exclude_near_zero)?;
    println!("{} deficit groups", groups.len());
    for g in &groups {
        println!(
            "  bins {:>4}..{:<4} recovered {:>9.4} depth {:.1}",
            g.bins.first().unwrap(),
            g.bins.last().unwrap(),
            g.recovered_ordinate,
            g.depth
        );
    }
    if let Some(refpath) = &a.reference {
        let refs = sources::load_sequence(refpath)?.truncated_below(hist.t_max());
        let report = match_zeros(&groups, &refs, a.tol);
        print!("{}", report.render_table());
        if let Some(out) = &a.out {
            let mut w = BufWriter::new(File::create(out)?);
            report.write_csv(&mut w)?;
            println!("report -> {}", out.display());
        }
    } else if let Some(out) = &a.out {
        let mut w = BufWriter::new(File::create(out)?);
        writeln!(w, "bin_first,bin_last,recovered,depth")?;
        for g in &groups {
            writeln!(
                w,
                "{},{},{:.6},{:.3}",
                g.bins.first().unwrap(),
                g.bins.last().unwrap(),
                g.recovered_ordinate,
                g.depth
            )?;
        }
        println!("groups -> {}", out.display());
    }
    Ok(())
}

fn parse_symbol(text: &str) -> Result<EulerProductSymbol> {
    if text == "zeta" {
        return Ok(EulerProductSymbol::zeta());
    }
    if let Some(rest) = text.strip_prefix("chi:") {
        let (q, i) = rest
            .split_once(',')
            .context("chi syntax: chi:MODULUS,INDEX")?;
        let chi = character(q.trim().parse()?, i.trim().parse()?)?;
        return Ok(EulerProductSymbol::l_function(chi)?);
    }
    if let Some(rest) = text.strip_prefix("factor:") {
        let p: u64 = rest.trim().parse()?;
        return Ok(EulerProductSymbol::euler_factor(p)?);
    }
    bail!("unknown symbol {text:?}; use zeta | chi:Q,I | factor:P")
}

fn cmd_predict(a: PredictArgs) -> Result<()> {
    let sa = parse_symbol(&a.a)?;
    let sb = parse_symbol(&a.b)?;
    let prediction = predict_deltas(&sa, &sb)?;
    println!("{} mated with {}", sa.display_name(), sb.display_name());
    println!("closed form: {}", prediction.closed_form.render());
    println!("predicted deficit lines:");
    let cfg = ZFunctionConfig::default();
    for line in &prediction.lines {
        match line {
            PredictedLine::LFunctionZeros { base, order } => {
                let name = match base {
                    LBase::Zeta => "zeros of zeta".to_string(),
                    LBase::LFunction(chi) => format!("zeros of L[{}]", chi.label()),
                };
                print!("  {name} ({order:?})");
                if !a.no_compute && a.lines > 0 {
                    let seq = match base {
                        LBase::Zeta => find_riemann_zeros(a.lines, &cfg)?,
                        LBase::LFunction(chi) => find_dirichlet_zeros(chi, a.lines, 0, &cfg)?,
                    };
                    let locs: Vec<String> = seq
                        .ordinates()
                        .iter()
                        .map(|v| format!("{v:.6}"))
                        .collect();
                    print!(": {}", locs.join(", "));
                }
                println!();
            }
            PredictedLine::HarmonicComb {
                prime,
                fundamental,
                order,
            } => {
                let locs: Vec<String> = (1..=a.lines.max(1))
                    .map(|k| format!("{:.6}", k as f64 * fundamental))
                    .collect();
                println!(
                    "  harmonic comb p={prime}, fundamental {fundamental:.6} ({order:?}): {}",
                    locs.join(", ")
                );
            }
            PredictedLine::AtomAtZero => println!("  atom at 0"),
        }
    }
    Ok(())
}

fn cmd_plot(a: PlotArgs) -> Result<()> {
    let hist = DeltaHistogram::read_csv(BufReader::new(File::open(&a.hist)?))?;
    let mut annotations: Vec<f64> = Vec::new();
    if let Some(list) = &a.annotate {
        for part in list.split(',') {
            annotations.push(part.trim().parse()?);
        }
    }
    if let Some(path) = &a.annotate_file {
        annotations.extend(sources::load_sequence(path)?.ordinates());
    }
    let spec = svg::PlotSpec {
        from: a.from,
        to: a.to,
        style: match a.style {
            StyleArg::Bars => svg::PlotStyle::Bars,
            StyleArg::Line => svg::PlotStyle::Line,
        },
        annotations,
    };
    let doc = svg::render(&hist, &spec)?;
    std::fs::write(&a.out, doc)?;
    println!("svg -> {}", a.out.display());
    Ok(())
}

#[derive(serde::Deserialize)]
struct FetchConfig {
    #[serde(default)]
    file: Vec<FetchEntry>,
}

#[derive(serde::Deserialize)]
struct FetchEntry {
    url: String,
    name: String,
}

fn cmd_fetch(a: FetchArgs) -> Result<()> {
    let cfg: FetchConfig = toml::from_str(&std::fs::read_to_string(&a.config)?)?;
    if cfg.file.is_empty() {
        bail!("fetch config lists no files");
    }
    std::fs::create_dir_all(&a.dest)?;
    for entry in &cfg.file {
        let dest = a.dest.join(&entry.name);
        print!("fetching {} -> {} ... ", entry.url, dest.display());
        std::io::stdout().flush()?;
        let resp = ureq::get(&entry.url).call()?;
        let mut reader = resp.into_reader();
        let mut out = BufWriter::new(File::create(&dest)?);
        let n = std::io::copy(&mut reader, &mut out)?;
        println!("{n} bytes");
    }
    Ok(())
}
