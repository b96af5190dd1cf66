//! Declarative end-to-end runs: sources, window, filters, detection,
//! matching, fine-structure fits, and exports, from one TOML document.
//!
//! Outputs are written to temporary names and renamed at the end, so a failed
//! stage never leaves partial artifacts behind.

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use zerostats::{
    auto_deltas_parallel, character, combine, cross_deltas, detect_deficits, detrend,
    find_dirichlet_zeros, find_riemann_zeros, fit_gue_amplitude, fresnel_residual, gue_correct,
    match_zeros, moving_average, omega0, parse_zero_file, DeltaHistogram, Dialect, EdgeMode,
    Source, Threshold, WindowParams, ZFunctionConfig, ZeroFileSpec, ZeroSequence,
};

pub const BUNDLED: &[(&str, &str)] = &[
    ("stats-a", include_str!("recipes/stats-a.toml")),
    ("stats-b", include_str!("recipes/stats-b.toml")),
    ("mate-chi3", include_str!("recipes/mate-chi3.toml")),
    ("euler-comb-23", include_str!("recipes/euler-comb-23.toml")),
    ("gue-fresnel", include_str!("recipes/gue-fresnel.toml")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub source: SourceSection,
    pub window: WindowSection,
    #[serde(default)]
    pub filter: FilterSection,
    pub detect: Option<DetectSection>,
    pub gue: Option<GueSection>,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub budget: BudgetSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSection {
    pub a: SourceSpec,
    pub b: Option<SourceSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SourceSpec {
    /// First `count` zeta zeros.
    Riemann { count: usize },
    /// Zeros of a Dirichlet L-function addressed by (modulus, index).
    Dirichlet {
        modulus: u64,
        index: u64,
        #[serde(default)]
        n_pos: usize,
        #[serde(default)]
        n_neg: usize,
        #[serde(default = "default_branch")]
        branch: String,
    },
    /// A zero table or cache on disk.
    File {
        path: PathBuf,
        #[serde(default = "default_dialect")]
        dialect: String,
        #[serde(default)]
        skip_rows: usize,
        max_rows: Option<usize>,
        #[serde(default = "default_column")]
        column: usize,
        #[serde(default)]
        offset: f64,
        #[serde(default = "default_branch")]
        branch: String,
    },
    /// The arithmetic comb k·2π/log(prime), k = 1, 2, … up to t_max.
    Comb { prime: u64, t_max: f64 },
}

fn default_branch() -> String {
    "pos".into()
}
fn default_dialect() -> String {
    "plain".into()
}
fn default_column() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSection {
    pub t_max: f64,
    pub bin_width: f64,
    #[serde(default)]
    pub include_bin_zero: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSection {
    #[serde(default)]
    pub smooth_tau: usize,
    #[serde(default)]
    pub detrend_window: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectSection {
    pub threshold_absolute: Option<f64>,
    pub threshold_quantile: Option<f64>,
    #[serde(default)]
    pub gap: usize,
    #[serde(default = "default_exclude")]
    pub exclude_near_zero: f64,
    /// "a", "b", or "none": which source supplies reference zeros.
    #[serde(default = "default_reference")]
    pub match_reference: String,
    #[serde(default = "default_tol")]
    pub match_tol: f64,
}

fn default_exclude() -> f64 {
    1.0
}
fn default_reference() -> String {
    "none".into()
}
fn default_tol() -> f64 {
    0.25
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GueSection {
    #[serde(default)]
    pub fit_from: f64,
    pub fit_to: f64,
    #[serde(default = "default_baseline")]
    pub baseline_window: usize,
    #[serde(default)]
    pub fresnel: bool,
}

fn default_baseline() -> usize {
    75
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub histogram_csv: Option<String>,
    pub report_csv: Option<String>,
    pub gue_csv: Option<String>,
    pub svg: Option<String>,
    pub svg_from: Option<f64>,
    pub svg_to: Option<f64>,
    /// "reference" marks reference ordinates on the SVG.
    #[serde(default)]
    pub annotate: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSection {
    pub max_zeros: usize,
    pub max_bins: usize,
}

impl Default for BudgetSection {
    fn default() -> Self {
        Self {
            max_zeros: 250_000,
            max_bins: 25_000_000,
        }
    }
}

pub fn cmd_recipe(
    name: Option<String>,
    file: Option<PathBuf>,
    out_dir: PathBuf,
    source_a_override: Option<PathBuf>,
    list: bool,
) -> Result<()> {
    if list {
        for (name, text) in BUNDLED {
            let cfg: RecipeConfig = toml::from_str(text)?;
            println!("{name:<16} {}", cfg.description);
        }
        return Ok(());
    }
    let text = match (&name, &file) {
        (Some(n), None) => BUNDLED
            .iter()
            .find(|(b, _)| b == n)
            .map(|(_, t)| t.to_string())
            .with_context(|| format!("no bundled recipe named {n:?}; try --list"))?,
        (None, Some(p)) => fs::read_to_string(p)?,
        _ => bail!("exactly one of --name / --file is required"),
    };
    let mut cfg: RecipeConfig = toml::from_str(&text).context("parsing recipe")?;
    if let Some(path) = source_a_override {
        cfg.source.a = SourceSpec::File {
            path,
            dialect: "cache".into(),
            skip_rows: 0,
            max_rows: None,
            column: 1,
            offset: 0.0,
            branch: "pos".into(),
        };
    }
    let report = run_recipe(&cfg, &out_dir)?;
    print!("{report}");
    Ok(())
}

fn resolve_source(spec: &SourceSpec, budget: &BudgetSection) -> Result<Vec<ZeroSequence>> {
    let cfg = ZFunctionConfig::default();
    let seqs = match spec {
        SourceSpec::Riemann { count } => {
            if *count == 0 {
                bail!("riemann source with count 0");
            }
            if *count > budget.max_zeros {
                bail!("count {count} exceeds budget max_zeros {}", budget.max_zeros);
            }
            vec![find_riemann_zeros(*count, &cfg)?]
        }
        SourceSpec::Dirichlet {
            modulus,
            index,
            n_pos,
            n_neg,
            branch,
        } => {
            if n_pos + n_neg == 0 {
                bail!("dirichlet source with no zeros requested");
            }
            if n_pos.max(n_neg) > &budget.max_zeros {
                bail!("zero count exceeds budget max_zeros {}", budget.max_zeros);
            }
            let chi = character(*modulus, *index)?;
            let seq = find_dirichlet_zeros(&chi, *n_pos, *n_neg, &cfg)?;
            select_branches(&seq, branch)?
        }
        SourceSpec::File {
            path,
            dialect,
            skip_rows,
            max_rows,
            column,
            offset,
            branch,
        } => {
            let seq = if dialect == "cache" {
                zerostats::read_cache(path)?
            } else {
                let mut spec = match dialect.as_str() {
                    "plain" => ZeroFileSpec::plain(path),
                    "columnar" => ZeroFileSpec::columnar(path, *column),
                    other => bail!("unknown dialect {other:?}"),
                };
                spec.skip_rows = *skip_rows;
                spec.max_rows = *max_rows;
                spec.offset = *offset;
                debug_assert!(matches!(spec.dialect, Dialect::Plain | Dialect::Columnar));
                parse_zero_file(&spec)?
            };
            select_branches(&seq, branch)?
        }
        SourceSpec::Comb { prime, t_max } => {
            let f = std::f64::consts::TAU / (*prime as f64).ln();
            let n = (t_max / f).floor() as usize;
            let ordinates: Vec<f64> = (1..=n).map(|k| k as f64 * f).collect();
            vec![ZeroSequence::unsigned(
                ordinates,
                Source::Computed(format!("harmonic comb p={prime}")),
            )?]
        }
    };
    Ok(seqs)
}

fn select_branches(seq: &ZeroSequence, branch: &str) -> Result<Vec<ZeroSequence>> {
    if !seq.is_signed() {
        return Ok(vec![seq.clone()]);
    }
    let (pos, neg) = seq.split_signed()?;
    Ok(match branch {
        "pos" => vec![pos],
        "neg" => vec![neg],
        "both" => vec![pos, neg],
        other => bail!("unknown branch {other:?} (pos|neg|both)"),
    })
}

/// Executes a recipe; returns the human-readable run summary.
pub fn run_recipe(cfg: &RecipeConfig, out_dir: &Path) -> Result<String> {
    use std::fmt::Write as _;
    let mut summary = String::new();
    writeln!(summary, "recipe {} — {}", cfg.name, cfg.description)?;

    let w = WindowParams::new(cfg.window.t_max, cfg.window.bin_width)?
        .with_bin_zero(cfg.window.include_bin_zero);
    let nbins = w.bin_count()?;
    if nbins > cfg.budget.max_bins {
        bail!("{nbins} bins exceed budget max_bins {}", cfg.budget.max_bins);
    }

    let a_parts = resolve_source(&cfg.source.a, &cfg.budget)?;
    let b_parts = match &cfg.source.b {
        Some(spec) => Some(resolve_source(spec, &cfg.budget)?),
        None => None,
    };
    for (label, parts) in [("a", Some(&a_parts)), ("b", b_parts.as_ref())] {
        if let Some(parts) = parts {
            let n: usize = parts.iter().map(|s| s.len()).sum();
            let t0 = parts.iter().fold(0.0f64, |m, s| m.max(s.max_ordinate()));
            writeln!(summary, "source {label}: {n} ordinates, max {t0:.3}")?;
        }
    }

    // histogram: auto deltas per branch, or cross deltas per branch pair
    let mut hist: Option<DeltaHistogram> = None;
    match &b_parts {
        None => {
            for part in &a_parts {
                let h = auto_deltas_parallel(part, &w)?;
                hist = Some(match hist {
                    None => h,
                    Some(acc) => combine(&acc, &h)?,
                });
            }
        }
        Some(bp) => {
            for pa in &a_parts {
                for pb in bp {
                    let h = cross_deltas(pa, pb, &w)?;
                    hist = Some(match hist {
                        None => h,
                        Some(acc) => combine(&acc, &h)?,
                    });
                }
            }
        }
    }
    let raw = hist.expect("source resolution yields at least one branch");
    writeln!(summary, "histogram: {} bins, {} deltas", raw.len(), raw.total())?;

    let mut analyzed = raw.clone();
    if cfg.filter.smooth_tau > 1 {
        analyzed = moving_average(&analyzed, cfg.filter.smooth_tau, EdgeMode::Truncate)?;
        writeln!(summary, "smoothed with tau = {}", cfg.filter.smooth_tau)?;
    }
    if cfg.filter.detrend_window >= 3 {
        analyzed = detrend(&analyzed, cfg.filter.detrend_window)?;
        writeln!(summary, "detrended with window = {}", cfg.filter.detrend_window)?;
    }

    let mut report = None;
    let mut reference: Option<ZeroSequence> = None;
    if let Some(det) = &cfg.detect {
        let threshold = match (det.threshold_absolute, det.threshold_quantile) {
            (Some(v), None) => Threshold::Absolute(v),
            (None, Some(q)) => Threshold::Quantile(q),
            (None, None) => Threshold::Quantile(0.10),
            (Some(_), Some(_)) => bail!("detect: choose one threshold"),
        };
        let groups = detect_deficits(&analyzed, threshold, det.gap, det.exclude_near_zero)?;
        writeln!(summary, "deficit groups: {}", groups.len())?;
        let refseq = match det.match_reference.as_str() {
            "a" => Some(merge_parts(&a_parts)?),
            "b" => match &b_parts {
                Some(bp) => Some(merge_parts(bp)?),
                None => bail!("match_reference = \"b\" but there is no source b"),
            },
            "none" => None,
            other => bail!("unknown match_reference {other:?}"),
        };
        if let Some(refs) = refseq {
            let refs = refs.truncated_below(cfg.window.t_max);
            let rep = match_zeros(&groups, &refs, det.match_tol);
            writeln!(
                summary,
                "matched {} of {} references (precision {:.4}, recall {:.4}, mean |err| {:.4})",
                rep.matched.len(),
                refs.len(),
                rep.precision,
                rep.recall,
                rep.mean_abs_error
            )?;
            reference = Some(refs);
            report = Some(rep);
        }
    }

    let mut corrected = None;
    let mut gue_fit = None;
    if let Some(gue) = &cfg.gue {
        let t0 = a_parts.iter().fold(0.0f64, |m, s| m.max(s.max_ordinate()));
        let w0 = omega0(t0)?;
        let fit = fit_gue_amplitude(&raw, w0, (gue.fit_from, gue.fit_to), gue.baseline_window)?;
        let reduction = 1.0 - fit.residual_after / fit.residual_before;
        writeln!(
            summary,
            "gue fit: omega0 {:.6}, amplitude {:.1} (depth heuristic {:.1}), residual reduced by {:.1}%",
            w0,
            fit.amplitude,
            fit.heuristic_amplitude,
            100.0 * reduction
        )?;
        let corr = gue_correct(&raw, w0, fit.amplitude)?;
        if gue.fresnel {
            let fr = fresnel_residual(&corr, w0, (gue.fit_from, gue.fit_to), gue.baseline_window)?;
            writeln!(
                summary,
                "fresnel: relative residual {:.4}, dominant oscillation {:.4} cycles/unit \
                 ({:.4} sign-changes/unit) vs omega0 {:.4}",
                fr.relative_residual, fr.dominant_cycle_rate, fr.dominant_frequency, w0
            )?;
        }
        corrected = Some(corr);
        gue_fit = Some(fit);
    }

    // outputs: write to temp names, rename on success
    fs::create_dir_all(out_dir)?;
    let mut staged: Vec<(PathBuf, PathBuf)> = Vec::new();
    let stage = |name: &str, staged: &mut Vec<(PathBuf, PathBuf)>| -> (PathBuf, PathBuf) {
        let tmp = out_dir.join(format!(".{name}.tmp"));
        let fin = out_dir.join(name);
        staged.push((tmp.clone(), fin.clone()));
        (tmp, fin)
    };
    let result = (|| -> Result<()> {
        if let Some(name) = &cfg.output.histogram_csv {
            let (tmp, _) = stage(name, &mut staged);
            let mut wr = BufWriter::new(fs::File::create(&tmp)?);
            // export the filtered series when filters ran, else raw counts
            analyzed.write_csv(&mut wr)?;
        }
        if let Some(name) = &cfg.output.report_csv {
            if let Some(rep) = &report {
                let (tmp, _) = stage(name, &mut staged);
                let mut wr = BufWriter::new(fs::File::create(&tmp)?);
                rep.write_csv(&mut wr)?;
            }
        }
        if let Some(name) = &cfg.output.gue_csv {
            if let Some(fit) = &gue_fit {
                let (tmp, _) = stage(name, &mut staged);
                let mut wr = BufWriter::new(fs::File::create(&tmp)?);
                fit.write_csv(&mut wr)?;
            }
        }
        if let Some(name) = &cfg.output.svg {
            let (tmp, _) = stage(name, &mut staged);
            let spec = crate::svg::PlotSpec {
                from: cfg.output.svg_from.unwrap_or(0.0),
                to: cfg.output.svg_to.unwrap_or(cfg.window.t_max),
                style: crate::svg::PlotStyle::Bars,
                annotations: if cfg.output.annotate == "reference" {
                    reference
                        .as_ref()
                        .map(|r| r.ordinates().to_vec())
                        .unwrap_or_default()
                } else {
                    Vec::new()
                },
            };
            let plot_target = corrected.as_ref().unwrap_or(&analyzed);
            fs::write(&tmp, crate::svg::render(plot_target, &spec)?)?;
        }
        Ok(())
    })();

    match result {
        Ok(()) => {
            for (tmp, fin) in &staged {
                fs::rename(tmp, fin)?;
                writeln!(summary, "wrote {}", fin.display())?;
            }
            Ok(summary)
        }
        Err(e) => {
            for (tmp, _) in &staged {
                let _ = fs::remove_file(tmp);
            }
            Err(e)
        }
    }
}

fn merge_parts(parts: &[ZeroSequence]) -> Result<ZeroSequence> {
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let mut all: Vec<f64> = parts.iter().flat_map(|s| s.ordinates().iter().copied()).collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ZeroSequence::unsigned(all, Source::Literal)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_recipes_parse() {
        for (name, text) in BUNDLED {
            let cfg: RecipeConfig = toml::from_str(text)
                .unwrap_or_else(|e| panic!("recipe {name} fails to parse: {e}"));
            assert_eq!(&cfg.name, name);
            assert!(cfg.window.bin_width > 0.0);
        }
    }

    #[test]
    fn empty_source_is_a_config_error_before_compute() {
        let text = r#"
name = "broken"
[source.a]
kind = "riemann"
count = 0
[window]
t_max = 10.0
bin_width = 0.1
"#;
        let cfg: RecipeConfig = toml::from_str(text).unwrap();
        let err = run_recipe(&cfg, Path::new("/tmp/zerostats-recipe-test")).unwrap_err();
        assert!(err.to_string().contains("count 0"));
    }
}
