//! Binned statistics of pairwise ordinate differences ("deltas").
//!
//! The histogram is the only data structure that ever exists: the delta
//! multiset is never materialized, so memory stays O(bins) no matter how many
//! ordinates stream through. Bin k covers [kε, (k+1)ε); deltas below ε land
//! in bin 0, which is recorded but flagged so consumers can drop it the way
//! the published deficit tables do.

use rayon::prelude::*;
use std::io::{BufRead, Write};
use std::ops::Range;
use thiserror::Error;

use crate::sequence::ZeroSequence;

/// Upper bound on bins per histogram (8 bytes each).
pub const MAX_BINS: usize = 100_000_000;

#[derive(Debug, Error)]
pub enum DeltaError {
    #[error("bin_width must be positive, got {0}")]
    BadBinWidth(f64),
    #[error("t_max must be positive, got {0}")]
    BadTMax(f64),
    #[error("{0} bins exceed the memory cap of {MAX_BINS}")]
    TooManyBins(usize),
    #[error("sequence must be unsigned (split signed sequences first)")]
    SignedInput,
    #[error("histogram shapes differ: {0}")]
    ShapeMismatch(String),
    #[error("combine requires integer-count histograms")]
    CombineFiltered,
    #[error("window length {window} exceeds bin count {bins}")]
    WindowTooLong { window: usize, bins: usize },
    #[error("window length must be odd and >= {min}, got {0}", min = 1)]
    BadWindow(usize),
    #[error("csv parse error at line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Windowing parameters for a delta sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowParams {
    pub t_max: f64,
    pub bin_width: f64,
    /// Keep bin 0 visible to detectors and exports; default false matches the
    /// published tables, which drop sub-ε deltas.
    pub include_bin_zero: bool,
}

impl WindowParams {
    pub fn new(t_max: f64, bin_width: f64) -> Result<Self, DeltaError> {
        let w = Self {
            t_max,
            bin_width,
            include_bin_zero: false,
        };
        w.bin_count()?;
        Ok(w)
    }

    pub fn with_bin_zero(mut self, include: bool) -> Self {
        self.include_bin_zero = include;
        self
    }

    pub fn bin_count(&self) -> Result<usize, DeltaError> {
        if !(self.bin_width > 0.0) || !self.bin_width.is_finite() {
            return Err(DeltaError::BadBinWidth(self.bin_width));
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return Err(DeltaError::BadTMax(self.t_max));
        }
        // Guard against float grid misalignment like 100.1/0.1 = 1001.0000…1.
        let n = (self.t_max / self.bin_width - 1e-9).ceil().max(1.0) as usize;
        if n > MAX_BINS {
            return Err(DeltaError::TooManyBins(n));
        }
        Ok(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistKind {
    Auto,
    Cross,
    Combined,
    Filtered,
}

impl HistKind {
    fn as_str(&self) -> &'static str {
        match self {
            HistKind::Auto => "auto",
            HistKind::Cross => "cross",
            HistKind::Combined => "combined",
            HistKind::Filtered => "filtered",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum HistData {
    Counts(Vec<u64>),
    Values(Vec<f64>),
}

/// Integer (or, after filtering, real) counts of deltas per tick.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaHistogram {
    bin_width: f64,
    t_max: f64,
    data: HistData,
    n_source: u64,
    max_ordinate: f64,
    kind: HistKind,
    include_bin_zero: bool,
}

impl DeltaHistogram {
    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }
    pub fn t_max(&self) -> f64 {
        self.t_max
    }
    pub fn kind(&self) -> HistKind {
        self.kind
    }
    pub fn len(&self) -> usize {
        match &self.data {
            HistData::Counts(v) => v.len(),
            HistData::Values(v) => v.len(),
        }
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn n_source(&self) -> u64 {
        self.n_source
    }
    pub fn max_ordinate(&self) -> f64 {
        self.max_ordinate
    }
    pub fn include_bin_zero(&self) -> bool {
        self.include_bin_zero
    }

    /// Integer counts; None for filtered histograms.
    pub fn counts(&self) -> Option<&[u64]> {
        match &self.data {
            HistData::Counts(v) => Some(v),
            HistData::Values(_) => None,
        }
    }

    /// Bin value as f64 regardless of kind.
    pub fn value(&self, k: usize) -> f64 {
        match &self.data {
            HistData::Counts(v) => v[k] as f64,
            HistData::Values(v) => v[k],
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.value(k)).collect()
    }

    /// Total mass (number of in-window pairs for count histograms).
    pub fn total(&self) -> f64 {
        match &self.data {
            HistData::Counts(v) => v.iter().sum::<u64>() as f64,
            HistData::Values(v) => v.iter().sum(),
        }
    }

    /// Left edge of bin k.
    pub fn bin_start(&self, k: usize) -> f64 {
        k as f64 * self.bin_width
    }
}

#[inline]
fn bin_index(delta: f64, bin_width: f64, nbins: usize) -> usize {
    let k = (delta / bin_width) as usize;
    k.min(nbins - 1)
}

/// Histogram of all pairwise differences 0 < γ_i − γ_j < t_max within one
/// sorted sequence, by a trailing-window two-pointer sweep: O(in-window
/// pairs) time, O(bins) memory.
pub fn auto_deltas(seq: &ZeroSequence, w: &WindowParams) -> Result<DeltaHistogram, DeltaError> {
    if seq.is_signed() {
        return Err(DeltaError::SignedInput);
    }
    let nbins = w.bin_count()?;
    let ords = seq.ordinates();
    let counts = sweep_auto(ords, 0..ords.len(), w.t_max, w.bin_width, nbins);
    Ok(DeltaHistogram {
        bin_width: w.bin_width,
        t_max: w.t_max,
        data: HistData::Counts(counts),
        n_source: ords.len() as u64,
        max_ordinate: seq.max_ordinate(),
        kind: HistKind::Auto,
        include_bin_zero: w.include_bin_zero,
    })
}

fn sweep_auto(ords: &[f64], outer: Range<usize>, t_max: f64, eps: f64, nbins: usize) -> Vec<u64> {
    let mut counts = vec![0u64; nbins];
    if outer.is_empty() {
        return counts;
    }
    let mut lo = 0usize;
    if outer.start > 0 {
        // Position the window start for the first outer index of this chunk.
        let gi = ords[outer.start];
        lo = ords.partition_point(|&v| gi - v >= t_max);
    }
    for i in outer {
        let gi = ords[i];
        while gi - ords[lo] >= t_max {
            lo += 1;
        }
        for &gj in &ords[lo..i] {
            let d = gi - gj;
            if d > 0.0 {
                counts[bin_index(d, eps, nbins)] += 1;
            }
        }
    }
    counts
}

/// Chunked variant used to verify partition determinism: computing chunks of
/// the outer index range independently and combining reproduces the
/// sequential histogram bit-for-bit.
pub fn auto_deltas_chunked(
    seq: &ZeroSequence,
    w: &WindowParams,
    chunks: &[Range<usize>],
) -> Result<DeltaHistogram, DeltaError> {
    if seq.is_signed() {
        return Err(DeltaError::SignedInput);
    }
    let nbins = w.bin_count()?;
    let ords = seq.ordinates();
    let partials: Vec<Vec<u64>> = chunks
        .par_iter()
        .map(|c| sweep_auto(ords, c.clone(), w.t_max, w.bin_width, nbins))
        .collect();
    let mut counts = vec![0u64; nbins];
    for p in partials {
        for (acc, v) in counts.iter_mut().zip(p) {
            *acc += v;
        }
    }
    Ok(DeltaHistogram {
        bin_width: w.bin_width,
        t_max: w.t_max,
        data: HistData::Counts(counts),
        n_source: ords.len() as u64,
        max_ordinate: seq.max_ordinate(),
        kind: HistKind::Auto,
        include_bin_zero: w.include_bin_zero,
    })
}

/// Parallel auto sweep; identical output to the sequential sweep.
pub fn auto_deltas_parallel(
    seq: &ZeroSequence,
    w: &WindowParams,
) -> Result<DeltaHistogram, DeltaError> {
    let n = seq.len();
    let workers = rayon::current_num_threads().max(1);
    if n < 10_000 || workers < 2 {
        return auto_deltas(seq, w);
    }
    let chunk = n / (workers * 4) + 1;
    let chunks: Vec<Range<usize>> = (0..n)
        .step_by(chunk)
        .map(|s| s..(s + chunk).min(n))
        .collect();
    auto_deltas_chunked(seq, w, &chunks)
}

/// Histogram of differences 0 < a − b < t_max with a from `seq_a`, b from
/// `seq_b`. `cross_deltas(s, s)` equals `auto_deltas(s)`: the diagonal pairs
/// have delta 0 and strict positivity excludes them.
pub fn cross_deltas(
    seq_a: &ZeroSequence,
    seq_b: &ZeroSequence,
    w: &WindowParams,
) -> Result<DeltaHistogram, DeltaError> {
    if seq_a.is_signed() || seq_b.is_signed() {
        return Err(DeltaError::SignedInput);
    }
    let nbins = w.bin_count()?;
    let a = seq_a.ordinates();
    let b = seq_b.ordinates();
    let mut counts = vec![0u64; nbins];
    let mut lo = 0usize;
    for &ai in a {
        while lo < b.len() && ai - b[lo] >= w.t_max {
            lo += 1;
        }
        for &bj in &b[lo..] {
            let d = ai - bj;
            if d <= 0.0 {
                break;
            }
            counts[bin_index(d, w.bin_width, nbins)] += 1;
        }
    }
    Ok(DeltaHistogram {
        bin_width: w.bin_width,
        t_max: w.t_max,
        data: HistData::Counts(counts),
        n_source: (a.len() + b.len()) as u64,
        max_ordinate: seq_a.max_ordinate().max(seq_b.max_ordinate()),
        kind: HistKind::Cross,
        include_bin_zero: w.include_bin_zero,
    })
}

/// Elementwise sum of two integer histograms over the same grid.
pub fn combine(a: &DeltaHistogram, b: &DeltaHistogram) -> Result<DeltaHistogram, DeltaError> {
    if a.bin_width != b.bin_width || a.t_max != b.t_max || a.len() != b.len() {
        return Err(DeltaError::ShapeMismatch(format!(
            "({}, {}, {}) vs ({}, {}, {})",
            a.bin_width,
            a.t_max,
            a.len(),
            b.bin_width,
            b.t_max,
            b.len()
        )));
    }
    let (ca, cb) = match (&a.data, &b.data) {
        (HistData::Counts(x), HistData::Counts(y)) => (x, y),
        _ => return Err(DeltaError::CombineFiltered),
    };
    let counts = ca.iter().zip(cb).map(|(x, y)| x + y).collect();
    Ok(DeltaHistogram {
        bin_width: a.bin_width,
        t_max: a.t_max,
        data: HistData::Counts(counts),
        n_source: a.n_source + b.n_source,
        max_ordinate: a.max_ordinate.max(b.max_ordinate),
        kind: HistKind::Combined,
        include_bin_zero: a.include_bin_zero || b.include_bin_zero,
    })
}

/// Edge handling for the centered moving average.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeMode {
    /// Clip the window at the boundary; divisor is the actual window size.
    Truncate,
    /// Wrap around; preserves total mass exactly.
    Periodic,
}

/// Centered moving average with an odd window of `tau` bins.
pub fn moving_average(
    hist: &DeltaHistogram,
    tau: usize,
    edge: EdgeMode,
) -> Result<DeltaHistogram, DeltaError> {
    if tau == 0 || tau % 2 == 0 {
        return Err(DeltaError::BadWindow(tau));
    }
    let n = hist.len();
    if tau > n {
        return Err(DeltaError::WindowTooLong { window: tau, bins: n });
    }
    let half = (tau / 2) as isize;
    let mut out = vec![0.0f64; n];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        let mut cnt = 0usize;
        for off in -half..=half {
            let idx = k as isize + off;
            match edge {
                EdgeMode::Truncate => {
                    if idx < 0 || idx >= n as isize {
                        continue;
                    }
                    acc += hist.value(idx as usize);
                    cnt += 1;
                }
                EdgeMode::Periodic => {
                    acc += hist.value(idx.rem_euclid(n as isize) as usize);
                    cnt += 1;
                }
            }
        }
        *slot = acc / cnt as f64;
    }
    Ok(DeltaHistogram {
        bin_width: hist.bin_width,
        t_max: hist.t_max,
        data: HistData::Values(out),
        n_source: hist.n_source,
        max_ordinate: hist.max_ordinate,
        kind: HistKind::Filtered,
        include_bin_zero: hist.include_bin_zero,
    })
}

/// Residual after removing a centered moving average; exposes localized
/// deficits when the baseline drifts.
pub fn detrend(hist: &DeltaHistogram, window: usize) -> Result<DeltaHistogram, DeltaError> {
    if window < 3 || window % 2 == 0 {
        return Err(DeltaError::BadWindow(window));
    }
    let ma = moving_average(hist, window, EdgeMode::Truncate)?;
    let out: Vec<f64> = (0..hist.len()).map(|k| hist.value(k) - ma.value(k)).collect();
    Ok(DeltaHistogram {
        bin_width: hist.bin_width,
        t_max: hist.t_max,
        data: HistData::Values(out),
        n_source: hist.n_source,
        max_ordinate: hist.max_ordinate,
        kind: HistKind::Filtered,
        include_bin_zero: hist.include_bin_zero,
    })
}

/// Builds a filtered histogram directly from values (detector tests, synthetic
/// inputs, and CSV ingestion).
pub fn histogram_from_values(
    values: Vec<f64>,
    bin_width: f64,
    kind: HistKind,
) -> Result<DeltaHistogram, DeltaError> {
    if !(bin_width > 0.0) {
        return Err(DeltaError::BadBinWidth(bin_width));
    }
    let t_max = values.len() as f64 * bin_width;
    let data = match kind {
        HistKind::Filtered => HistData::Values(values),
        _ => HistData::Counts(values.iter().map(|&v| v.max(0.0) as u64).collect()),
    };
    Ok(DeltaHistogram {
        bin_width,
        t_max,
        data,
        n_source: 0,
        max_ordinate: 0.0,
        kind,
        include_bin_zero: false,
    })
}

// ---------------------------------------------------------------------------
// CSV export / import

impl DeltaHistogram {
    /// Writes the histogram as CSV: metadata comment lines, a header, then
    /// one `k,bin_start,count` row per bin. Integer counts are bit-exact;
    /// filtered values are written with 15 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<(), DeltaError> {
        writeln!(w, "# zerostats histogram v1")?;
        writeln!(
            w,
            "# kind={} bin_width={:.17e} t_max={:.17e} n_source={} max_ordinate={:.17e} include_bin_zero={}",
            self.kind.as_str(),
            self.bin_width,
            self.t_max,
            self.n_source,
            self.max_ordinate,
            self.include_bin_zero
        )?;
        writeln!(w, "k,bin_start,count")?;
        for k in 0..self.len() {
            match &self.data {
                HistData::Counts(v) => writeln!(w, "{},{:.6},{}", k, self.bin_start(k), v[k])?,
                HistData::Values(v) => {
                    writeln!(w, "{},{:.6},{:.14e}", k, self.bin_start(k), v[k])?
                }
            }
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<DeltaHistogram, DeltaError> {
        let mut bin_width = None;
        let mut t_max = None;
        let mut n_source = 0u64;
        let mut max_ordinate = 0.0f64;
        let mut kind = HistKind::Auto;
        let mut include_bin_zero = false;
        let mut counts: Vec<u64> = Vec::new();
        let mut reals: Vec<f64> = Vec::new();
        let mut filtered = false;

        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = lineno + 1;
            let bad = |message: &str| DeltaError::Csv {
                line: lineno,
                message: message.to_string(),
            };
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(meta) = t.strip_prefix('#') {
                for field in meta.split_whitespace() {
                    if let Some((key, val)) = field.split_once('=') {
                        match key {
                            "kind" => {
                                kind = match val {
                                    "auto" => HistKind::Auto,
                                    "cross" => HistKind::Cross,
                                    "combined" => HistKind::Combined,
                                    "filtered" => {
                                        filtered = true;
                                        HistKind::Filtered
                                    }
                                    _ => return Err(bad("unknown kind")),
                                }
                            }
                            "bin_width" => bin_width = val.parse().ok(),
                            "t_max" => t_max = val.parse().ok(),
                            "n_source" => n_source = val.parse().map_err(|_| bad("n_source"))?,
                            "max_ordinate" => {
                                max_ordinate = val.parse().map_err(|_| bad("max_ordinate"))?
                            }
                            "include_bin_zero" => {
                                include_bin_zero = val.parse().map_err(|_| bad("flag"))?
                            }
                            _ => {}
                        }
                    }
                }
                continue;
            }
            if t.starts_with('k') {
                continue; // header
            }
            let mut parts = t.split(',');
            let _k: usize = parts
                .next()
                .ok_or_else(|| bad("missing k"))?
                .trim()
                .parse()
                .map_err(|_| bad("bad k"))?;
            let _start = parts.next().ok_or_else(|| bad("missing bin_start"))?;
            let val = parts.next().ok_or_else(|| bad("missing count"))?.trim();
            if filtered {
                reals.push(val.parse().map_err(|_| bad("bad value"))?);
            } else {
                counts.push(val.parse().map_err(|_| bad("bad count"))?);
            }
        }

        let bin_width = bin_width.ok_or(DeltaError::Csv {
            line: 0,
            message: "missing bin_width metadata".into(),
        })?;
        let nbins = if filtered { reals.len() } else { counts.len() };
        let t_max = t_max.unwrap_or(nbins as f64 * bin_width);
        Ok(DeltaHistogram {
            bin_width,
            t_max,
            data: if filtered {
                HistData::Values(reals)
            } else {
                HistData::Counts(counts)
            },
            n_source,
            max_ordinate,
            kind,
            include_bin_zero,
        })
    }
}
