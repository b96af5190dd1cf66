//! Parsing of public zero tables and a checksummed binary cache.
//!
//! Two text dialects cover the files in circulation: `plain` (one ascending
//! ordinate per line) and `columnar` (whitespace-separated fields, ordinate
//! in a declared 1-based column, values possibly signed and ordered by
//! absolute value). Provider layout knowledge stays out of the code: skip
//! counts, column indices and base-height offsets are caller-supplied.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::sequence::{SequenceError, Source, ZeroSequence};

const CACHE_MAGIC: [u8; 4] = *b"ZDSQ";
const CACHE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: malformed value {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: column {column} out of range ({fields} fields)")]
    ColumnOutOfRange {
        line: usize,
        column: usize,
        fields: usize,
    },
    #[error("line {line}: plain input not nondecreasing ({prev} then {next})")]
    NotMonotone { line: usize, prev: f64, next: f64 },
    #[error("plain dialect requires column 1, got {0}")]
    PlainColumn(usize),
    #[error("offset must be finite and nonnegative, got {0}")]
    BadOffset(f64),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("cache magic mismatch (not a cache file)")]
    BadMagic,
    #[error("cache version {found} unsupported (expected {CACHE_VERSION})")]
    VersionMismatch { found: u32 },
    #[error("cache checksum mismatch (file corrupt or truncated)")]
    ChecksumMismatch,
    #[error("cache truncated: expected {expected} ordinates, payload holds {found}")]
    Truncated { expected: u64, found: u64 },
}

/// Text dialect of a zero table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Plain,
    Columnar,
}

/// Description of a zero table on disk.
#[derive(Debug, Clone)]
pub struct ZeroFileSpec {
    pub path: PathBuf,
    pub dialect: Dialect,
    /// Data rows to skip before reading (comment rows never count).
    pub skip_rows: usize,
    /// Stop after this many data rows; None reads to the end.
    pub max_rows: Option<usize>,
    /// 1-based ordinate column (columnar dialect; must be 1 for plain).
    pub column: usize,
    /// Base height added to every parsed value, for tables stored as offsets
    /// against a printed base.
    pub offset: f64,
}

impl ZeroFileSpec {
    pub fn plain(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            dialect: Dialect::Plain,
            skip_rows: 0,
            max_rows: None,
            column: 1,
            offset: 0.0,
        }
    }

    pub fn columnar(path: impl Into<PathBuf>, column: usize) -> Self {
        Self {
            path: path.into(),
            dialect: Dialect::Columnar,
            skip_rows: 0,
            max_rows: None,
            column,
            offset: 0.0,
        }
    }

    pub fn skip(mut self, rows: usize) -> Self {
        self.skip_rows = rows;
        self
    }

    pub fn limit(mut self, rows: usize) -> Self {
        self.max_rows = Some(rows);
        self
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }
}

/// Parses a zero table per its spec.
///
/// Plain input must be nondecreasing and yields an unsigned sequence;
/// columnar input may carry negative ordinates (ordered any way the provider
/// likes) and yields a signed sequence, sorted ascending.
pub fn parse_zero_file(spec: &ZeroFileSpec) -> Result<ZeroSequence, IngestError> {
    if spec.dialect == Dialect::Plain && spec.column != 1 {
        return Err(IngestError::PlainColumn(spec.column));
    }
    if !spec.offset.is_finite() || spec.offset < 0.0 {
        return Err(IngestError::BadOffset(spec.offset));
    }
    let file = File::open(&spec.path)?;
    parse_zero_reader(BufReader::new(file), spec)
}

pub fn parse_zero_reader<R: BufRead>(
    reader: R,
    spec: &ZeroFileSpec,
) -> Result<ZeroSequence, IngestError> {
    let mut values: Vec<f64> = Vec::new();
    let mut data_row = 0usize;
    let mut prev: Option<f64> = None;
    let source = Source::Ingested(format!(
        "{} ({:?}, skip={}, col={})",
        spec.path.display(),
        spec.dialect,
        spec.skip_rows,
        spec.column
    ));

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        data_row += 1;
        if data_row <= spec.skip_rows {
            continue;
        }
        if let Some(max) = spec.max_rows {
            if values.len() >= max {
                break;
            }
        }
        let raw = match spec.dialect {
            Dialect::Plain => t,
            Dialect::Columnar => {
                let fields: Vec<&str> = t.split_whitespace().collect();
                if spec.column == 0 || spec.column > fields.len() {
                    return Err(IngestError::ColumnOutOfRange {
                        line: lineno,
                        column: spec.column,
                        fields: fields.len(),
                    });
                }
                fields[spec.column - 1]
            }
        };
        let v: f64 = raw.parse().map_err(|_| IngestError::Malformed {
            line: lineno,
            text: raw.to_string(),
        })?;
        if spec.dialect == Dialect::Plain {
            if let Some(p) = prev {
                if v < p {
                    return Err(IngestError::NotMonotone {
                        line: lineno,
                        prev: p,
                        next: v,
                    });
                }
            }
            prev = Some(v);
        }
        values.push(v + spec.offset);
    }

    match spec.dialect {
        Dialect::Plain => Ok(ZeroSequence::unsigned(values, source)?),
        Dialect::Columnar => {
            values.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Ok(ZeroSequence::signed(values, source)?)
        }
    }
}

// ---------------------------------------------------------------------------
// binary cache

/// Cache layout: magic, version u32, count u64, signed u8, max_ordinate f64,
/// checksum u64, then count little-endian f64 ordinates. The checksum is
/// FNV-1a over the payload bytes, so truncation and bit rot both surface as
/// hard errors instead of partial sequences.
pub fn write_cache(path: &Path, seq: &ZeroSequence) -> Result<(), IngestError> {
    let mut payload = Vec::with_capacity(seq.len() * 8);
    for &v in seq.ordinates() {
        payload.extend_from_slice(&v.to_le_bytes());
    }
    let mut f = File::create(path)?;
    f.write_all(&CACHE_MAGIC)?;
    f.write_all(&CACHE_VERSION.to_le_bytes())?;
    f.write_all(&(seq.len() as u64).to_le_bytes())?;
    f.write_all(&[seq.is_signed() as u8])?;
    f.write_all(&seq.max_ordinate().to_le_bytes())?;
    f.write_all(&fnv1a(&payload).to_le_bytes())?;
    f.write_all(&payload)?;
    Ok(())
}

pub fn read_cache(path: &Path) -> Result<ZeroSequence, IngestError> {
    let mut f = File::open(path)?;
    let mut head = [0u8; 4 + 4 + 8 + 1 + 8 + 8];
    f.read_exact(&mut head).map_err(|_| IngestError::BadMagic)?;
    if head[0..4] != CACHE_MAGIC {
        return Err(IngestError::BadMagic);
    }
    let version = u32::from_le_bytes(head[4..8].try_into().unwrap());
    if version != CACHE_VERSION {
        return Err(IngestError::VersionMismatch { found: version });
    }
    let count = u64::from_le_bytes(head[8..16].try_into().unwrap());
    let signed = head[16] != 0;
    let max_ordinate = f64::from_le_bytes(head[17..25].try_into().unwrap());
    let checksum = u64::from_le_bytes(head[25..33].try_into().unwrap());

    let mut payload = Vec::new();
    f.read_to_end(&mut payload)?;
    if payload.len() as u64 != count * 8 {
        return Err(IngestError::Truncated {
            expected: count,
            found: payload.len() as u64 / 8,
        });
    }
    if fnv1a(&payload) != checksum {
        return Err(IngestError::ChecksumMismatch);
    }
    let ordinates: Vec<f64> = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let seq = ZeroSequence::new(
        ordinates,
        signed,
        Source::Ingested(format!("cache {}", path.display())),
    )?;
    debug_assert_eq!(seq.max_ordinate(), max_ordinate);
    Ok(seq)
}

/// Write-then-read; the identity on the sequence's ordinates and flags.
pub fn cache_roundtrip(path: &Path, seq: &ZeroSequence) -> Result<ZeroSequence, IngestError> {
    write_cache(path, seq)?;
    read_cache(path)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}
