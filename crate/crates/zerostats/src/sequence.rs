//! Sorted sequences of critical-line zero ordinates.
//!
//! An ordinate is the imaginary part `γ` of a zero `ρ = 1/2 + iγ`. Sequences
//! are either unsigned (all ordinates positive, the usual case for real
//! analytic functions) or signed (ordinates of both signs, as for the zeros
//! of a complex non-real character).

use thiserror::Error;

/// Two ordinates closer than this are treated as the same zero when
/// concatenating computed ranges.
pub const MERGE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("ordinates not strictly increasing at position {index}: {prev} >= {next}")]
    NotIncreasing { index: usize, prev: f64, next: f64 },
    #[error("unsigned sequence contains non-positive ordinate {value} at position {index}")]
    NonPositive { index: usize, value: f64 },
    #[error("non-finite ordinate at position {index}")]
    NonFinite { index: usize },
    #[error("operation requires a signed sequence")]
    NotSigned,
}

/// Where a sequence came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Computed by a zero-finding engine; the string records the generator
    /// and its parameters.
    Computed(String),
    /// Parsed from an external file or cache.
    Ingested(String),
    /// Built directly from values (tests, synthetic sequences).
    Literal,
}

/// Sorted critical-line ordinates with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSequence {
    ordinates: Vec<f64>,
    signed: bool,
    source: Source,
    max_ordinate: f64,
}

impl ZeroSequence {
    /// Builds a sequence from already-sorted ordinates.
    ///
    /// Adjacent values within [`MERGE_TOLERANCE`] are merged (first kept);
    /// a decrease is an error. Unsigned sequences must be strictly positive.
    pub fn new(ordinates: Vec<f64>, signed: bool, source: Source) -> Result<Self, SequenceError> {
        let mut merged: Vec<f64> = Vec::with_capacity(ordinates.len());
        for (i, &v) in ordinates.iter().enumerate() {
            if !v.is_finite() {
                return Err(SequenceError::NonFinite { index: i });
            }
            if !signed && v <= 0.0 {
                return Err(SequenceError::NonPositive { index: i, value: v });
            }
            if let Some(&last) = merged.last() {
                if v <= last {
                    if last - v <= MERGE_TOLERANCE {
                        continue; // duplicate within tolerance
                    }
                    return Err(SequenceError::NotIncreasing {
                        index: i,
                        prev: last,
                        next: v,
                    });
                }
                if v - last <= MERGE_TOLERANCE {
                    continue;
                }
            }
            merged.push(v);
        }
        let max_ordinate = merged.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        Ok(Self {
            ordinates: merged,
            signed,
            source,
            max_ordinate,
        })
    }

    /// Unsigned sequence from positive ordinates.
    pub fn unsigned(ordinates: Vec<f64>, source: Source) -> Result<Self, SequenceError> {
        Self::new(ordinates, false, source)
    }

    /// Signed sequence (negative ordinates are meaningful).
    pub fn signed(ordinates: Vec<f64>, source: Source) -> Result<Self, SequenceError> {
        Self::new(ordinates, true, source)
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    /// Largest absolute ordinate present (`T₀`), 0 for an empty sequence.
    pub fn max_ordinate(&self) -> f64 {
        self.max_ordinate
    }

    /// Splits a signed sequence into its positive branch and the negated
    /// negative branch, both unsigned and ascending. An ordinate at exactly 0
    /// never occurs (excluded upstream).
    pub fn split_signed(&self) -> Result<(ZeroSequence, ZeroSequence), SequenceError> {
        if !self.signed {
            return Err(SequenceError::NotSigned);
        }
        let positive: Vec<f64> = self.ordinates.iter().copied().filter(|&v| v > 0.0).collect();
        let mut negated: Vec<f64> = self
            .ordinates
            .iter()
            .copied()
            .filter(|&v| v < 0.0)
            .map(|v| -v)
            .collect();
        negated.reverse();
        let src = self.source.clone();
        Ok((
            ZeroSequence::unsigned(positive, src.clone())?,
            ZeroSequence::unsigned(negated, src)?,
        ))
    }

    /// Keeps ordinates with absolute value strictly below `limit`.
    pub fn truncated_below(&self, limit: f64) -> ZeroSequence {
        let ordinates: Vec<f64> = self
            .ordinates
            .iter()
            .copied()
            .filter(|v| v.abs() < limit)
            .collect();
        let max_ordinate = ordinates.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        ZeroSequence {
            ordinates,
            signed: self.signed,
            source: self.source.clone(),
            max_ordinate,
        }
    }

    /// Keeps only the first `n` ordinates.
    pub fn truncated_len(&self, n: usize) -> ZeroSequence {
        let ordinates: Vec<f64> = self.ordinates.iter().copied().take(n).collect();
        let max_ordinate = ordinates.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        ZeroSequence {
            ordinates,
            signed: self.signed,
            source: self.source.clone(),
            max_ordinate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_decreasing() {
        let err = ZeroSequence::unsigned(vec![2.0, 1.0], Source::Literal);
        assert!(matches!(err, Err(SequenceError::NotIncreasing { .. })));
    }

    #[test]
    fn merges_near_duplicates() {
        let s = ZeroSequence::unsigned(vec![1.0, 1.0 + 5e-9, 2.0], Source::Literal).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.max_ordinate(), 2.0);
    }

    #[test]
    fn split_signed_partitions() {
        let s = ZeroSequence::signed(vec![-6.201230, 4.356402, 8.785555], Source::Literal).unwrap();
        let (pos, neg) = s.split_signed().unwrap();
        assert_eq!(pos.ordinates(), &[4.356402, 8.785555]);
        assert_eq!(neg.ordinates(), &[6.201230]);
        assert_eq!(pos.len() + neg.len(), s.len());
    }

    #[test]
    fn split_rejects_unsigned() {
        let s = ZeroSequence::unsigned(vec![1.0], Source::Literal).unwrap();
        assert!(matches!(s.split_signed(), Err(SequenceError::NotSigned)));
    }

    #[test]
    fn symmetric_sequence_splits_equal() {
        let s = ZeroSequence::signed(vec![-3.5, 3.5], Source::Literal).unwrap();
        let (pos, neg) = s.split_signed().unwrap();
        assert_eq!(pos.ordinates(), neg.ordinates());
    }

    #[test]
    fn all_positive_signed_has_empty_negative_branch() {
        let s = ZeroSequence::signed(vec![1.0, 2.0], Source::Literal).unwrap();
        let (pos, neg) = s.split_signed().unwrap();
        assert_eq!(pos.len(), 2);
        assert!(neg.is_empty());
    }
}
