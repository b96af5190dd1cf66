//! Statistics of critical-line zeros of zeta and Dirichlet L-functions.
//!
//! The pipeline this crate implements:
//!
//! 1. [`zeros`] computes zero ordinates of zeta and of Dirichlet L-functions
//!    at desk scale (Gram-block scanning with completeness accounting), and
//!    [`ingest`] parses published zero tables and caches sequences in a
//!    checksummed binary format.
//! 2. [`delta`] turns one or two sorted ordinate sequences into binned
//!    histograms of pairwise differences with O(bins) memory.
//! 3. [`spike`] detects localized deficits in those histograms, recovers the
//!    ordinates they encode, matches them against reference zeros, and fits
//!    the compressed pair-correlation dip together with its oscillatory
//!    residual.
//! 4. [`ene`] predicts where the deficits must fall for any mating of two
//!    zero sequences, through a formal product algebra on Euler factors; the
//!    [`characters`] module supplies the exact Dirichlet character
//!    arithmetic it runs on.

pub mod characters;
pub mod delta;
pub mod ene;
pub mod hardy;
pub mod ingest;
pub mod sequence;
pub mod special;
pub mod spike;
pub mod theta;
pub mod zeros;

pub use characters::{character, characters_mod, mul_conj, CharValue, DirichletCharacter};
pub use delta::{
    auto_deltas, auto_deltas_chunked, auto_deltas_parallel, combine, cross_deltas, detrend,
    moving_average, DeltaHistogram, EdgeMode, HistKind, WindowParams,
};
pub use ene::{
    ene_euler, ene_local, predict_deltas, EneProduct, EulerProductSymbol, LBase, LineOrder,
    LocalFactor, PredictedLine, SpikePrediction,
};
pub use hardy::{hardy_z, hardy_z_checked, ZFunctionConfig};
pub use ingest::{
    cache_roundtrip, parse_zero_file, parse_zero_reader, read_cache, write_cache, Dialect,
    ZeroFileSpec,
};
pub use sequence::{Source, ZeroSequence};
pub use spike::{
    box_fn, detect_deficits, fit_gue_amplitude, fresnel_residual, gue_correct, gue_pair_density,
    match_zeros, omega0, pair_correlation_integral, sinc_pi, DeficitGroup, FresnelFit, GueFit,
    SpikeReport, Threshold,
};
pub use theta::{count_zeros, gram_point, riemann_siegel_theta};
pub use zeros::{
    find_dirichlet_zeros, find_riemann_zeros, find_riemann_zeros_below, lfunc_expected_count,
    lfunc_z, LFunction, ZeroError,
};
