//! Erasure decoders for hypergraph-product quantum LDPC codes.
//!
//! The crate builds the hypergraph product of a classical Tanner graph with
//! itself and decodes X errors on erased qubits with a family of decoders:
//!
//! - plain peeling on the Tanner graph of `H_Z` ([`peeling::peel_quantum`]),
//! - peeling with stabilizer pruning ([`peeling::pruned_peel`]),
//! - the vertical-horizontal cluster decoder ([`vh::vh_decode`]) and its
//!   combination with pruned peeling ([`vh::combined_decode`]),
//! - Gaussian elimination, which is maximum likelihood for erasures
//!   ([`ml::ml_decode`]).
//!
//! [`sim`] runs paired Monte Carlo comparisons of these decoders.

pub mod channel;
pub mod classical;
pub mod error;
pub mod gf2;
pub mod hgp;
pub mod ml;
pub mod peeling;
pub mod sim;
pub mod vh;

pub use channel::{sample, sample_with_erasure, ErasureSample, RngStream};
pub use classical::{
    classical_peel, is_stopping_set, peg_generate, read_alist, write_alist, PegParams, PeelOutcome,
    TannerGraph,
};
pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BinaryVector};
pub use hgp::{Coord, CoordKind, HgpCode};
pub use ml::{classify_residual, erasure_supports_logical, ml_decode, TrialVerdict, Verdict};
pub use peeling::{
    find_erased_stabilizer, peel_quantum, pruned_peel, DecodeOutcome, DecodeStats, DecodeStatus,
    PruneConfig,
};
pub use sim::{run_sweep, wilson_interval, write_csv, DecoderKind, SweepResult, SweepSpec};
pub use vh::{classify, combined_decode, decompose, solve_cluster, vh_decode, ClusterStatus, VhGraph};
