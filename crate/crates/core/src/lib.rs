//! # clp-core
//!
//! Lossy compression of binary memoryless sequences under Hamming distortion
//! by Codelet Parsing, a Lempel-Ziv style algorithm that parses the input into
//! phrases and represents each phrase by a (possibly distorted) dictionary
//! entry of the same length, called a codelet.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`rd_math`] | binary entropy, rate-distortion function, lower mutual information |
//! | [`matching`] | bit sequences, match relations, exact ball and match probabilities |
//! | [`dictionary`] | codebook trie, practical extension, level-structured dictionary and frontier search |
//! | [`codec`] | practical and idealized encoders, LZ78 back end, stream format, decoder |
//! | [`harness`] | Monte Carlo lemma checks, rate sweeps, experiment configuration |
//!
//! The distortion guarantee is exact: every encoder output `y` satisfies
//! `hamming_distance(x, y) <= D * n` in integer arithmetic, with `D` carried as
//! a rational number throughout.

use thiserror::Error;

pub mod bits;
pub mod codec;
pub mod dictionary;
pub mod harness;
pub mod matching;
pub mod rd_math;

pub use bits::BitSequence;
pub use codec::{decode, encode, EncodedStream, Encoding, EncoderOptions, Variant};
pub use matching::MatchRelation;
pub use rd_math::{DistortionBudget, SourceModel, TypeFraction};

/// Errors produced anywhere in the codec or harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("no joint distribution with marginals q = {q}, p = {p} has expected distortion <= {d}")]
    Infeasible { q: f64, p: f64, d: f64 },

    #[error("operation requires a non-empty sequence")]
    EmptySequence,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {0} is not a leaf of the codebook")]
    NotALeaf(u32),

    #[error("dictionary level at depth {depth} already holds {size} codelets")]
    LevelFull { depth: u32, size: u64 },

    #[error("codelet selection needs at least one match")]
    EmptyMatchSet,

    #[error("corrupt stream: {0}")]
    CorruptStream(String),

    #[error("bad magic bytes")]
    BadMagic,

    #[error("unsupported stream version {0}")]
    UnsupportedVersion(u8),

    #[error("rate-distortion function is zero; short-phrase threshold undefined")]
    ZeroRate,

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
