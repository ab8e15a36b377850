//! Encoders, decoder and stream format.
//!
//! A stream is a 33-byte [`Header`] followed by a payload packed MSB-first
//! and zero-padded to a byte boundary. The practical variant's payload is
//! the LZ78 code of the reconstruction `y`; the idealized variant's payload
//! indexes its own level dictionary (see [`idealized`]).

pub mod header;
pub mod idealized;
pub mod lz78;
pub mod practical;

use std::fmt;
use std::str::FromStr;

use crate::bits::{BitReader, BitSequence, BitWriter};
use crate::dictionary::{default_ell, LevelConfig, MAX_ELL};
use crate::matching::MatchRelation;
use crate::rd_math::{DistortionBudget, SourceModel};
use crate::{Error, Result};

pub use header::{Header, HEADER_LEN};
pub use idealized::IdealizedStats;
pub use lz78::{lz78_decode, lz78_encode, lz78_parse};
pub use practical::{select_codelet, PracticalEncoder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Practical,
    Idealized,
}

impl Variant {
    pub fn code(self) -> u8 {
        match self {
            Variant::Practical => 0,
            Variant::Idealized => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Variant::Practical),
            1 => Some(Variant::Idealized),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Practical => "practical",
            Variant::Idealized => "idealized",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "practical" => Ok(Variant::Practical),
            "idealized" => Ok(Variant::Idealized),
            other => Err(Error::InvalidParameter(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    Codelet,
    Escape,
}

/// One phrase of a parse: the reconstruction bits for a codelet, or the raw
/// input bits for an escape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseEvent {
    pub kind: EventKind,
    pub bits: BitSequence,
}

impl ParseEvent {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EncoderOptions {
    pub variant: Variant,
    /// `None` selects the variant default: full-codelet for practical,
    /// prefix-wise for idealized (which accepts nothing else).
    pub relation: Option<MatchRelation>,
    /// `None` means unknown: the idealized encoder then estimates it.
    pub source: Option<SourceModel>,
    /// Base level width; `None` picks `max(2, ceil(log2 log2 n))`.
    pub ell: Option<u32>,
    pub delta: f64,
    /// Randomizes tie-breaks among equally deep idealized matches.
    pub seed: Option<u64>,
}

impl Default for EncoderOptions {
    fn default() -> Self {
        Self {
            variant: Variant::Practical,
            relation: None,
            source: None,
            ell: None,
            delta: LevelConfig::DEFAULT_DELTA,
            seed: None,
        }
    }
}

impl EncoderOptions {
    pub fn practical() -> Self {
        Self::default()
    }

    pub fn idealized(src: SourceModel) -> Self {
        Self {
            variant: Variant::Idealized,
            source: Some(src),
            ..Self::default()
        }
    }

    pub fn with_ell(mut self, ell: u32) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_relation(mut self, rel: MatchRelation) -> Self {
        self.relation = Some(rel);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EncodedStream {
    pub header: Header,
    pub payload: Vec<u8>,
}

impl EncodedStream {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len());
        out.extend_from_slice(&self.header.to_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let header = Header::from_bytes(bytes)?;
        Ok(Self {
            header,
            payload: bytes[HEADER_LEN..].to_vec(),
        })
    }

    /// Payload bits per source symbol, header excluded.
    pub fn coding_rate(&self) -> f64 {
        coding_rate(self)
    }
}

pub fn coding_rate(stream: &EncodedStream) -> f64 {
    if stream.header.n == 0 {
        return 0.0;
    }
    (stream.payload.len() as f64 * 8.0) / stream.header.n as f64
}

/// Everything an encode produces.
#[derive(Clone, Debug)]
pub struct Encoding {
    pub y: BitSequence,
    pub stream: EncodedStream,
    pub events: Vec<ParseEvent>,
    /// Present for the idealized variant.
    pub stats: Option<IdealizedStats>,
}

pub fn encode(x: &BitSequence, dist: DistortionBudget, opts: &EncoderOptions) -> Result<Encoding> {
    match opts.variant {
        Variant::Practical => {
            let rel = opts.relation.unwrap_or(MatchRelation::FullCodelet);
            encode_practical(x, dist, opts.source, rel)
        }
        Variant::Idealized => {
            if opts.relation == Some(MatchRelation::FullCodelet) {
                return Err(Error::InvalidParameter(
                    "the idealized variant requires the prefix-wise relation".into(),
                ));
            }
            let n = x.len() as u64;
            let ell = opts.ell.unwrap_or_else(|| default_ell(n));
            // the decoder only sees the header's rational form of p
            let src = opts.source.map(|s| s.quantized());
            let fallback = SourceModel::new(0.5).expect("valid");
            let cfg = LevelConfig::new(ell, n, opts.delta, src.unwrap_or(fallback), dist)?;
            Ok(encode_idealized(x, dist, src, cfg, opts.seed))
        }
    }
}

pub fn encode_practical(
    x: &BitSequence,
    dist: DistortionBudget,
    src: Option<SourceModel>,
    rel: MatchRelation,
) -> Result<Encoding> {
    let (y, events) = practical::parse_practical(x, dist, rel);
    let header = Header {
        n: x.len() as u64,
        distortion: dist,
        source: src,
        ell: 0,
        variant: Variant::Practical,
        relation: rel,
    };
    let payload = lz78_encode(&y);
    Ok(Encoding {
        y,
        stream: EncodedStream { header, payload },
        events,
        stats: None,
    })
}

/// Idealized encode with an explicit level configuration. A decodable
/// stream needs `cfg` to be what [`decode`] rebuilds from the header:
/// `horizon_n = x.len()` and `src` exactly representable as
/// [`SourceModel::quantized`]. `δ` only steers the encoder.
pub fn encode_idealized(
    x: &BitSequence,
    dist: DistortionBudget,
    src: Option<SourceModel>,
    cfg: LevelConfig,
    seed: Option<u64>,
) -> Encoding {
    let header = Header {
        n: x.len() as u64,
        distortion: dist,
        source: src,
        ell: cfg.ell as u16,
        variant: Variant::Idealized,
        relation: MatchRelation::PrefixWise,
    };
    let mut w = BitWriter::new();
    let out = idealized::encode_idealized_into(x, dist, src, cfg, seed, &mut w);
    Encoding {
        y: out.y,
        stream: EncodedStream {
            header,
            payload: w.finish(),
        },
        events: out.events,
        stats: Some(out.stats),
    }
}

/// Reconstructs `y` from a stream of either variant.
pub fn decode(stream: &EncodedStream) -> Result<BitSequence> {
    let h = &stream.header;
    let y = match h.variant {
        Variant::Practical => lz78_decode(&stream.payload, h.n)?,
        Variant::Idealized => {
            let ell = h.ell as u32;
            if ell == 0 || ell > MAX_ELL {
                return Err(Error::CorruptStream(format!("ell {ell} out of range")));
            }
            if h.relation != MatchRelation::PrefixWise {
                return Err(Error::CorruptStream("idealized stream must use the prefix-wise relation".into()));
            }
            let fallback = SourceModel::new(0.5).expect("valid");
            let cfg = LevelConfig::new(ell, h.n, LevelConfig::DEFAULT_DELTA, h.source.unwrap_or(fallback), h.distortion)?;
            let mut r = BitReader::new(&stream.payload);
            let y = idealized::decode_idealized_from(&mut r, h.n, h.distortion, h.source, cfg)?;
            if !r.only_padding_left() {
                return Err(Error::CorruptStream("trailing data after payload".into()));
            }
            y
        }
    };
    if y.len() as u64 != h.n {
        return Err(Error::CorruptStream(format!("decoded {} bits, header says {}", y.len(), h.n)));
    }
    Ok(y)
}

/// Decodes a complete stream from bytes.
pub fn decode_bytes(bytes: &[u8]) -> Result<BitSequence> {
    decode(&EncodedStream::from_bytes(bytes)?)
}
