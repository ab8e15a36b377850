//! Fixed-size stream header.
//!
//! ```text
//! offset size field
//!      0    4 magic "CLP1"
//!      4    1 version (1)
//!      5    8 n, source length in bits
//!     13    4 distortion numerator
//!     17    4 distortion denominator
//!     21    4 p numerator
//!     25    4 p denominator (0xFFFFFFFF: p unknown)
//!     29    2 ell (0 for the practical variant)
//!     31    1 variant (0 practical, 1 idealized)
//!     32    1 relation (0 full-codelet, 1 prefix-wise)
//! ```
//!
//! All integers are big-endian.

use crate::matching::MatchRelation;
use crate::rd_math::{DistortionBudget, SourceModel};
use crate::{Error, Result};

use super::Variant;

pub const MAGIC: [u8; 4] = *b"CLP1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 33;
/// Denominator value marking an unknown source parameter.
pub const UNKNOWN_P: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Header {
    pub n: u64,
    pub distortion: DistortionBudget,
    /// `None` when the encoder estimated `p` on the fly.
    pub source: Option<SourceModel>,
    pub ell: u16,
    pub variant: Variant,
    pub relation: MatchRelation,
}

impl Header {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5..13].copy_from_slice(&self.n.to_be_bytes());
        out[13..17].copy_from_slice(&self.distortion.num().to_be_bytes());
        out[17..21].copy_from_slice(&self.distortion.den().to_be_bytes());
        let (pn, pd) = match self.source {
            Some(src) => src.to_ratio(),
            None => (0, UNKNOWN_P),
        };
        out[21..25].copy_from_slice(&pn.to_be_bytes());
        out[25..29].copy_from_slice(&pd.to_be_bytes());
        out[29..31].copy_from_slice(&self.ell.to_be_bytes());
        out[31] = self.variant.code();
        out[32] = self.relation.code();
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 4 || bytes[0..4] != MAGIC {
            return Err(Error::BadMagic);
        }
        if bytes.len() < 5 {
            return Err(Error::CorruptStream("truncated header".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::UnsupportedVersion(bytes[4]));
        }
        if bytes.len() < HEADER_LEN {
            return Err(Error::CorruptStream("truncated header".into()));
        }
        let u32_at = |i: usize| u32::from_be_bytes(bytes[i..i + 4].try_into().unwrap());
        let n = u64::from_be_bytes(bytes[5..13].try_into().unwrap());
        let distortion = DistortionBudget::new(u32_at(13), u32_at(17))
            .map_err(|e| Error::CorruptStream(format!("header distortion: {e}")))?;
        let (pn, pd) = (u32_at(21), u32_at(25));
        let source = if pd == UNKNOWN_P {
            None
        } else {
            Some(SourceModel::from_ratio(pn, pd).map_err(|e| Error::CorruptStream(format!("header p: {e}")))?)
        };
        let ell = u16::from_be_bytes([bytes[29], bytes[30]]);
        let variant = Variant::from_code(bytes[31])
            .ok_or_else(|| Error::CorruptStream(format!("unknown variant {}", bytes[31])))?;
        let relation = MatchRelation::from_code(bytes[32])
            .ok_or_else(|| Error::CorruptStream(format!("unknown relation {}", bytes[32])))?;
        Ok(Self {
            n,
            distortion,
            source,
            ell,
            variant,
            relation,
        })
    }
}
