//! File-level encodings: UTF-8 and UTF-16 in either byte order, with byte
//! order marks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::TranscodeResult;
use crate::{utf16_to_utf8, utf8_to_utf16};

pub const UTF8_BOM: [u8; 3] = [0xEF, 0xBB, 0xBF];
pub const UTF16LE_BOM: [u8; 2] = [0xFF, 0xFE];
pub const UTF16BE_BOM: [u8; 2] = [0xFE, 0xFF];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Utf8,
    Utf16le,
    Utf16be,
}

impl Encoding {
    pub fn name(self) -> &'static str {
        match self {
            Encoding::Utf8 => "utf8",
            Encoding::Utf16le => "utf16le",
            Encoding::Utf16be => "utf16be",
        }
    }

    pub fn bom(self) -> &'static [u8] {
        match self {
            Encoding::Utf8 => &UTF8_BOM,
            Encoding::Utf16le => &UTF16LE_BOM,
            Encoding::Utf16be => &UTF16BE_BOM,
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Encoding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "").as_str() {
            "utf8" => Ok(Encoding::Utf8),
            "utf16le" | "utf16" => Ok(Encoding::Utf16le),
            "utf16be" => Ok(Encoding::Utf16be),
            _ => Err(format!("unknown encoding {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BomPolicy {
    /// Write a BOM only if the input had one.
    #[default]
    Keep,
    /// Never write a BOM.
    Strip,
    /// Always write a BOM for the output encoding.
    Add,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("invalid {encoding} at {unit} offset {offset}")]
    Malformed { encoding: Encoding, unit: &'static str, offset: usize },
    #[error("byte order mark says {found} but input was declared {declared}")]
    ConflictingBom { declared: Encoding, found: Encoding },
    #[error("odd number of bytes ({0}) in UTF-16 input")]
    OddLength(usize),
}

/// Input text in memory, with the BOM removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Text {
    Utf8(Vec<u8>),
    Utf16(Vec<u16>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub text: Text,
    pub had_bom: bool,
    pub warnings: Vec<String>,
}

/// Splits off the BOM and converts UTF-16 to native little-endian units.
/// Contents are not validated here.
pub fn read_text(bytes: &[u8], declared: Encoding) -> Result<Decoded, DecodeError> {
    let mut warnings = Vec::new();
    match declared {
        Encoding::Utf8 => {
            let had_bom = bytes.starts_with(&UTF8_BOM);
            if had_bom {
                warnings.push("stripped UTF-8 byte order mark".to_string());
            }
            let body = if had_bom { &bytes[3..] } else { bytes };
            Ok(Decoded { text: Text::Utf8(body.to_vec()), had_bom, warnings })
        }
        Encoding::Utf16le | Encoding::Utf16be => {
            let found = if bytes.starts_with(&UTF16LE_BOM) {
                Some(Encoding::Utf16le)
            } else if bytes.starts_with(&UTF16BE_BOM) {
                Some(Encoding::Utf16be)
            } else {
                None
            };
            if let Some(found) = found {
                if found != declared {
                    return Err(DecodeError::ConflictingBom { declared, found });
                }
            }
            let body = if found.is_some() { &bytes[2..] } else { bytes };
            if body.len() % 2 != 0 {
                return Err(DecodeError::OddLength(bytes.len()));
            }
            let from = if declared == Encoding::Utf16le { u16::from_le_bytes } else { u16::from_be_bytes };
            let units = body.chunks_exact(2).map(|c| from([c[0], c[1]])).collect();
            Ok(Decoded { text: Text::Utf16(units), had_bom: found.is_some(), warnings })
        }
    }
}

/// Serializes UTF-16 units in the requested byte order.
pub fn utf16_bytes(units: &[u16], order: Encoding) -> Vec<u8> {
    let to = if order == Encoding::Utf16be { u16::to_be_bytes } else { u16::to_le_bytes };
    units.iter().flat_map(|&u| to(u)).collect()
}

fn malformed(encoding: Encoding, r: TranscodeResult) -> DecodeError {
    let unit = if encoding == Encoding::Utf8 { "byte" } else { "unit" };
    DecodeError::Malformed { encoding, unit, offset: r.error_at.unwrap_or(r.consumed) }
}

/// Converts whole-file contents from one encoding to another through the
/// vector transcoders. Input is validated; the error offset counts from the
/// start of the body after any BOM.
pub fn transcode_bytes(input: &[u8], from: Encoding, to: Encoding, bom: BomPolicy) -> Result<(Vec<u8>, Vec<String>), DecodeError> {
    let decoded = read_text(input, from)?;
    let write_bom = match bom {
        BomPolicy::Keep => decoded.had_bom,
        BomPolicy::Strip => false,
        BomPolicy::Add => true,
    };
    let mut out = if write_bom { to.bom().to_vec() } else { Vec::new() };
    match (decoded.text, to) {
        (Text::Utf8(bytes), Encoding::Utf8) => {
            let r = utf8_to_utf16::convert_to_vec(&bytes, true).1;
            if !r.is_ok() {
                return Err(malformed(from, r));
            }
            out.extend_from_slice(&bytes);
        }
        (Text::Utf8(bytes), order) => {
            let (units, r) = utf8_to_utf16::convert_to_vec(&bytes, true);
            if !r.is_ok() {
                return Err(malformed(from, r));
            }
            out.extend(utf16_bytes(&units, order));
        }
        (Text::Utf16(units), Encoding::Utf8) => {
            let (bytes, r) = utf16_to_utf8::convert_to_vec(&units);
            if !r.is_ok() {
                return Err(malformed(from, r));
            }
            out.extend(bytes);
        }
        (Text::Utf16(units), order) => {
            if let Err(e) = crate::validate::validate_utf16(&units) {
                return Err(DecodeError::Malformed { encoding: from, unit: "unit", offset: e.at });
            }
            out.extend(utf16_bytes(&units, order));
        }
    }
    Ok((out, decoded.warnings))
}
