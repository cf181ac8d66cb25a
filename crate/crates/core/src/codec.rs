//! Scalar reference codec for UTF-8 and UTF-16LE.
//!
//! This is the normative implementation: the vector kernels delegate to it
//! for tails and awkward registers, and every differential test compares
//! against it.

use std::fmt;

/// A Unicode scalar value: `0..=0x10FFFF` minus the surrogate range.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodePoint(u32);

impl CodePoint {
    pub const MAX: u32 = 0x10FFFF;

    pub fn new(value: u32) -> Option<CodePoint> {
        if value > Self::MAX || (0xD800..=0xDFFF).contains(&value) {
            None
        } else {
            Some(CodePoint(value))
        }
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// Length of the shortest UTF-8 encoding.
    pub fn utf8_len(self) -> usize {
        match self.0 {
            0..=0x7F => 1,
            0x80..=0x7FF => 2,
            0x800..=0xFFFF => 3,
            _ => 4,
        }
    }

    pub fn utf16_len(self) -> usize {
        if self.0 >= 0x10000 {
            2
        } else {
            1
        }
    }

    /// Every scalar value in ascending order.
    pub fn all() -> impl Iterator<Item = CodePoint> {
        (0..=Self::MAX).filter_map(CodePoint::new)
    }
}

impl From<char> for CodePoint {
    fn from(c: char) -> Self {
        CodePoint(c as u32)
    }
}

impl From<CodePoint> for char {
    fn from(c: CodePoint) -> Self {
        // Construction guarantees a scalar value.
        char::from_u32(c.0).unwrap()
    }
}

impl fmt::Debug for CodePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U+{:04X}", self.0)
    }
}

/// The input at `at` does not start a well-formed character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed input at index {at}")]
pub struct Malformed {
    pub at: usize,
}

/// Outcome of a transcoding call.
///
/// When `error_at` is `None` the whole input was consumed. Otherwise
/// `output[..written]` is the transcoding of `input[..consumed]` and
/// `error_at == Some(consumed)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TranscodeResult {
    pub consumed: usize,
    pub written: usize,
    pub error_at: Option<usize>,
}

impl TranscodeResult {
    pub fn ok(consumed: usize, written: usize) -> Self {
        TranscodeResult { consumed, written, error_at: None }
    }

    pub fn error(at: usize, written: usize) -> Self {
        TranscodeResult { consumed: at, written, error_at: Some(at) }
    }

    pub fn is_ok(&self) -> bool {
        self.error_at.is_none()
    }

    /// Offsets a result computed on a suffix starting at `input_base`/`output_base`.
    pub(crate) fn shifted(self, input_base: usize, output_base: usize) -> Self {
        TranscodeResult {
            consumed: self.consumed + input_base,
            written: self.written + output_base,
            error_at: self.error_at.map(|e| e + input_base),
        }
    }
}

/// A character encoded as UTF-8.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Utf8Char {
    buf: [u8; 4],
    len: u8,
}

impl std::ops::Deref for Utf8Char {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.buf[..self.len as usize]
    }
}

impl fmt::Debug for Utf8Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&**self, f)
    }
}

/// A character encoded as one or two UTF-16 units.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Utf16Char {
    buf: [u16; 2],
    len: u8,
}

impl std::ops::Deref for Utf16Char {
    type Target = [u16];
    fn deref(&self) -> &[u16] {
        &self.buf[..self.len as usize]
    }
}

impl fmt::Debug for Utf16Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&**self, f)
    }
}

#[inline]
fn is_continuation(b: u8) -> bool {
    b & 0xC0 == 0x80
}

/// Decodes the character starting at `pos`, returning it and its length.
///
/// Rejects forbidden bytes, missing or unexpected continuation bytes,
/// overlong forms, values above U+10FFFF and surrogates. A sequence cut short
/// by the end of input is reported at its leading byte.
#[inline]
pub fn decode_utf8_char(bytes: &[u8], pos: usize) -> Result<(CodePoint, usize), Malformed> {
    let err = Malformed { at: pos };
    let lead = *bytes.get(pos).ok_or(err)?;
    let (len, init, min) = match lead {
        0x00..=0x7F => return Ok((CodePoint(lead as u32), 1)),
        0xC0..=0xDF => (2, (lead & 0x1F) as u32, 0x80),
        0xE0..=0xEF => (3, (lead & 0x0F) as u32, 0x800),
        0xF0..=0xF7 => (4, (lead & 0x07) as u32, 0x10000),
        // Stray continuation byte, or five leading one bits.
        _ => return Err(err),
    };
    let tail = bytes.get(pos + 1..pos + len).ok_or(err)?;
    let mut value = init;
    for &b in tail {
        if !is_continuation(b) {
            return Err(err);
        }
        value = (value << 6) | (b & 0x3F) as u32;
    }
    if value < min || value > CodePoint::MAX || (0xD800..=0xDFFF).contains(&value) {
        return Err(err);
    }
    Ok((CodePoint(value), len))
}

/// Shortest-form UTF-8 encoding.
#[inline]
pub fn encode_utf8(c: CodePoint) -> Utf8Char {
    let v = c.0;
    let (buf, len) = match v {
        0..=0x7F => ([v as u8, 0, 0, 0], 1),
        0x80..=0x7FF => ([0xC0 | (v >> 6) as u8, 0x80 | (v & 0x3F) as u8, 0, 0], 2),
        0x800..=0xFFFF => (
            [
                0xE0 | (v >> 12) as u8,
                0x80 | ((v >> 6) & 0x3F) as u8,
                0x80 | (v & 0x3F) as u8,
                0,
            ],
            3,
        ),
        _ => (
            [
                0xF0 | (v >> 18) as u8,
                0x80 | ((v >> 12) & 0x3F) as u8,
                0x80 | ((v >> 6) & 0x3F) as u8,
                0x80 | (v & 0x3F) as u8,
            ],
            4,
        ),
    };
    Utf8Char { buf, len }
}

#[inline]
pub fn encode_utf16(c: CodePoint) -> Utf16Char {
    let v = c.0;
    if v < 0x10000 {
        Utf16Char { buf: [v as u16, 0], len: 1 }
    } else {
        let s = v - 0x10000;
        Utf16Char { buf: [0xD800 | (s >> 10) as u16, 0xDC00 | (s & 0x3FF) as u16], len: 2 }
    }
}

#[inline]
pub fn decode_utf16_char(units: &[u16], pos: usize) -> Result<(CodePoint, usize), Malformed> {
    let err = Malformed { at: pos };
    let first = *units.get(pos).ok_or(err)?;
    match first {
        0xD800..=0xDBFF => match units.get(pos + 1) {
            Some(&second @ 0xDC00..=0xDFFF) => {
                let v = 0x10000 + ((((first & 0x3FF) as u32) << 10) | (second & 0x3FF) as u32);
                Ok((CodePoint(v), 2))
            }
            _ => Err(err),
        },
        0xDC00..=0xDFFF => Err(err),
        _ => Ok((CodePoint(first as u32), 1)),
    }
}

/// Validating UTF-8 to UTF-16 transcoding, stopping at the first error.
///
/// `output` must hold at least `input.len()` units.
pub fn scalar_utf8_to_utf16(input: &[u8], output: &mut [u16]) -> TranscodeResult {
    assert!(output.len() >= input.len(), "output needs one unit per input byte");
    let mut p = 0;
    let mut q = 0;
    while p < input.len() {
        let b = input[p];
        if b < 0x80 {
            output[q] = b as u16;
            p += 1;
            q += 1;
            continue;
        }
        match decode_utf8_char(input, p) {
            Ok((c, n)) => {
                let units = encode_utf16(c);
                output[q..q + units.len()].copy_from_slice(&units);
                q += units.len();
                p += n;
            }
            Err(_) => return TranscodeResult::error(p, q),
        }
    }
    TranscodeResult::ok(p, q)
}

/// Validating UTF-16LE to UTF-8 transcoding, stopping at the first error.
///
/// `output` must hold at least `3 * input.len()` bytes.
pub fn scalar_utf16_to_utf8(input: &[u16], output: &mut [u8]) -> TranscodeResult {
    assert!(output.len() >= 3 * input.len(), "output needs three bytes per input unit");
    let mut p = 0;
    let mut q = 0;
    while p < input.len() {
        match decode_utf16_char(input, p) {
            Ok((c, n)) => {
                let bytes = encode_utf8(c);
                output[q..q + bytes.len()].copy_from_slice(&bytes);
                q += bytes.len();
                p += n;
            }
            Err(_) => return TranscodeResult::error(p, q),
        }
    }
    TranscodeResult::ok(p, q)
}

/// Allocating form of [`scalar_utf8_to_utf16`]; the vector is truncated to
/// the units written.
pub fn scalar_utf8_to_utf16_vec(input: &[u8]) -> (Vec<u16>, TranscodeResult) {
    let mut out = vec![0u16; input.len()];
    let r = scalar_utf8_to_utf16(input, &mut out);
    out.truncate(r.written);
    (out, r)
}

pub fn scalar_utf16_to_utf8_vec(input: &[u16]) -> (Vec<u8>, TranscodeResult) {
    let mut out = vec![0u8; 3 * input.len()];
    let r = scalar_utf16_to_utf8(input, &mut out);
    out.truncate(r.written);
    (out, r)
}

/// Number of characters in valid UTF-8: the count of non-continuation bytes.
pub fn count_codepoints_utf8(input: &[u8]) -> Result<usize, Malformed> {
    let mut p = 0;
    while p < input.len() {
        p += decode_utf8_char(input, p)?.1;
    }
    Ok(input.iter().filter(|&&b| !is_continuation(b)).count())
}

/// Number of characters in valid UTF-16: units minus low surrogates.
pub fn count_codepoints_utf16(input: &[u16]) -> Result<usize, Malformed> {
    let mut p = 0;
    while p < input.len() {
        p += decode_utf16_char(input, p)?.1;
    }
    Ok(input.len() - input.iter().filter(|&&u| (0xDC00..=0xDFFF).contains(&u)).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(v: u32) -> CodePoint {
        CodePoint::new(v).unwrap()
    }

    #[test]
    fn codepoint_rejects_surrogates_and_out_of_range() {
        assert!(CodePoint::new(0xD800).is_none());
        assert!(CodePoint::new(0xDFFF).is_none());
        assert!(CodePoint::new(0x110000).is_none());
        assert!(CodePoint::new(0xD7FF).is_some());
        assert!(CodePoint::new(0xE000).is_some());
        assert_eq!(CodePoint::all().count(), 1_112_064);
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_utf8_char(&[0x41], 0), Ok((cp(0x41), 1)));
        assert_eq!(decode_utf8_char(&[0xE9, 0x8F, 0xA1], 0), Ok((cp(0x93E1), 3)));
        assert_eq!(decode_utf8_char(&[0xC0, 0x80], 0), Err(Malformed { at: 0 }));
        assert_eq!(decode_utf8_char(&[0xED, 0xA0, 0x80], 0), Err(Malformed { at: 0 }));
    }

    #[test]
    fn decode_rejects_each_rule() {
        // forbidden high bytes
        for b in 0xF8..=0xFF {
            assert!(decode_utf8_char(&[b, 0x80, 0x80, 0x80], 0).is_err());
        }
        // missing continuation, stray continuation
        assert!(decode_utf8_char(&[0xC3, 0x41], 0).is_err());
        assert!(decode_utf8_char(&[0x80], 0).is_err());
        // overlong 3 and 4 byte forms
        assert!(decode_utf8_char(&[0xE0, 0x9F, 0xBF], 0).is_err());
        assert!(decode_utf8_char(&[0xF0, 0x8F, 0xBF, 0xBF], 0).is_err());
        // above U+10FFFF
        assert!(decode_utf8_char(&[0xF4, 0x90, 0x80, 0x80], 0).is_err());
        assert_eq!(decode_utf8_char(&[0xF4, 0x8F, 0xBF, 0xBF], 0), Ok((cp(0x10FFFF), 4)));
        // truncated at end of input
        assert_eq!(decode_utf8_char(&[0x41, 0xE9, 0x8F], 1), Err(Malformed { at: 1 }));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(&*encode_utf8(cp(0x41)), &[0x41]);
        assert_eq!(&*encode_utf8(cp(0x93E1)), &[0xE9, 0x8F, 0xA1]);
        assert_eq!(&*encode_utf8(cp(0x1F600)), &[0xF0, 0x9F, 0x98, 0x80]);
        assert_eq!(&*encode_utf16(cp(0x93E1)), &[0x93E1]);
        assert_eq!(&*encode_utf16(cp(0x10000)), &[0xD800, 0xDC00]);
        assert_eq!(&*encode_utf16(cp(0x10FFFF)), &[0xDBFF, 0xDFFF]);
    }

    #[test]
    fn decode_utf16_examples() {
        assert_eq!(decode_utf16_char(&[0x0041], 0), Ok((cp(0x41), 1)));
        assert_eq!(decode_utf16_char(&[0xD800, 0xDC00], 0), Ok((cp(0x10000), 2)));
        assert_eq!(decode_utf16_char(&[0xDC00], 0), Err(Malformed { at: 0 }));
        assert_eq!(decode_utf16_char(&[0xD800], 0), Err(Malformed { at: 0 }));
        assert_eq!(decode_utf16_char(&[0xD800, 0xD800], 0), Err(Malformed { at: 0 }));
    }

    #[test]
    fn scalar_transcode_examples() {
        let (out, r) = scalar_utf8_to_utf16_vec(b"abc");
        assert_eq!(out, [0x61, 0x62, 0x63]);
        assert_eq!(r, TranscodeResult::ok(3, 3));

        let input: Vec<u8> = [0xE9, 0x8F, 0xA1].repeat(4);
        let (out, r) = scalar_utf8_to_utf16_vec(&input);
        assert_eq!(out, [0x93E1; 4]);
        assert!(r.is_ok());

        let (out, r) = scalar_utf8_to_utf16_vec(&[0x41, 0xFF, 0x42]);
        assert_eq!(out, [0x41]);
        assert_eq!(r, TranscodeResult { consumed: 1, written: 1, error_at: Some(1) });

        let (out, r) = scalar_utf16_to_utf8_vec(&[0x0041]);
        assert_eq!(out, [0x41]);
        assert!(r.is_ok());

        let (out, _) = scalar_utf16_to_utf8_vec(&[0xD83D, 0xDE00]);
        assert_eq!(out, [0xF0, 0x9F, 0x98, 0x80]);

        let (out, r) = scalar_utf16_to_utf8_vec(&[0xD800, 0x0041]);
        assert!(out.is_empty());
        assert_eq!(r, TranscodeResult { consumed: 0, written: 0, error_at: Some(0) });
    }

    #[test]
    fn empty_input() {
        assert_eq!(scalar_utf8_to_utf16_vec(&[]).1, TranscodeResult::ok(0, 0));
        assert_eq!(scalar_utf16_to_utf8_vec(&[]).1, TranscodeResult::ok(0, 0));
        assert_eq!(count_codepoints_utf8(&[]), Ok(0));
    }

    #[test]
    fn counting() {
        assert_eq!(count_codepoints_utf8(b"abc"), Ok(3));
        assert_eq!(count_codepoints_utf16(&[0xD800, 0xDC00]), Ok(1));
        assert_eq!(count_codepoints_utf8(&[0x41, 0x80]), Err(Malformed { at: 1 }));
        assert_eq!(count_codepoints_utf16(&[0x41, 0xDC00]), Err(Malformed { at: 1 }));
    }

    #[test]
    fn every_scalar_value_round_trips() {
        let mut units = [0u16; 2];
        for c in CodePoint::all() {
            let u8s = encode_utf8(c);
            assert_eq!(u8s.len(), c.utf8_len());
            assert_eq!(decode_utf8_char(&u8s, 0), Ok((c, u8s.len())));
            let u16s = encode_utf16(c);
            assert_eq!(decode_utf16_char(&u16s, 0), Ok((c, u16s.len())));
            // agrees with the standard library
            let ch = char::from(c);
            assert_eq!(ch.encode_utf8(&mut [0; 4]).as_bytes(), &*u8s);
            assert_eq!(ch.encode_utf16(&mut units), &*u16s);
        }
    }
}
