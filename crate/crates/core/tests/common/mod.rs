#![allow(dead_code)]

use vtrans::Backend;

pub fn backends() -> Vec<Backend> {
    let mut b = vec![Backend::Emulated];
    if Backend::native_available() {
        b.push(Backend::Native);
    }
    b
}

/// Length of the well-formed UTF-8 sequence starting at `bytes[0]`, from the
/// Unicode table of well-formed byte sequences, or None.
pub fn well_formed_len(bytes: &[u8]) -> Option<usize> {
    let b = |i: usize| bytes.get(i).copied();
    let cont = |i: usize, lo: u8, hi: u8| b(i).is_some_and(|x| (lo..=hi).contains(&x));
    let lead = b(0)?;
    match lead {
        0x00..=0x7F => Some(1),
        0xC2..=0xDF => cont(1, 0x80, 0xBF).then_some(2),
        0xE0 => (cont(1, 0xA0, 0xBF) && cont(2, 0x80, 0xBF)).then_some(3),
        0xE1..=0xEC | 0xEE..=0xEF => (cont(1, 0x80, 0xBF) && cont(2, 0x80, 0xBF)).then_some(3),
        0xED => (cont(1, 0x80, 0x9F) && cont(2, 0x80, 0xBF)).then_some(3),
        0xF0 => (cont(1, 0x90, 0xBF) && cont(2, 0x80, 0xBF) && cont(3, 0x80, 0xBF)).then_some(4),
        0xF1..=0xF3 => (cont(1, 0x80, 0xBF) && cont(2, 0x80, 0xBF) && cont(3, 0x80, 0xBF)).then_some(4),
        0xF4 => (cont(1, 0x80, 0x8F) && cont(2, 0x80, 0xBF) && cont(3, 0x80, 0xBF)).then_some(4),
        _ => None,
    }
}

pub fn oracle_first_error(bytes: &[u8]) -> Option<usize> {
    let mut p = 0;
    while p < bytes.len() {
        match well_formed_len(&bytes[p..]) {
            Some(n) => p += n,
            None => return Some(p),
        }
    }
    None
}

/// UTF-16 from the oracle: std decoding up to the first error.
pub fn oracle_utf8_to_utf16(bytes: &[u8]) -> (Vec<u16>, Option<usize>) {
    let err = oracle_first_error(bytes);
    let good = &bytes[..err.unwrap_or(bytes.len())];
    let s = std::str::from_utf8(good).expect("oracle prefix is valid");
    (s.encode_utf16().collect(), err)
}

pub fn oracle_utf16_to_utf8(units: &[u16]) -> (Vec<u8>, Option<usize>) {
    let mut out = String::new();
    let mut p = 0;
    for r in char::decode_utf16(units.iter().copied()) {
        match r {
            Ok(c) => {
                out.push(c);
                p += c.len_utf16();
            }
            Err(_) => return (out.into_bytes(), Some(p)),
        }
    }
    (out.into_bytes(), None)
}
