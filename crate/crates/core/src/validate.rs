//! Block validators for UTF-8 and UTF-16LE.
//!
//! UTF-8 is checked 64 bytes at a time by classifying each pair of adjacent
//! bytes with three nibble-indexed lookups (high and low nibble of the
//! previous byte, high nibble of the current byte). Each lookup yields a set
//! of error classes; a pair is bad when all three agree on some class. The
//! continuation requirements of three- and four-byte sequences are checked
//! separately from the bytes two and three positions back.

use crate::codec::{decode_utf16_char, Malformed};
use crate::simd::{Backend, Engine, Vec128};

// Error classes, one bit each. A byte pair is flagged when the class is set
// in all three lookups.
const TOO_SHORT: u8 = 1 << 0; // lead followed by a non-continuation
const TOO_LONG: u8 = 1 << 1; // ASCII followed by a continuation
const OVERLONG_3: u8 = 1 << 2; // E0 80..9F
const TOO_LARGE: u8 = 1 << 3; // F4 90..BF, F5..FF with continuation
const SURROGATE: u8 = 1 << 4; // ED A0..BF
const OVERLONG_2: u8 = 1 << 5; // C0..C1 with continuation
const TOO_LARGE_1000: u8 = 1 << 6; // F5..FF 80..8F
const OVERLONG_4: u8 = 1 << 6; // F0 80..8F
const TWO_CONTS: u8 = 1 << 7; // continuation after continuation
const CARRY: u8 = TOO_SHORT | TOO_LONG | TWO_CONTS;

const BYTE_1_HIGH: [u8; 16] = [
    // 0xxx: ASCII
    TOO_LONG,
    TOO_LONG,
    TOO_LONG,
    TOO_LONG,
    TOO_LONG,
    TOO_LONG,
    TOO_LONG,
    TOO_LONG,
    // 10xx: continuation
    TWO_CONTS,
    TWO_CONTS,
    TWO_CONTS,
    TWO_CONTS,
    // 1100
    TOO_SHORT | OVERLONG_2,
    // 1101
    TOO_SHORT,
    // 1110
    TOO_SHORT | OVERLONG_3 | SURROGATE,
    // 1111
    TOO_SHORT | TOO_LARGE | TOO_LARGE_1000 | OVERLONG_4,
];

const BYTE_1_LOW: [u8; 16] = [
    CARRY | OVERLONG_3 | OVERLONG_2 | OVERLONG_4, // ____0000
    CARRY | OVERLONG_2,                           // ____0001
    CARRY,
    CARRY,
    CARRY | TOO_LARGE,                  // ____0100
    CARRY | TOO_LARGE | TOO_LARGE_1000, // ____0101
    CARRY | TOO_LARGE | TOO_LARGE_1000,
    CARRY | TOO_LARGE | TOO_LARGE_1000,
    CARRY | TOO_LARGE | TOO_LARGE_1000, // ____1xxx
    CARRY | TOO_LARGE | TOO_LARGE_1000,
    CARRY | TOO_LARGE | TOO_LARGE_1000,
    CARRY | TOO_LARGE | TOO_LARGE_1000,
    CARRY | TOO_LARGE | TOO_LARGE_1000,
    CARRY | TOO_LARGE | TOO_LARGE_1000 | SURROGATE, // ____1101
    CARRY | TOO_LARGE | TOO_LARGE_1000,
    CARRY | TOO_LARGE | TOO_LARGE_1000,
];

const BYTE_2_HIGH: [u8; 16] = [
    // 0xxx: ASCII
    TOO_SHORT,
    TOO_SHORT,
    TOO_SHORT,
    TOO_SHORT,
    TOO_SHORT,
    TOO_SHORT,
    TOO_SHORT,
    TOO_SHORT,
    // 1000
    TOO_LONG | OVERLONG_2 | TWO_CONTS | OVERLONG_3 | TOO_LARGE_1000 | OVERLONG_4,
    // 1001
    TOO_LONG | OVERLONG_2 | TWO_CONTS | OVERLONG_3 | TOO_LARGE,
    // 101x
    TOO_LONG | OVERLONG_2 | TWO_CONTS | SURROGATE | TOO_LARGE,
    TOO_LONG | OVERLONG_2 | TWO_CONTS | SURROGATE | TOO_LARGE,
    // 11xx: lead
    TOO_SHORT,
    TOO_SHORT,
    TOO_SHORT,
    TOO_SHORT,
];

/// Lane-wise maximum a trailing byte may take without opening a sequence
/// that the block does not finish.
const INCOMPLETE_MAX: [u8; 16] = [
    0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xEF, 0xDF, 0xBF,
];

/// Vector state threaded across 64-byte blocks.
pub(crate) struct Utf8Checker<E: Engine> {
    e: E,
    error: E::V,
    prev_input: E::V,
    prev_incomplete: E::V,
    byte_1_high: E::V,
    byte_1_low: E::V,
    byte_2_high: E::V,
    incomplete_max: E::V,
}

impl<E: Engine> Utf8Checker<E> {
    #[inline(always)]
    pub(crate) fn new(e: E) -> Self {
        Self::resume(e, Utf8BlockState::default())
    }

    #[inline(always)]
    fn resume(e: E, state: Utf8BlockState) -> Self {
        let mut prev = [0u8; 16];
        prev[13..].copy_from_slice(&state.lookback);
        let incomplete_max = e.from_vec(Vec128(INCOMPLETE_MAX));
        let prev_input = e.from_vec(Vec128(prev));
        Utf8Checker {
            e,
            error: e.zero(),
            prev_input,
            prev_incomplete: e.saturating_sub_u8(prev_input, incomplete_max),
            byte_1_high: e.from_vec(Vec128(BYTE_1_HIGH)),
            byte_1_low: e.from_vec(Vec128(BYTE_1_LOW)),
            byte_2_high: e.from_vec(Vec128(BYTE_2_HIGH)),
            incomplete_max,
        }
    }

    #[inline(always)]
    fn state(&self) -> Utf8BlockState {
        let prev = self.e.to_vec(self.prev_input);
        Utf8BlockState {
            lookback: [prev.0[13], prev.0[14], prev.0[15]],
            incomplete: !self.e.is_zero(self.prev_incomplete),
        }
    }

    #[inline(always)]
    fn check_vector(&mut self, input: E::V) {
        let e = self.e;
        let low_nibble = e.splat_u8(0x0F);
        let prev1 = e.prev1(input, self.prev_input);
        let high = |v| e.and(e.shr_u16::<4>(v), low_nibble);
        let special = e.and(
            e.and(
                e.shuffle_bytes(self.byte_1_high, high(prev1)),
                e.shuffle_bytes(self.byte_1_low, e.and(prev1, low_nibble)),
            ),
            e.shuffle_bytes(self.byte_2_high, high(input)),
        );
        // Positions that must hold the second or third continuation byte.
        let prev2 = e.prev2(input, self.prev_input);
        let prev3 = e.prev3(input, self.prev_input);
        let third = e.saturating_sub_u8(prev2, e.splat_u8(0xE0 - 0x80));
        let fourth = e.saturating_sub_u8(prev3, e.splat_u8(0xF0 - 0x80));
        let must_continue = e.and(e.or(third, fourth), e.splat_u8(0x80));
        self.error = e.or(self.error, e.xor(must_continue, special));
        self.prev_input = input;
    }

    /// Checks one 64-byte block in the context of the previous one.
    #[inline(always)]
    pub(crate) fn check_block(&mut self, block: &[u8]) {
        let e = self.e;
        let v = [e.load(&block[0..]), e.load(&block[16..]), e.load(&block[32..]), e.load(&block[48..])];
        let any = e.or(e.or(v[0], v[1]), e.or(v[2], v[3]));
        if e.movemask_msb(any).bits() == 0 {
            self.error = e.or(self.error, self.prev_incomplete);
            self.prev_incomplete = e.zero();
            self.prev_input = v[3];
            return;
        }
        for x in v {
            self.check_vector(x);
        }
        self.prev_incomplete = e.saturating_sub_u8(v[3], self.incomplete_max);
    }

    /// Checks a final partial block, padded with ASCII zeros.
    #[inline(always)]
    pub(crate) fn check_tail(&mut self, tail: &[u8]) {
        debug_assert!(tail.len() < 64);
        let mut block = [0u8; 64];
        block[..tail.len()].copy_from_slice(tail);
        self.check_block(&block);
    }

    /// Rejects a sequence left open at end of input.
    #[inline(always)]
    pub(crate) fn finish(&mut self) {
        self.error = self.e.or(self.error, self.prev_incomplete);
        self.prev_incomplete = self.e.zero();
    }

    #[inline(always)]
    pub(crate) fn has_error(&self) -> bool {
        !self.e.is_zero(self.error)
    }
}

/// Context carried from one 64-byte block to the next: the last three bytes
/// and whether they open a sequence the block did not finish.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Utf8BlockState {
    pub lookback: [u8; 3],
    pub incomplete: bool,
}

impl Utf8BlockState {
    /// End-of-input check: true when no sequence is left dangling.
    pub fn finalize(self) -> bool {
        !self.incomplete
    }
}

#[inline(always)]
fn block_kernel<E: Engine>(e: E, block: &[u8; 64], state: Utf8BlockState) -> (bool, Utf8BlockState) {
    let mut c = Utf8Checker::resume(e, state);
    c.check_block(block);
    (!c.has_error(), c.state())
}

#[inline(always)]
fn utf8_kernel<E: Engine>(e: E, input: &[u8]) -> bool {
    let mut c = Utf8Checker::new(e);
    let mut chunks = input.chunks_exact(64);
    for block in &mut chunks {
        c.check_block(block);
        if c.has_error() {
            return false;
        }
    }
    let rest = chunks.remainder();
    if !rest.is_empty() {
        c.check_tail(rest);
    }
    c.finish();
    !c.has_error()
}

#[inline(always)]
fn utf16_kernel<E: Engine>(e: E, units: &[u16]) -> Result<(), Malformed> {
    let hi_mask = e.splat_u16(0xF800);
    let surrogate = e.splat_u16(0xD800);
    let mut p = 0;
    while p + 8 <= units.len() {
        let v = e.load_u16(&units[p..]);
        let hits = e.cmp_eq_u16(e.and(v, hi_mask), surrogate);
        if e.movemask_msb(hits).bits() == 0 {
            p += 8;
            continue;
        }
        let end = p + 8;
        while p < end {
            p += decode_utf16_char(units, p)?.1;
        }
    }
    while p < units.len() {
        p += decode_utf16_char(units, p)?.1;
    }
    Ok(())
}

#[cfg(target_arch = "x86_64")]
mod native {
    use super::*;
    use crate::simd::Sse41;

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn block(e: Sse41, b: &[u8; 64], s: Utf8BlockState) -> (bool, Utf8BlockState) {
        block_kernel(e, b, s)
    }

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn utf8(e: Sse41, input: &[u8]) -> bool {
        utf8_kernel(e, input)
    }

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn utf16(e: Sse41, units: &[u16]) -> Result<(), Malformed> {
        utf16_kernel(e, units)
    }
}

/// Validates one 64-byte block given the state left by the previous block.
/// Returns whether the block is free of errors and the state for the next.
pub fn validate_utf8_block(block: &[u8; 64], state: Utf8BlockState) -> (bool, Utf8BlockState) {
    validate_utf8_block_with(crate::simd::active_backend(), block, state)
}

pub fn validate_utf8_block_with(
    backend: Backend,
    block: &[u8; 64],
    state: Utf8BlockState,
) -> (bool, Utf8BlockState) {
    dispatch!(backend, block, block_kernel, block, state)
}

/// True when `input` is well-formed UTF-8.
pub fn validate_utf8(input: &[u8]) -> bool {
    validate_utf8_with(crate::simd::active_backend(), input)
}

pub fn validate_utf8_with(backend: Backend, input: &[u8]) -> bool {
    dispatch!(backend, utf8, utf8_kernel, input)
}

/// Checks surrogate pairing, reporting the first offending unit.
pub fn validate_utf16(units: &[u16]) -> Result<(), Malformed> {
    validate_utf16_with(crate::simd::active_backend(), units)
}

pub fn validate_utf16_with(backend: Backend, units: &[u16]) -> Result<(), Malformed> {
    dispatch!(backend, utf16, utf16_kernel, units)
}
