//! UTF-8 to UTF-16LE transcoding.
//!
//! Input is read in 64-byte blocks. A block with no byte above 0x7F is
//! widened directly. Otherwise a 64-bit end-of-character bitset is computed
//! once for the block, and 12-byte windows are converted one after the other
//! using the main table, after checking three fast patterns (16 ASCII bytes,
//! eight two-byte characters, four three-byte characters). Whatever is left
//! at the end goes through the scalar codec.
//!
//! The validating variant runs the block validator ahead of the transcoding
//! cursor. On the first failure it hands the rest of the input to the scalar
//! codec, which reports the exact error position.

use crate::codec::{self, decode_utf8_char, encode_utf16, TranscodeResult};
use crate::simd::{Backend, Engine};
use crate::tables::{self, KernelCase, Utf8Tables};
use crate::validate::Utf8Checker;

/// Bytes per outer block.
pub const BLOCK: usize = 64;
/// The inner loop stops this many bytes before the end of the block.
const MARGIN: usize = 12;

/// How often each code path ran.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct PathCounters {
    /// 64-byte all-ASCII blocks and the bytes they covered.
    pub ascii_blocks: u64,
    pub ascii_block_bytes: u64,
    /// Iterations of the inner window loop, by path taken.
    pub ascii16: u64,
    pub two_byte16: u64,
    pub three_byte12: u64,
    pub six_short: u64,
    pub four_bmp: u64,
    pub two_any: u64,
    pub fallback: u64,
    /// Bytes handled by the scalar codec at the end (or after a validation failure).
    pub scalar_bytes: u64,
}

impl PathCounters {
    pub fn inner_iterations(&self) -> u64 {
        self.ascii16
            + self.two_byte16
            + self.three_byte12
            + self.six_short
            + self.four_bmp
            + self.two_any
            + self.fallback
    }
}

/// Instrumentation hook; `()` compiles to nothing.
pub(crate) trait Probe {
    #[inline(always)]
    fn ascii_block(&mut self) {}
    #[inline(always)]
    fn window(&mut self, _path: Path) {}
    #[inline(always)]
    fn scalar(&mut self, _bytes: usize) {}
}

#[derive(Clone, Copy)]
pub(crate) enum Path {
    Ascii16,
    TwoByte16,
    ThreeByte12,
    Case(KernelCase),
}

impl Probe for () {}

impl Probe for PathCounters {
    #[inline(always)]
    fn ascii_block(&mut self) {
        self.ascii_blocks += 1;
        self.ascii_block_bytes += BLOCK as u64;
    }

    #[inline(always)]
    fn window(&mut self, path: Path) {
        match path {
            Path::Ascii16 => self.ascii16 += 1,
            Path::TwoByte16 => self.two_byte16 += 1,
            Path::ThreeByte12 => self.three_byte12 += 1,
            Path::Case(KernelCase::SixShort) => self.six_short += 1,
            Path::Case(KernelCase::FourBmp) => self.four_bmp += 1,
            Path::Case(KernelCase::TwoAny) => self.two_any += 1,
            Path::Case(KernelCase::Fallback) => self.fallback += 1,
        }
    }

    #[inline(always)]
    fn scalar(&mut self, bytes: usize) {
        self.scalar_bytes += bytes as u64;
    }
}

/// Output of [`process_block12`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block12 {
    pub case: KernelCase,
    pub consumed: usize,
    pub written: usize,
    pub units: [u16; 8],
}

/// Loads 16 bytes at `at`, zero-padding past the end of `input`.
#[inline(always)]
fn load_window<E: Engine>(e: E, input: &[u8], at: usize) -> E::V {
    if at + 16 <= input.len() {
        e.load(&input[at..])
    } else {
        let mut buf = [0u8; 16];
        let rest = &input[at..];
        buf[..rest.len()].copy_from_slice(rest);
        e.load(&buf)
    }
}

/// Converts the characters a table entry selects from `window`, storing
/// them at the start of `out` (which must have room for eight units).
/// Returns (consumed bytes, units written); (0, 0) for fallback entries.
#[inline(always)]
fn convert_window<E: Engine>(e: E, t: &Utf8Tables, window: E::V, z12: u16, out: &mut [u16]) -> (usize, usize, KernelCase) {
    let entry = t.entry(z12);
    let case = t.case_of(entry.mask_index);
    if case == KernelCase::Fallback {
        return (0, 0, case);
    }
    let mask = e.load(&t.masks[entry.mask_index as usize]);
    let perm = e.shuffle_bytes(window, mask);
    let consumed = entry.consumed as usize;
    match case {
        KernelCase::SixShort => {
            // u16 lanes hold (last byte, lead byte). Keep 7 bits of the low
            // byte, move the lead's 5 bits down next to them.
            let ascii = e.and(perm, e.splat_u16(0x007F));
            let lead = e.shr_u16::<2>(e.and(perm, e.splat_u16(0x1F00)));
            e.store_u16(e.or(ascii, lead), out);
            (consumed, 6, case)
        }
        KernelCase::FourBmp => {
            let utf16 = four_bmp(e, perm);
            e.store_u16(e.pack_u32_low16(utf16, e.zero()), out);
            (consumed, 4, case)
        }
        KernelCase::TwoAny => {
            let ascii = e.and(perm, e.splat_u32(0x7F));
            let second = e.shr_u32::<2>(e.and(perm, e.splat_u32(0x3F00)));
            // The third lane byte is a continuation (6 data bits) for a
            // 4-byte character and a lead 1110xxxx for a 3-byte one. Bit 6
            // tells them apart; use it to clear the lead's extra bit 5.
            let third = e.and(perm, e.splat_u32(0x3F_0000));
            let lead3 = e.shr_u32::<1>(e.and(perm, e.splat_u32(0x40_0000)));
            let third = e.shr_u32::<4>(e.xor(third, lead3));
            let fourth = e.shr_u32::<6>(e.and(perm, e.splat_u32(0x0700_0000)));
            let cp = e.or(e.or(ascii, second), e.or(third, fourth));
            let shifted = e.sub_u32(cp, e.splat_u32(0x10000));
            let low = e.shl_u32::<16>(e.or(e.and(shifted, e.splat_u32(0x3FF)), e.splat_u32(0xDC00)));
            let high = e.or(e.shr_u32::<10>(shifted), e.splat_u32(0xD800));
            let pairs = e.or(low, e.and(high, e.splat_u32(0xFFFF)));
            let cp = e.to_vec(cp).u32_lanes();
            let pairs = e.to_vec(pairs).u32_lanes();
            let mut q = 0;
            for k in 0..2 {
                if cp[k] >= 0x10000 {
                    out[q] = pairs[k] as u16;
                    out[q + 1] = (pairs[k] >> 16) as u16;
                    q += 2;
                } else {
                    out[q] = cp[k] as u16;
                    q += 1;
                }
            }
            (consumed, q, case)
        }
        KernelCase::Fallback => unreachable!(),
    }
}

/// Four characters of up to three bytes, one per u32 lane as
/// (last, middle, lead, 0). Returns code points in the low 16 bits.
#[inline(always)]
fn four_bmp<E: Engine>(e: E, perm: E::V) -> E::V {
    let ascii = e.and(perm, e.splat_u32(0x7F));
    let middle = e.shr_u32::<2>(e.and(perm, e.splat_u32(0x3F00)));
    let lead = e.shr_u32::<4>(e.and(perm, e.splat_u32(0x0F_0000)));
    e.or(e.or(ascii, middle), lead)
}

#[inline(always)]
fn block12_kernel<E: Engine>(e: E, t: &Utf8Tables, window: &[u8], z12: u16) -> Block12 {
    let v = load_window(e, window, 0);
    let mut units = [0u16; 8];
    let (consumed, written, case) = convert_window(e, t, v, z12, &mut units);
    Block12 { case, consumed, written, units }
}

/// Runs the 12-byte window kernel once. `window` holds at least the bytes the
/// window covers; `z12` marks the last byte of each character in it.
/// Fallback entries report zero bytes consumed.
pub fn process_block12(window: &[u8], z12: u16) -> Block12 {
    process_block12_with(crate::simd::active_backend(), window, z12)
}

pub fn process_block12_with(backend: Backend, window: &[u8], z12: u16) -> Block12 {
    let t = &tables::tables().utf8;
    dispatch!(backend, block12, block12_kernel, t, window, z12)
}

/// Outcome of the inline pattern checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FastPath {
    Ascii16,
    TwoByte16,
    ThreeByte12,
}

impl FastPath {
    /// (bytes consumed, units written).
    pub fn sizes(self) -> (usize, usize) {
        match self {
            FastPath::Ascii16 => (16, 16),
            FastPath::TwoByte16 => (16, 8),
            FastPath::ThreeByte12 => (12, 4),
        }
    }
}

/// Matches the low bits of an end-of-character bitset against the fast
/// patterns, in order. `bits_known` is how many low bits of `z` are valid.
pub fn try_fast_paths(z: u64, bits_known: usize) -> Option<FastPath> {
    if bits_known >= 16 && z & 0xFFFF == 0xFFFF {
        Some(FastPath::Ascii16)
    } else if bits_known >= 16 && z & 0xFFFF == 0xAAAA {
        Some(FastPath::TwoByte16)
    } else if bits_known >= 12 && z & 0xFFF == 0x924 {
        Some(FastPath::ThreeByte12)
    } else {
        None
    }
}

#[inline(always)]
fn widen16<E: Engine>(e: E, v: E::V, out: &mut [u16]) {
    let out = &mut out[..16];
    e.store_u16(e.widen_low_u8_to_u16(v), &mut out[0..8]);
    e.store_u16(e.widen_high_u8_to_u16(v), &mut out[8..16]);
}

/// Eight two-byte characters in 16 bytes.
#[inline(always)]
fn two_byte16<E: Engine>(e: E, v: E::V, out: &mut [u16]) {
    let lead = e.shl_u16::<6>(e.and(v, e.splat_u16(0x001F)));
    let trail = e.and(e.shr_u16::<8>(v), e.splat_u16(0x003F));
    e.store_u16(e.or(lead, trail), out);
}

#[inline(always)]
fn load_block<E: Engine>(e: E, block: &[u8]) -> [E::V; 4] {
    [e.load(&block[0..16]), e.load(&block[16..32]), e.load(&block[32..48]), e.load(&block[48..64])]
}

#[inline(always)]
fn is_ascii_block<E: Engine>(e: E, v: &[E::V; 4]) -> bool {
    e.movemask_msb(e.or(e.or(v[0], v[1]), e.or(v[2], v[3]))).bits() == 0
}

#[inline(always)]
fn widen_block<E: Engine>(e: E, v: &[E::V; 4], out: &mut [u16]) {
    let out = &mut out[..BLOCK];
    for (k, &x) in v.iter().enumerate() {
        widen16(e, x, &mut out[16 * k..16 * k + 16]);
    }
}

struct Ahead<E: Engine> {
    checker: Utf8Checker<E>,
    upto: usize,
    done: bool,
}

impl<E: Engine> Ahead<E> {
    /// Validates input up to at least `need` (clamped to the input); false on error.
    #[inline(always)]
    fn ensure(&mut self, input: &[u8], need: usize) -> bool {
        while self.upto < need && !self.done {
            if self.upto + BLOCK <= input.len() {
                self.checker.check_block(&input[self.upto..self.upto + BLOCK]);
                self.upto += BLOCK;
            } else {
                self.checker.check_tail(&input[self.upto..]);
                self.upto = input.len();
            }
            if self.upto == input.len() {
                self.checker.finish();
                self.done = true;
            }
            if self.checker.has_error() {
                return false;
            }
        }
        true
    }
}

#[inline(always)]
fn convert_kernel<E: Engine, P: Probe>(
    e: E,
    t: &Utf8Tables,
    input: &[u8],
    out: &mut [u16],
    validate: bool,
    probe: &mut P,
) -> TranscodeResult {
    assert!(out.len() >= input.len(), "output needs one unit per input byte");
    let len = input.len();
    let three_byte_mask = e.load(&t.masks[tables::three_byte_run_mask(t)]);
    let mut ahead = Ahead { checker: Utf8Checker::new(e), upto: 0, done: false };
    let mut p = 0;
    let mut q = 0;

    'blocks: while p + BLOCK < len {
        if validate && !ahead.ensure(input, p + BLOCK + 1) {
            break;
        }
        let v = load_block(e, &input[p..p + BLOCK]);
        if is_ascii_block(e, &v) {
            widen_block(e, &v, &mut out[q..q + BLOCK]);
            p += BLOCK;
            q += BLOCK;
            probe.ascii_block();
            continue;
        }
        let mut starts = 0u64;
        for (k, x) in v.into_iter().enumerate() {
            starts |= (e.movemask_msb(e.cmp_gt_signed(x, -65)).bits() as u64) << (16 * k);
        }
        // Bit i set: byte i is the last byte of its character. Byte 64 is
        // in bounds because the loop requires p + 64 < len.
        let next_starts = (input[p + BLOCK] as i8 > -65) as u64;
        let z = (starts >> 1) | (next_starts << 63);

        let mut off = 0;
        while off < BLOCK - MARGIN {
            let bits = z >> off;
            let at = p + off;
            match try_fast_paths(bits, BLOCK - off) {
                Some(FastPath::Ascii16) => {
                    widen16(e, e.load(&input[at..]), &mut out[q..]);
                    off += 16;
                    q += 16;
                    probe.window(Path::Ascii16);
                    continue;
                }
                Some(FastPath::TwoByte16) => {
                    two_byte16(e, e.load(&input[at..]), &mut out[q..]);
                    off += 16;
                    q += 8;
                    probe.window(Path::TwoByte16);
                    continue;
                }
                Some(FastPath::ThreeByte12) => {
                    let perm = e.shuffle_bytes(load_window(e, input, at), three_byte_mask);
                    e.store_u16(e.pack_u32_low16(four_bmp(e, perm), e.zero()), &mut out[q..]);
                    off += 12;
                    q += 4;
                    probe.window(Path::ThreeByte12);
                    continue;
                }
                None => {}
            }
            let window = load_window(e, input, at);
            let (consumed, written, case) = convert_window(e, t, window, (bits & 0xFFF) as u16, &mut out[q..]);
            probe.window(Path::Case(case));
            if consumed == 0 {
                match decode_utf8_char(input, at) {
                    Ok((c, n)) => {
                        let u = encode_utf16(c);
                        out[q..q + u.len()].copy_from_slice(&u);
                        q += u.len();
                        off += n;
                    }
                    Err(_) => {
                        p = at;
                        break 'blocks;
                    }
                }
            } else {
                off += consumed;
                q += written;
            }
        }
        p += off;
    }

    probe.scalar(len - p);
    codec::scalar_utf8_to_utf16(&input[p..], &mut out[q..]).shifted(p, q)
}

#[cfg(target_arch = "x86_64")]
mod native {
    use super::*;
    use crate::simd::Sse41;

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn block12(e: Sse41, t: &Utf8Tables, w: &[u8], z: u16) -> Block12 {
        block12_kernel(e, t, w, z)
    }

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn convert(
        e: Sse41,
        t: &Utf8Tables,
        input: &[u8],
        out: &mut [u16],
        validate: bool,
        probe: &mut (),
    ) -> TranscodeResult {
        convert_kernel(e, t, input, out, validate, probe)
    }

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn convert_counted(
        e: Sse41,
        t: &Utf8Tables,
        input: &[u8],
        out: &mut [u16],
        validate: bool,
        probe: &mut PathCounters,
    ) -> TranscodeResult {
        convert_kernel(e, t, input, out, validate, probe)
    }
}

/// Transcodes `input` into `out`, which must hold at least `input.len()`
/// units.
///
/// With `validate`, errors are reported exactly as by
/// [`codec::scalar_utf8_to_utf16`]. Without it, invalid input yields
/// unspecified (but memory-safe) output.
pub fn convert(input: &[u8], out: &mut [u16], validate: bool) -> TranscodeResult {
    convert_with(crate::simd::active_backend(), input, out, validate)
}

pub fn convert_with(backend: Backend, input: &[u8], out: &mut [u16], validate: bool) -> TranscodeResult {
    convert_with_tables(backend, &tables::tables().utf8, input, out, validate)
}

/// Like [`convert_with`] but with caller-supplied tables.
pub fn convert_with_tables(
    backend: Backend,
    t: &Utf8Tables,
    input: &[u8],
    out: &mut [u16],
    validate: bool,
) -> TranscodeResult {
    dispatch!(backend, convert, convert_kernel, t, input, out, validate, &mut ())
}

/// Like [`convert_with`], also counting which code paths ran.
pub fn convert_counted(
    backend: Backend,
    input: &[u8],
    out: &mut [u16],
    validate: bool,
) -> (TranscodeResult, PathCounters) {
    let t = &tables::tables().utf8;
    let mut counters = PathCounters::default();
    let r = dispatch!(backend, convert_counted, convert_kernel, t, input, out, validate, &mut counters);
    (r, counters)
}

/// Allocating form of [`convert`].
pub fn convert_to_vec(input: &[u8], validate: bool) -> (Vec<u16>, TranscodeResult) {
    let mut out = vec![0u16; input.len()];
    let r = convert(input, &mut out, validate);
    out.truncate(r.written);
    (out, r)
}
