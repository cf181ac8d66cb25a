//! UTF-16LE to UTF-8 transcoding, one register of eight units at a time.
//!
//! Each register is classified by its largest unit: all ASCII, all below
//! 0x800, no surrogates, or surrogates present. The first three cases build
//! candidate UTF-8 bytes per unit and compact them with a table shuffle; the
//! last one goes through the scalar codec, which also does the validation.

use crate::codec::{self, decode_utf16_char, encode_utf8, TranscodeResult};
use crate::simd::{Backend, Engine, Vec128};
use crate::tables::{self, Utf16Tables};

/// Units per register.
pub const REGISTER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegisterClass {
    /// Every unit is at most 0x7F.
    Ascii,
    /// Every unit is at most 0x7FF.
    TwoByteMax,
    /// No unit in 0xD800..=0xDFFF.
    Bmp,
    SurrogatePresent,
}

/// Registers handled per class, plus units left to the scalar tail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct RegisterCounters {
    pub ascii: u64,
    pub two_byte: u64,
    pub bmp: u64,
    pub surrogate: u64,
    pub tail_units: u64,
}

pub(crate) trait Probe {
    #[inline(always)]
    fn register(&mut self, _class: RegisterClass) {}
    #[inline(always)]
    fn tail(&mut self, _units: usize) {}
}

impl Probe for () {}

impl Probe for RegisterCounters {
    #[inline(always)]
    fn register(&mut self, class: RegisterClass) {
        match class {
            RegisterClass::Ascii => self.ascii += 1,
            RegisterClass::TwoByteMax => self.two_byte += 1,
            RegisterClass::Bmp => self.bmp += 1,
            RegisterClass::SurrogatePresent => self.surrogate += 1,
        }
    }

    #[inline(always)]
    fn tail(&mut self, units: usize) {
        self.tail_units += units as u64;
    }
}

#[inline(always)]
fn classify<E: Engine>(e: E, v: E::V) -> RegisterClass {
    if e.is_zero(e.and(v, e.splat_u16(0xFF80))) {
        RegisterClass::Ascii
    } else if e.is_zero(e.and(v, e.splat_u16(0xF800))) {
        RegisterClass::TwoByteMax
    } else {
        let s = e.cmp_eq_u16(e.and(v, e.splat_u16(0xF800)), e.splat_u16(0xD800));
        if e.movemask_msb(s).bits() == 0 {
            RegisterClass::Bmp
        } else {
            RegisterClass::SurrogatePresent
        }
    }
}

/// Stores the first `len` bytes of `v` at the start of `out`, writing a full
/// 16 bytes when there is room.
#[inline(always)]
fn store_prefix<E: Engine>(e: E, v: E::V, len: usize, out: &mut [u8]) {
    if out.len() >= 16 {
        e.store(v, out);
    } else {
        let mut buf = [0u8; 16];
        e.store(v, &mut buf);
        out[..len].copy_from_slice(&buf[..len]);
    }
}

#[inline(always)]
fn pack_ascii_kernel<E: Engine>(e: E, v: E::V, out: &mut [u8]) -> usize {
    store_prefix(e, e.pack_u16_low8(v, v), 8, out);
    8
}

#[inline(always)]
fn pack_two_byte_kernel<E: Engine>(e: E, t: &Utf16Tables, v: E::V, out: &mut [u8]) -> usize {
    let ascii = e.cmp_eq_u16(e.and(v, e.splat_u16(0xFF80)), e.zero());
    let ascii_bits = e.movemask_msb(ascii).per_u16_lane();
    // (lead, trail) as the low and high byte of each lane.
    let lead = e.or(e.shr_u16::<6>(v), e.splat_u16(0x00C0));
    let trail = e.shl_u16::<8>(e.or(e.and(v, e.splat_u16(0x003F)), e.splat_u16(0x0080)));
    let candidates = e.blend(ascii, e.or(lead, trail), v);
    let entry = &t.two_byte[ascii_bits as usize];
    let packed = e.shuffle_bytes(candidates, e.load(&entry.mask));
    let n = entry.len as usize;
    store_prefix(e, packed, n, out);
    n
}

const SPREAD_LOW: [u8; 16] = [0, 0, 0, 0, 2, 2, 2, 2, 4, 4, 4, 4, 6, 6, 6, 6];
const SPREAD_HIGH: [u8; 16] = [8, 8, 8, 8, 10, 10, 10, 10, 12, 12, 12, 12, 14, 14, 14, 14];

/// Candidate bytes for four units widened to u32 lanes: (lead, cont, cont, 0)
/// laid out first byte lowest.
#[inline(always)]
fn bmp_candidates<E: Engine>(e: E, u: E::V, ascii: E::V, two: E::V) -> E::V {
    let cont = |x| e.or(e.and(x, e.splat_u32(0x3F)), e.splat_u32(0x80));
    let two_bytes = e.or(e.or(e.shr_u32::<6>(u), e.splat_u32(0xC0)), e.shl_u32::<8>(cont(u)));
    let three_bytes = e.or(
        e.or(e.shr_u32::<12>(u), e.splat_u32(0xE0)),
        e.or(e.shl_u32::<8>(cont(e.shr_u32::<6>(u))), e.shl_u32::<16>(cont(u))),
    );
    e.blend(ascii, e.blend(two, three_bytes, two_bytes), u)
}

#[inline(always)]
fn pack_bmp_kernel<E: Engine>(e: E, t: &Utf16Tables, v: E::V, out: &mut [u8]) -> usize {
    let ascii = e.cmp_eq_u16(e.and(v, e.splat_u16(0xFF80)), e.zero());
    let two = e.cmp_eq_u16(e.and(v, e.splat_u16(0xF800)), e.zero());
    let not_ascii = !e.movemask_msb(ascii).bits() & 0x5555;
    let not_two = !e.movemask_msb(two).bits() & 0x5555;
    // Two bits per unit: output length - 1.
    let code = not_ascii + not_two;
    let mut q = 0;
    let halves = [
        (e.widen_low_u16_to_u32(v), SPREAD_LOW, 0),
        (e.widen_high_u16_to_u32(v), SPREAD_HIGH, 8),
    ];
    for (u, sp, shift) in halves {
        let sp = e.from_vec(Vec128(sp));
        let candidates = bmp_candidates(e, u, e.shuffle_bytes(ascii, sp), e.shuffle_bytes(two, sp));
        let entry = &t.bmp[((code >> shift) & 0xFF) as usize];
        let packed = e.shuffle_bytes(candidates, e.load(&entry.mask));
        let n = entry.len as usize;
        store_prefix(e, packed, n, &mut out[q..]);
        q += n;
    }
    q
}

/// Scalar conversion of one register holding at least one surrogate. A
/// trailing high surrogate is left for the next register.
#[inline(always)]
fn surrogate_register(input: &[u16], p: &mut usize, out: &mut [u8], q: &mut usize) -> Result<(), usize> {
    let end = *p + REGISTER;
    while *p < end {
        let u = input[*p];
        if (0xD800..=0xDBFF).contains(&u) && *p + 1 == end {
            break;
        }
        match decode_utf16_char(input, *p) {
            Ok((c, n)) => {
                let b = encode_utf8(c);
                out[*q..*q + b.len()].copy_from_slice(&b);
                *q += b.len();
                *p += n;
            }
            Err(_) => return Err(*p),
        }
    }
    Ok(())
}

#[inline(always)]
fn convert_kernel<E: Engine, P: Probe>(
    e: E,
    t: &Utf16Tables,
    input: &[u16],
    out: &mut [u8],
    probe: &mut P,
) -> TranscodeResult {
    assert!(out.len() >= 3 * input.len(), "output needs three bytes per input unit");
    let mut p = 0;
    let mut q = 0;
    while p + REGISTER <= input.len() {
        let v = e.load_u16(&input[p..]);
        let class = classify(e, v);
        probe.register(class);
        match class {
            RegisterClass::Ascii => {
                q += pack_ascii_kernel(e, v, &mut out[q..]);
                p += REGISTER;
            }
            RegisterClass::TwoByteMax => {
                q += pack_two_byte_kernel(e, t, v, &mut out[q..]);
                p += REGISTER;
            }
            RegisterClass::Bmp => {
                q += pack_bmp_kernel(e, t, v, &mut out[q..]);
                p += REGISTER;
            }
            RegisterClass::SurrogatePresent => {
                if let Err(at) = surrogate_register(input, &mut p, out, &mut q) {
                    return TranscodeResult::error(at, q);
                }
            }
        }
    }
    probe.tail(input.len() - p);
    codec::scalar_utf16_to_utf8(&input[p..], &mut out[q..]).shifted(p, q)
}

#[inline(always)]
fn classify_kernel<E: Engine>(e: E, units: &[u16; 8]) -> RegisterClass {
    classify(e, e.load_u16(units))
}

#[inline(always)]
fn pack_kernel<E: Engine>(e: E, t: &Utf16Tables, class: RegisterClass, units: &[u16; 8]) -> Vec<u8> {
    let v = e.load_u16(units);
    let mut out = [0u8; 32];
    let n = match class {
        RegisterClass::Ascii => pack_ascii_kernel(e, v, &mut out),
        RegisterClass::TwoByteMax => pack_two_byte_kernel(e, t, v, &mut out),
        RegisterClass::Bmp => pack_bmp_kernel(e, t, v, &mut out),
        RegisterClass::SurrogatePresent => panic!("surrogates have no vector packer"),
    };
    out[..n].to_vec()
}

#[cfg(target_arch = "x86_64")]
mod native {
    use super::*;
    use crate::simd::Sse41;

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn convert(e: Sse41, t: &Utf16Tables, i: &[u16], o: &mut [u8], p: &mut ()) -> TranscodeResult {
        convert_kernel(e, t, i, o, p)
    }

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn convert_counted(
        e: Sse41,
        t: &Utf16Tables,
        i: &[u16],
        o: &mut [u8],
        p: &mut RegisterCounters,
    ) -> TranscodeResult {
        convert_kernel(e, t, i, o, p)
    }

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn classify(e: Sse41, u: &[u16; 8]) -> RegisterClass {
        classify_kernel(e, u)
    }

    #[target_feature(enable = "ssse3,sse4.1")]
    pub(super) unsafe fn pack(e: Sse41, t: &Utf16Tables, c: RegisterClass, u: &[u16; 8]) -> Vec<u8> {
        pack_kernel(e, t, c, u)
    }
}

pub fn classify_register(units: &[u16; 8]) -> RegisterClass {
    classify_register_with(crate::simd::active_backend(), units)
}

pub fn classify_register_with(backend: Backend, units: &[u16; 8]) -> RegisterClass {
    dispatch!(backend, classify, classify_kernel, units)
}

fn pack_with(backend: Backend, class: RegisterClass, units: &[u16; 8]) -> Vec<u8> {
    let t = &tables::tables().utf16;
    dispatch!(backend, pack, pack_kernel, t, class, units)
}

/// Low byte of each unit. Every unit must be ASCII.
pub fn pack_ascii(backend: Backend, units: &[u16; 8]) -> Vec<u8> {
    pack_with(backend, RegisterClass::Ascii, units)
}

/// One or two bytes per unit. Every unit must be at most 0x7FF.
pub fn pack_two_byte(backend: Backend, units: &[u16; 8]) -> Vec<u8> {
    pack_with(backend, RegisterClass::TwoByteMax, units)
}

/// One to three bytes per unit. No unit may be a surrogate.
pub fn pack_bmp(backend: Backend, units: &[u16; 8]) -> Vec<u8> {
    pack_with(backend, RegisterClass::Bmp, units)
}

/// Transcodes `input` into `out`, which must hold at least `3 * input.len()`
/// bytes. Always validating; errors match [`codec::scalar_utf16_to_utf8`].
pub fn convert(input: &[u16], out: &mut [u8]) -> TranscodeResult {
    convert_with(crate::simd::active_backend(), input, out)
}

pub fn convert_with(backend: Backend, input: &[u16], out: &mut [u8]) -> TranscodeResult {
    convert_with_tables(backend, &tables::tables().utf16, input, out)
}

pub fn convert_with_tables(backend: Backend, t: &Utf16Tables, input: &[u16], out: &mut [u8]) -> TranscodeResult {
    dispatch!(backend, convert, convert_kernel, t, input, out, &mut ())
}

pub fn convert_counted(backend: Backend, input: &[u16], out: &mut [u8]) -> (TranscodeResult, RegisterCounters) {
    let t = &tables::tables().utf16;
    let mut c = RegisterCounters::default();
    let r = dispatch!(backend, convert_counted, convert_kernel, t, input, out, &mut c);
    (r, c)
}

/// Allocating form of [`convert`].
pub fn convert_to_vec(input: &[u16]) -> (Vec<u8>, TranscodeResult) {
    let mut out = vec![0u8; 3 * input.len()];
    let r = convert(input, &mut out);
    out.truncate(r.written);
    (out, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::scalar_utf16_to_utf8_vec;

    fn backends() -> Vec<Backend> {
        let mut b = vec![Backend::Emulated];
        if Backend::native_available() {
            b.push(Backend::Native);
        }
        b
    }

    fn run(be: Backend, input: &[u16]) -> (Vec<u8>, TranscodeResult) {
        let mut out = vec![0u8; 3 * input.len()];
        let r = convert_with(be, input, &mut out);
        out.truncate(r.written);
        (out, r)
    }

    #[test]
    fn classification() {
        for be in backends() {
            assert_eq!(classify_register_with(be, &[0x41; 8]), RegisterClass::Ascii);
            let mut u = [0x41u16; 8];
            u[3] = 0x0634;
            assert_eq!(classify_register_with(be, &u), RegisterClass::TwoByteMax);
            u[5] = 0x93E1;
            assert_eq!(classify_register_with(be, &u), RegisterClass::Bmp);
            u[7] = 0xD800;
            assert_eq!(classify_register_with(be, &u), RegisterClass::SurrogatePresent);
            assert_eq!(classify_register_with(be, &[0xFFFF; 8]), RegisterClass::Bmp);
        }
    }

    #[test]
    fn packers() {
        for be in backends() {
            assert_eq!(pack_ascii(be, &[0x41; 8]), b"AAAAAAAA");
            let hi: Vec<u16> = "Hi there".encode_utf16().collect();
            assert_eq!(pack_ascii(be, &hi.clone().try_into().unwrap()), b"Hi there");
            assert_eq!(pack_two_byte(be, &[0x41; 8]), b"AAAAAAAA");
            assert_eq!(pack_two_byte(be, &[0x0634; 8]), [0xD8, 0xB4].repeat(8));
            let mixed = [0x41, 0x0634, 0x42, 0xE9, 0x7FF, 0x80, 0x7F, 0x00];
            assert_eq!(pack_two_byte(be, &mixed), scalar_utf16_to_utf8_vec(&mixed).0);
            assert_eq!(pack_bmp(be, &[0x93E1; 8]), [0xE9, 0x8F, 0xA1].repeat(8));
            assert_eq!(pack_bmp(be, &[0x41; 8]), b"AAAAAAAA");
            let mixed = [0x41, 0x0634, 0x93E1, 0xFFFF, 0x800, 0x7FF, 0xE000, 0xD7FF];
            assert_eq!(pack_bmp(be, &mixed), scalar_utf16_to_utf8_vec(&mixed).0);
        }
    }

    #[test]
    fn surrogates_and_errors() {
        for be in backends() {
            let emoji = [0xD83D, 0xDE00].repeat(4);
            assert_eq!(run(be, &emoji).0, [0xF0, 0x9F, 0x98, 0x80].repeat(4));
            let (out, r) = run(be, &[0x41, 0xD800, 0x42]);
            assert_eq!(out, b"A");
            assert_eq!(r.error_at, Some(1));
            // trailing lone high surrogate
            let mut v = vec![0x41u16; 20];
            v[19] = 0xD800;
            assert_eq!(run(be, &v).1.error_at, Some(19));
        }
    }

    #[test]
    fn register_ending_in_high_surrogate() {
        for be in backends() {
            let mut v = vec![0x41u16; 24];
            v[3] = 0xD800; // ensures the first register takes the scalar path
            v[4] = 0xDC00;
            v[7] = 0xD83D;
            v[8] = 0xDE00;
            let (out, r) = run(be, &v);
            assert!(r.is_ok());
            assert_eq!((out, r), scalar_utf16_to_utf8_vec(&v));
        }
    }

    #[test]
    fn ascii_routes_through_ascii_registers() {
        let v = vec![0x61u16; 4096];
        for be in backends() {
            let mut out = vec![0u8; 3 * v.len()];
            let (r, c) = convert_counted(be, &v, &mut out);
            assert_eq!(r.written, v.len());
            assert_eq!(c.ascii, 512);
            assert_eq!(c.two_byte + c.bmp + c.surrogate, 0);
        }
    }
}
