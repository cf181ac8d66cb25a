use std::arch::x86_64::*;

use super::{Engine, LaneMask, Vec128};

/// SSSE3 + SSE4.1 backend.
///
/// The token can only be obtained through [`Sse41::detect`], which makes the
/// `unsafe` intrinsic calls below sound.
#[derive(Clone, Copy, Debug)]
pub struct Sse41 {
    _private: (),
}

impl Sse41 {
    pub fn detect() -> Option<Self> {
        if is_x86_feature_detected!("ssse3") && is_x86_feature_detected!("sse4.1") {
            Some(Sse41 { _private: () })
        } else {
            None
        }
    }
}

impl Engine for Sse41 {
    type V = __m128i;

    #[inline(always)]
    fn load(self, src: &[u8]) -> __m128i {
        let src = &src[..16];
        unsafe { _mm_loadu_si128(src.as_ptr() as *const __m128i) }
    }

    #[inline(always)]
    fn store(self, v: __m128i, dst: &mut [u8]) {
        let dst = &mut dst[..16];
        unsafe { _mm_storeu_si128(dst.as_mut_ptr() as *mut __m128i, v) }
    }

    #[inline(always)]
    fn load_u16(self, src: &[u16]) -> __m128i {
        let src = &src[..8];
        unsafe { _mm_loadu_si128(src.as_ptr() as *const __m128i) }
    }

    #[inline(always)]
    fn store_u16(self, v: __m128i, dst: &mut [u16]) {
        let dst = &mut dst[..8];
        unsafe { _mm_storeu_si128(dst.as_mut_ptr() as *mut __m128i, v) }
    }

    #[inline(always)]
    fn from_vec(self, v: Vec128) -> __m128i {
        self.load(&v.0)
    }

    #[inline(always)]
    fn to_vec(self, v: __m128i) -> Vec128 {
        let mut out = Vec128::ZERO;
        self.store(v, &mut out.0);
        out
    }

    #[inline(always)]
    fn splat_u8(self, b: u8) -> __m128i {
        unsafe { _mm_set1_epi8(b as i8) }
    }

    #[inline(always)]
    fn splat_u16(self, w: u16) -> __m128i {
        unsafe { _mm_set1_epi16(w as i16) }
    }

    #[inline(always)]
    fn splat_u32(self, w: u32) -> __m128i {
        unsafe { _mm_set1_epi32(w as i32) }
    }

    #[inline(always)]
    fn zero(self) -> __m128i {
        unsafe { _mm_setzero_si128() }
    }

    #[inline(always)]
    fn shuffle_bytes(self, src: __m128i, idx: __m128i) -> __m128i {
        unsafe { _mm_shuffle_epi8(src, idx) }
    }

    #[inline(always)]
    fn movemask_msb(self, v: __m128i) -> LaneMask {
        LaneMask(unsafe { _mm_movemask_epi8(v) } as u16)
    }

    #[inline(always)]
    fn cmp_gt_signed(self, v: __m128i, threshold: i8) -> __m128i {
        unsafe { _mm_cmpgt_epi8(v, _mm_set1_epi8(threshold)) }
    }

    #[inline(always)]
    fn cmp_eq_u16(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe { _mm_cmpeq_epi16(a, b) }
    }

    #[inline(always)]
    fn is_zero(self, v: __m128i) -> bool {
        unsafe { _mm_testz_si128(v, v) == 1 }
    }

    #[inline(always)]
    fn and(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe { _mm_and_si128(a, b) }
    }

    #[inline(always)]
    fn or(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe { _mm_or_si128(a, b) }
    }

    #[inline(always)]
    fn xor(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe { _mm_xor_si128(a, b) }
    }

    #[inline(always)]
    fn blend(self, mask: __m128i, a: __m128i, b: __m128i) -> __m128i {
        unsafe { _mm_blendv_epi8(a, b, mask) }
    }

    #[inline(always)]
    fn saturating_sub_u8(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe { _mm_subs_epu8(a, b) }
    }

    #[inline(always)]
    fn shr_u16<const N: i32>(self, v: __m128i) -> __m128i {
        unsafe { _mm_srli_epi16::<N>(v) }
    }

    #[inline(always)]
    fn shl_u16<const N: i32>(self, v: __m128i) -> __m128i {
        unsafe { _mm_slli_epi16::<N>(v) }
    }

    #[inline(always)]
    fn shr_u32<const N: i32>(self, v: __m128i) -> __m128i {
        unsafe { _mm_srli_epi32::<N>(v) }
    }

    #[inline(always)]
    fn shl_u32<const N: i32>(self, v: __m128i) -> __m128i {
        unsafe { _mm_slli_epi32::<N>(v) }
    }

    #[inline(always)]
    fn add_u32(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe { _mm_add_epi32(a, b) }
    }

    #[inline(always)]
    fn sub_u32(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe { _mm_sub_epi32(a, b) }
    }

    #[inline(always)]
    fn widen_low_u8_to_u16(self, v: __m128i) -> __m128i {
        unsafe { _mm_unpacklo_epi8(v, _mm_setzero_si128()) }
    }

    #[inline(always)]
    fn widen_high_u8_to_u16(self, v: __m128i) -> __m128i {
        unsafe { _mm_unpackhi_epi8(v, _mm_setzero_si128()) }
    }

    #[inline(always)]
    fn widen_low_u16_to_u32(self, v: __m128i) -> __m128i {
        unsafe { _mm_unpacklo_epi16(v, _mm_setzero_si128()) }
    }

    #[inline(always)]
    fn widen_high_u16_to_u32(self, v: __m128i) -> __m128i {
        unsafe { _mm_unpackhi_epi16(v, _mm_setzero_si128()) }
    }

    #[inline(always)]
    fn pack_u32_low16(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe {
            let m = _mm_set1_epi32(0xFFFF);
            _mm_packus_epi32(_mm_and_si128(a, m), _mm_and_si128(b, m))
        }
    }

    #[inline(always)]
    fn pack_u16_low8(self, a: __m128i, b: __m128i) -> __m128i {
        unsafe {
            let m = _mm_set1_epi16(0x00FF);
            _mm_packus_epi16(_mm_and_si128(a, m), _mm_and_si128(b, m))
        }
    }

    #[inline(always)]
    fn prev1(self, cur: __m128i, prev: __m128i) -> __m128i {
        unsafe { _mm_alignr_epi8::<15>(cur, prev) }
    }

    #[inline(always)]
    fn prev2(self, cur: __m128i, prev: __m128i) -> __m128i {
        unsafe { _mm_alignr_epi8::<14>(cur, prev) }
    }

    #[inline(always)]
    fn prev3(self, cur: __m128i, prev: __m128i) -> __m128i {
        unsafe { _mm_alignr_epi8::<13>(cur, prev) }
    }
}
