use super::{Engine, LaneMask, Vec128};

/// Lane-by-lane reference backend. Every other backend must agree with it.
#[derive(Clone, Copy, Debug, Default)]
pub struct Emulated;

#[inline(always)]
fn map2(a: Vec128, b: Vec128, f: impl Fn(u8, u8) -> u8) -> Vec128 {
    let mut out = [0u8; 16];
    for i in 0..16 {
        out[i] = f(a.0[i], b.0[i]);
    }
    Vec128(out)
}

#[inline(always)]
fn map_u16(v: Vec128, f: impl Fn(u16) -> u16) -> Vec128 {
    let mut lanes = v.u16_lanes();
    for w in lanes.iter_mut() {
        *w = f(*w);
    }
    Vec128::from_u16_lanes(lanes)
}

#[inline(always)]
fn map_u32(v: Vec128, f: impl Fn(u32) -> u32) -> Vec128 {
    let mut lanes = v.u32_lanes();
    for w in lanes.iter_mut() {
        *w = f(*w);
    }
    Vec128::from_u32_lanes(lanes)
}

#[inline(always)]
fn zip_u32(a: Vec128, b: Vec128, f: impl Fn(u32, u32) -> u32) -> Vec128 {
    let (x, y) = (a.u32_lanes(), b.u32_lanes());
    let mut out = [0u32; 4];
    for i in 0..4 {
        out[i] = f(x[i], y[i]);
    }
    Vec128::from_u32_lanes(out)
}

#[inline(always)]
fn concat_shift(cur: Vec128, prev: Vec128, n: usize) -> Vec128 {
    let mut out = [0u8; 16];
    for (i, o) in out.iter_mut().enumerate() {
        *o = if i < n { prev.0[16 - n + i] } else { cur.0[i - n] };
    }
    Vec128(out)
}

impl Engine for Emulated {
    type V = Vec128;

    #[inline(always)]
    fn load(self, src: &[u8]) -> Vec128 {
        let mut v = [0u8; 16];
        v.copy_from_slice(&src[..16]);
        Vec128(v)
    }

    #[inline(always)]
    fn store(self, v: Vec128, dst: &mut [u8]) {
        dst[..16].copy_from_slice(&v.0);
    }

    #[inline(always)]
    fn load_u16(self, src: &[u16]) -> Vec128 {
        let mut lanes = [0u16; 8];
        lanes.copy_from_slice(&src[..8]);
        Vec128::from_u16_lanes(lanes)
    }

    #[inline(always)]
    fn store_u16(self, v: Vec128, dst: &mut [u16]) {
        dst[..8].copy_from_slice(&v.u16_lanes());
    }

    #[inline(always)]
    fn from_vec(self, v: Vec128) -> Vec128 {
        v
    }

    #[inline(always)]
    fn to_vec(self, v: Vec128) -> Vec128 {
        v
    }

    #[inline(always)]
    fn splat_u8(self, b: u8) -> Vec128 {
        Vec128([b; 16])
    }

    #[inline(always)]
    fn splat_u16(self, w: u16) -> Vec128 {
        Vec128::from_u16_lanes([w; 8])
    }

    #[inline(always)]
    fn splat_u32(self, w: u32) -> Vec128 {
        Vec128::from_u32_lanes([w; 4])
    }

    #[inline(always)]
    fn shuffle_bytes(self, src: Vec128, idx: Vec128) -> Vec128 {
        let mut out = [0u8; 16];
        for i in 0..16 {
            let k = idx.0[i];
            out[i] = if k & 0x80 != 0 { 0 } else { src.0[(k & 0x0F) as usize] };
        }
        Vec128(out)
    }

    #[inline(always)]
    fn movemask_msb(self, v: Vec128) -> LaneMask {
        let mut m = 0u16;
        for i in 0..16 {
            m |= ((v.0[i] >> 7) as u16) << i;
        }
        LaneMask(m)
    }

    #[inline(always)]
    fn cmp_gt_signed(self, v: Vec128, threshold: i8) -> Vec128 {
        let mut out = [0u8; 16];
        for i in 0..16 {
            out[i] = if (v.0[i] as i8) > threshold { 0xFF } else { 0 };
        }
        Vec128(out)
    }

    #[inline(always)]
    fn cmp_eq_u16(self, a: Vec128, b: Vec128) -> Vec128 {
        let (x, y) = (a.u16_lanes(), b.u16_lanes());
        let mut out = [0u16; 8];
        for i in 0..8 {
            out[i] = if x[i] == y[i] { 0xFFFF } else { 0 };
        }
        Vec128::from_u16_lanes(out)
    }

    #[inline(always)]
    fn is_zero(self, v: Vec128) -> bool {
        v.0.iter().all(|&b| b == 0)
    }

    #[inline(always)]
    fn and(self, a: Vec128, b: Vec128) -> Vec128 {
        map2(a, b, |x, y| x & y)
    }

    #[inline(always)]
    fn or(self, a: Vec128, b: Vec128) -> Vec128 {
        map2(a, b, |x, y| x | y)
    }

    #[inline(always)]
    fn xor(self, a: Vec128, b: Vec128) -> Vec128 {
        map2(a, b, |x, y| x ^ y)
    }

    #[inline(always)]
    fn blend(self, mask: Vec128, a: Vec128, b: Vec128) -> Vec128 {
        let mut out = [0u8; 16];
        for i in 0..16 {
            out[i] = if mask.0[i] & 0x80 != 0 { b.0[i] } else { a.0[i] };
        }
        Vec128(out)
    }

    #[inline(always)]
    fn saturating_sub_u8(self, a: Vec128, b: Vec128) -> Vec128 {
        map2(a, b, u8::saturating_sub)
    }

    #[inline(always)]
    fn shr_u16<const N: i32>(self, v: Vec128) -> Vec128 {
        map_u16(v, |w| w >> N)
    }

    #[inline(always)]
    fn shl_u16<const N: i32>(self, v: Vec128) -> Vec128 {
        map_u16(v, |w| w << N)
    }

    #[inline(always)]
    fn shr_u32<const N: i32>(self, v: Vec128) -> Vec128 {
        map_u32(v, |w| w >> N)
    }

    #[inline(always)]
    fn shl_u32<const N: i32>(self, v: Vec128) -> Vec128 {
        map_u32(v, |w| w << N)
    }

    #[inline(always)]
    fn add_u32(self, a: Vec128, b: Vec128) -> Vec128 {
        zip_u32(a, b, u32::wrapping_add)
    }

    #[inline(always)]
    fn sub_u32(self, a: Vec128, b: Vec128) -> Vec128 {
        zip_u32(a, b, u32::wrapping_sub)
    }

    #[inline(always)]
    fn widen_low_u8_to_u16(self, v: Vec128) -> Vec128 {
        let mut lanes = [0u16; 8];
        for i in 0..8 {
            lanes[i] = v.0[i] as u16;
        }
        Vec128::from_u16_lanes(lanes)
    }

    #[inline(always)]
    fn widen_high_u8_to_u16(self, v: Vec128) -> Vec128 {
        let mut lanes = [0u16; 8];
        for i in 0..8 {
            lanes[i] = v.0[8 + i] as u16;
        }
        Vec128::from_u16_lanes(lanes)
    }

    #[inline(always)]
    fn widen_low_u16_to_u32(self, v: Vec128) -> Vec128 {
        let w = v.u16_lanes();
        Vec128::from_u32_lanes([w[0] as u32, w[1] as u32, w[2] as u32, w[3] as u32])
    }

    #[inline(always)]
    fn widen_high_u16_to_u32(self, v: Vec128) -> Vec128 {
        let w = v.u16_lanes();
        Vec128::from_u32_lanes([w[4] as u32, w[5] as u32, w[6] as u32, w[7] as u32])
    }

    #[inline(always)]
    fn pack_u32_low16(self, a: Vec128, b: Vec128) -> Vec128 {
        let (x, y) = (a.u32_lanes(), b.u32_lanes());
        let mut out = [0u16; 8];
        for i in 0..4 {
            out[i] = x[i] as u16;
            out[4 + i] = y[i] as u16;
        }
        Vec128::from_u16_lanes(out)
    }

    #[inline(always)]
    fn pack_u16_low8(self, a: Vec128, b: Vec128) -> Vec128 {
        let (x, y) = (a.u16_lanes(), b.u16_lanes());
        let mut out = [0u8; 16];
        for i in 0..8 {
            out[i] = x[i] as u8;
            out[8 + i] = y[i] as u8;
        }
        Vec128(out)
    }

    #[inline(always)]
    fn prev1(self, cur: Vec128, prev: Vec128) -> Vec128 {
        concat_shift(cur, prev, 1)
    }

    #[inline(always)]
    fn prev2(self, cur: Vec128, prev: Vec128) -> Vec128 {
        concat_shift(cur, prev, 2)
    }

    #[inline(always)]
    fn prev3(self, cur: Vec128, prev: Vec128) -> Vec128 {
        concat_shift(cur, prev, 3)
    }
}
