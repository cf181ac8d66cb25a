//! 128-bit vector abstraction used by every transcoding kernel.
//!
//! Kernels are written once against the [`Engine`] trait and instantiated
//! for each backend:
//!
//! - [`Emulated`]: a lane-by-lane implementation over [`Vec128`]. This is the
//!   semantic definition of every operation.
//! - `Sse41` (x86-64 only): SSSE3/SSE4.1 intrinsics. It can only be
//!   constructed after runtime feature detection succeeds, so holding a value
//!   of the type proves the instructions are available.
//!
//! Multi-byte lane views (u16, u32) are little-endian regardless of host.

mod backend;
mod emulated;
#[cfg(target_arch = "x86_64")]
mod x86;

pub use backend::{active_backend, force_backend, reset_backend, Backend};
pub use emulated::Emulated;
#[cfg(target_arch = "x86_64")]
pub use x86::Sse41;

/// Sixteen byte lanes; lane 0 is the lowest address on load.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Vec128(pub [u8; 16]);

impl Vec128 {
    pub const ZERO: Vec128 = Vec128([0; 16]);

    pub fn splat(b: u8) -> Self {
        Vec128([b; 16])
    }

    pub fn u16_lanes(&self) -> [u16; 8] {
        let mut out = [0u16; 8];
        for (i, w) in out.iter_mut().enumerate() {
            *w = u16::from_le_bytes([self.0[2 * i], self.0[2 * i + 1]]);
        }
        out
    }

    pub fn from_u16_lanes(lanes: [u16; 8]) -> Self {
        let mut v = [0u8; 16];
        for (i, w) in lanes.iter().enumerate() {
            v[2 * i..2 * i + 2].copy_from_slice(&w.to_le_bytes());
        }
        Vec128(v)
    }

    pub fn u32_lanes(&self) -> [u32; 4] {
        let mut out = [0u32; 4];
        for (i, w) in out.iter_mut().enumerate() {
            let b = &self.0[4 * i..4 * i + 4];
            *w = u32::from_le_bytes([b[0], b[1], b[2], b[3]]);
        }
        out
    }

    pub fn from_u32_lanes(lanes: [u32; 4]) -> Self {
        let mut v = [0u8; 16];
        for (i, w) in lanes.iter().enumerate() {
            v[4 * i..4 * i + 4].copy_from_slice(&w.to_le_bytes());
        }
        Vec128(v)
    }
}

impl std::fmt::Debug for Vec128 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Vec128[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b:02x}")?;
        }
        write!(f, "]")
    }
}

/// One bit per byte lane; bit `i` reflects lane `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaneMask(pub u16);

impl LaneMask {
    pub fn bits(self) -> u16 {
        self.0
    }

    /// Keeps the even bits, one per u16 lane, packed into the low byte.
    pub fn per_u16_lane(self) -> u8 {
        let mut x = self.0 & 0x5555;
        x = (x | (x >> 1)) & 0x3333;
        x = (x | (x >> 2)) & 0x0F0F;
        x = (x | (x >> 4)) & 0x00FF;
        x as u8
    }
}

/// The fixed operation set the kernels are written against.
///
/// Implementors are zero-sized tokens; methods take `self` so that a backend
/// which needs a CPU feature can only be invoked once the token exists.
pub trait Engine: Copy {
    type V: Copy;

    fn load(self, src: &[u8]) -> Self::V;
    fn store(self, v: Self::V, dst: &mut [u8]);
    /// Loads eight u16 lanes.
    fn load_u16(self, src: &[u16]) -> Self::V;
    /// Stores eight u16 lanes.
    fn store_u16(self, v: Self::V, dst: &mut [u16]);
    fn from_vec(self, v: Vec128) -> Self::V;
    fn to_vec(self, v: Self::V) -> Vec128;

    fn splat_u8(self, b: u8) -> Self::V;
    fn splat_u16(self, w: u16) -> Self::V;
    fn splat_u32(self, w: u32) -> Self::V;
    fn zero(self) -> Self::V {
        self.splat_u8(0)
    }

    /// Lane `i` becomes `src[idx[i] & 15]`, or zero when `idx[i] >= 0x80`.
    fn shuffle_bytes(self, src: Self::V, idx: Self::V) -> Self::V;
    fn movemask_msb(self, v: Self::V) -> LaneMask;
    /// 0xFF where the lane, read as a signed byte, is greater than `threshold`.
    fn cmp_gt_signed(self, v: Self::V, threshold: i8) -> Self::V;
    /// 0xFFFF in u16 lanes where `a == b`.
    fn cmp_eq_u16(self, a: Self::V, b: Self::V) -> Self::V;
    fn is_zero(self, v: Self::V) -> bool;

    fn and(self, a: Self::V, b: Self::V) -> Self::V;
    fn or(self, a: Self::V, b: Self::V) -> Self::V;
    fn xor(self, a: Self::V, b: Self::V) -> Self::V;
    /// Takes lanes from `b` where the `mask` lane has its top bit set.
    fn blend(self, mask: Self::V, a: Self::V, b: Self::V) -> Self::V;
    fn saturating_sub_u8(self, a: Self::V, b: Self::V) -> Self::V;

    fn shr_u16<const N: i32>(self, v: Self::V) -> Self::V;
    fn shl_u16<const N: i32>(self, v: Self::V) -> Self::V;
    fn shr_u32<const N: i32>(self, v: Self::V) -> Self::V;
    fn shl_u32<const N: i32>(self, v: Self::V) -> Self::V;
    fn add_u32(self, a: Self::V, b: Self::V) -> Self::V;
    fn sub_u32(self, a: Self::V, b: Self::V) -> Self::V;

    fn widen_low_u8_to_u16(self, v: Self::V) -> Self::V;
    fn widen_high_u8_to_u16(self, v: Self::V) -> Self::V;
    fn widen_low_u16_to_u32(self, v: Self::V) -> Self::V;
    fn widen_high_u16_to_u32(self, v: Self::V) -> Self::V;
    /// Low 16 bits of the four u32 lanes of `a`, then of `b`.
    fn pack_u32_low16(self, a: Self::V, b: Self::V) -> Self::V;
    /// Low 8 bits of the eight u16 lanes of `a`, then of `b`.
    fn pack_u16_low8(self, a: Self::V, b: Self::V) -> Self::V;

    /// The last `N` lanes of `prev` followed by the first `16 - N` lanes of `cur`.
    fn prev1(self, cur: Self::V, prev: Self::V) -> Self::V;
    fn prev2(self, cur: Self::V, prev: Self::V) -> Self::V;
    fn prev3(self, cur: Self::V, prev: Self::V) -> Self::V;
}
