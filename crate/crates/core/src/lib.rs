//! Validating UTF-8 ⇄ UTF-16LE transcoding built on table-driven 128-bit
//! byte shuffles.
//!
//! The vector kernels run on a native SSSE3/SSE4.1 backend when the CPU has
//! it and on a lane-by-lane emulation otherwise. Both produce identical
//! results; the emulation is the reference semantics.
//!
//! ```
//! let (utf16, r) = vtrans::utf8_to_utf16::convert_to_vec("鏡".as_bytes(), true);
//! assert!(r.is_ok());
//! assert_eq!(utf16, [0x93E1]);
//! ```

macro_rules! dispatch {
    ($backend:expr, $native:ident, $kernel:ident, $($arg:expr),*) => {{
        match $backend {
            #[cfg(target_arch = "x86_64")]
            $crate::simd::Backend::Native => match $crate::simd::Sse41::detect() {
                // SAFETY: the token proves the features are present.
                Some(e) => unsafe { native::$native(e, $($arg),*) },
                None => $kernel($crate::simd::Emulated, $($arg),*),
            },
            _ => $kernel($crate::simd::Emulated, $($arg),*),
        }
    }};
}

pub mod codec;
pub mod simd;
pub mod tables;
pub mod utf16_to_utf8;
pub mod utf8_to_utf16;
pub mod validate;

pub use codec::{CodePoint, Malformed, TranscodeResult};
pub use simd::Backend;

pub mod harness;
