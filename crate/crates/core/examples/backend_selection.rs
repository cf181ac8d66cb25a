// Choosing between the native SSE4.1 backend and the portable emulation.
//
// Set `VTRANS_BACKEND=emulated` to force the emulation for a whole process.

use std::error::Error;

use vtrans::simd::{self, Backend};
use vtrans::utf8_to_utf16;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("native available: {}", Backend::native_available());
    println!("active backend:   {}", simd::active_backend());

    // Explicit per-call selection, independent of the global choice.
    let text = "Ελληνικά και English ".repeat(20);
    let mut a = vec![0u16; text.len()];
    let mut b = vec![0u16; text.len()];
    let ra = utf8_to_utf16::convert_with(Backend::Native, text.as_bytes(), &mut a, true);
    let rb = utf8_to_utf16::convert_with(Backend::Emulated, text.as_bytes(), &mut b, true);
    assert_eq!((ra, &a), (rb, &b));

    // Global override; requesting native on a machine without it resolves
    // to the emulation.
    let chosen = simd::force_backend(Backend::Emulated);
    println!("forced:           {chosen}");
    simd::reset_backend();
    println!("after reset:      {}", simd::active_backend());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
