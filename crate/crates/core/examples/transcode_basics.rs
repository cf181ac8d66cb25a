// Converting text between UTF-8 and UTF-16LE with the vector transcoders.
//
// ```bash
// cargo run --example transcode_basics
// ```

use std::error::Error;

use vtrans::{utf16_to_utf8, utf8_to_utf16};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let text = "Mirror: 鏡, café, 😀";

    // Allocating helpers size the output for the worst case and trim it.
    let (units, r) = utf8_to_utf16::convert_to_vec(text.as_bytes(), true);
    assert!(r.is_ok());
    assert_eq!(units, text.encode_utf16().collect::<Vec<_>>());
    println!("{} UTF-8 bytes -> {} UTF-16 units", r.consumed, r.written);

    // Caller-provided buffers: one unit per input byte is always enough...
    let mut out16 = vec![0u16; text.len()];
    let r = utf8_to_utf16::convert(text.as_bytes(), &mut out16, true);
    out16.truncate(r.written);

    // ...and three bytes per unit going the other way.
    let mut out8 = vec![0u8; 3 * out16.len()];
    let r = utf16_to_utf8::convert(&out16, &mut out8);
    out8.truncate(r.written);
    assert_eq!(out8, text.as_bytes());
    println!("round trip: {}", std::str::from_utf8(&out8)?);

    // U+93E1 takes three bytes in UTF-8 and one unit in UTF-16.
    let (u, _) = utf8_to_utf16::convert_to_vec(&[0xE9, 0x8F, 0xA1], true);
    println!("E9 8F A1 -> {:04X?}", u);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
