// What the transcoders report on malformed input.

use std::error::Error;

use vtrans::{codec, utf16_to_utf8, utf8_to_utf16};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut input = "valid prefix, then ".repeat(5).into_bytes();
    let bad = input.len();
    input.extend_from_slice(&[0xE2, 0x28, 0xA1]);

    // Conversion stops at the first bad character. Everything before it
    // is converted and `error_at` is where the bad character starts.
    let (units, r) = utf8_to_utf16::convert_to_vec(&input, true);
    assert_eq!(r.error_at, Some(bad));
    assert_eq!(r.consumed, bad);
    assert_eq!(units.len(), bad);
    println!("utf8 error at byte {} after {} units", bad, r.written);

    // The vector result is exactly what the scalar codec reports.
    assert_eq!((units, r), codec::scalar_utf8_to_utf16_vec(&input));

    // Same contract in the other direction, counted in units.
    let (bytes, r) = utf16_to_utf8::convert_to_vec(&[0x48, 0x69, 0xD83D, 0x21]);
    assert_eq!(bytes, b"Hi");
    println!("utf16 error at unit {:?}", r.error_at);

    // Character-level decoding errors carry the same position.
    let e = codec::decode_utf8_char(&[0xC0, 0x80], 0).unwrap_err();
    println!("overlong encoding: {e}");

    // Skipping validation is faster but only defined for well-formed input.
    let (units, r) = utf8_to_utf16::convert_to_vec("trusted".as_bytes(), false);
    assert!(r.is_ok() && units.len() == 7);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
