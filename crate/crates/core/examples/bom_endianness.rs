// File-level conversion: byte order marks and big-endian UTF-16.

use std::error::Error;

use vtrans::harness::io::{self, BomPolicy, Encoding};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (le, _) = io::transcode_bytes(b"A", Encoding::Utf8, Encoding::Utf16le, BomPolicy::Add)?;
    assert_eq!(le, [0xFF, 0xFE, 0x41, 0x00]);

    // Big-endian is a byte swap around the little-endian kernels.
    let (be, _) = io::transcode_bytes(&le, Encoding::Utf16le, Encoding::Utf16be, BomPolicy::Keep)?;
    println!("utf16be with BOM: {:02X?}", be);

    let (utf8, _) = io::transcode_bytes(&be, Encoding::Utf16be, Encoding::Utf8, BomPolicy::Strip)?;
    assert_eq!(utf8, b"A");

    // A BOM that contradicts the declared byte order is an error.
    let e = io::transcode_bytes(&be, Encoding::Utf16le, Encoding::Utf8, BomPolicy::Strip).unwrap_err();
    println!("{e}");

    // A UTF-8 BOM is tolerated, dropped, and reported.
    let (_, warnings) = io::transcode_bytes(b"\xEF\xBB\xBFhi", Encoding::Utf8, Encoding::Utf16le, BomPolicy::Strip)?;
    println!("{warnings:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
