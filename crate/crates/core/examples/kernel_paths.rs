// Looking inside the UTF-8 -> UTF-16 kernel: single windows, fast paths and
// per-path counters.

use std::error::Error;

use vtrans::simd;
use vtrans::utf8_to_utf16::{self, FastPath};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // One 12-byte window: "aé鏡" ends at bytes 0, 2 and 5.
    let window = "aé鏡😀".as_bytes();
    let z: u16 = 0b0000_0010_0101;
    let b = utf8_to_utf16::process_block12(window, z);
    println!("{:?}: consumed {}, wrote {:04X?}", b.case, b.consumed, &b.units[..b.written]);

    // Fast paths look at 16 end-of-character bits at once.
    assert_eq!(utf8_to_utf16::try_fast_paths(0xFFFF, 16), Some(FastPath::Ascii16));
    assert_eq!(utf8_to_utf16::try_fast_paths(0xAAAA, 16), Some(FastPath::TwoByte16));

    let backend = simd::active_backend();
    for (name, text) in [("ascii", "plain text ".repeat(512)), ("cyrillic", "привет ".repeat(512))] {
        let mut out = vec![0u16; text.len()];
        let (r, c) = utf8_to_utf16::convert_counted(backend, text.as_bytes(), &mut out, true);
        assert!(r.is_ok());
        println!(
            "{name:9} ascii blocks {:4}  ascii16 {:4}  two_byte16 {:4}  windows {:4}  scalar bytes {}",
            c.ascii_blocks,
            c.ascii16,
            c.two_byte16,
            c.six_short + c.four_bmp + c.two_any,
            c.scalar_bytes
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
