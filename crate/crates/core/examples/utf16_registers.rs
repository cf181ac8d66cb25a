// The UTF-16 -> UTF-8 side works on registers of eight units, picking a
// packer by the largest unit.

use std::error::Error;

use vtrans::simd;
use vtrans::utf16_to_utf8::{self, RegisterClass};

fn units(s: &str) -> [u16; 8] {
    let v: Vec<u16> = s.encode_utf16().collect();
    v.try_into().expect("eight units")
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let be = simd::active_backend();
    for s in ["abcdefgh", "Ärger äö", "鏡 mirror", "a😀bcdef"] {
        let u = units(s);
        let class = utf16_to_utf8::classify_register(&u);
        let packed = match class {
            RegisterClass::Ascii => utf16_to_utf8::pack_ascii(be, &u),
            RegisterClass::TwoByteMax => utf16_to_utf8::pack_two_byte(be, &u),
            RegisterClass::Bmp => utf16_to_utf8::pack_bmp(be, &u),
            RegisterClass::SurrogatePresent => utf16_to_utf8::convert_to_vec(&u).0,
        };
        assert_eq!(packed, s.as_bytes());
        println!("{s:10} {class:?} -> {} bytes", packed.len());
    }

    let text: Vec<u16> = "emoji 😀 in an otherwise latin sentence".encode_utf16().collect();
    let mut out = vec![0u8; 3 * text.len()];
    let (_, c) = utf16_to_utf8::convert_counted(be, &text, &mut out);
    println!("{c:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
