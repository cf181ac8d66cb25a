// The lookup tables driving the shuffles.

use std::error::Error;

use vtrans::tables::{self, KernelCase};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let t = tables::tables();
    let [six, four, two] = t.utf8.partition_sizes();
    println!("UTF-8 -> UTF-16");
    println!("  main table: {} entries, {} bytes", t.utf8.main.len(), t.utf8.main_bytes());
    println!("  masks:      {} ({six} six-short, {four} four-BMP, {two} two-any), {} bytes", t.utf8.masks.len(), t.utf8.mask_bytes());
    println!("UTF-16 -> UTF-8");
    println!("  pack tables: 2 x {} entries, {} bytes", t.utf16.two_byte.len(), t.utf16.total_bytes());

    // The 12-bit window bitset marks the last byte of each character.
    // 0b1001_0010_0100: four three-byte characters.
    let c = tables::classify_bitset(0x924);
    assert_eq!(c.case, KernelCase::FourBmp);
    println!("0x924 -> {:?}, consumes {} bytes, lengths {:?}", c.case, c.consumed, c.lengths);
    let e = t.utf8.entry(0x924);
    println!("  mask #{}: {:02x?}", e.mask_index, t.utf8.masks[e.mask_index as usize]);

    // Text form for diffing.
    for line in t.dump().lines().take(4) {
        println!("{line}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
