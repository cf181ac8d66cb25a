//! Lookup tables for both transcoding directions, generated at first use.
//!
//! UTF-8 to UTF-16: a main table keyed by the 12-bit end-of-character bitset
//! of a window, pointing into a set of shuffle masks that spread each
//! character into its own 16-bit lane (six short characters) or 32-bit lane
//! (four BMP characters, or two arbitrary characters).
//!
//! UTF-16 to UTF-8: two 256-entry tables of (byte count, compaction mask).

use std::fmt::Write as _;
use std::sync::OnceLock;

/// Width of the window the main table is keyed on.
pub const WINDOW: usize = 12;
/// Number of main table entries (one per 12-bit bitset).
pub const MAIN_ENTRIES: usize = 1 << WINDOW;

const SIX_SHORT_MASKS: usize = 64; // 2^6
const FOUR_BMP_MASKS: usize = 81; // 3^4
const TWO_ANY_MASKS: usize = 16; // 4^2

/// Mask byte that makes the shuffle produce a zero lane.
pub const ZERO_LANE: u8 = 0x80;
/// `mask_index` of a fallback entry.
pub const NO_MASK: u8 = 0xFF;

/// Which kernel handles a window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelCase {
    /// Six characters of one or two bytes, converted into 16-bit lanes.
    SixShort,
    /// Four characters of one to three bytes, converted in 32-bit lanes.
    FourBmp,
    /// Two characters of one to four bytes, converted in 32-bit lanes.
    TwoAny,
    /// No complete leading pattern; handled by the scalar decoder.
    Fallback,
}

impl KernelCase {
    pub fn chars(self) -> usize {
        match self {
            KernelCase::SixShort => 6,
            KernelCase::FourBmp => 4,
            KernelCase::TwoAny => 2,
            KernelCase::Fallback => 0,
        }
    }

    pub fn max_char_len(self) -> usize {
        match self {
            KernelCase::SixShort => 2,
            KernelCase::FourBmp => 3,
            KernelCase::TwoAny => 4,
            KernelCase::Fallback => 0,
        }
    }
}

/// Result of reading a window's bitset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub case: KernelCase,
    pub consumed: usize,
    /// Lengths of the characters the case converts, in order.
    pub lengths: Vec<u8>,
}

/// Lengths of every character that ends inside the window. A set bit marks
/// the last byte of a character.
fn char_lengths(z: u16) -> Vec<u8> {
    let mut out = Vec::with_capacity(WINDOW);
    let mut start = 0;
    for i in 0..WINDOW {
        if z & (1 << i) != 0 {
            out.push((i + 1 - start) as u8);
            start = i + 1;
        }
    }
    out
}

/// Picks the first case whose character count and maximum length fit the
/// window, in priority order six-short, four-BMP, two-any.
pub fn classify_bitset(z: u16) -> Classification {
    let lengths = char_lengths(z & 0xFFF);
    for case in [KernelCase::SixShort, KernelCase::FourBmp, KernelCase::TwoAny] {
        let n = case.chars();
        if lengths.len() >= n && lengths[..n].iter().all(|&l| l as usize <= case.max_char_len()) {
            let lengths = lengths[..n].to_vec();
            let consumed = lengths.iter().map(|&l| l as usize).sum();
            return Classification { case, consumed, lengths };
        }
    }
    Classification { case: KernelCase::Fallback, consumed: 0, lengths: Vec::new() }
}

/// Compact key of a length pattern: mixed-radix digits `len - 1`, first
/// character least significant.
fn pattern_index(case: KernelCase, lengths: &[u8]) -> usize {
    let radix = case.max_char_len();
    lengths.iter().rev().fold(0, |acc, &l| acc * radix + (l as usize - 1))
}

fn pattern_from_index(case: KernelCase, mut index: usize) -> Vec<u8> {
    let radix = case.max_char_len();
    (0..case.chars())
        .map(|_| {
            let l = (index % radix) as u8 + 1;
            index /= radix;
            l
        })
        .collect()
}

/// Shuffle mask placing each character of `lengths` into its own lane of
/// `lane_bytes` bytes, last byte of the character in the lowest lane byte.
fn spread_mask(lengths: &[u8], lane_bytes: usize) -> [u8; 16] {
    let mut mask = [ZERO_LANE; 16];
    let mut start = 0usize;
    for (k, &l) in lengths.iter().enumerate() {
        let l = l as usize;
        for j in 0..l {
            mask[k * lane_bytes + j] = (start + l - 1 - j) as u8;
        }
        start += l;
    }
    mask
}

/// One main table entry: bytes consumed and an index into the mask set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[repr(C)]
pub struct MainEntry {
    pub consumed: u8,
    pub mask_index: u8,
}

/// Tables for the UTF-8 to UTF-16 direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Utf8Tables {
    pub main: Vec<MainEntry>,
    pub masks: Vec<[u8; 16]>,
    /// Mask index ranges: six-short `[0, b0)`, four-BMP `[b0, b1)`, two-any `[b1, b2)`.
    pub partitions: [usize; 3],
}

impl Utf8Tables {
    pub fn case_of(&self, mask_index: u8) -> KernelCase {
        let i = mask_index as usize;
        if mask_index == NO_MASK {
            KernelCase::Fallback
        } else if i < self.partitions[0] {
            KernelCase::SixShort
        } else if i < self.partitions[1] {
            KernelCase::FourBmp
        } else {
            KernelCase::TwoAny
        }
    }

    pub fn entry(&self, z: u16) -> MainEntry {
        self.main[(z & 0xFFF) as usize]
    }

    /// Mask count in each partition.
    pub fn partition_sizes(&self) -> [usize; 3] {
        let p = self.partitions;
        [p[0], p[1] - p[0], p[2] - p[1]]
    }

    /// Size of the main table in bytes.
    pub fn main_bytes(&self) -> usize {
        self.main.len() * std::mem::size_of::<MainEntry>()
    }

    pub fn mask_bytes(&self) -> usize {
        self.masks.len() * 16
    }
}

pub fn build_utf8_tables() -> Utf8Tables {
    let mut masks = Vec::with_capacity(SIX_SHORT_MASKS + FOUR_BMP_MASKS + TWO_ANY_MASKS);
    let mut bases = [0usize; 3];
    for (slot, (case, count, lane)) in [
        (KernelCase::SixShort, SIX_SHORT_MASKS, 2),
        (KernelCase::FourBmp, FOUR_BMP_MASKS, 4),
        (KernelCase::TwoAny, TWO_ANY_MASKS, 4),
    ]
    .into_iter()
    .enumerate()
    {
        bases[slot] = masks.len();
        for index in 0..count {
            masks.push(spread_mask(&pattern_from_index(case, index), lane));
        }
    }
    let partitions = [bases[1], bases[2], masks.len()];

    let main = (0..MAIN_ENTRIES as u16)
        .map(|z| {
            let c = classify_bitset(z);
            let base = match c.case {
                KernelCase::SixShort => bases[0],
                KernelCase::FourBmp => bases[1],
                KernelCase::TwoAny => bases[2],
                KernelCase::Fallback => return MainEntry { consumed: 0, mask_index: NO_MASK },
            };
            MainEntry {
                consumed: c.consumed as u8,
                mask_index: (base + pattern_index(c.case, &c.lengths)) as u8,
            }
        })
        .collect();

    Utf8Tables { main, masks, partitions }
}

/// Mask index of the four-three-byte-characters pattern.
pub(crate) fn three_byte_run_mask(t: &Utf8Tables) -> usize {
    t.partitions[0] + pattern_index(KernelCase::FourBmp, &[3, 3, 3, 3])
}

/// Bytes written followed by a 16-byte compaction mask; 17 bytes, unaligned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(C)]
pub struct PackEntry {
    pub len: u8,
    pub mask: [u8; 16],
}

/// Tables for the UTF-16 to UTF-8 direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Utf16Tables {
    /// Keyed by the is-ASCII bitset of eight units whose candidate bytes sit
    /// in (lead, trail) pairs.
    pub two_byte: Vec<PackEntry>,
    /// Keyed by a 2-bit `len - 1` code per unit over four units whose
    /// candidate bytes sit in 32-bit lanes, first unit in the low bits.
    pub bmp: Vec<PackEntry>,
}

impl Utf16Tables {
    pub fn total_bytes(&self) -> usize {
        (self.two_byte.len() + self.bmp.len()) * std::mem::size_of::<PackEntry>()
    }
}

fn compaction(lens: impl Iterator<Item = usize>, lane_bytes: usize) -> PackEntry {
    let mut mask = [ZERO_LANE; 16];
    let mut n = 0;
    for (k, l) in lens.enumerate() {
        for j in 0..l {
            mask[n] = (k * lane_bytes + j) as u8;
            n += 1;
        }
    }
    PackEntry { len: n as u8, mask }
}

pub fn build_utf16_tables() -> Utf16Tables {
    let two_byte = (0..256usize)
        .map(|ascii| compaction((0..8).map(|k| if ascii >> k & 1 == 1 { 1 } else { 2 }), 2))
        .collect();
    let bmp = (0..256usize)
        .map(|code| compaction((0..4).map(|k| (code >> (2 * k) & 3) + 1), 4))
        .collect();
    Utf16Tables { two_byte, bmp }
}

/// Every table, built once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub utf8: Utf8Tables,
    pub utf16: Utf16Tables,
}

impl Tables {
    pub fn build() -> Tables {
        Tables { utf8: build_utf8_tables(), utf16: build_utf16_tables() }
    }

    /// Hex listing of every table, one entry per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let hex = |m: &[u8]| m.iter().map(|b| format!("{b:02x}")).collect::<Vec<_>>().join(" ");
        let [a, b, c] = self.utf8.partition_sizes();
        let _ = writeln!(s, "# utf8 main: {} entries of (consumed, mask_index)", self.utf8.main.len());
        for (z, e) in self.utf8.main.iter().enumerate() {
            let _ = writeln!(s, "main {z:03x} {:02x} {:02x}", e.consumed, e.mask_index);
        }
        let _ = writeln!(s, "# utf8 masks: {} ({a} six-short, {b} four-bmp, {c} two-any)", self.utf8.masks.len());
        for (i, m) in self.utf8.masks.iter().enumerate() {
            let _ = writeln!(s, "mask {i:03} {}", hex(m));
        }
        let _ = writeln!(s, "# utf16 two-byte pack: 256 entries of (len, mask)");
        for (i, e) in self.utf16.two_byte.iter().enumerate() {
            let _ = writeln!(s, "pack2 {i:02x} {:02x} {}", e.len, hex(&e.mask));
        }
        let _ = writeln!(s, "# utf16 bmp pack: 256 entries of (len, mask)");
        for (i, e) in self.utf16.bmp.iter().enumerate() {
            let _ = writeln!(s, "pack3 {i:02x} {:02x} {}", e.len, hex(&e.mask));
        }
        s
    }
}

static TABLES: OnceLock<Tables> = OnceLock::new();

/// The shared immutable tables.
pub fn tables() -> &'static Tables {
    TABLES.get_or_init(Tables::build)
}
