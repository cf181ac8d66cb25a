//! Corpus statistics: how many characters of each UTF-8 length a text holds
//! and what that costs per character in each format.

use serde::{Deserialize, Serialize};

use crate::codec::{decode_utf8_char, Malformed};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub chars: u64,
    /// Characters by UTF-8 length, index 0 for one byte.
    pub by_length: [u64; 4],
    pub avg_bytes_per_char_utf8: f64,
    pub avg_bytes_per_char_utf16: f64,
    pub pct_1byte: f64,
    pub pct_2byte: f64,
    pub pct_3byte: f64,
    pub pct_4byte: f64,
}

impl CorpusStats {
    pub fn from_histogram(by_length: [u64; 4]) -> CorpusStats {
        let chars: u64 = by_length.iter().sum();
        let utf8: u64 = by_length.iter().zip(1..).map(|(n, len)| n * len).sum();
        let utf16 = 2 * (by_length[0] + by_length[1] + by_length[2]) + 4 * by_length[3];
        let ratio = |num: u64| if chars == 0 { 0.0 } else { num as f64 / chars as f64 };
        let pct = |n: u64| 100.0 * ratio(n);
        CorpusStats {
            chars,
            by_length,
            avg_bytes_per_char_utf8: ratio(utf8),
            avg_bytes_per_char_utf16: ratio(utf16),
            pct_1byte: pct(by_length[0]),
            pct_2byte: pct(by_length[1]),
            pct_3byte: pct(by_length[2]),
            pct_4byte: pct(by_length[3]),
        }
    }

    pub fn percentages(&self) -> [f64; 4] {
        [self.pct_1byte, self.pct_2byte, self.pct_3byte, self.pct_4byte]
    }
}

/// Stats for a UTF-8 text. Fails at the first malformed character.
pub fn corpus_stats(input: &[u8]) -> Result<CorpusStats, Malformed> {
    let mut hist = [0u64; 4];
    let mut p = 0;
    while p < input.len() {
        let (_, n) = decode_utf8_char(input, p)?;
        hist[n - 1] += 1;
        p += n;
    }
    Ok(CorpusStats::from_histogram(hist))
}
