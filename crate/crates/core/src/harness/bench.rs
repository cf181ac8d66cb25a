//! Repeated in-memory timing of each transcoder, reported per character.

use std::hint::black_box;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::codec::{self, Malformed};
use crate::simd::Backend;
use crate::{utf16_to_utf8, utf8_to_utf16};

pub const DEFAULT_REPS: usize = 2000;
/// Relative gap between mean and minimum above which a record is flagged.
pub const SPREAD_LIMIT: f64 = 0.01;
pub const SWEEP_BUDGET: Duration = Duration::from_millis(200);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Utf8ToUtf16,
    Utf16ToUtf8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Impl {
    Simd,
    Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub dataset: String,
    pub direction: Direction,
    #[serde(rename = "impl")]
    pub implementation: Impl,
    pub chars: u64,
    pub bytes_in: u64,
    pub bytes_out: u64,
    pub reps: u64,
    pub min_ns: u64,
    pub mean_ns: f64,
    pub gchars_per_sec: f64,
    pub spread_warning: bool,
}

impl BenchRecord {
    /// Builds a record from per-repetition timings. `timings` must not be empty.
    pub fn from_timings(
        dataset: &str,
        direction: Direction,
        implementation: Impl,
        chars: u64,
        bytes: (u64, u64),
        timings: &[u64],
    ) -> BenchRecord {
        assert!(!timings.is_empty(), "at least one repetition");
        let min_ns = *timings.iter().min().unwrap();
        let mean_ns = timings.iter().map(|&t| t as f64).sum::<f64>() / timings.len() as f64;
        let gchars_per_sec = if min_ns == 0 { 0.0 } else { chars as f64 / min_ns as f64 };
        BenchRecord {
            dataset: dataset.to_string(),
            direction,
            implementation,
            chars,
            bytes_in: bytes.0,
            bytes_out: bytes.1,
            reps: timings.len() as u64,
            min_ns,
            mean_ns,
            gchars_per_sec,
            spread_warning: spread(min_ns, mean_ns) > SPREAD_LIMIT,
        }
    }

    pub fn spread(&self) -> f64 {
        spread(self.min_ns, self.mean_ns)
    }
}

fn spread(min_ns: u64, mean_ns: f64) -> f64 {
    if mean_ns <= 0.0 {
        0.0
    } else {
        (mean_ns - min_ns as f64) / mean_ns
    }
}

/// Runs `f` `reps` times and returns the wall time of each run in nanoseconds.
pub fn time_reps<F: FnMut()>(reps: usize, mut f: F) -> Vec<u64> {
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_nanos() as u64
        })
        .collect()
}

/// Benchmarks both directions with both implementations on a UTF-8 text.
/// The UTF-16 side is produced from it before any timing starts.
pub fn bench_utf8(dataset: &str, input: &[u8], reps: usize, backend: Backend) -> Result<Vec<BenchRecord>, Malformed> {
    let (units, r) = codec::scalar_utf8_to_utf16_vec(input);
    if let Some(at) = r.error_at {
        return Err(Malformed { at });
    }
    Ok(bench_pair(dataset, input, &units, reps, backend))
}

/// Same as [`bench_utf8`] starting from UTF-16LE units.
pub fn bench_utf16(dataset: &str, units: &[u16], reps: usize, backend: Backend) -> Result<Vec<BenchRecord>, Malformed> {
    let (bytes, r) = codec::scalar_utf16_to_utf8_vec(units);
    if let Some(at) = r.error_at {
        return Err(Malformed { at });
    }
    Ok(bench_pair(dataset, &bytes, units, reps, backend))
}

fn bench_pair(dataset: &str, utf8: &[u8], utf16: &[u16], reps: usize, backend: Backend) -> Vec<BenchRecord> {
    let chars = codec::count_codepoints_utf8(utf8).expect("validated") as u64;
    let (n8, n16) = (utf8.len() as u64, 2 * utf16.len() as u64);
    let mut out16 = vec![0u16; utf8.len()];
    let mut out8 = vec![0u8; 3 * utf16.len()];
    let mut records = Vec::with_capacity(4);

    let t = time_reps(reps, || {
        black_box(utf8_to_utf16::convert_with(backend, black_box(utf8), &mut out16, true));
    });
    records.push(BenchRecord::from_timings(dataset, Direction::Utf8ToUtf16, Impl::Simd, chars, (n8, n16), &t));
    let t = time_reps(reps, || {
        black_box(codec::scalar_utf8_to_utf16(black_box(utf8), &mut out16));
    });
    records.push(BenchRecord::from_timings(dataset, Direction::Utf8ToUtf16, Impl::Scalar, chars, (n8, n16), &t));
    let t = time_reps(reps, || {
        black_box(utf16_to_utf8::convert_with(backend, black_box(utf16), &mut out8));
    });
    records.push(BenchRecord::from_timings(dataset, Direction::Utf16ToUtf8, Impl::Simd, chars, (n16, n8), &t));
    let t = time_reps(reps, || {
        black_box(codec::scalar_utf16_to_utf8(black_box(utf16), &mut out8));
    });
    records.push(BenchRecord::from_timings(dataset, Direction::Utf16ToUtf8, Impl::Scalar, chars, (n16, n8), &t));
    records
}

/// Speed as a function of input length: each prefix (cut at a character
/// boundary) is transcoded repeatedly until `budget` has elapsed.
pub fn prefix_sweep(dataset: &str, input: &[u8], lengths: &[usize], budget: Duration, backend: Backend) -> Vec<BenchRecord> {
    let mut records = Vec::new();
    for &want in lengths {
        let mut len = want.min(input.len());
        while len < input.len() && input[len] & 0xC0 == 0x80 {
            len += 1;
        }
        let prefix = &input[..len];
        let mut out = vec![0u16; len];
        let mut timings = Vec::new();
        let start = Instant::now();
        while timings.is_empty() || start.elapsed() < budget {
            timings.extend(time_reps(1, || {
                black_box(utf8_to_utf16::convert_with(backend, black_box(prefix), &mut out, true));
            }));
        }
        let r = utf8_to_utf16::convert_with(backend, prefix, &mut out, true);
        let chars = codec::count_codepoints_utf8(prefix).unwrap_or(0) as u64;
        let name = format!("{dataset}[..{len}]");
        records.push(BenchRecord::from_timings(
            &name,
            Direction::Utf8ToUtf16,
            Impl::Simd,
            chars,
            (len as u64, 2 * r.written as u64),
            &timings,
        ));
    }
    records
}

/// One JSON object per line.
pub fn write_json<W: Write>(records: &[BenchRecord], mut w: W) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

/// CSV with a header row.
pub fn write_csv<W: Write>(records: &[BenchRecord], w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in records {
        out.serialize(r)?;
    }
    out.flush()
}

pub fn read_json(text: &str) -> serde_json::Result<Vec<BenchRecord>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

pub fn read_csv(text: &str) -> csv::Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_arithmetic() {
        let r = BenchRecord::from_timings("x", Direction::Utf8ToUtf16, Impl::Simd, 1000, (1000, 2000), &[100, 100, 100]);
        assert_eq!(r.min_ns, 100);
        assert_eq!(r.gchars_per_sec, 10.0);
        assert!(!r.spread_warning);
        let r = BenchRecord::from_timings("x", Direction::Utf8ToUtf16, Impl::Simd, 10, (10, 20), &[100, 200]);
        assert!(r.spread_warning);
        assert!((r.spread() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_input_guards_division() {
        let rs = bench_utf8("empty", b"", 1, Backend::Emulated).unwrap();
        assert_eq!(rs.len(), 4);
        for r in rs {
            assert_eq!(r.chars, 0);
            assert!(r.gchars_per_sec.is_finite());
            assert!(r.min_ns as f64 <= r.mean_ns);
        }
    }

    #[test]
    fn invalid_input_is_rejected() {
        assert_eq!(bench_utf8("bad", b"ok\xFF", 1, Backend::Emulated).unwrap_err().at, 2);
        assert_eq!(bench_utf16("bad", &[0x41, 0xDC00], 1, Backend::Emulated).unwrap_err().at, 1);
    }

    #[test]
    fn chars_agree_across_directions() {
        let text = "مرحبا بالعالم ".repeat(50);
        let rs = bench_utf8("arabic", text.as_bytes(), 3, Backend::Emulated).unwrap();
        assert!(rs.iter().all(|r| r.chars == rs[0].chars));
        assert_eq!(rs[0].bytes_in, rs[2].bytes_out);
    }

    #[test]
    fn json_and_csv_agree() {
        let rs = bench_utf8("mixed", "aé鏡😀".repeat(20).as_bytes(), 2, Backend::Emulated).unwrap();
        let mut j = Vec::new();
        write_json(&rs, &mut j).unwrap();
        let mut c = Vec::new();
        write_csv(&rs, &mut c).unwrap();
        let from_json = read_json(std::str::from_utf8(&j).unwrap()).unwrap();
        let from_csv = read_csv(std::str::from_utf8(&c).unwrap()).unwrap();
        assert_eq!(from_json, rs);
        assert_eq!(from_csv.len(), rs.len());
        for (a, b) in from_csv.iter().zip(&rs) {
            assert_eq!((a.min_ns, a.chars, a.direction, a.implementation), (b.min_ns, b.chars, b.direction, b.implementation));
            assert!((a.mean_ns - b.mean_ns).abs() <= 1e-9 * b.mean_ns.max(1.0));
        }
    }

    #[test]
    fn sweep_cuts_at_char_boundaries() {
        let text = "é".repeat(100);
        let rs = prefix_sweep("e", text.as_bytes(), &[3, 64], Duration::from_millis(1), Backend::Emulated);
        assert_eq!(rs[0].bytes_in, 4);
        assert_eq!(rs[0].chars, 2);
        assert_eq!(rs[1].bytes_in, 64);
    }
}
