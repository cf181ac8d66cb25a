// Acceptance suite. Runs every criterion in sequence and prints one line per
// criterion; exits non-zero if any fails. Timing-sensitive checks run here
// alone rather than beside the parallel unit tests.

mod common;

use std::path::PathBuf;
use std::time::Instant;

use common::{backends, oracle_first_error, oracle_utf16_to_utf8, oracle_utf8_to_utf16, well_formed_len};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vtrans::codec::{self, CodePoint};
use vtrans::harness::bench::{self, BenchRecord, Direction, Impl};
use vtrans::harness::fuzz::{self, FuzzConfig};
use vtrans::harness::stats;
use vtrans::simd::{self, Backend};
use vtrans::{tables, utf16_to_utf8, utf8_to_utf16, validate};

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::*;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn utf8_side(be: Backend, input: &[u8], validate: bool) -> (Vec<u16>, Option<usize>, usize) {
    let mut out = vec![0u16; input.len()];
    let r = utf8_to_utf16::convert_with(be, input, &mut out, validate);
    out.truncate(r.written);
    (out, r.error_at, r.consumed)
}

fn utf16_side(be: Backend, input: &[u16]) -> (Vec<u8>, Option<usize>, usize) {
    let mut out = vec![0u8; 3 * input.len()];
    let r = utf16_to_utf8::convert_with(be, input, &mut out);
    out.truncate(r.written);
    (out, r.error_at, r.consumed)
}

fn worked_example() -> Outcome {
    let c = CodePoint::new(0x93E1).unwrap();
    let u8s = codec::encode_utf8(c);
    let u16s = codec::encode_utf16(c);
    let mut ok = *u8s == [0xE9, 0x8F, 0xA1] && *u16s == [0x93E1];
    for be in backends() {
        ok &= utf8_side(be, &[0xE9, 0x8F, 0xA1], true).0 == [0x93E1];
        ok &= utf16_side(be, &[0x93E1]).0 == [0xE9, 0x8F, 0xA1];
    }
    check(ok, format!("U+93E1 -> utf8 {:02X?}, utf16 {:04X?}", &*u8s, &*u16s))
}

fn exhaustive_scalar_sweep() -> Outcome {
    let start = Instant::now();
    let mut count = 0usize;
    let mut all8 = Vec::with_capacity(4 << 20);
    let mut all16 = Vec::with_capacity(2 << 20);
    for c in CodePoint::all() {
        count += 1;
        let e8 = codec::encode_utf8(c);
        let e16 = codec::encode_utf16(c);
        if codec::decode_utf8_char(&e8, 0) != Ok((c, e8.len())) || codec::decode_utf16_char(&e16, 0) != Ok((c, e16.len())) {
            return Fail(format!("U+{:04X} does not round-trip", c.value()));
        }
        all8.extend_from_slice(&e8);
        all16.extend_from_slice(&e16);
    }
    for be in backends() {
        let (to16, err, _) = utf8_side(be, &all8, true);
        if err.is_some() || to16 != all16 {
            return Fail(format!("utf8 -> utf16 of all scalars differs ({be})"));
        }
        let (back, err, _) = utf16_side(be, &to16);
        if err.is_some() || back != all8 {
            return Fail(format!("utf16 -> utf8 of all scalars differs ({be})"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(count == 1_112_064 && secs < 5.0, format!("{count} scalar values, both compositions, {secs:.2} s"))
}

fn exhaustive_validation() -> Outcome {
    let start = Instant::now();
    let bes = backends();
    let mut checked = 0u64;
    let mut agree = |s: &[u8]| -> bool {
        checked += 1;
        let expect = oracle_first_error(s).is_none();
        codec::count_codepoints_utf8(s).is_ok() == expect
            && bes.iter().all(|&be| validate::validate_utf8_with(be, s) == expect)
    };
    for a in 0..=255u8 {
        if !agree(&[a]) {
            return Fail(format!("disagree on {a:02x}"));
        }
        for b in 0..=255u8 {
            if !agree(&[a, b]) {
                return Fail(format!("disagree on {a:02x} {b:02x}"));
            }
            for c in 0..=255u8 {
                if !agree(&[a, b, c]) {
                    return Fail(format!("disagree on {a:02x} {b:02x} {c:02x}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1_000_000 {
        // Bias the lead byte toward multi-byte leads so the 4-byte rules are
        // exercised, not just rejected at the first byte.
        let mut s: [u8; 4] = rng.gen();
        if rng.gen_bool(0.75) {
            s[0] = rng.gen_range(0xC0..=0xFF);
            for x in &mut s[1..] {
                if rng.gen_bool(0.8) {
                    *x = rng.gen_range(0x80..=0xBF);
                }
            }
        }
        if !agree(&s) {
            return Fail(format!("disagree on {s:02x?}"));
        }
    }
    // Also the length-1 oracle must agree with well_formed_len in isolation.
    debug_assert_eq!(well_formed_len(&[0x41]), Some(1));

    // UTF-16: every ordered pair over class representatives.
    let reps: Vec<u16> = [
        vec![0x0000, 0x0041, 0x007F],
        vec![0x0080, 0x07FF],
        vec![0x0800, 0x93E1, 0xD7FF, 0xE000, 0xFFFF],
        vec![0xD800, 0xDA00, 0xDBFF],
        vec![0xDC00, 0xDE00, 0xDFFF],
    ]
    .concat();
    let mut pairs = 0;
    for &a in &reps {
        for &b in &reps {
            pairs += 1;
            let units = [a, b];
            let expect = oracle_utf16_to_utf8(&units).1;
            for &be in &bes {
                if validate::validate_utf16_with(be, &units).err().map(|e| e.at) != expect
                    || codec::count_codepoints_utf16(&units).err().map(|e| e.at) != expect
                {
                    return Fail(format!("utf16 pair {units:04x?}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 120.0, format!("{checked} UTF-8 sequences, {pairs} UTF-16 pairs, {secs:.1} s"))
}

fn differential_fuzz() -> Outcome {
    let start = Instant::now();
    let backend = Backend::detect();
    let report = fuzz::run(&FuzzConfig { seed: 1, iterations: 1_000_000, max_len: 256, mutate: false, backend });
    let secs = start.elapsed().as_secs_f64();
    let detail = format!(
        "{} cases ({} random, {} profile, {} mutated), {} MB, backend {backend}, {secs:.0} s",
        report.iterations,
        report.random_cases,
        report.profile_cases,
        report.mutated_cases,
        report.bytes_checked >> 20
    );
    match report.divergence {
        Some(d) => Fail(format!("{detail}: divergence {d:?}")),
        None => check(report.iterations == 1_000_000 && secs < 300.0, detail),
    }
}

fn boundary_matrix() -> Outcome {
    let start = Instant::now();
    let texts = [
        "a".repeat(300),
        "é".repeat(200),
        "鏡".repeat(120),
        "😀".repeat(90),
        "aé鏡😀 Grüße, 世界! ".repeat(20),
        "0123456789ab😀".repeat(30),
    ];
    let mut cases = 0;
    for text in &texts {
        let bytes = text.as_bytes();
        let units: Vec<u16> = text.encode_utf16().collect();
        for off in 0..16 {
            for len in 0..=256 {
                if off + len > bytes.len() || off + len > units.len() {
                    continue;
                }
                let s8 = &bytes[off..off + len];
                let s16 = &units[off..off + len];
                let (e16, e8err) = oracle_utf8_to_utf16(s8);
                let (e8, e16err) = oracle_utf16_to_utf8(s16);
                for be in backends() {
                    cases += 1;
                    let got = utf8_side(be, s8, true);
                    if (&got.0, got.1) != (&e16, e8err) {
                        return Fail(format!("utf8 {be} off {off} len {len}"));
                    }
                    if e8err.is_none() && utf8_side(be, s8, false).0 != e16 {
                        return Fail(format!("utf8 non-validating {be} off {off} len {len}"));
                    }
                    let got = utf16_side(be, s16);
                    if (&got.0, got.1) != (&e8, e16err) {
                        return Fail(format!("utf16 {be} off {off} len {len}"));
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 60.0, format!("{cases} slice/backend combinations, {secs:.2} s"))
}

fn table_shape() -> Outcome {
    let t = tables::tables();
    let pack = t.utf16.total_bytes();
    let [a, b, c] = t.utf8.partition_sizes();
    let masks = t.utf8.masks.len();
    let mask_width_ok = t.utf8.mask_bytes() == 16 * masks;
    let note = if masks == 209 { "matches 209".to_string() } else { format!("differs from 209 by {}", 209 - masks as i64) };
    check(
        pack == 2 * 256 * 17 && mask_width_ok,
        format!("pack tables {pack} bytes; {masks} masks of 16 bytes (cases {a}/{b}/{c}), {note} [soft]"),
    )
}

const LIPSUM: [(&str, [f64; 4], f64); 9] = [
    ("Arabic", [22.0, 78.0, 0.0, 0.0], 1.8),
    ("Chinese", [1.0, 0.0, 99.0, 0.0], 3.0),
    ("Emoji", [0.0, 0.0, 0.0, 100.0], 4.0),
    ("Hebrew", [22.0, 78.0, 0.0, 0.0], 1.8),
    ("Hindi", [16.0, 0.0, 84.0, 0.0], 2.7),
    ("Japanese", [5.0, 0.0, 95.0, 0.0], 2.9),
    ("Korean", [27.0, 1.0, 72.0, 0.0], 2.5),
    ("Latin", [100.0, 0.0, 0.0, 0.0], 1.0),
    ("Russian", [19.0, 81.0, 0.0, 0.0], 1.8),
];

fn corpus_dir() -> PathBuf {
    std::env::var_os("VTRANS_CORPUS")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/lipsum"))
}

fn corpus_statistics() -> Outcome {
    let dir = corpus_dir();
    let mut rows = Vec::new();
    for (lang, pct, avg8) in LIPSUM {
        let path = dir.join(format!("{lang}-Lipsum.utf8.txt"));
        let Ok(bytes) = std::fs::read(&path) else {
            return Skip(format!(
                "lipsum corpus not found at {} (run scripts/fetch_corpus.sh or set VTRANS_CORPUS)",
                dir.display()
            ));
        };
        let s = match stats::corpus_stats(&bytes) {
            Ok(s) => s,
            Err(e) => return Fail(format!("{lang}: invalid UTF-8 at {}", e.at)),
        };
        let pct_ok = s.percentages().iter().zip(pct).all(|(got, want)| (got - want).abs() <= 1.0);
        let avg_ok = (s.avg_bytes_per_char_utf8 - avg8).abs() <= 0.05;
        if !(pct_ok && avg_ok) {
            return Fail(format!("{lang}: got {:.1?} avg {:.2}, expected {pct:?} avg {avg8}", s.percentages(), s.avg_bytes_per_char_utf8));
        }
        rows.push(format!("{lang} {:.0}/{:.0}/{:.0}/{:.0} {:.2}", s.pct_1byte, s.pct_2byte, s.pct_3byte, s.pct_4byte, s.avg_bytes_per_char_utf8));
    }
    Pass(rows.join(", "))
}

fn min_ns(records: &[BenchRecord], dir: Direction, imp: Impl) -> u64 {
    records.iter().find(|r| r.direction == dir && r.implementation == imp).map(|r| r.min_ns).unwrap_or(0)
}

fn performance() -> Outcome {
    let ascii: Vec<u8> = b"The quick brown fox jumps over the lazy dog. ".iter().copied().cycle().take(64 * 1024).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let two_byte = fuzz::profile_text(&mut rng, [5, 95, 0, 0], 36 * 1024);
    let backend = simd::active_backend();
    let reps = 300;
    let a = bench::bench_utf8("ascii", &ascii, reps, backend).expect("valid");
    let b = bench::bench_utf8("two-byte", two_byte.as_bytes(), reps, backend).expect("valid");
    let ratio = |rs: &[BenchRecord], d| min_ns(rs, d, Impl::Scalar) as f64 / min_ns(rs, d, Impl::Simd).max(1) as f64;
    let r1 = ratio(&a, Direction::Utf8ToUtf16);
    let r2 = ratio(&b, Direction::Utf8ToUtf16);
    let r3 = ratio(&a, Direction::Utf16ToUtf8);
    let detail = format!(
        "backend {backend}: utf8->utf16 ascii {r1:.1}x (>= 5), two-byte {r2:.1}x (>= 1.5); utf16->utf8 ascii {r3:.1}x (>= 3); \
         min ns simd/scalar {}/{}, {}/{}, {}/{}",
        min_ns(&a, Direction::Utf8ToUtf16, Impl::Simd),
        min_ns(&a, Direction::Utf8ToUtf16, Impl::Scalar),
        min_ns(&b, Direction::Utf8ToUtf16, Impl::Simd),
        min_ns(&b, Direction::Utf8ToUtf16, Impl::Scalar),
        min_ns(&a, Direction::Utf16ToUtf8, Impl::Simd),
        min_ns(&a, Direction::Utf16ToUtf8, Impl::Scalar),
    );
    if backend == Backend::Emulated {
        // Ratios are not meaningful for the emulation; check equivalence only.
        let same = utf8_side(Backend::Emulated, &ascii, true).0 == codec::scalar_utf8_to_utf16_vec(&ascii).0
            && utf8_side(Backend::Emulated, two_byte.as_bytes(), true).0 == two_byte.encode_utf16().collect::<Vec<_>>();
        return check(same, format!("{detail}; emulated backend, equivalence only"));
    }
    check(r1 >= 5.0 && r2 >= 1.5 && r3 >= 3.0, detail)
}

fn fast_path_instrumentation() -> Outcome {
    let ascii: Vec<u8> = (0..8192).map(|i| b'a' + (i % 26) as u8).collect();
    let two: String = "éж".repeat(2048);
    let mut pass = true;
    let mut details = Vec::new();
    for be in backends() {
        let mut out = vec![0u16; ascii.len()];
        let (_, c) = utf8_to_utf16::convert_counted(be, &ascii, &mut out, true);
        let share = c.ascii_block_bytes as f64 / ascii.len() as f64;
        let mut out = vec![0u16; two.len()];
        let (_, d) = utf8_to_utf16::convert_counted(be, two.as_bytes(), &mut out, true);
        let inner = d.inner_iterations().max(1);
        let aaaa = d.two_byte16 as f64 / inner as f64;
        pass &= share >= 0.98 && aaaa > 0.5;
        details.push(format!("{be}: ascii block bytes {:.1}%, 0xaaaa on {:.1}% of {} iterations", 100.0 * share, 100.0 * aaaa, inner));
    }
    check(pass, details.join("; "))
}

fn benchmark_methodology() -> Outcome {
    let text = "mixed text ñ 鏡 😀 ".repeat(300);
    let recs = bench::bench_utf8("mixed", text.as_bytes(), 200, simd::active_backend()).expect("valid");
    let ordered = recs.iter().all(|r| r.min_ns as f64 <= r.mean_ns);
    let flags_consistent = recs.iter().all(|r| r.spread_warning == (r.spread() > bench::SPREAD_LIMIT));
    let noisy = recs.iter().filter(|r| r.spread_warning).count();
    check(
        ordered && flags_consistent,
        format!("min <= mean on {} records; {noisy} flagged above 1% spread (warning only)", recs.len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("worked example U+93E1", worked_example),
        ("exhaustive scalar sweep", exhaustive_scalar_sweep),
        ("exhaustive validation", exhaustive_validation),
        ("differential equivalence", differential_fuzz),
        ("boundary matrix", boundary_matrix),
        ("table shape", table_shape),
        ("corpus statistics", corpus_statistics),
        ("performance ratios", performance),
        ("fast-path instrumentation", fast_path_instrumentation),
        ("benchmark methodology", benchmark_methodology),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str()) || *p == n.to_string()) {
            continue;
        }
        let (tag, detail) = match f() {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Skip(d) => ("SKIP", d),
        };
        println!("criterion {n:2} {tag} {name}: {detail}");
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
