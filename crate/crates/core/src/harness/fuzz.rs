//! Seeded differential fuzzing of the vector transcoders against the scalar
//! codec.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codec::{self, CodePoint, TranscodeResult};
use crate::simd::Backend;
use crate::tables::{self, Utf16Tables, Utf8Tables};
use crate::{utf16_to_utf8, utf8_to_utf16};

/// Character mixes by UTF-8 length (percent of 1, 2, 3, 4-byte characters)
/// matching the lipsum corpus files.
pub const PROFILES: [(&str, [u32; 4]); 9] = [
    ("arabic", [22, 78, 0, 0]),
    ("chinese", [1, 0, 99, 0]),
    ("emoji", [0, 0, 0, 100]),
    ("hebrew", [22, 78, 0, 0]),
    ("hindi", [16, 0, 84, 0]),
    ("japanese", [5, 0, 95, 0]),
    ("korean", [27, 1, 72, 0]),
    ("latin", [100, 0, 0, 0]),
    ("russian", [19, 81, 0, 0]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    RandomBytes,
    Profile(&'static str),
    Mutated,
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub seed: u64,
    pub iterations: u64,
    pub max_len: usize,
    /// Corrupt one shuffle mask per direction before running.
    pub mutate: bool,
    pub backend: Backend,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { seed: 1, iterations: 10_000, max_len: 512, mutate: false, backend: Backend::detect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Reproducer {
    Utf8 { input_hex: String, validate: bool },
    Utf16 { units: Vec<u16> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Divergence {
    pub iteration: u64,
    pub kind: CaseKind,
    pub reproducer: Reproducer,
    pub simd: (TranscodeResult, String),
    pub scalar: (TranscodeResult, String),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzReport {
    pub iterations: u64,
    pub random_cases: u64,
    pub profile_cases: u64,
    pub mutated_cases: u64,
    pub bytes_checked: u64,
    /// First divergence only, minimized; the run stops there.
    pub divergence: Option<Divergence>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

/// A random scalar value with the given UTF-8 length.
pub fn random_char<R: Rng>(rng: &mut R, utf8_len: usize) -> CodePoint {
    let raw = match utf8_len {
        1 => rng.gen_range(0..0x80),
        2 => rng.gen_range(0x80..0x800),
        3 => loop {
            let c = rng.gen_range(0x800..0x10000);
            if !(0xD800..0xE000).contains(&c) {
                break c;
            }
        },
        _ => rng.gen_range(0x10000..0x110000),
    };
    CodePoint::new(raw).expect("in range")
}

/// Valid text of `chars` characters drawn with the given length weights.
pub fn profile_text<R: Rng>(rng: &mut R, weights: [u32; 4], chars: usize) -> String {
    let total: u32 = weights.iter().sum();
    (0..chars)
        .map(|_| {
            let mut pick = rng.gen_range(0..total);
            let mut len = 1;
            for w in weights {
                if pick < w {
                    break;
                }
                pick -= w;
                len += 1;
            }
            char::from(random_char(rng, len))
        })
        .collect()
}

struct Case {
    kind: CaseKind,
    utf8: Vec<u8>,
    utf16: Vec<u16>,
}

fn generate<R: Rng>(rng: &mut R, max_len: usize) -> Case {
    let len = if max_len == 0 { 0 } else { rng.gen_range(0..=max_len) };
    match rng.gen_range(0..3) {
        0 => {
            let mut utf8 = vec![0u8; len];
            rng.fill(&mut utf8[..]);
            let utf16 = (0..len / 2)
                .map(|_| match rng.gen_range(0..4) {
                    0 => rng.gen_range(0xD800..0xE000),
                    1 => rng.gen_range(0..0x80),
                    _ => rng.gen(),
                })
                .collect();
            Case { kind: CaseKind::RandomBytes, utf8, utf16 }
        }
        k => {
            let (name, weights) = PROFILES[rng.gen_range(0..PROFILES.len())];
            let mut text = profile_text(rng, weights, len / 2).into_bytes();
            text.truncate(len);
            while codec::count_codepoints_utf8(&text).is_err() {
                text.pop();
            }
            let mut utf16: Vec<u16> = std::str::from_utf8(&text).unwrap().encode_utf16().collect();
            if k == 1 {
                return Case { kind: CaseKind::Profile(name), utf8: text, utf16 };
            }
            if !text.is_empty() {
                let i = rng.gen_range(0..text.len());
                text[i] = mutate_byte(rng, text[i]);
            }
            if !utf16.is_empty() {
                let i = rng.gen_range(0..utf16.len());
                utf16[i] = match rng.gen_range(0..3) {
                    0 => rng.gen_range(0xD800..0xDC00),
                    1 => rng.gen_range(0xDC00..0xE000),
                    _ => utf16[i] ^ (1 << rng.gen_range(0..16)),
                };
            }
            Case { kind: CaseKind::Mutated, utf8: text, utf16 }
        }
    }
}

fn mutate_byte<R: Rng>(rng: &mut R, b: u8) -> u8 {
    match rng.gen_range(0..4) {
        0 => b ^ (1 << rng.gen_range(0..8)),
        1 => [0x80, 0xBF, 0xC0, 0xC1, 0xE0, 0xED, 0xF0, 0xF4, 0xF5, 0xFF][rng.gen_range(0..10)],
        2 => 0x80 | (b & 0x3F),
        _ => rng.gen(),
    }
}

fn utf8_outcome(be: Backend, t: &Utf8Tables, input: &[u8], validate: bool) -> (TranscodeResult, Vec<u16>) {
    let mut out = vec![0u16; input.len()];
    let r = utf8_to_utf16::convert_with_tables(be, t, input, &mut out, validate);
    out.truncate(r.written);
    (r, out)
}

fn utf16_outcome(be: Backend, t: &Utf16Tables, input: &[u16]) -> (TranscodeResult, Vec<u8>) {
    let mut out = vec![0u8; 3 * input.len()];
    let r = utf16_to_utf8::convert_with_tables(be, t, input, &mut out);
    out.truncate(r.written);
    (r, out)
}

fn utf8_diverges(be: Backend, t: &Utf8Tables, input: &[u8], validate: bool) -> bool {
    let expect = codec::scalar_utf8_to_utf16_vec(input);
    // Without validation only well-formed input has a defined result.
    if !validate && !expect.1.is_ok() {
        return false;
    }
    let (r, out) = utf8_outcome(be, t, input, validate);
    (out, r) != expect
}

fn utf16_diverges(be: Backend, t: &Utf16Tables, input: &[u16]) -> bool {
    let (r, out) = utf16_outcome(be, t, input);
    (out, r) != codec::scalar_utf16_to_utf8_vec(input)
}

/// Greedy shrinking: drop chunks, then single elements, while `fails` holds.
pub fn minimize<T: Clone>(input: &[T], fails: impl Fn(&[T]) -> bool) -> Vec<T> {
    let mut cur = input.to_vec();
    let mut chunk = cur.len().max(1).next_power_of_two();
    while chunk >= 1 {
        let mut i = 0;
        while i < cur.len() {
            let mut cand = cur.clone();
            cand.drain(i..(i + chunk).min(cur.len()));
            if fails(&cand) {
                cur = cand;
            } else {
                i += chunk;
            }
        }
        chunk /= 2;
    }
    cur
}

/// Copies of the shared tables with one shuffle mask per direction broken.
pub fn mutated_tables() -> (Utf8Tables, Utf16Tables) {
    let base = tables::tables();
    let mut t8 = base.utf8.clone();
    // Six two-byte characters in a window, as in Cyrillic or Arabic text.
    let idx = t8.entry(0xAAA).mask_index as usize;
    t8.masks[idx].swap(0, 1);
    let mut t16 = base.utf16.clone();
    // No ASCII units in the register.
    t16.two_byte[0x00].mask.swap(0, 1);
    (t8, t16)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn run(config: &FuzzConfig) -> FuzzReport {
    let owned;
    let (t8, t16) = if config.mutate {
        owned = mutated_tables();
        (&owned.0, &owned.1)
    } else {
        let t = tables::tables();
        (&t.utf8, &t.utf16)
    };
    let be = config.backend;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = FuzzReport::default();
    for iteration in 0..config.iterations {
        let case = generate(&mut rng, config.max_len);
        report.iterations += 1;
        match case.kind {
            CaseKind::RandomBytes => report.random_cases += 1,
            CaseKind::Profile(_) => report.profile_cases += 1,
            CaseKind::Mutated => report.mutated_cases += 1,
        }
        report.bytes_checked += (case.utf8.len() + 2 * case.utf16.len()) as u64;

        for validate in [true, false] {
            if utf8_diverges(be, t8, &case.utf8, validate) {
                let small = minimize(&case.utf8, |c| utf8_diverges(be, t8, c, validate));
                let (r, out) = utf8_outcome(be, t8, &small, validate);
                let (eout, er) = codec::scalar_utf8_to_utf16_vec(&small);
                report.divergence = Some(Divergence {
                    iteration,
                    kind: case.kind,
                    reproducer: Reproducer::Utf8 { input_hex: hex(&small), validate },
                    simd: (r, format!("{out:04x?}")),
                    scalar: (er, format!("{eout:04x?}")),
                });
                return report;
            }
        }
        if utf16_diverges(be, t16, &case.utf16) {
            let small = minimize(&case.utf16, |c| utf16_diverges(be, t16, c));
            let (r, out) = utf16_outcome(be, t16, &small);
            let (eout, er) = codec::scalar_utf16_to_utf8_vec(&small);
            report.divergence = Some(Divergence {
                iteration,
                kind: case.kind,
                reproducer: Reproducer::Utf16 { units: small },
                simd: (r, hex(&out)),
                scalar: (er, hex(&eout)),
            });
            return report;
        }
    }
    report
}
