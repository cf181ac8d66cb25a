// Running the differential fuzzer, and checking that it notices a broken
// shuffle table.

use std::error::Error;

use vtrans::harness::fuzz::{self, FuzzConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let clean = fuzz::run(&FuzzConfig { seed: 1, iterations: 2_000, max_len: 256, ..FuzzConfig::default() });
    println!(
        "{} cases ({} random, {} profile, {} mutated), {} bytes: {}",
        clean.iterations,
        clean.random_cases,
        clean.profile_cases,
        clean.mutated_cases,
        clean.bytes_checked,
        if clean.passed() { "no divergence" } else { "DIVERGED" }
    );
    assert!(clean.passed());

    let broken = fuzz::run(&FuzzConfig { seed: 1, iterations: 2_000, max_len: 256, mutate: true, ..FuzzConfig::default() });
    let d = broken.divergence.expect("mutation must be detected");
    println!("mutated tables diverged at case {}: {:?}", d.iteration, d.reproducer);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
