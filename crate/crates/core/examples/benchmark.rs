// Timing the transcoders the way the `bench` command does: many repetitions
// in memory, keeping the minimum, reported in gigacharacters per second.
//
// ```bash
// cargo run --release --example benchmark
// ```

use std::error::Error;

use vtrans::harness::bench;
use vtrans::simd;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ascii = "The quick brown fox jumps over the lazy dog. ".repeat(1500);
    let russian = "Съешь же ещё этих мягких французских булок. ".repeat(800);
    let backend = simd::active_backend();
    let mut records = Vec::new();
    records.extend(bench::bench_utf8("ascii", ascii.as_bytes(), 50, backend)?);
    records.extend(bench::bench_utf8("russian", russian.as_bytes(), 50, backend)?);
    for r in &records {
        println!(
            "{:8} {:?} {:6?} {:7.3} Gchar/s  spread {:5.1}%{}",
            r.dataset,
            r.direction,
            r.implementation,
            r.gchars_per_sec,
            100.0 * r.spread(),
            if r.spread_warning { "  (noisy)" } else { "" }
        );
    }
    // Line-delimited JSON, one record per line.
    bench::write_json(&records[..1], std::io::stdout())?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
