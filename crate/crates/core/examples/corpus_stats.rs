// Per-character length histograms, as used to describe benchmark corpora.

use std::error::Error;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vtrans::harness::{fuzz, stats};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = stats::corpus_stats("aé".as_bytes())?;
    println!("\"aé\": {:?} utf8 avg {}", s.percentages(), s.avg_bytes_per_char_utf8);

    // Synthetic texts shaped like the lipsum files.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("{:10} {:>6} {:>6} {:>5} {:>5} {:>5} {:>5}", "", "utf16", "utf8", "1B", "2B", "3B", "4B");
    for (name, weights) in fuzz::PROFILES {
        let text = fuzz::profile_text(&mut rng, weights, 20_000);
        let s = stats::corpus_stats(text.as_bytes())?;
        let [a, b, c, d] = s.percentages();
        println!(
            "{name:10} {:6.1} {:6.1} {a:5.0} {b:5.0} {c:5.0} {d:5.0}",
            s.avg_bytes_per_char_utf16, s.avg_bytes_per_char_utf8
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
