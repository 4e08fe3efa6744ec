//! Traces and determinants across all eight sign patterns of the quadratic
//! characters `(-1/p), (2/p), (3/p)`.
//!
//! ```text
//! cargo run --release --example serre_faltings
//! ```

use sporadic::arith::primes_in;
use sporadic::congruence::serre_faltings_on;
use sporadic::pointcount::MemoTraces;
use sporadic::qseries::g_series;

fn main() -> sporadic::Result<()> {
    let g = g_series(80);
    let sf = serre_faltings_on(&primes_in(5, 73), &g, &MemoTraces::default())?;
    for (p, pattern) in &sf.patterns {
        println!("{p:>3} {pattern:?}");
    }
    print!("{}", sf.report.to_text());
    println!("patterns covered: {}/8", sf.covered);
    Ok(())
}
