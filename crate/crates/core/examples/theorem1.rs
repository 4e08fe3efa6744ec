//! `F((p-1)/2) = gamma(p) mod p`, with `gamma` read off `g` and cross-checked
//! against point counts and the CM formula.
//!
//! ```text
//! cargo run --release --example theorem1
//! ```

use sporadic::congruence::{verify_theorem1, GammaCheck};
use sporadic::pointcount::MemoTraces;
use sporadic::qseries::g_series;

fn main() -> sporadic::Result<()> {
    let g = g_series(100);
    let report = verify_theorem1(97, &g)?;
    print!("{}", report.to_text());
    println!("all pass: {}", report.all_pass());

    let traces = MemoTraces::default();
    for p in [5u64, 7, 11, 13, 31] {
        let check = GammaCheck::compute(p, &g, &traces)?;
        println!(
            "gamma({p}): extraction {:?}, point count {}, cm {}",
            check.extraction, check.pointcount, check.cm
        );
    }
    Ok(())
}
