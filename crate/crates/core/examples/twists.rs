//! Rules out every nontrivial quadratic twist of the congruence by exhibiting
//! a failing prime, or shows the twist coincides with the original.
//!
//! ```text
//! cargo run --release --example twists
//! ```

use sporadic::congruence::twist_elimination;
use sporadic::pointcount::MemoTraces;
use sporadic::qseries::g_series;

fn main() -> sporadic::Result<()> {
    let g = g_series(101);
    for w in twist_elimination(&g, 100, &MemoTraces::default())? {
        println!("{w}");
    }
    Ok(())
}
