//! `F(n)` two ways, and a look at its relatives.
//!
//! ```text
//! cargo run --release --example sequences
//! ```

use sporadic::sequences::{apery_b, f_closed, franel, zagier_u, RecurrenceTriple};

fn main() {
    let rec = zagier_u(RecurrenceTriple::F, 12)
        .integers()
        .expect("integral");
    println!(
        "{:>3} {:>16} {:>16} {:>12} {:>10}",
        "n", "F(n) recurrence", "F(n) closed", "b_n", "franel"
    );
    for (n, v) in rec.iter().enumerate() {
        let n = n as u64;
        println!(
            "{n:>3} {v:>16} {:>16} {:>12} {:>10}",
            f_closed(n),
            apery_b(n),
            franel(n)
        );
    }

    // A generic triple leaves the integers almost at once.
    let prefix = zagier_u(RecurrenceTriple::new(5, 2, 3), 6);
    println!("(5,2,3): integral prefix = {}", prefix.integral);
}
