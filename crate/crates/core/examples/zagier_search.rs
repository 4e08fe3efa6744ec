//! Bounded search for triples `(A, B, C)` whose recurrence stays integral.
//!
//! ```text
//! cargo run --release --example zagier_search
//! ```

use sporadic::sequences::{search_integral, RecurrenceTriple};

fn main() {
    let hits = search_integral(0..=20, 0..=10, -20..=80, 30);
    println!("{} triples integral through u_30", hits.len());
    for h in hits.iter().filter(|h| h.nondegenerate) {
        let tag = if RecurrenceTriple::SPORADIC.contains(&h.triple) {
            "sporadic"
        } else if h.triple == RecurrenceTriple::APERY_B {
            "Apery b_n"
        } else {
            ""
        };
        println!("  {} {tag}", h.triple);
    }
}
