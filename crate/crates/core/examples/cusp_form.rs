//! The weight three form `g = P * theta(s)` and the series it is built from.
//!
//! ```text
//! cargo run --release --example cusp_form [terms]
//! ```

use sporadic::qseries::{
    g_series, j_series, p_series, p_series_by_composition, s_series, t_series,
};

fn main() {
    let n: i64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(24);
    println!("t = {}", t_series(n.min(12)));
    println!("s = {}", s_series(n.min(12)));
    println!("j = {}", j_series(n.min(6)));

    let p = p_series(n);
    assert_eq!(
        p,
        p_series_by_composition(n),
        "two constructions of P agree"
    );
    println!("P = {}", p.truncate(n.min(12)));

    let g = g_series(n);
    for (e, c) in g.iter().take(12) {
        println!("  c_{e:<3} = {c}");
    }
}
