//! Frobenius traces of the fibration from fiber-by-fiber point counts.
//!
//! ```text
//! cargo run --release --example frobenius_traces [p]
//! ```

use sporadic::pointcount::{expected_det, rho_det, surface_trace, Cover, FiberKind};

fn main() -> sporadic::Result<()> {
    let p: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(7);
    let t = surface_trace(p, Cover::Two)?;
    for f in t
        .per_fiber
        .iter()
        .filter(|f| !matches!(f.kind, FiberKind::Smooth { .. }))
    {
        println!(
            "  s = {:>4}: {:<9} local trace {:>2}",
            f.param,
            f.kind.to_string(),
            f.local_trace
        );
    }
    println!("A_{p} = {}", t.a);
    println!("det = {}, (-24/p) p^2 = {}", rho_det(p)?, expected_det(p)?);

    println!("\n p    A_p  det");
    for p in [5u64, 7, 11, 13, 17, 19, 23] {
        println!(
            "{p:>2} {:>6} {:>4}",
            surface_trace(p, Cover::Two)?.a,
            rho_det(p)?
        );
    }
    Ok(())
}
