//! The cover `t = u^3`: compares the trace with `F((p-1)/3)` alone and with
//! `F((p-1)/3) + F(2(p-1)/3)`.
//!
//! ```text
//! cargo run --release --example three_cover
//! ```

use sporadic::congruence::verify_three_cover;
use sporadic::pointcount::{surface_trace, Cover, FiberKind};

fn main() -> sporadic::Result<()> {
    let t = surface_trace(13, Cover::Three)?;
    for f in t
        .per_fiber
        .iter()
        .filter(|f| !matches!(f.kind, FiberKind::Smooth { .. }))
    {
        println!("  u = {:>3}: {}", f.param, f.kind);
    }
    println!("A_13 on the three-cover = {}", t.a);

    let report = verify_three_cover(61, &sporadic::pointcount::DirectTraces)?;
    print!("{}", report.to_text());
    Ok(())
}
