//! Three-term congruences `c_{mp^r} - A c_{mp^(r-1)} + B c_{mp^(r-2)}`
//! on the weight three form, and the linear version on the transfer sequence.
//!
//! ```text
//! cargo run --release --example asd_grid
//! ```

use sporadic::congruence::{verify_asd, verify_beukers_transfer};
use sporadic::pointcount::MemoTraces;
use sporadic::qseries::g_series;

fn main() -> sporadic::Result<()> {
    let traces = MemoTraces::default();
    let g = g_series(400);
    let asd = verify_asd(&g, &[5, 7, 11, 13], 9, 2, &traces)?;
    print!("{}", asd.to_text());

    let transfer = verify_beukers_transfer(400, &[5, 7], 5, 2, &traces)?;
    print!("{}", transfer.to_csv());
    println!(
        "asd pass: {}, transfer pass: {}",
        asd.all_pass(),
        transfer.all_pass()
    );
    Ok(())
}
