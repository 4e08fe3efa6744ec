//! The third-order equation satisfied by `P(t)`, in the theta and the
//! ordinary-derivative reading.
//!
//! ```text
//! cargo run --release --example picard_fuchs
//! ```

use sporadic::qseries::{p_in_t, verify_picard_fuchs, ThetaOperator};

fn main() {
    let op = ThetaOperator::f_sequence();
    println!("operator recovers triple {:?}", op.recurrence());
    println!("P(t) = {}", p_in_t(8));

    let check = verify_picard_fuchs(200);
    println!(
        "theta reading vanishes mod t^200: {}",
        check.theta_vanishes()
    );
    match check.ordinary_residual.leading() {
        Some((e, c)) => println!("ordinary reading leaves {c} t^{e}"),
        None => println!("ordinary reading also vanishes"),
    }
}
