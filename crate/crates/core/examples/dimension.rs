//! Cusp form dimensions for odd weight, and the field-theory check on
//! `x^3 + 3x - 2`.
//!
//! ```text
//! cargo run --release --example dimension
//! ```

use sporadic::congruence::{cubic_inert_check, dim_cusp_forms};

fn main() -> sporadic::Result<()> {
    println!(
        "dim S_3, genus 0, six regular cusps: {}",
        dim_cusp_forms(3, 0, 6, 0, &[])?
    );
    println!("dim S_5, same group: {}", dim_cusp_forms(5, 0, 6, 0, &[])?);
    let inert: Vec<u64> = sporadic::arith::primes_in(5, 60)
        .into_iter()
        .filter(|&p| cubic_inert_check(p))
        .collect();
    println!("x^3 + 3x - 2 irreducible mod p for p in {inert:?}");
    Ok(())
}
