//! Derives the polynomial relation between `s` and `j` by exact linear algebra
//! and compares it with a candidate relation.
//!
//! ```text
//! cargo run --release --example sj_relation
//! ```

use sporadic::qseries::{
    derive_sj_relation, format_relation, printed_relation_residual, RelationSearch,
};

fn main() -> sporadic::Result<()> {
    match derive_sj_relation(24, 1, 80)? {
        RelationSearch::Found(rel) => {
            println!(
                "deg_s {}, deg_j {}, checked mod w^{}",
                rel.deg_s(),
                rel.deg_j(),
                rel.verified_to
            );
            println!("{}", format_relation(&rel.coeffs));
        }
        RelationSearch::NoneInBounds => println!("no relation in bounds"),
    }
    let residual = printed_relation_residual(40);
    println!(
        "candidate relation residual starts {:?}",
        residual.leading()
    );
    Ok(())
}
