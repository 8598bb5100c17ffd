//! Exact `(ũ_n, ṽ_n)` with their power-of-two denominator certificates.

use catalan_forms::linear_forms::{forms_table, Family};
use catalan_forms::recurrence::{integrality_row, SeqKind, DEFAULT_SLACK};

fn main() -> catalan_forms::Result<()> {
    for (n, f) in forms_table(Family::Tilde, 0..=8)?.iter().enumerate() {
        let cu = integrality_row(n, &f.u, SeqKind::U, DEFAULT_SLACK);
        let cv = integrality_row(n, &f.v, SeqKind::V, DEFAULT_SLACK);
        println!(
            "n={n:2}  u={}  v={}  ord2(den u)={}  ord2(den D²v)={}",
            f.u, f.v, cu.exponent, cv.exponent
        );
    }
    Ok(())
}
