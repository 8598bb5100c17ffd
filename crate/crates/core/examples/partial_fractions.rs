//! A rational summand with quarter-integer poles collapsed into `u·G − v`.

use catalan_forms::arith::{rat, QuarterInt};
use catalan_forms::linear_forms::{decompose, tails_to_form, tilde_r_data};

fn main() -> catalan_forms::Result<()> {
    // 1/(32 (t − 3/4)(t − 1/4)) sums to G
    let q = QuarterInt::from_quarters;
    let pf = decompose(&[], &[q(3), q(1)], &rat(1, 32))?;
    println!(
        "poles {:?}",
        pf.terms
            .iter()
            .map(|t| format!("{}: {}", t.pole, t.coeff))
            .collect::<Vec<_>>()
    );
    let f = tails_to_form(&pf)?;
    println!("sum = {}·G − {}", f.u, f.v);

    let (numer, denom, scale) = tilde_r_data(3);
    let f = tails_to_form(&decompose(&numer, &denom, &scale)?)?;
    println!("n=3: u={} v={}", f.u, f.v);
    Ok(())
}
