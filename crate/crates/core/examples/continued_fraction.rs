//! Convergents of `6G = 5 + 516/q(2) + p(3)/q(4) + …` and their accuracy.

use catalan_forms::cf::{cf_vs_recursion, digits_report, CFExpansion};
use catalan_forms::hyper::catalan;

fn main() -> catalan_forms::Result<()> {
    let g = catalan(512);
    for row in digits_report(1..=12, &g)? {
        println!(
            "N={:2}  digits={:3}  expected≈{:.1}",
            row.n, row.digits, row.expected
        );
    }
    let rep = cf_vs_recursion(&CFExpansion::new(), 30)?;
    println!(
        "convergent(N) = 6·ṽ_(N+1)/ũ_(N+1) for N ≤ 30: {}",
        rep.first_failure.is_none()
    );
    Ok(())
}
