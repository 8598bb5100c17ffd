//! Catalan's constant from a certified alternating sum and from the recursion.

use catalan_forms::arith::int;
use catalan_forms::hyper::{catalan, sci, HpReal};
use catalan_forms::recurrence::catalan_recursion;

fn main() -> catalan_forms::Result<()> {
    let bits = 400;
    let g = catalan(bits);
    println!("alternating sum: {}", g.to_decimal(100));
    let n = 50;
    let u = catalan_recursion().iterate(int(0), int(6), n)?;
    let v = catalan_recursion().iterate(int(-1), int(5), n)?;
    let x = &v[n] / &u[n];
    println!(
        "ṽ_{n}/ũ_{n}:       {}",
        HpReal::from_rat(&x, bits).to_decimal(100)
    );
    println!("difference       {}", sci(&(x - g.to_rat())));
    Ok(())
}
