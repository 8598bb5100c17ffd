//! The order-two recursion: iteration, characteristic roots, growth rates.

use catalan_forms::arith::int;
use catalan_forms::recurrence::{catalan_recursion, char_roots, growth_diagnostics};

fn main() -> catalan_forms::Result<()> {
    let rec = catalan_recursion();
    let u = rec.iterate(int(0), int(6), 120)?;
    let v = rec.iterate(int(-1), int(5), 4)?;
    println!("u_2 = {}, v_2 = {}", u[2], v[2]);
    let roots = char_roots(&rec, 128)?;
    println!("λ² + ({})λ + ({}) = 0", roots.a0, roots.b0);
    println!(
        "roots {} and {}",
        roots.root_larger.to_decimal(20),
        roots.root_smaller.to_decimal(20)
    );
    let g = growth_diagnostics(&u);
    for n in [10, 40, 120] {
        let r = g.at(n).expect("nonzero");
        println!(
            "n={n:3}  |u_n|^(1/n) = {:.6}  (limit {:.6})",
            r.nth_root, g.target_larger
        );
    }
    Ok(())
}
