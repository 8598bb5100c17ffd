//! The order-120 group on ten parameters, an orbit, and stability of `H/Π`.

use catalan_forms::group::{generate_group, generators, orbit, reference_primed, stability_check};
use catalan_forms::hyper::{sci, EvalMode};

fn main() -> catalan_forms::Result<()> {
    let g = generate_group()?;
    println!("order {}, longest word {}", g.order(), g.max_word_length());
    let c = reference_primed();
    println!("c = {c}");
    let orb = orbit(&c, &g)?;
    let admissible = orb.iter().filter(|o| o.admissible).count();
    println!("orbit of size {}, {admissible} admissible", orb.len());
    for (name, sigma) in generators() {
        let s = stability_check(&c, &sigma, 256, &EvalMode::Extrapolated)?;
        println!("{name}: {}  residual {}", sigma.cycles(), sci(&s.residual));
    }
    Ok(())
}
