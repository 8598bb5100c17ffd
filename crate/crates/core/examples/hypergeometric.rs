//! Whipple's transformation and the Euler-integral value of the forms.

use catalan_forms::arith::rat;
use catalan_forms::hyper::{euler_integral_check, sci, whipple_check, whipple_family, EvalMode};

fn main() -> catalan_forms::Result<()> {
    for n in 1..=3 {
        let p = whipple_family(n);
        let w = whipple_check(
            [&p[0], &p[1], &p[2], &p[3], &p[4]],
            256,
            &EvalMode::Extrapolated,
        )?;
        println!(
            "Whipple n={n}: 6F5 = {}  residual {}",
            w.lhs.value.to_decimal(30),
            sci(&w.residual)
        );
    }
    for n in 1..=3 {
        let e = euler_integral_check(n, 128, &EvalMode::Extrapolated)?;
        println!(
            "Euler n={n}: {}  residual {}",
            e.form_decimal,
            sci(&e.residual)
        );
    }
    // direct summation of the slowly convergent 3F2(1) with a rigorous tail bound
    let mode = EvalMode::certified(rat(1, 1_000_000));
    let e = euler_integral_check(1, 64, &mode)?;
    println!(
        "certified n=1: residual {} within error {}",
        sci(&e.residual),
        sci(&e.error)
    );
    Ok(())
}
