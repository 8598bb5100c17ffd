//! Perron ratios of the `G` recursion next to `x_n = (−1)ⁿ/⌊λⁿ⌋`, whose
//! denominators grow too fast for the geometric condition.

use catalan_forms::conjecture::{
    den_lcm_growth, perron_basis_check, verify_counterexample, x_sequence,
};

fn main() -> catalan_forms::Result<()> {
    let p = perron_basis_check(60)?;
    for n in [10, 30, 60] {
        let r = p.at(n).expect("row");
        println!(
            "n={n:2}  u ratio {:.8}  r ratio {:.8}",
            r.u_ratio, r.r_ratio
        );
    }
    let rep = verify_counterexample(200);
    println!(
        "explicit sequences satisfy their recursion exactly: {}",
        rep.exact_pass()
    );
    let t = den_lcm_growth(&x_sequence(40));
    println!(
        "log lcm(den x_0..x_n)/n at n = 10, 20, 40: {:.2} {:.2} {:.2}",
        t.trace[10], t.trace[20], t.trace[40]
    );
    Ok(())
}
