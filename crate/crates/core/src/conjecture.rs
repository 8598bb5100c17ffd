//! Perron-basis diagnostics for the `G` recursion and the explicit sequences
//! `x_n = (−1)ⁿ/⌊λⁿ⌋`, `y_n = ⌊λⁿ⌋`, `λ = (11+5√5)/2`, which satisfy a
//! recursion with limits `a(n) → −11`, `b(n) → −1` but whose denominators
//! grow faster than geometrically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{is_rational_square, ln_abs_int, BigRat};
use crate::error::Result;
use crate::hyper::{catalan, HpReal};
use crate::recurrence::{catalan_recursion, char_roots, remainder_bits};

/// `L₀ = 2`, `L₁ = 11`, `L_{n+1} = 11·L_n + L_{n−1}`; `L_n = λⁿ + λ′ⁿ`.
pub fn lucas(n_max: usize) -> Vec<BigInt> {
    let mut l = vec![BigInt::from(2), BigInt::from(11)];
    while l.len() <= n_max {
        let k = l.len();
        let next = 11 * &l[k - 1] + &l[k - 2];
        l.push(next);
    }
    l.truncate(n_max + 1);
    l
}

/// `⌊λⁿ⌋` for `n = 0..=n_max`. Since `λ′ = −1/λ`, `λⁿ = L_n − λ′ⁿ` lies just
/// below `L_n` for even `n` and just above it for odd `n`.
pub fn floor_lambda_pows(n_max: usize) -> Vec<BigInt> {
    lucas(n_max)
        .into_iter()
        .enumerate()
        .map(|(n, l)| if n % 2 == 0 { l - 1 } else { l })
        .collect()
}

pub fn floor_lambda_pow(n: usize) -> BigInt {
    floor_lambda_pows(n).pop().expect("nonempty")
}

/// `λ` to `bits` bits.
pub fn lambda(bits: u32) -> HpReal {
    let s = HpReal::from_i64(125, bits + 8).sqrt();
    (HpReal::from_i64(11, bits + 8) + s)
        .mul_rat(&BigRat::new(1.into(), 2.into()))
        .with_bits(bits)
}

/// `⌊λⁿ⌋` from a high-precision power, for cross-checking the integer rule.
pub fn floor_lambda_pow_numeric(n: u32, digits: u32) -> BigInt {
    let bits = (digits as f64 / std::f64::consts::LOG10_2) as u32 + 4 * n + 16;
    lambda(bits).powi(n).floor()
}

/// The coefficients `(a(n), b(n))` with `x_{n+1} + a(n)x_n + b(n)x_{n−1} = 0`
/// for both sequences. Requires `n ≥ 1`.
pub fn ab_counterexample(n: usize) -> (BigRat, BigRat) {
    let f = floor_lambda_pows(n + 1);
    ab_from_floors(&f[n - 1], &f[n], &f[n + 1])
}

fn ab_from_floors(fm: &BigInt, f: &BigInt, fp: &BigInt) -> (BigRat, BigRat) {
    let r = |a: &BigInt, b: &BigInt| BigRat::new(a.clone(), b.clone());
    let b = -r(fm, fp) * r(&(f * f + fp * fp), &(fm * fm + f * f));
    let a = r(f, fm) * &b + r(f, fp);
    (a, b)
}

pub fn x_sequence(n_max: usize) -> Vec<BigRat> {
    floor_lambda_pows(n_max)
        .into_iter()
        .enumerate()
        .map(|(n, f)| {
            let sign = if n % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            BigRat::new(sign, f)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub n_max: usize,
    /// `x_{n+1} + a(n)x_n + b(n)x_{n−1} = 0` exactly for all `1 ≤ n ≤ N`.
    pub x_exact: bool,
    pub y_exact: bool,
    pub first_failure: Option<usize>,
    /// `|y_{N+1}/y_N − λ|`.
    pub y_ratio_residual: f64,
    /// `|x_{N+1}/x_N + 1/λ|`.
    pub x_ratio_residual: f64,
    pub a_limit_residual: f64,
    pub b_limit_residual: f64,
    /// Discriminant of `λ² − 11λ − 1`.
    pub discriminant: i64,
    pub roots_irrational: bool,
}

impl CounterexampleReport {
    pub fn exact_pass(&self) -> bool {
        self.x_exact && self.y_exact && self.roots_irrational
    }
}

pub fn verify_counterexample(n_max: usize) -> CounterexampleReport {
    let f = floor_lambda_pows(n_max + 1);
    let x = x_sequence(n_max + 1);
    let mut first_failure = None;
    let (mut x_exact, mut y_exact) = (true, true);
    let mut last_ab = (BigRat::zero(), BigRat::zero());
    for n in 1..=n_max {
        let (a, b) = ab_from_floors(&f[n - 1], &f[n], &f[n + 1]);
        let xr = &x[n + 1] + &a * &x[n] + &b * &x[n - 1];
        let yr = BigRat::from_integer(f[n + 1].clone())
            + &a * BigRat::from_integer(f[n].clone())
            + &b * BigRat::from_integer(f[n - 1].clone());
        x_exact &= xr.is_zero();
        y_exact &= yr.is_zero();
        if first_failure.is_none() && !(xr.is_zero() && yr.is_zero()) {
            first_failure = Some(n);
        }
        last_ab = (a, b);
    }
    let bits = 64 + (n_max as u32) * 8;
    let lam = lambda(bits);
    let y_ratio = HpReal::from_rat(&BigRat::new(f[n_max + 1].clone(), f[n_max].clone()), bits);
    let x_ratio = HpReal::from_rat(&(&x[n_max + 1] / &x[n_max]), bits);
    let inv = HpReal::one(bits).div(&lam);
    let disc = BigRat::from_integer(125.into());
    CounterexampleReport {
        n_max,
        x_exact,
        y_exact,
        first_failure,
        y_ratio_residual: (&y_ratio - &lam).abs().to_f64(),
        x_ratio_residual: (&x_ratio + &inv).abs().to_f64(),
        a_limit_residual: crate::hyper::f64_of(
            &(&last_ab.0 + BigRat::from_integer(11.into())).abs(),
        ),
        b_limit_residual: crate::hyper::f64_of(&(&last_ab.1 + BigRat::one()).abs()),
        discriminant: 125,
        roots_irrational: !is_rational_square(&disc),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DenLcmTrace {
    /// `log(lcm(den x₀, …, den x_n))/n`, with 0 at `n = 0`.
    pub trace: Vec<f64>,
}

impl DenLcmTrace {
    pub fn max(&self) -> f64 {
        self.trace.iter().copied().fold(0.0, f64::max)
    }

    /// First index from which the trace strictly increases up to the end.
    pub fn increasing_from(&self) -> Option<usize> {
        let n = self.trace.len();
        (1..n)
            .rev()
            .take_while(|&i| self.trace[i] > self.trace[i - 1])
            .last()
            .map(|i| i - 1)
    }
}

pub fn den_lcm_growth(seq: &[BigRat]) -> DenLcmTrace {
    let mut l = BigInt::one();
    let trace = seq
        .iter()
        .enumerate()
        .map(|(n, x)| {
            l = l.lcm(x.denom());
            if n == 0 {
                0.0
            } else {
                ln_abs_int(&l) / n as f64
            }
        })
        .collect();
    DenLcmTrace { trace }
}

#[derive(Clone, Debug, Serialize)]
pub struct PerronRow {
    pub n: usize,
    pub u_ratio: f64,
    pub r_ratio: f64,
    pub u_residual: f64,
    pub r_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerronReport {
    pub root_larger: String,
    pub root_smaller: String,
    /// Product of the limit roots, exact from the characteristic polynomial.
    pub root_product: String,
    pub rows: Vec<PerronRow>,
}

impl PerronReport {
    pub fn at(&self, n: usize) -> Option<&PerronRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Ratios `ũ_{n+1}/ũ_n` and `r̃_{n+1}/r̃_n` for `1 ≤ n ≤ N`, with
/// `r̃_n = ũ_n·G − ṽ_n` and `G` computed to sufficient precision.
pub fn perron_basis_check(n_max: usize) -> Result<PerronReport> {
    let rec = catalan_recursion();
    let u = rec.iterate(BigRat::zero(), BigRat::from_integer(6.into()), n_max + 1)?;
    let v = rec.iterate(-BigRat::one(), BigRat::from_integer(5.into()), n_max + 1)?;
    let bits = remainder_bits(n_max + 1);
    let roots = char_roots(&rec, 128)?;
    let g = catalan(bits);
    let r: Vec<HpReal> = u
        .iter()
        .zip(&v)
        .map(|(u, v)| HpReal::from_rat(&(u * g.to_rat() - v), bits))
        .collect();
    let big = roots.root_larger.to_f64();
    let small = roots.root_smaller.to_f64();
    let rows = (1..=n_max)
        .map(|n| {
            let ur = crate::hyper::f64_of(&(&u[n + 1] / &u[n]));
            let rr = r[n + 1].div(&r[n]).to_f64();
            PerronRow {
                n,
                u_ratio: ur,
                r_ratio: rr,
                u_residual: (ur - big).abs(),
                r_residual: (rr - small).abs(),
            }
        })
        .collect();
    Ok(PerronReport {
        root_larger: roots.root_larger.to_decimal(20),
        root_smaller: roots.root_smaller.to_decimal(20),
        root_product: roots.root_product().to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::linear_forms::tilde_un_vn;

    #[test]
    fn floors() {
        let f = floor_lambda_pows(2);
        assert_eq!(f, [1, 11, 122].map(BigInt::from).to_vec());
        for n in 0..=64 {
            assert_eq!(
                floor_lambda_pow(n),
                floor_lambda_pow_numeric(n as u32, 100),
                "n={n}"
            );
        }
    }

    #[test]
    fn lucas_is_power_sum() {
        let l = lucas(30);
        let bits = 256;
        let lam = lambda(bits);
        let lp = HpReal::from_i64(-1, bits).div(&lam);
        for (n, ln) in l.iter().enumerate() {
            let s = lam.powi(n as u32) + lp.powi(n as u32);
            assert!((s - HpReal::from_int(ln, bits)).abs_below(&rat(1, 1_000_000)));
        }
    }

    #[test]
    fn first_coefficients() {
        let (a, b) = ab_counterexample(1);
        assert_eq!(b, rat(-15005, 14884));
        let x = x_sequence(2);
        assert!((&x[2] + &a * &x[1] + &b * &x[0]).is_zero());
    }

    #[test]
    fn counterexample_exact_and_limits() {
        let r = verify_counterexample(200);
        assert!(r.exact_pass());
        assert!(r.a_limit_residual < 1e-15 && r.b_limit_residual < 1e-15);
        let r = verify_counterexample(100);
        assert!(r.y_ratio_residual < 1e-20 && r.x_ratio_residual < 1e-20);
    }

    #[test]
    fn lcm_traces() {
        let x = den_lcm_growth(&x_sequence(40));
        assert!(x.increasing_from().unwrap() <= 10, "{:?}", x.trace);
        let u: Vec<BigRat> = (0..=100).map(|n| tilde_un_vn(n).unwrap().u).collect();
        let t = den_lcm_growth(&u);
        let bound = 4.0 * std::f64::consts::LN_2 + 16.0 * std::f64::consts::LN_2 / 100.0;
        assert!(t.trace[100] <= bound);
        let ones = den_lcm_growth(&vec![BigRat::one(); 10]);
        assert_eq!(ones.max(), 0.0);
    }

    #[test]
    fn perron_ratios() {
        let p = perron_basis_check(100).unwrap();
        let row = p.at(100).unwrap();
        assert!(row.u_residual < 1e-3, "{row:?}");
        assert!(row.r_residual < 1e-2, "{row:?}");
        assert_eq!(p.root_product, "-1");
    }
}
