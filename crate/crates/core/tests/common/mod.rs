//! Test-side value of Catalan's constant, independent of the library's
//! alternating-series acceleration.
#![allow(dead_code)]

use catalan_forms::arith::BigRat;
use catalan_forms::hyper::HpReal;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `G = (1/2)·A·B + (3/8)·C` with
/// `A = Σ (−1/3)^k/(2k+1) = π/(2√3)`,
/// `B = Σ 3^-k/(2k+1) = (√3/2)·ln(2+√3)` and
/// `C = Σ (n!)²/((2n)!(2n+1)²)`,
/// all summed in fixed point with 64 guard bits.
pub fn g_oracle(bits: u32) -> HpReal {
    let w = bits + 64;
    let s = BigInt::one() << w;
    let (mut a, mut b) = (BigInt::zero(), BigInt::zero());
    let mut p3 = BigInt::one();
    let mut k = 0u64;
    loop {
        let t = &s / (&p3 * (2 * k + 1));
        if t.is_zero() {
            break;
        }
        if k % 2 == 0 {
            a += &t;
        } else {
            a -= &t;
        }
        b += &t;
        p3 *= 3;
        k += 1;
    }
    let mut p = s.clone();
    let mut c = s.clone();
    let mut n = 1u64;
    while !p.is_zero() {
        p = p * n / (2 * (2 * n - 1));
        c += &p / ((2 * n + 1) * (2 * n + 1));
        n += 1;
    }
    let g = &a * &b / (2 * &s) + 3 * c / 8;
    HpReal::from_rat(&BigRat::new(g, s), bits)
}

/// `2^-bits` as a rational.
pub fn ulp(bits: u32) -> BigRat {
    BigRat::new(BigInt::one(), BigInt::one() << bits)
}

pub fn ten_pow_neg(k: u32) -> BigRat {
    BigRat::new(BigInt::one(), BigInt::from(10).pow(k))
}
