use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::real::HpReal;
use crate::arith::{factorial, BigRat, QuarterInt};
use crate::error::{Error, Result};

/// `rational_part · (√π)^sqrt_pi_power`.
///
/// The exponent is signed so that quotients of Γ-values stay representable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaExact {
    #[serde(serialize_with = "crate::arith::ser_rat")]
    pub rational_part: BigRat,
    pub sqrt_pi_power: i32,
}

impl GammaExact {
    pub fn new(rational_part: BigRat, sqrt_pi_power: i32) -> Self {
        GammaExact {
            rational_part,
            sqrt_pi_power,
        }
    }

    pub fn one() -> Self {
        GammaExact::new(BigRat::one(), 0)
    }

    pub fn rational(r: BigRat) -> Self {
        GammaExact::new(r, 0)
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt_pi_power == 0
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        GammaExact::new(&self.rational_part * r, self.sqrt_pi_power)
    }

    pub fn to_real(&self, bits: u32) -> HpReal {
        HpReal::sqrt_pi_pow(self.sqrt_pi_power, bits + 8)
            .mul_rat(&self.rational_part)
            .with_bits(bits)
    }
}

impl Mul for &GammaExact {
    type Output = GammaExact;
    fn mul(self, rhs: &GammaExact) -> GammaExact {
        GammaExact::new(
            &self.rational_part * &rhs.rational_part,
            self.sqrt_pi_power + rhs.sqrt_pi_power,
        )
    }
}

impl Div for &GammaExact {
    type Output = GammaExact;
    fn div(self, rhs: &GammaExact) -> GammaExact {
        assert!(
            !rhs.rational_part.is_zero(),
            "division by a zero GammaExact"
        );
        GammaExact::new(
            &self.rational_part / &rhs.rational_part,
            self.sqrt_pi_power - rhs.sqrt_pi_power,
        )
    }
}

impl fmt::Display for GammaExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sqrt_pi_power {
            0 => write!(f, "{}", self.rational_part),
            k => write!(f, "{}·√π^{k}", self.rational_part),
        }
    }
}

fn small(n: &BigInt, what: &str) -> Result<u64> {
    n.to_u64()
        .filter(|&m| m <= 100_000)
        .ok_or_else(|| Error::Domain(format!("{what} {n} is too large for exact Γ")))
}

/// Γ at an integer or half-odd argument.
pub fn gamma_exact(a: &QuarterInt) -> Result<GammaExact> {
    if a.is_integer() {
        if !a.is_positive() {
            return Err(Error::GammaPole(a.to_string()));
        }
        let m = small(&a.floor(), "argument")?;
        return Ok(GammaExact::rational(BigRat::from_integer(factorial(m - 1))));
    }
    if !a.is_half_odd() {
        return Err(Error::Domain(format!(
            "Γ({a}) is only supported at integers and half-integers"
        )));
    }
    let m = a.floor();
    if !m.is_negative() {
        // Γ(m + 1/2) = (2m)! √π / (4^m m!)
        let m = small(&m, "argument")?;
        let num = factorial(2 * m);
        let den = (BigInt::one() << (2 * m)) * factorial(m);
        return Ok(GammaExact::new(BigRat::new(num, den), 1));
    }
    // Walk down from Γ(1/2) with Γ(z) = Γ(z + 1)/z.
    let steps = small(&(-m), "argument")?;
    let mut value = BigRat::one();
    let mut z = BigRat::new(BigInt::one(), BigInt::from(2));
    for _ in 0..steps {
        z -= BigRat::one();
        value /= &z;
    }
    Ok(GammaExact::new(value, 1))
}

pub fn gamma_exact_rat(a: &BigRat) -> Result<GammaExact> {
    gamma_exact(&QuarterInt::try_from_rat(a)?)
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)` at half-integral arguments.
pub fn beta_exact(x: &BigRat, y: &BigRat) -> Result<GammaExact> {
    let gx = gamma_exact_rat(x)?;
    let gy = gamma_exact_rat(y)?;
    let gxy = gamma_exact_rat(&(x + y))?;
    Ok(&(&gx * &gy) / &gxy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn half(h: i64) -> QuarterInt {
        QuarterInt::from_halves(h)
    }

    #[test]
    fn table_values() {
        assert_eq!(gamma_exact(&half(1)).unwrap(), GammaExact::new(int(1), 1));
        assert_eq!(
            gamma_exact(&half(5)).unwrap(),
            GammaExact::new(rat(3, 4), 1)
        );
        assert_eq!(gamma_exact(&half(-1)).unwrap(), GammaExact::new(int(-2), 1));
        assert_eq!(
            gamma_exact(&half(-3)).unwrap(),
            GammaExact::new(rat(4, 3), 1)
        );
        assert_eq!(
            gamma_exact(&QuarterInt::from_int(5)).unwrap(),
            GammaExact::rational(int(24))
        );
    }

    #[test]
    fn poles_and_quarters_rejected() {
        assert!(matches!(
            gamma_exact(&QuarterInt::from_int(0)),
            Err(Error::GammaPole(_))
        ));
        assert!(matches!(
            gamma_exact(&QuarterInt::from_int(-3)),
            Err(Error::GammaPole(_))
        ));
        assert!(matches!(
            gamma_exact(&QuarterInt::from_quarters(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn beta_of_ones() {
        assert_eq!(beta_exact(&int(1), &int(1)).unwrap(), GammaExact::one());
        // B(1/2, 1/2) = π
        assert_eq!(
            beta_exact(&rat(1, 2), &rat(1, 2)).unwrap(),
            GammaExact::new(int(1), 2)
        );
    }

    #[test]
    fn numeric_value_of_gamma_half() {
        let g = gamma_exact(&half(3)).unwrap().to_real(128);
        // Γ(3/2) = √π/2
        assert_eq!(g.to_decimal(30), "0.886226925452758013649083741670");
    }

    proptest! {
        #[test]
        fn functional_equation(h in -40i64..40) {
            // z half-odd, so neither z nor z + 1 is a pole
            let z = half(2 * h + 1);
            let lhs = gamma_exact(&(&z + &QuarterInt::from_int(1))).unwrap();
            let rhs = gamma_exact(&z).unwrap().scale(&z.to_rat());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn functional_equation_integers(m in 1i64..60) {
            let z = QuarterInt::from_int(m);
            let lhs = gamma_exact(&QuarterInt::from_int(m + 1)).unwrap();
            let rhs = gamma_exact(&z).unwrap().scale(&z.to_rat());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
