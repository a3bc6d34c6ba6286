use std::fmt;

use serde::{Serialize, Serializer};

use super::int::{gcd, EInt};
use crate::error::{Error, Result};

/// An element `num/den` of ℚ(σ), kept reduced with `arg(den) ∈ [0, π/3)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EFrac {
    num: EInt,
    den: EInt,
}

impl EFrac {
    pub fn new(num: EInt, den: EInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(EFrac { num, den: EInt::one() });
        }
        let g = gcd(&num, &den)?;
        let (n, d) = (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"));
        let u = EInt::unit(-(d.sector6() as i64));
        Ok(EFrac { num: &n * &u, den: &d * &u })
    }

    pub fn from_eint(x: EInt) -> Self {
        EFrac { num: x, den: EInt::one() }
    }

    pub fn num(&self) -> &EInt {
        &self.num
    }

    pub fn den(&self) -> &EInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value in ℤ[σ], if integral.
    pub fn as_eint(&self) -> Option<EInt> {
        self.num.exact_div(&self.den)
    }

    pub fn add(&self, o: &EFrac) -> EFrac {
        EFrac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &EFrac) -> EFrac {
        EFrac::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn mul(&self, o: &EFrac) -> EFrac {
        EFrac::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn recip(&self) -> Result<EFrac> {
        EFrac::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &EFrac) -> Result<EFrac> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn neg(&self) -> EFrac {
        EFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for EFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for EFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

impl Serialize for EFrac {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            num: &'a EInt,
            den: &'a EInt,
        }
        Raw { num: &self.num, den: &self.den }.serialize(s)
    }
}
