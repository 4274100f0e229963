use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::{OmegaPoly, Rational};
use crate::error::{Error, Result};

/// Reduced rational function in ω: `gcd(num, den) = 1`, `den` monic.
/// Structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: OmegaPoly,
    den: OmegaPoly,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: OmegaPoly::zero(), den: OmegaPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        RatFun { num: OmegaPoly::constant(c), den: OmegaPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    pub fn omega() -> Self {
        Self::from_poly(OmegaPoly::var())
    }

    pub fn from_poly(p: OmegaPoly) -> Self {
        RatFun { num: p, den: OmegaPoly::one() }
    }

    /// The unique reduced representative of `num / den`.
    pub fn normalize(num: OmegaPoly, den: OmegaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.degree() == Some(0) {
            let c = den.coeffs()[0].recip()?;
            return Ok(RatFun { num: num.scale(&c), den: OmegaPoly::one() });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lead = den.leading().expect("nonzero").recip()?;
        Ok(RatFun { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn numer(&self) -> &OmegaPoly {
        &self.num
    }

    pub fn denom(&self) -> &OmegaPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Value at `w0`; fails when the reduced denominator vanishes there.
    pub fn eval(&self, w0: &Rational) -> Result<Rational> {
        let d = self.den.eval(w0);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluation(w0.clone()));
        }
        Ok(&self.num.eval(w0) / &d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalize(self.num.add_ref(&other.num), self.den.clone())
                .expect("nonzero denominator");
        }
        Self::normalize(
            self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den)),
            self.den.mul_ref(&other.den),
        )
        .expect("nonzero denominator")
    }

    pub fn neg_ref(&self) -> Self {
        RatFun { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFun { num: self.num.mul_ref(&other.num), den: OmegaPoly::one() };
        }
        Self::normalize(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
            .expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self> {
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.recip()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for RatFun {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<OmegaPoly> for RatFun {
    fn from(p: OmegaPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: Self) -> RatFun {
        self.add_ref(rhs)
    }
}
impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: Self) -> RatFun {
        self.sub_ref(rhs)
    }
}
impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: Self) -> RatFun {
        self.mul_ref(rhs)
    }
}
impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: Self) -> RatFun {
        self.checked_div(rhs).expect("rational function division by zero")
    }
}
impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        self.neg_ref()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // Clear all coefficient denominators so both sides render with integers.
        let (a, _) = self.num.integer_form();
        let (b, _) = self.den.integer_form();
        let l = Rational::from(num_integer::Integer::lcm(&a, &b));
        let num = self.num.scale(&l);
        let den = self.den.scale(&l);
        let wrap = |p: &OmegaPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        let ns = num.to_string();
        let ns = if wrap(&num) { format!("({ns})") } else { ns };
        let ds = den.to_string();
        let ds = if wrap(&den) { format!("({ds})") } else { ds };
        write!(f, "{ns}/{ds}")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> OmegaPoly {
        OmegaPoly::from_coeffs(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(RatFun::normalize(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap(), RatFun::from_poly(p(&[1, 1])));
        assert_eq!(RatFun::normalize(OmegaPoly::zero(), p(&[2, 1])).unwrap(), RatFun::zero());
        let f = RatFun::normalize(p(&[0, 2]), p(&[4, 2])).unwrap();
        assert_eq!(f.numer(), &p(&[0, 1]));
        assert_eq!(f.denom(), &p(&[2, 1]));
        assert_eq!(RatFun::normalize(p(&[1]), OmegaPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn eval_examples() {
        let f = RatFun::normalize(p(&[0, 1]), p(&[2, 1])).unwrap();
        assert_eq!(f.eval(&Rational::ONE).unwrap(), Rational::frac(1, 3));
        assert!(matches!(f.eval(&Rational::from_int(-2)), Err(Error::PoleAtEvaluation(_))));
        // γ_3(ω) = (ω + 1)/(ω + 4)
        let g3 = RatFun::normalize(p(&[1, 1]), p(&[4, 1])).unwrap();
        assert_eq!(g3.eval(&Rational::from_int(-1)).unwrap(), Rational::ZERO);
    }

    #[test]
    fn display() {
        let f = RatFun::normalize(p(&[0, 1]), p(&[4, 2])).unwrap();
        assert_eq!(f.to_string(), "ω/(2ω + 4)");
        let g = RatFun::normalize(p(&[1, 1]), p(&[0, 3])).unwrap();
        assert_eq!(g.to_string(), "(ω + 1)/3ω");
    }
}
