//! Dense univariate polynomials over [`Rational`], tagged at the type level
//! with the variable they are written in.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{invalid, Error, Result};

/// Marker for a polynomial variable.
pub trait Variable: Copy + Default + Send + Sync + 'static {
    const SYMBOL: &'static str;
}

/// The Brauer loop parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Omega;

/// The central element of the affine superalgebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Level;

/// Free variable of the `Y_{m,l}` weight polynomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct T;

impl Variable for Omega {
    const SYMBOL: &'static str = "ω";
}
impl Variable for Level {
    const SYMBOL: &'static str = "K";
}
impl Variable for T {
    const SYMBOL: &'static str = "T";
}

/// Coefficients indexed by degree; the leading coefficient is nonzero unless
/// the polynomial is zero (empty vector).
pub struct Poly<V: Variable> {
    coeffs: Vec<Rational>,
    _var: PhantomData<V>,
}

pub type OmegaPoly = Poly<Omega>;
pub type KPoly = Poly<Level>;

impl<V: Variable> Clone for Poly<V> {
    fn clone(&self) -> Self {
        Poly::from_coeffs(self.coeffs.clone())
    }
}

impl<V: Variable> PartialEq for Poly<V> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl<V: Variable> Eq for Poly<V> {}

impl<V: Variable> Hash for Poly<V> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl<V: Variable> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Variable> Poly<V> {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, _var: PhantomData }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new(), _var: PhantomData }
    }

    pub fn one() -> Self {
        Self::constant(Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::ZERO, Rational::ONE])
    }

    /// `var + c`.
    pub fn linear(c: Rational) -> Self {
        Self::from_coeffs(vec![c, Rational::ONE])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.coeffs.get(deg).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::ZERO),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::ZERO);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn neg_ref(&self) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?.clone();
        let lead_inv = lead.recip()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Scale so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return invalid("polynomial division is not exact");
        }
        Ok(q)
    }

    /// Substitute `x -> x + c`.
    pub fn shift(&self, c: &Rational) -> Self {
        let mut acc = Self::zero();
        let lin = Self::linear(c.clone());
        for a in self.coeffs.iter().rev() {
            acc = acc.mul_ref(&lin).add_ref(&Self::constant(a.clone()));
        }
        acc
    }

    /// Common positive denominator and the integer numerators, highest degree first.
    pub fn integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(&c.denom());
        }
        let nums = self
            .coeffs
            .iter()
            .rev()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (den, nums)
    }

    /// Terms in descending degree with integer coefficients, e.g. `ω^2 + 3ω + 2`.
    fn fmt_integer_terms(nums: &[BigInt], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = nums.len() - 1;
        let mut first = true;
        for (i, c) in nums.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = deg - i;
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = d == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "{}", V::SYMBOL)?,
                _ => write!(f, "{}^{}", V::SYMBOL, d)?,
            }
        }
        Ok(())
    }
}

impl<V: Variable> fmt::Display for Poly<V> {
    /// Integer coefficients over a common positive denominator,
    /// e.g. `(ω^2 + 3ω + 2)/12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (den, nums) = self.integer_form();
        let multi = nums.iter().filter(|c| !c.is_zero()).count() > 1;
        if den.is_one() {
            return Self::fmt_integer_terms(&nums, f);
        }
        if multi {
            write!(f, "(")?;
            Self::fmt_integer_terms(&nums, f)?;
            write!(f, ")/{den}")
        } else {
            Self::fmt_integer_terms(&nums, f)?;
            write!(f, "/{den}")
        }
    }
}

impl<V: Variable> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<V: Variable> Serialize for Poly<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de, V: Variable> Deserialize<'de> for Poly<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Poly::from_coeffs(Vec::<Rational>::deserialize(d)?))
    }
}

impl<V: Variable> Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: Self) -> Poly<V> {
        self.add_ref(rhs)
    }
}
impl<V: Variable> Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: Self) -> Poly<V> {
        self.sub_ref(rhs)
    }
}
impl<V: Variable> Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Self) -> Poly<V> {
        self.mul_ref(rhs)
    }
}
impl<V: Variable> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        self.neg_ref()
    }
}

/// `binom(ω/2 + m - 2, r)` as a polynomial in ω.
pub fn half_binomial(m: i64, r: i64) -> Result<OmegaPoly> {
    if r < 0 {
        return invalid(format!("half_binomial: negative r = {r}"));
    }
    let mut acc = OmegaPoly::one();
    let half = Rational::frac(1, 2);
    for j in 0..r {
        // ω/2 + (m - 2 - j)
        let factor = OmegaPoly::from_coeffs(vec![Rational::from_int(m - 2 - j), half.clone()]);
        acc = acc.mul_ref(&factor);
    }
    let mut fact = Rational::ONE;
    for j in 1..=r {
        fact *= &Rational::from_int(j);
    }
    Ok(acc.scale(&fact.recip()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> OmegaPoly {
        OmegaPoly::from_coeffs(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn half_binomial_examples() {
        assert_eq!(half_binomial(2, 0).unwrap(), OmegaPoly::one());
        assert_eq!(half_binomial(2, 1).unwrap(), OmegaPoly::var().scale(&Rational::frac(1, 2)));
        assert_eq!(
            half_binomial(3, 1).unwrap(),
            OmegaPoly::from_coeffs(vec![Rational::ONE, Rational::frac(1, 2)])
        );
        assert!(half_binomial(3, -1).is_err());
        // binom(ω/2 + 1, 2) = (ω/2 + 1)(ω/2)/2 = (ω^2 + 2ω)/8
        assert_eq!(half_binomial(3, 2).unwrap().to_string(), "(ω^2 + 2ω)/8");
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[-1, 0, 1]); // ω^2 - 1
        let b = p(&[-1, 1]); // ω - 1
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.exact_div(&b).unwrap(), p(&[1, 1]));
        assert!(p(&[1, 1]).exact_div(&p(&[0, 1])).is_err());
        assert_eq!(p(&[2, 3]).gcd(&OmegaPoly::zero()), p(&[2, 3]).monic());
    }

    #[test]
    fn rendering() {
        let f = p(&[2, 3, 1]).scale(&Rational::frac(1, 12));
        assert_eq!(f.to_string(), "(ω^2 + 3ω + 2)/12");
        assert_eq!(p(&[0, -1]).to_string(), "-ω");
        assert_eq!(KPoly::linear(Rational::from_int(-3)).to_string(), "K - 3");
    }

    #[test]
    fn shift_matches_evaluation() {
        let f = p(&[1, -2, 0, 5]);
        let c = Rational::frac(3, 2);
        let g = f.shift(&c);
        for x in -3..4 {
            let x = Rational::from_int(x);
            assert_eq!(g.eval(&x), f.eval(&(&x + &c)));
        }
    }
}
