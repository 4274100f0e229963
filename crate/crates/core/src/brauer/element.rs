use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::diagram::BrauerDiagram;
use crate::coeff::{RatFun, Rational};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Transposition,
    Contraction,
}

/// Finite linear combination of same-size diagrams over `RatFun`; no zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BrauerElement {
    size: usize,
    terms: BTreeMap<BrauerDiagram, RatFun>,
}

impl BrauerElement {
    pub fn zero(m: usize) -> Self {
        BrauerElement { size: m, terms: BTreeMap::new() }
    }

    pub fn identity(m: usize) -> Result<Self> {
        Ok(Self::from_diagram(BrauerDiagram::identity(m)?))
    }

    pub fn scalar(m: usize, c: RatFun) -> Result<Self> {
        Ok(Self::identity(m)?.scale(&c))
    }

    pub fn from_diagram(d: BrauerDiagram) -> Self {
        Self::term(d, RatFun::one())
    }

    pub fn term(d: BrauerDiagram, c: RatFun) -> Self {
        let mut x = Self::zero(d.size());
        x.add_term(d, c);
        x
    }

    /// `s_ab` or `ε_ab` with 1-based legs `a ≠ b` in `1..=m`.
    pub fn generator(kind: GeneratorKind, a: usize, b: usize, m: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return invalid("1-based legs start at 1");
        }
        Self::generator0(kind, a - 1, b - 1, m)
    }

    /// `s_ab` or `ε_ab` with 0-based legs; this is also the labelling
    /// `0..=2m` of the size-`2m+1` instances.
    pub fn generator0(kind: GeneratorKind, a: usize, b: usize, m: usize) -> Result<Self> {
        if a == b || a >= m || b >= m {
            return invalid(format!("legs {a}, {b} invalid for size {m}"));
        }
        let mut w: Vec<usize> = (0..m).collect();
        w.swap(a, b);
        let s = BrauerDiagram::from_permutation(&w)?;
        let d = match kind {
            GeneratorKind::Transposition => s,
            // ε_ab = (s_ab)^{t_a}
            GeneratorKind::Contraction => s.partial_transpose(a)?,
        };
        Ok(Self::from_diagram(d))
    }

    /// Shorthand for the 0-based transposition `s_ab`.
    pub fn s(a: usize, b: usize, m: usize) -> Self {
        Self::generator0(GeneratorKind::Transposition, a, b, m).expect("valid legs")
    }

    /// Shorthand for the 0-based contraction `ε_ab`.
    pub fn eps(a: usize, b: usize, m: usize) -> Self {
        Self::generator0(GeneratorKind::Contraction, a, b, m).expect("valid legs")
    }

    /// `φ_ab = s_ab − ε_ab`, 0-based.
    pub fn phi(a: usize, b: usize, m: usize) -> Self {
        &Self::s(a, b, m) - &Self::eps(a, b, m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BrauerDiagram, &RatFun)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &BrauerDiagram) -> RatFun {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, d: BrauerDiagram, c: RatFun) {
        debug_assert_eq!(d.size(), self.size);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        if c.is_zero() {
            return Self::zero(self.size);
        }
        BrauerElement {
            size: self.size,
            terms: self.terms.iter().map(|(d, x)| (*d, x.mul_ref(c))).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.size);
        }
        BrauerElement {
            size: self.size,
            terms: self.terms.iter().map(|(d, x)| (*d, x.scale(c))).collect(),
        }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(format!("Brauer sizes {} and {}", self.size, other.size)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, c.clone());
        }
        Ok(out)
    }

    /// Bilinear extension of diagram composition; each loop contributes ω.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut omega_pow = vec![RatFun::one()];
        // Products with a common result diagram and loop count are summed
        // before the single multiplication by ω^loops.
        let mut acc: BTreeMap<(BrauerDiagram, u32), RatFun> = BTreeMap::new();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let (d, loops) = x.compose(y)?;
                let p = a.mul_ref(b);
                acc.entry((d, loops))
                    .and_modify(|s| *s = s.add_ref(&p))
                    .or_insert(p);
            }
        }
        let mut out = Self::zero(self.size);
        for ((d, loops), c) in acc {
            while omega_pow.len() <= loops as usize {
                let next = omega_pow.last().expect("nonempty").mul_ref(&RatFun::omega());
                omega_pow.push(next);
            }
            out.add_term(d, c.mul_ref(&omega_pow[loops as usize]));
        }
        Ok(out)
    }

    /// Linear extension of `t_a`, 0-based leg.
    pub fn partial_transpose(&self, a: usize) -> Result<Self> {
        let mut out = Self::zero(self.size);
        for (d, c) in &self.terms {
            out.add_term(d.partial_transpose(a)?, c.clone());
        }
        Ok(out)
    }

    /// Places the element on legs `offset..offset+k` of size `m`.
    pub fn embed(&self, m: usize, offset: usize) -> Result<Self> {
        let mut out = Self::zero(m);
        for (d, c) in &self.terms {
            out.add_term(d.embed(m, offset)?, c.clone());
        }
        Ok(out)
    }

    /// Product of a nonempty sequence of same-size elements.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a BrauerElement>) -> Result<Self> {
        let mut it = factors.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
        it.try_fold(first.clone(), |acc, x| acc.multiply(x))
    }
}

impl Add for &BrauerElement {
    type Output = BrauerElement;
    fn add(self, rhs: Self) -> BrauerElement {
        self.try_add(rhs).expect("Brauer sizes agree")
    }
}

impl Sub for &BrauerElement {
    type Output = BrauerElement;
    fn sub(self, rhs: Self) -> BrauerElement {
        self.try_add(&-rhs).expect("Brauer sizes agree")
    }
}

impl Neg for &BrauerElement {
    type Output = BrauerElement;
    fn neg(self) -> BrauerElement {
        BrauerElement {
            size: self.size,
            terms: self.terms.iter().map(|(d, c)| (*d, c.neg_ref())).collect(),
        }
    }
}

impl Mul for &BrauerElement {
    type Output = BrauerElement;
    fn mul(self, rhs: Self) -> BrauerElement {
        self.multiply(rhs).expect("Brauer sizes agree")
    }
}

impl fmt::Display for BrauerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})[{d}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BrauerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for BrauerElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (d, c) in &self.terms {
            seq.serialize_element(&(c, d))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorKind::*;

    fn gen(kind: GeneratorKind, a: usize, b: usize, m: usize) -> BrauerElement {
        BrauerElement::generator(kind, a, b, m).unwrap()
    }

    #[test]
    fn generator_words() {
        let s1 = gen(Transposition, 1, 2, 3);
        let s2 = gen(Transposition, 2, 3, 3);
        let e2 = gen(Contraction, 2, 3, 3);
        assert_eq!(gen(Transposition, 1, 3, 3), &(&s1 * &s2) * &s1);
        assert_eq!(gen(Contraction, 1, 3, 3), &(&s1 * &e2) * &s1);
        assert_eq!(gen(Contraction, 3, 1, 3), gen(Contraction, 1, 3, 3));
        assert!(BrauerElement::generator(Transposition, 2, 2, 3).is_err());
        assert!(BrauerElement::generator(Contraction, 1, 4, 3).is_err());
    }

    #[test]
    fn small_products() {
        let e1 = gen(Contraction, 1, 2, 2);
        let s1 = gen(Transposition, 1, 2, 2);
        assert_eq!(&e1 * &e1, e1.scale(&RatFun::omega()));
        assert_eq!(&e1 * &s1, e1);
        assert_eq!(&s1 * &s1, BrauerElement::identity(2).unwrap());
        let e1 = gen(Contraction, 1, 2, 3);
        let e2 = gen(Contraction, 2, 3, 3);
        assert_eq!(BrauerElement::product([&e1, &e2, &e1]).unwrap(), e1);
        let x = &e1 + &e2;
        assert_eq!(&BrauerElement::identity(3).unwrap() * &x, x);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let a = BrauerElement::identity(2).unwrap();
        let b = BrauerElement::identity(3).unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn element_transpose() {
        let s1 = gen(Transposition, 1, 2, 2);
        let e1 = gen(Contraction, 1, 2, 2);
        assert_eq!(s1.partial_transpose(0).unwrap(), e1);
        assert_eq!((&s1 + &e1).partial_transpose(1).unwrap(), &s1 + &e1);
    }
}
