use std::fmt;

use rustc_hash::FxHashMap;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::coeff::{KPoly, Rational};
use crate::superspace::SuperModule;

/// Affine generator `x_α[r]`; the parity bit is that of `α`.
///
/// The derived order (mode, then basis index) is the PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub mode: i32,
    pub basis: u16,
    pub odd: bool,
}

impl Gen {
    pub fn with_mode(self, mode: i32) -> Gen {
        Gen { mode, ..self }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F[{},{}]", self.basis, self.mode)
    }
}

/// Nondecreasing sequence of generators, odd ones strictly increasing.
pub type Monomial = SmallVec<[Gen; 8]>;

pub(crate) fn monomial_parity(m: &[Gen]) -> u8 {
    (m.iter().filter(|g| g.odd).count() % 2) as u8
}

/// Element of the vacuum module in PBW normal form, coefficients
/// polynomial in the level `K`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct VacuumElement {
    terms: FxHashMap<Monomial, KPoly>,
}

impl VacuumElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·|0⟩`.
    pub fn vacuum(c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(Monomial::new(), KPoly::constant(c));
        out
    }

    pub fn monomial(m: Monomial, c: KPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
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

    pub fn coeff(&self, m: &[Gen]) -> KPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &KPoly)> {
        self.terms.iter()
    }

    /// Terms in increasing monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &KPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: KPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &KPoly, other: &VacuumElement) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.mul_ref(c));
        }
    }

    pub fn add_assign(&mut self, other: &VacuumElement) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone());
        }
    }

    pub fn sub(&self, other: &VacuumElement) -> VacuumElement {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), v.neg_ref());
        }
        out
    }

    pub fn mul_poly(&self, c: &KPoly) -> VacuumElement {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    /// Substitutes a value for `K`.
    pub fn at_level(&self, k: &Rational) -> VacuumElement {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), KPoly::constant(v.eval(k)));
        }
        out
    }

    /// Largest `K`-degree among the coefficients.
    pub fn level_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(|c| c.degree()).max()
    }

    /// Parity of the first stored monomial (the element is assumed homogeneous).
    pub fn parity(&self) -> u8 {
        self.terms.keys().next().map_or(0, |m| monomial_parity(m))
    }

    /// Whether every monomial has the given parity.
    pub fn is_homogeneous(&self, parity: u8) -> bool {
        self.terms.keys().all(|m| monomial_parity(m) == parity)
    }

    /// Sum of modes of each monomial, if it is the same for all of them.
    pub fn mode_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.iter().map(|g| g.mode as i64).sum::<i64>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl SuperModule for VacuumElement {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign(other);
    }
    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        VacuumElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect() }
    }
    fn parity(&self) -> u8 {
        VacuumElement::parity(self)
    }
}

impl fmt::Display for VacuumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for g in m {
                write!(f, "{g}")?;
            }
            f.write_str("|0>")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VacuumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct TermDump<'a> {
    monomial: Vec<(u16, i32)>,
    #[serde(rename = "coeffK")]
    coeff: &'a KPoly,
}

impl Serialize for VacuumElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.sorted_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (m, c) in terms {
            seq.serialize_element(&TermDump { monomial: m.iter().map(|g| (g.basis, g.mode)).collect(), coeff: c })?;
        }
        seq.end()
    }
}

/// Polynomial in `τ` with vacuum-module coefficients, `τ` written to the right:
/// entry `j` is the coefficient of `τ^j`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct TauPolynomial {
    coeffs: Vec<VacuumElement>,
}

impl TauPolynomial {
    pub fn constant(v: VacuumElement) -> Self {
        let mut out = TauPolynomial { coeffs: vec![v] };
        out.trim();
        out
    }

    pub fn from_coeffs(coeffs: Vec<VacuumElement>) -> Self {
        let mut out = TauPolynomial { coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Coefficient of `τ^j`.
    pub fn coeff(&self, j: usize) -> VacuumElement {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[VacuumElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn map(&self, f: impl Fn(&VacuumElement) -> VacuumElement) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl SuperModule for TauPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), VacuumElement::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign(b);
        }
        self.trim();
    }
    fn scale(&self, c: &Rational) -> Self {
        self.map(|v| v.scale(c))
    }
    fn parity(&self) -> u8 {
        self.coeffs.iter().find(|c| !c.is_zero()).map_or(0, |c| c.parity())
    }
}
