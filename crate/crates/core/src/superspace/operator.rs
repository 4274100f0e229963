use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::ring::{SuperModule, SuperRing};
use super::signature::Signature;
use crate::coeff::Rational;
use crate::error::{invalid, Error, Result};

/// Largest number of tensor legs (3 bits per leg in a `u32`).
pub const MAX_TENSOR_LEGS: usize = 10;

/// Multi-index packed three bits per leg, leg 0 lowest.
pub type MultiIndex = u32;

pub fn pack(idx: &[usize]) -> MultiIndex {
    idx.iter().rev().fold(0, |acc, &i| (acc << 3) | i as u32)
}

pub fn unpack(x: MultiIndex, legs: usize) -> Vec<usize> {
    (0..legs).map(|a| entry(x, a)).collect()
}

#[inline]
pub fn entry(x: MultiIndex, leg: usize) -> usize {
    ((x >> (3 * leg)) & 7) as usize
}

#[inline]
pub fn with_entry(x: MultiIndex, leg: usize, i: usize) -> MultiIndex {
    (x & !(7 << (3 * leg))) | ((i as u32) << (3 * leg))
}

/// Every multi-index of length `legs` over `0..dim`, in increasing packed order.
pub fn all_indices(dim: usize, legs: usize) -> impl Iterator<Item = MultiIndex> {
    let total = dim.pow(legs as u32);
    (0..total).map(move |mut t| {
        let mut x = 0u32;
        for a in 0..legs {
            x |= ((t % dim) as u32) << (3 * a);
            t /= dim;
        }
        x
    })
}

// Sign of (a ⊗ u)(b ⊗ v) → (ab ⊗ uv): each leg factor of y passes the
// later leg factors of x and the coefficient u.
#[inline]
fn koszul(xm: u32, ym: u32, u_par: u8) -> bool {
    let mut odd = u_par as u32 & ym.count_ones();
    let mut rest = ym;
    while rest != 0 {
        let a = rest.trailing_zeros();
        odd += (xm >> (a + 1)).count_ones();
        rest &= rest - 1;
    }
    odd & 1 == 1
}

/// Sparse element of `(End C^{M|2n})^{⊗L} ⊗ R`: the key `(I, J)` stands for
/// `e_{i_1 j_1} ⊗ ⋯ ⊗ e_{i_L j_L}` followed by the coefficient.
#[derive(Clone)]
pub struct TensorOperator<R> {
    sig: Signature,
    legs: usize,
    terms: FxHashMap<(MultiIndex, MultiIndex), R>,
}

impl<R: SuperModule> PartialEq for TensorOperator<R> {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.legs == other.legs && self.terms == other.terms
    }
}

impl<R: SuperModule> TensorOperator<R> {
    pub fn zero(sig: Signature, legs: usize) -> Result<Self> {
        if legs > MAX_TENSOR_LEGS {
            return invalid(format!("{legs} legs exceed the maximum {MAX_TENSOR_LEGS}"));
        }
        Ok(TensorOperator { sig, legs, terms: FxHashMap::default() })
    }

    /// A zero-leg operator, i.e. a bare coefficient.
    pub fn scalar(sig: Signature, c: R) -> Self {
        let mut out = Self::zero(sig, 0).expect("zero legs");
        out.add_term(0, 0, c);
        out
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, row: MultiIndex, col: MultiIndex) -> Option<&R> {
        self.terms.get(&(row, col))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &R)> {
        self.terms.iter()
    }

    /// Terms sorted by `(row, col)`.
    pub fn sorted_terms(&self) -> Vec<(MultiIndex, MultiIndex, &R)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&(i, j), c)| (i, j, c)).collect();
        v.sort_by_key(|&(i, j, _)| (i, j));
        v
    }

    pub fn add_term(&mut self, row: MultiIndex, col: MultiIndex, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((row, col)) {
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

    /// The single coefficient of a zero-leg operator.
    pub fn as_scalar(&self) -> Result<R> {
        if self.legs != 0 {
            return Err(Error::SizeMismatch(format!("operator has {} legs", self.legs)));
        }
        Ok(self.terms.get(&(0, 0)).cloned().unwrap_or_else(R::zero))
    }

    fn check_shape<S>(&self, other: &TensorOperator<S>) -> Result<()> {
        if self.sig != other.sig || self.legs != other.legs {
            return Err(Error::SizeMismatch(format!(
                "operators on {:?}^{} and {:?}^{}",
                self.sig, self.legs, other.sig, other.legs
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| Some(c.neg_ref()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self { sig: self.sig, legs: self.legs, terms: FxHashMap::default() };
        }
        self.map_coeffs(|x| Some(x.scale(c)))
    }

    /// Applies `f` to each coefficient, dropping zeros and `None`s.
    pub fn map_coeffs<S: SuperModule>(&self, f: impl Fn(&R) -> Option<S>) -> TensorOperator<S> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, c)| f(c).filter(|x| !x.is_zero()).map(|x| (*k, x)))
            .collect();
        TensorOperator { sig: self.sig, legs: self.legs, terms }
    }

    /// Like `map_coeffs` but fallible.
    pub fn try_map_coeffs<S: SuperModule>(&self, f: impl Fn(&R) -> Result<S>) -> Result<TensorOperator<S>> {
        let mut terms = FxHashMap::default();
        for (k, c) in &self.terms {
            let x = f(c)?;
            if !x.is_zero() {
                terms.insert(*k, x);
            }
        }
        Ok(TensorOperator { sig: self.sig, legs: self.legs, terms })
    }

    /// Bitmask of odd legs of the multi-index: bit `a` is `parity(x_a)`.
    #[inline]
    fn parity_mask(&self, x: MultiIndex) -> u32 {
        let mut m = 0;
        for a in 0..self.legs {
            m |= (self.sig.parity(entry(x, a)) as u32) << a;
        }
        m
    }

    /// Product `self · other` with Koszul signs, coefficients combined by
    /// `mul`; `mul` must be bilinear and respect parity.
    pub fn compose_with<S: SuperModule, T: SuperModule>(
        &self,
        other: &TensorOperator<S>,
        mul: impl Fn(&R, &S) -> T + Sync,
    ) -> Result<TensorOperator<T>> {
        self.check_shape(other)?;
        let mut by_row: FxHashMap<MultiIndex, Vec<(MultiIndex, u32, &S)>> = FxHashMap::default();
        for (&(k, l), v) in &other.terms {
            by_row.entry(k).or_default().push((l, self.parity_mask(l), v));
        }
        let xs: Vec<_> = self.terms.iter().collect();
        let work = |chunk: &[(&(MultiIndex, MultiIndex), &R)]| {
            let mut acc: FxHashMap<(MultiIndex, MultiIndex), T> = FxHashMap::default();
            for &(&(i, k), u) in chunk {
                let Some(row) = by_row.get(&k) else { continue };
                let km = self.parity_mask(k);
                let xm = self.parity_mask(i) ^ km;
                let up = u.parity();
                for &(l, lm, v) in row {
                    let mut p = mul(u, v);
                    if koszul(xm, km ^ lm, up) {
                        p = p.neg_ref();
                    }
                    match acc.entry((i, l)) {
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(p);
                        }
                        std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&p),
                    }
                }
            }
            acc
        };
        let partials: Vec<_> = if xs.len() > 4096 {
            xs.par_chunks(1024).map(work).collect()
        } else {
            vec![work(&xs)]
        };
        let mut out = TensorOperator::<T>::zero(self.sig, self.legs)?;
        for part in partials {
            for ((i, l), c) in part {
                out.add_term(i, l, c);
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Traces the listed 0-based legs with `e_ij ↦ δ_ij (−1)^ī`; surviving
    /// legs keep their relative order.
    pub fn partial_supertrace(&self, traced: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &a in traced {
            if a >= self.legs || mask & (1 << a) != 0 {
                return invalid(format!("cannot trace leg {a} of {} legs", self.legs));
            }
            mask |= 1 << a;
        }
        let keep: Vec<usize> = (0..self.legs).filter(|a| mask & (1 << a) == 0).collect();
        let mut out = Self::zero(self.sig, keep.len())?;
        'terms: for (&(i, j), c) in &self.terms {
            let mut negative = false;
            for &a in traced {
                let (ia, ja) = (entry(i, a), entry(j, a));
                if ia != ja {
                    continue 'terms;
                }
                negative ^= self.sig.parity(ia) == 1;
            }
            let squeeze = |x: MultiIndex| keep.iter().rev().fold(0u32, |acc, &a| (acc << 3) | entry(x, a) as u32);
            let c = if negative { c.neg_ref() } else { c.clone() };
            out.add_term(squeeze(i), squeeze(j), c);
        }
        Ok(out)
    }

    /// Supertrace over every leg.
    pub fn supertrace(&self) -> Result<R> {
        let all: Vec<usize> = (0..self.legs).collect();
        self.partial_supertrace(&all)?.as_scalar()
    }

    /// Full supertrace of `self · other` without forming the product,
    /// coefficients combined by `mul`.
    pub fn supertrace_of_product_with<S: SuperModule, T: SuperModule>(
        &self,
        other: &TensorOperator<S>,
        mul: impl Fn(&R, &S) -> T,
    ) -> Result<T> {
        self.check_shape(other)?;
        let mut acc = T::zero();
        for (&(i, k), u) in &self.terms {
            let Some(v) = other.terms.get(&(k, i)) else { continue };
            let km = self.parity_mask(k);
            let im = self.parity_mask(i);
            let mut p = mul(u, v);
            let flip = koszul(im ^ km, km ^ im, u.parity()) ^ (im.count_ones() & 1 == 1);
            if flip {
                p = p.neg_ref();
            }
            acc.add_assign_ref(&p);
        }
        Ok(acc)
    }


    /// Places leg `a` of `self` at position `positions[a]` of an operator
    /// on `legs` legs; the remaining legs carry the identity.
    pub fn embed(&self, legs: usize, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.legs || positions.iter().any(|&p| p >= legs) {
            return invalid(format!("bad leg placement {positions:?} into {legs} legs"));
        }
        let mut used = 0u32;
        for &p in positions {
            if used & (1 << p) != 0 {
                return invalid(format!("repeated position {p}"));
            }
            used |= 1 << p;
        }
        let free: Vec<usize> = (0..legs).filter(|p| used & (1 << p) == 0).collect();
        let mut out = Self::zero(self.sig, legs)?;
        let dim = self.sig.dim();
        for (&(i, j), c) in &self.terms {
            let (mut bi, mut bj) = (0u32, 0u32);
            for (a, &p) in positions.iter().enumerate() {
                bi = with_entry(bi, p, entry(i, a));
                bj = with_entry(bj, p, entry(j, a));
            }
            for f in all_indices(dim, free.len()) {
                let (mut ri, mut rj) = (bi, bj);
                for (t, &p) in free.iter().enumerate() {
                    ri = with_entry(ri, p, entry(f, t));
                    rj = with_entry(rj, p, entry(f, t));
                }
                out.add_term(ri, rj, c.clone());
            }
        }
        Ok(out)
    }

    /// `self ⊗ 1` on `legs ≥ self.legs()` legs.
    pub fn pad(&self, legs: usize) -> Result<Self> {
        let positions: Vec<usize> = (0..self.legs).collect();
        self.embed(legs, &positions)
    }
}

impl<R: SuperRing> TensorOperator<R> {
    pub fn identity(sig: Signature, legs: usize) -> Result<Self> {
        let mut out = Self::zero(sig, legs)?;
        for x in all_indices(sig.dim(), legs) {
            out.terms.insert((x, x), R::one());
        }
        Ok(out)
    }

    /// Product `self · other` with Koszul signs.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.compose_with(other, R::mul_ref)
    }

    /// Product of a nonempty sequence of operators.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        R: 'a,
    {
        let mut it = factors.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
        it.try_fold(first.clone(), |acc, x| acc.compose(x))
    }

    /// Full supertrace of `self · other` without forming the product.
    pub fn supertrace_of_product(&self, other: &Self) -> Result<R> {
        self.supertrace_of_product_with(other, R::mul_ref)
    }
}

impl<R: SuperModule + fmt::Display> fmt::Display for TensorOperator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (i, j, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let show = |x| unpack(x, self.legs).iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",");
            write!(f, "({c})e[{}|{}]", show(i), show(j))?;
        }
        Ok(())
    }
}

impl<R: SuperModule> fmt::Debug for TensorOperator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorOperator({:?}, {} legs, {} terms)", self.sig, self.legs, self.terms.len())
    }
}

#[derive(Serialize)]
struct TermDump<'a, R> {
    #[serde(rename = "I")]
    row: Vec<usize>,
    #[serde(rename = "J")]
    col: Vec<usize>,
    coefficient: &'a R,
}

impl<R: SuperModule + Serialize> Serialize for TensorOperator<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.sorted_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (i, j, c) in terms {
            let one_based = |x| unpack(x, self.legs).into_iter().map(|v| v + 1).collect();
            seq.serialize_element(&TermDump { row: one_based(i), col: one_based(j), coefficient: c })?;
        }
        seq.end()
    }
}
