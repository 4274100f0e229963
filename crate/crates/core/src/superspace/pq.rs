use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use super::operator::{all_indices, entry, with_entry, TensorOperator};
use super::ring::SuperRing;
use super::signature::Signature;
use crate::brauer::{BrauerDiagram, BrauerElement};
use crate::coeff::Rational;
use crate::error::{invalid, Error, Result};

fn ordered_legs(a: usize, b: usize, legs: usize) -> Result<(usize, usize)> {
    if a == b || a >= legs || b >= legs {
        return invalid(format!("legs {a}, {b} invalid for {legs} legs"));
    }
    Ok((a.min(b), a.max(b)))
}

/// `P_ab = Σ e_ij ⊗ e_ji (−1)^j̄` on 0-based legs `a`, `b`.
pub fn build_p<R: SuperRing>(a: usize, b: usize, legs: usize, sig: Signature) -> Result<TensorOperator<R>> {
    let (a, b) = ordered_legs(a, b, legs)?;
    let mut out = TensorOperator::zero(sig, legs)?;
    for row in all_indices(sig.dim(), legs) {
        let (i, j) = (entry(row, a), entry(row, b));
        let col = with_entry(with_entry(row, a, j), b, i);
        let c = Rational::from_int(sig.str_sign(j));
        out.add_term(row, col, R::one().scale(&c));
    }
    Ok(out)
}

/// `Q_ab = Σ e_ij ⊗ e_{i′j′} (−1)^{īj̄+ī+j̄} ε_i ε_j` on 0-based legs `a`, `b`.
pub fn build_q<R: SuperRing>(a: usize, b: usize, legs: usize, sig: Signature) -> Result<TensorOperator<R>> {
    let (a, b) = ordered_legs(a, b, legs)?;
    let mut out = TensorOperator::zero(sig, legs)?;
    let dim = sig.dim();
    for base in all_indices(dim, legs) {
        let i = entry(base, a);
        if entry(base, b) != sig.prime(i) {
            continue;
        }
        for j in 0..dim {
            let col = with_entry(with_entry(base, a, j), b, sig.prime(j));
            let (pi, pj) = (sig.parity(i), sig.parity(j));
            let odd = (pi * pj + pi + pj) % 2 == 1;
            let s = sig.sign(i) * sig.sign(j) * if odd { -1 } else { 1 };
            out.add_term(base, col, R::one().scale(&Rational::from_int(s)));
        }
    }
    Ok(out)
}

/// Transpositions `(a, b)` whose product, in order, is the permutation `w`
/// (with `(xy)(i) = x(y(i))`).
fn transposition_word(w: &[usize]) -> Vec<(usize, usize)> {
    let mut w = w.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..w.len()).find(|&i| w[i] != i) {
        let j = w[i];
        word.push((i, j));
        // w = (i j) ∘ w′ with w′ = (i j) ∘ w
        for x in w.iter_mut() {
            if *x == i {
                *x = j;
            } else if *x == j {
                *x = i;
            }
        }
    }
    word
}

/// Factorises `d = σ · E · π` with `σ`, `π` permutations and
/// `E = ε_{01} ε_{23} ⋯` carrying the `r` arcs of each row.
fn factorise(d: &BrauerDiagram) -> Result<(Vec<usize>, usize, Vec<usize>)> {
    use crate::brauer::Node::{Bottom, Top};
    let m = d.size();
    let (mut pi, mut sigma) = (vec![usize::MAX; m], vec![usize::MAX; m]);
    let (mut top_arc, mut bottom_arc, mut through) = (0, 0, 0);
    let r = d.top_arcs();
    for (u, v) in d.pairs() {
        match (u, v) {
            (Top(a), Top(b)) => {
                pi[a] = 2 * top_arc;
                pi[b] = 2 * top_arc + 1;
                top_arc += 1;
            }
            (Bottom(a), Bottom(b)) => {
                sigma[2 * bottom_arc] = a;
                sigma[2 * bottom_arc + 1] = b;
                bottom_arc += 1;
            }
            (Top(a), Bottom(b)) | (Bottom(b), Top(a)) => {
                pi[a] = 2 * r + through;
                sigma[2 * r + through] = b;
                through += 1;
            }
        }
    }
    Ok((sigma, r, pi))
}

/// The representation `ρ` of `B_L(M − 2n)` on `(C^{M|2n})^{⊗L}`, with a
/// per-diagram cache.
pub struct Rho {
    sig: Signature,
    legs: usize,
    cache: Mutex<FxHashMap<BrauerDiagram, Arc<TensorOperator<Rational>>>>,
}

impl Rho {
    pub fn new(sig: Signature, legs: usize) -> Self {
        Rho { sig, legs, cache: Mutex::new(FxHashMap::default()) }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    /// Image of a single diagram as a product of `P`'s and `Q`'s.
    pub fn diagram(&self, d: &BrauerDiagram) -> Result<Arc<TensorOperator<Rational>>> {
        if d.size() != self.legs {
            return Err(Error::SizeMismatch(format!("diagram of size {} on {} legs", d.size(), self.legs)));
        }
        if let Some(x) = self.cache.lock().expect("cache lock").get(d) {
            return Ok(x.clone());
        }
        let (sigma, r, pi) = factorise(d)?;
        let mut factors: Vec<TensorOperator<Rational>> = Vec::new();
        for (a, b) in transposition_word(&sigma) {
            factors.push(build_p(a, b, self.legs, self.sig)?);
        }
        for t in 0..r {
            factors.push(build_q(2 * t, 2 * t + 1, self.legs, self.sig)?);
        }
        for (a, b) in transposition_word(&pi) {
            factors.push(build_p(a, b, self.legs, self.sig)?);
        }
        let img = if factors.is_empty() {
            TensorOperator::identity(self.sig, self.legs)?
        } else {
            TensorOperator::product(factors.iter())?
        };
        let img = Arc::new(img);
        self.cache.lock().expect("cache lock").insert(*d, img.clone());
        Ok(img)
    }

    /// `ρ(x)` with every coefficient evaluated at `ω = M − 2n`.
    pub fn apply(&self, x: &BrauerElement) -> Result<TensorOperator<Rational>> {
        if x.size() != self.legs {
            return Err(Error::SizeMismatch(format!("element of size {} on {} legs", x.size(), self.legs)));
        }
        let w = self.sig.omega();
        let mut out = TensorOperator::zero(self.sig, self.legs)?;
        for (d, c) in x.terms() {
            let c = c.eval(&w)?;
            out = out.try_add(&self.diagram(d)?.scale(&c))?;
        }
        Ok(out)
    }
}

/// One-shot `ρ(x)` on `legs` legs.
pub fn rho(x: &BrauerElement, sig: Signature, legs: usize) -> Result<TensorOperator<Rational>> {
    Rho::new(sig, legs).apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::GeneratorKind::*;

    #[test]
    fn factorisation_multiplies_back() {
        for m in 1..=4 {
            for d in BrauerDiagram::all(m).unwrap() {
                let (sigma, r, pi) = factorise(&d).unwrap();
                let mut e = BrauerElement::identity(m).unwrap();
                for t in 0..r {
                    e = &e * &BrauerElement::eps(2 * t, 2 * t + 1, m);
                }
                let s = BrauerElement::from_diagram(BrauerDiagram::from_permutation(&sigma).unwrap());
                let p = BrauerElement::from_diagram(BrauerDiagram::from_permutation(&pi).unwrap());
                assert_eq!(BrauerElement::product([&s, &e, &p]).unwrap(), BrauerElement::from_diagram(d));
            }
        }
    }

    #[test]
    fn transposition_words_multiply_back() {
        for d in BrauerDiagram::permutations(4).unwrap() {
            let w = d.as_permutation().unwrap();
            let mut x = BrauerElement::identity(4).unwrap();
            for (a, b) in transposition_word(&w) {
                x = &x * &BrauerElement::s(a, b, 4);
            }
            assert_eq!(x, BrauerElement::from_diagram(d));
        }
    }

    #[test]
    fn generator_images() {
        let sig = Signature::new(1, 1).unwrap();
        let s1 = BrauerElement::generator(Transposition, 1, 2, 2).unwrap();
        assert_eq!(rho(&s1, sig, 2).unwrap(), build_p::<Rational>(0, 1, 2, sig).unwrap());
        let e1 = BrauerElement::generator(Contraction, 1, 2, 2).unwrap();
        assert_eq!(rho(&e1, sig, 2).unwrap(), build_q::<Rational>(0, 1, 2, sig).unwrap());
    }
}
