//! `osp_{M|2n} ⊂ gl_{M|2n}`: basis, structure constants, invariant form.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coeff::Rational;
use crate::error::{invalid, Error, Result};
use crate::superspace::Signature;

/// Homogeneous element of `gl_{M|2n}` in the `E_ij` coordinates (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlElement {
    #[serde(skip)]
    sig: Signature,
    coeffs: BTreeMap<(usize, usize), Rational>,
}

impl GlElement {
    pub fn zero(sig: Signature) -> Self {
        GlElement { sig, coeffs: BTreeMap::new() }
    }

    pub fn unit(sig: Signature, i: usize, j: usize) -> Self {
        let mut x = Self::zero(sig);
        x.add(i, j, &Rational::ONE);
        x
    }

    pub fn add(&mut self, i: usize, j: usize, c: &Rational) {
        let e = self.coeffs.entry((i, j)).or_insert(Rational::ZERO);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn axpy(&mut self, c: &Rational, x: &GlElement) {
        for (&(i, j), v) in &x.coeffs {
            self.add(i, j, &(c * v));
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Parity `ī + j̄` of the (homogeneous) element; `None` when zero.
    pub fn parity(&self) -> Option<u8> {
        self.coeffs.keys().next().map(|&(i, j)| (self.sig.parity(i) + self.sig.parity(j)) % 2)
    }

    /// Super commutator from `[E_ij, E_kl] = δ_kj E_il − δ_il (−1)^{(ī+j̄)(k̄+l̄)} E_kj`.
    pub fn bracket(&self, other: &GlElement) -> GlElement {
        let s = self.sig;
        let mut out = GlElement::zero(s);
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &other.coeffs {
                let ab = a * b;
                if k == j {
                    out.add(i, l, &ab);
                }
                if i == l {
                    let odd = (s.parity(i) + s.parity(j)) * (s.parity(k) + s.parity(l)) % 2 == 1;
                    out.add(k, j, &if odd { ab } else { -&ab });
                }
            }
        }
        out
    }
}

/// `F_ij = E_ij − (−1)^{īj̄+j̄} ε_i ε_j E_{j′i′}` (0-based, may vanish).
pub fn f_element(i: usize, j: usize, sig: Signature) -> Result<GlElement> {
    let d = sig.dim();
    if i >= d || j >= d {
        return invalid(format!("index pair ({i}, {j}) outside 0..{d}"));
    }
    let mut x = GlElement::unit(sig, i, j);
    let (pi, pj) = (sig.parity(i), sig.parity(j));
    let sign = sig.sign(i) * sig.sign(j) * if (pi * pj + pj) % 2 == 1 { -1 } else { 1 };
    x.add(sig.prime(j), sig.prime(i), &Rational::from_int(-sign));
    Ok(x)
}

/// `[x_α[r], x_β[s]]`: linear part at mode `r + s` and the coefficient of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineBracketResult {
    pub linear: Vec<(usize, Rational)>,
    pub mode: i64,
    pub central: Rational,
}

/// Basis of `osp_{M|2n}` chosen among the `F_ij` by row reduction in
/// lexicographic `(i, j)` order, with structure constants and the form
/// read off the central term of the affine bracket.
#[derive(Clone, Debug)]
pub struct OspStructure {
    sig: Signature,
    labels: Vec<(usize, usize)>,
    basis: Vec<GlElement>,
    parity: Vec<u8>,
    // echelon rows: (pivot coordinate, reduced vector, combination of basis elements)
    echelon: Vec<((usize, usize), GlElement, Vec<(usize, Rational)>)>,
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    form: Vec<Vec<Rational>>,
    f_coords: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl OspStructure {
    pub fn build(sig: Signature) -> Result<Self> {
        let d = sig.dim();
        let mut s = OspStructure {
            sig,
            labels: Vec::new(),
            basis: Vec::new(),
            parity: Vec::new(),
            echelon: Vec::new(),
            brackets: Vec::new(),
            form: Vec::new(),
            f_coords: Vec::new(),
        };
        for i in 0..d {
            for j in 0..d {
                let f = f_element(i, j, sig)?;
                let (residual, mut combo) = s.reduce(&f);
                let Some((&pivot, pv)) = residual.coeffs.iter().next() else { continue };
                let idx = s.basis.len();
                // residual = f − Σ c·basis, so its combination is e_idx − Σ c·e
                for (_, c) in combo.iter_mut() {
                    *c = -&*c;
                }
                combo.push((idx, Rational::ONE));
                let inv = pv.recip()?;
                let mut row = GlElement::zero(sig);
                row.axpy(&inv, &residual);
                let combo = combo.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
                s.echelon.push((pivot, row, combo));
                s.parity.push(f.parity().expect("nonzero"));
                s.labels.push((i, j));
                s.basis.push(f);
            }
        }
        let n = s.basis.len();
        s.f_coords = (0..d)
            .map(|i| (0..d).map(|j| s.coords(&f_element(i, j, sig)?)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        s.brackets = (0..n)
            .map(|a| (0..n).map(|b| s.coords(&s.basis[a].bracket(&s.basis[b]))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        s.form = (0..n)
            .map(|a| (0..n).map(|b| s.form_on_labels(s.labels[a], s.labels[b])).collect())
            .collect();
        Ok(s)
    }

    // Reduces x against the echelon rows; returns the residual and the
    // basis combination that was subtracted.
    fn reduce(&self, x: &GlElement) -> (GlElement, Vec<(usize, Rational)>) {
        let mut r = x.clone();
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (pivot, row, combo) in &self.echelon {
            let c = r.coeff(pivot.0, pivot.1);
            if c.is_zero() {
                continue;
            }
            r.axpy(&-&c, row);
            for (k, v) in combo {
                let e = acc.entry(*k).or_insert(Rational::ZERO);
                *e += &(&c * v);
            }
        }
        (r, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Coordinates of an element of `osp` in the chosen basis.
    pub fn coords(&self, x: &GlElement) -> Result<Vec<(usize, Rational)>> {
        let (residual, combo) = self.reduce(x);
        if !residual.is_zero() {
            return Err(Error::InvalidArgument(format!("element not in osp: residual {:?}", residual.coeffs)));
        }
        Ok(combo)
    }

    // K-coefficient of [F_ij[1], F_kl[−1]].
    fn form_on_labels(&self, (i, j): (usize, usize), (k, l): (usize, usize)) -> Rational {
        let s = self.sig;
        let mut v = 0;
        if i == l && j == k {
            v += s.str_sign(i);
        }
        if i == s.prime(k) && j == s.prime(l) {
            let odd = s.parity(i) * s.parity(j) == 1;
            v -= s.sign(i) * s.sign(j) * if odd { -1 } else { 1 };
        }
        Rational::from_int(v)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `M(M−1)/2 + n(2n+1) + 2Mn`.
    pub fn expected_dim(sig: Signature) -> usize {
        let (m, n) = (sig.m, sig.n);
        m * m.saturating_sub(1) / 2 + n * (2 * n + 1) + 2 * m * n
    }

    pub fn basis(&self) -> &[GlElement] {
        &self.basis
    }

    /// The `(i, j)` with basis element `α = F_ij`.
    pub fn label(&self, a: usize) -> (usize, usize) {
        self.labels[a]
    }

    pub fn parity(&self, a: usize) -> u8 {
        self.parity[a]
    }

    /// `c^γ_{αβ}` with `[x_α, x_β] = Σ_γ c^γ_{αβ} x_γ`.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.brackets[a][b]
    }

    /// `κ(x_α, x_β)`.
    pub fn form(&self, a: usize, b: usize) -> &Rational {
        &self.form[a][b]
    }

    /// Expansion of `F_ij` in the basis.
    pub fn f_coords(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.f_coords[i][j]
    }

    /// `h^∨ = M − 2n − 2`.
    pub fn dual_coxeter(&self) -> i64 {
        self.sig.dual_coxeter()
    }

    pub fn affine_bracket(&self, (a, r): (usize, i64), (b, s): (usize, i64)) -> AffineBracketResult {
        let central = if r + s == 0 { &Rational::from_int(r) * &self.form[a][b] } else { Rational::ZERO };
        AffineBracketResult { linear: self.brackets[a][b].clone(), mode: r + s, central }
    }

    // Σ c_γ x_γ as a gl element
    fn to_gl(&self, v: &[(usize, Rational)]) -> GlElement {
        let mut out = GlElement::zero(self.sig);
        for (g, c) in v {
            out.axpy(c, &self.basis[*g]);
        }
        out
    }

    fn sign(&self, a: usize, b: usize) -> Rational {
        Rational::from_int(if self.parity[a] * self.parity[b] == 1 { -1 } else { 1 })
    }

    /// Failures of super antisymmetry, super Jacobi and invariance of κ,
    /// plus super symmetry of κ; empty when all hold exactly.
    pub fn self_check(&self) -> Vec<String> {
        let n = self.dim();
        let mut bad = Vec::new();
        let br = |x: &GlElement, y: &GlElement| x.bracket(y);
        for a in 0..n {
            for b in 0..n {
                let ab = self.to_gl(self.bracket(a, b));
                let mut sum = ab.clone();
                sum.axpy(&self.sign(a, b), &self.to_gl(self.bracket(b, a)));
                if !sum.is_zero() {
                    bad.push(format!("antisymmetry ({a}, {b})"));
                }
                if self.form[a][b] != &self.sign(a, b) * &self.form[b][a] {
                    bad.push(format!("form symmetry ({a}, {b})"));
                }
                for c in 0..n {
                    let (x, y, z) = (&self.basis[a], &self.basis[b], &self.basis[c]);
                    let lhs = br(x, &br(y, z));
                    let mut rhs = br(&br(x, y), z);
                    rhs.axpy(&self.sign(a, b), &br(y, &br(x, z)));
                    let mut diff = lhs;
                    diff.axpy(&Rational::from_int(-1), &rhs);
                    if !diff.is_zero() {
                        bad.push(format!("jacobi ({a}, {b}, {c})"));
                    }
                    let k1: Rational = self.bracket(a, b).iter().map(|(g, v)| v * &self.form[*g][c]).sum();
                    let k2: Rational = self.bracket(b, c).iter().map(|(g, v)| v * &self.form[a][*g]).sum();
                    if k1 != k2 {
                        bad.push(format!("invariance ({a}, {b}, {c})"));
                    }
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIGS: [(usize, usize); 7] = [(1, 1), (2, 1), (3, 1), (0, 1), (3, 0), (5, 0), (0, 2)];

    fn sig(m: usize, n: usize) -> Signature {
        Signature::new(m, n).unwrap()
    }

    #[test]
    fn dimensions() {
        for (m, n) in SIGS {
            let s = OspStructure::build(sig(m, n)).unwrap();
            assert_eq!(s.dim(), OspStructure::expected_dim(sig(m, n)), "({m}, {n})");
        }
        assert_eq!(OspStructure::build(sig(1, 1)).unwrap().dim(), 5);
        assert_eq!(OspStructure::build(sig(3, 0)).unwrap().dim(), 3);
        assert_eq!(OspStructure::build(sig(0, 1)).unwrap().dim(), 3);
    }

    #[test]
    fn f_examples() {
        let s = sig(1, 1);
        let mut total = GlElement::zero(s);
        for i in 0..s.dim() {
            total.axpy(&Rational::ONE, &f_element(i, i, s).unwrap());
        }
        assert!(total.is_zero());
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let (pi, pj) = (s.parity(i), s.parity(j));
                let c = s.sign(i) * s.sign(j) * if (pi * pj + pj) % 2 == 1 { -1 } else { 1 };
                let mut x = f_element(i, j, s).unwrap();
                x.axpy(&Rational::from_int(c), &f_element(s.prime(j), s.prime(i), s).unwrap());
                assert!(x.is_zero());
            }
        }
        let sp = sig(0, 1);
        let f12 = f_element(0, 1, sp).unwrap();
        assert_eq!(f12.coeffs().collect::<Vec<_>>(), vec![(&(0, 1), &Rational::from_int(2))]);
    }

    #[test]
    fn structure_is_consistent() {
        for (m, n) in [(1, 1), (2, 1), (0, 1), (3, 0), (0, 2)] {
            let s = OspStructure::build(sig(m, n)).unwrap();
            let bad = s.self_check();
            assert!(bad.is_empty(), "({m}, {n}): {bad:?}");
        }
    }

    // The form, read off on labels, does not depend on which F_ij represents
    // a basis element.
    #[test]
    fn form_is_well_defined_on_labels() {
        for (m, n) in SIGS {
            let s = OspStructure::build(sig(m, n)).unwrap();
            let d = s.signature().dim();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        for l in 0..d {
                            let direct = s.form_on_labels((i, j), (k, l));
                            let mut via = Rational::ZERO;
                            for (a, x) in s.f_coords(i, j) {
                                for (b, y) in s.f_coords(k, l) {
                                    via += &(&(x * y) * s.form(*a, *b));
                                }
                            }
                            assert_eq!(direct, via, "({m}, {n}) F{i}{j} F{k}{l}");
                        }
                    }
                }
            }
        }
    }

    // Brackets computed inside gl agree with the closed affine bracket formula.
    #[test]
    fn brackets_match_closed_formula() {
        for (m, n) in [(1, 1), (2, 1), (0, 1), (3, 0)] {
            let sg = sig(m, n);
            let d = sg.dim();
            let f = |i, j| f_element(i, j, sg).unwrap();
            let p = |i| sg.parity(i) as i64;
            let e = |i| sg.sign(i);
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        for l in 0..d {
                            let lhs = f(i, j).bracket(&f(k, l));
                            let mut rhs = GlElement::zero(sg);
                            let pm = |x: i64| Rational::from_int(if x % 2 == 0 { 1 } else { -1 });
                            if j == k {
                                rhs.axpy(&Rational::ONE, &f(i, l));
                            }
                            if i == l {
                                rhs.axpy(&-pm((p(i) + p(j)) * (p(k) + p(l))), &f(k, j));
                            }
                            if i == sg.prime(k) {
                                let c = &pm(p(i) * p(j) + p(j)) * &Rational::from_int(e(i) * e(j));
                                rhs.axpy(&-c, &f(sg.prime(j), l));
                            }
                            if j == sg.prime(l) {
                                let c = &pm(p(i) * p(k) + p(j) * p(k)) * &Rational::from_int(e(i) * e(j));
                                rhs.axpy(&c, &f(k, sg.prime(i)));
                            }
                            assert_eq!(lhs, rhs, "({m}, {n}) [F{i}{j}, F{k}{l}]");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn affine_bracket_central_term() {
        let s = OspStructure::build(sig(3, 0)).unwrap();
        for a in 0..s.dim() {
            for b in 0..s.dim() {
                assert!(s.affine_bracket((a, 0), (b, 0)).central.is_zero());
                assert_eq!(&s.affine_bracket((a, 1), (b, -1)).central, s.form(a, b));
                assert!(s.affine_bracket((a, 1), (b, 1)).central.is_zero());
            }
        }
    }
}
