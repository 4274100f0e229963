use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use super::lazy::{LazyU, Letter};
use super::vacuum::{Gen, Monomial, TauPolynomial, VacuumElement};
use crate::coeff::{KPoly, Rational};
use crate::osp::OspStructure;
use crate::superspace::SuperModule;

/// What happens to a generator that reaches the right end of a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Vacuum module: modes `r ≥ 0` annihilate `|0⟩`.
    Vacuum,
    /// Plain PBW normal form in `U(osp[t, t^{-1}] ⊕ CK)`; nothing annihilates.
    Free,
}

/// Normal-ordering calculator with memo tables; safe to share between threads.
pub struct Engine {
    osp: Arc<OspStructure>,
    mode: Mode,
    gen_memo: Mutex<FxHashMap<(Gen, Monomial), VacuumElement>>,
    tau_memo: Mutex<FxHashMap<Monomial, VacuumElement>>,
}

impl Engine {
    pub fn new(osp: Arc<OspStructure>, mode: Mode) -> Self {
        Engine { osp, mode, gen_memo: Default::default(), tau_memo: Default::default() }
    }

    pub fn osp(&self) -> &Arc<OspStructure> {
        &self.osp
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `x_α[r]`.
    pub fn gen(&self, basis: usize, mode: i32) -> Gen {
        Gen { mode, basis: basis as u16, odd: self.osp.parity(basis) == 1 }
    }

    fn bracket_on(&self, g: Gen, h: Gen, rest: &[Gen]) -> VacuumElement {
        let mode = g.mode + h.mode;
        let mut out = VacuumElement::zero();
        for (c, coeff) in self.osp.bracket(g.basis as usize, h.basis as usize) {
            let v = self.act_monomial(self.gen(*c, mode), rest);
            out.add_scaled(&KPoly::constant(coeff.clone()), &v);
        }
        if mode == 0 && g.mode != 0 {
            let k = self.osp.form(g.basis as usize, h.basis as usize);
            if !k.is_zero() {
                let c = KPoly::var().scale(&(&Rational::from_int(g.mode as i64) * k));
                out.add_term(rest.iter().copied().collect(), c);
            }
        }
        out
    }

    /// `g · m`, normal ordered.
    pub fn act_monomial(&self, g: Gen, m: &[Gen]) -> VacuumElement {
        let Some(&h) = m.first() else {
            if self.mode == Mode::Vacuum && g.mode >= 0 {
                return VacuumElement::zero();
            }
            return VacuumElement::monomial(std::iter::once(g).collect(), KPoly::one());
        };
        if g < h || (g == h && !g.odd) {
            let mono: Monomial = std::iter::once(g).chain(m.iter().copied()).collect();
            return VacuumElement::monomial(mono, KPoly::one());
        }
        let key = (g, Monomial::from_slice(m));
        if let Some(v) = self.gen_memo.lock().expect("memo").get(&key) {
            return v.clone();
        }
        let rest = &m[1..];
        let out = if g == h {
            // g odd: g·g = ½[g, g]
            self.bracket_on(g, g, rest).scale(&Rational::frac(1, 2))
        } else {
            let inner = self.act_monomial(g, rest);
            let mut moved = self.act_gen(h, &inner);
            if g.odd && h.odd {
                moved = moved.scale(&Rational::from_int(-1));
            }
            moved.add_assign(&self.bracket_on(g, h, rest));
            moved
        };
        self.gen_memo.lock().expect("memo").insert(key, out.clone());
        out
    }

    pub fn act_gen(&self, g: Gen, v: &VacuumElement) -> VacuumElement {
        let mut out = VacuumElement::zero();
        for (m, c) in v.terms() {
            out.add_scaled(c, &self.act_monomial(g, m));
        }
        out
    }

    /// `τ · m` with `τ|0⟩ = 0` and `[τ, x[r]] = −r x[r−1]`.
    pub fn tau_monomial(&self, m: &[Gen]) -> VacuumElement {
        let Some(&h) = m.first() else { return VacuumElement::zero() };
        if let Some(v) = self.tau_memo.lock().expect("memo").get(m) {
            return v.clone();
        }
        let rest = &m[1..];
        let mut out = self.act_gen(h, &self.tau_monomial(rest));
        if h.mode != 0 {
            let shifted = self.act_monomial(h.with_mode(h.mode - 1), rest);
            out.add_scaled(&KPoly::constant(Rational::from_int(-(h.mode as i64))), &shifted);
        }
        self.tau_memo.lock().expect("memo").insert(Monomial::from_slice(m), out.clone());
        out
    }

    pub fn act_tau(&self, v: &VacuumElement) -> VacuumElement {
        let mut out = VacuumElement::zero();
        for (m, c) in v.terms() {
            out.add_scaled(c, &self.tau_monomial(m));
        }
        out
    }

    /// Applies a word, rightmost letter first.
    pub fn act_word<V: VacuumModule>(&self, word: &[Letter], v: &V) -> V {
        let mut cur = v.clone();
        for l in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = cur.act_letter(self, l);
        }
        cur
    }

    pub fn act_lazy<V: VacuumModule>(&self, u: &LazyU, v: &V) -> V {
        let mut out = V::zero();
        for (w, c) in u.terms() {
            out.add_assign_ref(&self.act_word(w, v).scale(c));
        }
        out
    }

    /// Normal form of `word · |0⟩` (or of the word itself in free mode).
    pub fn normal_order(&self, word: &[Letter]) -> VacuumElement {
        self.act_word(word, &VacuumElement::vacuum(Rational::ONE))
    }

    /// Product in `U(t^{-1}osp[t^{-1}])`, both sides identified with vacuum elements.
    pub fn u_multiply(&self, x: &VacuumElement, y: &VacuumElement) -> VacuumElement {
        let mut out = VacuumElement::zero();
        for (m, c) in x.terms() {
            let mut cur = y.clone();
            for &g in m.iter().rev() {
                cur = self.act_gen(g, &cur);
            }
            out.add_scaled(c, &cur);
        }
        out
    }

    pub fn memo_size(&self) -> usize {
        self.gen_memo.lock().expect("memo").len() + self.tau_memo.lock().expect("memo").len()
    }
}

/// Coefficient types that letters of `U ⋊ C[τ]` act on.
pub trait VacuumModule: SuperModule {
    fn act_letter(&self, engine: &Engine, letter: &Letter) -> Self;
}

impl VacuumModule for VacuumElement {
    fn act_letter(&self, engine: &Engine, letter: &Letter) -> Self {
        match letter {
            Letter::Gen(g) => engine.act_gen(*g, self),
            Letter::Tau => engine.act_tau(self),
            Letter::K => self.mul_poly(&KPoly::var()),
        }
    }
}

// Σ ψ_j τ^j: generators act on each ψ_j, and τψ_jτ^j = [τ, ψ_j]τ^j + ψ_jτ^{j+1}.
// Only meaningful while every generator involved has negative mode.
impl VacuumModule for TauPolynomial {
    fn act_letter(&self, engine: &Engine, letter: &Letter) -> Self {
        match letter {
            Letter::Tau => {
                let n = self.coeffs().len();
                let mut out = vec![VacuumElement::zero(); n + 1];
                for (j, c) in self.coeffs().iter().enumerate() {
                    out[j].add_assign(&engine.act_tau(c));
                    out[j + 1].add_assign(c);
                }
                TauPolynomial::from_coeffs(out)
            }
            _ => self.map(|c| c.act_letter(engine, letter)),
        }
    }
}
