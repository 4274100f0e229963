use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use crate::brauer::{brauer_symmetriser, group_symmetriser, BrauerElement};
use crate::coeff::{KPoly, Rational};
use crate::error::Result;
use crate::osp::OspStructure;
use crate::superspace::{Rho, Signature, TensorOperator};
use crate::uea::{
    apply, apply_scalar, f_matrix, on_vacuum, Engine, Letter, Mode, TauPolynomial, UTensorOp, VacuumElement, VacuumModule,
};

type Op = TensorOperator<Rational>;

/// One factor of a product in `B̂_{2m+1}` (or `B^aff_m`), mapped through `ρ`.
#[derive(Clone, Debug)]
pub enum Factor {
    /// Image of a Brauer element, already evaluated at `ω = M − 2n`.
    Op(Arc<Op>),
    /// `f[r]_a` on the 0-based leg `a`.
    F(i32, usize),
    /// `f_a = τ + f[−1]_a`.
    FTau(usize),
    Tau,
    K,
}

/// `Σ coefficient · (product of factors)`.
pub type Expr = Vec<(KPoly, Vec<Factor>)>;

/// Per-signature data shared by all computations: the `osp` structure, a
/// vacuum-module engine and caches of operator images.
pub struct Context {
    sig: Signature,
    osp: Arc<OspStructure>,
    engine: Engine,
    rho: Mutex<FxHashMap<usize, Arc<Rho>>>,
    fmats: Mutex<FxHashMap<(i32, usize, usize), Arc<UTensorOp>>>,
    named: Mutex<FxHashMap<String, Arc<Op>>>,
}

impl Context {
    pub fn new(sig: Signature) -> Result<Self> {
        let osp = Arc::new(OspStructure::build(sig)?);
        Ok(Context {
            sig,
            engine: Engine::new(osp.clone(), Mode::Vacuum),
            osp,
            rho: Default::default(),
            fmats: Default::default(),
            named: Default::default(),
        })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn osp(&self) -> &Arc<OspStructure> {
        &self.osp
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    /// `ω = M − 2n`.
    pub fn omega(&self) -> Rational {
        self.sig.omega()
    }

    /// `−h^∨ = −(M − 2n − 2)`.
    pub fn critical_level(&self) -> Rational {
        self.sig.critical_level()
    }

    fn rho(&self, legs: usize) -> Arc<Rho> {
        self.rho.lock().expect("rho cache").entry(legs).or_insert_with(|| Arc::new(Rho::new(self.sig, legs))).clone()
    }

    /// `ρ(x)` at `ω = M − 2n` on `x.size()` legs.
    pub fn image(&self, x: &BrauerElement) -> Result<Arc<Op>> {
        Ok(Arc::new(self.rho(x.size()).apply(x)?))
    }

    fn named(&self, key: String, make: impl FnOnce() -> Result<Op>) -> Result<Arc<Op>> {
        if let Some(x) = self.named.lock().expect("cache").get(&key) {
            return Ok(x.clone());
        }
        let x = Arc::new(make()?);
        self.named.lock().expect("cache").insert(key, x.clone());
        Ok(x)
    }

    /// `S^(k)` on legs `offset..offset+k` of `legs`.
    pub fn sym(&self, k: usize, offset: usize, legs: usize) -> Result<Arc<Op>> {
        self.named(format!("S{k}@{offset}/{legs}"), || {
            self.rho(legs).apply(&brauer_symmetriser(k, k)?.embed(legs, offset)?)
        })
    }

    /// `H^(k)` on legs `offset..offset+k` of `legs`.
    pub fn hsym(&self, k: usize, offset: usize, legs: usize) -> Result<Arc<Op>> {
        self.named(format!("H{k}@{offset}/{legs}"), || {
            self.rho(legs).apply(&group_symmetriser(k, k)?.embed(legs, offset)?)
        })
    }

    /// `Q^(k) = Q_{1,m+1} ⋯ Q_{k,m+k}` on the `2m+1` legs labelled `0..2m`.
    pub fn qk(&self, k: usize, m: usize) -> Result<Arc<Op>> {
        self.named(format!("Q{k}/{m}"), || {
            let legs = 2 * m + 1;
            let mut x = BrauerElement::identity(legs)?;
            for a in 1..=k {
                x = x.multiply(&BrauerElement::eps(a, m + a, legs))?;
            }
            self.rho(legs).apply(&x)
        })
    }

    /// `P_ab` on `legs` legs.
    pub fn s_op(&self, a: usize, b: usize, legs: usize) -> Result<Arc<Op>> {
        self.named(format!("s{a},{b}/{legs}"), || self.rho(legs).apply(&BrauerElement::s(a, b, legs)))
    }

    /// `Q_ab` on `legs` legs.
    pub fn eps_op(&self, a: usize, b: usize, legs: usize) -> Result<Arc<Op>> {
        self.named(format!("e{a},{b}/{legs}"), || self.rho(legs).apply(&BrauerElement::eps(a, b, legs)))
    }

    /// `P_ab − Q_ab` on `legs` legs.
    pub fn phi_op(&self, a: usize, b: usize, legs: usize) -> Result<Arc<Op>> {
        self.named(format!("p{a},{b}/{legs}"), || self.rho(legs).apply(&BrauerElement::phi(a, b, legs)))
    }

    pub fn fmat(&self, r: i32, a: usize, legs: usize) -> Result<Arc<UTensorOp>> {
        if let Some(x) = self.fmats.lock().expect("cache").get(&(r, a, legs)) {
            return Ok(x.clone());
        }
        let x = Arc::new(f_matrix(&self.osp, r, a, legs)?);
        self.fmats.lock().expect("cache").insert((r, a, legs), x.clone());
        Ok(x)
    }

    /// `factors · V`, rightmost factor first.
    pub fn act<V: VacuumModule>(&self, factors: &[Factor], v: &TensorOperator<V>) -> Result<TensorOperator<V>> {
        let legs = v.legs();
        let mut cur = v.clone();
        for f in factors.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = match f {
                Factor::Op(x) => apply_scalar(x, &cur)?,
                Factor::F(r, a) => apply(&self.engine, &*self.fmat(*r, *a, legs)?, &cur)?,
                Factor::FTau(a) => {
                    let mut t = cur.map_coeffs(|c| Some(c.act_letter(&self.engine, &Letter::Tau)));
                    t = t.try_add(&apply(&self.engine, &*self.fmat(-1, *a, legs)?, &cur)?)?;
                    t
                }
                Factor::Tau => cur.map_coeffs(|c| Some(c.act_letter(&self.engine, &Letter::Tau))),
                Factor::K => cur.map_coeffs(|c| Some(c.act_letter(&self.engine, &Letter::K))),
            };
        }
        Ok(cur)
    }

    /// Entrywise value of `expr · |0⟩` on `legs` legs.
    pub fn eval(&self, expr: &Expr, legs: usize) -> Result<TensorOperator<VacuumElement>> {
        let mut out = TensorOperator::zero(self.sig, legs)?;
        for (c, factors) in expr {
            if c.is_zero() {
                continue;
            }
            let v = self.eval_word(factors, legs)?;
            let v = v.map_coeffs(|x| Some(x.mul_poly(c)));
            out = out.try_add(&v)?;
        }
        Ok(out)
    }

    /// Entrywise value of `expr · start`.
    pub fn eval_on(&self, expr: &Expr, start: &TensorOperator<VacuumElement>) -> Result<TensorOperator<VacuumElement>> {
        let mut out = TensorOperator::zero(self.sig, start.legs())?;
        for (c, factors) in expr {
            if c.is_zero() {
                continue;
            }
            let v = self.act(factors, start)?.map_coeffs(|x| Some(x.mul_poly(c)));
            out = out.try_add(&v)?;
        }
        Ok(out)
    }

    fn eval_word(&self, factors: &[Factor], legs: usize) -> Result<TensorOperator<VacuumElement>> {
        // Start from the rightmost scalar factor when there is one; it is
        // usually a sparse Q^(k).
        match factors.split_last() {
            Some((Factor::Op(x), rest)) => self.act(rest, &on_vacuum(x)),
            _ => self.act(factors, &on_vacuum(&Op::identity(self.sig, legs)?)),
        }
    }

    /// Like `eval` with `τ` kept to the right as a polynomial variable.
    pub fn eval_tau(&self, factors: &[Factor], legs: usize) -> Result<TensorOperator<TauPolynomial>> {
        let lift = |x: &Op| x.map_coeffs(|c| Some(TauPolynomial::constant(VacuumElement::vacuum(c.clone()))));
        match factors.split_last() {
            Some((Factor::Op(x), rest)) => self.act(rest, &lift(x)),
            _ => self.act(factors, &lift(&Op::identity(self.sig, legs)?)),
        }
    }
}

/// Single-term expression with coefficient 1.
pub fn word(factors: Vec<Factor>) -> Expr {
    vec![(KPoly::one(), factors)]
}

/// Scales every term of an expression.
pub fn scaled(expr: Expr, c: &KPoly) -> Expr {
    expr.into_iter().map(|(x, f)| (x.mul_ref(c), f)).collect()
}

pub fn rational(c: Rational) -> KPoly {
    KPoly::constant(c)
}
