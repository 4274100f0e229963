use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::context::{rational, Context, Expr, Factor};
use super::partition::partitions;
use crate::brauer::gamma;
use crate::coeff::{KPoly, Rational};
use crate::error::{invalid, Error, Result};
use crate::report::{Check, Report};
use crate::superspace::{all_indices, TensorOperator};
use crate::uea::VacuumElement;

/// The operator identities checked through `ρ` on `2m+1` legs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `Q^(k) x y Q^(k) = Q^(k) y x Q^(k)`, `x` in the Brauer algebra on legs `1..k`.
    Cyclic1,
    /// Same with `y ∈ {s_0a, ε_0a}` and `x` built from legs `1..k`.
    Cyclic2,
    /// `s_ab f_1 ⋯ f_k s^(k) = f_1 ⋯ f_k s^(k)`.
    SymmetricProduct,
    /// `Q^(k) s^(k) φ_0a f_1 ⋯ f_k Q^(k)` does not depend on `a`.
    PhiIndependence,
    /// `f[0]_0` commutes with `Q^(m) s^(m) f_1 ⋯ f_m Q^(m)`.
    ModeZero,
    /// Five-term expansion of `f[1]_0 Q^(m) s^(m) f_1 ⋯ f_m Q^(m)`, `K` symbolic.
    ModeOne,
    /// `γ_ℓ Q^(ℓ) s^(ℓ) f[−λ] Q^(m) = Q^(ℓ) h^(ℓ) f[−λ] Q^(m)`.
    GammaSvsH,
    /// `Q_ab f[r]_a Q_ab = 0`.
    QfQ,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Cyclic1,
        Identity::Cyclic2,
        Identity::SymmetricProduct,
        Identity::PhiIndependence,
        Identity::ModeZero,
        Identity::ModeOne,
        Identity::GammaSvsH,
        Identity::QfQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Cyclic1 => "cyclic property 1",
            Identity::Cyclic2 => "cyclic property 2",
            Identity::SymmetricProduct => "s_ab f..f S = f..f S",
            Identity::PhiIndependence => "Q S phi_0a f..f Q independent of a",
            Identity::ModeZero => "f[0]_0 commutes with Q S f..f Q",
            Identity::ModeOne => "f[1]_0 Q S f..f Q expansion",
            Identity::GammaSvsH => "gamma Q S f[-lambda] Q = Q H f[-lambda] Q",
            Identity::QfQ => "Q_ab f[r]_a Q_ab = 0",
        }
    }
}

/// A generator of the extended Brauer algebra, before it is mapped through `ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    S(usize, usize),
    E(usize, usize),
    Phi(usize, usize),
    F(i32, usize),
    /// `f_a = τ + f[−1]_a`.
    FTau(usize),
    Q(usize),
    Sym(usize),
    Hsym(usize),
    Tau,
    K,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(a, b) => write!(f, "s{a}{b}"),
            Letter::E(a, b) => write!(f, "e{a}{b}"),
            Letter::Phi(a, b) => write!(f, "phi{a}{b}"),
            Letter::F(r, a) => write!(f, "f[{r}]_{a}"),
            Letter::FTau(a) => write!(f, "f_{a}"),
            Letter::Q(k) => write!(f, "Q{k}"),
            Letter::Sym(k) => write!(f, "S{k}"),
            Letter::Hsym(k) => write!(f, "H{k}"),
            Letter::Tau => write!(f, "tau"),
            Letter::K => write!(f, "K"),
        }
    }
}

fn show(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// One sampled instance: both sides as formal sums of words, and a tail `z`
/// applied to the vacuum before either side.
#[derive(Clone, Debug)]
pub struct Instance {
    pub description: String,
    pub legs: usize,
    pub lhs: Vec<(KPoly, Vec<Letter>)>,
    pub rhs: Vec<(KPoly, Vec<Letter>)>,
    pub tail: Vec<Letter>,
    /// Seed of a random column vector both sides are applied to, instead of
    /// comparing full operators; used above five legs.
    pub probe: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Equal { nontrivial: bool },
    Different(String),
    Singular,
}

fn one(w: Vec<Letter>) -> Vec<(KPoly, Vec<Letter>)> {
    vec![(KPoly::one(), w)]
}

fn pick_word(rng: &mut ChaCha8Rng, gens: &[Letter], min: usize, max: usize) -> Vec<Letter> {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| *gens.choose(rng).expect("nonempty generator set")).collect()
}

fn brauer_gens(from: usize, to: usize) -> Vec<Letter> {
    (from..to).flat_map(|a| [Letter::S(a, a + 1), Letter::E(a, a + 1)]).collect()
}

fn f_gens(legs: impl Iterator<Item = usize> + Clone) -> Vec<Letter> {
    (-2..=2).flat_map(|r| legs.clone().map(move |b| Letter::F(r, b))).collect()
}

// Negative modes on legs 0..=m and a Brauer generator or two, all within `legs`.
fn tail(rng: &mut ChaCha8Rng, m: usize, legs: usize) -> Vec<Letter> {
    let top = m.min(legs - 1);
    let mut gens: Vec<Letter> = (0..=top).flat_map(|b| [Letter::F(-1, b), Letter::F(-2, b)]).collect();
    gens.push(Letter::S(0, rng.gen_range(1..legs)));
    let a = rng.gen_range(1..legs);
    let b = rng.gen_range(1..legs);
    if a != b {
        gens.push(Letter::E(a.min(b), a.max(b)));
    }
    pick_word(rng, &gens, 0, 2)
}

fn ftaus(range: std::ops::RangeInclusive<usize>) -> Vec<Letter> {
    range.map(Letter::FTau).collect()
}

fn cat(parts: &[&[Letter]]) -> Vec<Letter> {
    parts.concat()
}

/// Draws one instance of `id` for `m`.
pub fn sample(id: Identity, m: usize, rng: &mut ChaCha8Rng) -> Instance {
    let legs = 2 * m + 1;
    let (description, legs, lhs, rhs) = match id {
        Identity::Cyclic1 => {
            let k = rng.gen_range(2..=m);
            let x = pick_word(rng, &brauer_gens(1, k), 1, 3);
            let mut ygens = brauer_gens(0, k);
            ygens.extend(f_gens(0..=k));
            ygens.extend([Letter::Tau, Letter::K]);
            let y = pick_word(rng, &ygens, 1, 3);
            let q = [Letter::Q(k)];
            (
                format!("k={k} x={} y={}", show(&x), show(&y)),
                legs,
                one(cat(&[&q, &x, &y, &q])),
                one(cat(&[&q, &y, &x, &q])),
            )
        }
        Identity::Cyclic2 => {
            let k = rng.gen_range(1..=m);
            let mut xgens = brauer_gens(1, k);
            xgens.extend(f_gens(1..=k));
            xgens.extend([Letter::Tau, Letter::K]);
            let x = pick_word(rng, &xgens, 1, 3);
            let a = rng.gen_range(1..=k);
            let y = if rng.gen_bool(0.5) { Letter::S(0, a) } else { Letter::E(0, a) };
            let q = [Letter::Q(k)];
            (
                format!("k={k} x={} y={y}", show(&x)),
                legs,
                one(cat(&[&q, &x, &[y], &q])),
                one(cat(&[&q, &[y], &x, &q])),
            )
        }
        Identity::SymmetricProduct => {
            let k = rng.gen_range(2..=m);
            let a = rng.gen_range(1..k);
            let b = rng.gen_range(a + 1..=k);
            let body = cat(&[&ftaus(1..=k), &[Letter::Sym(k)]]);
            (format!("k={k} a={a} b={b}"), k + 1, one(cat(&[&[Letter::S(a, b)], &body])), one(body))
        }
        Identity::PhiIndependence => {
            let k = rng.gen_range(2..=m);
            let a = rng.gen_range(1..k);
            let b = rng.gen_range(a + 1..=k);
            let side = |c: usize| {
                one(cat(&[&[Letter::Q(k), Letter::Sym(k), Letter::Phi(0, c)], &ftaus(1..=k), &[Letter::Q(k)]]))
            };
            (format!("k={k} a={a} b={b}"), legs, side(a), side(b))
        }
        Identity::ModeZero => {
            let body = cat(&[&[Letter::Q(m), Letter::Sym(m)], &ftaus(1..=m), &[Letter::Q(m)]]);
            let f = [Letter::F(0, 0)];
            (String::new(), legs, one(cat(&[&f, &body])), one(cat(&[&body, &f])))
        }
        Identity::ModeOne => {
            let (q, s) = (Letter::Q(m), Letter::Sym(m));
            let fs = ftaus(1..=m);
            let fs1 = ftaus(1..=m - 1);
            let lhs = one(cat(&[&[Letter::F(1, 0), q, s], &fs, &[q]]));
            let mut rhs = Vec::new();
            for a in 1..m {
                rhs.push((
                    KPoly::one(),
                    cat(&[&[Letter::Q(m - 1), Letter::Sym(m - 1), Letter::Phi(0, a)], &fs1, &[
                        Letter::Q(m - 1),
                        Letter::E(m, 2 * m),
                    ]]),
                ));
            }
            // The first m − 1 words get (ω + K − 2)(ω + 2m − 2)/(ω + 2m − 4) in `evaluate`.
            let mm = rational(Rational::from_int(m as i64));
            let minus = rational(Rational::from_int(-(m as i64)));
            rhs.push((minus, cat(&[&[q, Letter::Phi(0, m), s], &fs1, &[Letter::F(0, m), q]])));
            rhs.push((mm.clone(), cat(&[&[q, s], &fs1, &[q, Letter::F(0, 0)]])));
            rhs.push((mm, cat(&[&[q, s, Letter::Phi(0, m)], &fs1, &[Letter::F(0, m), q]])));
            rhs.push((KPoly::one(), cat(&[&[q, s], &fs, &[q, Letter::F(1, 0)]])));
            (String::new(), legs, lhs, rhs)
        }
        Identity::GammaSvsH => {
            let parts = partitions(m);
            let lambda = parts.choose(rng).expect("m >= 1").clone();
            let l = lambda.len();
            let f: Vec<Letter> = lambda.parts().iter().enumerate().map(|(i, &p)| Letter::F(-(p as i32), i + 1)).collect();
            (
                format!("lambda={lambda}"),
                legs,
                one(cat(&[&[Letter::Q(l), Letter::Sym(l)], &f, &[Letter::Q(m)]])),
                one(cat(&[&[Letter::Q(l), Letter::Hsym(l)], &f, &[Letter::Q(m)]])),
            )
        }
        Identity::QfQ => {
            let a = rng.gen_range(0..legs);
            let mut b = rng.gen_range(0..legs - 1);
            if b >= a {
                b += 1;
            }
            let r = rng.gen_range(-2..=2);
            let e = Letter::E(a.min(b), a.max(b));
            (format!("a={a} b={b} r={r}"), legs, one(vec![e, Letter::F(r, a), e]), Vec::new())
        }
    };
    let t = tail(rng, m, legs);
    let probe = (legs > 5).then(|| rng.gen());
    let description =
        if description.is_empty() { format!("z={}", show(&t)) } else { format!("{description} z={}", show(&t)) };
    Instance { description, legs, lhs, rhs, tail: t, probe }
}

/// Scalar factors each side carries beyond its words.
fn side_factors(ctx: &Context, id: Identity, inst: &Instance, m: usize) -> Result<(KPoly, KPoly)> {
    let w = ctx.omega();
    match id {
        Identity::GammaSvsH => {
            let l = inst
                .lhs
                .first()
                .and_then(|(_, word)| match word.get(1) {
                    Some(Letter::Sym(l)) => Some(*l),
                    _ => None,
                })
                .expect("lhs starts with Q S");
            Ok((rational(gamma(l).eval(&w)?), KPoly::one()))
        }
        Identity::ModeOne => {
            let den = &w + &Rational::from_int(2 * m as i64 - 4);
            if den.is_zero() {
                return Err(Error::PoleAtEvaluation(w));
            }
            let c = &(&w + &Rational::from_int(2 * m as i64 - 2)) / &den;
            Ok((KPoly::one(), KPoly::linear(&w - &Rational::from_int(2)).scale(&c)))
        }
        _ => Ok((KPoly::one(), KPoly::one())),
    }
}

fn factor(ctx: &Context, l: &Letter, m: usize, legs: usize) -> Result<Factor> {
    Ok(match *l {
        Letter::S(a, b) => Factor::Op(ctx.s_op(a, b, legs)?),
        Letter::E(a, b) => Factor::Op(ctx.eps_op(a, b, legs)?),
        Letter::Phi(a, b) => Factor::Op(ctx.phi_op(a, b, legs)?),
        Letter::F(r, a) => Factor::F(r, a),
        Letter::FTau(a) => Factor::FTau(a),
        Letter::Q(k) => Factor::Op(ctx.qk(k, m)?),
        Letter::Sym(k) => Factor::Op(ctx.sym(k, 1, legs)?),
        Letter::Hsym(k) => Factor::Op(ctx.hsym(k, 1, legs)?),
        Letter::Tau => Factor::Tau,
        Letter::K => Factor::K,
    })
}

fn resolve(ctx: &Context, words: &[(KPoly, Vec<Letter>)], tail: &[Letter], m: usize, legs: usize) -> Result<Expr> {
    words
        .iter()
        .map(|(c, w)| {
            let fs = w.iter().chain(tail).map(|l| factor(ctx, l, m, legs)).collect::<Result<Vec<_>>>()?;
            Ok((c.clone(), fs))
        })
        .collect()
}

/// Evaluates both sides of an instance on `z|0⟩` and compares them exactly.
pub fn evaluate(ctx: &Context, id: Identity, inst: &Instance, m: usize) -> Result<Outcome> {
    let run = || -> Result<Outcome> {
        let (cl, cr) = side_factors(ctx, id, inst, m)?;
        let mut lhs = resolve(ctx, &inst.lhs, &inst.tail, m, inst.legs)?;
        let mut rhs = resolve(ctx, &inst.rhs, &inst.tail, m, inst.legs)?;
        lhs.iter_mut().for_each(|(c, _)| *c = c.mul_ref(&cl));
        if id == Identity::ModeOne {
            // Only the first m − 1 words carry the level-dependent factor.
            rhs.iter_mut().take(m - 1).for_each(|(c, _)| *c = c.mul_ref(&cr));
        } else {
            rhs.iter_mut().for_each(|(c, _)| *c = c.mul_ref(&cr));
        }
        let (l, r) = match inst.probe {
            None => (ctx.eval(&lhs, inst.legs)?, ctx.eval(&rhs, inst.legs)?),
            Some(seed) => {
                let v = probe_vector(ctx, inst.legs, seed)?;
                (ctx.eval_on(&lhs, &v)?, ctx.eval_on(&rhs, &v)?)
            }
        };
        let d = l.try_sub(&r)?;
        Ok(if d.is_zero() {
            Outcome::Equal { nontrivial: !l.is_zero() }
        } else {
            Outcome::Different(format!("{}: {} differing entries", inst.description, d.len()))
        })
    };
    match run() {
        Err(Error::PoleAtEvaluation(_)) => Ok(Outcome::Singular),
        other => other,
    }
}

// Σ_r c_r e_{r,0} |0⟩ with random nonzero integer weights.
pub(crate) fn probe_vector(ctx: &Context, legs: usize, seed: u64) -> Result<TensorOperator<VacuumElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = TensorOperator::zero(ctx.signature(), legs)?;
    for row in all_indices(ctx.signature().dim(), legs) {
        let c = rng.gen_range(1..=97i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        v.add_term(row, 0, VacuumElement::vacuum(Rational::from_int(c)));
    }
    Ok(v)
}

fn seed_for(seed: u64, id: Identity, m: usize) -> u64 {
    let i = Identity::ALL.iter().position(|&x| x == id).expect("listed") as u64;
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (i << 8) ^ m as u64
}

/// Checks every identity on `samples` random instances.
pub fn verify_rep_identities(ctx: &Context, m: usize, samples: usize, seed: u64) -> Result<Report> {
    verify_identities(ctx, m, samples, seed, &Identity::ALL)
}

pub fn verify_identities(ctx: &Context, m: usize, samples: usize, seed: u64, ids: &[Identity]) -> Result<Report> {
    if !(2..=3).contains(&m) {
        return invalid(format!("identity campaigns need 2 <= m <= 3, got {m}"));
    }
    let mut report = Report::new("rep-identities")
        .param("M", ctx.signature().m)
        .param("n", ctx.signature().n)
        .param("m", m)
        .param("samples", samples)
        .param("seed", seed);
    for &id in ids {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(seed, id, m));
        let instances: Vec<Instance> = (0..samples).map(|_| sample(id, m, &mut rng)).collect();
        let outcomes: Vec<Outcome> =
            instances.par_iter().map(|inst| evaluate(ctx, id, inst, m)).collect::<Result<_>>()?;
        report.push(summarise(id.name(), &outcomes));
        if id == Identity::ModeOne {
            report.push(negative_control(ctx, m, &instances)?);
        }
    }
    Ok(report.finish())
}

// Flipping the sign of the second term on the right must be detected.
fn negative_control(ctx: &Context, m: usize, instances: &[Instance]) -> Result<Check> {
    let name = "negative control: perturbed f[1]_0 expansion differs";
    for inst in instances.iter().take(10) {
        let mut bad = inst.clone();
        let c = &mut bad.rhs[m - 1].0;
        *c = c.scale(&Rational::from_int(-1));
        match evaluate(ctx, Identity::ModeOne, &bad, m)? {
            Outcome::Different(_) => return Ok(Check::pass(name)),
            Outcome::Singular => return Ok(Check::skipped(name, "singular parameters")),
            Outcome::Equal { .. } => {}
        }
    }
    Ok(Check::fail(name, "perturbation not detected"))
}

fn summarise(name: &str, outcomes: &[Outcome]) -> Check {
    let total = outcomes.len();
    let singular = outcomes.iter().filter(|o| **o == Outcome::Singular).count();
    let nontrivial = outcomes.iter().filter(|o| **o == Outcome::Equal { nontrivial: true }).count();
    let failures: Vec<&str> = outcomes
        .iter()
        .filter_map(|o| match o {
            Outcome::Different(w) => Some(w.as_str()),
            _ => None,
        })
        .collect();
    let label = format!("{name} ({} exact, {nontrivial} nonzero, {singular} singular of {total})", total - singular);
    if !failures.is_empty() {
        Check::fail(label, failures.iter().take(5).copied().collect::<Vec<_>>().join("; "))
    } else if singular == total {
        Check::skipped(label, "singular parameters")
    } else {
        Check::pass(label)
    }
}
