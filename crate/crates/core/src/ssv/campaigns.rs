use rayon::prelude::*;

use super::context::{word, Context, Factor};
use super::identities::probe_vector;
use super::partition::{cycle_count, partitions, y_poly};
use super::phi::{phi_integral, phi_rational, tau_polynomial, traced_term, SSVector};
use crate::coeff::{KPoly, Rational};
use crate::error::{invalid, Error, Result};
use crate::report::{Check, Report};
use crate::superspace::{SuperModule, TensorOperator};
use crate::uea::{Engine, Mode, Monomial, TauPolynomial, VacuumElement};

fn sig_params(r: Report, ctx: &Context) -> Report {
    r.param("M", ctx.signature().m).param("n", ctx.signature().n)
}

fn label(ctx: &Context, a: usize) -> String {
    let (i, j) = ctx.osp().label(a);
    format!("{i},{j}")
}

fn short(v: &VacuumElement) -> String {
    let s = v.to_string();
    if s.len() > 300 {
        format!("{}… ({} terms)", &s[..s.char_indices().nth(300).map_or(s.len(), |(i, _)| i)], v.len())
    } else {
        s
    }
}

/// Structural invariants of `Φ_m`: even, all modes negative, mode degree `−m`.
pub fn phi_invariants(phi: &SSVector) -> Vec<Check> {
    let v = &phi.value;
    let even = v.is_homogeneous(0);
    let negative = v.terms().all(|(m, _)| m.iter().all(|g| g.mode < 0));
    let degree = v.is_zero() || v.mode_degree() == Some(-(phi.m as i64));
    vec![
        Check::from_outcome("even", if even { Ok(()) } else { Err("odd monomial".into()) }),
        Check::from_outcome("negative modes", if negative { Ok(()) } else { Err("mode >= 0".into()) }),
        Check::from_outcome("homogeneous of degree -m", if degree { Ok(()) } else { Err(format!("{:?}", v.mode_degree())) }),
    ]
}

/// A level that is not critical, for the negative control: `0` unless that is critical.
pub fn generic_level(ctx: &Context) -> Rational {
    if ctx.critical_level().is_zero() {
        Rational::ONE
    } else {
        Rational::ZERO
    }
}

/// `F_α[r] Φ_m = 0` for every basis element `α` and `r ∈ modes`. Mode `0` must
/// vanish identically in `K`, positive modes at the critical level. The
/// negative control asks that some `F_α[1] Φ_m` survives at a generic level.
pub fn verify_annihilation(ctx: &Context, m: usize, modes: &[i32]) -> Result<Report> {
    let phi = phi_integral(ctx, m)?;
    Ok(annihilation_report(ctx, &phi, modes))
}

pub fn annihilation_report(ctx: &Context, phi: &SSVector, modes: &[i32]) -> Report {
    let eng = ctx.engine();
    let crit = ctx.critical_level();
    let generic = generic_level(ctx);
    let mut report = sig_params(Report::new("annihilation"), ctx)
        .param("m", phi.m)
        .param("modes", modes)
        .param("K", crit.to_string());
    report.extend(phi_invariants(phi));
    report.push(Check::pass(format!("phi has {} terms", phi.value.len())));
    let jobs: Vec<(i32, usize)> = modes.iter().flat_map(|&r| (0..ctx.osp().dim()).map(move |a| (r, a))).collect();
    let results: Vec<(i32, usize, VacuumElement)> =
        jobs.par_iter().map(|&(r, a)| (r, a, eng.act_gen(eng.gen(a, r), &phi.value))).collect();
    let mut control = false;
    for (r, a, w) in &results {
        let name = format!("F_{}[{}] phi", label(ctx, *a), r);
        let at_crit = if *r == 0 { w.clone() } else { w.at_level(&crit) };
        report.push(if at_crit.is_zero() {
            Check::pass(name)
        } else {
            Check::fail(name, short(&at_crit))
        });
        if *r == 1 && !w.at_level(&generic).is_zero() {
            control = true;
        }
    }
    if modes.contains(&1) {
        let name = format!("negative control at K = {generic}");
        report.push(if phi.value.is_zero() {
            Check::skipped(name, "phi is zero")
        } else if control {
            Check::pass(name)
        } else {
            Check::fail(name, "every F[a,1] phi vanishes at a non-critical level")
        });
    }
    report.finish()
}

/// `Φ_m Φ_{m'} = Φ_{m'} Φ_m` in `U(t^{-1}osp[t^{-1}])` for all pairs of `degrees`.
pub fn verify_commutativity(ctx: &Context, degrees: &[usize]) -> Result<Report> {
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    let phis: Vec<SSVector> = degrees.iter().map(|&m| phi_integral(ctx, m)).collect::<Result<_>>()?;
    let mut report = sig_params(Report::new("commutativity"), ctx).param("degrees", &degrees);
    let eng = ctx.engine();
    for i in 0..phis.len() {
        for j in i..phis.len() {
            let (x, y) = (&phis[i].value, &phis[j].value);
            let c = eng.u_multiply(x, y).sub(&eng.u_multiply(y, x));
            let name = format!("[phi_{}, phi_{}]", phis[i].m, phis[j].m);
            report.push(if c.is_zero() { Check::pass(name) } else { Check::fail(name, short(&c)) });
        }
    }
    Ok(report.finish())
}

/// `phi_rational = phi_integral`, or a skip when the rational form is singular.
pub fn verify_equivalence(ctx: &Context, m: usize) -> Result<Report> {
    let mut report = sig_params(Report::new("integral-vs-rational"), ctx).param("m", m);
    let integral = phi_integral(ctx, m)?;
    let name = format!("phi_{m} integral = rational");
    match phi_rational(ctx, m) {
        Ok(rational) => {
            let d = rational.value.sub(&integral.value);
            report.push(if d.is_zero() { Check::pass(name) } else { Check::fail(name, short(&d)) });
        }
        Err(Error::PoleAtEvaluation(_)) => report.push(Check::skipped(name, "singular parameters")),
        Err(e) => return Err(e),
    }
    Ok(report.finish())
}

/// Odd-length partitions, weighted like the even ones, add nothing.
pub fn verify_odd_vanishing(ctx: &Context, m: usize) -> Result<Report> {
    let mut report = sig_params(Report::new("odd-length vanishing"), ctx).param("m", m);
    let t = &ctx.omega() - &Rational::ONE;
    for lambda in partitions(m).into_iter().filter(|p| p.len() % 2 == 1) {
        let v = traced_term(ctx, &lambda)?;
        let name = format!("str H F[-{lambda}]");
        report.push(if v.is_zero() { Check::pass(name) } else { Check::fail(name, short(&v)) });
        // The same statement before tracing: Q^(l) H^(l) F[−λ] Q^(m) on 2m+1 legs,
        // applied to a random vector above five legs.
        {
            let legs = 2 * m + 1;
            let l = lambda.len();
            let mut factors = vec![Factor::Op(ctx.qk(l, m)?), Factor::Op(ctx.hsym(l, 1, legs)?)];
            factors.extend(lambda.parts().iter().enumerate().map(|(i, &p)| Factor::F(-(p as i32), i + 1)));
            factors.push(Factor::Op(ctx.qk(m, m)?));
            let w = if legs <= 5 {
                ctx.eval(&word(factors), legs)?
            } else {
                ctx.eval_on(&word(factors), &probe_vector(ctx, legs, m as u64)?)?
            };
            let name = format!("Q H F[-{lambda}] Q");
            report.push(if w.is_zero() { Check::pass(name) } else { Check::fail(name, format!("{} entries", w.len())) });
        }
        if lambda.len() >= 2 && lambda.len() <= m {
            let w = &y_poly(m, lambda.len())?.eval(&t) * &Rational::from_int(cycle_count(&lambda) as i64);
            report.push(Check::pass(format!("weight of {lambda} is {w}")));
        }
    }
    Ok(report.finish())
}

/// `x(x−1)⋯(x−j+1)/j!`.
pub fn binomial(x: &Rational, j: usize) -> Rational {
    let mut out = Rational::ONE;
    for i in 0..j {
        out = &(&out * &(x - &Rational::from_int(i as i64))) / &Rational::from_int(i as i64 + 1);
    }
    out
}

fn tau_coeff(p: &TensorOperator<TauPolynomial>, j: usize) -> TensorOperator<VacuumElement> {
    p.map_coeffs(|c| {
        let v = c.coeff(j);
        if v.is_zero() {
            None
        } else {
            Some(v)
        }
    })
}

/// `ψ_{ka} = binom(ω+k−2, k−a) ψ_{aa}` for `0 ≤ a ≤ k`, where `ψ_{ka}` is the
/// `τ^{k−a}` coefficient of `γ_k Q^(k) S^(k) f_1⋯f_k Q^(m)`.
pub fn psi_relation_check(ctx: &Context, m: usize, k: usize) -> Result<Report> {
    if k > m || m > 3 {
        return invalid(format!("need k <= m <= 3, got k={k}, m={m}"));
    }
    let mut report = sig_params(Report::new("psi"), ctx).param("m", m).param("k", k);
    let top = match tau_polynomial(ctx, k, m) {
        Ok(p) => p,
        Err(Error::PoleAtEvaluation(_)) => {
            report.push(Check::skipped(format!("psi_{k}*"), "singular parameters"));
            return Ok(report.finish());
        }
        Err(e) => return Err(e),
    };
    let degree_ok = top.terms().all(|(_, c)| c.degree().is_none_or(|d| d <= k));
    report.push(Check::from_outcome("tau degree <= k", if degree_ok { Ok(()) } else { Err("degree > k".into()) }));
    let w = ctx.omega();
    for a in 0..=k {
        let name = format!("psi_{k}{a} = binom(w+{}, {}) psi_{a}{a}", k as i64 - 2, k - a);
        let diag = match tau_polynomial(ctx, a, m) {
            Ok(p) => tau_coeff(&p, 0),
            Err(Error::PoleAtEvaluation(_)) => {
                report.push(Check::skipped(name, "singular parameters"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let c = binomial(&(&w + &Rational::from_int(k as i64 - 2)), k - a);
        let lhs = tau_coeff(&top, k - a);
        let d = lhs.try_sub(&diag.scale(&c))?;
        report.push(if d.is_zero() {
            Check::pass(name)
        } else {
            Check::fail(name, format!("{} differing entries", d.len()))
        });
        if a == 0 {
            let nz = !lhs.is_zero();
            report.push(Check::from_outcome(
                format!("psi_{k}0 nonzero"),
                if nz || c.is_zero() { Ok(()) } else { Err("zero".into()) },
            ));
        }
    }
    Ok(report.finish())
}

/// `ev_z : F_α[r] ↦ z^r F_α`, into the free `U(osp)` (all modes 0).
pub fn ev_z(free: &Engine, v: &VacuumElement, z: &Rational) -> VacuumElement {
    let mut out = VacuumElement::zero();
    let one = VacuumElement::vacuum(Rational::ONE);
    for (m, c) in v.sorted_terms() {
        let s: i64 = m.iter().map(|g| g.mode as i64).sum();
        let mut cur = one.clone();
        for g in m.iter().rev() {
            cur = free.act_gen(g.with_mode(0), &cur);
        }
        out.add_scaled(&c.scale(&z.powi(s as i32).expect("z is nonzero")), &cur);
    }
    out
}

/// `[ev_z(Φ_m), F_α] = 0` in `U(osp)` for every basis element, plus the scaling
/// `ev_z(Φ_m) = z^{−m} ev_1(Φ_m)`.
pub fn ev_centrality_check(ctx: &Context, m: usize, z: &Rational) -> Result<Report> {
    if z.is_zero() {
        return invalid("z must be nonzero");
    }
    let free = Engine::new(ctx.osp().clone(), Mode::Free);
    let phi = phi_integral(ctx, m)?;
    let e = ev_z(&free, &phi.value, z);
    let mut report = sig_params(Report::new("centrality"), ctx).param("m", m).param("z", z.to_string());
    let scaled = ev_z(&free, &phi.value, &Rational::ONE).scale(&z.powi(-(m as i32))?);
    let d = e.sub(&scaled);
    report.push(if d.is_zero() { Check::pass("ev_z = z^-m ev_1") } else { Check::fail("ev_z = z^-m ev_1", short(&d)) });
    report.push(Check::pass(format!("ev_z(phi_{m}) has {} terms", e.len())));
    let checks: Vec<Check> = (0..ctx.osp().dim())
        .into_par_iter()
        .map(|a| {
            let g: Monomial = std::iter::once(free.gen(a, 0)).collect();
            let x = VacuumElement::monomial(g, KPoly::one());
            let c = free.u_multiply(&e, &x).sub(&free.u_multiply(&x, &e));
            let name = format!("[ev(phi), F_{}]", label(ctx, a));
            if c.is_zero() {
                Check::pass(name)
            } else {
                Check::fail(name, short(&c))
            }
        })
        .collect();
    report.extend(checks);
    Ok(report.finish())
}
