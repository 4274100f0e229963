use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::context::{Context, Factor};
use super::partition::{cycle_count, partitions_even_length, y_poly, Partition};
use crate::brauer::gamma;
use crate::coeff::Rational;
use crate::error::{invalid, Result};
use crate::report::Report;
use crate::superspace::{Signature, SuperModule, TensorOperator};
use crate::uea::{TauPolynomial, VacuumElement};

/// One summand of the integral form: partition, `c_λ` and `Y_{m,ℓ}(M − 2n − 1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub lambda: Partition,
    pub c: u64,
    #[serde(rename = "Y")]
    pub y: Rational,
}

/// `Φ_m` as an element of the vacuum module.
#[derive(Clone, Debug)]
pub struct SSVector {
    pub sig: Signature,
    pub m: usize,
    pub value: VacuumElement,
    pub expansion: Vec<ExpansionTerm>,
    pub reports: Vec<Report>,
}

impl Serialize for SSVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(6))?;
        map.serialize_entry("M", &self.sig.m)?;
        map.serialize_entry("n", &self.sig.n)?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("terms", &self.value)?;
        map.serialize_entry("expansion", &self.expansion)?;
        map.serialize_entry("reports", &self.reports)?;
        map.end()
    }
}

/// `str_{1..ℓ} H^(ℓ) F[−λ]` for a partition of length `ℓ`.
pub fn traced_term(ctx: &Context, lambda: &Partition) -> Result<VacuumElement> {
    let l = lambda.len();
    let factors: Vec<Factor> = lambda.parts().iter().enumerate().map(|(a, &p)| Factor::F(-(p as i32), a)).collect();
    let v = ctx.act(&factors, &crate::uea::on_vacuum(&TensorOperator::identity(ctx.signature(), l)?))?;
    let h = ctx.hsym(l, 0, l)?;
    h.supertrace_of_product_with(&v, |c, x| x.scale(c))
}

/// `Φ_m = Σ_{λ ⊢ m, ℓ(λ) even} Y_{m,ℓ}(M − 2n − 1) c_λ str_{1..ℓ} H^(ℓ) F[−λ]`.
pub fn phi_integral(ctx: &Context, m: usize) -> Result<SSVector> {
    let parts = partitions_even_length(m)?;
    let t = &ctx.omega() - &Rational::ONE;
    let pieces: Vec<Result<(ExpansionTerm, VacuumElement)>> = parts
        .par_iter()
        .map(|lambda| {
            let y = y_poly(m, lambda.len())?.eval(&t);
            let c = cycle_count(lambda);
            let w = &y * &Rational::from_int(c as i64);
            let v = if w.is_zero() { VacuumElement::zero() } else { traced_term(ctx, lambda)?.scale(&w) };
            Ok((ExpansionTerm { lambda: lambda.clone(), c, y }, v))
        })
        .collect();
    let mut value = VacuumElement::zero();
    let mut expansion = Vec::new();
    for p in pieces {
        let (e, v) = p?;
        value.add_assign(&v);
        expansion.push(e);
    }
    Ok(SSVector { sig: ctx.signature(), m, value, expansion, reports: Vec::new() })
}

/// `γ_m(M − 2n) str_{1..m} S^(m) (τ + F[−1]_1) ⋯ (τ + F[−1]_m) |0⟩`;
/// `PoleAtEvaluation` when `γ_m` or `s^(m)` is singular at `ω = M − 2n`.
pub fn phi_rational(ctx: &Context, m: usize) -> Result<SSVector> {
    if m < 2 {
        return invalid(format!("need m >= 2, got {m}"));
    }
    let g = gamma(m).eval(&ctx.omega())?;
    let s = ctx.sym(m, 0, m)?;
    let factors: Vec<Factor> = (0..m).map(Factor::FTau).collect();
    let v = ctx.act(&factors, &crate::uea::on_vacuum(&TensorOperator::identity(ctx.signature(), m)?))?;
    let value = s.supertrace_of_product_with(&v, |c, x| x.scale(c))?.scale(&g);
    Ok(SSVector { sig: ctx.signature(), m, value, expansion: Vec::new(), reports: Vec::new() })
}

/// `γ_k Q^(k) S^(k) f_1 ⋯ f_k Q^(m)` on the `2m+1` legs, as a polynomial
/// in `τ` (τ to the right) with vacuum-module entries; `k = 0` gives `Q^(m)`.
pub fn tau_polynomial(ctx: &Context, k: usize, m: usize) -> Result<TensorOperator<TauPolynomial>> {
    if k > m || m == 0 {
        return invalid(format!("need 0 <= k <= m, m >= 1; got k={k}, m={m}"));
    }
    let legs = 2 * m + 1;
    let mut factors = Vec::new();
    if k > 0 {
        factors.push(Factor::Op(ctx.qk(k, m)?));
        factors.push(Factor::Op(ctx.sym(k, 1, legs)?));
        factors.extend((1..=k).map(Factor::FTau));
    }
    factors.push(Factor::Op(ctx.qk(m, m)?));
    let out = ctx.eval_tau(&factors, legs)?;
    if k == 0 {
        return Ok(out);
    }
    let g = gamma(k).eval(&ctx.omega())?;
    Ok(out.scale(&g))
}

impl std::fmt::Display for SSVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "phi_{} for osp({}|{})", self.m, self.sig.m, 2 * self.sig.n)?;
        for e in &self.expansion {
            writeln!(f, "  lambda={} c={} Y={}", e.lambda, e.c, e.y)?;
        }
        writeln!(f, "  {} terms", self.value.len())?;
        write!(f, "{}", self.value)?;
        for r in &self.reports {
            write!(f, "\n{r}")?;
        }
        Ok(())
    }
}
