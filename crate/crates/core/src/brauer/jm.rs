use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::diagram::BrauerDiagram;
use super::element::BrauerElement;
use crate::coeff::{RatFun, Rational};
use crate::error::{invalid, Result};
use crate::report::{Check, Report};
use rayon::prelude::*;

/// One summand `c · (d + d^{t_a})`; `d` lives in the ambient size, `leg` is 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JmTerm {
    pub diagram: BrauerDiagram,
    pub leg: usize,
    pub coeff: RatFun,
}

/// A decomposition of an element into generators `d + d^{t_a}` of `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JmCertificate {
    pub size: usize,
    pub terms: Vec<JmTerm>,
}

impl JmCertificate {
    /// Re-expands `Σ c·(d + d^{t_a})`.
    pub fn expand(&self) -> Result<BrauerElement> {
        let mut out = BrauerElement::zero(self.size);
        for t in &self.terms {
            out.add_term(t.diagram, t.coeff.clone());
            out.add_term(t.diagram.partial_transpose(t.leg)?, t.coeff.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for JmCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})([{}] + t{})", t.coeff, t.diagram, t.leg + 1)?;
        }
        Ok(())
    }
}

// Sparse vector over Q keyed by diagram position.
type QVec = BTreeMap<usize, Rational>;

struct Row {
    vec: QVec,
    // combination of generator indices producing `vec`
    combo: QVec,
}

fn axpy(y: &mut QVec, c: &Rational, x: &QVec) {
    for (k, v) in x {
        let e = y.entry(*k).or_insert(Rational::ZERO);
        *e = &*e + &(c * v);
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Decides whether `x` lies in the span of `d + d^{t_a}` over size-`k` diagrams `d`
/// (embedded on the first `k` legs) and `a < k`.
///
/// The generators have integer coordinates, so their `Q(ω)`-span is cut out by
/// an echelon basis computed over `Q`; only the target is reduced over `Q(ω)`.
pub fn jm_membership(x: &BrauerElement, k: usize) -> Result<Option<JmCertificate>> {
    let m = x.size();
    if k == 0 || k > m {
        return invalid(format!("J order {k} needs 1 <= k <= {m}"));
    }
    let basis = BrauerDiagram::all(k)?;
    let pos: FxHashMap<BrauerDiagram, usize> = basis.iter().enumerate().map(|(i, d)| (*d, i)).collect();

    let mut target: BTreeMap<usize, RatFun> = BTreeMap::new();
    for (d, c) in x.terms() {
        let Some(small) = d.restrict(k) else {
            return invalid(format!("diagram [{d}] is not vertical on legs {}..={m}", k + 1));
        };
        target.insert(pos[&small], c.clone());
    }

    let mut gens = Vec::with_capacity(basis.len() * k);
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for (i, d) in basis.iter().enumerate() {
        for a in 0..k {
            let g = gens.len();
            gens.push((*d, a));
            let mut vec = QVec::new();
            axpy(&mut vec, &Rational::ONE, &QVec::from([(i, Rational::ONE)]));
            axpy(&mut vec, &Rational::ONE, &QVec::from([(pos[&d.partial_transpose(a)?], Rational::ONE)]));
            let mut row = Row { vec, combo: QVec::from([(g, Rational::ONE)]) };
            // reduce the leading (largest) coordinate until it is a fresh pivot
            while let Some((&lead, lv)) = row.vec.last_key_value() {
                let Some(p) = pivots.get(&lead) else { break };
                let c = -(lv / &p.vec[&lead]);
                axpy(&mut row.vec, &c, &p.vec);
                axpy(&mut row.combo, &c, &p.combo);
            }
            if let Some((&lead, _)) = row.vec.last_key_value() {
                pivots.insert(lead, row);
            }
        }
    }

    let mut coeffs: BTreeMap<usize, RatFun> = BTreeMap::new();
    while let Some((&lead, lv)) = target.last_key_value() {
        let Some(p) = pivots.get(&lead) else {
            return Ok(None);
        };
        let c = lv.scale(&p.vec[&lead].recip()?);
        for (col, v) in &p.vec {
            let e = target.entry(*col).or_default();
            *e = e.sub_ref(&c.scale(v));
            if e.is_zero() {
                target.remove(col);
            }
        }
        for (g, q) in &p.combo {
            let e = coeffs.entry(*g).or_default();
            *e = e.add_ref(&c.scale(q));
        }
    }

    let terms = coeffs
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(g, coeff)| {
            let (d, leg) = gens[g];
            Ok(JmTerm { diagram: d.embed(m, 0)?, leg, coeff })
        })
        .collect::<Result<Vec<_>>>()?;
    let cert = JmCertificate { size: m, terms };
    debug_assert_eq!(&cert.expand()?, x);
    Ok(Some(cert))
}

/// Certificates for `γ_k s^(k) − h^(k) ∈ J_k` (`k ≤ k_max`) and `h^(ℓ) ∈ J_ℓ`
/// (odd `ℓ ≤ odd_max`), each re-expanded and compared; `h^(2) ∉ J_2` as a control.
pub fn jm_campaign(k_max: usize, odd_max: usize) -> Result<Report> {
    use super::symmetriser::{brauer_symmetriser, gamma, group_symmetriser};
    let mut report = Report::new("jm").param("k_max", k_max).param("odd_max", odd_max);
    let mut jobs: Vec<(String, BrauerElement, usize)> = Vec::new();
    for k in 1..=k_max {
        let g = brauer_symmetriser(k, k)?.scale(&gamma(k));
        jobs.push((format!("gamma_{k} s^({k}) - h^({k})"), &g - &group_symmetriser(k, k)?, k));
    }
    for l in (1..=odd_max).step_by(2) {
        jobs.push((format!("h^({l})"), group_symmetriser(l, l)?, l));
    }
    let checks: Vec<Check> = jobs
        .par_iter()
        .map(|(name, x, k)| {
            let outcome = match jm_membership(x, *k) {
                Ok(Some(cert)) => match cert.expand() {
                    Ok(y) if &y == x => Ok(()),
                    Ok(_) => Err("certificate does not re-expand to the target".to_string()),
                    Err(e) => Err(e.to_string()),
                },
                Ok(None) => Err("not in J".to_string()),
                Err(e) => Err(e.to_string()),
            };
            Check::from_outcome(format!("{name} in J_{k}"), outcome)
        })
        .collect();
    report.extend(checks);
    let control = jm_membership(&group_symmetriser(2, 2)?, 2)?;
    report.push(Check::from_outcome(
        "control: h^(2) not in J_2",
        if control.is_none() { Ok(()) } else { Err("membership certificate found".into()) },
    ));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::{brauer_symmetriser, gamma, group_symmetriser};

    #[test]
    fn two_leg_difference_has_the_expected_certificate() {
        let x = &brauer_symmetriser(2, 2).unwrap().scale(&gamma(2)) - &group_symmetriser(2, 2).unwrap();
        let cert = jm_membership(&x, 2).unwrap().expect("member");
        assert_eq!(cert.expand().unwrap(), x);
        // hand decomposition: id + id^{t_1} = 2·id and s_1 + s_1^{t_1} = s_1 + ε_1
        let w = RatFun::normalize(
            crate::coeff::OmegaPoly::constant(Rational::from_int(-1)),
            crate::coeff::OmegaPoly::linear(Rational::from_int(2)),
        )
        .unwrap();
        let hand = JmCertificate {
            size: 2,
            terms: vec![
                JmTerm { diagram: BrauerDiagram::identity(2).unwrap(), leg: 0, coeff: w.scale(&Rational::frac(1, 2)) },
                JmTerm { diagram: BrauerDiagram::parse("T1-B2 T2-B1").unwrap(), leg: 0, coeff: w },
            ],
        };
        assert_eq!(hand.expand().unwrap(), x);
    }

    #[test]
    fn transposition_is_not_in_j2() {
        assert_eq!(jm_membership(&BrauerElement::s(0, 1, 2), 2).unwrap(), None);
    }

    #[test]
    fn odd_group_symmetriser_is_in_j3() {
        let h = group_symmetriser(3, 3).unwrap();
        let cert = jm_membership(&h, 3).unwrap().expect("member");
        assert_eq!(cert.expand().unwrap(), h);
    }

    #[test]
    fn precondition_is_enforced() {
        assert!(jm_membership(&BrauerElement::s(1, 2, 3), 2).is_err());
    }
}
