use rayon::prelude::*;

use super::element::BrauerElement;
use super::symmetriser::{
    brauer_symmetriser, omega_plus, symmetriser_by_expanded_recursion,
    symmetriser_by_product_recursion,
};
use crate::coeff::{RatFun, Rational};
use crate::error::{invalid, Result};
use crate::report::{Check, Report};

type Outcome = std::result::Result<(), String>;
type Job = Box<dyn Fn() -> Outcome + Send + Sync>;

fn same(lhs: &BrauerElement, rhs: &BrauerElement) -> Outcome {
    if lhs == rhs {
        return Ok(());
    }
    let mut w = format!("lhs - rhs = {}", lhs - rhs);
    if w.len() > 400 {
        w.truncate(400);
        w.push_str("...");
    }
    Err(w)
}

fn lift(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Err(e.to_string()))
}

fn prod(xs: &[&BrauerElement]) -> BrauerElement {
    BrauerElement::product(xs.iter().copied()).expect("same sizes")
}

fn s(a: usize, b: usize, n: usize) -> BrauerElement {
    BrauerElement::s(a, b, n)
}

fn e(a: usize, b: usize, n: usize) -> BrauerElement {
    BrauerElement::eps(a, b, n)
}

fn phi(a: usize, b: usize, n: usize) -> BrauerElement {
    BrauerElement::phi(a, b, n)
}

fn ratio(num: RatFun, den: RatFun) -> RatFun {
    num.checked_div(&den).expect("nonzero denominator")
}

// s^(k) on legs 1..=k of the size-n algebra labelled 0..n-1.
fn hat_sym(k: usize, n: usize) -> Result<BrauerElement> {
    if k == 0 {
        return BrauerElement::identity(n);
    }
    brauer_symmetriser(k, k)?.embed(n, 1)
}

// q^(k) = ε_{1,m+1} ⋯ ε_{k,m+k}
fn q(k: usize, m: usize) -> Result<BrauerElement> {
    let n = 2 * m + 1;
    let mut out = BrauerElement::identity(n)?;
    for a in 1..=k {
        out = out.multiply(&e(a, m + a, n))?;
    }
    Ok(out)
}

fn defining_relations(n: usize, jobs: &mut Vec<(String, Job)>) {
    let mut add = |name: &str, f: Job| jobs.push((format!("relations/B{n}/{name}"), f));
    // 0-based generators s_a = s_{a,a+1}, ε_a = ε_{a,a+1} for a < n-1
    let g = n - 1;
    add("s_squared", Box::new(move || {
        (0..g).try_for_each(|a| same(&(&s(a, a + 1, n) * &s(a, a + 1, n)), &BrauerElement::identity(n).unwrap()))
    }));
    add("e_squared", Box::new(move || {
        (0..g).try_for_each(|a| same(&(&e(a, a + 1, n) * &e(a, a + 1, n)), &e(a, a + 1, n).scale(&RatFun::omega())))
    }));
    add("s_e_absorb", Box::new(move || {
        (0..g).try_for_each(|a| {
            let (sa, ea) = (s(a, a + 1, n), e(a, a + 1, n));
            same(&(&sa * &ea), &ea)?;
            same(&(&ea * &sa), &ea)
        })
    }));
    add("far_commute", Box::new(move || {
        for a in 0..g {
            for b in a + 2..g {
                let (sa, ea, sb, eb) = (s(a, a + 1, n), e(a, a + 1, n), s(b, b + 1, n), e(b, b + 1, n));
                same(&(&sa * &sb), &(&sb * &sa))?;
                same(&(&ea * &eb), &(&eb * &ea))?;
                same(&(&sa * &eb), &(&eb * &sa))?;
                same(&(&ea * &sb), &(&sb * &ea))?;
            }
        }
        Ok(())
    }));
    add("braid", Box::new(move || {
        (0..g.saturating_sub(1)).try_for_each(|a| {
            let (x, y) = (s(a, a + 1, n), s(a + 1, a + 2, n));
            same(&prod(&[&x, &y, &x]), &prod(&[&y, &x, &y]))
        })
    }));
    add("e_e_e", Box::new(move || {
        (0..g.saturating_sub(1)).try_for_each(|a| {
            let (x, y) = (e(a, a + 1, n), e(a + 1, a + 2, n));
            same(&prod(&[&x, &y, &x]), &x)?;
            same(&prod(&[&y, &x, &y]), &y)
        })
    }));
    add("s_e_e", Box::new(move || {
        (0..g.saturating_sub(1)).try_for_each(|a| {
            let (sa, sb, ea, eb) = (s(a, a + 1, n), s(a + 1, a + 2, n), e(a, a + 1, n), e(a + 1, a + 2, n));
            same(&prod(&[&sa, &eb, &ea]), &(&sb * &ea))?;
            same(&prod(&[&eb, &ea, &sb]), &(&eb * &sa))
        })
    }));
    add("pair_words", Box::new(move || {
        // s_ab = s_a ⋯ s_{b−2} s_{b−1} s_{b−2} ⋯ s_a and likewise for ε_ab
        for a in 0..n {
            for b in a + 1..n {
                let mut conj = BrauerElement::identity(n).unwrap();
                for c in a..b - 1 {
                    conj = &conj * &s(c, c + 1, n);
                }
                let mut rev = BrauerElement::identity(n).unwrap();
                for c in (a..b - 1).rev() {
                    rev = &rev * &s(c, c + 1, n);
                }
                same(&prod(&[&conj, &s(b - 1, b, n), &rev]), &s(a, b, n))?;
                same(&prod(&[&conj, &e(b - 1, b, n), &rev]), &e(a, b, n))?;
            }
        }
        Ok(())
    }));
}

fn symmetriser_properties(k: usize, jobs: &mut Vec<(String, Job)>) {
    let mut add = |name: &str, f: Job| jobs.push((format!("symmetriser/k{k}/{name}"), f));
    add("idempotent", Box::new(move || {
        lift((|| {
            let x = brauer_symmetriser(k, k)?;
            if x.is_zero() {
                return Ok(Err("s^(k) vanished".to_string()));
            }
            Ok(same(&(&x * &x), &x))
        })())
    }));
    add("absorbs_transpositions", Box::new(move || {
        let x = brauer_symmetriser(k, k).map_err(|e| e.to_string())?;
        for a in 0..k {
            for b in a + 1..k {
                same(&(&s(a, b, k) * &x), &x)?;
                same(&(&x * &s(a, b, k)), &x)?;
            }
        }
        Ok(())
    }));
    add("kills_contractions", Box::new(move || {
        let x = brauer_symmetriser(k, k).map_err(|e| e.to_string())?;
        let zero = BrauerElement::zero(k);
        for a in 0..k {
            for b in a + 1..k {
                same(&(&e(a, b, k) * &x), &zero)?;
                same(&(&x * &e(a, b, k)), &zero)?;
            }
        }
        Ok(())
    }));
    add("expanded_recursion", Box::new(move || {
        lift((|| Ok(same(&symmetriser_by_expanded_recursion(k)?, &brauer_symmetriser(k, k)?)))())
    }));
    add("product_recursion", Box::new(move || {
        lift((|| Ok(same(&symmetriser_by_product_recursion(k)?, &brauer_symmetriser(k, k)?)))())
    }));
}

fn hat_identities(m: usize, jobs: &mut Vec<(String, Job)>) {
    let n = 2 * m + 1;
    let mut add = |name: String, f: Job| jobs.push((format!("B{n}/{name}"), f));
    for k in 1..=m {
        add(format!("lemma132/k{k}"), Box::new(move || {
            lift((|| {
                let ek = e(k, m + k, n);
                let lhs = prod(&[&ek, &hat_sym(k, n)?, &ek]);
                let kk = k as i64;
                let c = ratio(
                    omega_plus(kk - 3).mul_ref(&omega_plus(2 * kk - 2)),
                    omega_plus(2 * kk - 4).scale(&Rational::from_int(kk)),
                );
                let rhs = (&hat_sym(k - 1, n)? * &ek).scale(&c);
                Ok(same(&lhs, &rhs))
            })())
        }));
        add(format!("lemma817/k{k}"), Box::new(move || {
            lift((|| {
                let ek = e(k, m + k, n);
                let lhs = prod(&[&ek, &hat_sym(k, n)?, &phi(0, k, n), &ek]);
                let kk = k as i64;
                let c = ratio(omega_plus(2 * kk - 2), omega_plus(2 * kk - 4).scale(&Rational::from_int(kk)));
                let mut sum = BrauerElement::zero(n);
                for a in 1..k {
                    sum = &sum + &phi(0, a, n);
                }
                let rhs = prod(&[&hat_sym(k - 1, n)?, &sum, &ek]).scale(&c);
                Ok(same(&lhs, &rhs))
            })())
        }));
        add(format!("lemma817_steps/k{k}"), Box::new(move || {
            let ek = e(k, m + k, n);
            let p0k = phi(0, k, n);
            same(&prod(&[&ek, &p0k, &ek]), &BrauerElement::zero(n))?;
            for a in 1..k {
                same(&prod(&[&ek, &s(a, k, n), &p0k, &ek]), &(&phi(0, a, n) * &ek))?;
                same(&prod(&[&ek, &e(a, k, n), &p0k, &ek]), &-&(&phi(0, a, n) * &ek))?;
                for b in a + 1..k {
                    let lhs = prod(&[&ek, &s(a, k, n), &e(b, k, n), &p0k, &ek]);
                    same(&lhs, &prod(&[&e(a, b, n), &phi(0, a, n), &ek]))?;
                }
            }
            Ok(())
        }));
        add(format!("qelleq/l{k}"), Box::new(move || {
            let ql = q(k, m).map_err(|e| e.to_string())?;
            for b in 1..=k {
                let sb = s(b, m + b, n);
                same(&(&ql * &sb), &ql)?;
                same(&(&sb * &ql), &ql)?;
                for a in 1..=k {
                    if a != b {
                        let lhs = &ql * &(&s(a, b, n) + &e(a, b, n));
                        let rhs = &ql * &(&s(a, m + b, n) + &e(a, m + b, n));
                        same(&lhs, &rhs)?;
                    }
                }
            }
            Ok(())
        }));
    }
    add("cyclic1_relations".into(), Box::new(move || {
        for a in 1..=m {
            for b in a + 1..=m {
                let ee = &e(a, m + a, n) * &e(b, m + b, n);
                same(&(&ee * &s(a, b, n)), &(&ee * &s(m + a, m + b, n)))?;
                same(&(&ee * &e(a, b, n)), &(&ee * &e(m + a, m + b, n)))?;
                same(&(&s(m + a, m + b, n) * &ee), &(&s(a, b, n) * &ee))?;
                same(&(&e(m + a, m + b, n) * &ee), &(&e(a, b, n) * &ee))?;
            }
        }
        Ok(())
    }));
    add("cyclic2_relations".into(), Box::new(move || {
        for a in 1..=m {
            let ea = e(a, m + a, n);
            same(&(&ea * &s(0, a, n)), &(&ea * &e(0, m + a, n)))?;
            same(&(&e(0, m + a, n) * &ea), &(&s(0, a, n) * &ea))?;
            same(&(&ea * &e(0, a, n)), &(&ea * &s(0, m + a, n)))?;
            same(&(&s(0, m + a, n) * &ea), &(&e(0, a, n) * &ea))?;
        }
        Ok(())
    }));
    add("contraction_slide".into(), Box::new(move || {
        // ε_xy s_ay = ε_xy ε_ax for distinct x, y, a
        for x in 0..n {
            for y in 0..n {
                for a in 0..n {
                    if x != y && a != x && a != y {
                        same(&(&e(x, y, n) * &s(a, y, n)), &(&e(x, y, n) * &e(a, x, n)))?;
                    }
                }
            }
        }
        Ok(())
    }));
    add("phi_sum_commutes_with_symmetriser".into(), Box::new(move || {
        lift((|| {
            let sm = hat_sym(m, n)?;
            let mut sum = BrauerElement::zero(n);
            for a in 1..=m {
                sum = &sum + &phi(0, a, n);
            }
            Ok(same(&(&sm * &sum), &(&sum * &sm)))
        })())
    }));
}

/// Exact check of the diagrammatic identity catalogue in `B_N(ω)` for
/// `N ≤ 2·m_max + 1`; checks are sorted by name.
pub fn identity_suite(m_max: usize) -> Result<Report> {
    if !(1..=4).contains(&m_max) {
        return invalid(format!("identity suite supports 1 <= m_max <= 4, got {m_max}"));
    }
    let mut jobs: Vec<(String, Job)> = Vec::new();
    for n in 2..=2 * m_max + 1 {
        defining_relations(n, &mut jobs);
    }
    for k in 1..=m_max {
        symmetriser_properties(k, &mut jobs);
    }
    for m in 1..=m_max {
        hat_identities(m, &mut jobs);
    }
    let checks: Vec<Check> = jobs
        .par_iter()
        .map(|(name, job)| Check::from_outcome(name.clone(), job()))
        .collect();
    let mut report = Report::new("brauer").param("m_max", m_max);
    report.extend(checks);
    report.sort_checks();
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let r = identity_suite(2).unwrap();
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
        let names: Vec<_> = r.checks.iter().map(|c| c.name.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn projected_symmetriser_at_k2_has_the_closed_coefficient() {
        // ε_{2,4} s^(2) ε_{2,4} in B_5 against (ω−1)(ω+2)/(2ω) · ε_{2,4}
        let n = 5;
        let e24 = e(2, 4, n);
        let lhs = prod(&[&e24, &hat_sym(2, n).unwrap(), &e24]);
        let c = ratio(omega_plus(-1).mul_ref(&omega_plus(2)), RatFun::omega().scale(&Rational::from_int(2)));
        assert_eq!(lhs, e24.scale(&c));
    }

    #[test]
    fn rejects_large_m() {
        assert!(identity_suite(5).is_err());
    }
}
