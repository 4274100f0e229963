use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::operator::{all_indices, TensorOperator};
use super::pq::{build_p, build_q};
use super::signature::Signature;
use crate::coeff::Rational;
use crate::error::{invalid, Result};
use crate::report::{Check, Report};

type Op = TensorOperator<Rational>;

#[derive(Clone, Copy)]
enum G {
    S(usize, usize),
    E(usize, usize),
}

struct Relation {
    name: &'static str,
    lhs: Vec<G>,
    omega_pow: u32,
    rhs: Vec<G>,
}

// Defining relations of B_m plus the words for s_ab and ε_ab, 0-based.
fn relations(m: usize) -> Vec<Relation> {
    use G::*;
    let rel = |name, lhs, omega_pow, rhs| Relation { name, lhs, omega_pow, rhs };
    let mut out = Vec::new();
    for a in 0..m.saturating_sub(1) {
        let (sa, ea) = (S(a, a + 1), E(a, a + 1));
        out.push(rel("s_squared", vec![sa, sa], 0, vec![]));
        out.push(rel("e_squared", vec![ea, ea], 1, vec![ea]));
        out.push(rel("s_e_absorb", vec![sa, ea], 0, vec![ea]));
        out.push(rel("s_e_absorb", vec![ea, sa], 0, vec![ea]));
        for b in a + 2..m - 1 {
            let (sb, eb) = (S(b, b + 1), E(b, b + 1));
            out.push(rel("far_commute", vec![sa, sb], 0, vec![sb, sa]));
            out.push(rel("far_commute", vec![ea, eb], 0, vec![eb, ea]));
            out.push(rel("far_commute", vec![sa, eb], 0, vec![eb, sa]));
            out.push(rel("far_commute", vec![ea, sb], 0, vec![sb, ea]));
        }
        if a + 2 < m {
            let (sb, eb) = (S(a + 1, a + 2), E(a + 1, a + 2));
            out.push(rel("braid", vec![sa, sb, sa], 0, vec![sb, sa, sb]));
            out.push(rel("e_e_e", vec![ea, eb, ea], 0, vec![ea]));
            out.push(rel("e_e_e", vec![eb, ea, eb], 0, vec![eb]));
            out.push(rel("s_e_e", vec![sa, eb, ea], 0, vec![sb, ea]));
            out.push(rel("s_e_e", vec![eb, ea, sb], 0, vec![eb, sa]));
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            let conj: Vec<G> = (a..b - 1).map(|c| S(c, c + 1)).collect();
            let rev: Vec<G> = conj.iter().rev().copied().collect();
            for (name, mid, g) in [("pair_words", S(b - 1, b), S(a, b)), ("pair_words", E(b - 1, b), E(a, b))] {
                let mut w = conj.clone();
                w.push(mid);
                w.extend(rev.iter().copied());
                out.push(rel(name, w, 0, vec![g]));
            }
        }
    }
    out
}

fn image(word: &[G], legs: usize, sig: Signature) -> Result<Op> {
    let mut out = Op::identity(sig, legs)?;
    for g in word {
        let f = match *g {
            G::S(a, b) => build_p(a, b, legs, sig)?,
            G::E(a, b) => build_q(a, b, legs, sig)?,
        };
        out = out.compose(&f)?;
    }
    Ok(out)
}

fn same(lhs: &Op, rhs: &Op) -> std::result::Result<(), String> {
    if lhs == rhs {
        return Ok(());
    }
    let diff = lhs.try_sub(rhs).map_err(|e| e.to_string())?;
    let mut w = format!("{} differing entries, e.g. {}", diff.len(), diff);
    w.truncate(300);
    Err(w)
}

/// Checks that the `P`/`Q` images satisfy every defining relation of
/// `B_k(M − 2n)` for `2 ≤ k ≤ m`.
pub fn rep_relations_check(sig: Signature, m: usize) -> Result<Report> {
    if !(2..=5).contains(&m) {
        return invalid(format!("relation check supports 2 <= m <= 5, got {m}"));
    }
    let w = sig.omega();
    let mut report = Report::new("rep_relations").param("M", sig.m).param("n", sig.n).param("m", m);
    for k in 2..=m {
        let mut by_name: std::collections::BTreeMap<&str, std::result::Result<(), String>> = Default::default();
        for r in relations(k) {
            let lhs = image(&r.lhs, k, sig)?;
            let rhs = image(&r.rhs, k, sig)?.scale(&w.pow(r.omega_pow));
            let entry = by_name.entry(r.name).or_insert(Ok(()));
            if entry.is_ok() {
                *entry = same(&lhs, &rhs);
            }
        }
        for (name, outcome) in by_name {
            report.push(Check::from_outcome(format!("B{k}/{name}"), outcome));
        }
    }
    let q12 = build_q::<Rational>(0, 1, 2, sig)?;
    let id1 = Op::identity(sig, 1)?;
    report.push(Check::from_outcome("str2_Q12_is_identity", same(&q12.partial_supertrace(&[1])?, &id1)));
    let p12 = build_p::<Rational>(0, 1, 2, sig)?;
    report.push(Check::from_outcome("str1_P12_is_identity", same(&p12.partial_supertrace(&[0])?, &id1)));
    let full = p12.supertrace()?;
    report.push(Check::from_outcome(
        "str12_P12_is_superdim",
        if full == w { Ok(()) } else { Err(format!("got {full}")) },
    ));
    Ok(report.finish())
}

/// A random operator with `terms` entries (capped by the matrix size) and small rational coefficients.
pub fn random_operator(sig: Signature, legs: usize, terms: usize, rng: &mut impl Rng) -> Result<Op> {
    let all: Vec<_> = all_indices(sig.dim(), legs).collect();
    let mut out = Op::zero(sig, legs)?;
    let terms = terms.min(all.len() * all.len());
    while out.len() < terms {
        let i = all[rng.gen_range(0..all.len())];
        let j = all[rng.gen_range(0..all.len())];
        let c = Rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        out.add_term(i, j, c);
    }
    Ok(out)
}

/// `Q_{a,m+1} X Q_{a,m+1} = (str_a X) Q_{a,m+1}` for the identity, for
/// transpositions `P_ac`, and for `samples` random operators `X` on `m` legs.
pub fn qxq_check(sig: Signature, m: usize, samples: usize, seed: u64) -> Result<Report> {
    if !(1..=3).contains(&m) {
        return invalid(format!("qxq check supports 1 <= m <= 3, got {m}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<(String, Op)> = vec![("identity".into(), Op::identity(sig, m)?)];
    for a in 0..m {
        for c in a + 1..m {
            cases.push((format!("P{}{}", a + 1, c + 1), build_p(a, c, m, sig)?));
        }
    }
    for t in 0..samples {
        cases.push((format!("random{t:02}"), random_operator(sig, m, 5, &mut rng)?));
    }
    let mut report = Report::new("qxq")
        .param("M", sig.m)
        .param("n", sig.n)
        .param("m", m)
        .param("seed", seed);
    for (name, x) in cases {
        let big = x.pad(m + 1)?;
        for a in 0..m {
            let q = build_q::<Rational>(a, m, m + 1, sig)?;
            let lhs = Op::product([&q, &big, &q])?;
            let rest: Vec<usize> = (0..=m).filter(|&p| p != a && p != m).collect();
            let traced = x.partial_supertrace(&[a])?.embed(m + 1, &rest)?;
            let rhs = traced.compose(&q)?;
            report.push(Check::from_outcome(format!("{name}/a{}", a + 1), same(&lhs, &rhs)));
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: [(usize, usize); 5] = [(1, 1), (2, 1), (3, 1), (0, 1), (3, 0)];

    #[test]
    fn relations_hold_on_the_grid() {
        for (m, n) in GRID {
            let r = rep_relations_check(Signature::new(m, n).unwrap(), 4).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn qxq_holds_on_random_operands() {
        for (m, n) in GRID {
            for legs in 1..=3 {
                let r = qxq_check(Signature::new(m, n).unwrap(), legs, 4, 7).unwrap();
                assert!(r.all_passed(), "{r}");
            }
        }
    }
}
