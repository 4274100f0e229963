use super::diagram::BrauerDiagram;
use super::element::BrauerElement;
use crate::coeff::{half_binomial, OmegaPoly, RatFun, Rational};
use crate::error::{invalid, Result};

fn check_range(k: usize, m: usize) -> Result<()> {
    if k == 0 || k > m {
        return invalid(format!("symmetriser order {k} needs 1 <= k <= {m}"));
    }
    Ok(())
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::ONE, |acc, j| &acc * &Rational::from_int(j))
}

/// `ω + c` as a rational function.
pub(crate) fn omega_plus(c: i64) -> RatFun {
    RatFun::from_poly(OmegaPoly::linear(Rational::from_int(c)))
}

/// `γ_k(ω) = (ω + k − 2)/(ω + 2k − 2)`.
pub fn gamma(k: usize) -> RatFun {
    let k = k as i64;
    omega_plus(k - 2).checked_div(&omega_plus(2 * k - 2)).expect("nonzero denominator")
}

/// `h^(k)`: the average of the permutations of legs `1..=k`, embedded in size `m`.
pub fn group_symmetriser(k: usize, m: usize) -> Result<BrauerElement> {
    check_range(k, m)?;
    let w = RatFun::constant(factorial(k).recip()?);
    let mut h = BrauerElement::zero(k);
    for d in BrauerDiagram::permutations(k)? {
        h.add_term(d, w.clone());
    }
    h.embed(m, 0)
}

/// `s^(k)` from the closed formula: diagrams with `r` top arcs carry
/// `(−1)^r / (k! · binom(ω/2 + k − 2, r))`.
pub fn brauer_symmetriser(k: usize, m: usize) -> Result<BrauerElement> {
    check_range(k, m)?;
    let kf = factorial(k);
    let weights = (0..=k / 2)
        .map(|r| {
            let b = RatFun::from_poly(half_binomial(k as i64, r as i64)?.scale(&kf));
            let w = b.recip()?;
            Ok(if r % 2 == 1 { w.neg_ref() } else { w })
        })
        .collect::<Result<Vec<RatFun>>>()?;
    let mut s = BrauerElement::zero(k);
    for d in BrauerDiagram::all(k)? {
        s.add_term(d, weights[d.top_arcs()].clone());
    }
    s.embed(m, 0)
}

/// `s^(k)` in size `k` from the product recursion
/// `s^(k) = (1 + Σφ_ak)(ω + k − 3 + Σφ_ak) s^(k−1) / (k(ω + 2k − 4))`.
pub fn symmetriser_by_product_recursion(k: usize) -> Result<BrauerElement> {
    check_range(k, k)?;
    if k == 1 {
        return BrauerElement::identity(1);
    }
    let prev = symmetriser_by_product_recursion(k - 1)?.embed(k, 0)?;
    let mut phis = BrauerElement::zero(k);
    for a in 0..k - 1 {
        phis = &phis + &BrauerElement::phi(a, k - 1, k);
    }
    let one = BrauerElement::identity(k)?;
    let left = &one + &phis;
    let right = &one.scale(&omega_plus(k as i64 - 3)) + &phis;
    let c = omega_plus(2 * k as i64 - 4)
        .scale(&Rational::from_int(k as i64))
        .recip()?;
    Ok(BrauerElement::product([&left, &right, &prev])?.scale(&c))
}

/// `s^(k)` in size `k` from the expanded recursion
/// `s^(k) = (1 + Σ s_ak − 2(Σ ε_ak + Σ_{a<b} s_ak ε_bk)/(ω + 2k − 4)) s^(k−1) / k`.
pub fn symmetriser_by_expanded_recursion(k: usize) -> Result<BrauerElement> {
    check_range(k, k)?;
    if k == 1 {
        return BrauerElement::identity(1);
    }
    let prev = symmetriser_by_expanded_recursion(k - 1)?.embed(k, 0)?;
    let last = k - 1;
    let mut lin = BrauerElement::identity(k)?;
    let mut contractions = BrauerElement::zero(k);
    for a in 0..last {
        lin = &lin + &BrauerElement::s(a, last, k);
        contractions = &contractions + &BrauerElement::eps(a, last, k);
        for b in a + 1..last {
            contractions = &contractions + &(&BrauerElement::s(a, last, k) * &BrauerElement::eps(b, last, k));
        }
    }
    let c = omega_plus(2 * k as i64 - 4).recip()?.scale(&Rational::from_int(-2));
    let bracket = &lin + &contractions.scale(&c);
    Ok((&bracket * &prev).scale_rational(&Rational::frac(1, k as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::GeneratorKind::*;

    #[test]
    fn small_symmetrisers() {
        let one = BrauerElement::identity(2).unwrap();
        let s1 = BrauerElement::generator(Transposition, 1, 2, 2).unwrap();
        let e1 = BrauerElement::generator(Contraction, 1, 2, 2).unwrap();
        let half = Rational::frac(1, 2);
        let h2 = (&one + &s1).scale_rational(&half);
        assert_eq!(group_symmetriser(2, 2).unwrap(), h2);
        assert_eq!(brauer_symmetriser(1, 2).unwrap(), one);
        let inv_omega = RatFun::omega().recip().unwrap();
        assert_eq!(brauer_symmetriser(2, 2).unwrap(), &h2 - &e1.scale(&inv_omega));
        assert!(brauer_symmetriser(3, 2).is_err());
        assert!(group_symmetriser(0, 2).is_err());
    }

    #[test]
    fn three_leg_group_symmetriser_matches_words() {
        let s1 = BrauerElement::s(0, 1, 3);
        let s2 = BrauerElement::s(1, 2, 3);
        let words = [
            BrauerElement::identity(3).unwrap(),
            s1.clone(),
            s2.clone(),
            &s1 * &s2,
            &s2 * &s1,
            BrauerElement::product([&s1, &s2, &s1]).unwrap(),
        ];
        let sum = words.iter().fold(BrauerElement::zero(3), |acc, w| &acc + w);
        assert_eq!(group_symmetriser(3, 3).unwrap(), sum.scale_rational(&Rational::frac(1, 6)));
    }

    #[test]
    fn recursions_agree_with_closed_form() {
        for k in 1..=4 {
            let s = brauer_symmetriser(k, k).unwrap();
            assert_eq!(symmetriser_by_expanded_recursion(k).unwrap(), s, "k = {k}");
            assert_eq!(symmetriser_by_product_recursion(k).unwrap(), s, "k = {k}");
        }
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(3).eval(&Rational::from_int(-1)).unwrap(), Rational::ZERO);
        assert_eq!(gamma(2).eval(&Rational::from_int(3)).unwrap(), Rational::frac(3, 5));
    }
}
