use serde::Serialize;

use crate::coeff::{Poly, Rational, T};
use crate::error::{invalid, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("{parts:?} is not a partition"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `m`, largest first part first (reverse lexicographic).
pub fn partitions(m: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_even_length(m: usize) -> Result<Vec<Partition>> {
    if m < 2 {
        return invalid(format!("need m >= 2, got {m}"));
    }
    Ok(partitions(m).into_iter().filter(|p| p.len() % 2 == 0).collect())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Number of permutations of cycle type `λ`: `m!/z_λ`.
pub fn cycle_count(lambda: &Partition) -> u64 {
    let mut z = 1u64;
    let parts = lambda.parts();
    let mut i = 0;
    while i < parts.len() {
        let j = parts[i];
        let mult = parts[i..].iter().take_while(|&&p| p == j).count();
        z *= (j as u64).pow(mult as u32) * factorial(mult);
        i += mult;
    }
    factorial(lambda.size()) / z
}

/// `Y_{m,ℓ}(T) = (ℓ!/m!) ∏_{k=ℓ}^{m−1} (T + k)`.
pub fn y_poly(m: usize, l: usize) -> Result<Poly<T>> {
    if l < 2 || l > m {
        return invalid(format!("Y_{{m,l}} needs 2 <= l <= m, got m={m}, l={l}"));
    }
    let mut p = Poly::<T>::constant(Rational::frac(factorial(l) as i64, factorial(m) as i64));
    for k in l..m {
        p = p.mul_ref(&Poly::linear(Rational::from_int(k as i64)));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(v: Vec<Partition>) -> Vec<Vec<usize>> {
        v.into_iter().map(|p| p.0).collect()
    }

    #[test]
    fn even_length_examples() {
        assert_eq!(parts(partitions_even_length(2).unwrap()), vec![vec![1, 1]]);
        assert_eq!(parts(partitions_even_length(3).unwrap()), vec![vec![2, 1]]);
        assert_eq!(parts(partitions_even_length(4).unwrap()), vec![vec![3, 1], vec![2, 2], vec![1, 1, 1, 1]]);
        assert!(partitions_even_length(1).is_err());
    }

    // Brute force over S_m: cycle type of every permutation.
    fn cycle_types(m: usize) -> std::collections::HashMap<Vec<usize>, u64> {
        let mut out = std::collections::HashMap::new();
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            let mut seen = vec![false; m];
            let mut ty = Vec::new();
            for s in 0..m {
                if seen[s] {
                    continue;
                }
                let (mut x, mut len) = (s, 0);
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                    len += 1;
                }
                ty.push(len);
            }
            ty.sort_unstable_by(|a, b| b.cmp(a));
            *out.entry(ty).or_insert(0) += 1;
            // next permutation
            let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
            let j = (i + 1..m).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        out
    }

    #[test]
    fn cycle_counts_match_enumeration() {
        for m in 1..=6 {
            let brute = cycle_types(m);
            let mut total = 0;
            for p in partitions(m) {
                let c = cycle_count(&p);
                assert_eq!(Some(&c), brute.get(p.parts()), "{p}");
                total += c;
            }
            assert_eq!(total, factorial(m));
        }
        assert_eq!(cycle_count(&Partition::new(vec![2, 2]).unwrap()), 3);
        assert_eq!(cycle_count(&Partition::new(vec![2, 1]).unwrap()), 3);
    }

    #[test]
    fn y_examples() {
        let r = |a, b| Rational::frac(a, b);
        assert_eq!(y_poly(2, 2).unwrap(), Poly::one());
        assert_eq!(y_poly(3, 2).unwrap(), Poly::from_coeffs(vec![r(2, 3), r(1, 3)]));
        assert_eq!(y_poly(4, 2).unwrap(), Poly::from_coeffs(vec![r(6, 12), r(5, 12), r(1, 12)]));
        assert!(y_poly(3, 1).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
    }
}
