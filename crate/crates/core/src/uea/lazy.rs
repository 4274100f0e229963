use std::fmt;

use smallvec::SmallVec;

use super::vacuum::{monomial_parity, Gen};
use crate::coeff::Rational;
use crate::superspace::{SuperModule, SuperRing};

/// Letter of a word in `U(ôsp) ⋊ C[τ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Gen(Gen),
    Tau,
    K,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(g) => write!(f, "{g}"),
            Letter::Tau => f.write_str("τ"),
            Letter::K => f.write_str("K"),
        }
    }
}

pub type Word = SmallVec<[Letter; 6]>;

fn word_parity(w: &[Letter]) -> u8 {
    let gens: SmallVec<[Gen; 8]> = w
        .iter()
        .filter_map(|l| match l {
            Letter::Gen(g) => Some(*g),
            _ => None,
        })
        .collect();
    monomial_parity(&gens)
}

/// Linear combination of words, multiplied by concatenation and never
/// normal ordered; evaluation happens through an engine.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LazyU {
    terms: Vec<(Word, Rational)>,
}

impl LazyU {
    pub fn word(w: Word, c: Rational) -> Self {
        let mut out = Self::default();
        out.push(w, c);
        out
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(std::iter::once(l).collect(), Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        Self::word(Word::new(), c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter().map(|(w, c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(x, _)| *x == w) {
            self.terms[pos].1 += &c;
            if self.terms[pos].1.is_zero() {
                self.terms.swap_remove(pos);
            }
        } else {
            self.terms.push((w, c));
        }
    }
}

impl SuperModule for LazyU {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.push(w.clone(), c.clone());
        }
    }
    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        LazyU { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }
    fn parity(&self) -> u8 {
        self.terms.first().map_or(0, |(w, _)| word_parity(w))
    }
}

impl SuperRing for LazyU {
    fn one() -> Self {
        Self::constant(Rational::ONE)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let w: Word = a.iter().chain(b.iter()).copied().collect();
                out.push(w, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LazyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for l in w {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}
