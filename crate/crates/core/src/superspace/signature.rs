use serde::Serialize;

use crate::coeff::Rational;
use crate::error::{invalid, Result};

/// Largest supported `M + 2n`; indices are packed three bits per leg.
pub const MAX_DIM: usize = 8;

/// The superspace `C^{M|2n}`. Indices are 0-based internally: index `i`
/// stands for the basis vector `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    #[serde(rename = "M")]
    pub m: usize,
    pub n: usize,
}

impl Signature {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let d = m + 2 * n;
        if d == 0 || d > MAX_DIM {
            return invalid(format!("M + 2n = {d} outside 1..={MAX_DIM}"));
        }
        Ok(Signature { m, n })
    }

    pub fn dim(&self) -> usize {
        self.m + 2 * self.n
    }

    /// `i ↦ i′`.
    pub fn prime(&self, i: usize) -> usize {
        self.dim() - 1 - i
    }

    /// `ī`: odd for the first and last `n` indices.
    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i < self.n || i >= self.m + self.n)
    }

    /// `ε_i`: `+1` on the first `M + n` indices.
    pub fn sign(&self, i: usize) -> i64 {
        if i < self.m + self.n {
            1
        } else {
            -1
        }
    }

    /// `(−1)^ī`.
    pub fn str_sign(&self, i: usize) -> i64 {
        1 - 2 * self.parity(i) as i64
    }

    /// `M − 2n`, the value of ω under the representation.
    pub fn superdim(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    pub fn omega(&self) -> Rational {
        Rational::from_int(self.superdim())
    }

    /// `h^∨ = M − 2n − 2`.
    pub fn dual_coxeter(&self) -> i64 {
        self.superdim() - 2
    }

    /// The critical level `−h^∨`.
    pub fn critical_level(&self) -> Rational {
        Rational::from_int(-self.dual_coxeter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_parity_and_signs() {
        for (m, n) in [(1, 1), (2, 1), (3, 1), (0, 1), (3, 0), (0, 2), (2, 2)] {
            let s = Signature::new(m, n).unwrap();
            let mut sdim = 0;
            for i in 0..s.dim() {
                assert_eq!(s.prime(s.prime(i)), i);
                assert_eq!(s.parity(i), s.parity(s.prime(i)));
                sdim += s.str_sign(i);
            }
            assert_eq!(sdim, s.superdim());
        }
        let s = Signature::new(0, 1).unwrap();
        assert_eq!((s.prime(0), s.sign(0), s.sign(1)), (1, 1, -1));
        assert!(Signature::new(0, 0).is_err());
        assert!(Signature::new(5, 2).is_err());
    }
}
