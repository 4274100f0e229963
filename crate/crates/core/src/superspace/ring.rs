use crate::coeff::Rational;

/// Coefficients of a tensor operator: a super vector space over Q whose
/// stored values are homogeneous.
pub trait SuperModule: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn scale(&self, c: &Rational) -> Self;
    /// Parity of a nonzero homogeneous value.
    fn parity(&self) -> u8;

    fn neg_ref(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }
}

/// Coefficient ring: an associative superalgebra.
pub trait SuperRing: SuperModule {
    fn one() -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl SuperRing for Rational {
    fn one() -> Self {
        Rational::ONE
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl SuperModule for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn parity(&self) -> u8 {
        0
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}
