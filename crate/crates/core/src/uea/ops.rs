use super::engine::{Engine, VacuumModule};
use super::lazy::{LazyU, Letter};
use super::vacuum::VacuumElement;
use crate::coeff::Rational;
use crate::error::{invalid, Result};
use crate::osp::OspStructure;
use crate::superspace::{pack, Signature, SuperModule, TensorOperator};

/// Operators with coefficients in `U(ôsp) ⋊ C[τ]`, kept as words.
pub type UTensorOp = TensorOperator<LazyU>;

/// Operators with vacuum-module coefficients, i.e. `X|0⟩` entrywise.
pub type VacuumOp = TensorOperator<VacuumElement>;

/// `F[r]_a = Σ e_ij ⊗ F_ij[r] (−1)^{īj̄+ī+j̄}` with the matrix unit on the
/// 0-based leg `a` of `legs`.
pub fn f_matrix(osp: &OspStructure, r: i32, a: usize, legs: usize) -> Result<UTensorOp> {
    if a >= legs {
        return invalid(format!("leg {a} out of range for {legs} legs"));
    }
    let sig = osp.signature();
    let mut one = UTensorOp::zero(sig, 1)?;
    for i in 0..sig.dim() {
        for j in 0..sig.dim() {
            let (pi, pj) = (sig.parity(i), sig.parity(j));
            let sign = Rational::from_int(if (pi * pj + pi + pj) % 2 == 1 { -1 } else { 1 });
            let mut u = LazyU::default();
            for (alpha, c) in osp.f_coords(i, j) {
                let g = super::Gen { mode: r, basis: *alpha as u16, odd: osp.parity(*alpha) == 1 };
                u.push(std::iter::once(Letter::Gen(g)).collect(), c * &sign);
            }
            one.add_term(pack(&[i]), pack(&[j]), u);
        }
    }
    one.embed(legs, &[a])
}

/// `1 ⊗ ℓ` for a single letter `ℓ` (`τ` or `K`).
pub fn letter_matrix(sig: Signature, legs: usize, letter: Letter) -> Result<UTensorOp> {
    Ok(TensorOperator::<Rational>::identity(sig, legs)?.map_coeffs(|c| Some(LazyU::word(std::iter::once(letter).collect(), c.clone()))))
}

pub fn lift(op: &TensorOperator<Rational>) -> UTensorOp {
    op.map_coeffs(|c| Some(LazyU::constant(c.clone())))
}

/// `c ↦ c|0⟩` entrywise.
pub fn on_vacuum(op: &TensorOperator<Rational>) -> VacuumOp {
    op.map_coeffs(|c| Some(VacuumElement::vacuum(c.clone())))
}

/// Left action `X · V` of a U-valued operator on module-valued operators.
pub fn apply<V: VacuumModule>(engine: &Engine, x: &UTensorOp, v: &TensorOperator<V>) -> Result<TensorOperator<V>> {
    x.compose_with(v, |u, s| engine.act_lazy(u, s))
}

/// Left action of a scalar operator.
pub fn apply_scalar<V: SuperModule>(x: &TensorOperator<Rational>, v: &TensorOperator<V>) -> Result<TensorOperator<V>> {
    x.compose_with(v, |c, s| s.scale(c))
}

/// Entrywise `X|0⟩`.
pub fn vacuum_image(engine: &Engine, x: &UTensorOp) -> VacuumOp {
    let vac = VacuumElement::vacuum(Rational::ONE);
    x.map_coeffs(|u| Some(engine.act_lazy(u, &vac)))
}

/// Product of U-valued operators; coefficients multiply as words.
pub fn utensor_compose(x: &UTensorOp, y: &UTensorOp) -> Result<UTensorOp> {
    x.compose(y)
}

/// Partial supertrace over `traced`, then entrywise application to `|0⟩`.
pub fn utensor_supertrace(engine: &Engine, x: &UTensorOp, traced: &[usize]) -> Result<VacuumOp> {
    Ok(vacuum_image(engine, &x.partial_supertrace(traced)?))
}
