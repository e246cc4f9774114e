//! Density matrices and the channels that act on them.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::eigen::eigvalsh;
use crate::error::{Error, Result};
use crate::operator::{kron, Operator, STRUCT_TOL, ZERO};

/// Eigenvalues below this are treated as a broken state rather than rounding.
pub const PSD_TOL: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: Operator,
}

impl DensityMatrix {
    /// Validate and wrap an operator.
    pub fn new(op: Operator) -> Result<Self> {
        if !op.is_hermitian(STRUCT_TOL) {
            return Err(Error::InvalidState("not Hermitian"));
        }
        if (op.trace() - Complex64::new(1.0, 0.0)).norm() > STRUCT_TOL {
            return Err(Error::InvalidState("trace is not 1"));
        }
        let min = eigvalsh(&op)?.first().copied().unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::InvalidState("negative eigenvalue"));
        }
        Ok(Self { op })
    }

    /// Repair floating-point drift: symmetrize, clamp eigenvalues in
    /// `[-PSD_TOL, 0)` to zero and renormalize the trace. Larger negativity
    /// is still an error.
    pub fn renormalized(op: &Operator) -> Result<Self> {
        let h = op.hermitian_part();
        let eig = crate::eigen::eigh(&h)?;
        if eig.values.first().copied().unwrap_or(0.0) < -PSD_TOL {
            return Err(Error::InvalidState("negative eigenvalue"));
        }
        let total: f64 = eig.values.iter().map(|&v| v.max(0.0)).sum();
        if total <= 0.0 {
            return Err(Error::InvalidState("zero trace"));
        }
        let op = eig.map_values(|v| Complex64::new(v.max(0.0) / total, 0.0));
        Ok(Self { op })
    }

    /// Product-state or unitary-evolution results are valid by construction.
    pub(crate) fn from_trusted(op: Operator) -> Self {
        Self { op }
    }

    /// Diagonal state with the given populations.
    pub fn from_populations(p: &[f64]) -> Result<Self> {
        Self::new(Operator::from_diagonal(p)?)
    }

    /// Pure state `|psi><psi|`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = libm::sqrt(psi.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero state vector"));
        }
        let normed: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(Operator::projector(&normed)?)
    }

    /// Computational basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        Self::new(Operator::outer_basis(
            dim,
            index,
            index,
            Complex64::new(1.0, 0.0),
        )?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Ok(Self {
            op: Operator::identity(dim)?.scale_real(1.0 / dim as f64),
        })
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn n_qubits(&self) -> usize {
        self.op.n_qubits()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.op.real_diagonal()
    }

    pub fn population(&self, index: usize) -> f64 {
        self.op.get(index, index).re
    }

    pub fn trace(&self) -> f64 {
        self.op.trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.op).expect("density matrices are Hermitian")
    }

    /// `tr(rho A)` (real part; imaginary part vanishes for Hermitian `A`).
    pub fn expectation(&self, a: &Operator) -> Result<f64> {
        Ok(self.op.trace_product(a)?.re)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.op.max_abs_diff(&other.op)
    }
}

/// `rho_a (x) rho_b`.
pub fn kron_states(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_trusted(kron(&a.op, &b.op)?))
}

/// Reduced state on the qubits in `keep` (0-based, qubit 1 = index 0).
/// Kept qubits appear in ascending order in the result.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    if keep.is_empty() {
        return Err(Error::InvalidArgument("keep set must be non-empty"));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&q| q >= n) {
        return Err(Error::InvalidArgument(
            "keep indices must be distinct and in range",
        ));
    }
    if kept.len() == n {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
    let compose = |k: usize, t: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &q) in kept.iter().enumerate() {
            let bit = (k >> (kept.len() - 1 - pos)) & 1;
            idx |= bit << (n - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let bit = (t >> (traced.len() - 1 - pos)) & 1;
            idx |= bit << (n - 1 - q);
        }
        idx
    };
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let mut out = Operator::zeros(dk)?;
    for i in 0..dk {
        for j in 0..dk {
            let mut acc = ZERO;
            for t in 0..dt {
                acc += rho.op.get(compose(i, t), compose(j, t));
            }
            out.set(i, j, acc);
        }
    }
    Ok(DensityMatrix::from_trusted(out))
}

/// `U rho U^dagger`; rejects non-unitary `u`.
pub fn evolve(rho: &DensityMatrix, u: &Operator) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.dim(),
        });
    }
    u.ensure_unitary(STRUCT_TOL)?;
    Ok(DensityMatrix::from_trusted(rho.op.conjugate_by(u)?))
}

/// Ideal dephasing: zero every computational-basis coherence.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    let mut op = rho.op.diagonal_part();
    for i in 0..op.dim() {
        let d = op.get(i, i);
        op.set(i, i, Complex64::new(d.re, 0.0));
    }
    DensityMatrix::from_trusted(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::sigma_x;
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn validation_rejects_bad_states() {
        let bad_trace = Operator::from_diagonal(&[0.5, 0.6]).unwrap();
        assert!(DensityMatrix::new(bad_trace).is_err());
        let negative = Operator::from_diagonal(&[1.2, -0.2]).unwrap();
        assert!(DensityMatrix::new(negative).is_err());
        let mut skew = Operator::from_diagonal(&[0.5, 0.5]).unwrap();
        skew.set(0, 1, Complex64::new(0.1, 0.0));
        assert!(DensityMatrix::new(skew).is_err());
    }

    #[test]
    fn renormalize_clamps_small_negativity() {
        let drift = Operator::from_diagonal(&[1.0 + 5e-11, -5e-11]).unwrap();
        let rho = DensityMatrix::renormalized(&drift).unwrap();
        assert!(rho.eigenvalues().iter().all(|&v| v >= 0.0));
        assert!((rho.trace() - 1.0).abs() < 1e-15);
        let broken = Operator::from_diagonal(&[1.1, -0.1]).unwrap();
        assert!(DensityMatrix::renormalized(&broken).is_err());
    }

    #[test]
    fn partial_trace_of_mixed_is_mixed() {
        let rho = DensityMatrix::maximally_mixed(8).unwrap();
        let r1 = partial_trace(&rho, &[0]).unwrap();
        let half = Operator::identity(2).unwrap().scale_real(0.5);
        assert!(r1.operator().max_abs_diff(&half).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_product_state() {
        let a = DensityMatrix::from_populations(&[0.7, 0.3]).unwrap();
        let b = DensityMatrix::from_populations(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let ab = kron_states(&a, &b).unwrap();
        assert!(partial_trace(&ab, &[0]).unwrap().max_abs_diff(&a).unwrap() < 1e-15);
        assert!(
            partial_trace(&ab, &[1, 2])
                .unwrap()
                .max_abs_diff(&b)
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn partial_trace_errors() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
        assert!(partial_trace(&rho, &[0, 0]).is_err());
    }

    #[test]
    fn evolve_basics() {
        let zero = DensityMatrix::basis(2, 0).unwrap();
        let one = DensityMatrix::basis(2, 1).unwrap();
        assert!(
            evolve(&zero, &sigma_x())
                .unwrap()
                .max_abs_diff(&one)
                .unwrap()
                < 1e-15
        );
        let id = Operator::identity(2).unwrap();
        assert_eq!(evolve(&zero, &id).unwrap(), zero);
        let not_unitary = Operator::from_diagonal(&[1.0, 2.0]).unwrap();
        assert!(matches!(
            evolve(&zero, &not_unitary),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn dephase_plus_state() {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let plus = DensityMatrix::pure(&[r, r]).unwrap();
        let crushed = dephase(&plus);
        assert!(
            crushed
                .max_abs_diff(&DensityMatrix::maximally_mixed(2).unwrap())
                .unwrap()
                < 1e-15
        );
        let diag = DensityMatrix::from_populations(&[0.2, 0.8]).unwrap();
        assert_eq!(dephase(&diag), diag);
    }
}
