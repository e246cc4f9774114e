//! Dense complex operators on at most four qubits.
//!
//! Basis ordering: qubit 1 is the most significant bit of the basis index,
//! so `|q1 q2 q3>` sits at index `4*q1 + 2*q2 + q3`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 4;
pub const MAX_DIM: usize = 1 << MAX_QUBITS;

/// Tolerance used for structural checks (Hermiticity, unitarity).
pub const STRUCT_TOL: f64 = 1e-12;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix stored row-major, with dimension `2^n`, `n` in `1..=4`.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&dim) && dim.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidDimension(dim))
    }
}

impl Operator {
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut op = Self::zeros(dim)?;
        for i in 0..dim {
            op.data[i * dim + i] = ONE;
        }
        Ok(op)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut op = Self::zeros(dim)?;
        for (i, &d) in diag.iter().enumerate() {
            op.data[i * dim + i] = Complex64::new(d, 0.0);
        }
        Ok(op)
    }

    /// `|i><j|` with a given amplitude.
    pub fn outer_basis(dim: usize, i: usize, j: usize, value: Complex64) -> Result<Self> {
        let mut op = Self::zeros(dim)?;
        if i >= dim || j >= dim {
            return Err(Error::InvalidArgument("basis index out of range"));
        }
        op.data[i * dim + j] = value;
        Ok(op)
    }

    /// `|psi><psi|`.
    pub fn projector(psi: &[Complex64]) -> Result<Self> {
        let dim = psi.len();
        let mut op = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                op.data[i * dim + j] = psi[i] * psi[j].conj();
            }
        }
        Ok(op)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Real parts of the diagonal (populations for a density matrix).
    pub fn real_diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { dim: n, data: out }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_matmul(other)?.try_sub(&other.try_matmul(self)?)
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        Ok(acc)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.max_abs())
    }

    /// `max |A - A^dagger|` entrywise.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `max |U^dagger U - I|` entrywise.
    pub fn unitary_deviation(&self) -> f64 {
        let prod = self.adjoint() * self;
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { ONE } else { ZERO };
                dev = dev.max((prod.get(i, j) - target).norm());
            }
        }
        dev
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation })
        }
    }

    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitary_deviation();
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitary { deviation })
        }
    }

    /// Average the matrix with its adjoint to remove rounding asymmetry.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
            }
        }
        out
    }

    /// Copy with every off-diagonal entry set to zero.
    pub fn diagonal_part(&self) -> Self {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            out[i * n + i] = self.data[i * n + i];
        }
        Self { dim: n, data: out }
    }

    /// Apply `U A U^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.try_matmul(self)?.try_matmul(&u.adjoint())
    }

    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        if psi.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: psi.len(),
            });
        }
        let n = self.dim;
        Ok((0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * psi[j]).sum())
            .collect())
    }
}

/// Kronecker product `a (x) b`, `a` occupying the more significant qubits.
pub fn kron(a: &Operator, b: &Operator) -> Result<Operator> {
    let dim = a.dim * b.dim;
    if dim > MAX_DIM {
        return Err(Error::DimensionOverflow { dim });
    }
    let mut data = vec![ZERO; dim * dim];
    for ar in 0..a.dim {
        for ac in 0..a.dim {
            let x = a.get(ar, ac);
            if x == ZERO {
                continue;
            }
            for br in 0..b.dim {
                for bc in 0..b.dim {
                    data[(ar * b.dim + br) * dim + ac * b.dim + bc] = x * b.get(br, bc);
                }
            }
        }
    }
    Ok(Operator { dim, data })
}

/// Kronecker product of a non-empty list, left to right.
pub fn kron_all(ops: &[&Operator]) -> Result<Operator> {
    let (first, rest) = ops
        .split_first()
        .ok_or(Error::InvalidArgument("empty tensor product"))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, op| kron(&acc, op))
}

/// Place a single-qubit operator on `qubit` (0-based, 0 = most significant)
/// of an `n_qubits` register.
pub fn embed(op: &Operator, qubit: usize, n_qubits: usize) -> Result<Operator> {
    if op.dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: op.dim,
        });
    }
    if qubit >= n_qubits || n_qubits > MAX_QUBITS {
        return Err(Error::InvalidArgument("qubit index out of range"));
    }
    let id = Operator::identity(2)?;
    let factors: Vec<&Operator> = (0..n_qubits)
        .map(|q| if q == qubit { op } else { &id })
        .collect();
    kron_all(&factors)
}

impl Mul<&Operator> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.try_matmul(rhs)
            .expect("operator dimensions must match")
    }
}

impl Mul<&Operator> for Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        &self * rhs
    }
}

impl Add<&Operator> for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.try_add(rhs).expect("operator dimensions must match")
    }
}

impl Sub<&Operator> for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.try_sub(rhs).expect("operator dimensions must match")
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{sigma_x, sigma_z};

    #[test]
    fn kron_identities() {
        let i2 = Operator::identity(2).unwrap();
        assert_eq!(kron(&i2, &i2).unwrap(), Operator::identity(4).unwrap());
        let zi = kron(&sigma_z(), &i2).unwrap();
        assert_eq!(
            zi,
            Operator::from_diagonal(&[1.0, 1.0, -1.0, -1.0]).unwrap()
        );
    }

    #[test]
    fn kron_rejects_overflow() {
        let i4 = Operator::identity(4).unwrap();
        let i8 = Operator::identity(8).unwrap();
        assert_eq!(kron(&i4, &i8), Err(Error::DimensionOverflow { dim: 32 }));
    }

    #[test]
    fn dimension_must_be_power_of_two() {
        assert!(Operator::zeros(3).is_err());
        assert!(Operator::zeros(1).is_err());
        assert!(Operator::zeros(32).is_err());
        assert!(Operator::zeros(16).is_ok());
        assert!(Operator::from_vec(2, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn embed_places_most_significant_first() {
        let x1 = embed(&sigma_x(), 0, 2).unwrap();
        // X on the first qubit maps |00> (0) to |10> (2).
        assert_eq!(x1.get(2, 0), ONE);
        let x2 = embed(&sigma_x(), 1, 2).unwrap();
        assert_eq!(x2.get(1, 0), ONE);
    }

    #[test]
    fn unitary_and_hermitian_checks() {
        let x = sigma_x();
        assert!(x.is_hermitian(STRUCT_TOL));
        assert!(x.is_unitary(STRUCT_TOL));
        let mut bad = x.clone();
        bad.set(0, 1, Complex64::new(2.0, 0.0));
        assert!(!bad.is_hermitian(STRUCT_TOL));
        assert!(!bad.is_unitary(STRUCT_TOL));
    }
}
