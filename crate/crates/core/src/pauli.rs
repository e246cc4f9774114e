//! Pauli matrices, Pauli strings, and the basis-change gates used to map
//! `sigma_z` onto `sigma_x` / `sigma_y`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{kron_all, Operator, I, MAX_QUBITS, ONE, ZERO};

pub fn sigma_x() -> Operator {
    Operator::from_vec(2, alloc::vec![ZERO, ONE, ONE, ZERO]).unwrap()
}

pub fn sigma_y() -> Operator {
    Operator::from_vec(2, alloc::vec![ZERO, -I, I, ZERO]).unwrap()
}

pub fn sigma_z() -> Operator {
    Operator::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

/// Hadamard gate; `H sigma_z H = sigma_x`.
pub fn hadamard() -> Operator {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    Operator::from_real(2, &[r, r, r, -r]).unwrap()
}

/// `H_y = (sigma_y + sigma_z)/sqrt(2)`; `H_y sigma_z H_y = sigma_y`.
pub fn hadamard_y() -> Operator {
    let r = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    Operator::from_vec(2, alloc::vec![r, -I * r, I * r, -r]).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> Operator {
        match self {
            Pauli::I => Operator::identity(2).unwrap(),
            Pauli::X => sigma_x(),
            Pauli::Y => sigma_y(),
            Pauli::Z => sigma_z(),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A real multiple of a tensor product of Pauli matrices, letters in qubit
/// order (first letter = qubit 1).
#[derive(Clone, Debug, PartialEq)]
pub struct PauliString {
    letters: Vec<Pauli>,
    pub coeff: f64,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>, coeff: f64) -> Result<Self> {
        if letters.is_empty() || letters.len() > MAX_QUBITS {
            return Err(Error::InvalidArgument("Pauli string length must be 1..=4"));
        }
        Ok(Self { letters, coeff })
    }

    /// Parse e.g. `"XYY"` with a coefficient.
    pub fn parse(s: &str, coeff: f64) -> Result<Self> {
        let letters = s
            .chars()
            .map(Pauli::from_letter)
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::InvalidArgument("Pauli letters must be I, X, Y or Z"))?;
        Self::new(letters, coeff)
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn to_operator(&self) -> Operator {
        pauli_to_operator(self)
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, 1.0)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*", self.coeff)?;
        for p in &self.letters {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

/// `coeff * P_1 (x) P_2 (x) ...`.
pub fn pauli_to_operator(p: &PauliString) -> Operator {
    let mats: Vec<Operator> = p.letters.iter().map(|l| l.matrix()).collect();
    let refs: Vec<&Operator> = mats.iter().collect();
    kron_all(&refs)
        .expect("length validated on construction")
        .scale_real(p.coeff)
}

/// Pauli coefficients `c_P = tr(P A) / 2^n` of an operator, skipping
/// strings whose coefficient is below `tol`.
pub fn pauli_decompose(a: &Operator, tol: f64) -> Vec<(PauliString, Complex64)> {
    let n = a.n_qubits();
    let all = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut out = Vec::new();
    for code in 0..(1usize << (2 * n)) {
        let letters: Vec<Pauli> = (0..n)
            .map(|q| all[(code >> (2 * (n - 1 - q))) & 3])
            .collect();
        let ps = PauliString {
            letters,
            coeff: 1.0,
        };
        let c = ps.to_operator().trace_product(a).unwrap() / a.dim() as f64;
        if c.norm() > tol {
            out.push((ps, c));
        }
    }
    out
}

/// Largest Pauli weight present in the expansion of `a`.
pub fn interaction_order(a: &Operator, tol: f64) -> usize {
    pauli_decompose(a, tol)
        .iter()
        .map(|(p, _)| p.weight())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{kron, STRUCT_TOL};

    #[test]
    fn zii_is_z_on_first_qubit() {
        let op = PauliString::parse("ZII", 1.0).unwrap().to_operator();
        let id4 = Operator::identity(4).unwrap();
        assert_eq!(op, kron(&sigma_z(), &id4).unwrap());
    }

    #[test]
    fn xxx_with_coefficient() {
        let g = 0.7;
        let op = PauliString::parse("XXX", g / 4.0).unwrap().to_operator();
        let x = sigma_x();
        let expect = kron(&kron(&x, &x).unwrap(), &x)
            .unwrap()
            .scale_real(g / 4.0);
        assert!(op.max_abs_diff(&expect).unwrap() < 1e-16);
    }

    #[test]
    fn basis_changes_map_z() {
        let h = hadamard();
        let hy = hadamard_y();
        assert!((&(&h * &sigma_z()) * &h).max_abs_diff(&sigma_x()).unwrap() < 1e-15);
        assert!(
            (&(&hy * &sigma_z()) * &hy)
                .max_abs_diff(&sigma_y())
                .unwrap()
                < 1e-15
        );
        assert!(hy.is_hermitian(STRUCT_TOL) && hy.is_unitary(STRUCT_TOL));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(PauliString::parse("XQ", 1.0).is_err());
        assert!(PauliString::parse("", 1.0).is_err());
        assert!(PauliString::parse("XXXXX", 1.0).is_err());
    }

    #[test]
    fn decompose_recovers_strings() {
        let a = &PauliString::parse("XZ", 0.5).unwrap().to_operator()
            + &PauliString::parse("IY", -2.0).unwrap().to_operator();
        let terms = pauli_decompose(&a, 1e-12);
        assert_eq!(terms.len(), 2);
        assert_eq!(interaction_order(&a, 1e-12), 2);
    }
}
