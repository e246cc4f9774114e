//! Lowering of the exchange evolution to one- and two-qubit gates.
//!
//! The exchange Hamiltonian is a sum of four commuting three-body Pauli
//! strings,
//!
//! ```text
//! g (|010><101| + h.c.) = g/4 (XXX + XYY - YXY + YYX)
//! ```
//!
//! so its evolution factors into four blocks. Each block conjugates a
//! `ZZZ` rotation by a basis-change layer (`H` maps `Z` to `X`, `H_y` maps
//! `Z` to `Y`), and the `ZZZ` rotation itself is eight gates around a
//! central `Z2 Z3` rotation:
//!
//! ```text
//! e^{-i phi ZZZ} = e^{-i pi/4 X2} e^{-i pi/4 Z1Z2} e^{-i pi/4 Y2} e^{-i phi Z2Z3}
//!                  e^{-i pi/4 Y2} e^{-i pi/4 Z1Z2} e^{+i pi/2 Y2} e^{+i pi/4 X2}
//! ```
//!
//! That gives ten steps per block and forty in total. Steps are stored in
//! the order they are applied (rightmost factor first). Every step has
//! unit duration, so its generator is the gate Hamiltonian itself.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::eigen::herm_exp;
use crate::error::{Error, Result};
use crate::fridge::exchange_unitary;
use crate::operator::{embed, Operator};
use crate::pauli::{hadamard, hadamard_y, interaction_order, Pauli, PauliString};
use crate::state::DensityMatrix;
use crate::thermo::{ledger_step, WorkLedger, WorkLedgerEntry};

pub const STEPS_PER_BLOCK: usize = 10;
pub const N_BLOCKS: usize = 4;
pub const N_QUBITS: usize = 3;

/// One pulse: `exp(-i generator)` applied over `duration`.
#[derive(Clone, Debug, PartialEq)]
pub struct GateStep {
    pub label: String,
    pub generator: Operator,
    pub duration: f64,
}

impl GateStep {
    pub fn unitary(&self) -> Operator {
        herm_exp(&self.generator, 1.0).expect("generators are Hermitian")
    }

    /// Largest number of qubits any Pauli term of the generator touches.
    pub fn interaction_order(&self) -> usize {
        interaction_order(&self.generator, 1e-12)
    }
}

/// The four Pauli strings of the exchange Hamiltonian, with their signs.
pub fn exchange_terms(g: f64) -> [PauliString; 4] {
    let c = g / 4.0;
    [
        PauliString::parse("XXX", c).unwrap(),
        PauliString::parse("XYY", c).unwrap(),
        PauliString::parse("YXY", -c).unwrap(),
        PauliString::parse("YYX", c).unwrap(),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompiledSequence {
    pub steps: Vec<GateStep>,
    pub theta: f64,
    pub g: f64,
    /// Start index of each block, plus the end.
    pub term_boundaries: Vec<usize>,
}

impl CompiledSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn block(&self, i: usize) -> &[GateStep] {
        &self.steps[self.term_boundaries[i]..self.term_boundaries[i + 1]]
    }

    pub fn n_blocks(&self) -> usize {
        self.term_boundaries.len().saturating_sub(1)
    }

    /// Same steps with the blocks reordered.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.n_blocks();
        let mut seen = alloc::vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&b| b >= n || core::mem::replace(&mut seen[b], true))
        {
            return Err(Error::InvalidArgument("block order must be a permutation"));
        }
        let mut steps = Vec::with_capacity(self.steps.len());
        let mut term_boundaries = alloc::vec![0];
        for &b in order {
            steps.extend_from_slice(self.block(b));
            term_boundaries.push(steps.len());
        }
        Ok(Self {
            steps,
            theta: self.theta,
            g: self.g,
            term_boundaries,
        })
    }

    /// Ordered product `U_N ... U_1`.
    pub fn unitary(&self) -> Operator {
        self.steps
            .iter()
            .fold(Operator::identity(1 << N_QUBITS).unwrap(), |acc, s| {
                &s.unitary() * &acc
            })
    }
}

fn single(p: Pauli, qubit: usize, angle: f64) -> Operator {
    embed(&p.matrix(), qubit, N_QUBITS)
        .unwrap()
        .scale_real(angle)
}

fn pair(p: Pauli, q: Pauli, qubits: (usize, usize), angle: f64) -> Operator {
    let mut letters = alloc::vec![Pauli::I; N_QUBITS];
    letters[qubits.0] = p;
    letters[qubits.1] = q;
    PauliString::new(letters, angle).unwrap().to_operator()
}

/// Generator `sum_q pi/2 (I - B_q)` whose exponential is the layer of
/// involutory basis changes `B_1 (x) B_2 (x) B_3`.
fn basis_layer(kinds: [Pauli; 3]) -> GateStep {
    let id = Operator::identity(2).unwrap();
    let mut gen = Operator::zeros(1 << N_QUBITS).unwrap();
    let mut names = Vec::new();
    for (q, kind) in kinds.iter().enumerate() {
        let (b, name) = match kind {
            Pauli::X => (hadamard(), "H"),
            Pauli::Y => (hadamard_y(), "Hy"),
            _ => unreachable!("basis changes only target X or Y"),
        };
        let local = (&id - &b).scale_real(FRAC_PI_2);
        gen = &gen + &embed(&local, q, N_QUBITS).unwrap();
        names.push(name);
    }
    let label = if names.iter().all(|&n| n == "H") {
        String::from("H@123")
    } else {
        format!("{}|{}|{}@123", names[0], names[1], names[2])
    };
    GateStep {
        label,
        generator: gen,
        duration: 1.0,
    }
}

fn step(label: String, generator: Operator) -> GateStep {
    GateStep {
        label,
        generator,
        duration: 1.0,
    }
}

/// Ten steps realizing `exp(-i phi Z1 Z2 Z3)` conjugated into the basis
/// given by `kinds`.
fn block(kinds: [Pauli; 3], phi: f64) -> Vec<GateStep> {
    use Pauli::{X, Y, Z};
    let layer = basis_layer(kinds);
    alloc::vec![
        layer.clone(),
        step("Rx(-π/2)@2".into(), single(X, 1, -FRAC_PI_4)),
        step("Ry(-π)@2".into(), single(Y, 1, -FRAC_PI_2)),
        step("ZZ(π/2)@12".into(), pair(Z, Z, (0, 1), FRAC_PI_4)),
        step("Ry(π/2)@2".into(), single(Y, 1, FRAC_PI_4)),
        step(format!("ZZ({})@23", 2.0 * phi), pair(Z, Z, (1, 2), phi)),
        step("Ry(π/2)@2".into(), single(Y, 1, FRAC_PI_4)),
        step("ZZ(π/2)@12".into(), pair(Z, Z, (0, 1), FRAC_PI_4)),
        step("Rx(π/2)@2".into(), single(X, 1, FRAC_PI_4)),
        layer,
    ]
}

/// Compile `exp(-i H_exc theta / g)` into forty one- and two-qubit steps.
///
/// Any finite `theta` is accepted; `[0, pi/2]` spans no exchange to a full
/// population swap.
pub fn compile(theta: f64, g: f64) -> Result<CompiledSequence> {
    if !theta.is_finite() {
        return Err(Error::InvalidArgument("theta must be finite"));
    }
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::InvalidArgument("coupling g must be positive"));
    }
    let time = theta / g;
    let mut steps = Vec::with_capacity(N_BLOCKS * STEPS_PER_BLOCK);
    let mut term_boundaries = alloc::vec![0];
    for term in exchange_terms(g) {
        let letters = term.letters();
        let kinds = [letters[0], letters[1], letters[2]];
        steps.extend(block(kinds, term.coeff * time));
        term_boundaries.push(steps.len());
    }
    Ok(CompiledSequence {
        steps,
        theta,
        g,
        term_boundaries,
    })
}

/// Global-phase-insensitive overlap `|tr(U_seq^dagger U_direct)| / 8`.
pub fn verify(seq: &CompiledSequence, theta: f64) -> Result<f64> {
    let direct = exchange_unitary(seq.g, theta)?;
    let overlap = seq.unitary().adjoint().trace_product(&direct)?;
    Ok(overlap.norm() / direct.dim() as f64)
}

/// Run every step through the work ledger.
pub fn run_with_ledger(
    seq: &CompiledSequence,
    rho0: &DensityMatrix,
    h_sys: &Operator,
) -> Result<(DensityMatrix, Vec<WorkLedgerEntry>)> {
    let mut ledger = WorkLedger::new();
    let mut rho = rho0.clone();
    for s in &seq.steps {
        let (next, entry) = ledger_step(&rho, &s.generator, s.duration, h_sys)?;
        ledger.push(entry);
        rho = next;
    }
    Ok((rho, ledger.into_entries()))
}
