//! Spin thermodynamics: thermal states, spin temperature, entropy, internal
//! energy and the per-pulse work/heat ledger.
//!
//! Units: energies in units of the gap scale `delta`, temperatures in
//! `delta / k_B`, with `k_B = 1`. Entropies are in nats.

use alloc::vec::Vec;

use crate::eigen::herm_exp;
use crate::error::{Error, Result};
use crate::operator::{embed, Operator, STRUCT_TOL};
use crate::pauli::sigma_x;
use crate::state::{dephase, evolve, DensityMatrix};

/// A two-level spin with ground energy 0 and excited energy `gap`, held at
/// `temperature`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinSpec {
    gap: f64,
    temperature: f64,
}

impl SpinSpec {
    pub fn new(gap: f64, temperature: f64) -> Result<Self> {
        if !(gap.is_finite() && gap > 0.0) {
            return Err(Error::InvalidArgument("energy gap must be positive"));
        }
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::InvalidArgument("temperature must be positive"));
        }
        Ok(Self { gap, temperature })
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// `e^{-E/T} / (1 + e^{-E/T})`.
    pub fn excited_population(&self) -> f64 {
        excited_population(self.gap, self.temperature)
    }
}

pub(crate) fn excited_population(gap: f64, temperature: f64) -> f64 {
    1.0 / (1.0 + libm::exp(gap / temperature))
}

/// `diag(1, e^{-E/T}) / Z`.
pub fn thermal_state(spec: SpinSpec) -> DensityMatrix {
    let pe = spec.excited_population();
    let pg = 1.0 / (1.0 + libm::exp(-spec.gap / spec.temperature));
    DensityMatrix::from_trusted(Operator::from_diagonal(&[pg, pe]).unwrap())
}

/// Prepare a thermal qubit the way an NMR experiment would: rotate `|0>`
/// about x by `arccos(sqrt(P_g))`, then crush the coherence.
pub fn thermal_state_by_rotation(spec: SpinSpec) -> Result<DensityMatrix> {
    let pg = 1.0 - spec.excited_population();
    let angle = libm::acos(libm::sqrt(pg));
    let u = herm_exp(&sigma_x(), angle)?;
    let rotated = evolve(&DensityMatrix::basis(2, 0)?, &u)?;
    Ok(dephase(&rotated))
}

/// Spin temperature assigned from populations via `P_e/P_g = e^{-E/T}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpinTemperature {
    /// Ordinary positive temperature.
    Finite(f64),
    /// Equal populations.
    Infinite,
    /// Population inversion (`P_e > P_g`); the value is negative.
    Negative(f64),
    /// No excited population.
    Zero,
    /// No ground population; the limit from below.
    NegativeZero,
}

impl SpinTemperature {
    /// The temperature as an extended real: `inf`, `+0.0`, `-0.0` or a
    /// signed finite value.
    pub fn value(self) -> f64 {
        match self {
            SpinTemperature::Finite(t) | SpinTemperature::Negative(t) => t,
            SpinTemperature::Infinite => f64::INFINITY,
            SpinTemperature::Zero => 0.0,
            SpinTemperature::NegativeZero => -0.0,
        }
    }

    pub fn is_inverted(self) -> bool {
        matches!(
            self,
            SpinTemperature::Negative(_) | SpinTemperature::NegativeZero
        )
    }
}

/// Effective temperature of a single spin from its diagonal populations;
/// coherences are ignored.
pub fn effective_temperature(rho1: &DensityMatrix, gap: f64) -> Result<SpinTemperature> {
    if rho1.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho1.dim(),
        });
    }
    if !(gap > 0.0) {
        return Err(Error::InvalidArgument("energy gap must be positive"));
    }
    Ok(temperature_from_populations(
        rho1.population(0),
        rho1.population(1),
        gap,
    ))
}

pub(crate) fn temperature_from_populations(pg: f64, pe: f64, gap: f64) -> SpinTemperature {
    if pe <= 0.0 {
        SpinTemperature::Zero
    } else if pg <= 0.0 {
        SpinTemperature::NegativeZero
    } else if pg == pe {
        SpinTemperature::Infinite
    } else {
        let t = gap / libm::log(pg / pe);
        if t > 0.0 {
            SpinTemperature::Finite(t)
        } else {
            SpinTemperature::Negative(t)
        }
    }
}

/// `-sum p ln p` with `0 ln 0 = 0`.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * libm::log(p))
        .sum()
}

pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let clamped: Vec<f64> = rho.eigenvalues().into_iter().map(|v| v.max(0.0)).collect();
    shannon_entropy(&clamped)
}

/// `tr(rho H)`.
pub fn internal_energy(rho: &DensityMatrix, h_sys: &Operator) -> Result<f64> {
    rho.expectation(h_sys)
}

/// `sum_i E_i |1><1|_i` for a register with one gap per qubit.
pub fn system_hamiltonian(gaps: &[f64]) -> Result<Operator> {
    let n = gaps.len();
    let excited = Operator::from_diagonal(&[0.0, 1.0])?;
    let mut h = Operator::zeros(1 << n)?;
    for (q, &e) in gaps.iter().enumerate() {
        h = h.try_add(&embed(&excited, q, n)?.scale_real(e))?;
    }
    Ok(h)
}

/// Work and heat booked for one pulse: switch-on work, heat while the
/// pulse acts, switch-off work.
#[derive(Clone, Debug, PartialEq)]
pub struct WorkLedgerEntry {
    pub step_index: usize,
    pub d_w1: f64,
    pub d_q1: f64,
    pub d_w2: f64,
    pub net_work: f64,
    pub cumulative_work: f64,
}

/// Apply one pulse and book its work and heat.
///
/// The pulse realizes `exp(-i generator)` over `duration`, so the control
/// term is `H_c = generator / duration - h_sys` and the total Hamiltonian
/// while it is on is `h_sys + H_c`. The returned entry carries
/// `step_index = 0` and `cumulative_work = net_work`; use [`WorkLedger`]
/// to number and accumulate a sequence.
pub fn ledger_step(
    rho_before: &DensityMatrix,
    generator: &Operator,
    duration: f64,
    h_sys: &Operator,
) -> Result<(DensityMatrix, WorkLedgerEntry)> {
    if !(duration > 0.0) {
        return Err(Error::InvalidArgument("pulse duration must be positive"));
    }
    generator.ensure_hermitian(STRUCT_TOL)?;
    if h_sys.dim() != rho_before.dim() || generator.dim() != rho_before.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho_before.dim(),
            found: generator.dim(),
        });
    }
    let total = generator.scale_real(1.0 / duration);
    let control = total.try_sub(h_sys)?;
    let u = herm_exp(generator, 1.0)?;
    let rho_after = evolve(rho_before, &u)?;

    let d_w1 = rho_before.expectation(&control)?;
    let delta = rho_after.operator().try_sub(rho_before.operator())?;
    let d_q1 = delta.trace_product(&total)?.re;
    let d_w2 = -rho_after.expectation(&control)?;
    let net_work = d_w1 + d_q1 + d_w2;
    Ok((
        rho_after,
        WorkLedgerEntry {
            step_index: 0,
            d_w1,
            d_q1,
            d_w2,
            net_work,
            cumulative_work: net_work,
        },
    ))
}

/// Left fold over ledger entries: numbers steps from 1 and keeps a running
/// total of net work.
#[derive(Clone, Debug, Default)]
pub struct WorkLedger {
    entries: Vec<WorkLedgerEntry>,
    total: f64,
}

impl WorkLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, mut entry: WorkLedgerEntry) -> &WorkLedgerEntry {
        self.total += entry.net_work;
        entry.step_index = self.entries.len() + 1;
        entry.cumulative_work = self.total;
        self.entries.push(entry);
        self.entries.last().unwrap()
    }

    pub fn total_work(&self) -> f64 {
        self.total
    }

    pub fn entries(&self) -> &[WorkLedgerEntry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<WorkLedgerEntry> {
        self.entries
    }
}
