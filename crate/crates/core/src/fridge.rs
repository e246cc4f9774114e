//! The three-spin self-contained refrigerator.
//!
//! Spin 1 is the target, spin 2 couples to the cold bath and spin 3 to the
//! hot bath. With `E2 = E1 + E3` the levels `|010>` and `|101>` are
//! degenerate, and swapping their populations costs no work.
//!
//! Heat sign convention: `dQ_i > 0` means spin `i` absorbs energy, so
//! cooling the target shows up as `dQ1 < 0`.

use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::eigen::herm_exp;
use crate::error::{Error, Result};
use crate::operator::{Operator, STRUCT_TOL};
use crate::state::{evolve, kron_states, partial_trace, DensityMatrix};
use crate::thermo::{
    excited_population, internal_energy, system_hamiltonian, temperature_from_populations,
    thermal_state, von_neumann_entropy, SpinSpec, SpinTemperature,
};

/// Basis index of `|010>`.
pub const IDX_010: usize = 0b010;
/// Basis index of `|101>`.
pub const IDX_101: usize = 0b101;

/// Allowed violation of `E2 = E1 + E3`.
pub const SELF_CONTAINED_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FridgeConfig {
    pub gaps: [f64; 3],
    pub temperatures: [f64; 3],
    pub g: f64,
    /// Dimensionless evolution angle `g * t`.
    pub theta: f64,
}

impl Default for FridgeConfig {
    /// `E = (1, 3, 2)`, `T = (2, 2, 10)`, `theta = pi/2`.
    fn default() -> Self {
        Self {
            gaps: [1.0, 3.0, 2.0],
            temperatures: [2.0, 2.0, 10.0],
            g: 1.0,
            theta: FRAC_PI_2,
        }
    }
}

impl FridgeConfig {
    pub fn new(gaps: [f64; 3], temperatures: [f64; 3], g: f64, theta: f64) -> Result<Self> {
        let cfg = Self {
            gaps,
            temperatures,
            g,
            theta,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.gaps.iter().any(|&e| !(e.is_finite() && e > 0.0)) {
            return Err(Error::InvalidArgument("energy gaps must be positive"));
        }
        if self
            .temperatures
            .iter()
            .any(|&t| !(t.is_finite() && t > 0.0))
        {
            return Err(Error::InvalidArgument("temperatures must be positive"));
        }
        if !(self.g.is_finite() && self.g > 0.0) {
            return Err(Error::InvalidArgument("coupling g must be positive"));
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidArgument("theta must be finite"));
        }
        let [e1, e2, e3] = self.gaps;
        if (e2 - (e1 + e3)).abs() > SELF_CONTAINED_TOL {
            return Err(Error::InvalidArgument("E2 must equal E1+E3"));
        }
        Ok(())
    }

    pub fn with_temperatures(mut self, temperatures: [f64; 3]) -> Result<Self> {
        self.temperatures = temperatures;
        self.validate()?;
        Ok(self)
    }

    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        self.theta = theta;
        self.validate()?;
        Ok(self)
    }

    pub fn spin(&self, i: usize) -> SpinSpec {
        SpinSpec::new(self.gaps[i], self.temperatures[i]).expect("config validated")
    }

    /// `sum_i E_i |1><1|_i`.
    pub fn h_sys(&self) -> Operator {
        system_hamiltonian(&self.gaps).expect("three qubits fit")
    }

    /// Single-spin Hamiltonian `E_i |1><1|`.
    pub fn h_spin(&self, i: usize) -> Operator {
        Operator::from_diagonal(&[0.0, self.gaps[i]]).unwrap()
    }
}

/// `g (|010><101| + |101><010|)`.
pub fn build_h_exc(g: f64) -> Operator {
    let mut h = Operator::zeros(8).unwrap();
    h.set(IDX_010, IDX_101, Complex64::new(g, 0.0));
    h.set(IDX_101, IDX_010, Complex64::new(g, 0.0));
    h
}

/// Exchange unitary `exp(-i H_exc theta / g)`.
pub fn exchange_unitary(g: f64, theta: f64) -> Result<Operator> {
    herm_exp(&build_h_exc(g), theta / g)
}

/// Product of the three single-spin thermal states.
pub fn initial_state(cfg: &FridgeConfig) -> DensityMatrix {
    let t1 = thermal_state(cfg.spin(0));
    let t2 = thermal_state(cfg.spin(1));
    let t3 = thermal_state(cfg.spin(2));
    kron_states(&kron_states(&t1, &t2).unwrap(), &t3).unwrap()
}

/// `(P010, P101)` from `e^{-b2 E2}/Z` and `e^{-b1 E1 - b3 E3}/Z`.
pub fn exchanged_populations(cfg: &FridgeConfig) -> (f64, f64) {
    let [e1, e2, e3] = cfg.gaps;
    let [t1, t2, t3] = cfg.temperatures;
    let z = (1.0 + libm::exp(-e1 / t1)) * (1.0 + libm::exp(-e2 / t2)) * (1.0 + libm::exp(-e3 / t3));
    (libm::exp(-e2 / t2) / z, libm::exp(-e1 / t1 - e3 / t3) / z)
}

/// Outcome of one degenerate exchange on the initial product state.
#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeReport {
    pub theta: f64,
    pub p010_before: f64,
    pub p101_before: f64,
    pub p010_after: f64,
    pub p101_after: f64,
    /// Per-spin heat `tr[H_i (rho_i' - rho_i)]`.
    pub d_q: [f64; 3],
    pub temperatures_after: [SpinTemperature; 3],
    /// Per-spin energy `tr(H_i rho_i')`.
    pub energies_after: [f64; 3],
    /// Per-spin von Neumann entropy after the exchange.
    pub entropies_after: [f64; 3],
    /// `tr(H_sys rho') - tr(H_sys rho)`.
    pub energy_change: f64,
}

impl ExchangeReport {
    pub fn total_heat(&self) -> f64 {
        self.d_q.iter().sum()
    }

    /// Measured COP `dQ1 / dQ3`; `None` when nothing was exchanged.
    pub fn dynamic_cop(&self) -> Option<f64> {
        if self.d_q[2] == 0.0 || self.d_q[0] == 0.0 {
            None
        } else {
            Some(self.d_q[0] / self.d_q[2])
        }
    }
}

/// Evolve the initial state under the exchange for angle `cfg.theta` and
/// report populations, per-spin heats and temperatures.
pub fn exchange(cfg: &FridgeConfig) -> Result<ExchangeReport> {
    cfg.validate()?;
    let rho0 = initial_state(cfg);
    let rho1 = evolve(&rho0, &exchange_unitary(cfg.g, cfg.theta)?)?;
    let h = cfg.h_sys();
    let energy_change = internal_energy(&rho1, &h)? - internal_energy(&rho0, &h)?;

    let mut d_q = [0.0; 3];
    let mut temperatures_after = [SpinTemperature::Infinite; 3];
    let mut energies_after = [0.0; 3];
    let mut entropies_after = [0.0; 3];
    for i in 0..3 {
        let before = partial_trace(&rho0, &[i])?;
        let after = partial_trace(&rho1, &[i])?;
        let hi = cfg.h_spin(i);
        energies_after[i] = after.expectation(&hi)?;
        d_q[i] = energies_after[i] - before.expectation(&hi)?;
        temperatures_after[i] =
            temperature_from_populations(after.population(0), after.population(1), cfg.gaps[i]);
        entropies_after[i] = von_neumann_entropy(&after);
    }

    Ok(ExchangeReport {
        theta: cfg.theta,
        p010_before: rho0.population(IDX_010),
        p101_before: rho0.population(IDX_101),
        p010_after: rho1.population(IDX_010),
        p101_after: rho1.population(IDX_101),
        d_q,
        temperatures_after,
        energies_after,
        entropies_after,
        energy_change,
    })
}

/// Strict inequality `E1/T1 + E3/T3 < E2/T2`.
pub fn working_condition(cfg: &FridgeConfig) -> bool {
    let [e1, e2, e3] = cfg.gaps;
    let [t1, t2, t3] = cfg.temperatures;
    e1 / t1 + e3 / t3 < e2 / t2
}

/// Lowest target temperature reachable with baths fixed at `t2`, `t3`:
/// `E1 / (E2/T2 - E3/T3)`.
pub fn bound_temperature(e1: f64, e2: f64, e3: f64, t2: f64, t3: f64) -> Result<f64> {
    if (e2 - (e1 + e3)).abs() > SELF_CONTAINED_TOL {
        return Err(Error::InvalidArgument("E2 must equal E1+E3"));
    }
    let denom = e2 / t2 - e3 / t3;
    if !(denom > 0.0) {
        return Err(Error::NoCoolingRegime);
    }
    Ok(e1 / denom)
}

/// `6 T3 - 4 T2 - T2 T3`: positive exactly where the default gaps with
/// `T1 = 2` cool the target.
pub fn phase_boundary_value(t2: f64, t3: f64) -> f64 {
    6.0 * t3 - 4.0 * t2 - t2 * t3
}

/// The `T2` on the zero-heat curve for a given `T3` (default setting).
pub fn phase_boundary_t2(t3: f64) -> f64 {
    6.0 * t3 / (4.0 + t3)
}

/// Coefficient of performance `E1 / E3`.
pub fn cop(cfg: &FridgeConfig) -> f64 {
    cfg.gaps[0] / cfg.gaps[2]
}

/// Carnot bound `(T3 - T2) T1 / (T3 (T2 - T1))` for the engine-driven
/// refrigerator. Requires `T1 <= T2 < T3`; `T1 == T2` yields `+inf`.
pub fn carnot_limit(t1: f64, t2: f64, t3: f64) -> Result<f64> {
    if !(t1 > 0.0 && t2 > 0.0 && t3 > 0.0) {
        return Err(Error::InvalidArgument("temperatures must be positive"));
    }
    if !(t1 <= t2 && t2 < t3) {
        return Err(Error::InvalidArgument("Carnot limit needs T1 <= T2 < T3"));
    }
    if t1 == t2 {
        return Ok(f64::INFINITY);
    }
    Ok((t3 - t2) * t1 / (t3 * (t2 - t1)))
}

/// Result of swapping two thermal spins with unequal gaps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwapOutcome {
    pub temperature: f64,
    /// Energy injected by the swap; positive for `E1 < E2`.
    pub work: f64,
}

/// Two-spin baseline: thermalize both spins at `t0`, SWAP them, and read
/// the new temperature of spin 1 (`t0 * e1 / e2` in theory).
pub fn two_spin_swap(e1: f64, e2: f64, t0: f64) -> Result<SwapOutcome> {
    if !(e1 > 0.0 && e1 < e2) {
        return Err(Error::InvalidArgument("two-spin swap needs 0 < E1 < E2"));
    }
    let s1 = SpinSpec::new(e1, t0)?;
    let s2 = SpinSpec::new(e2, t0)?;
    let rho = kron_states(&thermal_state(s1), &thermal_state(s2))?;
    let swap = Operator::from_real(
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ],
    )?;
    debug_assert!(swap.is_unitary(STRUCT_TOL));
    let after = evolve(&rho, &swap)?;
    let h = system_hamiltonian(&[e1, e2])?;
    let work = internal_energy(&after, &h)? - internal_energy(&rho, &h)?;
    let q1 = partial_trace(&after, &[0])?;
    let temperature = temperature_from_populations(q1.population(0), q1.population(1), e1).value();
    Ok(SwapOutcome { temperature, work })
}

/// Excited population of a spin at the given gap and temperature.
pub fn thermal_excited_population(gap: f64, temperature: f64) -> f64 {
    excited_population(gap, temperature)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_exc_layout() {
        let h = build_h_exc(1.0);
        assert_eq!(h.get(2, 5).re, 1.0);
        assert_eq!(h.get(5, 2).re, 1.0);
        let nonzero = h.as_slice().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn config_validation() {
        assert!(FridgeConfig::new([1.0, 3.0, 2.5], [2.0, 2.0, 10.0], 1.0, 1.0).is_err());
        assert!(FridgeConfig::new([1.0, 3.0, 2.0], [2.0, 0.0, 10.0], 1.0, 1.0).is_err());
        assert!(FridgeConfig::new([1.0, 3.0, 2.0], [2.0, 2.0, 10.0], 0.0, 1.0).is_err());
        assert!(FridgeConfig::default().validate().is_ok());
    }

    #[test]
    fn default_populations() {
        let (p010, p101) = exchanged_populations(&FridgeConfig::default());
        assert!((p010 - 0.062_435_008).abs() < 1e-9);
        assert!((p101 - 0.138_951_666).abs() < 1e-9);
        let rho = initial_state(&FridgeConfig::default());
        assert!((rho.population(IDX_010) - p010).abs() < 1e-12);
        assert!((rho.population(IDX_101) - p101).abs() < 1e-12);
    }

    #[test]
    fn working_condition_examples() {
        assert!(working_condition(&FridgeConfig::default()));
        let equal = FridgeConfig::default()
            .with_temperatures([3.0, 3.0, 3.0])
            .unwrap();
        assert!(!working_condition(&equal));
    }

    #[test]
    fn bound_temperature_examples() {
        assert!((bound_temperature(1.0, 3.0, 2.0, 2.0, 10.0).unwrap() - 10.0 / 13.0).abs() < 1e-15);
        assert!((bound_temperature(1.0, 3.0, 2.0, 6.0, 10.0).unwrap() - 10.0 / 3.0).abs() < 1e-14);
        assert!((bound_temperature(1.0, 3.0, 2.0, 4.0, 4.0).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(
            bound_temperature(1.0, 3.0, 2.0, 10.0, 2.0),
            Err(Error::NoCoolingRegime)
        );
        assert!(bound_temperature(1.0, 3.5, 2.0, 2.0, 10.0).is_err());
    }

    #[test]
    fn phase_boundary_examples() {
        assert_eq!(phase_boundary_value(2.0, 10.0), 32.0);
        assert_eq!(phase_boundary_value(6.0, 6.0), -24.0);
        assert!(phase_boundary_value(phase_boundary_t2(7.0), 7.0).abs() < 1e-12);
    }

    #[test]
    fn cop_and_carnot_examples() {
        assert_eq!(cop(&FridgeConfig::default()), 0.5);
        let other = FridgeConfig::new([2.0, 3.0, 1.0], [2.0, 2.0, 10.0], 1.0, 1.0).unwrap();
        assert_eq!(cop(&other), 2.0);
        assert!((carnot_limit(1.0, 2.0, 10.0).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(carnot_limit(2.0, 2.0, 10.0).unwrap(), f64::INFINITY);
        assert!(carnot_limit(3.0, 2.0, 10.0).is_err());
        assert!(carnot_limit(1.0, 10.0, 10.0).is_err());
    }

    #[test]
    fn two_spin_swap_examples() {
        let a = two_spin_swap(1.0, 3.0, 4.0).unwrap();
        assert!((a.temperature - 4.0 / 3.0).abs() < 1e-10);
        assert!(a.work > 0.0);
        let b = two_spin_swap(1.0, 2.0, 2.0).unwrap();
        assert!((b.temperature - 1.0).abs() < 1e-10);
        let c = two_spin_swap(1.999, 2.0, 3.0).unwrap();
        assert!((c.temperature - 3.0).abs() / 3.0 < 1e-3);
        assert!(two_spin_swap(2.0, 2.0, 1.0).is_err());
        assert!(two_spin_swap(3.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn exchange_at_zero_angle_is_trivial() {
        let cfg = FridgeConfig::default().with_theta(0.0).unwrap();
        let r = exchange(&cfg).unwrap();
        assert!(r.d_q.iter().all(|q| q.abs() < 1e-15));
        assert!((r.temperatures_after[0].value() - 2.0).abs() < 1e-12);
        assert!((r.temperatures_after[2].value() - 10.0).abs() < 1e-10);
    }

    #[test]
    fn exchange_at_common_temperature_moves_no_heat() {
        let cfg = FridgeConfig::default()
            .with_temperatures([3.0, 3.0, 3.0])
            .unwrap();
        let r = exchange(&cfg).unwrap();
        assert!(r.d_q.iter().all(|q| q.abs() < 1e-15));
        assert!((r.p010_before - r.p101_before).abs() < 1e-15);
    }
}
