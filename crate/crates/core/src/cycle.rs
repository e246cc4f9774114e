//! Repeated refrigeration cycles and the `(T2, T3)` heat-transfer map.
//!
//! A cycle evolves the joint state under the exchange and then resets spins
//! 2 and 3 by tracing them out and replacing them with fresh thermal states
//! (an ideal infinite-capacity bath). Spin 1 keeps its reduced state.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fridge::{exchange, exchange_unitary, initial_state, FridgeConfig};
use crate::state::{evolve, kron_states, partial_trace, DensityMatrix};
use crate::thermo::{
    temperature_from_populations, thermal_state, von_neumann_entropy, SpinTemperature,
};

/// State of the target spin after cycle `n` (`n = 0` is the initial state).
#[derive(Clone, Debug, PartialEq)]
pub struct CycleRecord {
    pub n: usize,
    pub theta: f64,
    pub t1: SpinTemperature,
    pub entropy_q1: f64,
    pub energy_q1: f64,
    /// Heat absorbed by spin 1 during this cycle.
    pub d_q1: f64,
}

/// Joint state with spins 2 and 3 replaced by fresh bath states.
pub fn reset_baths(rho: &DensityMatrix, cfg: &FridgeConfig) -> Result<DensityMatrix> {
    let q1 = partial_trace(rho, &[0])?;
    let fresh = kron_states(&thermal_state(cfg.spin(1)), &thermal_state(cfg.spin(2)))?;
    kron_states(&q1, &fresh)
}

fn record(n: usize, theta: f64, q1: &DensityMatrix, gap: f64, d_q1: f64) -> CycleRecord {
    CycleRecord {
        n,
        theta,
        t1: temperature_from_populations(q1.population(0), q1.population(1), gap),
        entropy_q1: von_neumann_entropy(q1),
        energy_q1: gap * q1.population(1),
        d_q1,
    }
}

/// Run `n_cycles` exchange/reset cycles at angle `theta`, starting from the
/// thermal state of `cfg`. Returns `n_cycles + 1` records.
pub fn run_cycles(cfg: &FridgeConfig, n_cycles: usize, theta: f64) -> Result<Vec<CycleRecord>> {
    if n_cycles < 1 {
        return Err(Error::InvalidArgument("need at least one cycle"));
    }
    let cfg = cfg.with_theta(theta)?;
    let gap = cfg.gaps[0];
    let u = exchange_unitary(cfg.g, theta)?;
    let mut joint = initial_state(&cfg);
    let mut q1 = partial_trace(&joint, &[0])?;
    let mut out = Vec::with_capacity(n_cycles + 1);
    out.push(record(0, theta, &q1, gap, 0.0));
    for n in 1..=n_cycles {
        joint = evolve(&joint, &u)?;
        let next = partial_trace(&joint, &[0])?;
        let d_q1 = gap * (next.population(1) - q1.population(1));
        q1 = next;
        out.push(record(n, theta, &q1, gap, d_q1));
        joint = reset_baths(&joint, &cfg)?;
    }
    Ok(out)
}

/// Convergence when the last (up to) five successive changes of `T1` are
/// all below `tol`; the limit is the last `T1`.
pub fn detect_convergence(records: &[CycleRecord], tol: f64) -> Result<(bool, f64)> {
    if records.len() < 2 {
        return Err(Error::InvalidArgument("need at least two cycle records"));
    }
    const WINDOW: usize = 5;
    let temps: Vec<f64> = records.iter().map(|r| r.t1.value()).collect();
    let k = WINDOW.min(temps.len() - 1);
    let tail = &temps[temps.len() - k - 1..];
    let converged = tail.windows(2).all(|w| (w[1] - w[0]).abs() < tol);
    Ok((converged, *temps.last().unwrap()))
}

/// First cycle index at which `T1` is within `tol` of `target`.
pub fn cycles_to_reach(records: &[CycleRecord], target: f64, tol: f64) -> Option<usize> {
    records
        .iter()
        .find(|r| (r.t1.value() - target).abs() < tol)
        .map(|r| r.n)
}

/// Rectangular `(T2, T3)` grid, both ends inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseGrid {
    pub t2_range: (f64, f64),
    pub t3_range: (f64, f64),
    pub steps: (usize, usize),
}

impl Default for PhaseGrid {
    fn default() -> Self {
        Self {
            t2_range: (2.0, 6.0),
            t3_range: (2.0, 10.0),
            steps: (41, 41),
        }
    }
}

impl PhaseGrid {
    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.t2_range;
        let (c, d) = self.t3_range;
        if !(a > 0.0 && b >= a && c > 0.0 && d >= c) {
            return Err(Error::InvalidArgument(
                "grid ranges must be positive and ordered",
            ));
        }
        if self.steps.0 < 2 || self.steps.1 < 2 {
            return Err(Error::InvalidArgument(
                "grid needs at least 2 points per axis",
            ));
        }
        Ok(())
    }

    pub fn t2_values(&self) -> Vec<f64> {
        linspace(self.t2_range, self.steps.0)
    }

    pub fn t3_values(&self) -> Vec<f64> {
        linspace(self.t3_range, self.steps.1)
    }
}

pub fn linspace((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Heat absorbed by spin 1 in one exchange at `(T2, T3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub t2: f64,
    pub t3: f64,
    pub d_q1: f64,
}

/// One exchange per grid cell at the gaps, `T1` and `theta` of `base`.
/// Points are ordered with `T2` as the outer loop.
pub fn scan_phase_diagram(base: &FridgeConfig, grid: &PhaseGrid) -> Result<Vec<PhasePoint>> {
    grid.validate()?;
    base.validate()?;
    let t3s = grid.t3_values();
    let mut out = Vec::with_capacity(grid.steps.0 * grid.steps.1);
    for t2 in grid.t2_values() {
        for &t3 in &t3s {
            let cfg = base.with_temperatures([base.temperatures[0], t2, t3])?;
            out.push(PhasePoint {
                t2,
                t3,
                d_q1: exchange(&cfg)?.d_q[0],
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fridge::bound_temperature;
    use core::f64::consts::FRAC_PI_2;

    fn constant_records(t: f64, n: usize) -> Vec<CycleRecord> {
        (0..n)
            .map(|n| CycleRecord {
                n,
                theta: 0.0,
                t1: SpinTemperature::Finite(t),
                entropy_q1: 0.0,
                energy_q1: 0.0,
                d_q1: 0.0,
            })
            .collect()
    }

    #[test]
    fn convergence_on_constant_sequence() {
        assert_eq!(
            detect_convergence(&constant_records(1.5, 8), 1e-12).unwrap(),
            (true, 1.5)
        );
        assert_eq!(
            detect_convergence(&constant_records(1.5, 2), 1e-12).unwrap(),
            (true, 1.5)
        );
    }

    #[test]
    fn convergence_needs_two_records() {
        assert!(detect_convergence(&constant_records(1.0, 1), 1e-8).is_err());
    }

    #[test]
    fn decreasing_prefix_not_converged() {
        let mut recs = constant_records(0.0, 6);
        for (i, r) in recs.iter_mut().enumerate() {
            r.t1 = SpinTemperature::Finite(2.0 - 0.1 * i as f64);
        }
        assert!(!detect_convergence(&recs, 1e-8).unwrap().0);
    }

    #[test]
    fn fixed_point_is_stationary() {
        let tb = bound_temperature(1.0, 3.0, 2.0, 2.0, 10.0).unwrap();
        let cfg = FridgeConfig::default()
            .with_temperatures([tb, 2.0, 10.0])
            .unwrap();
        let recs = run_cycles(&cfg, 10, FRAC_PI_2).unwrap();
        assert_eq!(recs.len(), 11);
        for r in &recs {
            assert!((r.t1.value() - tb).abs() < 1e-9);
        }
    }

    #[test]
    fn run_cycles_rejects_zero() {
        assert!(run_cycles(&FridgeConfig::default(), 0, 1.0).is_err());
    }

    #[test]
    fn grid_validation() {
        let mut g = PhaseGrid::default();
        assert!(g.validate().is_ok());
        g.steps = (1, 5);
        assert!(g.validate().is_err());
        g.steps = (3, 3);
        g.t2_range = (3.0, 2.0);
        assert!(g.validate().is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace((2.0, 6.0), 41);
        assert_eq!(v.len(), 41);
        assert_eq!(v[0], 2.0);
        assert_eq!(v[40], 6.0);
        assert!((v[10] - 3.0).abs() < 1e-15);
    }
}
