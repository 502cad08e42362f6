//! Schmidt probabilities and von Neumann entropy of evolved states.
//!
//! Distinct rungs of a parity ladder have distinct photon numbers in both
//! modes, so the ladder is already a Schmidt basis and `p_n = |a_n|²`.

use rayon::prelude::*;

use crate::dynamics::{EvolvedState, ProductStateSpec, Propagator};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianParams;
use crate::scenario::{TrajectoryRecord, TrajectoryRow};
use crate::sector_basis::{FockPair, Parity};
use crate::spectrum::assemble_spectrum;

/// Probabilities below this count as exact zeros in the entropy.
pub const ZERO_PROBABILITY: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtProfile {
    /// `|a_n|²` in ladder order.
    pub probabilities: Vec<f64>,
    /// Entropy in nats.
    pub entropy: f64,
}

pub fn schmidt_profile(state: &EvolvedState) -> SchmidtProfile {
    let probabilities: Vec<f64> = state.amplitudes.iter().map(|a| a.norm_sqr()).collect();
    let entropy = entropy_of(&probabilities);
    SchmidtProfile { probabilities, entropy }
}

/// `−Σ p ln p` in nats.
pub fn von_neumann_entropy(profile: &SchmidtProfile) -> f64 {
    entropy_of(&profile.probabilities)
}

pub(crate) fn entropy_of(probabilities: &[f64]) -> f64 {
    // Neumaier summation: wide uniform profiles otherwise drift by ~n ulp.
    let (mut s, mut carry) = (0.0_f64, 0.0_f64);
    for term in probabilities.iter().filter(|&&p| p >= ZERO_PROBABILITY).map(|&p| -p * p.ln()) {
        let next = s + term;
        carry += if s.abs() >= term.abs() { (s - next) + term } else { (term - next) + s };
        s = next;
    }
    let s = s + carry;
    // A single rung with p = 1 − ε gives −0.0-ish noise.
    s.max(0.0)
}

/// Uniform superposition over a whole sector or over one of its parity
/// ladders.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceState {
    pub total_photons: u32,
    pub parity: Option<Parity>,
    /// Amplitude of each entry of [`ReferenceState::fock_states`].
    pub amplitudes: Vec<f64>,
}

impl ReferenceState {
    pub fn fock_states(&self) -> Vec<FockPair> {
        let n = self.total_photons;
        match self.parity {
            None => (0..=n).map(|b| FockPair::new(n - b, b)).collect(),
            Some(p) => (p.offset()..=n).step_by(2).map(|b| FockPair::new(n - b, b)).collect(),
        }
    }

    pub fn entropy(&self) -> f64 {
        let probs: Vec<f64> = self.amplitudes.iter().map(|a| a * a).collect();
        entropy_of(&probs)
    }
}

/// Maximally entangled state of the sector (`parity = None`, entropy
/// `ln(N+1)`) or of one parity ladder (entropy `ln((N+1)/2)` for odd `N`).
pub fn max_entangled_state(total_photons: u32, parity: Option<Parity>) -> Result<ReferenceState> {
    if total_photons == 0 {
        return Err(Error::param("total photon number must be at least 1"));
    }
    if parity.is_some() && total_photons.is_multiple_of(2) {
        return Err(Error::param("parity-restricted maximal state needs odd N"));
    }
    let rungs = match parity {
        None => total_photons as usize + 1,
        Some(_) => (total_photons as usize).div_ceil(2),
    };
    let amp = 1.0 / (rungs as f64).sqrt();
    Ok(ReferenceState { total_photons, parity, amplitudes: vec![amp; rungs] })
}

/// Entropy and Schmidt probabilities of `|N−L⟩_A|L⟩_B` on a strictly
/// increasing time grid.
pub fn entropy_trajectory(
    spec: ProductStateSpec,
    params: &HamiltonianParams,
    grid: &[f64],
) -> Result<TrajectoryRecord> {
    if grid.is_empty() {
        return Err(Error::param("empty time grid"));
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::param(format!("time grid not strictly increasing at {} -> {}", w[0], w[1])));
    }
    if grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::param("non-finite time in grid"));
    }
    let decomp = assemble_spectrum(params)?;
    let propagator = Propagator::new(spec, &decomp)?;
    let rows = grid
        .par_iter()
        .map(|&t| {
            let profile = schmidt_profile(&propagator.at(t));
            TrajectoryRow {
                t,
                gt: params.g * t,
                entropy: profile.entropy,
                probabilities: profile.probabilities,
            }
        })
        .collect();
    Ok(TrajectoryRecord { spec, params: *params, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::evolve;
    use num_complex::Complex64;
    use std::f64::consts::{LN_2, PI};

    fn profile(probs: &[f64]) -> SchmidtProfile {
        SchmidtProfile { probabilities: probs.to_vec(), entropy: entropy_of(probs) }
    }

    #[test]
    fn schmidt_examples() {
        let spec = ProductStateSpec::new(3, 0).unwrap();
        let product = EvolvedState {
            spec,
            time: 0.0,
            amplitudes: vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        };
        assert_eq!(schmidt_profile(&product).probabilities, vec![1.0, 0.0]);
        assert_eq!(schmidt_profile(&product).entropy, 0.0);

        let theta: f64 = 0.4;
        let rotated = EvolvedState {
            spec,
            time: 0.0,
            amplitudes: vec![Complex64::new(theta.cos(), 0.0), Complex64::new(0.0, -theta.sin())],
        };
        let p = schmidt_profile(&rotated).probabilities;
        assert!((p[0] - theta.cos().powi(2)).abs() < 1e-16);
        assert!((p[1] - theta.sin().powi(2)).abs() < 1e-16);

        let r5 = 3.0 * 5f64.sqrt() / 7.0;
        let spec5 = ProductStateSpec::new(5, 0).unwrap();
        let s5 = EvolvedState {
            spec: spec5,
            time: 0.0,
            amplitudes: vec![
                Complex64::new(2.0 / 7.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-r5, 0.0),
            ],
        };
        let p5 = schmidt_profile(&s5).probabilities;
        for (got, want) in p5.iter().zip([4.0 / 49.0, 0.0, 45.0 / 49.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn entropy_examples() {
        assert!((von_neumann_entropy(&profile(&[0.5, 0.5])) - LN_2).abs() < 1e-15);
        assert_eq!(von_neumann_entropy(&profile(&[1.0, 0.0, 0.0])), 0.0);
        let (a, b) = (4.0 / 49.0_f64, 45.0 / 49.0_f64);
        let want = -a * a.ln() - b * b.ln();
        assert!((von_neumann_entropy(&profile(&[a, 0.0, b])) - want).abs() < 1e-15);
        assert!(von_neumann_entropy(&profile(&[1.0 - 1e-16, 1e-16])) < 1e-15);
    }

    #[test]
    fn maximal_states() {
        let m3 = max_entangled_state(3, Some(Parity::Even)).unwrap();
        assert_eq!(m3.fock_states(), vec![FockPair::new(3, 0), FockPair::new(1, 2)]);
        assert!((m3.entropy() - LN_2).abs() < 1e-15);

        let m5 = max_entangled_state(5, None).unwrap();
        assert_eq!(m5.amplitudes.len(), 6);
        assert!((m5.entropy() - 6f64.ln()).abs() < 1e-14);

        let m1 = max_entangled_state(1, Some(Parity::Even)).unwrap();
        assert_eq!(m1.amplitudes, vec![1.0]);
        assert_eq!(m1.entropy(), 0.0);

        let m1_odd = max_entangled_state(1, Some(Parity::Odd)).unwrap();
        assert_eq!(m1_odd.fock_states(), vec![FockPair::new(0, 1)]);

        assert!(max_entangled_state(4, Some(Parity::Even)).is_err());
        assert!(max_entangled_state(0, None).is_err());
    }

    #[test]
    fn trajectory_examples() {
        let g = 1.0;
        let w = 12f64.sqrt() * g;
        let params = HamiltonianParams::new(0.0, g, 3).unwrap();
        let grid = [0.0, PI / (4.0 * w), PI / (2.0 * w)];
        let rec = entropy_trajectory(ProductStateSpec::new(3, 0).unwrap(), &params, &grid).unwrap();
        let e: Vec<f64> = rec.rows.iter().map(|r| r.entropy).collect();
        assert!(e[0].abs() < 1e-14);
        assert!((e[1] - LN_2).abs() < 1e-14);
        assert!(e[2].abs() < 1e-13);

        let p1 = HamiltonianParams::new(0.0, 1.7, 1).unwrap();
        let grid: Vec<f64> = (0..40).map(|i| i as f64 * 0.25).collect();
        for l in 0..=1 {
            let rec = entropy_trajectory(ProductStateSpec::new(1, l).unwrap(), &p1, &grid).unwrap();
            assert!(rec.rows.iter().all(|r| r.entropy <= 1e-14));
        }

        for n in [2, 5, 8] {
            let p0 = HamiltonianParams::new(1.0, 0.0, n).unwrap();
            for l in 0..=n {
                let rec = entropy_trajectory(ProductStateSpec::new(n, l).unwrap(), &p0, &grid).unwrap();
                assert!(rec.rows.iter().all(|r| r.entropy <= 1e-14));
            }
        }
    }

    #[test]
    fn trajectory_rejects_bad_grids() {
        let p = HamiltonianParams::new(0.0, 1.0, 3).unwrap();
        let spec = ProductStateSpec::new(3, 0).unwrap();
        assert!(entropy_trajectory(spec, &p, &[]).is_err());
        assert!(entropy_trajectory(spec, &p, &[0.0, 0.0]).is_err());
        assert!(entropy_trajectory(spec, &p, &[1.0, 0.5]).is_err());
        assert!(entropy_trajectory(spec, &p, &[0.0, f64::NAN]).is_err());
    }

    #[test]
    fn entropy_positive_between_zeros_at_n3() {
        let params = HamiltonianParams::new(0.0, 0.9, 3).unwrap();
        let d = assemble_spectrum(&params).unwrap();
        let w = 12f64.sqrt() * params.g;
        // Zeros sit at √12·g·t = kπ/2, where the state is |3,0⟩ or |1,2⟩.
        for i in 1..200 {
            let t = PI / (2.0 * w) * i as f64 / 200.0;
            let s = evolve(ProductStateSpec::new(3, 0).unwrap(), &d, t).unwrap();
            assert!(schmidt_profile(&s).entropy > 0.0);
        }
        let half = evolve(ProductStateSpec::new(3, 0).unwrap(), &d, PI / (2.0 * w)).unwrap();
        assert!(schmidt_profile(&half).entropy < 1e-12);
    }
}
