//! Spectral time evolution of Fock product states.
//!
//! `|N−L⟩_A|L⟩_B` lives on the parity ladder of `L`, so only that block's
//! eigenpairs enter:
//!
//! ```text
//! a_n(t) = Σ_k exp(−i g λ_k t) C^{(k)}_start C^{(k)}_n
//! ```
//!
//! The common phase `exp(−iωNt)` is dropped; no observable depends on it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sector_basis::{FockPair, Parity};
use crate::spectrum::SpectralDecomposition;

/// Initial product state `|N−L⟩_A|L⟩_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductStateSpec {
    total_photons: u32,
    photons_in_b: u32,
}

impl ProductStateSpec {
    pub fn new(total_photons: u32, photons_in_b: u32) -> Result<Self> {
        if total_photons == 0 {
            return Err(Error::param("total photon number must be at least 1"));
        }
        if photons_in_b > total_photons {
            return Err(Error::param(format!(
                "photons in mode B ({photons_in_b}) exceed the total ({total_photons})"
            )));
        }
        Ok(ProductStateSpec { total_photons, photons_in_b })
    }

    pub fn total_photons(&self) -> u32 {
        self.total_photons
    }

    pub fn photons_in_b(&self) -> u32 {
        self.photons_in_b
    }

    /// Parity `Δ_L` of the mode-B occupation.
    pub fn parity(&self) -> Parity {
        Parity::of(self.photons_in_b)
    }

    /// Ladder position of the initial state.
    pub fn start_rung(&self) -> usize {
        (self.photons_in_b / 2) as usize
    }

    /// Number of states on the initial state's ladder.
    pub fn rungs(&self) -> usize {
        ((self.total_photons - self.parity().offset()) / 2 + 1) as usize
    }

    /// Fock state `|N−2n−Δ_L⟩_A|2n+Δ_L⟩_B` at ladder position `n`.
    pub fn rung_state(&self, n: usize) -> FockPair {
        let b = 2 * n as u32 + self.parity().offset();
        FockPair::new(self.total_photons - b, b)
    }
}

/// Ladder amplitudes at time `t`; `amplitudes[n]` multiplies
/// [`ProductStateSpec::rung_state`]`(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolvedState {
    pub spec: ProductStateSpec,
    pub time: f64,
    pub amplitudes: Vec<Complex64>,
}

impl EvolvedState {
    pub fn parity(&self) -> Parity {
        self.spec.parity()
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Precomputed products `C^{(k)}_start C^{(k)}_n` for one initial state, so
/// repeated evaluation only pays for the phases.
#[derive(Debug, Clone)]
pub struct Propagator {
    spec: ProductStateSpec,
    g: f64,
    lambdas: Vec<f64>,
    // weights[k * rungs + n]
    weights: Vec<f64>,
}

impl Propagator {
    pub fn new(spec: ProductStateSpec, decomp: &SpectralDecomposition) -> Result<Self> {
        if spec.total_photons() != decomp.params.total_photons {
            return Err(Error::param(format!(
                "initial state has {} photons but the spectrum is for {}",
                spec.total_photons(),
                decomp.params.total_photons
            )));
        }
        let block = decomp.block(spec.parity());
        let rungs = block.dimension();
        debug_assert_eq!(rungs, spec.rungs());
        let start = spec.start_rung();
        let mut weights = Vec::with_capacity(rungs * rungs);
        for k in 0..rungs {
            let v = block.vector(k);
            weights.extend(v.iter().map(|c| v[start] * c));
        }
        Ok(Propagator {
            spec,
            g: decomp.params.g,
            lambdas: block.eigenvalues.clone(),
            weights,
        })
    }

    pub fn spec(&self) -> ProductStateSpec {
        self.spec
    }

    pub fn at(&self, t: f64) -> EvolvedState {
        let rungs = self.lambdas.len();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); rungs];
        for (k, lambda) in self.lambdas.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -self.g * lambda * t);
            for (a, w) in amplitudes.iter_mut().zip(&self.weights[k * rungs..(k + 1) * rungs]) {
                *a += phase * w;
            }
        }
        EvolvedState { spec: self.spec, time: t, amplitudes }
    }
}

pub fn evolve(spec: ProductStateSpec, decomp: &SpectralDecomposition, t: f64) -> Result<EvolvedState> {
    Ok(Propagator::new(spec, decomp)?.at(t))
}

/// Rotates the global phase so the initial rung's amplitude is real and
/// non-negative, or, when that amplitude vanishes, the first nonzero one.
pub fn amplitude_phase_convention(state: &EvolvedState) -> EvolvedState {
    const NEGLIGIBLE: f64 = 1e-12;
    let start = state.spec.start_rung();
    let anchor = if state.amplitudes[start].norm() > NEGLIGIBLE {
        Some(state.amplitudes[start])
    } else {
        state.amplitudes.iter().copied().find(|a| a.norm() > NEGLIGIBLE)
    };
    let mut out = state.clone();
    if let Some(anchor) = anchor {
        let rotation = Complex64::from_polar(1.0, -anchor.arg());
        for a in &mut out.amplitudes {
            *a *= rotation;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::HamiltonianParams;
    use crate::spectrum::assemble_spectrum;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn decomp(n: u32, g: f64) -> SpectralDecomposition {
        assemble_spectrum(&HamiltonianParams::new(0.0, g, n).unwrap()).unwrap()
    }

    fn assert_amps(got: &[Complex64], want: &[Complex64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).norm() <= tol, "{a} vs {b}");
        }
    }

    #[test]
    fn spec_validation_and_layout() {
        assert!(ProductStateSpec::new(3, 4).is_err());
        assert!(ProductStateSpec::new(0, 0).is_err());
        let s = ProductStateSpec::new(9, 3).unwrap();
        assert_eq!(s.parity(), Parity::Odd);
        assert_eq!(s.start_rung(), 1);
        assert_eq!(s.rungs(), 5);
        assert_eq!(s.rung_state(0), FockPair::new(8, 1));
        assert_eq!(s.rung_state(4), FockPair::new(0, 9));
        assert_eq!(ProductStateSpec::new(4, 1).unwrap().rungs(), 2);
        assert_eq!(ProductStateSpec::new(4, 0).unwrap().rungs(), 3);
    }

    #[test]
    fn n3_quarter_period_moves_to_other_rung() {
        let g = 0.7;
        let t = PI / 2.0 / (12f64.sqrt() * g);
        let s = evolve(ProductStateSpec::new(3, 0).unwrap(), &decomp(3, g), t).unwrap();
        assert_amps(&s.amplitudes, &[c(0.0, 0.0), c(0.0, -1.0)], 1e-14);
    }

    #[test]
    fn identity_at_time_zero() {
        for n in [1, 4, 5, 9, 12] {
            let d = decomp(n, 1.3);
            for l in 0..=n {
                let spec = ProductStateSpec::new(n, l).unwrap();
                let s = evolve(spec, &d, 0.0).unwrap();
                for (i, a) in s.amplitudes.iter().enumerate() {
                    let want = if i == spec.start_rung() { 1.0 } else { 0.0 };
                    assert!((a - c(want, 0.0)).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn n5_half_period() {
        let g = 1.0;
        let t = PI / (4.0 * 7f64.sqrt() * g);
        let s = evolve(ProductStateSpec::new(5, 0).unwrap(), &decomp(5, g), t).unwrap();
        let want = [c(2.0 / 7.0, 0.0), c(0.0, 0.0), c(-3.0 * 5f64.sqrt() / 7.0, 0.0)];
        assert_amps(&s.amplitudes, &want, 1e-14);
    }

    #[test]
    fn rejects_mismatched_sector() {
        assert!(evolve(ProductStateSpec::new(5, 0).unwrap(), &decomp(3, 1.0), 0.1).is_err());
    }

    #[test]
    fn phase_convention_examples() {
        let spec = ProductStateSpec::new(3, 0).unwrap();
        let state = EvolvedState { spec, time: 0.0, amplitudes: vec![c(0.0, 0.0), c(0.0, -1.0)] };
        let fixed = amplitude_phase_convention(&state);
        assert_amps(&fixed.amplitudes, &[c(0.0, 0.0), c(1.0, 0.0)], 1e-15);

        let spec5 = ProductStateSpec::new(5, 0).unwrap();
        let unchanged = EvolvedState {
            spec: spec5,
            time: 0.0,
            amplitudes: vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        };
        assert_eq!(amplitude_phase_convention(&unchanged), unchanged);

        let theta = 0.83;
        let rot = Complex64::from_polar(1.0, theta);
        let base = [c(2.0 / 7.0, 0.0), c(0.0, 0.0), c(-3.0 * 5f64.sqrt() / 7.0, 0.0)];
        let rotated = EvolvedState {
            spec: spec5,
            time: 0.0,
            amplitudes: base.iter().map(|a| a * rot).collect(),
        };
        assert_amps(&amplitude_phase_convention(&rotated).amplitudes, &base, 1e-15);
    }

    #[test]
    fn single_photon_never_moves() {
        let d = decomp(1, 2.3);
        for l in 0..=1 {
            let p = Propagator::new(ProductStateSpec::new(1, l).unwrap(), &d).unwrap();
            for i in 0..50 {
                let s = p.at(i as f64 * 0.37);
                assert_eq!(s.amplitudes.len(), 1);
                assert!((s.amplitudes[0].norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn n3_recurs_after_half_period() {
        let g = 1.9;
        let t = PI / (12f64.sqrt() * g);
        for l in 0..=3 {
            let s = evolve(ProductStateSpec::new(3, l).unwrap(), &decomp(3, g), t).unwrap();
            let fixed = amplitude_phase_convention(&s);
            assert!((fixed.amplitudes[s.spec.start_rung()] - c(1.0, 0.0)).norm() < 1e-13);
        }
    }
}
