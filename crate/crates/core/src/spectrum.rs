//! Exact spectrum of the sector Hamiltonian.
//!
//! Each parity block is a zero-diagonal tridiagonal matrix `T`; its
//! eigenvalues `λ_k` give energies `E_k = ωN + gλ_k`. For odd `N` the odd
//! block is the even block reflected end to end, so both blocks share their
//! spectrum and every `E_k` carries one eigenvector on each ladder.

use crate::error::{Error, Result};
use crate::hamiltonian::{split_parity_blocks, HamiltonianParams, ParityBlock};
use crate::sector_basis::{ladder_minus_element, ladder_plus_element, Parity, SectorBasis};
use crate::tridiag::symmetric_tridiagonal_eigen;

/// Eigenvalues (ascending) and orthonormal eigenvectors of one parity block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockEigen {
    pub parity: Parity,
    pub eigenvalues: Vec<f64>,
    /// Column-major; column `k` holds the ladder coefficients `C^{(k)}`,
    /// top rung first.
    vectors: Vec<f64>,
}

impl BlockEigen {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        let n = self.dimension();
        &self.vectors[k * n..(k + 1) * n]
    }

    /// Largest entry of `|VᵀV − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dimension();
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = self.vector(a).iter().zip(self.vector(b)).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

pub fn diagonalize_block(block: &ParityBlock) -> BlockEigen {
    let diag = vec![0.0; block.dimension()];
    let (eigenvalues, vectors) = symmetric_tridiagonal_eigen(&diag, &block.offdiag);
    BlockEigen { parity: block.parity, eigenvalues, vectors }
}

/// `det(λI − T)` through the three-term recurrence
/// `p_d = λ p_{d−1} − b_{d−1}² p_{d−2}`.
pub fn char_poly_eval(block: &ParityBlock, lambda: f64) -> f64 {
    let mut prev = 1.0;
    let mut cur = lambda;
    for b in &block.offdiag {
        let next = lambda * cur - b * b * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// One energy level with the block eigenvectors that carry it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub lambda: f64,
    pub energy: f64,
    pub multiplicity: usize,
    /// Column in the even block's eigenvector matrix, if this level has an
    /// eigenvector on the even ladder.
    pub even_index: Option<usize>,
    pub odd_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub params: HamiltonianParams,
    pub even: BlockEigen,
    pub odd: BlockEigen,
    /// Ascending in `λ`. For odd `N` every level has multiplicity 2; for even
    /// `N` the two blocks are listed separately and no pairing is attempted.
    pub levels: Vec<EnergyLevel>,
}

impl SpectralDecomposition {
    pub fn block(&self, parity: Parity) -> &BlockEigen {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.lambda).collect()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Diagonalizes both parity blocks and assembles the energy levels.
///
/// For odd `N` the blocks are paired eigenvalue by eigenvalue; a pair that
/// disagrees beyond `1e−8` of the spectral spread, or two eigenvalues of one
/// block closer than that, is reported as a consistency error.
pub fn assemble_spectrum(params: &HamiltonianParams) -> Result<SpectralDecomposition> {
    let blocks = split_parity_blocks(params);
    let even = diagonalize_block(&blocks.even);
    let odd = diagonalize_block(&blocks.odd);
    let energy = |lambda: f64| params.diagonal_energy() + params.g * lambda;

    let levels = if blocks.balanced {
        let spread = even.eigenvalues.last().unwrap() - even.eigenvalues[0];
        let tol = 1e-8 * if spread > 0.0 { spread } else { 1.0 };
        for block in [&even, &odd] {
            if let Some(w) = block.eigenvalues.windows(2).find(|w| w[1] - w[0] < tol) {
                return Err(Error::Consistency(format!(
                    "accidental degeneracy inside the {:?} block: {} vs {}",
                    block.parity, w[0], w[1]
                )));
            }
        }
        even.eigenvalues
            .iter()
            .zip(&odd.eigenvalues)
            .enumerate()
            .map(|(k, (&le, &lo))| {
                if (le - lo).abs() > tol {
                    return Err(Error::Consistency(format!(
                        "parity blocks not isospectral at level {k}: {le} vs {lo}"
                    )));
                }
                let lambda = 0.5 * (le + lo);
                Ok(EnergyLevel {
                    lambda,
                    energy: energy(lambda),
                    multiplicity: 2,
                    even_index: Some(k),
                    odd_index: Some(k),
                })
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut levels: Vec<EnergyLevel> = even
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &lambda)| EnergyLevel {
                lambda,
                energy: energy(lambda),
                multiplicity: 1,
                even_index: Some(k),
                odd_index: None,
            })
            .chain(odd.eigenvalues.iter().enumerate().map(|(k, &lambda)| EnergyLevel {
                lambda,
                energy: energy(lambda),
                multiplicity: 1,
                even_index: None,
                odd_index: Some(k),
            }))
            .collect();
        levels.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        levels
    };

    Ok(SpectralDecomposition { params: *params, even, odd, levels })
}

/// Largest residual of the coefficient recursion
/// `E C_m = ωN C_m + g C_{m−2} ⟨m|J₊|m−2⟩ + g C_{m+2} ⟨m|J₋|m+2⟩`
/// over every eigenvector and every sector state, using ladder elements
/// rather than the block couplings.
pub fn verify_recursion(decomp: &SpectralDecomposition, params: &HamiltonianParams) -> f64 {
    let basis = SectorBasis::new(params.total_photons);
    let dim = basis.dim();
    let mut worst = 0.0_f64;
    for level in &decomp.levels {
        let energy = params.diagonal_energy() + params.g * level.lambda;
        let members = [
            (Parity::Even, level.even_index),
            (Parity::Odd, level.odd_index),
        ];
        for (parity, index) in members {
            let Some(k) = index else { continue };
            let mut coeffs = vec![0.0; dim];
            for (&pos, &c) in basis.ladder(parity).iter().zip(decomp.block(parity).vector(k)) {
                coeffs[pos] = c;
            }
            for i in 0..dim {
                let mut rhs = params.diagonal_energy() * coeffs[i];
                // Position i+2 is m−2, position i−2 is m+2.
                if i + 2 < dim {
                    rhs += params.g * coeffs[i + 2] * ladder_plus_element(basis.state(i + 2));
                }
                if i >= 2 {
                    rhs += params.g * coeffs[i - 2] * ladder_minus_element(basis.state(i - 2));
                }
                worst = worst.max((energy * coeffs[i] - rhs).abs());
            }
        }
    }
    worst
}
