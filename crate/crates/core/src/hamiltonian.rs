//! Hamiltonian matrices.
//!
//! The sector path builds `H = 2ωR₀ + g(J₊ + J₋)` on the `N+1` states with
//! fixed photon number and splits it into two zero-diagonal tridiagonal
//! blocks, one per parity ladder. The general builder covers the
//! multi-photon family `ω₁n₁ + ω₂n₂ + g a₁†ˢ a₂ʳ + g* a₁ˢ a₂†ʳ` on a
//! truncated two-mode space and only feeds conservation checks.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sector_basis::{ladder_plus_element, FockPair, Parity, SectorBasis};

/// Parameters of the equal-frequency two-photon exchange model (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianParams {
    pub omega: f64,
    pub g: f64,
    pub total_photons: u32,
}

impl HamiltonianParams {
    pub fn new(omega: f64, g: f64, total_photons: u32) -> Result<Self> {
        if total_photons == 0 {
            return Err(Error::param("total photon number must be at least 1"));
        }
        if !omega.is_finite() || !g.is_finite() {
            return Err(Error::param(format!("non-finite omega={omega} or g={g}")));
        }
        Ok(HamiltonianParams { omega, g, total_photons })
    }

    pub fn two_j(&self) -> u32 {
        self.total_photons
    }

    /// Diagonal energy `2ωj = ωN` shared by every sector state.
    pub fn diagonal_energy(&self) -> f64 {
        self.omega * self.total_photons as f64
    }
}

/// `A_k = √(k(k+1)(2j−k)(2j−k+1))` for `1 ≤ k ≤ 2j−1`.
pub fn coupling_a(k: u32, two_j: u32) -> Result<f64> {
    if k == 0 || k + 1 > two_j {
        return Err(Error::param(format!("coupling index k={k} outside 1..={}", two_j as i64 - 1)));
    }
    let (k, n) = (k as u128, two_j as u128);
    Ok(((k * (k + 1) * (n - k) * (n - k + 1)) as f64).sqrt())
}

/// Row-major dense real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetric {
    dim: usize,
    data: Vec<f64>,
}

impl DenseSymmetric {
    pub fn zeros(dim: usize) -> Self {
        DenseSymmetric { dim, data: vec![0.0; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    fn set_pair(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.dim + col] = value;
        self.data[col * self.dim + row] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Full sector matrix in the basis order of [`SectorBasis`].
pub fn build_sector_matrix(params: &HamiltonianParams) -> DenseSymmetric {
    let basis = SectorBasis::new(params.total_photons);
    let mut h = DenseSymmetric::zeros(basis.dim());
    let diag = params.diagonal_energy();
    for i in 0..basis.dim() {
        h.set_pair(i, i, diag);
    }
    // J₊ lowers the sector position by two (one more photon pair in mode A).
    for i in 2..basis.dim() {
        h.set_pair(i - 2, i, params.g * ladder_plus_element(basis.state(i)));
    }
    h
}

/// Zero-diagonal symmetric tridiagonal block of `J₊ + J₋` on one parity
/// ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityBlock {
    pub parity: Parity,
    pub offdiag: Vec<f64>,
}

impl ParityBlock {
    pub fn dimension(&self) -> usize {
        self.offdiag.len() + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParityBlocks {
    pub even: ParityBlock,
    pub odd: ParityBlock,
    /// True when both ladders have the same length, which happens exactly
    /// for odd `N`. Only then are the blocks isospectral.
    pub balanced: bool,
}

impl ParityBlocks {
    pub fn block(&self, parity: Parity) -> &ParityBlock {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }
}

/// Splits the sector into its parity ladders, with `ωN` removed and `g`
/// factored out. The even ladder couples through `A₁, A₃, …`, the odd one
/// through `A₂, A₄, …`.
pub fn split_parity_blocks(params: &HamiltonianParams) -> ParityBlocks {
    let n = params.total_photons;
    let basis = SectorBasis::new(n);
    let block = |parity: Parity| {
        let first = parity.offset() + 1;
        let rungs = basis.ladder(parity).len() as u32;
        let offdiag = (0..rungs.saturating_sub(1))
            .map(|r| coupling_a(first + 2 * r, n).expect("ladder coupling index in range"))
            .collect();
        ParityBlock { parity, offdiag }
    };
    ParityBlocks {
        even: block(Parity::Even),
        odd: block(Parity::Odd),
        balanced: n % 2 == 1,
    }
}

/// Parameters of the general multi-photon scattering model on a truncated
/// two-mode space with at most `cutoff` photons per mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralKkParams {
    pub omega1: f64,
    pub omega2: f64,
    pub g: Complex64,
    pub r: u32,
    pub s: u32,
    pub cutoff: u32,
}

/// Sparse complex Hermitian matrix over `|n₁⟩⊗|n₂⟩`, `0 ≤ nᵢ ≤ cutoff`,
/// indexed as `n₁·(cutoff+1) + n₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseHermitian {
    cutoff: u32,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl SparseHermitian {
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        let side = self.cutoff as usize + 1;
        side * side
    }

    pub fn index_of(&self, pair: FockPair) -> usize {
        pair.n1 as usize * (self.cutoff as usize + 1) + pair.n2 as usize
    }

    pub fn fock_of(&self, index: usize) -> FockPair {
        let side = self.cutoff as usize + 1;
        FockPair::new((index / side) as u32, (index % side) as u32)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries.get(&(row, col)).copied().unwrap_or_default()
    }

    /// Stored nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_hermitian(&self) -> bool {
        self.entries.iter().all(|(&(i, j), v)| self.get(j, i) == v.conj())
    }

    fn add(&mut self, row: usize, col: usize, value: Complex64) {
        if value != Complex64::new(0.0, 0.0) {
            *self.entries.entry((row, col)).or_default() += value;
        }
    }
}

/// `n(n−1)⋯(n−k+1)`, zero when `k > n`.
fn falling(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).map(|i| (n - i) as u128).product()
}

/// `(n+1)(n+2)⋯(n+k)`.
fn rising(n: u32, k: u32) -> u128 {
    (1..=k).map(|i| (n + i) as u128).product()
}

pub fn build_general_kk(params: &GeneralKkParams) -> Result<SparseHermitian> {
    let GeneralKkParams { omega1, omega2, g, r, s, cutoff } = *params;
    if r == 0 || r > s {
        return Err(Error::param(format!("need 0 < r <= s, got r={r}, s={s}")));
    }
    if cutoff < s {
        return Err(Error::param(format!("cutoff {cutoff} smaller than max(r, s) = {s}")));
    }
    let mut h = SparseHermitian { cutoff, entries: BTreeMap::new() };
    for n1 in 0..=cutoff {
        for n2 in 0..=cutoff {
            let here = h.index_of(FockPair::new(n1, n2));
            h.add(here, here, Complex64::new(omega1 * n1 as f64 + omega2 * n2 as f64, 0.0));
            // g a₁†ˢ a₂ʳ and its conjugate connect |n₁,n₂⟩ with |n₁+s,n₂−r⟩;
            // both entries come from the same integer so they conjugate exactly.
            if n2 >= r && n1 + s <= cutoff {
                let amp = ((rising(n1, s) * falling(n2, r)) as f64).sqrt();
                let there = h.index_of(FockPair::new(n1 + s, n2 - r));
                h.add(there, here, g * amp);
                h.add(here, there, g.conj() * amp);
            }
        }
    }
    Ok(h)
}
