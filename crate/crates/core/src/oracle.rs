//! Slow reference path for cross-checking the sector code.
//!
//! Everything here is built from raw single-mode boson matrices on the
//! truncated space `|n₁⟩⊗|n₂⟩, nᵢ ≤ cutoff`, diagonalized with cyclic
//! Jacobi rotations, and reduced with an explicit partial trace. None of it
//! shares code with the ladder/tridiagonal path.

use num_complex::Complex64;

use crate::dynamics::ProductStateSpec;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianParams;

/// Dense complex operator on `(cutoff+1)²` two-mode states, row-major,
/// indexed `n₁·(cutoff+1) + n₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseFockOperator {
    pub cutoff: usize,
    pub matrix: Vec<Complex64>,
}

type Single = Vec<Vec<f64>>;

fn annihilation(side: usize) -> Single {
    let mut a = vec![vec![0.0; side]; side];
    for n in 1..side {
        a[n - 1][n] = (n as f64).sqrt();
    }
    a
}

fn transpose(m: &Single) -> Single {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

fn matmul(x: &Single, y: &Single) -> Single {
    let n = x.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k] != 0.0 {
                for j in 0..n {
                    out[i][j] += x[i][k] * y[k][j];
                }
            }
        }
    }
    out
}

impl DenseFockOperator {
    pub fn side(&self) -> usize {
        self.cutoff + 1
    }

    pub fn dim(&self) -> usize {
        self.side() * self.side()
    }

    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * self.side() + n2
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.dim() + col]
    }

    fn zeros(cutoff: usize) -> Self {
        let side = cutoff + 1;
        DenseFockOperator { cutoff, matrix: vec![Complex64::new(0.0, 0.0); side.pow(4)] }
    }

    /// `coeff · (x ⊗ y)` added in place.
    fn add_kron(&mut self, coeff: Complex64, x: &Single, y: &Single) {
        let side = self.side();
        let dim = self.dim();
        for i1 in 0..side {
            for j1 in 0..side {
                if x[i1][j1] == 0.0 {
                    continue;
                }
                for i2 in 0..side {
                    for j2 in 0..side {
                        let v = x[i1][j1] * y[i2][j2];
                        if v != 0.0 {
                            self.matrix[(i1 * side + i2) * dim + j1 * side + j2] += coeff * v;
                        }
                    }
                }
            }
        }
    }

    /// `(a₁†)^p a₁^q ⊗ (a₂†)^u a₂^v`-style products as dense matrices.
    pub fn two_photon_generators(cutoff: usize) -> (Self, Self) {
        let side = cutoff + 1;
        let a = annihilation(side);
        let ad = transpose(&a);
        let a2 = matmul(&a, &a);
        let ad2 = matmul(&ad, &ad);
        let mut plus = Self::zeros(cutoff);
        plus.add_kron(Complex64::new(1.0, 0.0), &ad2, &a2);
        let mut minus = Self::zeros(cutoff);
        minus.add_kron(Complex64::new(1.0, 0.0), &a2, &ad2);
        (plus, minus)
    }

    /// `ω(a₁†a₁ + a₂†a₂) + g(a₁†²a₂² + a₁²a₂†²)`.
    pub fn hamiltonian(params: &HamiltonianParams, cutoff: usize) -> Self {
        let side = cutoff + 1;
        let a = annihilation(side);
        let ad = transpose(&a);
        let number = matmul(&ad, &a);
        let identity: Single = (0..side)
            .map(|i| (0..side).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let a2 = matmul(&a, &a);
        let ad2 = matmul(&ad, &ad);
        let mut h = Self::zeros(cutoff);
        let omega = Complex64::new(params.omega, 0.0);
        let g = Complex64::new(params.g, 0.0);
        h.add_kron(omega, &number, &identity);
        h.add_kron(omega, &identity, &number);
        h.add_kron(g, &ad2, &a2);
        h.add_kron(g, &a2, &ad2);
        h
    }

    pub fn mul(&self, other: &Self) -> Self {
        let dim = self.dim();
        let mut out = Self::zeros(self.cutoff);
        for i in 0..dim {
            for k in 0..dim {
                let x = self.matrix[i * dim + k];
                if x == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..dim {
                    out.matrix[i * dim + j] += x * other.matrix[k * dim + j];
                }
            }
        }
        out
    }
}

/// Cyclic Jacobi eigen-decomposition of a real symmetric matrix given
/// row-major. Returns unsorted eigenvalues and row-major eigenvectors
/// (column `k` belongs to eigenvalue `k`).
pub fn jacobi_eigen(matrix: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

/// Eigenvalues of a complex Hermitian matrix (row-major) through the real
/// symmetric embedding `[[Re, −Im], [Im, Re]]`, whose spectrum is the
/// Hermitian one with every value doubled. Returned ascending, doubled.
pub fn hermitian_eigenvalues_doubled(matrix: &[Complex64], n: usize) -> Vec<f64> {
    let m = 2 * n;
    let mut real = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = matrix[i * n + j];
            real[i * m + j] = z.re;
            real[(i + n) * m + j + n] = z.re;
            real[i * m + j + n] = -z.im;
            real[(i + n) * m + j] = z.im;
        }
    }
    let (mut w, _) = jacobi_eigen(&real, m);
    w.sort_by(f64::total_cmp);
    w
}

/// Fixed-`N` slice of the dense Hamiltonian with its eigen-decomposition.
#[derive(Debug, Clone)]
pub struct OracleSector {
    cutoff: usize,
    /// Full-space indices of the sector states.
    indices: Vec<usize>,
    /// The sector block is a constant diagonal plus the exchange term; the
    /// constant is split off so long times do not amplify its rounding.
    shift: f64,
    /// Eigenvalues of the block minus `shift`.
    eigenvalues: Vec<f64>,
    /// Row-major `d × d`.
    vectors: Vec<f64>,
}

impl OracleSector {
    pub fn new(params: &HamiltonianParams, cutoff: usize) -> Result<Self> {
        let n = params.total_photons as usize;
        if cutoff < n {
            return Err(Error::param(format!("oracle cutoff {cutoff} below photon number {n}")));
        }
        let h = DenseFockOperator::hamiltonian(params, cutoff);
        let indices: Vec<usize> = (0..=n).map(|b| h.index(n - b, b)).collect();
        let d = indices.len();
        let mut block = vec![0.0; d * d];
        for (r, &i) in indices.iter().enumerate() {
            for (c, &j) in indices.iter().enumerate() {
                let z = h.get(i, j);
                if z.im != 0.0 {
                    return Err(Error::Consistency("real coupling produced a complex element".into()));
                }
                block[r * d + c] = z.re;
            }
        }
        let shift = (0..d).map(|i| block[i * d + i]).sum::<f64>() / d as f64;
        for i in 0..d {
            block[i * d + i] -= shift;
        }
        let (eigenvalues, vectors) = jacobi_eigen(&block, d);
        Ok(OracleSector { cutoff, indices, shift, eigenvalues, vectors })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|e| e + self.shift).collect()
    }

    /// `exp(−iHt)|N−L, L⟩` over the whole truncated product basis.
    pub fn evolve(&self, spec: &ProductStateSpec, t: f64) -> Result<Vec<Complex64>> {
        let side = self.cutoff + 1;
        let d = self.indices.len();
        let n = spec.total_photons() as usize;
        if n + 1 != d {
            return Err(Error::param("initial state is outside the oracle's sector"));
        }
        let start = spec.photons_in_b() as usize;
        let global = Complex64::from_polar(1.0, -self.shift * t);
        let mut out = vec![Complex64::new(0.0, 0.0); side * side];
        for (r, &full) in self.indices.iter().enumerate() {
            let mut amp = Complex64::new(0.0, 0.0);
            for k in 0..d {
                let phase = Complex64::from_polar(1.0, -self.eigenvalues[k] * t);
                amp += phase * self.vectors[r * d + k] * self.vectors[start * d + k];
            }
            out[full] = amp * global;
        }
        Ok(out)
    }
}

pub fn oracle_evolve(
    spec: &ProductStateSpec,
    params: &HamiltonianParams,
    t: f64,
    cutoff: usize,
) -> Result<Vec<Complex64>> {
    OracleSector::new(params, cutoff)?.evolve(spec, t)
}

/// `ρ_A = Tr_B |ψ⟩⟨ψ|` for a state over the truncated product basis.
pub fn reduced_density_a(state: &[Complex64], cutoff: usize) -> Vec<Complex64> {
    let side = cutoff + 1;
    assert_eq!(state.len(), side * side, "state length does not match cutoff");
    let mut rho = vec![Complex64::new(0.0, 0.0); side * side];
    for i in 0..side {
        for j in 0..side {
            rho[i * side + j] = (0..side)
                .map(|b| state[i * side + b] * state[j * side + b].conj())
                .sum();
        }
    }
    rho
}

/// Eigenvalues of `ρ_A`, ascending.
pub fn reduced_spectrum(state: &[Complex64], cutoff: usize) -> Vec<f64> {
    let side = cutoff + 1;
    let rho = reduced_density_a(state, cutoff);
    let doubled = hermitian_eigenvalues_doubled(&rho, side);
    doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

pub fn oracle_entropy(state: &[Complex64], cutoff: usize) -> f64 {
    let side = cutoff + 1;
    let rho = reduced_density_a(state, cutoff);
    let doubled = hermitian_eigenvalues_doubled(&rho, side);
    let s: f64 = doubled.iter().filter(|&&mu| mu > 1e-15).map(|&mu| -mu * mu.ln()).sum();
    (0.5 * s).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn basis_state(cutoff: usize, n1: usize, n2: usize) -> Vec<Complex64> {
        let side = cutoff + 1;
        let mut v = vec![Complex64::new(0.0, 0.0); side * side];
        v[n1 * side + n2] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn jacobi_diagonalizes() {
        let m = [4.0, 1.0, -2.0, 1.0, 2.0, 0.5, -2.0, 0.5, -3.0];
        let (w, v) = jacobi_eigen(&m, 3);
        for k in 0..3 {
            for i in 0..3 {
                let mv: f64 = (0..3).map(|j| m[i * 3 + j] * v[j * 3 + k]).sum();
                assert!((mv - w[k] * v[i * 3 + k]).abs() < 1e-13);
            }
        }
        let trace: f64 = w.iter().sum();
        assert!((trace - 3.0).abs() < 1e-13);
    }

    #[test]
    fn ladder_operator_elements() {
        let (plus, minus) = DenseFockOperator::two_photon_generators(6);
        // ⟨2,0|a₁†²a₂²|0,2⟩ = √(1·2·2·1) = 2
        assert!((plus.get(plus.index(2, 0), plus.index(0, 2)).re - 2.0).abs() < 1e-14);
        let comm_plus = plus.mul(&minus);
        let comm_minus = minus.mul(&plus);
        let i = plus.index(3, 0);
        let d = comm_plus.get(i, i) - comm_minus.get(i, i);
        assert!((d.re - 12.0).abs() < 1e-12);
    }

    #[test]
    fn evolve_examples() {
        let params = HamiltonianParams::new(0.0, 1.0, 3).unwrap();
        let spec = ProductStateSpec::new(3, 0).unwrap();
        let s0 = oracle_evolve(&spec, &params, 0.0, 3).unwrap();
        let side = 4;
        assert!((s0[3 * side] - Complex64::new(1.0, 0.0)).norm() < 1e-14);

        let t = PI / 2.0 / 12f64.sqrt();
        let s = oracle_evolve(&spec, &params, t, 5).unwrap();
        assert!((s[6 + 2].norm_sqr() - 1.0).abs() < 1e-13);

        let p5 = HamiltonianParams::new(0.0, 1.0, 5).unwrap();
        let spec5 = ProductStateSpec::new(5, 2).unwrap();
        let t5 = PI / 2.0 / (4.0 * 7f64.sqrt());
        let s5 = oracle_evolve(&spec5, &p5, t5, 5).unwrap();
        let w = |n1: usize, n2: usize| s5[n1 * 6 + n2].norm_sqr();
        assert!((w(5, 0) - 5.0 / 14.0).abs() < 1e-13);
        assert!(w(3, 2) < 1e-13);
        assert!((w(1, 4) - 9.0 / 14.0).abs() < 1e-13);

        assert!(oracle_evolve(&spec5, &p5, 0.1, 4).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert!(oracle_entropy(&basis_state(4, 2, 1), 4).abs() < 1e-14);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut bell = vec![Complex64::new(0.0, 0.0); 16];
        bell[3 * 4] = Complex64::new(h, 0.0);
        bell[4 + 2] = Complex64::new(h, 0.0);
        assert!((oracle_entropy(&bell, 3) - LN_2).abs() < 1e-13);

        let r = 1.0 / 3f64.sqrt();
        let mut uniform = vec![Complex64::new(0.0, 0.0); 36];
        for (n1, n2) in [(5, 0), (3, 2), (1, 4)] {
            uniform[n1 * 6 + n2] = Complex64::new(0.0, r);
        }
        assert!((oracle_entropy(&uniform, 5) - 3f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let params = HamiltonianParams::new(0.3, 1.2, 7).unwrap();
        let spec = ProductStateSpec::new(7, 3).unwrap();
        let state = oracle_evolve(&spec, &params, 0.77, 8).unwrap();
        let rho = reduced_density_a(&state, 8);
        let trace: Complex64 = (0..9).map(|i| rho[i * 9 + i]).sum();
        assert!((trace - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
