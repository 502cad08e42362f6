//! Implicit-shift QL iteration for real symmetric tridiagonal matrices.

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `offdiag` (`offdiag[i]` couples rows `i`, `i+1`).
///
/// Returns eigenvalues in ascending order and the eigenvectors as a
/// column-major `n × n` array, column `k` belonging to eigenvalue `k`. The
/// first component of each eigenvector with magnitude above round-off is
/// made positive.
pub(crate) fn symmetric_tridiagonal_eigen(diag: &[f64], offdiag: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    assert_eq!(offdiag.len() + 1, n.max(1), "off-diagonal length must be n - 1");
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    let norm = d
        .iter()
        .zip(&e)
        .map(|(a, b)| a.abs() + b.abs())
        .fold(0.0_f64, f64::max);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let scale = (d[m].abs() + d[m + 1].abs()).max(f64::EPSILON * norm);
                if e[m].abs() <= f64::EPSILON * scale {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            assert!(sweeps <= MAX_SWEEPS, "tridiagonal QL failed to converge");

            // Wilkinson-type shift from the leading 2x2 of the active block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let (col_i, col_next) = (i * n, (i + 1) * n);
                for k in 0..n {
                    let zf = z[col_next + k];
                    let zi = z[col_i + k];
                    z[col_next + k] = s * zi + c * zf;
                    z[col_i + k] = c * zi - s * zf;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &k in &order {
        let col = &z[k * n..(k + 1) * n];
        let lead = col
            .iter()
            .copied()
            .find(|x| x.abs() > 1e-12)
            .unwrap_or(1.0);
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        vectors.extend(col.iter().map(|x| sign * x));
    }
    (values, vectors)
}
