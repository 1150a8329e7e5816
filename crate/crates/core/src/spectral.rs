//! Dense symmetric matrices, the Randić matrix and a cyclic Jacobi eigensolver.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Eigenvalues smaller than this in magnitude are treated as exact zeros.
pub const ZERO_EIGENVALUE: f64 = 1e-10;

const JACOBI_REL_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense real symmetric matrix in row-major order. Writes go through
/// [`SymmetricMatrix::set`], which mirrors across the diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from the full row-major entries, averaging `a[i][j]` and `a[j][i]`.
    pub fn from_rows(n: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, 0.5 * (entries[i * n + j] + entries[j * n + i]));
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &SymmetricMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// The principal submatrix with row and column `i` removed.
    pub fn principal_submatrix(&self, i: usize) -> Result<SymmetricMatrix> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: i,
                n: self.n,
            });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&k| k != i).collect();
        let mut out = Self::zeros(self.n - 1);
        for (a, &r) in keep.iter().enumerate() {
            for (b, &c) in keep.iter().enumerate().skip(a) {
                out.set(a, b, self.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Product of two symmetric matrices. The result is symmetric only when
    /// they commute (powers of one matrix, for instance), so it is re-symmetrised.
    pub fn mul_commuting(&self, other: &SymmetricMatrix) -> SymmetricMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
                let t: f64 = (0..n).map(|k| other.get(i, k) * self.get(k, j)).sum();
                out.set(i, j, 0.5 * (s + t));
            }
        }
        out
    }

    pub fn scaled_add_identity(&self, diag_shift: f64) -> SymmetricMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] += diag_shift;
        }
        out
    }
}

/// `R(G)`: entry `1/sqrt(d_i d_j)` on edges, zero elsewhere.
pub fn randic_matrix(g: &Graph) -> Result<SymmetricMatrix> {
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 0) {
        return Err(Error::DegenerateDegree { vertex: v });
    }
    Ok(randic_matrix_lenient(g))
}

/// Like [`randic_matrix`] but isolated vertices get zero rows.
pub fn randic_matrix_lenient(g: &Graph) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(g.vertex_count());
    for &(u, v) in g.edges() {
        m.set(u, v, 1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt());
    }
    m
}

/// Eigenvalues in descending order and the orthogonal matrix whose column `j`
/// is the unit eigenvector of eigenvalue `j`.
#[derive(Debug, Clone, Serialize)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Row-major `n x n`; `vectors[i * n + j]` is component `i` of eigenvector `j`.
    vectors: Vec<f64>,
    pub sweeps: usize,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `y_ij`: component `i` of eigenvector `j`.
    #[inline]
    pub fn vector_entry(&self, i: usize, j: usize) -> f64 {
        self.vectors[i * self.dim() + j]
    }

    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        (0..self.dim()).map(|i| self.vector_entry(i, j)).collect()
    }

    /// Eigenvalue `j` with numerical zeros snapped to `0.0`.
    pub fn clamped_eigenvalue(&self, j: usize) -> f64 {
        let l = self.eigenvalues[j];
        if l.abs() < ZERO_EIGENVALUE {
            0.0
        } else {
            l
        }
    }

    /// Number of eigenvalues that are numerically zero.
    pub fn nullity(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|l| l.abs() < ZERO_EIGENVALUE)
            .count()
    }

    /// `sum_j y_ij^2 f(lambda_j)`, the diagonal entry of `f(M)`.
    pub fn weighted_diagonal(&self, i: usize, f: impl Fn(f64) -> f64) -> f64 {
        (0..self.dim())
            .map(|j| {
                let y = self.vector_entry(i, j);
                y * y * f(self.clamped_eigenvalue(j))
            })
            .sum()
    }

    /// `Y f(Lambda) Y^t`.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> SymmetricMatrix {
        let n = self.dim();
        let fl: Vec<f64> = (0..n).map(|j| f(self.clamped_eigenvalue(j))).collect();
        let mut out = SymmetricMatrix::zeros(n);
        for i in 0..n {
            for k in i..n {
                let s = (0..n)
                    .map(|j| self.vector_entry(i, j) * fl[j] * self.vector_entry(k, j))
                    .sum();
                out.set(i, k, s);
            }
        }
        out
    }

    /// `max |Y^t Y - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n)
                    .map(|i| self.vector_entry(i, a) * self.vector_entry(i, b))
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// `max |M Y - Y Lambda|` against the source matrix.
    pub fn residual(&self, m: &SymmetricMatrix) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let y = self.eigenvector(j);
            let my = m.mul_vec(&y);
            for i in 0..n {
                worst = worst.max((my[i] - self.eigenvalues[j] * y[i]).abs());
            }
        }
        worst
    }
}

/// Full eigendecomposition by cyclic-by-row Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm is at most `1e-13 * ||A||_F`,
/// failing after 100 sweeps.
pub fn eigen_symmetric(m: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let target = JACOBI_REL_TOL * m.frobenius_norm();
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // Rotation angle that annihilates a[p][q]; the smaller root keeps |theta| <= pi/4.
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
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
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable, so tied eigenvalues keep their rotation order.
    order.sort_by(|&x, &y| raw[y].total_cmp(&raw[x]));
    let eigenvalues = order.iter().map(|&k| raw[k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (j, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + j] = v[i * n + k];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
        sweeps,
    })
}

/// `|M| = (M M^t)^{1/2}`, assembled as `Y |Lambda| Y^t`.
pub fn matrix_abs(m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    Ok(eigen_symmetric(m)?.reconstruct(f64::abs))
}

/// `(M^k)_{ii}` by repeated matrix-vector products on the unit vector `e_i`.
pub fn power_diag(m: &SymmetricMatrix, k: u32, i: usize) -> Result<f64> {
    if i >= m.dim() {
        return Err(Error::VertexOutOfRange {
            vertex: i,
            n: m.dim(),
        });
    }
    let mut x = vec![0.0; m.dim()];
    x[i] = 1.0;
    // (M^k)_ii = |M^{k/2} e_i|^2 for even k, <M^{(k-1)/2} e_i, M^{(k+1)/2} e_i> for odd k.
    for _ in 0..k / 2 {
        x = m.mul_vec(&x);
    }
    if k % 2 == 0 {
        Ok(x.iter().map(|a| a * a).sum())
    } else {
        let y = m.mul_vec(&x);
        Ok(x.iter().zip(&y).map(|(a, b)| a * b).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    const SAMPLE7: &str = "n 7\n1 2\n2 3\n3 4\n2 4\n1 4\n4 5\n5 6\n4 6\n4 7\n";

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn randic_entries() {
        let r = randic_matrix(&k2()).unwrap();
        assert_eq!(r.row(0), &[0.0, 1.0]);
        assert_eq!(r.row(1), &[1.0, 0.0]);
        let r = randic_matrix(&cycle(4)).unwrap();
        assert!(r.row(0).iter().all(|&x| x == 0.0 || x == 0.5));
        let r = randic_matrix(&parse_edge_list(SAMPLE7).unwrap()).unwrap();
        assert!((r.get(3, 6) - 0.408_248_290_463_863).abs() < 1e-12);
        assert_eq!(r.trace(), 0.0);
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            randic_matrix(&g),
            Err(Error::DegenerateDegree { vertex: 2 })
        );
    }

    #[test]
    fn eigen_k2() {
        let e = eigen_symmetric(&randic_matrix(&k2()).unwrap()).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn eigen_seven_vertex_example() {
        let r = randic_matrix(&parse_edge_list(SAMPLE7).unwrap()).unwrap();
        let e = eigen_symmetric(&r).unwrap();
        let expected = [1.0, 0.5336, 0.1518, 0.0, -0.4999, -0.5000, -0.6855];
        for (got, want) in e.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 5e-4, "{got} vs {want}");
        }
        assert!(e.orthogonality_error() < 1e-10);
        assert!(e.residual(&r) < 1e-9);
        for j in 0..7 {
            let s: f64 = e.eigenvector(j).iter().map(|y| y * y).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn abs_and_sorting() {
        let id = matrix_abs(&randic_matrix(&k2()).unwrap()).unwrap();
        assert!(id.max_abs_diff(&SymmetricMatrix::identity(2)) < 1e-14);
        let a = matrix_abs(&randic_matrix(&cycle(4)).unwrap()).unwrap();
        for d in a.diagonal() {
            assert!((d - 0.5).abs() < 1e-12);
        }
        let m =
            SymmetricMatrix::from_rows(3, &[2.0, 0.0, 0.0, 0.0, -3.0, 0.0, 0.0, 0.0, 5.0]).unwrap();
        let e = eigen_symmetric(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![5.0, 2.0, -3.0]);
        assert_eq!(e.eigenvector(0), vec![0.0, 0.0, 1.0]);
        assert_eq!(
            eigen_symmetric(&SymmetricMatrix::zeros(0)).unwrap_err(),
            Error::EmptyMatrix
        );
    }

    #[test]
    fn power_diagonals() {
        let sample = randic_matrix(&parse_edge_list(SAMPLE7).unwrap()).unwrap();
        assert_eq!(power_diag(&sample, 0, 3).unwrap(), 1.0);
        assert!((power_diag(&sample, 2, 6).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(
            power_diag(&randic_matrix(&k2()).unwrap(), 3, 0).unwrap(),
            0.0
        );
        assert!(power_diag(&sample, 2, 7).is_err());
    }

    #[test]
    fn principal_submatrix_drops_row_and_column() {
        let m =
            SymmetricMatrix::from_rows(3, &[1.0, 2.0, 3.0, 2.0, 4.0, 5.0, 3.0, 5.0, 6.0]).unwrap();
        let s = m.principal_submatrix(1).unwrap();
        assert_eq!(s.row(0), &[1.0, 3.0]);
        assert_eq!(s.row(1), &[3.0, 6.0]);
    }
}
