//! Named graph families with closed-form vertex energies, plus a random
//! connected-graph generator for test suites.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::energy::vertex_energies;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A parametrised family member. Vertex 0 is the hub of a friendship graph and
/// the centre of a star; side A of `K_{n1,n2}` is `0..n1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        n: usize,
    },
    CompleteBipartite {
        n1: usize,
        n2: usize,
    },
    /// `triangles` copies of `C_3` sharing one hub; `2 * triangles + 1` vertices.
    Friendship {
        triangles: usize,
    },
    Path {
        n: usize,
    },
}

/// Orbit-like vertex classes used by the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexClass {
    /// Every vertex of a vertex-transitive family.
    Any,
    Center,
    Leaf,
    SideA,
    SideB,
    Hub,
    /// A non-hub vertex of a friendship graph.
    Blade,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm {
    pub value: f64,
    /// False when no closed form is known and the value came from the eigensolver.
    pub exact: bool,
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Family::Complete { n } | Family::Star { n } | Family::Path { n } => n >= 2,
            Family::Cycle { n } => n >= 3,
            Family::CompleteBipartite { n1, n2 } => n1 >= 1 && n2 >= 1,
            Family::Friendship { triangles } => triangles >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "family parameters out of range: {self:?}"
            )))
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Complete { n }
            | Family::Cycle { n }
            | Family::Star { n }
            | Family::Path { n } => n,
            Family::CompleteBipartite { n1, n2 } => n1 + n2,
            Family::Friendship { triangles } => 2 * triangles + 1,
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.vertex_count();
        let edges: Vec<(usize, usize)> = match *self {
            Family::Complete { n } => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect(),
            Family::Cycle { n } => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            Family::Star { n } => (1..n).map(|i| (0, i)).collect(),
            Family::Path { n } => (1..n).map(|i| (i - 1, i)).collect(),
            Family::CompleteBipartite { n1, n2 } => (0..n1)
                .flat_map(|i| (n1..n1 + n2).map(move |j| (i, j)))
                .collect(),
            Family::Friendship { triangles } => (0..triangles)
                .flat_map(|t| {
                    let (a, b) = (2 * t + 1, 2 * t + 2);
                    [(0, a), (0, b), (a, b)]
                })
                .collect(),
        };
        Graph::from_edges(n, edges)
    }

    /// Class of vertex `v` under the canonical labelling.
    pub fn vertex_class(&self, v: usize) -> Result<VertexClass> {
        self.validate()?;
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            });
        }
        Ok(match *self {
            Family::Complete { .. } | Family::Cycle { .. } | Family::Path { .. } => {
                VertexClass::Any
            }
            Family::Star { .. } if v == 0 => VertexClass::Center,
            Family::Star { .. } => VertexClass::Leaf,
            Family::CompleteBipartite { n1, .. } if v < n1 => VertexClass::SideA,
            Family::CompleteBipartite { .. } => VertexClass::SideB,
            Family::Friendship { .. } if v == 0 => VertexClass::Hub,
            Family::Friendship { .. } => VertexClass::Blade,
        })
    }

    /// Closed-form energy of any vertex in `class`.
    pub fn closed_form_energy(&self, class: VertexClass) -> Result<ClosedForm> {
        self.validate()?;
        let exact = |value: f64| Ok(ClosedForm { value, exact: true });
        match (*self, class) {
            (Family::Complete { n }, VertexClass::Any) => exact(2.0 / n as f64),
            (Family::Cycle { n }, VertexClass::Any) => {
                let nf = n as f64;
                match n % 4 {
                    0 => exact(2.0 * (PI / nf).cos() / (nf * (PI / nf).sin())),
                    1 => exact(1.0 / (nf * (PI / (2.0 * nf)).sin())),
                    2 => exact(2.0 / (nf * (PI / nf).sin())),
                    _ => Ok(ClosedForm {
                        value: vertex_energies(&self.generate()?)?.energies[0],
                        exact: false,
                    }),
                }
            }
            (Family::Star { .. }, VertexClass::Center) => exact(1.0),
            (Family::Star { n }, VertexClass::Leaf) => exact(1.0 / (n - 1) as f64),
            (Family::CompleteBipartite { n1, .. }, VertexClass::SideA) => exact(1.0 / n1 as f64),
            (Family::CompleteBipartite { n2, .. }, VertexClass::SideB) => exact(1.0 / n2 as f64),
            (Family::Friendship { .. }, VertexClass::Hub) => exact(2.0 / 3.0),
            (Family::Friendship { triangles }, VertexClass::Blade) => {
                let t = triangles as f64;
                exact((3.0 * t + 1.0) / (6.0 * t))
            }
            _ => Err(Error::InvalidParameter(format!(
                "no closed form for class {class:?} of {self:?}"
            ))),
        }
    }

    /// Closed-form energy of every vertex, in vertex order.
    pub fn closed_form_energies(&self) -> Result<Vec<ClosedForm>> {
        (0..self.vertex_count())
            .map(|v| self.closed_form_energy(self.vertex_class(v)?))
            .collect()
    }
}

/// Every family member with at most `max_vertices` vertices.
pub fn families_up_to(max_vertices: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        out.push(Family::Complete { n });
        out.push(Family::Star { n });
        out.push(Family::Path { n });
        if n >= 3 {
            out.push(Family::Cycle { n });
        }
        for n1 in 1..n {
            if n1 <= n - n1 {
                out.push(Family::CompleteBipartite { n1, n2: n - n1 });
            }
        }
        if n % 2 == 1 && n >= 3 {
            out.push(Family::Friendship {
                triangles: (n - 1) / 2,
            });
        }
    }
    out
}

/// Spectrum of `R(F_t)` as `(eigenvalue, multiplicity)`, descending; zero
/// multiplicities are omitted.
pub fn friendship_spectrum(triangles: usize) -> Vec<(f64, usize)> {
    [
        (1.0, 1),
        (0.5, triangles.saturating_sub(1)),
        (-0.5, triangles + 1),
    ]
    .into_iter()
    .filter(|&(_, m)| m > 0)
    .collect()
}

/// Spectral weights of the friendship hub on the eigenvalues `(1, 1/2, -1/2)`,
/// from the moment system `sum_j x_j lambda_j^k = (R^k)_hh` for `k = 0, 1, 2`.
pub fn friendship_hub_weights() -> [f64; 3] {
    let lambda = [1.0, 0.5, -0.5];
    let moments = [1.0, 0.0, 0.5];
    let mut a = [[0.0; 4]; 3];
    for k in 0..3 {
        for j in 0..3 {
            a[k][j] = f64::powi(lambda[j], k as i32);
        }
        a[k][3] = moments[k];
    }
    solve3(a)
}

/// Gaussian elimination with partial pivoting on an augmented 3x3 system.
fn solve3(mut a: [[f64; 4]; 3]) -> [f64; 3] {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .expect("non-empty range");
        a.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (a[row][3] - tail) / a[row][row];
    }
    x
}

/// Erdős–Rényi `G(n, p)`, resampled until connected.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n < 2 || !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "random graph needs n >= 2 and 0 < p <= 1, got n={n}, p={p}"
        )));
    }
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}
