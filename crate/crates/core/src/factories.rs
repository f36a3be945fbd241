//! Factories for the Gaussian states the analysis is exercised on: noisy
//! two-mode squeezed (EPR) pairs and graph states with uniform squeezing.
//!
//! Squeezing strength is expressed as the variance ratio `s >= 1` between
//! the anti-squeezed and squeezed quadratures of one input mode; in decibels
//! `s_dB = 10 log10(s)`. Thermal noise enters as a multiplicative factor
//! `n >= 1` on the input covariances, so `n = 1` produces pure states.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::state::GaussianState;
use crate::symplectic::{reorder_matrix, QuadratureOrdering};

/// Squeezing strength as a variance ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Squeezing(f64);

impl Squeezing {
    /// From the variance ratio itself; must be positive and finite.
    pub fn from_ratio(s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidSqueezing(s));
        }
        Ok(Squeezing(s))
    }

    /// From a value in decibels: `s = 10^(db/10)`.
    pub fn from_db(db: f64) -> Result<Self> {
        if !db.is_finite() {
            return Err(Error::InvalidSqueezing(db));
        }
        Ok(Squeezing(10f64.powf(db / 10.0)))
    }

    pub fn ratio(&self) -> f64 {
        self.0
    }

    pub fn db(&self) -> f64 {
        10.0 * self.0.log10()
    }
}

/// Multiplicative thermal-noise factor on input covariances; `n = 1` is pure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalNoise(f64);

impl ThermalNoise {
    pub fn new(n: f64) -> Result<Self> {
        if !(n.is_finite() && n >= 1.0) {
            return Err(Error::InvalidNoise(n));
        }
        Ok(ThermalNoise(n))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Noisy two-mode squeezed state: single-mode inputs with covariances
/// `diag(n s1, n/s1)` and `diag(n/s2, n s2)` mixed on a balanced
/// beamsplitter. Mode 0 plays the remote role f, mode 1 the subtraction
/// role g; the extracted blocks are `V_f = V_g = (V1 + V2)/2` and
/// `V_fg = (V2 - V1)/2`.
pub fn epr_state(s1: Squeezing, s2: Squeezing, n: ThermalNoise) -> GaussianState {
    let (s1, s2, n) = (s1.ratio(), s2.ratio(), n.value());
    let cov = DMatrix::from_diagonal(&DVector::from_vec(vec![
        n * s1,
        n / s1,
        n / s2,
        n * s2,
    ]));
    let inputs = GaussianState::from_parts(cov, DVector::zeros(4))
        .expect("diagonal input covariance is well formed");
    inputs
        .beamsplitter(0, 1, 0.5)
        .expect("balanced beamsplitter on modes 0, 1 of a two-mode state")
}

/// Symplectic eigenvalue of the conditional state of one EPR mode given the
/// other, in closed form: `nu = 2 n sqrt(s1 s2) / (1 + s1 s2)`. Depends on
/// the squeezing ratios only through their geometric mean.
pub fn epr_conditional_symplectic_eigenvalue(s1: Squeezing, s2: Squeezing, n: ThermalNoise) -> f64 {
    let g = s1.ratio() * s2.ratio();
    2.0 * n.value() * g.sqrt() / (1.0 + g)
}

/// An undirected simple graph on `m` vertices, stored as a dense 0/1
/// adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adjacency: DMatrix<f64>,
}

/// Non-fatal findings from parsing an edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphWarning {
    /// An edge appeared more than once; duplicates are collapsed.
    DuplicateEdge { line: usize, a: usize, b: usize },
}

impl std::fmt::Display for GraphWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphWarning::DuplicateEdge { line, a, b } => {
                write!(f, "line {line}: duplicate edge {a} {b} collapsed")
            }
        }
    }
}

impl Graph {
    /// Build from 0-based vertex pairs. Self-loops are rejected; duplicate
    /// edges collapse silently (the adjacency matrix is a set).
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = DMatrix::zeros(vertices, vertices);
        for &(a, b) in edges {
            if a >= vertices {
                return Err(Error::ModeIndex { index: a, modes: vertices });
            }
            if b >= vertices {
                return Err(Error::ModeIndex { index: b, modes: vertices });
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop on vertex {a}")));
            }
            adjacency[(a, b)] = 1.0;
            adjacency[(b, a)] = 1.0;
        }
        Ok(Graph { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.nrows()
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for a in 0..self.vertex_count() {
            for b in (a + 1)..self.vertex_count() {
                if self.adjacency[(a, b)] != 0.0 {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn adjacency(&self) -> &DMatrix<f64> {
        &self.adjacency
    }

    pub fn degree(&self, vertex: usize) -> usize {
        (0..self.vertex_count())
            .filter(|&b| self.adjacency[(vertex, b)] != 0.0)
            .count()
    }

    /// Edges as 0-based pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            for b in (a + 1)..self.vertex_count() {
                if self.adjacency[(a, b)] != 0.0 {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Parse an edge-list description of a graph.
///
/// Format: one edge per line as two 1-based vertex ids separated by
/// whitespace; `#` starts a comment (whole-line or trailing); an optional
/// `vertices <m>` line fixes the vertex count (otherwise the largest id
/// seen is used). Self-loops are errors; duplicate edges are collapsed and
/// reported as warnings.
pub fn parse_graph(src: &str) -> Result<(Graph, Vec<GraphWarning>)> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new(); // (a, b, line)
    let mut max_vertex = 0usize;

    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "vertices" {
            if fields.len() != 2 {
                return Err(Error::GraphParse {
                    line: line_no,
                    reason: "expected `vertices <count>`".into(),
                });
            }
            let m: usize = fields[1].parse().map_err(|_| Error::GraphParse {
                line: line_no,
                reason: format!("bad vertex count `{}`", fields[1]),
            })?;
            if m == 0 {
                return Err(Error::GraphParse {
                    line: line_no,
                    reason: "vertex count must be positive".into(),
                });
            }
            declared = Some(m);
            continue;
        }
        if fields.len() != 2 {
            return Err(Error::GraphParse {
                line: line_no,
                reason: format!("expected two vertex ids, got {} fields", fields.len()),
            });
        }
        let parse_id = |s: &str| -> Result<usize> {
            let id: usize = s.parse().map_err(|_| Error::GraphParse {
                line: line_no,
                reason: format!("bad vertex id `{s}`"),
            })?;
            if id == 0 {
                return Err(Error::GraphParse {
                    line: line_no,
                    reason: "vertex ids are 1-based".into(),
                });
            }
            Ok(id)
        };
        let a = parse_id(fields[0])?;
        let b = parse_id(fields[1])?;
        if a == b {
            return Err(Error::SelfLoop { line: line_no, vertex: a });
        }
        max_vertex = max_vertex.max(a).max(b);
        edges.push((a - 1, b - 1, line_no));
    }

    let vertices = match declared {
        Some(m) => {
            if max_vertex > m {
                return Err(Error::GraphParse {
                    line: 0,
                    reason: format!("edge references vertex {max_vertex} but only {m} declared"),
                });
            }
            m
        }
        None => {
            if edges.is_empty() {
                return Err(Error::GraphParse {
                    line: 0,
                    reason: "no edges and no `vertices` line".into(),
                });
            }
            max_vertex
        }
    };

    let mut adjacency = DMatrix::zeros(vertices, vertices);
    let mut warnings = Vec::new();
    for (a, b, line) in edges {
        if adjacency[(a, b)] != 0.0 {
            warnings.push(GraphWarning::DuplicateEdge { line, a: a + 1, b: b + 1 });
        }
        adjacency[(a, b)] = 1.0;
        adjacency[(b, a)] = 1.0;
    }
    Ok((Graph { adjacency }, warnings))
}

/// Read and parse an edge-list file; see [`parse_graph`] for the format.
pub fn load_graph(path: &std::path::Path) -> Result<(Graph, Vec<GraphWarning>)> {
    let src = std::fs::read_to_string(path)?;
    parse_graph(&src)
}

/// Gaussian graph state with uniform squeezing `s` and thermal factor `n`.
///
/// In blockwise ordering the covariance is
/// `V = M diag(n s 1_m, (n/s) 1_m) M^T` with
/// `M = [[X, Y], [-Y, X]]`, `X = (A^2 + 1)^{-1/2}`, `Y = A X`, where `A` is
/// the adjacency matrix. `M` is symplectic, so `n = 1` gives a pure state.
/// The returned state is in the crate's interleaved ordering.
pub fn graph_state(graph: &Graph, s: Squeezing, n: ThermalNoise) -> Result<GaussianState> {
    let m = graph.vertex_count();
    if m == 0 {
        return Err(Error::InvalidInput("graph has no vertices".into()));
    }
    let a = graph.adjacency();
    // X and Y are functions of A; compute both from one symmetric
    // eigendecomposition A = Q L Q^T so that they commute exactly.
    let eig = a.clone().symmetric_eigen();
    let q = &eig.eigenvectors;
    let x_scale = DVector::from_fn(m, |i, _| 1.0 / (eig.eigenvalues[i].powi(2) + 1.0).sqrt());
    let y_scale = DVector::from_fn(m, |i, _| eig.eigenvalues[i] * x_scale[i]);
    let x = q * DMatrix::from_diagonal(&x_scale) * q.transpose();
    let y = q * DMatrix::from_diagonal(&y_scale) * q.transpose();

    let mut sympl = DMatrix::zeros(2 * m, 2 * m);
    sympl.view_mut((0, 0), (m, m)).copy_from(&x);
    sympl.view_mut((0, m), (m, m)).copy_from(&y);
    sympl.view_mut((m, 0), (m, m)).copy_from(&(-&y));
    sympl.view_mut((m, m), (m, m)).copy_from(&x);

    let (s, n) = (s.ratio(), n.value());
    let d = DMatrix::from_diagonal(&DVector::from_fn(2 * m, |i, _| {
        if i < m {
            n * s
        } else {
            n / s
        }
    }));
    let v_block = &sympl * d * sympl.transpose();
    let v_block = 0.5 * (&v_block + v_block.transpose());
    let v = reorder_matrix(&v_block, QuadratureOrdering::Blockwise, QuadratureOrdering::Interleaved)?;
    GaussianState::from_parts(v, DVector::zeros(2 * m))
}
