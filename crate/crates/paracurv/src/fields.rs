//! Tensor, vector and metric fields with closed-form components on a chart.

use crate::chart::Chart;
use crate::expr::{equal_numeric, EvalError, Expr};
use nalgebra::DMatrix;
use thiserror::Error;

pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("metric component ({i},{j}) is not symmetric with ({j},{i})")]
    NotSymmetric { i: usize, j: usize },
    #[error("metric is degenerate at point {point:?} (|det| = {det:.3e})")]
    Degenerate { point: Vec<f64>, det: f64 },
    #[error("metric signature is not constant across the sample box")]
    SignatureChange,
    #[error("chart dimension {dim} is even; operation needs an odd dimension")]
    EvenDimension { dim: usize },
    #[error("operation requires dimension 3, chart has dimension {dim}")]
    DimensionNot3 { dim: usize },
    #[error("symbolic matrix inverse supports dimension <= 4, got {dim}")]
    DimensionTooLarge { dim: usize },
    #[error("fields are defined on different charts")]
    ChartMismatch,
    #[error("component count {got} does not match expected shape size {expected}")]
    BadShape { got: usize, expected: usize },
    #[error("inverse metric verification failed: max residual {residual:.3e}")]
    InverseVerification { residual: f64 },
    #[error("coordinate index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },
}

/// Vector field X^i ∂_i.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub chart: Chart,
    pub comps: Vec<Expr>,
}

impl VectorField {
    pub fn new(chart: Chart, comps: Vec<Expr>) -> Result<VectorField, GeomError> {
        if comps.len() != chart.dim() {
            return Err(GeomError::BadShape {
                got: comps.len(),
                expected: chart.dim(),
            });
        }
        Ok(VectorField { chart, comps })
    }

    /// The coordinate field ∂_i.
    pub fn coordinate(chart: Chart, i: usize) -> Result<VectorField, GeomError> {
        let dim = chart.dim();
        if i >= dim {
            return Err(GeomError::BadIndex { index: i, dim });
        }
        let comps = (0..dim)
            .map(|j| if i == j { Expr::one() } else { Expr::zero() })
            .collect();
        Ok(VectorField { chart, comps })
    }

    pub fn zero(chart: Chart) -> VectorField {
        let comps = vec![Expr::zero(); chart.dim()];
        VectorField { chart, comps }
    }

    pub fn eval_at(&self, point: &[f64]) -> Result<Vec<f64>, EvalError> {
        self.comps.iter().map(|e| e.eval(point)).collect()
    }
}

/// Componentwise Lie bracket [X,Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, GeomError> {
    if x.chart != y.chart {
        return Err(GeomError::ChartMismatch);
    }
    let dim = x.chart.dim();
    let comps = (0..dim)
        .map(|i| {
            let mut acc = Expr::zero();
            for j in 0..dim {
                acc = Expr::add(
                    acc,
                    Expr::sub(
                        Expr::mul(x.comps[j].clone(), y.comps[i].diff(j)),
                        Expr::mul(y.comps[j].clone(), x.comps[i].diff(j)),
                    ),
                );
            }
            acc.simplify()
        })
        .collect();
    Ok(VectorField {
        chart: x.chart.clone(),
        comps,
    })
}

/// General tensor field with `contravariant` upper and `covariant` lower
/// slots; components stored flat in row-major index order (upper slots
/// first).
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    pub chart: Chart,
    pub contravariant: usize,
    pub covariant: usize,
    comps: Vec<Expr>,
}

impl TensorField {
    pub fn new(
        chart: Chart,
        contravariant: usize,
        covariant: usize,
        comps: Vec<Expr>,
    ) -> Result<TensorField, GeomError> {
        let expected = chart.dim().pow((contravariant + covariant) as u32);
        if comps.len() != expected {
            return Err(GeomError::BadShape {
                got: comps.len(),
                expected,
            });
        }
        Ok(TensorField {
            chart,
            contravariant,
            covariant,
            comps,
        })
    }

    pub fn from_fn(
        chart: Chart,
        contravariant: usize,
        covariant: usize,
        mut f: impl FnMut(&[usize]) -> Expr,
    ) -> TensorField {
        let dim = chart.dim();
        let rank = contravariant + covariant;
        let total = dim.pow(rank as u32);
        let mut comps = Vec::with_capacity(total);
        let mut idx = vec![0usize; rank];
        for flat in 0..total {
            let mut rem = flat;
            for slot in (0..rank).rev() {
                idx[slot] = rem % dim;
                rem /= dim;
            }
            comps.push(f(&idx));
        }
        TensorField {
            chart,
            contravariant,
            covariant,
            comps,
        }
    }

    /// (1,1) field from a matrix `m[i][j]` = upper index i, lower index j.
    pub fn one_one(chart: Chart, m: Vec<Vec<Expr>>) -> Result<TensorField, GeomError> {
        let dim = chart.dim();
        if m.len() != dim || m.iter().any(|r| r.len() != dim) {
            return Err(GeomError::BadShape {
                got: m.iter().map(|r| r.len()).sum(),
                expected: dim * dim,
            });
        }
        Ok(TensorField::from_fn(chart, 1, 1, |idx| {
            m[idx[0]][idx[1]].clone()
        }))
    }

    /// (0,2) field from a matrix `m[i][j]` of lower components.
    pub fn zero_two(chart: Chart, m: Vec<Vec<Expr>>) -> Result<TensorField, GeomError> {
        let dim = chart.dim();
        if m.len() != dim || m.iter().any(|r| r.len() != dim) {
            return Err(GeomError::BadShape {
                got: m.iter().map(|r| r.len()).sum(),
                expected: dim * dim,
            });
        }
        Ok(TensorField::from_fn(chart, 0, 2, |idx| {
            m[idx[0]][idx[1]].clone()
        }))
    }

    /// (0,1) field (a 1-form) from its component list.
    pub fn one_form(chart: Chart, comps: Vec<Expr>) -> Result<TensorField, GeomError> {
        TensorField::new(chart, 0, 1, comps)
    }

    pub fn rank(&self) -> usize {
        self.contravariant + self.covariant
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        debug_assert_eq!(idx.len(), self.rank());
        let dim = self.chart.dim();
        let mut flat = 0usize;
        for &i in idx {
            debug_assert!(i < dim);
            flat = flat * dim + i;
        }
        &self.comps[flat]
    }

    pub fn comps(&self) -> &[Expr] {
        &self.comps
    }
}

/// Pseudo-Riemannian metric: symmetric, nondegenerate on the sample box.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricField {
    pub chart: Chart,
    g: Vec<Vec<Expr>>,
}

impl MetricField {
    pub fn new(chart: Chart, g: Vec<Vec<Expr>>) -> Result<MetricField, GeomError> {
        let dim = chart.dim();
        if g.len() != dim || g.iter().any(|r| r.len() != dim) {
            return Err(GeomError::BadShape {
                got: g.iter().map(|r| r.len()).sum(),
                expected: dim * dim,
            });
        }
        // symmetry: structural equality or sampled agreement
        for i in 0..dim {
            for j in (i + 1)..dim {
                if g[i][j] != g[j][i] {
                    let (ok, _) = equal_numeric(&g[i][j], &g[j][i], &chart, 1e-9)?;
                    if !ok {
                        return Err(GeomError::NotSymmetric { i, j });
                    }
                }
            }
        }
        let m = MetricField { chart, g };
        // nondegeneracy at every sample point
        for p in m.chart.sample_points() {
            let det = numeric_det(&m.eval_matrix(&p)?);
            if det.abs() <= DEGENERACY_TOL {
                return Err(GeomError::Degenerate { point: p, det });
            }
        }
        // the signature must not flip between sample points; a flip means the
        // metric degenerates somewhere in the box even if no sample hit it
        m.signature()?;
        Ok(m)
    }

    pub fn diagonal(chart: Chart, diag: Vec<Expr>) -> Result<MetricField, GeomError> {
        let dim = chart.dim();
        if diag.len() != dim {
            return Err(GeomError::BadShape {
                got: diag.len(),
                expected: dim,
            });
        }
        let g = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { diag[i].clone() } else { Expr::zero() })
                    .collect()
            })
            .collect();
        MetricField::new(chart, g)
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn component(&self, i: usize, j: usize) -> &Expr {
        &self.g[i][j]
    }

    pub fn components(&self) -> &[Vec<Expr>] {
        &self.g
    }

    pub fn eval_matrix(&self, point: &[f64]) -> Result<Vec<Vec<f64>>, EvalError> {
        self.g
            .iter()
            .map(|row| row.iter().map(|e| e.eval(point)).collect())
            .collect()
    }

    /// g(X,Y) as a symbolic scalar.
    pub fn apply(&self, x: &VectorField, y: &VectorField) -> Expr {
        let dim = self.dim();
        let mut acc = Expr::zero();
        for i in 0..dim {
            for j in 0..dim {
                acc = Expr::add(
                    acc,
                    Expr::mul(
                        self.g[i][j].clone(),
                        Expr::mul(x.comps[i].clone(), y.comps[j].clone()),
                    ),
                );
            }
        }
        acc.simplify()
    }

    /// Counts of positive and negative eigenvalues, checked to be constant
    /// across the sample box.
    pub fn signature(&self) -> Result<(usize, usize), GeomError> {
        let mut sig: Option<(usize, usize)> = None;
        for p in self.chart.sample_points() {
            let m = self.eval_matrix(&p)?;
            let dim = self.dim();
            let sym = DMatrix::from_fn(dim, dim, |i, j| 0.5 * (m[i][j] + m[j][i]));
            let eig = sym.symmetric_eigenvalues();
            let mut plus = 0;
            let mut minus = 0;
            for &l in eig.iter() {
                if l > DEGENERACY_TOL {
                    plus += 1;
                } else if l < -DEGENERACY_TOL {
                    minus += 1;
                } else {
                    return Err(GeomError::Degenerate {
                        point: p.clone(),
                        det: l,
                    });
                }
            }
            match sig {
                None => sig = Some((plus, minus)),
                Some(s) if s != (plus, minus) => return Err(GeomError::SignatureChange),
                _ => {}
            }
        }
        Ok(sig.expect("chart has at least one sample point"))
    }
}

/// Plain Gaussian elimination determinant with partial pivoting.
pub fn numeric_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}
