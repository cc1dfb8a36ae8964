//! Curvature stack on a chart: inverse metric, Christoffel symbols,
//! covariant derivatives, and the curvature tensors R, R̃, Ric, τ, L, P.
//!
//! Sign conventions (calibrated against the warped-product golden fixture):
//!
//! * curvature: R(X,Y)Z = ∇_[X,Y]Z − [∇_X,∇_Y]Z  (negative of the common
//!   textbook convention);
//! * Ricci: Ric(X,Y) = Σ g^{ab} g(R(∂_a,X)Y, ∂_b);
//! * scalar: τ = Σ g^{jk} Ric(∂_j,∂_k).

use crate::chart::Chart;
use crate::check::CheckReport;
use crate::expr::{rel_residual, Expr};
use crate::fields::{GeomError, MetricField, TensorField, VectorField};

/// Everything derived symbolically from one metric, computed once.
#[derive(Debug, Clone)]
pub struct CurvatureCache {
    chart: Chart,
    metric: MetricField,
    inverse: Vec<Vec<Expr>>,
    /// gamma[k][i][j] = Γ^k_{ij}
    gamma: Vec<Vec<Vec<Expr>>>,
    /// riemann[i][j][k][l] = (R(∂_i,∂_j)∂_k)^l in the flipped-commutator convention
    riemann: Vec<Vec<Vec<Vec<Expr>>>>,
    /// ricci[j][k] = Ric(∂_j,∂_k)
    ricci: Vec<Vec<Expr>>,
    tau: Expr,
}

/// Symbolic determinant by cofactor expansion along the first row.
fn det_expr(m: &[Vec<Expr>]) -> Expr {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Expr::zero();
    for col in 0..n {
        let minor: Vec<Vec<Expr>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != col)
                    .map(|c| m[r][c].clone())
                    .collect()
            })
            .collect();
        let term = Expr::mul(m[0][col].clone(), det_expr(&minor));
        acc = if col % 2 == 0 {
            Expr::add(acc, term)
        } else {
            Expr::sub(acc, term)
        };
    }
    acc
}

/// Symbolic inverse via adjugate over determinant; dimension <= 4 only.
pub fn symbolic_inverse(g: &MetricField) -> Result<Vec<Vec<Expr>>, GeomError> {
    let dim = g.dim();
    if dim > 4 {
        return Err(GeomError::DimensionTooLarge { dim });
    }
    let det = det_expr(g.components()).simplify();
    let mut inv = vec![vec![Expr::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            // adj[i][j] = cofactor C_{ji}
            let minor: Vec<Vec<Expr>> = (0..dim)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..dim)
                        .filter(|&c| c != i)
                        .map(|c| g.component(r, c).clone())
                        .collect()
                })
                .collect();
            let mut cof = if dim == 1 {
                Expr::one()
            } else {
                det_expr(&minor)
            };
            if (i + j) % 2 == 1 {
                cof = Expr::neg(cof);
            }
            inv[i][j] = Expr::div(cof, det.clone()).simplify();
        }
    }
    // verify g^{ik} g_{kj} = delta numerically
    let mut max = 0.0f64;
    for p in g.chart.sample_points() {
        let gm = g.eval_matrix(&p)?;
        for i in 0..dim {
            for j in 0..dim {
                let mut s = 0.0;
                for k in 0..dim {
                    s += inv[i][k].eval(&p)? * gm[k][j];
                }
                let delta = if i == j { 1.0 } else { 0.0 };
                max = max.max(rel_residual(s, delta));
            }
        }
    }
    if max > 1e-9 {
        return Err(GeomError::InverseVerification { residual: max });
    }
    Ok(inv)
}

impl CurvatureCache {
    pub fn new(metric: MetricField) -> Result<CurvatureCache, GeomError> {
        let chart = metric.chart.clone();
        let dim = chart.dim();
        let inverse = symbolic_inverse(&metric)?;
        let g = metric.components();

        // Γ^k_{ij} = 1/2 g^{kl} (∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij})
        let half = Expr::rational(1, 2);
        let mut gamma = vec![vec![vec![Expr::zero(); dim]; dim]; dim];
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..=i {
                    let mut acc = Expr::zero();
                    for l in 0..dim {
                        let bracket = Expr::sub(
                            Expr::add(g[j][l].diff(i), g[i][l].diff(j)),
                            g[i][j].diff(l),
                        );
                        acc = Expr::add(acc, Expr::mul(inverse[k][l].clone(), bracket));
                    }
                    let v = Expr::mul(half.clone(), acc).simplify();
                    gamma[k][i][j] = v.clone();
                    gamma[k][j][i] = v;
                }
            }
        }

        // flipped sign: R(∂_i,∂_j)∂_k = −(∂_i Γ^l_{jk} − ∂_j Γ^l_{ik}
        //                               + Γ^l_{im}Γ^m_{jk} − Γ^l_{jm}Γ^m_{ik}) ∂_l
        let mut riemann = vec![vec![vec![vec![Expr::zero(); dim]; dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        let mut std = Expr::sub(gamma[l][j][k].diff(i), gamma[l][i][k].diff(j));
                        for m in 0..dim {
                            std = Expr::add(
                                std,
                                Expr::sub(
                                    Expr::mul(gamma[l][i][m].clone(), gamma[m][j][k].clone()),
                                    Expr::mul(gamma[l][j][m].clone(), gamma[m][i][k].clone()),
                                ),
                            );
                        }
                        riemann[i][j][k][l] = Expr::neg(std).simplify();
                    }
                }
            }
        }

        // Ric(∂_j,∂_k) = Σ_{a,b,l} g^{ab} (R(∂_a,∂_j)∂_k)^l g_{lb}
        let mut ricci = vec![vec![Expr::zero(); dim]; dim];
        for j in 0..dim {
            for k in 0..dim {
                let mut acc = Expr::zero();
                for a in 0..dim {
                    for b in 0..dim {
                        for l in 0..dim {
                            acc = Expr::add(
                                acc,
                                Expr::mul(
                                    inverse[a][b].clone(),
                                    Expr::mul(riemann[a][j][k][l].clone(), g[l][b].clone()),
                                ),
                            );
                        }
                    }
                }
                ricci[j][k] = acc.simplify();
            }
        }

        // τ = Σ g^{jk} Ric(∂_j,∂_k)
        let mut tau = Expr::zero();
        for j in 0..dim {
            for k in 0..dim {
                tau = Expr::add(
                    tau,
                    Expr::mul(inverse[j][k].clone(), ricci[j][k].clone()),
                );
            }
        }
        let tau = tau.simplify();

        Ok(CurvatureCache {
            chart,
            metric,
            inverse,
            gamma,
            riemann,
            ricci,
            tau,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn inverse_component(&self, i: usize, j: usize) -> &Expr {
        &self.inverse[i][j]
    }

    /// Inverse metric as a (2,0) tensor field.
    pub fn inverse_metric(&self) -> TensorField {
        TensorField::from_fn(self.chart.clone(), 2, 0, |idx| {
            self.inverse[idx[0]][idx[1]].clone()
        })
    }

    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &Expr {
        &self.gamma[k][i][j]
    }

    pub fn riemann_component(&self, i: usize, j: usize, k: usize, l: usize) -> &Expr {
        &self.riemann[i][j][k][l]
    }

    pub fn ricci_component(&self, j: usize, k: usize) -> &Expr {
        &self.ricci[j][k]
    }

    pub fn scalar_curvature(&self) -> &Expr {
        &self.tau
    }

    fn check_chart(&self, v: &VectorField) -> Result<(), GeomError> {
        if v.chart != self.chart {
            return Err(GeomError::ChartMismatch);
        }
        Ok(())
    }

    /// (∇_X Y)^k = X^i (∂_i Y^k + Γ^k_{ij} Y^j)
    pub fn cov_deriv_vector(
        &self,
        x: &VectorField,
        y: &VectorField,
    ) -> Result<VectorField, GeomError> {
        self.check_chart(x)?;
        self.check_chart(y)?;
        let dim = self.dim();
        let comps = (0..dim)
            .map(|k| {
                let mut acc = Expr::zero();
                for i in 0..dim {
                    let mut inner = y.comps[k].diff(i);
                    for j in 0..dim {
                        inner = Expr::add(
                            inner,
                            Expr::mul(self.gamma[k][i][j].clone(), y.comps[j].clone()),
                        );
                    }
                    acc = Expr::add(acc, Expr::mul(x.comps[i].clone(), inner));
                }
                acc.simplify()
            })
            .collect();
        VectorField::new(self.chart.clone(), comps)
    }

    /// Components of ∇h for a (0,2) field, without direction contraction:
    /// result[i][j][k] = (∇_{∂_i} h)(∂_j, ∂_k).
    pub fn cov_deriv02_components(&self, h: &TensorField) -> Result<Vec<Vec<Vec<Expr>>>, GeomError> {
        if h.chart != self.chart || h.contravariant != 0 || h.covariant != 2 {
            return Err(GeomError::ChartMismatch);
        }
        let dim = self.dim();
        let mut out = vec![vec![vec![Expr::zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut acc = h.get(&[j, k]).diff(i);
                    for m in 0..dim {
                        acc = Expr::sub(
                            acc,
                            Expr::add(
                                Expr::mul(self.gamma[m][i][j].clone(), h.get(&[m, k]).clone()),
                                Expr::mul(self.gamma[m][i][k].clone(), h.get(&[j, m]).clone()),
                            ),
                        );
                    }
                    out[i][j][k] = acc.simplify();
                }
            }
        }
        Ok(out)
    }

    /// (∇_X T)(Y,Z) for a (0,2) field, realized in components.
    pub fn cov_deriv_tensor(
        &self,
        x: &VectorField,
        h: &TensorField,
    ) -> Result<TensorField, GeomError> {
        self.check_chart(x)?;
        let nabla = self.cov_deriv02_components(h)?;
        let dim = self.dim();
        Ok(TensorField::from_fn(self.chart.clone(), 0, 2, |idx| {
            let (j, k) = (idx[0], idx[1]);
            let mut acc = Expr::zero();
            for i in 0..dim {
                acc = Expr::add(acc, Expr::mul(x.comps[i].clone(), nabla[i][j][k].clone()));
            }
            acc.simplify()
        }))
    }

    /// R(X,Y)Z by tensorial contraction of the cached components.
    pub fn riemann(
        &self,
        x: &VectorField,
        y: &VectorField,
        z: &VectorField,
    ) -> Result<VectorField, GeomError> {
        self.check_chart(x)?;
        self.check_chart(y)?;
        self.check_chart(z)?;
        let dim = self.dim();
        let comps = (0..dim)
            .map(|l| {
                let mut acc = Expr::zero();
                for i in 0..dim {
                    for j in 0..dim {
                        for k in 0..dim {
                            acc = Expr::add(
                                acc,
                                Expr::mul(
                                    self.riemann[i][j][k][l].clone(),
                                    Expr::mul(
                                        x.comps[i].clone(),
                                        Expr::mul(y.comps[j].clone(), z.comps[k].clone()),
                                    ),
                                ),
                            );
                        }
                    }
                }
                acc.simplify()
            })
            .collect();
        VectorField::new(self.chart.clone(), comps)
    }

    /// R̃(X,Y,Z,W) = g(R(X,Y)Z, W).
    pub fn riemann_lowered(
        &self,
        x: &VectorField,
        y: &VectorField,
        z: &VectorField,
        w: &VectorField,
    ) -> Result<Expr, GeomError> {
        let r = self.riemann(x, y, z)?;
        Ok(self.metric.apply(&r, w))
    }

    /// Ric(X,Y) by contraction of the cached components.
    pub fn ricci(&self, x: &VectorField, y: &VectorField) -> Result<Expr, GeomError> {
        self.check_chart(x)?;
        self.check_chart(y)?;
        let dim = self.dim();
        let mut acc = Expr::zero();
        for j in 0..dim {
            for k in 0..dim {
                acc = Expr::add(
                    acc,
                    Expr::mul(
                        self.ricci[j][k].clone(),
                        Expr::mul(x.comps[j].clone(), y.comps[k].clone()),
                    ),
                );
            }
        }
        Ok(acc.simplify())
    }

    fn odd_n(&self) -> Result<usize, GeomError> {
        let dim = self.dim();
        if dim % 2 == 0 {
            return Err(GeomError::EvenDimension { dim });
        }
        Ok((dim - 1) / 2)
    }

    /// Concircular tensor L(X,Y)Z = R(X,Y)Z − τ/(2n(2n+1)) (g(Y,Z)X − g(X,Z)Y).
    pub fn concircular(
        &self,
        x: &VectorField,
        y: &VectorField,
        z: &VectorField,
    ) -> Result<VectorField, GeomError> {
        let n = self.odd_n()?;
        let r = self.riemann(x, y, z)?;
        let coeff = Expr::div(
            self.tau.clone(),
            Expr::integer((2 * n * (2 * n + 1)) as i64),
        );
        let gyz = self.metric.apply(y, z);
        let gxz = self.metric.apply(x, z);
        let comps = (0..self.dim())
            .map(|l| {
                Expr::sub(
                    r.comps[l].clone(),
                    Expr::mul(
                        coeff.clone(),
                        Expr::sub(
                            Expr::mul(gyz.clone(), x.comps[l].clone()),
                            Expr::mul(gxz.clone(), y.comps[l].clone()),
                        ),
                    ),
                )
                .simplify()
            })
            .collect();
        VectorField::new(self.chart.clone(), comps)
    }

    /// Projective tensor P(X,Y)Z = R(X,Y)Z − 1/(2n) (Ric(Y,Z)X − Ric(X,Z)Y).
    pub fn projective(
        &self,
        x: &VectorField,
        y: &VectorField,
        z: &VectorField,
    ) -> Result<VectorField, GeomError> {
        let n = self.odd_n()?;
        let r = self.riemann(x, y, z)?;
        let coeff = Expr::rational(1, (2 * n) as i64);
        let ric_yz = self.ricci(y, z)?;
        let ric_xz = self.ricci(x, z)?;
        let comps = (0..self.dim())
            .map(|l| {
                Expr::sub(
                    r.comps[l].clone(),
                    Expr::mul(
                        coeff.clone(),
                        Expr::sub(
                            Expr::mul(ric_yz.clone(), x.comps[l].clone()),
                            Expr::mul(ric_xz.clone(), y.comps[l].clone()),
                        ),
                    ),
                )
                .simplify()
            })
            .collect();
        VectorField::new(self.chart.clone(), comps)
    }

    /// Residual of the dimension-3 curvature identity
    /// R̃(X,Y,Z,W) = g(X,W)Ric(Y,Z) − g(X,Z)Ric(Y,W) + g(Y,Z)Ric(X,W)
    ///             − g(Y,W)Ric(X,Z) − τ/2 {g(Y,Z)g(X,W) − g(X,Z)g(Y,W)}
    /// over all coordinate 4-tuples at the sample points.
    pub fn three_d_identity_residual(&self, tol: f64) -> Result<CheckReport, GeomError> {
        let dim = self.dim();
        if dim != 3 {
            return Err(GeomError::DimensionNot3 { dim });
        }
        let points = self.chart.sample_points();
        let mut residuals = Vec::with_capacity(points.len());
        for p in &points {
            let g = self.metric.eval_matrix(p)?;
            let mut ric = [[0.0; 3]; 3];
            for j in 0..3 {
                for k in 0..3 {
                    ric[j][k] = self.ricci[j][k].eval(p)?;
                }
            }
            let tau = self.tau.eval(p)?;
            let mut rlow = [[[[0.0; 3]; 3]; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let mut r = [0.0; 3];
                        for l in 0..3 {
                            r[l] = self.riemann[i][j][k][l].eval(p)?;
                        }
                        for w in 0..3 {
                            rlow[i][j][k][w] = (0..3).map(|l| r[l] * g[l][w]).sum();
                        }
                    }
                }
            }
            let mut max = 0.0f64;
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        for w in 0..3 {
                            let rhs = g[i][w] * ric[j][k] - g[i][k] * ric[j][w]
                                + g[j][k] * ric[i][w]
                                - g[j][w] * ric[i][k]
                                - tau / 2.0 * (g[j][k] * g[i][w] - g[i][k] * g[j][w]);
                            max = max.max(rel_residual(rlow[i][j][k][w], rhs));
                        }
                    }
                }
            }
            residuals.push(max);
        }
        Ok(CheckReport::from_residuals(
            "three_d_curvature_identity",
            tol,
            residuals.iter().zip(&points).map(|(&r, p)| (r, p.as_slice())),
        ))
    }
}
