//! Almost paracontact metric structures (φ, ξ, η, g): axiom validation,
//! Nijenhuis torsion and normality, the structure functions α and β, and the
//! (α, β) classification.

use crate::chart::Chart;
use crate::check::CheckReport;
use crate::curvature::CurvatureCache;
use crate::expr::{rel_residual, Expr};
use crate::fields::{lie_bracket, GeomError, MetricField, TensorField, VectorField};
use serde::Serialize;
use std::fmt;

pub const DEFAULT_TOL: f64 = 1e-9;
const RANK_PIVOT_TOL: f64 = 1e-10;

/// The quadruple (φ, ξ, η, g) on a chart. Nothing is assumed: every axiom is
/// a numeric check via [`ParacontactStructure::check_axioms`].
#[derive(Debug, Clone)]
pub struct ParacontactStructure {
    pub chart: Chart,
    /// (1,1) field; component [i][j] is the i-th component of φ∂_j.
    pub phi: TensorField,
    pub xi: VectorField,
    /// (0,1) field; component [i] is η(∂_i).
    pub eta: TensorField,
    pub g: MetricField,
}

impl ParacontactStructure {
    pub fn new(
        phi: TensorField,
        xi: VectorField,
        eta: TensorField,
        g: MetricField,
    ) -> Result<ParacontactStructure, GeomError> {
        let chart = g.chart.clone();
        if phi.chart != chart || xi.chart != chart || eta.chart != chart {
            return Err(GeomError::ChartMismatch);
        }
        if phi.contravariant != 1 || phi.covariant != 1 {
            return Err(GeomError::BadShape {
                got: phi.rank(),
                expected: 2,
            });
        }
        if eta.contravariant != 0 || eta.covariant != 1 {
            return Err(GeomError::BadShape {
                got: eta.rank(),
                expected: 1,
            });
        }
        Ok(ParacontactStructure {
            chart,
            phi,
            xi,
            eta,
            g,
        })
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn phi_component(&self, i: usize, j: usize) -> &Expr {
        self.phi.get(&[i, j])
    }

    pub fn eta_component(&self, i: usize) -> &Expr {
        self.eta.get(&[i])
    }

    /// φX as a vector field.
    pub fn phi_apply(&self, x: &VectorField) -> VectorField {
        let dim = self.dim();
        let comps = (0..dim)
            .map(|i| {
                let mut acc = Expr::zero();
                for j in 0..dim {
                    acc = Expr::add(
                        acc,
                        Expr::mul(self.phi_component(i, j).clone(), x.comps[j].clone()),
                    );
                }
                acc.simplify()
            })
            .collect();
        VectorField {
            chart: self.chart.clone(),
            comps,
        }
    }

    /// η(X) as a scalar expression.
    pub fn eta_apply(&self, x: &VectorField) -> Expr {
        let dim = self.dim();
        let mut acc = Expr::zero();
        for i in 0..dim {
            acc = Expr::add(
                acc,
                Expr::mul(self.eta_component(i).clone(), x.comps[i].clone()),
            );
        }
        acc.simplify()
    }

    /// One report per structure axiom, evaluated at the chart sample points.
    pub fn check_axioms(&self) -> Result<Vec<CheckReport>, GeomError> {
        let dim = self.dim();
        if dim % 2 == 0 {
            return Err(GeomError::EvenDimension { dim });
        }
        let n2 = dim - 1; // rank(φ) must be 2n
        let points = self.chart.sample_points();
        let npts = points.len();

        let mut phi_sq = vec![0.0f64; npts];
        let mut eta_xi = vec![0.0f64; npts];
        let mut phi_xi = vec![0.0f64; npts];
        let mut eta_phi = vec![0.0f64; npts];
        let mut rank_dev = vec![0.0f64; npts];
        let mut compat = vec![0.0f64; npts];
        let mut duality = vec![0.0f64; npts];
        let mut skew = vec![0.0f64; npts];

        for (pi, p) in points.iter().enumerate() {
            let mut phi = vec![vec![0.0; dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    phi[i][j] = self.phi_component(i, j).eval(p)?;
                }
            }
            let xi = self.xi.eval_at(p)?;
            let mut eta = vec![0.0; dim];
            for i in 0..dim {
                eta[i] = self.eta_component(i).eval(p)?;
            }
            let g = self.g.eval_matrix(p)?;

            // φ² = I − η⊗ξ
            for i in 0..dim {
                for j in 0..dim {
                    let sq: f64 = (0..dim).map(|m| phi[i][m] * phi[m][j]).sum();
                    let delta = if i == j { 1.0 } else { 0.0 };
                    phi_sq[pi] = phi_sq[pi].max(rel_residual(sq, delta - xi[i] * eta[j]));
                }
            }
            // η(ξ) = 1
            let e: f64 = (0..dim).map(|i| eta[i] * xi[i]).sum();
            eta_xi[pi] = rel_residual(e, 1.0);
            // φξ = 0 and η∘φ = 0
            for i in 0..dim {
                let v: f64 = (0..dim).map(|j| phi[i][j] * xi[j]).sum();
                phi_xi[pi] = phi_xi[pi].max(rel_residual(v, 0.0));
                let w: f64 = (0..dim).map(|m| eta[m] * phi[m][i]).sum();
                eta_phi[pi] = eta_phi[pi].max(rel_residual(w, 0.0));
            }
            // rank(φ) = 2n via Gaussian elimination
            let r = matrix_rank(&phi, RANK_PIVOT_TOL);
            rank_dev[pi] = (r as f64 - n2 as f64).abs();
            // g(φX,φY) = −g(X,Y) + η(X)η(Y) on coordinate pairs
            for i in 0..dim {
                for j in 0..dim {
                    let lhs: f64 = (0..dim)
                        .flat_map(|a| (0..dim).map(move |b| (a, b)))
                        .map(|(a, b)| g[a][b] * phi[a][i] * phi[b][j])
                        .sum();
                    compat[pi] = compat[pi].max(rel_residual(lhs, -g[i][j] + eta[i] * eta[j]));
                }
            }
            // g(X,ξ) = η(X)
            for i in 0..dim {
                let lhs: f64 = (0..dim).map(|j| g[i][j] * xi[j]).sum();
                duality[pi] = duality[pi].max(rel_residual(lhs, eta[i]));
            }
            // g(φX,Y) = −g(X,φY)
            for i in 0..dim {
                for j in 0..dim {
                    let lhs: f64 = (0..dim).map(|a| g[a][j] * phi[a][i]).sum();
                    let rhs: f64 = -(0..dim).map(|a| g[i][a] * phi[a][j]).sum::<f64>();
                    skew[pi] = skew[pi].max(rel_residual(lhs, rhs));
                }
            }
        }

        let mk = |label: &str, res: &[f64]| {
            CheckReport::from_residuals(
                label,
                DEFAULT_TOL,
                res.iter().zip(&points).map(|(&r, p)| (r, p.as_slice())),
            )
        };
        Ok(vec![
            mk("phi_squared_identity", &phi_sq),
            mk("eta_xi_is_one", &eta_xi),
            mk("phi_xi_is_zero", &phi_xi),
            mk("eta_phi_is_zero", &eta_phi),
            mk("rank_phi", &rank_dev),
            mk("metric_compatibility", &compat),
            mk("metric_duality", &duality),
            mk("phi_skew_symmetry", &skew),
        ])
    }

    /// dη(X,Y) = ½{X(η(Y)) − Y(η(X)) − η([X,Y])} on coordinate fields.
    pub fn d_eta(&self, i: usize, j: usize) -> Expr {
        // coordinate brackets vanish, leaving the derivative terms
        Expr::mul(
            Expr::rational(1, 2),
            Expr::sub(
                self.eta_component(j).diff(i),
                self.eta_component(i).diff(j),
            ),
        )
        .simplify()
    }

    /// N_φ(∂_i,∂_j) = [φ,φ](∂_i,∂_j) − 2 dη(∂_i,∂_j) ξ for each pair i < j,
    /// where [φ,φ](X,Y) = φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY].
    pub fn nijenhuis(&self) -> Result<Vec<((usize, usize), VectorField)>, GeomError> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let di = VectorField::coordinate(self.chart.clone(), i)?;
                let dj = VectorField::coordinate(self.chart.clone(), j)?;
                let phi_i = self.phi_apply(&di);
                let phi_j = self.phi_apply(&dj);

                // [∂_i,∂_j] = 0, so the φ²[X,Y] term drops
                let b1 = lie_bracket(&phi_i, &phi_j)?;
                let b2 = self.phi_apply(&lie_bracket(&phi_i, &dj)?);
                let b3 = self.phi_apply(&lie_bracket(&di, &phi_j)?);
                let two_deta = Expr::mul(Expr::integer(2), self.d_eta(i, j));

                let comps = (0..dim)
                    .map(|k| {
                        Expr::sub(
                            Expr::sub(
                                Expr::sub(b1.comps[k].clone(), b2.comps[k].clone()),
                                b3.comps[k].clone(),
                            ),
                            Expr::mul(two_deta.clone(), self.xi.comps[k].clone()),
                        )
                        .simplify()
                    })
                    .collect();
                out.push((
                    (i, j),
                    VectorField {
                        chart: self.chart.clone(),
                        comps,
                    },
                ));
            }
        }
        Ok(out)
    }

    /// Max residual of N_φ over coordinate pairs; normal iff it passes.
    pub fn normality_residual(&self, tol: f64) -> Result<CheckReport, GeomError> {
        let n = self.nijenhuis()?;
        let points = self.chart.sample_points();
        let mut residuals = Vec::with_capacity(points.len());
        for p in &points {
            let mut max = 0.0f64;
            for (_, field) in &n {
                for comp in &field.comps {
                    max = max.max(rel_residual(comp.eval(p)?, 0.0));
                }
            }
            residuals.push(max);
        }
        Ok(CheckReport::from_residuals(
            "nijenhuis_normality",
            tol,
            residuals.iter().zip(&points).map(|(&r, p)| (r, p.as_slice())),
        ))
    }

    /// Informational only: the paracontact-metric condition dη(X,Y) = g(X,φY).
    pub fn paracontact_metric_residual(&self, tol: f64) -> Result<CheckReport, GeomError> {
        let dim = self.dim();
        let points = self.chart.sample_points();
        let mut residuals = Vec::with_capacity(points.len());
        for p in &points {
            let g = self.g.eval_matrix(p)?;
            let mut max = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    let deta = if i < j {
                        self.d_eta(i, j).eval(p)?
                    } else if i > j {
                        -self.d_eta(j, i).eval(p)?
                    } else {
                        0.0
                    };
                    let mut rhs = 0.0;
                    for a in 0..dim {
                        rhs += g[i][a] * self.phi_component(a, j).eval(p)?;
                    }
                    max = max.max(rel_residual(deta, rhs));
                }
            }
            residuals.push(max);
        }
        Ok(CheckReport::from_residuals(
            "paracontact_metric_condition",
            tol,
            residuals.iter().zip(&points).map(|(&r, p)| (r, p.as_slice())),
        ))
    }

    /// ∇_{∂_i} ξ as symbolic mixed components A^k_i.
    pub fn nabla_xi(&self, cache: &CurvatureCache) -> Vec<Vec<Expr>> {
        let dim = self.dim();
        let mut a = vec![vec![Expr::zero(); dim]; dim];
        for k in 0..dim {
            for i in 0..dim {
                let mut acc = self.xi.comps[k].diff(i);
                for j in 0..dim {
                    acc = Expr::add(
                        acc,
                        Expr::mul(
                            cache.christoffel(k, i, j).clone(),
                            self.xi.comps[j].clone(),
                        ),
                    );
                }
                a[k][i] = acc.simplify();
            }
        }
        a
    }
}

/// Rank by Gaussian elimination with partial pivoting.
fn matrix_rank(m: &[Vec<f64>], pivot_tol: f64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .filter(|&i| a[i][col].abs() > pivot_tol);
        let Some(pivot) = pivot else { continue };
        a.swap(row, pivot);
        for r in (row + 1)..rows {
            let f = a[r][col] / a[row][col];
            for c in col..cols {
                a[r][c] -= f * a[row][c];
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// The structure functions α, β with sampled constancy flags and the
/// residual of reconstructing ∇_Xξ = α(X − η(X)ξ) + βφX from them.
#[derive(Debug, Clone)]
pub struct StructureFunctions {
    pub alpha: Expr,
    pub beta: Expr,
    pub alpha_value: f64,
    pub beta_value: f64,
    pub alpha_is_constant: bool,
    pub beta_is_constant: bool,
    pub constancy_tol: f64,
    pub reconstruction: CheckReport,
}

fn sampled_stats(e: &Expr, points: &[Vec<f64>]) -> Result<(f64, f64), GeomError> {
    let vals: Vec<f64> = points
        .iter()
        .map(|p| e.eval(p))
        .collect::<Result<_, _>>()?;
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64;
    Ok((mean, var.sqrt()))
}

/// α = ½ trace{X → ∇_Xξ}, β = ½ trace{X → φ∇_Xξ}, traces taken on the mixed
/// component matrices. Requires a 3-dimensional chart.
pub fn alpha_beta(
    s: &ParacontactStructure,
    cache: &CurvatureCache,
) -> Result<StructureFunctions, GeomError> {
    let dim = s.dim();
    if dim != 3 {
        return Err(GeomError::DimensionNot3 { dim });
    }
    let a = s.nabla_xi(cache);

    let half = Expr::rational(1, 2);
    let mut tr_a = Expr::zero();
    let mut tr_phi_a = Expr::zero();
    for k in 0..dim {
        tr_a = Expr::add(tr_a, a[k][k].clone());
        for m in 0..dim {
            tr_phi_a = Expr::add(
                tr_phi_a,
                Expr::mul(s.phi_component(k, m).clone(), a[m][k].clone()),
            );
        }
    }
    let alpha = Expr::mul(half.clone(), tr_a).simplify();
    let beta = Expr::mul(half, tr_phi_a).simplify();

    let points = s.chart.sample_points();
    let (alpha_mean, alpha_std) = sampled_stats(&alpha, &points)?;
    let (beta_mean, beta_std) = sampled_stats(&beta, &points)?;
    let tol = DEFAULT_TOL;

    // reconstruction: A^k_i − α(δ^k_i − η_i ξ^k) − β φ^k_i
    let mut residuals = Vec::with_capacity(points.len());
    for p in &points {
        let av = alpha.eval(p)?;
        let bv = beta.eval(p)?;
        let xi = s.xi.eval_at(p)?;
        let mut max = 0.0f64;
        for k in 0..dim {
            for i in 0..dim {
                let delta = if k == i { 1.0 } else { 0.0 };
                let eta_i = s.eta_component(i).eval(p)?;
                let phi_ki = s.phi_component(k, i).eval(p)?;
                let expected = av * (delta - eta_i * xi[k]) + bv * phi_ki;
                max = max.max(rel_residual(a[k][i].eval(p)?, expected));
            }
        }
        residuals.push(max);
    }
    let reconstruction = CheckReport::from_residuals(
        "nabla_xi_reconstruction",
        DEFAULT_TOL,
        residuals.iter().zip(&points).map(|(&r, p)| (r, p.as_slice())),
    );

    Ok(StructureFunctions {
        alpha,
        beta,
        alpha_value: alpha_mean,
        beta_value: beta_mean,
        alpha_is_constant: alpha_std <= tol * 1f64.max(alpha_mean.abs()),
        beta_is_constant: beta_std <= tol * 1f64.max(beta_mean.abs()),
        constancy_tol: tol,
        reconstruction,
    })
}

/// The (α, β) branches of the classification of normal almost paracontact
/// metric 3-manifolds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Classification {
    Paracosymplectic,
    QuasiParaSasakian,
    BetaParaSasakian,
    ParaSasakian,
    AlphaParaKenmotsu,
    Unclassified { alpha: f64, beta: f64 },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Paracosymplectic => write!(f, "paracosymplectic"),
            Classification::QuasiParaSasakian => write!(f, "quasi-para-Sasakian"),
            Classification::BetaParaSasakian => write!(f, "beta-para-Sasakian"),
            Classification::ParaSasakian => write!(f, "para-Sasakian"),
            Classification::AlphaParaKenmotsu => write!(f, "alpha-para-Kenmotsu"),
            Classification::Unclassified { alpha, beta } => {
                write!(f, "unclassified(alpha={alpha:.6}, beta={beta:.6})")
            }
        }
    }
}

pub fn classify(f: &StructureFunctions) -> Classification {
    let tol = f.constancy_tol;
    let alpha_zero = f.alpha_is_constant && f.alpha_value.abs() <= tol;
    let beta_zero = f.beta_is_constant && f.beta_value.abs() <= tol;
    if alpha_zero && beta_zero {
        return Classification::Paracosymplectic;
    }
    if alpha_zero {
        if f.beta_is_constant {
            if (f.beta_value + 1.0).abs() <= tol {
                return Classification::ParaSasakian;
            }
            return Classification::BetaParaSasakian;
        }
        return Classification::QuasiParaSasakian;
    }
    if beta_zero && f.alpha_is_constant {
        return Classification::AlphaParaKenmotsu;
    }
    Classification::Unclassified {
        alpha: f.alpha_value,
        beta: f.beta_value,
    }
}

/// Residual of ξβ + 2αβ = 0; a nonzero value flags a pair (α, β) that cannot
/// come from a normal structure.
pub fn ksi_beta_identity(
    s: &ParacontactStructure,
    f: &StructureFunctions,
    tol: f64,
) -> Result<CheckReport, GeomError> {
    let dim = s.dim();
    let mut xi_beta = Expr::zero();
    for i in 0..dim {
        xi_beta = Expr::add(
            xi_beta,
            Expr::mul(s.xi.comps[i].clone(), f.beta.diff(i)),
        );
    }
    let two_alpha_beta = Expr::mul(
        Expr::integer(2),
        Expr::mul(f.alpha.clone(), f.beta.clone()),
    );
    let points = s.chart.sample_points();
    let mut residuals = Vec::with_capacity(points.len());
    for p in &points {
        let a = xi_beta.eval(p)?;
        let b = two_alpha_beta.eval(p)?;
        residuals.push((a + b).abs() / 1f64.max(a.abs()).max(b.abs()));
    }
    Ok(CheckReport::from_residuals(
        "xi_beta_plus_two_alpha_beta",
        tol,
        residuals.iter().zip(&points).map(|(&r, p)| (r, p.as_slice())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::testutil::{chart3, flat_metric, standard_structure, warped_metric};

    #[test]
    fn golden_structure_passes_all_axioms() {
        let c = chart3();
        let s = standard_structure(&c, warped_metric(&c, 2));
        let reports = s.check_axioms().unwrap();
        for r in &reports {
            assert!(r.passed, "{} failed with residual {}", r.label, r.max_residual);
        }
    }

    #[test]
    fn euclidean_metric_breaks_compatibility() {
        let c = chart3();
        let id = MetricField::diagonal(
            c.clone(),
            vec![Expr::one(), Expr::one(), Expr::one()],
        )
        .unwrap();
        let s = standard_structure(&c, id);
        let reports = s.check_axioms().unwrap();
        let compat = reports
            .iter()
            .find(|r| r.label == "metric_compatibility")
            .unwrap();
        assert!(!compat.passed);
        // g(φe1,φe1) = 1 while −g(e1,e1) + η(e1)² = −1
        assert!(compat.max_residual > 0.5);
    }

    #[test]
    fn zero_phi_fails_rank_check() {
        let c = chart3();
        let phi = TensorField::one_one(
            c.clone(),
            vec![vec![Expr::zero(); 3], vec![Expr::zero(); 3], vec![Expr::zero(); 3]],
        )
        .unwrap();
        let xi = VectorField::coordinate(c.clone(), 2).unwrap();
        let eta = TensorField::one_form(
            c.clone(),
            vec![Expr::zero(), Expr::zero(), Expr::one()],
        )
        .unwrap();
        let s = ParacontactStructure::new(phi, xi, eta, flat_metric(&c)).unwrap();
        let reports = s.check_axioms().unwrap();
        let rank = reports.iter().find(|r| r.label == "rank_phi").unwrap();
        assert!(!rank.passed);
        assert_eq!(rank.max_residual, 2.0); // rank 0 instead of 2
    }

    #[test]
    fn golden_structure_is_normal() {
        let c = chart3();
        let s = standard_structure(&c, warped_metric(&c, 2));
        let r = s.normality_residual(DEFAULT_TOL).unwrap();
        assert!(r.passed, "residual {}", r.max_residual);
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn flat_structure_is_normal() {
        // constant φ, closed η, vanishing coordinate brackets
        let c = chart3();
        let s = standard_structure(&c, flat_metric(&c));
        let r = s.normality_residual(DEFAULT_TOL).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn broken_phi_has_nonzero_nijenhuis() {
        let c = chart3();
        let phi = TensorField::one_one(
            c.clone(),
            vec![
                vec![Expr::zero(), Expr::one(), Expr::zero()],
                vec![parse("exp(x)", &c).unwrap(), Expr::zero(), Expr::zero()],
                vec![Expr::zero(), Expr::zero(), Expr::zero()],
            ],
        )
        .unwrap();
        let xi = VectorField::coordinate(c.clone(), 2).unwrap();
        let eta = TensorField::one_form(
            c.clone(),
            vec![Expr::zero(), Expr::zero(), Expr::one()],
        )
        .unwrap();
        let s = ParacontactStructure::new(phi, xi, eta, flat_metric(&c)).unwrap();
        let r = s.normality_residual(DEFAULT_TOL).unwrap();
        assert!(!r.passed);
        assert!(r.max_residual > 1e-3);
    }

    #[test]
    fn golden_alpha_beta() {
        let c = chart3();
        let metric = warped_metric(&c, 2);
        let s = standard_structure(&c, metric.clone());
        let cache = CurvatureCache::new(metric).unwrap();
        let f = alpha_beta(&s, &cache).unwrap();
        assert!((f.alpha_value - 1.0).abs() < 1e-12);
        assert!(f.beta_value.abs() < 1e-12);
        assert!(f.alpha_is_constant && f.beta_is_constant);
        assert!(f.reconstruction.passed);
        assert_eq!(f.reconstruction.max_residual, 0.0);
        assert_eq!(classify(&f), Classification::AlphaParaKenmotsu);
    }

    #[test]
    fn flat_structure_is_paracosymplectic() {
        let c = chart3();
        let metric = flat_metric(&c);
        let s = standard_structure(&c, metric.clone());
        let cache = CurvatureCache::new(metric).unwrap();
        let f = alpha_beta(&s, &cache).unwrap();
        assert_eq!(f.alpha_value, 0.0);
        assert_eq!(f.beta_value, 0.0);
        assert_eq!(classify(&f), Classification::Paracosymplectic);
    }

    #[test]
    fn steeper_warp_doubles_alpha() {
        // trace of the hand-computed Christoffel table gives α = 2
        let c = chart3();
        let metric = warped_metric(&c, 4);
        let s = standard_structure(&c, metric.clone());
        let cache = CurvatureCache::new(metric).unwrap();
        let f = alpha_beta(&s, &cache).unwrap();
        assert!((f.alpha_value - 2.0).abs() < 1e-12);
        assert!(f.beta_value.abs() < 1e-12);
        assert_eq!(classify(&f), Classification::AlphaParaKenmotsu);
    }

    #[test]
    fn classification_branches() {
        let c = chart3();
        let mk = |alpha: Expr, beta: Expr, a_const: bool, b_const: bool| {
            let points = c.sample_points();
            let (av, _) = sampled_stats(&alpha, &points).unwrap();
            let (bv, _) = sampled_stats(&beta, &points).unwrap();
            StructureFunctions {
                alpha,
                beta,
                alpha_value: av,
                beta_value: bv,
                alpha_is_constant: a_const,
                beta_is_constant: b_const,
                constancy_tol: DEFAULT_TOL,
                reconstruction: CheckReport::from_residuals("r", DEFAULT_TOL, []),
            }
        };
        assert_eq!(
            classify(&mk(Expr::zero(), Expr::zero(), true, true)),
            Classification::Paracosymplectic
        );
        assert_eq!(
            classify(&mk(Expr::zero(), Expr::integer(-1), true, true)),
            Classification::ParaSasakian
        );
        assert_eq!(
            classify(&mk(Expr::zero(), Expr::integer(3), true, true)),
            Classification::BetaParaSasakian
        );
        assert_eq!(
            classify(&mk(
                Expr::zero(),
                parse("exp(z)", &c).unwrap(),
                true,
                false
            )),
            Classification::QuasiParaSasakian
        );
        assert_eq!(
            classify(&mk(Expr::one(), Expr::zero(), true, true)),
            Classification::AlphaParaKenmotsu
        );
        assert!(matches!(
            classify(&mk(parse("z", &c).unwrap(), Expr::zero(), false, true)),
            Classification::Unclassified { .. }
        ));
    }

    #[test]
    fn ksi_beta_identity_golden_and_synthetic() {
        let c = chart3();
        let metric = warped_metric(&c, 2);
        let s = standard_structure(&c, metric.clone());
        let cache = CurvatureCache::new(metric).unwrap();
        let f = alpha_beta(&s, &cache).unwrap();
        let r = ksi_beta_identity(&s, &f, DEFAULT_TOL).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_residual, 0.0);

        // synthetic inconsistent pair α = 1, β = exp(z):
        // ξβ + 2αβ = exp(z) + 2exp(z) = 3exp(z) ≠ 0
        let fake = StructureFunctions {
            alpha: Expr::one(),
            beta: parse("exp(z)", &c).unwrap(),
            alpha_value: 1.0,
            beta_value: f64::NAN,
            alpha_is_constant: true,
            beta_is_constant: false,
            constancy_tol: DEFAULT_TOL,
            reconstruction: CheckReport::from_residuals("r", DEFAULT_TOL, []),
        };
        let r = ksi_beta_identity(&s, &fake, DEFAULT_TOL).unwrap();
        assert!(!r.passed);
        assert!(r.max_residual > 0.1);
    }

    #[test]
    fn rank_helper() {
        assert_eq!(
            matrix_rank(
                &[vec![1.0, 0.0], vec![0.0, 1e-12]],
                RANK_PIVOT_TOL
            ),
            1
        );
        assert_eq!(
            matrix_rank(&[vec![1.0, 2.0], vec![2.0, 4.0]], RANK_PIVOT_TOL),
            1
        );
        assert_eq!(
            matrix_rank(&[vec![1.0, 0.0], vec![0.0, 3.0]], RANK_PIVOT_TOL),
            2
        );
    }
}
