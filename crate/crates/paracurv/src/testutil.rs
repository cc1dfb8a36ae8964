//! Shared fixtures for unit tests.

use crate::chart::Chart;
use crate::expr::{parse, Expr};
use crate::fields::{MetricField, TensorField, VectorField};
use crate::paracontact::ParacontactStructure;

pub fn chart3() -> Chart {
    Chart::new(
        &["x", "y", "z"],
        &[(-1.0, 1.0), (-1.0, 1.0), (-1.5, -0.5)],
    )
    .unwrap()
}

/// diag(exp(rate·z), −exp(rate·z), 1)
pub fn warped_metric(chart: &Chart, rate: i64) -> MetricField {
    MetricField::diagonal(
        chart.clone(),
        vec![
            parse(&format!("exp({rate}*z)"), chart).unwrap(),
            parse(&format!("-exp({rate}*z)"), chart).unwrap(),
            Expr::one(),
        ],
    )
    .unwrap()
}

pub fn flat_metric(chart: &Chart) -> MetricField {
    MetricField::diagonal(
        chart.clone(),
        vec![Expr::one(), Expr::integer(-1), Expr::one()],
    )
    .unwrap()
}

/// φ∂x = ∂y, φ∂y = ∂x, φ∂z = 0, ξ = ∂z, η = dz over the given metric.
pub fn standard_structure(chart: &Chart, metric: MetricField) -> ParacontactStructure {
    let phi = TensorField::one_one(
        chart.clone(),
        vec![
            vec![Expr::zero(), Expr::one(), Expr::zero()],
            vec![Expr::one(), Expr::zero(), Expr::zero()],
            vec![Expr::zero(), Expr::zero(), Expr::zero()],
        ],
    )
    .unwrap();
    let xi = VectorField::coordinate(chart.clone(), 2).unwrap();
    let eta = TensorField::one_form(
        chart.clone(),
        vec![Expr::zero(), Expr::zero(), Expr::one()],
    )
    .unwrap();
    ParacontactStructure::new(phi, xi, eta, metric).unwrap()
}
