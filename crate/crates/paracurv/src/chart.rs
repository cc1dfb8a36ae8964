//! Coordinate charts with a sampling box for numeric identity checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const DEFAULT_SAMPLE_COUNT: usize = 32;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ChartError {
    #[error("chart dimension must be positive")]
    EmptyChart,
    #[error("coordinate names are not distinct: `{0}` repeats")]
    DuplicateName(String),
    #[error("coordinate name count {names} does not match interval count {intervals}")]
    LengthMismatch { names: usize, intervals: usize },
    #[error("degenerate sample interval [{lo}, {hi}] for coordinate `{name}`")]
    DegenerateInterval { name: String, lo: f64, hi: f64 },
    #[error("sample count must be positive")]
    ZeroSamples,
}

/// Named coordinates plus a closed sampling box. Sampling is deterministic:
/// the seed is part of the chart, so every identity check is reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    names: Vec<String>,
    intervals: Vec<(f64, f64)>,
    sample_count: usize,
    seed: u64,
}

impl Chart {
    pub fn new(names: &[&str], intervals: &[(f64, f64)]) -> Result<Chart, ChartError> {
        Chart::with_options(
            names.iter().map(|s| s.to_string()).collect(),
            intervals.to_vec(),
            DEFAULT_SAMPLE_COUNT,
            0,
        )
    }

    pub fn with_options(
        names: Vec<String>,
        intervals: Vec<(f64, f64)>,
        sample_count: usize,
        seed: u64,
    ) -> Result<Chart, ChartError> {
        if names.is_empty() {
            return Err(ChartError::EmptyChart);
        }
        if names.len() != intervals.len() {
            return Err(ChartError::LengthMismatch {
                names: names.len(),
                intervals: intervals.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(ChartError::DuplicateName(n.clone()));
            }
        }
        for (n, &(lo, hi)) in names.iter().zip(&intervals) {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(ChartError::DegenerateInterval {
                    name: n.clone(),
                    lo,
                    hi,
                });
            }
        }
        if sample_count == 0 {
            return Err(ChartError::ZeroSamples);
        }
        Ok(Chart {
            names,
            intervals,
            sample_count,
            seed,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_sample_count(mut self, count: usize) -> Chart {
        assert!(count > 0);
        self.sample_count = count;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Chart {
        self.seed = seed;
        self
    }

    /// Deterministic sample points, uniform in the box, seeded by the chart.
    pub fn sample_points(&self) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.sample_count)
            .map(|_| {
                self.intervals
                    .iter()
                    .map(|&(lo, hi)| rng.gen_range(lo..hi))
                    .collect()
            })
            .collect()
    }
}
