//! Singular-value analysis of wall systems.

use nalgebra::{DMatrix, DVector};

use crate::error::SolveError;

/// Right singular vectors of `a` ordered by ascending singular value,
/// together with all singular values (ascending, padded with exact zeros
/// when the system has fewer rows than columns).
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Singular values, smallest first. Length equals the column count.
    pub singular_values: Vec<f64>,
    /// Right singular vectors matching `singular_values`, unit norm.
    pub vectors: Vec<DVector<f64>>,
}

impl SpectralDecomposition {
    /// Computes the decomposition. Systems with fewer rows than columns are
    /// zero-padded so that the full right singular basis (including the
    /// null space) is available.
    pub fn of(a: &DMatrix<f64>) -> Result<Self, SolveError> {
        let cols = a.ncols();
        let padded;
        let work = if a.nrows() < cols {
            padded = {
                let mut p = DMatrix::zeros(cols, cols);
                p.rows_mut(0, a.nrows()).copy_from(a);
                p
            };
            &padded
        } else {
            a
        };
        let svd = work
            .clone()
            .try_svd(false, true, f64::EPSILON, 0)
            .ok_or(SolveError::DegenerateConfiguration {
                reason: "singular value decomposition did not converge".into(),
            })?;
        let v_t = svd.v_t.expect("right singular vectors were requested");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&i, &j| {
            svd.singular_values[i]
                .partial_cmp(&svd.singular_values[j])
                .expect("singular values are finite")
        });
        let singular_values = order.iter().map(|&i| svd.singular_values[i]).collect();
        let vectors = order
            .iter()
            .map(|&i| v_t.row(i).transpose().clone_owned())
            .collect();
        Ok(Self { singular_values, vectors })
    }

    /// Ratio of the `k`-th smallest singular value to the largest.
    pub fn relative_sigma(&self, k: usize) -> f64 {
        let max = *self.singular_values.last().expect("non-empty spectrum");
        if max == 0.0 {
            return 0.0;
        }
        self.singular_values[k] / max
    }
}
