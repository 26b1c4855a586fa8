//! Sample-based check of the log-ratio dominance criterion for geodesics.
//!
//! A path `t -> (A_s(t))_s` (before or after rescaling to unit area) is a
//! geodesic of `log max_s B_s / A_s` exactly when one coordinate `j` has the
//! largest log-increment over every sub-interval:
//! `log A_s(t') - log A_s(t) <= log A_j(t') - log A_j(t)` for all `s`, `t <= t'`.
//! Rescaling shifts every log-increment equally, so the check can run on
//! either representative.

use alloc::vec::Vec;

use crate::error::{domain, invalid, Result};
use crate::math;

pub const DOMINANCE_SLACK: f64 = 1e-10;

/// Worst failure of a candidate dominating coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct DominanceWitness {
    /// The candidate `j` that failed.
    pub candidate: usize,
    /// Coordinate whose log-increment beat the candidate's.
    pub index: usize,
    pub t: f64,
    pub t_next: f64,
    /// By how much the increment of `index` exceeded that of `candidate`.
    pub excess: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicVerdict {
    pub is_geodesic: bool,
    /// Smallest dominating coordinate when the criterion holds.
    pub dominating: Option<usize>,
    /// One witness per failed candidate, in candidate order; empty on success.
    pub witnesses: Vec<DominanceWitness>,
    /// Number of sample times the verdict is based on.
    pub grid: usize,
}

/// Checks the dominance criterion over all pairs of sample times.
///
/// `samples` must be ordered by `t` and share a coordinate count.
pub fn verify_log_dominance<S: AsRef<[f64]>>(samples: &[(f64, S)]) -> Result<GeodesicVerdict> {
    if samples.is_empty() {
        return Err(invalid("no samples"));
    }
    let dim = samples[0].1.as_ref().len();
    if dim == 0 {
        return Err(invalid("samples have no coordinates"));
    }
    if samples.windows(2).any(|w| !(w[0].0 <= w[1].0)) {
        return Err(invalid("samples are not sorted by parameter"));
    }
    let mut logs = Vec::with_capacity(samples.len());
    for (_, coords) in samples {
        let coords = coords.as_ref();
        if coords.len() != dim {
            return Err(invalid("samples have different coordinate counts"));
        }
        if coords.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(domain("path coordinates must be positive"));
        }
        logs.push(coords.iter().map(|&x| math::ln(x)).collect::<Vec<_>>());
    }

    let mut witnesses = Vec::new();
    for j in 0..dim {
        let mut worst: Option<DominanceWitness> = None;
        for a in 0..logs.len() {
            for b in a + 1..logs.len() {
                let inc_j = logs[b][j] - logs[a][j];
                for i in 0..dim {
                    let excess = (logs[b][i] - logs[a][i]) - inc_j;
                    if excess > DOMINANCE_SLACK && worst.as_ref().is_none_or(|w| excess > w.excess) {
                        worst = Some(DominanceWitness {
                            candidate: j,
                            index: i,
                            t: samples[a].0,
                            t_next: samples[b].0,
                            excess,
                        });
                    }
                }
            }
        }
        match worst {
            None => {
                return Ok(GeodesicVerdict {
                    is_geodesic: true,
                    dominating: Some(j),
                    witnesses: Vec::new(),
                    grid: samples.len(),
                })
            }
            Some(w) => witnesses.push(w),
        }
    }
    Ok(GeodesicVerdict {
        is_geodesic: false,
        dominating: None,
        witnesses,
        grid: samples.len(),
    })
}
