//! Asymmetric ("weak") metrics, their symmetrizations and finite-window
//! diagnostics for Cauchy sequences and the convergence-symmetry property.
//!
//! Every diagnostic here inspects a finite sample of a sequence. A flag such
//! as [`SequenceDiagnostics::numerically_forward_cauchy`] is numerical
//! evidence about that sample, not a statement about the infinite tail.

use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// A possibly asymmetric distance `d(x, y)`.
///
/// Implementations must satisfy the triangle inequality
/// `d(x, z) <= d(x, y) + d(y, z)` on their domain; symmetry is not required.
pub trait WeakMetric<P: ?Sized> {
    fn distance(&self, x: &P, y: &P) -> Result<f64>;

    /// Identifier of the underlying space, used in reports.
    fn domain_tag(&self) -> &str {
        "unspecified"
    }
}

impl<P: ?Sized, M: WeakMetric<P> + ?Sized> WeakMetric<P> for &M {
    fn distance(&self, x: &P, y: &P) -> Result<f64> {
        (**self).distance(x, y)
    }

    fn domain_tag(&self) -> &str {
        (**self).domain_tag()
    }
}

/// Adapter turning a closure into a [`WeakMetric`].
#[derive(Clone, Copy)]
pub struct FnMetric<F> {
    tag: &'static str,
    f: F,
}

pub fn from_fn<P: ?Sized, F: Fn(&P, &P) -> f64>(tag: &'static str, f: F) -> FnMetric<F> {
    FnMetric { tag, f }
}

impl<P: ?Sized, F: Fn(&P, &P) -> f64> WeakMetric<P> for FnMetric<F> {
    fn distance(&self, x: &P, y: &P) -> Result<f64> {
        Ok((self.f)(x, y))
    }

    fn domain_tag(&self) -> &str {
        self.tag
    }
}

/// `(d(x, y) + d(y, x)) / 2`.
#[derive(Clone, Copy, Debug)]
pub struct ArithSymmetrization<M>(pub M);

/// `max{d(x, y), d(y, x)}`.
#[derive(Clone, Copy, Debug)]
pub struct MaxSymmetrization<M>(pub M);

pub fn symmetrize_arith<M>(d: M) -> ArithSymmetrization<M> {
    ArithSymmetrization(d)
}

pub fn symmetrize_max<M>(d: M) -> MaxSymmetrization<M> {
    MaxSymmetrization(d)
}

impl<P: ?Sized, M: WeakMetric<P>> WeakMetric<P> for ArithSymmetrization<M> {
    fn distance(&self, x: &P, y: &P) -> Result<f64> {
        Ok(0.5 * (self.0.distance(x, y)? + self.0.distance(y, x)?))
    }

    fn domain_tag(&self) -> &str {
        self.0.domain_tag()
    }
}

impl<P: ?Sized, M: WeakMetric<P>> WeakMetric<P> for MaxSymmetrization<M> {
    fn distance(&self, x: &P, y: &P) -> Result<f64> {
        Ok(self.0.distance(x, y)?.max(self.0.distance(y, x)?))
    }

    fn domain_tag(&self) -> &str {
        self.0.domain_tag()
    }
}

/// Forward/backward Cauchy defects of a sampled sequence window.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceDiagnostics {
    /// Index (into the caller's sequence) of the first examined term.
    pub start: usize,
    /// `forward_defect[m]` is the max of `d(x_i, x_j)` over examined
    /// `start + m <= i <= j`.
    pub forward_defect: Vec<f64>,
    /// Same as `forward_defect` with the arguments swapped.
    pub backward_defect: Vec<f64>,
    /// `|d(x_i, x_{i+1}) - d(x_{i+1}, x_i)|` for consecutive examined terms.
    pub symmetry_gap: Vec<f64>,
}

impl SequenceDiagnostics {
    pub fn window(&self) -> usize {
        self.forward_defect.len()
    }

    /// Forward defect of the tail starting at sequence index `n`.
    pub fn forward_at(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.start).and_then(|m| self.forward_defect.get(m).copied())
    }

    pub fn backward_at(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.start).and_then(|m| self.backward_defect.get(m).copied())
    }

    /// True when the whole examined window is forward `tol`-Cauchy.
    pub fn numerically_forward_cauchy(&self, tol: f64) -> bool {
        self.forward_defect[0] < tol
    }

    pub fn numerically_backward_cauchy(&self, tol: f64) -> bool {
        self.backward_defect[0] < tol
    }
}

/// Forward and backward Cauchy defects over the last `window` terms of `seq`.
///
/// Cost is quadratic in `window`; pass a sub-sampled sequence for long tails.
pub fn cauchy_diagnose<P, M: WeakMetric<P>>(
    d: &M,
    seq: &[P],
    window: usize,
) -> Result<SequenceDiagnostics> {
    if window < 2 {
        return Err(invalid("cauchy window must contain at least 2 terms"));
    }
    if seq.len() < window {
        return Err(invalid("sequence is shorter than the requested window"));
    }
    let start = seq.len() - window;
    let terms = &seq[start..];

    // Row maxima first, then suffix maxima so defects are non-increasing in N.
    let mut forward = alloc::vec![0.0_f64; window];
    let mut backward = alloc::vec![0.0_f64; window];
    for i in 0..window {
        for j in i + 1..window {
            forward[i] = forward[i].max(d.distance(&terms[i], &terms[j])?);
            backward[i] = backward[i].max(d.distance(&terms[j], &terms[i])?);
        }
    }
    for i in (0..window - 1).rev() {
        forward[i] = forward[i].max(forward[i + 1]);
        backward[i] = backward[i].max(backward[i + 1]);
    }

    let mut symmetry_gap = Vec::with_capacity(window - 1);
    for pair in terms.windows(2) {
        let ab = d.distance(&pair[0], &pair[1])?;
        let ba = d.distance(&pair[1], &pair[0])?;
        symmetry_gap.push((ab - ba).abs());
    }

    Ok(SequenceDiagnostics {
        start,
        forward_defect: forward,
        backward_defect: backward,
        symmetry_gap,
    })
}

/// Thresholds separating "tends to zero" from "stays away from zero".
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeThresholds {
    pub forward_below: f64,
    pub reverse_above: f64,
}

impl Default for ProbeThresholds {
    fn default() -> Self {
        Self {
            forward_below: 1e-6,
            reverse_above: 1e-2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    /// `d(p_n, q_n)`.
    pub forward: Vec<f64>,
    /// `d(q_n, p_n)`.
    pub reverse: Vec<f64>,
    pub thresholds: ProbeThresholds,
    /// Last forward value is below `forward_below` while the last reverse
    /// value is above `reverse_above`.
    pub violation: bool,
}

impl ProbeReport {
    pub fn last_forward(&self) -> f64 {
        *self.forward.last().unwrap_or(&0.0)
    }

    pub fn last_reverse(&self) -> f64 {
        *self.reverse.last().unwrap_or(&0.0)
    }
}

/// Traces `d(p_n, q_n)` and `d(q_n, p_n)` and flags a convergence-symmetry
/// violation. The caller supplies pairs with `d(p_n, q_n)` decreasing to 0.
pub fn convergence_symmetry_probe<P, M: WeakMetric<P>>(
    d: &M,
    pairs: &[(P, P)],
    thresholds: ProbeThresholds,
) -> Result<ProbeReport> {
    let mut forward = Vec::with_capacity(pairs.len());
    let mut reverse = Vec::with_capacity(pairs.len());
    for (p, q) in pairs {
        forward.push(d.distance(p, q)?);
        reverse.push(d.distance(q, p)?);
    }
    let violation = match (forward.last(), reverse.last()) {
        (Some(&f), Some(&r)) => f < thresholds.forward_below && r > thresholds.reverse_above,
        _ => false,
    };
    Ok(ProbeReport {
        forward,
        reverse,
        thresholds,
        violation,
    })
}
