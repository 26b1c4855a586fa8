//! Euclidean triangles in edge-length and Heron coordinates, and boxes with
//! their best Lipschitz constants.

use alloc::vec::Vec;

use crate::error::{domain, invalid, Result};
use crate::math;

/// Coordinates whose `min / max` ratio falls below this are flagged as
/// near-degenerate.
pub const ILL_CONDITIONED_RATIO: f64 = 1e-12;

/// Side lengths `(a1, a2, a3)` of a non-degenerate triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeLengths([f64; 3]);

impl EdgeLengths {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let a = [a1, a2, a3];
        if a.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(domain("edge lengths must be finite and positive"));
        }
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            if a[i] >= a[j] + a[k] {
                return Err(domain("edge lengths violate the strict triangle inequality"));
            }
        }
        Ok(Self(a))
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    /// `A_i = (a_j + a_k - a_i) / 2`. Fails only when the subtraction
    /// rounds to zero for an extremely thin triangle.
    pub fn to_coords(&self) -> Result<TriCoords> {
        let a = self.0;
        TriCoords::from_array(core::array::from_fn(|i| {
            0.5 * ((a[(i + 1) % 3] + a[(i + 2) % 3]) - a[i])
        }))
    }
}

/// Heron coordinates `(A1, A2, A3)`, all strictly positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriCoords([f64; 3]);

impl TriCoords {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        Self::from_array([a1, a2, a3])
    }

    pub fn from_array(a: [f64; 3]) -> Result<Self> {
        if a.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(domain("triangle coordinates must be finite and positive"));
        }
        Ok(Self(a))
    }

    pub fn from_slice(a: &[f64]) -> Result<Self> {
        let arr: [f64; 3] = a
            .try_into()
            .map_err(|_| invalid("triangle coordinates need exactly three values"))?;
        Self::from_array(arr)
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `a_i = A_j + A_k`.
    pub fn to_edges(&self) -> EdgeLengths {
        let c = self.0;
        EdgeLengths(core::array::from_fn(|i| c[(i + 1) % 3] + c[(i + 2) % 3]))
    }

    pub fn area(&self) -> f64 {
        heron_area(self)
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::from_array(self.0.map(|x| lambda * x))
    }

    /// Rescales to unit area; returns the rescaled coordinates and the factor.
    pub fn normalize_unit_area(&self) -> (TriCoords, f64) {
        let lambda = 1.0 / math::sqrt(self.area());
        (TriCoords(self.0.map(|x| lambda * x)), lambda)
    }

    /// `min_i A_i / max_i A_i`.
    pub fn conditioning(&self) -> f64 {
        let min = self.0.iter().copied().fold(f64::INFINITY, f64::min);
        let max = self.0.iter().copied().fold(0.0, f64::max);
        min / max
    }

    pub fn is_ill_conditioned(&self) -> bool {
        self.conditioning() < ILL_CONDITIONED_RATIO
    }
}

pub fn edges_to_coords(e: &EdgeLengths) -> Result<TriCoords> {
    e.to_coords()
}

pub fn coords_to_edges(c: &TriCoords) -> EdgeLengths {
    c.to_edges()
}

/// Heron's formula in half-sum coordinates: `sqrt((A1 + A2 + A3) A1 A2 A3)`.
pub fn heron_area(c: &TriCoords) -> f64 {
    let [a1, a2, a3] = c.0;
    math::sqrt((a1 + a2 + a3) * a1 * a2 * a3)
}

/// Gradient of [`heron_area`] with respect to `(A1, A2, A3)`.
pub fn heron_area_gradient(c: &TriCoords) -> [f64; 3] {
    let [a1, a2, a3] = c.0;
    let area = heron_area(c);
    let s = a1 + a2 + a3;
    // d/dA1 of s*A1*A2*A3 is A2*A3*(s + A1); same pattern for the others.
    [
        a2 * a3 * (s + a1) / (2.0 * area),
        a1 * a3 * (s + a2) / (2.0 * area),
        a1 * a2 * (s + a3) / (2.0 * area),
    ]
}

pub fn normalize_unit_area(c: &TriCoords) -> (TriCoords, f64) {
    c.normalize_unit_area()
}

/// Side lengths of the box `[0, l_1] x ... x [0, l_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxDims(Vec<f64>);

impl BoxDims {
    pub fn new(lengths: Vec<f64>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(invalid("a box needs at least one side"));
        }
        if lengths.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(domain("box sides must be finite and positive"));
        }
        Ok(Self(lengths))
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.0
    }
}

impl From<TriCoords> for BoxDims {
    fn from(c: TriCoords) -> Self {
        BoxDims(c.0.to_vec())
    }
}

/// Log of the best Lipschitz constant of label-preserving maps `src -> dst`,
/// which the diagonal affine map attains: `log max_i dst_i / src_i`.
pub fn box_lipschitz(src: &BoxDims, dst: &BoxDims) -> Result<f64> {
    if src.dimension() != dst.dimension() {
        return Err(invalid("boxes have different dimensions"));
    }
    let ratio = src
        .0
        .iter()
        .zip(&dst.0)
        .map(|(s, d)| d / s)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(math::ln(ratio))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn heron_of_small_cases() {
        let c = TriCoords::new(1.0, 1.0, 1.0).unwrap();
        assert!(close(heron_area(&c), 3f64.sqrt(), 1e-15));
        let q = 3f64.powf(-0.25);
        assert!(close(TriCoords::new(q, q, q).unwrap().area(), 1.0, 1e-15));
        let c = TriCoords::new(0.3, 1.7, 2.2).unwrap();
        let doubled = c.scaled(2.0).unwrap();
        assert!(close(doubled.area(), 4.0 * c.area(), 1e-14));
    }

    #[test]
    fn three_four_five() {
        let c = EdgeLengths::new(3.0, 4.0, 5.0).unwrap().to_coords().unwrap();
        assert_eq!(c.as_array(), [3.0, 2.0, 1.0]);
        assert_eq!(c.to_edges().as_array(), [3.0, 4.0, 5.0]);
        assert_eq!(heron_area(&c), 6.0);
        let e = TriCoords::new(1.0, 1.0, 1.0).unwrap().to_edges();
        assert_eq!(e.as_array(), [2.0, 2.0, 2.0]);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(matches!(TriCoords::new(0.0, 1.0, 1.0), Err(crate::Error::Domain(_))));
        assert!(matches!(TriCoords::new(-1.0, 1.0, 1.0), Err(crate::Error::Domain(_))));
        assert!(matches!(TriCoords::new(f64::NAN, 1.0, 1.0), Err(crate::Error::Domain(_))));
        assert!(matches!(EdgeLengths::new(1.0, 1.0, 2.0), Err(crate::Error::Domain(_))));
        assert!(matches!(EdgeLengths::new(1.0, 5.0, 2.0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn normalization() {
        let (n, s) = TriCoords::new(1.0, 1.0, 1.0).unwrap().normalize_unit_area();
        let q = 3f64.powf(-0.25);
        assert!(close(s, q, 1e-15));
        for x in n.as_array() {
            assert!(close(x, q, 1e-15));
        }
        let (_, s1) = n.normalize_unit_area();
        assert!(close(s1, 1.0, 1e-15));

        let c = TriCoords::new(0.4, 2.0, 0.9).unwrap();
        let (a, sa) = c.normalize_unit_area();
        let (b, sb) = c.scaled(2.0).unwrap().normalize_unit_area();
        assert!(close(sb, sa / 2.0, 1e-15));
        for (x, y) in a.as_array().iter().zip(b.as_array()) {
            assert!(close(*x, y, 1e-15));
        }
    }

    #[test]
    fn conditioning_flag() {
        assert!(!TriCoords::new(1.0, 1.0, 1.0).unwrap().is_ill_conditioned());
        assert!(TriCoords::new(1.0, 1.0, 1e-13).unwrap().is_ill_conditioned());
    }

    #[test]
    fn gradient_matches_paper_differential() {
        // For unit area the gradient is half the differential of (A1+A2+A3)A1A2A3.
        let (c, _) = TriCoords::new(0.7, 1.1, 0.5).unwrap().normalize_unit_area();
        let [a1, a2, a3] = c.as_array();
        let g = heron_area_gradient(&c);
        let q1 = 2.0 * a1 * a2 * a3 + a2 * a3 * (a2 + a3);
        let q3 = 2.0 * a1 * a2 * a3 + a1 * a2 * (a1 + a2);
        assert!(close(g[0], q1 / 2.0, 1e-12));
        assert!(close(g[2], q3 / 2.0, 1e-12));
    }

    #[test]
    fn boxes() {
        let unit = BoxDims::new(alloc::vec![1.0; 3]).unwrap();
        let two = BoxDims::new(alloc::vec![2.0; 3]).unwrap();
        assert!(close(box_lipschitz(&unit, &two).unwrap(), 2f64.ln(), 1e-15));
        assert_eq!(box_lipschitz(&two, &two).unwrap(), 0.0);
        let flat = BoxDims::new(alloc::vec![1.0, 2.0]).unwrap();
        assert!(matches!(box_lipschitz(&unit, &flat), Err(crate::Error::InvalidArgument(_))));
        assert!(BoxDims::new(alloc::vec![1.0, 0.0]).is_err());
    }
}
