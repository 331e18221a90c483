//! Graded-ring abstraction shared by the fourfold ring and the surface
//! ring, and the graded class type both use.
//!
//! A ring here is a finite even-graded Q-algebra with a fixed basis per
//! degree, Poincaré duality against the complementary degree, and cup
//! products expressible through those bases. Classes are plain coordinate
//! data; all operations go through the ring.

use crate::rat::{dot, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("fujiki scale must be a positive rational, got {0}")]
    NonPositiveFujiki(String),
    #[error("degree-4 intersection pairing is degenerate")]
    DegenerateMiddlePairing,
    #[error("pairing in degree {0} is degenerate")]
    DegeneratePairing(usize),
    #[error("functional has {got} entries, expected {expected} (degree {degree})")]
    DimensionMismatch { degree: usize, expected: usize, got: usize },
    #[error("unsupported degree {0}")]
    BadDegree(usize),
}

/// Even-graded rational cohomology ring with chosen bases.
pub trait GradedRing {
    /// Top (socle) degree: 8 for the fourfold, 4 for a surface.
    fn top(&self) -> usize;

    /// Basis dimension in a given even degree.
    fn dim(&self, degree: usize) -> usize;

    fn degrees(&self) -> Vec<usize> {
        (0..=self.top()).step_by(2).collect()
    }

    /// Cup product of two basis elements, as a sparse vector in degree
    /// `d1 + d2`. Empty when the product degree exceeds the top.
    fn cup_units(&self, d1: usize, i: usize, d2: usize, j: usize) -> Vec<(usize, Rat)>;

    /// Cup product of full components; default expands through
    /// `cup_units`, implementations may override with closed forms.
    fn cup_comp(&self, d1: usize, x: &[Rat], d2: usize, y: &[Rat]) -> Vec<Rat> {
        let td = d1 + d2;
        let mut out = vec![Rat::zero(); self.dim(td)];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in self.cup_units(d1, i, d2, j) {
                    out[k] += a * b * c;
                }
            }
        }
        out
    }

    /// w_a = ∫ basis^d_a · x, for x a component of degree top - d.
    fn pairing_apply(&self, d: usize, x: &[Rat]) -> Vec<Rat>;

    /// The unique degree-d component pairing to the given functional on the
    /// complementary-degree basis: ∫ x · basis^{top-d}_a = f_a.
    fn pairing_solve(&self, d: usize, f: &[Rat]) -> Result<Vec<Rat>, RingError>;

    /// Rough upper bound on the support of `cup_units(d1, ·, d2, ·)`,
    /// used to pick a contraction strategy for correspondence products.
    fn cup_unit_width(&self, d1: usize, d2: usize) -> usize;

    /// Ring-specific fast path for a blockwise Künneth product; `None`
    /// falls through to the generic contraction.
    fn cup_block_override(
        &self,
        _shape_a: (usize, usize),
        _a: &crate::rat::Mat,
        _shape_b: (usize, usize),
        _b: &crate::rat::Mat,
    ) -> Option<crate::rat::Mat> {
        None
    }
}

/// A graded class: coordinates per even degree, absent components zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Cls {
    comps: BTreeMap<usize, Vec<Rat>>,
}

impl Cls {
    pub fn zero() -> Self {
        Cls::default()
    }

    pub fn unit() -> Self {
        let mut c = Cls::zero();
        c.set(0, vec![Rat::one()]);
        c
    }

    pub fn point<R: GradedRing>(ring: &R) -> Self {
        let mut c = Cls::zero();
        c.set(ring.top(), vec![Rat::one()]);
        c
    }

    pub fn basis<R: GradedRing>(ring: &R, degree: usize, index: usize) -> Self {
        let mut v = vec![Rat::zero(); ring.dim(degree)];
        v[index] = Rat::one();
        let mut c = Cls::zero();
        c.set(degree, v);
        c
    }

    pub fn from_component(degree: usize, coords: Vec<Rat>) -> Self {
        let mut c = Cls::zero();
        c.set(degree, coords);
        c
    }

    pub fn set(&mut self, degree: usize, coords: Vec<Rat>) {
        if coords.iter().all(|x| x.is_zero()) {
            self.comps.remove(&degree);
        } else {
            self.comps.insert(degree, coords);
        }
    }

    pub fn component(&self, degree: usize) -> Option<&[Rat]> {
        self.comps.get(&degree).map(|v| v.as_slice())
    }

    /// Coordinates in a degree, materializing zeros.
    pub fn coords<R: GradedRing>(&self, ring: &R, degree: usize) -> Vec<Rat> {
        match self.comps.get(&degree) {
            Some(v) => v.clone(),
            None => vec![Rat::zero(); ring.dim(degree)],
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &[Rat])> {
        self.comps.iter().map(|(d, v)| (*d, v.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Zero outside the given degree?
    pub fn concentrated_in(&self, degree: usize) -> bool {
        self.comps.keys().all(|d| *d == degree)
    }

    pub fn add(&self, other: &Cls) -> Cls {
        let mut out = self.clone();
        for (d, v) in &other.comps {
            let mut cur = out.comps.remove(d).unwrap_or_else(|| vec![Rat::zero(); v.len()]);
            for (a, b) in cur.iter_mut().zip(v) {
                *a += b;
            }
            out.set(*d, cur);
        }
        out
    }

    pub fn sub(&self, other: &Cls) -> Cls {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Cls {
        if c.is_zero() {
            return Cls::zero();
        }
        let mut out = self.clone();
        for v in out.comps.values_mut() {
            for a in v.iter_mut() {
                *a *= c;
            }
        }
        out
    }

    pub fn cup<R: GradedRing>(&self, ring: &R, other: &Cls) -> Cls {
        let mut out = Cls::zero();
        for (d1, x) in &self.comps {
            for (d2, y) in &other.comps {
                let td = d1 + d2;
                if td > ring.top() {
                    continue;
                }
                let prod = ring.cup_comp(*d1, x, *d2, y);
                let mut cur = out.coords(ring, td);
                for (a, b) in cur.iter_mut().zip(&prod) {
                    *a += b;
                }
                out.set(td, cur);
            }
        }
        out
    }

    /// Coefficient of the point class.
    pub fn integrate<R: GradedRing>(&self, ring: &R) -> Rat {
        match self.comps.get(&ring.top()) {
            Some(v) => v[0].clone(),
            None => Rat::zero(),
        }
    }

    /// First nonzero coordinate, rendered for failure reports.
    pub fn describe_residual(&self) -> String {
        for (d, v) in &self.comps {
            if let Some(k) = v.iter().position(|x| !x.is_zero()) {
                return format!("nonzero[degree {d} coord {k} = {}]", crate::rat::render(&v[k]));
            }
        }
        "0".to_string()
    }

    /// ∫ self · other.
    pub fn pair<R: GradedRing>(&self, ring: &R, other: &Cls) -> Rat {
        let mut acc = Rat::zero();
        for (d, x) in &self.comps {
            let cd = ring.top() - d;
            if let Some(y) = other.comps.get(&cd) {
                acc += dot(&ring.pairing_apply(*d, y), x);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn zero_components_are_dropped() {
        let mut c = Cls::zero();
        c.set(2, vec![rat(0), rat(0)]);
        assert!(c.is_zero());
        c.set(2, vec![rat(1), rat(0)]);
        let d = c.sub(&c.clone());
        assert!(d.is_zero());
    }
}
