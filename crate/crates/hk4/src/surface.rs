//! Three-graded surface ring H0 ⊕ H2 ⊕ H4 with H4 = <`[pt]`> and
//! cup on H2 given by the intersection form: α·β = q(α,β)·`[pt]`.
//! Used for the K3 cross-checks.

use crate::qform::QuadraticSpace;
use crate::rat::{Mat, Rat};
use crate::ring::{GradedRing, RingError};
use num_traits::{One, Zero};

pub struct SurfaceRing {
    space: QuadraticSpace,
    inv: Mat,
    r: usize,
}

impl SurfaceRing {
    pub fn new(space: QuadraticSpace) -> Self {
        let inv = space.inverse_form().coeffs().clone();
        let r = space.rank();
        SurfaceRing { space, inv, r }
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn inverse_coeffs(&self) -> &Mat {
        &self.inv
    }
}

impl GradedRing for SurfaceRing {
    fn top(&self) -> usize {
        4
    }

    fn dim(&self, degree: usize) -> usize {
        match degree {
            0 | 4 => 1,
            2 => self.r,
            _ => 0,
        }
    }

    fn cup_units(&self, d1: usize, i: usize, d2: usize, j: usize) -> Vec<(usize, Rat)> {
        match (d1, d2) {
            (0, _) => vec![(j, Rat::one())],
            (_, 0) => vec![(i, Rat::one())],
            (2, 2) => {
                let c = self.space.entry(i, j).clone();
                if c.is_zero() {
                    vec![]
                } else {
                    vec![(0, c)]
                }
            }
            _ => vec![],
        }
    }

    fn pairing_apply(&self, d: usize, x: &[Rat]) -> Vec<Rat> {
        match d {
            0 | 4 => x.to_vec(),
            2 => self.space.gram().mul_vec(x),
            _ => panic!("bad degree {d}"),
        }
    }

    fn pairing_solve(&self, d: usize, f: &[Rat]) -> Result<Vec<Rat>, RingError> {
        let expected = self.dim(self.top() - d);
        if f.len() != expected {
            return Err(RingError::DimensionMismatch { degree: d, expected, got: f.len() });
        }
        match d {
            0 | 4 => Ok(f.to_vec()),
            2 => Ok(self.inv.mul_vec(f)),
            _ => Err(RingError::BadDegree(d)),
        }
    }

    fn cup_unit_width(&self, _d1: usize, _d2: usize) -> usize {
        1
    }
}
