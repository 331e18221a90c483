//! K3 surface model: the intersection-form ring, the degree-4 class of
//! the diagonal, and the introduction-level identities relating the
//! inverse form to the diagonal and the middle projector.

use crate::corr::{corr_cup, diag_pullback, diagonal, pullback1, pullback2, Corr};
use crate::qform::{k3_lattice, QuadraticSpace};
use crate::rat::{rat, render, Mat, Rat};
use crate::report::Report;
use crate::ring::Cls;
use crate::surface::SurfaceRing;
use num_traits::One;

pub struct K3Model {
    pub ring: SurfaceRing,
    /// degree of c2(S); 24 for a K3 surface
    pub c2_degree: Rat,
}

impl K3Model {
    pub fn new(space: QuadraticSpace, c2_degree: Rat) -> Self {
        K3Model { ring: SurfaceRing::new(space), c2_degree }
    }

    pub fn default_k3() -> Self {
        K3Model::new(k3_lattice(), rat(24))
    }

    /// The inverse form as a (2,2)-correspondence on S × S.
    pub fn bb_correspondence(&self) -> Corr {
        let mut c = Corr::zero();
        c.set_block(2, 2, self.ring.inverse_coeffs().clone());
        c
    }
}

/// The introduction-level K3 identities:
/// Δ_S − (1/r)(b1 + b2) is the pure inverse-form correspondence, and the
/// middle projector squares to (deg c2 − 2)·`[pt]`⊗`[pt]`.
pub fn k3_intro_check(m: &K3Model) -> Report {
    let ring = &m.ring;
    let mut rep = Report::new("k3");
    let delta = diagonal(ring);
    let bb = m.bb_correspondence();
    let b_s = diag_pullback(ring, &bb);
    rep.timed(
        "k3.diag_degree",
        "restriction of Δ_S to the diagonal has degree rank + 2 = deg c2(S)",
        || {
            let got = diag_pullback(ring, &delta).integrate(ring);
            (render(&got), render(&m.c2_degree))
        },
    );
    rep.timed("k3.b_identity", "B_S = Δ_S − (1/r)(b1 + b2)", || {
        let r = rat(ring.rank() as i64);
        let b1 = pullback1(&b_s);
        let b2 = pullback2(&b_s);
        let lhs = delta.sub(&b1.add(&b2).scale(&(Rat::one() / r)));
        (lhs.sub(&bb).describe_residual(), "0".into())
    });
    rep.timed(
        "k3.pi2_square",
        "(Δ_S − [pt]⊗[S] − [S]⊗[pt])² = (deg c2 − 2)·[pt]⊗[pt]",
        || {
            let mut pt_s = Corr::zero();
            let mut unit = Mat::zero(1, 1);
            unit[(0, 0)] = Rat::one();
            pt_s.set_block(4, 0, unit.clone());
            let mut s_pt = Corr::zero();
            s_pt.set_block(0, 4, unit.clone());
            let pi2 = delta.sub(&pt_s).sub(&s_pt);
            let sq = corr_cup(ring, &pi2, &pi2);
            let mut want = Corr::zero();
            let mut w = Mat::zero(1, 1);
            w[(0, 0)] = &m.c2_degree - rat(2);
            want.set_block(4, 4, w);
            (sq.sub(&want).describe_residual(), "0".into())
        },
    );
    rep
}

/// The middle Künneth projector of the surface, Δ − π0 − π4.
pub fn k3_pi2(m: &K3Model) -> Corr {
    let ring = &m.ring;
    let delta = diagonal(ring);
    let pt_s = pullback1(&Cls::point(ring));
    let s_pt = pullback2(&Cls::point(ring));
    delta.sub(&pt_s).sub(&s_pt)
}
