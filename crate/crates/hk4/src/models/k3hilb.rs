//! Hilbert square of a K3 surface: the rank r_S + 1 lattice with the (-2)
//! line, the class of a surface fiber solved from its intersection
//! numbers, the incidence correspondence, and the identity suite tying
//! the incidence class to the Beauville–Bogomolov class.

use crate::corr::{corr_cup, diagonal, pullback1, pullback2, Corr};
use crate::fourier::bb_correspondence;
use crate::hkring::HKRing;
use crate::models::k3::K3Model;
use crate::qform::k3hilb_lattice;
use crate::rat::{frac, rat, Mat, Rat};
use crate::report::Report;
use crate::ring::{Cls, GradedRing, RingError};
use num_traits::Zero;

pub struct K3HilbModel {
    pub base: K3Model,
    pub ring: HKRing,
    /// index of the δ direction (last basis slot)
    pub delta_index: usize,
    pub delta: Cls,
    /// class of a fiber surface S_x, solved from its pairings
    pub s_o: Cls,
    pub i_class: Corr,
    pub l_class: Corr,
    pub c2f: Cls,
}

/// Lifts a degree-2 class of the surface into the fourfold lattice.
fn hat(ring: &HKRing, alpha: &[Rat]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); ring.rank()];
    v[..alpha.len()].clone_from_slice(alpha);
    v
}

pub fn build_k3hilb_model(base: K3Model) -> Result<K3HilbModel, RingError> {
    let rs = base.ring.rank();
    let ring = HKRing::new(k3hilb_lattice(base.ring.space()), rat(1))?;
    let delta_index = rs;
    let delta = Cls::basis(&ring, 2, delta_index);

    // S_o is pinned by its pairings against the degree-4 basis:
    //   ∫ S_o · hat(a)·hat(b) = q_S(a, b)
    //   ∫ S_o · hat(a)·δ = 0
    //   ∫ S_o · δ² = −1
    let n = ring.sym2_dim();
    let mut functional = vec![Rat::zero(); n];
    for (idx, &(i, j)) in ring.sym2_pairs().iter().enumerate() {
        functional[idx] = if i < rs && j < rs {
            base.ring.space().entry(i, j).clone()
        } else if i == delta_index && j == delta_index {
            rat(-1)
        } else {
            Rat::zero()
        };
    }
    let s_o = Cls::from_component(4, ring.pairing_solve(4, &functional)?);

    // [I] = 2 S_o⊗[F] + Σ q_S^{ij} hat(v_i)⊗hat(v_j) + 2 [F]⊗S_o
    let mut i_class = pullback1(&s_o.scale(&rat(2))).add(&pullback2(&s_o.scale(&rat(2))));
    let mut middle = Mat::zero(ring.rank(), ring.rank());
    for i in 0..rs {
        for j in 0..rs {
            middle[(i, j)] = base.ring.inverse_coeffs()[(i, j)].clone();
        }
    }
    let mut mid = Corr::zero();
    mid.set_block(2, 2, middle);
    i_class = i_class.add(&mid);

    // L = I − 2 p1*S_o − 2 p2*S_o − (1/2) δ1·δ2
    let d1d2 = corr_cup(&ring, &pullback1(&delta), &pullback2(&delta));
    let l_class = i_class
        .sub(&pullback1(&s_o.scale(&rat(2))))
        .sub(&pullback2(&s_o.scale(&rat(2))))
        .sub(&d1d2.scale(&frac(1, 2)));

    // c2(F) = (deg c2(S))·S_o − 3δ²
    let delta_sq = delta.cup(&ring, &delta);
    let c2f = s_o.scale(&base.c2_degree).sub(&delta_sq.scale(&rat(3)));

    Ok(K3HilbModel { base, ring, delta_index, delta, s_o, i_class, l_class, c2f })
}

impl K3HilbModel {
    pub fn hat2(&self, alpha: &[Rat]) -> Cls {
        Cls::from_component(2, hat(&self.ring, alpha))
    }
}

/// The identity suite for the Hilbert square.
pub fn verify_k3hilb(m: &K3HilbModel) -> Report {
    let ring = &m.ring;
    let mut rep = Report::new("k3hilb");
    let rs = m.base.ring.rank();

    rep.timed("k3hilb.so.delta2", "∫ S_o·δ² = −1", || {
        let d2 = m.delta.cup(ring, &m.delta);
        (crate::rat::render(&m.s_o.cup(ring, &d2).integrate(ring)), "-1".into())
    });
    rep.timed("k3hilb.so.mixed", "∫ S_o·hat(a)·δ = 0 for every surface basis class", || {
        let bad = (0..rs)
            .filter(|&i| {
                let h = Cls::basis(ring, 2, i);
                !m.s_o.cup(ring, &h).cup(ring, &m.delta).integrate(ring).is_zero()
            })
            .count();
        (format!("{bad} nonzero of {rs}"), format!("0 nonzero of {rs}"))
    });
    rep.timed("k3hilb.so.gram", "∫ S_o·hat(a)·hat(b) = q_S(a, b) entrywise", || {
        let mut bad = 0;
        for i in 0..rs {
            for j in 0..rs {
                let p = m
                    .s_o
                    .cup(ring, &Cls::basis(ring, 2, i))
                    .cup(ring, &Cls::basis(ring, 2, j))
                    .integrate(ring);
                if p != *m.base.ring.space().entry(i, j) {
                    bad += 1;
                }
            }
        }
        (format!("{bad} wrong of {}", rs * rs), format!("0 wrong of {}", rs * rs))
    });
    rep.timed("k3hilb.so.square", "∫ S_o² = 1", || {
        (crate::rat::render(&m.s_o.cup(ring, &m.s_o).integrate(ring)), "1".into())
    });
    rep.timed("k3hilb.l_equals_b", "L = B as correspondences", || {
        (m.l_class.sub(&bb_correspondence(ring)).describe_residual(), "0".into())
    });
    rep.timed("k3hilb.l.symmetric", "transpose(L) = L", || {
        (m.l_class.transpose().sub(&m.l_class).describe_residual(), "0".into())
    });
    rep.timed("k3hilb.b.so_delta", "b = 20·S_o − (5/2)·δ²", || {
        let d2 = m.delta.cup(ring, &m.delta);
        let want = m.s_o.scale(&rat(20)).sub(&d2.scale(&frac(5, 2)));
        (ring.b_class().sub(&want).describe_residual(), "0".into())
    });
    rep.timed("k3hilb.b.c2", "b = (5/6)·c2(F)", || {
        (ring.b_class().sub(&m.c2f.scale(&frac(5, 6))).describe_residual(), "0".into())
    });
    rep.timed(
        "k3hilb.i_square",
        "I² = 2Δ − (δ1² − δ1δ2 + δ2²)·I + 24·p1*S_o·p2*S_o",
        || {
            let lhs = corr_cup(ring, &m.i_class, &m.i_class);
            let d1 = pullback1(&m.delta);
            let d2 = pullback2(&m.delta);
            let d1sq = corr_cup(ring, &d1, &d1);
            let d2sq = corr_cup(ring, &d2, &d2);
            let d1d2 = corr_cup(ring, &d1, &d2);
            let factor = d1sq.sub(&d1d2).add(&d2sq);
            let so_so = corr_cup(ring, &pullback1(&m.s_o), &pullback2(&m.s_o));
            let rhs = diagonal(ring)
                .scale(&rat(2))
                .sub(&corr_cup(ring, &factor, &m.i_class))
                .add(&so_so.scale(&rat(24)));
            (lhs.sub(&rhs).describe_residual(), "0".into())
        },
    );
    rep.timed("k3hilb.i.block04", "the (0,4) block of [I] is 2·[F]⊗S_o", || {
        let want = pullback2(&m.s_o.scale(&rat(2)));
        let mut got = Corr::zero();
        if let Some(b) = m.i_class.block(0, 4) {
            got.set_block(0, 4, b.clone());
        }
        (got.sub(&want).describe_residual(), "0".into())
    });
    rep.timed("k3hilb.delta_orthogonal", "q_F(δ, hat(a)) = 0 for every surface class", || {
        let bad = (0..rs)
            .filter(|&i| {
                let h = Cls::basis(ring, 2, i).coords(ring, 2);
                !ring.q(&h, &m.delta.coords(ring, 2)).is_zero()
            })
            .count();
        (format!("{bad} nonzero of {rs}"), format!("0 nonzero of {rs}"))
    });
    rep
}
