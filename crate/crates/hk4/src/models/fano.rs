//! Variety of lines on a cubic fourfold without planes: the lattice from
//! the middle intersection form, the tautological degree-4 class c, the
//! incidence correspondence, the hyperplane-cycle correspondences, the
//! graph of the degree-16 self-map, and their identity suites.

use crate::corr::{act, corr_cup, diag_pullback, diagonal, pullback1, pullback2, Corr};
use crate::fourier::bb_correspondence;
use crate::hkring::HKRing;
use crate::qform::{fano_lattice, QformError, QuadraticSpace};
use crate::rat::{frac, proportional, rat, render, Mat};
use crate::report::Report;
use crate::ring::{Cls, GradedRing, RingError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FanoError {
    #[error(transparent)]
    Lattice(#[from] QformError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub struct FanoModel {
    pub b0: QuadraticSpace,
    pub ring: HKRing,
    pub h2_index: usize,
    /// Plücker polarization g, the image of h².
    pub g: Cls,
    /// second tautological Chern class, from c2(F) = 5g² − 8c and
    /// b = 25/6 g² − 20/3 c
    pub c: Cls,
    pub i_class: Corr,
    pub gamma_h: Corr,
    pub gamma_h2: Corr,
    pub gamma_phi: Corr,
    /// class of the surface of lines of second type
    pub sigma2: Cls,
}

pub fn build_fano_model(b0: QuadraticSpace, h2_index: usize) -> Result<FanoModel, FanoError> {
    let lattice = fano_lattice(&b0, h2_index)?;
    let ring = HKRing::new(lattice, rat(1))?;
    let g = Cls::basis(&ring, 2, h2_index);
    let g2 = g.cup(&ring, &g);

    // c is pinned by c2(F) = 5g² − 8c together with b = (5/6)c2(F):
    // c = (5/8)g² − (3/20)b
    let c = g2.scale(&frac(5, 8)).sub(&ring.b_class().scale(&frac(3, 20)));

    // [I] = (1/3)(g1² + (3/2) g1g2 + g2² − c1 − c2) − B
    let g1 = pullback1(&g);
    let gg2 = pullback2(&g);
    let g1g2 = corr_cup(&ring, &g1, &gg2);
    let i_class = pullback1(&g2)
        .add(&pullback2(&g2))
        .add(&g1g2.scale(&frac(3, 2)))
        .sub(&pullback1(&c))
        .sub(&pullback2(&c))
        .scale(&frac(1, 3))
        .sub(&bb_correspondence(&ring));

    // Γ_h = (1/3)(g1³ + g1²g2 + g1g2² + g2³ − 2g1c1 − g1c2 − g2c1 − 2g2c2)
    let g3 = g2.cup(&ring, &g);
    let gc = g.cup(&ring, &c);
    let gamma_h = pullback1(&g3)
        .add(&corr_cup(&ring, &pullback1(&g2), &gg2))
        .add(&corr_cup(&ring, &g1, &pullback2(&g2)))
        .add(&pullback2(&g3))
        .sub(&pullback1(&gc).scale(&rat(2)))
        .sub(&corr_cup(&ring, &g1, &pullback2(&c)))
        .sub(&corr_cup(&ring, &pullback1(&c), &gg2))
        .sub(&pullback2(&gc).scale(&rat(2)))
        .scale(&frac(1, 3));

    // Γ_{h²} = (1/3)(g1³g2 + g1²g2² + g1g2³ − g1²c2 − 2g1g2c2
    //               − g2²c1 − 2g1g2c1 + c1c2)
    let gamma_h2 = corr_cup(&ring, &pullback1(&g3), &gg2)
        .add(&corr_cup(&ring, &pullback1(&g2), &pullback2(&g2)))
        .add(&corr_cup(&ring, &g1, &pullback2(&g3)))
        .sub(&corr_cup(&ring, &pullback1(&g2), &pullback2(&c)))
        .sub(&corr_cup(&ring, &g1, &pullback2(&gc)).scale(&rat(2)))
        .sub(&corr_cup(&ring, &pullback1(&c), &pullback2(&g2)))
        .sub(&corr_cup(&ring, &pullback1(&gc), &gg2).scale(&rat(2)))
        .add(&corr_cup(&ring, &pullback1(&c), &pullback2(&c)))
        .scale(&frac(1, 3));

    // graph of the self-map, no-plane case:
    // Γ_φ = 4Δ + (2g1² + 3g1g2 + g2²)·I − (5g1 + 4g2)·Γ_h + 3Γ_{h²}
    let quad = pullback1(&g2)
        .scale(&rat(2))
        .add(&g1g2.scale(&rat(3)))
        .add(&pullback2(&g2));
    let lin = g1.scale(&rat(5)).add(&gg2.scale(&rat(4)));
    let gamma_phi = diagonal(&ring)
        .scale(&rat(4))
        .add(&corr_cup(&ring, &quad, &i_class))
        .sub(&corr_cup(&ring, &lin, &gamma_h))
        .add(&gamma_h2.scale(&rat(3)));

    let sigma2 = g2.sub(&c).scale(&rat(5));

    Ok(FanoModel { b0, ring, h2_index, g, c, i_class, gamma_h, gamma_h2, gamma_phi, sigma2 })
}

impl FanoModel {
    pub fn g_power(&self, k: usize) -> Cls {
        let mut out = Cls::unit();
        for _ in 0..k {
            out = out.cup(&self.ring, &self.g);
        }
        out
    }

    /// φ_* = action of the graph, φ* = action of its transpose.
    pub fn phi_push(&self, x: &Cls) -> Cls {
        act(&self.ring, &self.gamma_phi, x)
    }

    pub fn phi_pull(&self, x: &Cls) -> Cls {
        act(&self.ring, &self.gamma_phi.transpose(), x)
    }
}

/// Degree checks and the incidence-correspondence identities.
pub fn verify_fano_incidence(m: &FanoModel) -> Report {
    let ring = &m.ring;
    let mut rep = Report::new("fano");
    let g2 = m.g_power(2);
    let g2_minus_c = g2.sub(&m.c);

    rep.timed("fano.lattice.qgg", "q(g, g) = 6", || {
        let gv = m.g.coords(ring, 2);
        (render(&ring.q(&gv, &gv)), "6".into())
    });
    rep.timed("fano.deg.g4", "∫ g⁴ = 108", || {
        (render(&m.g_power(4).integrate(ring)), "108".into())
    });
    rep.timed("fano.deg.g2c", "∫ g²·c = 45", || {
        (render(&g2.cup(ring, &m.c).integrate(ring)), "45".into())
    });
    rep.timed("fano.deg.c2", "∫ c² = 27", || {
        (render(&m.c.cup(ring, &m.c).integrate(ring)), "27".into())
    });
    rep.timed("fano.deg.b2", "∫ b² = 575", || {
        let b = ring.b_class();
        (render(&b.cup(ring, &b).integrate(ring)), "575".into())
    });
    rep.timed("fano.i.transpose", "transpose(I) = I", || {
        (m.i_class.transpose().sub(&m.i_class).describe_residual(), "0".into())
    });
    rep.timed("fano.i.point", "I_*[pt] = (1/3)(g² − c)", || {
        let got = act(ring, &m.i_class, &Cls::point(ring));
        (got.sub(&g2_minus_c.scale(&frac(1, 3))).describe_residual(), "0".into())
    });
    rep.timed("fano.i.g2", "I_*(g²) = 21·[F]", || {
        let got = act(ring, &m.i_class, &g2);
        (got.sub(&Cls::unit().scale(&rat(21))).describe_residual(), "0".into())
    });
    rep.timed("fano.i.g3", "I_*(g³) = 36·g", || {
        let got = act(ring, &m.i_class, &m.g_power(3));
        (got.sub(&m.g.scale(&rat(36))).describe_residual(), "0".into())
    });
    rep.timed("fano.i.g4", "I_*(g⁴) = 36·(g² − c)", || {
        let got = act(ring, &m.i_class, &m.g_power(4));
        (got.sub(&g2_minus_c.scale(&rat(36))).describe_residual(), "0".into())
    });
    rep.timed("fano.i.diag", "restriction of I to the diagonal is 6c − 3g²", || {
        let got = diag_pullback(ring, &m.i_class);
        let want = m.c.scale(&rat(6)).sub(&g2.scale(&rat(3)));
        (got.sub(&want).describe_residual(), "0".into())
    });
    rep.timed(
        "fano.voisin",
        "I² = 2Δ + I·(g1²+g1g2+g2²) + Γ₂ with Γ₂ the explicit degree-4 polynomial",
        || {
            let lhs = corr_cup(ring, &m.i_class, &m.i_class);
            let g1 = pullback1(&m.g);
            let gg2 = pullback2(&m.g);
            let quad = pullback1(&g2)
                .add(&corr_cup(ring, &g1, &gg2))
                .add(&pullback2(&g2));
            // Γ₂ = −g1⁴ − g2⁴ − g1²c2 − g2²c1 + 2g1²c1 + 2g2²c2
            //      − g1g2(c1+c2) + 2c1c2
            let g4 = m.g_power(4);
            let g2c = g2.cup(ring, &m.c);
            let gamma2 = pullback1(&g4)
                .scale(&rat(-1))
                .sub(&pullback2(&g4))
                .sub(&corr_cup(ring, &pullback1(&g2), &pullback2(&m.c)))
                .sub(&corr_cup(ring, &pullback1(&m.c), &pullback2(&g2)))
                .add(&pullback1(&g2c).scale(&rat(2)))
                .add(&pullback2(&g2c).scale(&rat(2)))
                .sub(&corr_cup(
                    ring,
                    &corr_cup(ring, &g1, &gg2),
                    &pullback1(&m.c).add(&pullback2(&m.c)),
                ))
                .add(&corr_cup(ring, &pullback1(&m.c), &pullback2(&m.c)).scale(&rat(2)));
            let rhs = diagonal(ring)
                .scale(&rat(2))
                .add(&corr_cup(ring, &quad, &m.i_class))
                .add(&gamma2);
            (lhs.sub(&rhs).describe_residual(), "0".into())
        },
    );
    rep.timed("fano.sigma2.g2", "∫ Σ₂·g² = 5(108 − 45) = 315", || {
        (render(&m.sigma2.cup(ring, &g2).integrate(ring)), "315".into())
    });
    rep
}

/// The spectra of the self-map action: scalar identities, minimal
/// polynomials per degree, the degree, and the H4 eigen-structure.
pub fn verify_phi(m: &FanoModel) -> Report {
    let ring = &m.ring;
    let mut rep = Report::new("fano");
    let g2 = m.g_power(2);
    let g3 = m.g_power(3);

    rep.timed("fano.phi.pull_g", "φ*g = 7g", || {
        (m.phi_pull(&m.g).sub(&m.g.scale(&rat(7))).describe_residual(), "0".into())
    });
    rep.timed("fano.phi.push_g", "φ_*g = 28g", || {
        (m.phi_push(&m.g).sub(&m.g.scale(&rat(28))).describe_residual(), "0".into())
    });
    rep.timed("fano.phi.pull_g2", "φ*g² = 4g² + 45c", || {
        let want = g2.scale(&rat(4)).add(&m.c.scale(&rat(45)));
        (m.phi_pull(&g2).sub(&want).describe_residual(), "0".into())
    });
    rep.timed("fano.phi.push_g2", "φ_*g² = 4g² + 45c", || {
        let want = g2.scale(&rat(4)).add(&m.c.scale(&rat(45)));
        (m.phi_push(&g2).sub(&want).describe_residual(), "0".into())
    });
    rep.timed("fano.phi.pull_c", "φ*c = 31c", || {
        (m.phi_pull(&m.c).sub(&m.c.scale(&rat(31))).describe_residual(), "0".into())
    });
    rep.timed("fano.phi.pull_g3", "φ*g³ = 28g³", || {
        (m.phi_pull(&g3).sub(&g3.scale(&rat(28))).describe_residual(), "0".into())
    });
    rep.timed("fano.phi.push_g3", "φ_*g³ = 7g³", || {
        (m.phi_push(&g3).sub(&g3.scale(&rat(7))).describe_residual(), "0".into())
    });

    // matrices of φ* per degree
    let pull_matrix = |deg: usize| -> Mat {
        let n = ring.dim(deg);
        let mut mt = Mat::zero(n, n);
        for a in 0..n {
            let img = m.phi_pull(&Cls::basis(ring, deg, a));
            let v = img.coords(ring, deg);
            for (b, x) in v.into_iter().enumerate() {
                mt[(a, b)] = x; // row a = image of basis a
            }
        }
        mt
    };
    let poly_vanishes = |mat: &Mat, roots: &[i64]| -> bool {
        let n = mat.rows;
        let mut acc = Mat::identity(n);
        for &r in roots {
            acc = acc.mul(&mat.sub(&Mat::identity(n).scale(&rat(r))));
        }
        acc.is_zero()
    };

    let m2 = pull_matrix(2);
    rep.timed("fano.phi.min_h2", "(φ* + 2)(φ* − 7) = 0 on H^2", || {
        (
            if poly_vanishes(&m2, &[-2, 7]) { "0" } else { "nonzero" }.into(),
            "0".into(),
        )
    });
    let m6 = pull_matrix(6);
    rep.timed("fano.phi.min_h6", "(φ* − 28)(φ* + 8) = 0 on H^6", || {
        (
            if poly_vanishes(&m6, &[28, -8]) { "0" } else { "nonzero" }.into(),
            "0".into(),
        )
    });
    let m4 = pull_matrix(4);
    rep.timed("fano.phi.min_h4", "(φ* − 31)(φ* + 14)(φ* − 4) = 0 on H^4", || {
        (
            if poly_vanishes(&m4, &[31, -14, 4]) { "0" } else { "nonzero" }.into(),
            "0".into(),
        )
    });
    rep.timed("fano.phi.degree16", "φ_*φ* = 16 on H^8", || {
        let got = m.phi_push(&m.phi_pull(&Cls::point(ring)));
        (got.sub(&Cls::point(ring).scale(&rat(16))).describe_residual(), "0".into())
    });

    // H4 eigen-structure: <c> is the 31-eigenline, g·(g-orthogonal H2)
    // lies in the (−14)-eigenspace, and the trace fixes the dimensions
    // (1, r−1, dim H4 − r).
    rep.timed("fano.phi.eigenline_c", "the 31-eigenspace of φ* on H^4 is the line <c>", || {
        let n = ring.dim(4);
        // the projector numerator (φ*+14)(φ*−4) has image exactly the
        // 31-eigenspace once the minimal polynomial vanishes
        let p31 = m4
            .add(&Mat::identity(n).scale(&rat(14)))
            .mul(&m4.sub(&Mat::identity(n).scale(&rat(4))));
        let c_coords = m.c.coords(ring, 4);
        let mut ok = true;
        // rows of p31, as images of basis row-vectors, must be ∝ c
        for a in 0..n {
            if !proportional(p31.row(a), &c_coords) {
                ok = false;
                break;
            }
        }
        // and c itself is a 31-eigenvector with (31+14)(31−4) = 1215 ≠ 0
        let pc = m.phi_pull(&m.c);
        if pc != m.c.scale(&rat(31)) {
            ok = false;
        }
        (if ok { "image in <c>, c fixed" } else { "mismatch" }.into(), "image in <c>, c fixed".into())
    });
    rep.timed(
        "fano.phi.eigen_g_prim",
        "φ* = −14 on g·(g-orthogonal part of H^2)",
        || {
            let r = ring.rank();
            let gv = m.g.coords(ring, 2);
            let qgg = ring.q(&gv, &gv);
            let mut bad = 0;
            let mut tested = 0;
            for a in 0..r {
                let e = Cls::basis(ring, 2, a);
                let lam = ring.q(&e.coords(ring, 2), &gv) / &qgg;
                let prim = e.sub(&m.g.scale(&lam));
                if prim.is_zero() {
                    continue;
                }
                tested += 1;
                let x = m.g.cup(ring, &prim);
                if m.phi_pull(&x) != x.scale(&rat(-14)) {
                    bad += 1;
                }
            }
            (format!("{bad} wrong of {tested}"), format!("0 wrong of {tested}"))
        },
    );
    rep.timed(
        "fano.phi.h4_dimensions",
        "tr φ*|H4 = 31 − 14(r−1) + 4(dim H4 − r) pins eigenspace dimensions (1, r−1, rest)",
        || {
            let r = ring.rank() as i64;
            let n = ring.dim(4) as i64;
            let want = rat(31) - rat(14) * rat(r - 1) + rat(4) * rat(n - r);
            (render(&m4.trace()), render(&want))
        },
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::default_fano_b0;

    fn model() -> FanoModel {
        build_fano_model(default_fano_b0(), 0).unwrap()
    }

    #[test]
    fn degrees_on_default_b0() {
        let m = model();
        let ring = &m.ring;
        assert_eq!(m.g_power(4).integrate(ring), rat(108));
        assert_eq!(m.g_power(2).cup(ring, &m.c).integrate(ring), rat(45));
        assert_eq!(m.c.cup(ring, &m.c).integrate(ring), rat(27));
    }

    #[test]
    fn incidence_suite_passes() {
        let rep = verify_fano_incidence(&model());
        assert!(rep.all_passed(), "{}", rep.render_text());
    }

    #[test]
    fn phi_suite_passes() {
        let rep = verify_phi(&model());
        assert!(rep.all_passed(), "{}", rep.render_text());
    }

    #[test]
    fn act_on_unit_matches_transpose_symmetry() {
        // I symmetric: I_*[F] computed two ways
        let m = model();
        let ring = &m.ring;
        let via_push = crate::corr::pushforward2(ring, &m.i_class);
        let via_act = act(ring, &m.i_class, &Cls::unit());
        assert_eq!(via_push, via_act);
        let tr = act(ring, &m.i_class.transpose(), &Cls::unit());
        assert_eq!(via_act, tr);
    }

    #[test]
    fn gamma_h_symmetry_under_swap() {
        // Γ_h and Γ_{h²} are symmetric under transpose (swap of factors)
        let m = model();
        assert!(m.gamma_h.transpose().sub(&m.gamma_h).is_zero());
        assert!(m.gamma_h2.transpose().sub(&m.gamma_h2).is_zero());
    }

    #[test]
    fn gamma_actions_on_g_powers() {
        // independent action checks behind the self-map identities:
        // Γ_h* g = 6[F], Γ_h* g² = 21g, Γ_h* g³ = 36(g²−c),
        // Γ_h* g⁴ = 108·C with 3C = g³ − 2gc;
        // Γ_{h²}* g = 6g, Γ_{h²}* g² = 21(g²−c), Γ_{h²}* g⁴ = 0
        let m = model();
        let ring = &m.ring;
        let pull = |gamma: &Corr, x: &Cls| act(ring, &gamma.transpose(), x);
        let g2 = m.g_power(2);
        let g2c = g2.sub(&m.c);
        assert_eq!(pull(&m.gamma_h, &m.g), Cls::unit().scale(&rat(6)));
        assert_eq!(pull(&m.gamma_h, &g2), m.g.scale(&rat(21)));
        assert_eq!(pull(&m.gamma_h, &m.g_power(3)), g2c.scale(&rat(36)));
        let gc = m.g.cup(ring, &m.c);
        let cx3 = m.g_power(3).sub(&gc.scale(&rat(2)));
        assert_eq!(pull(&m.gamma_h, &m.g_power(4)), cx3.scale(&rat(36)));
        assert_eq!(pull(&m.gamma_h2, &m.g), m.g.scale(&rat(6)));
        assert_eq!(pull(&m.gamma_h2, &g2), g2c.scale(&rat(21)));
        assert!(pull(&m.gamma_h2, &m.g_power(4)).is_zero());
    }

    #[test]
    fn alternative_b0_still_passes() {
        // rank-23 b0 with off-diagonal entries, b0(h²,h²) = 3: the whole
        // suite is a formal consequence of the stated relations
        let mut rows = vec![vec![rat(0); 23]; 23];
        rows[0][0] = rat(3);
        for i in 1..23 {
            rows[i][i] = rat(1);
        }
        rows[0][1] = rat(1);
        rows[1][0] = rat(1);
        rows[2][3] = rat(2);
        rows[3][2] = rat(2);
        let b0 = QuadraticSpace::from_rows(rows).unwrap();
        let m = build_fano_model(b0, 0).unwrap();
        let rep = verify_fano_incidence(&m);
        assert!(rep.all_passed(), "{}", rep.render_text());
        let rep = verify_phi(&m);
        assert!(rep.all_passed(), "{}", rep.render_text());
    }

    #[test]
    fn wrong_cubic_degree_rejected() {
        match build_fano_model(crate::qform::identity_space(23), 0) {
            Err(FanoError::Lattice(QformError::WrongCubicDegree(_))) => {}
            _ => panic!("expected WrongCubicDegree"),
        }
    }
}
