//! The Beauville–Bogomolov correspondence, its powers, the Künneth
//! projectors, the cohomological Fourier transform, and the verification
//! suite around them: the quadratic identity, the Fourier-square spectrum,
//! composition constants, the uniqueness shadow, and the action-based
//! triple-product vanishing.

use crate::corr::{
    act, compose, corr_cup, diag_pullback, diagonal, pullback1, pullback2, triple_vanishing_check,
    Corr, TripleReport,
};
use crate::hkring::HKRing;
use crate::rat::{frac, rat, render, Mat, Rat};
use crate::report::Report;
use crate::ring::{Cls, GradedRing};
use crate::rng::Lcg;
use num_traits::{One, Zero};

/// Cached data around the Beauville–Bogomolov class of one ring.
pub struct FourierKit<'r> {
    pub ring: &'r HKRing,
    pub bb: Corr,
    pub b: Cls,
    pub b1: Corr,
    pub b2: Corr,
    pub powers: Vec<Corr>,
    pub diag: Corr,
}

/// The class with block (2,2) the coefficients of the inverse form.
pub fn bb_correspondence(ring: &HKRing) -> Corr {
    let mut c = Corr::zero();
    c.set_block(2, 2, ring.inverse_coeffs().clone());
    c
}

impl<'r> FourierKit<'r> {
    pub fn new(ring: &'r HKRing) -> Self {
        let bb = bb_correspondence(ring);
        let b = ring.b_class();
        let b1 = pullback1(&b);
        let b2 = pullback2(&b);
        let mut powers = vec![unit_correspondence(), bb.clone()];
        for _ in 2..=4 {
            let next = corr_cup(ring, powers.last().unwrap(), &bb);
            powers.push(next);
        }
        let diag = diagonal(ring);
        FourierKit { ring, bb, b, b1, b2, powers, diag }
    }

    pub fn power(&self, k: usize) -> &Corr {
        &self.powers[k]
    }

    /// x ↦ p2_*(e^B · p1^* x); e^B truncates at k = 4, which is asserted
    /// elsewhere by computing B^5 honestly.
    pub fn fourier_transform(&self, x: &Cls) -> Cls {
        let mut out = Cls::zero();
        let mut factorial = Rat::one();
        for (k, p) in self.powers.iter().enumerate() {
            if k > 0 {
                factorial *= rat(k as i64);
            }
            out = out.add(&act(self.ring, p, x).scale(&(Rat::one() / &factorial)));
        }
        out
    }

    /// The right-hand side of the quadratic identity for a candidate class
    /// C with c = ι_Δ*C:
    /// 2 c_F Δ − (2/(r+2))(c1+c2)·C − (1/(r(r+2)))(2c1² − r·c1c2 + 2c2²).
    pub fn quadratic_rhs(&self, cand: &Corr) -> Corr {
        let ring = self.ring;
        let r = rat(ring.rank() as i64);
        let c = diag_pullback(ring, cand);
        let c1 = pullback1(&c);
        let c2 = pullback2(&c);
        let term1 = self.diag.scale(&(rat(2) * ring.fujiki_scale()));
        let term2 = corr_cup(ring, &c1.add(&c2), cand)
            .scale(&(rat(2) / (&r + rat(2))));
        let c1c1 = corr_cup(ring, &c1, &c1);
        let c1c2 = corr_cup(ring, &c1, &c2);
        let c2c2 = corr_cup(ring, &c2, &c2);
        let term3 = c1c1
            .scale(&rat(2))
            .sub(&c1c2.scale(&r))
            .add(&c2c2.scale(&rat(2)))
            .scale(&(Rat::one() / (&r * (&r + rat(2)))));
        term1.sub(&term2).sub(&term3)
    }

    /// Residual C² − rhs(C); zero exactly when C satisfies the identity.
    pub fn quadratic_residual(&self, cand: &Corr) -> Corr {
        corr_cup(self.ring, cand, cand).sub(&self.quadratic_rhs(cand))
    }

    /// Cheap falsification for a pure (2,2) candidate: evaluates the
    /// residual block by block, corners first, and stops at the first
    /// nonzero one. Equivalent to `!quadratic_residual(c).is_zero()` for
    /// such candidates, since both sides live in total degree 8.
    pub fn quadratic_identity_fails(&self, cand22: &Mat) -> bool {
        let ring = self.ring;
        let r = rat(ring.rank() as i64);
        let cf = ring.fujiki_scale();
        let mut cand = Corr::zero();
        cand.set_block(2, 2, cand22.clone());
        let c = diag_pullback(ring, &cand).coords(ring, 4);
        // corners: residual = −2 c_F + (2/(r(r+2)))·∫c·c
        let int_cc = crate::rat::dot(&ring.pairing_apply(4, &c), &c);
        let corner = rat(2) * &int_cc / (&r * (&r + rat(2))) - rat(2) * cf;
        if !corner.is_zero() {
            return true;
        }
        // (6,2) and (2,6): −2 c_F·1 + (2/(r+2))·(c·C-column) in dual coords
        let scale = rat(2) / (&r + rat(2));
        for n in 0..ring.rank() {
            let col = cand22.col(n);
            let z = ring.cup_comp(4, &c, 2, &col);
            for (m, zm) in z.iter().enumerate() {
                let mut v = zm * &scale;
                if m == n {
                    v -= rat(2) * cf;
                }
                if !v.is_zero() {
                    return true;
                }
            }
            let row = cand22.row(n).to_vec();
            let z = ring.cup_comp(4, &c, 2, &row);
            for (m, zm) in z.iter().enumerate() {
                let mut v = zm * &scale;
                if m == n {
                    v -= rat(2) * cf;
                }
                if !v.is_zero() {
                    return true;
                }
            }
        }
        // middle block: C²|44 − 2 c_F·Δ44 − (1/(r+2))·c⊗c
        let sq = corr_cup(ring, &cand, &cand);
        let mut r44 = sq.block(4, 4).cloned().unwrap_or_else(|| {
            Mat::zero(ring.sym2_dim(), ring.sym2_dim())
        });
        r44 = r44.sub(&ring.pairing4_inv().scale(&(rat(2) * cf)));
        let lam = Rat::one() / (&r + rat(2));
        for a in 0..ring.sym2_dim() {
            if c[a].is_zero() {
                continue;
            }
            for b in 0..ring.sym2_dim() {
                if !c[b].is_zero() {
                    r44[(a, b)] -= &c[a] * &c[b] * &lam;
                }
            }
        }
        !r44.is_zero()
    }

    /// Künneth projectors from the class: π0, π2, π4, π6, π8.
    pub fn kunneth_projectors(&self) -> [Corr; 5] {
        let ring = self.ring;
        let r = rat(ring.rank() as i64);
        let cf = ring.fujiki_scale();
        let n0 = Rat::one() / (cf * &r * (&r + rat(2)));
        let n1 = Rat::one() / (cf * (&r + rat(2)));
        let pi0 = corr_cup(ring, &self.b1, &self.b1).scale(&n0);
        let pi2 = corr_cup(ring, &self.b1, &self.bb).scale(&n1);
        let pi6 = corr_cup(ring, &self.b2, &self.bb).scale(&n1);
        let pi8 = corr_cup(ring, &self.b2, &self.b2).scale(&n0);
        let b1b2 = corr_cup(ring, &self.b1, &self.b2);
        let pi4 = self
            .power(2)
            .sub(&b1b2.scale(&(Rat::one() / (&r + rat(2)))))
            .scale(&(Rat::one() / (rat(2) * cf)));
        [pi0, pi2, pi4, pi6, pi8]
    }
}

fn unit_correspondence() -> Corr {
    let mut c = Corr::zero();
    let mut m = Mat::zero(1, 1);
    m[(0, 0)] = Rat::one();
    c.set_block(0, 0, m);
    c
}

/// Exact blockwise verification of the quadratic identity for B, for -B,
/// and a perturbed negative control.
pub fn verify_bb_square(kit: &FourierKit) -> Report {
    let ring = kit.ring;
    let mut rep = Report::new("fourier");
    rep.timed(
        "fourier.bb.symmetric",
        "transpose(B) = B",
        || (kit.bb.transpose().sub(&kit.bb).describe_residual(), "0".into()),
    );
    rep.timed("fourier.bb.diag_pullback", "restriction of B to the diagonal is b", || {
        (
            diag_pullback(ring, &kit.bb).sub(&ring.b_class()).describe_residual(),
            "0".into(),
        )
    });
    rep.timed(
        "fourier.bb_square",
        "B^2 = 2c_F·Δ − (2/(r+2))(b1+b2)·B − (1/(r(r+2)))(2b1^2 − r·b1b2 + 2b2^2)",
        || (kit.quadratic_residual(&kit.bb).describe_residual(), "0".into()),
    );
    rep.timed("fourier.bb_square.neg_b", "−B satisfies the same quadratic identity", || {
        (
            kit.quadratic_residual(&kit.bb.scale(&rat(-1))).describe_residual(),
            "0".into(),
        )
    });
    rep.timed(
        "fourier.bb_square.perturbed",
        "B with one (2,2) entry shifted by 1 fails the identity (negative control)",
        || {
            let mut m = ring.inverse_coeffs().clone();
            let j = 1.min(ring.rank() - 1);
            m[(0, j)] += Rat::one();
            if j != 0 {
                m[(j, 0)] += Rat::one();
            }
            let mut c = Corr::zero();
            c.set_block(2, 2, m);
            let residual_zero = kit.quadratic_residual(&c).is_zero();
            (
                if residual_zero { "zero residual".into() } else { "nonzero residual".into() },
                "nonzero residual".into(),
            )
        },
    );
    rep
}

/// Idempotence, orthogonality, completeness and degree actions of the five
/// Künneth projectors.
pub fn verify_kunneth_projectors(kit: &FourierKit) -> (Vec<Corr>, Report) {
    let ring = kit.ring;
    let mut rep = Report::new("fourier");
    let projectors = kit.kunneth_projectors();
    rep.timed("fourier.kunneth.sum", "π0 + π2 + π4 + π6 + π8 = Δ", || {
        let sum = projectors.iter().fold(Corr::zero(), |acc, p| acc.add(p));
        (sum.sub(&kit.diag).describe_residual(), "0".into())
    });
    rep.timed("fourier.kunneth.idempotent", "π∘π = π for each projector", || {
        let bad = projectors
            .iter()
            .enumerate()
            .filter(|(_, p)| !compose(ring, p, p).sub(p).is_zero())
            .count();
        (format!("{bad} of 5 fail"), "0 of 5 fail".into())
    });
    rep.timed("fourier.kunneth.orthogonal", "π_a∘π_b = 0 for a ≠ b", || {
        let mut bad = 0;
        for (a, pa) in projectors.iter().enumerate() {
            for (b, pb) in projectors.iter().enumerate() {
                if a != b && !compose(ring, pa, pb).is_zero() {
                    bad += 1;
                }
            }
        }
        (format!("{bad} of 20 nonzero"), "0 of 20 nonzero".into())
    });
    rep.timed(
        "fourier.kunneth.degree_action",
        "π_{2k} is the identity on H^{2k} and zero elsewhere",
        || {
            let mut bad = 0;
            for (k, p) in projectors.iter().enumerate() {
                for d in ring.degrees() {
                    for a in 0..ring.dim(d) {
                        let x = Cls::basis(ring, d, a);
                        let got = act(ring, p, &x);
                        let want = if d == 2 * k { x } else { Cls::zero() };
                        if got != want {
                            bad += 1;
                        }
                    }
                }
            }
            (format!("{bad} basis actions wrong"), "0 basis actions wrong".into())
        },
    );
    (projectors.to_vec(), rep)
}

/// F∘F eigenvalues per degree, and the (B²)-action spectrum on H4.
pub fn fourier_square_spectrum(kit: &FourierKit) -> Report {
    let ring = kit.ring;
    let mut rep = Report::new("fourier");
    let r = rat(ring.rank() as i64);
    let cf = ring.fujiki_scale().clone();
    let ff = |x: &Cls| kit.fourier_transform(&kit.fourier_transform(x));
    let scalar_on = |deg: usize, want: &Rat| -> usize {
        (0..ring.dim(deg))
            .filter(|&a| {
                let x = Cls::basis(ring, deg, a);
                ff(&x) != x.scale(want)
            })
            .count()
    };
    let c08 = &r * (&r + rat(2)) * &cf * &cf * frac(1, 8);
    let c26 = (&r + rat(2)) * &cf * &cf * frac(1, 2);
    rep.timed("fourier.spectrum.h0", "F∘F = r(r+2)c_F²/8 on H^0", || {
        (format!("{} wrong of 1; scalar {}", scalar_on(0, &c08), render(&c08)), format!("0 wrong of 1; scalar {}", render(&c08)))
    });
    rep.timed("fourier.spectrum.h8", "F∘F = r(r+2)c_F²/8 on H^8", || {
        (format!("{} wrong of 1", scalar_on(8, &c08)), "0 wrong of 1".into())
    });
    rep.timed("fourier.spectrum.h2", "F∘F = (r+2)c_F²/2 on H^2", || {
        (
            format!("{} wrong of {}; scalar {}", scalar_on(2, &c26), ring.dim(2), render(&c26)),
            format!("0 wrong of {}; scalar {}", ring.dim(2), render(&c26)),
        )
    });
    rep.timed("fourier.spectrum.h6", "F∘F = (r+2)c_F²/2 on H^6", || {
        (format!("{} wrong of {}", scalar_on(6, &c26), ring.dim(6)), format!("0 wrong of {}", ring.dim(6)))
    });
    // H4 splits as <b> ⊕ b-perp for the degree-4 intersection pairing
    let b = &kit.b;
    let cb = (&r + rat(2)) * &cf * frac(1, 2);
    let cb2 = &cb * &cb;
    rep.timed("fourier.spectrum.h4_b", "F∘F = ((r+2)c_F/2)² on the line <b>", || {
        (
            ff(b).sub(&b.scale(&cb2)).is_zero().then_some("0").unwrap_or("nonzero").into(),
            "0".into(),
        )
    });
    let perp_basis: Vec<Cls> = {
        let bb_int = b.cup(ring, b).integrate(ring);
        (0..ring.dim(4))
            .map(|a| {
                let e = Cls::basis(ring, 4, a);
                let lam = e.cup(ring, b).integrate(ring) / &bb_int;
                e.sub(&b.scale(&lam))
            })
            .collect()
    };
    let cfcf = &cf * &cf;
    rep.timed("fourier.spectrum.h4_perp", "F∘F = c_F² on the pairing-complement of b", || {
        let bad = perp_basis
            .iter()
            .filter(|x| !x.is_zero() && ff(x) != x.scale(&cfcf))
            .count();
        (format!("{bad} wrong of {}; scalar {}", perp_basis.len(), render(&cfcf)), format!("0 wrong of {}; scalar {}", perp_basis.len(), render(&cfcf)))
    });
    let eb = (&r + rat(2)) * &cf;
    rep.timed("fourier.b2.eigen_b", "(B²)_* = (r+2)c_F on <b>", || {
        let got = act(ring, kit.power(2), b);
        (got.sub(&b.scale(&eb)).is_zero().then_some("0").unwrap_or("nonzero").into(), "0".into())
    });
    let e2 = rat(2) * &cf;
    rep.timed("fourier.b2.eigen_perp", "(B²)_* = 2c_F on the complement of b", || {
        let bad = perp_basis
            .iter()
            .filter(|x| !x.is_zero() && act(ring, kit.power(2), x) != x.scale(&e2))
            .count();
        (format!("{bad} wrong of {}", perp_basis.len()), format!("0 wrong of {}", perp_basis.len()))
    });
    // F([F]) lands on the point class with the B^4/4! scalar
    rep.timed("fourier.transform.unit", "F([F]) = (3r(r+2)c_F²/24)·[pt]", || {
        let want = Cls::point(ring).scale(&(rat(3) * &r * (&r + rat(2)) * &cf * &cf / rat(24)));
        (kit.fourier_transform(&Cls::unit()).sub(&want).is_zero().then_some("0").unwrap_or("nonzero").into(), "0".into())
    });
    rep.timed("fourier.transform.point", "F([pt]) = [F]", || {
        (
            kit.fourier_transform(&Cls::point(ring)).sub(&Cls::unit()).is_zero().then_some("0").unwrap_or("nonzero").into(),
            "0".into(),
        )
    });
    rep
}

/// Composition constants (B^k)_* ∘ (B^{4-k})_* on H^{2k}, block support of
/// the powers, and the closed form of B^4.
pub fn verify_composition_constants(kit: &FourierKit) -> Report {
    let ring = kit.ring;
    let mut rep = Report::new("fourier");
    let r = rat(ring.rank() as i64);
    let cf = ring.fujiki_scale();
    let c13 = rat(3) * (&r + rat(2)) * cf * cf;
    let c04 = rat(3) * &r * (&r + rat(2)) * cf * cf;
    for k in 0..=4usize {
        if k == 2 {
            continue; // covered by the H4 spectrum of B²
        }
        let want = if k == 1 || k == 3 { c13.clone() } else { c04.clone() };
        let id = format!("fourier.compose.k{k}");
        let anchor = format!("(B^{k})_* ∘ (B^{})_* = {} on H^{}", 4 - k, render(&want), 2 * k);
        rep.timed(&id, &anchor, || {
            let bad = (0..ring.dim(2 * k))
                .filter(|&a| {
                    let x = Cls::basis(ring, 2 * k, a);
                    let y = act(ring, kit.power(k), &act(ring, kit.power(4 - k), &x));
                    y != x.scale(&want)
                })
                .count();
            (format!("{bad} wrong of {}", ring.dim(2 * k)), format!("0 wrong of {}", ring.dim(2 * k)))
        });
    }
    rep.timed("fourier.b4.point", "B^4 = 3r(r+2)c_F²·[pt]⊗[pt]", || {
        let mut want = Corr::zero();
        let mut m = Mat::zero(1, 1);
        m[(0, 0)] = c04.clone();
        want.set_block(8, 8, m);
        (kit.power(4).sub(&want).describe_residual(), "0".into())
    });
    rep.timed("fourier.bk.support", "B^k lives in degree (2k, 2k); B^5 = 0", || {
        let mut bad = 0;
        for (k, p) in kit.powers.iter().enumerate() {
            if !p.blocks().all(|((i, j), _)| *i == 2 * k && *j == 2 * k) {
                bad += 1;
            }
        }
        let b5 = corr_cup(ring, kit.power(4), &kit.bb);
        if !b5.is_zero() {
            bad += 1;
        }
        (format!("{bad} violations"), "0 violations".into())
    });
    rep.timed("fourier.bk.action_support", "(B^k)_* = 0 on H^i for i ≠ 8−2k", || {
        let mut bad = 0;
        for (k, p) in kit.powers.iter().enumerate() {
            for d in ring.degrees() {
                if d == 8 - 2 * k {
                    continue;
                }
                for a in 0..ring.dim(d) {
                    if !act(ring, p, &Cls::basis(ring, d, a)).is_zero() {
                        bad += 1;
                    }
                }
            }
        }
        (format!("{bad} violations"), "0 violations".into())
    });
    rep
}

/// The uniqueness shadow: −B passes, sampled symmetric candidates fail,
/// and among diagonal sign matrices only ±1 solves the trace equation.
pub fn verify_uniqueness(kit: &FourierKit, sample_count: usize, seed: u64) -> Report {
    assert!(sample_count >= 1);
    let ring = kit.ring;
    let r = ring.rank();
    let mut rep = Report::new("fourier");
    rep.timed("fourier.unique.neg_b", "C = −B satisfies the quadratic identity", || {
        (kit.quadratic_residual(&kit.bb.scale(&rat(-1))).describe_residual(), "0".into())
    });
    rep.timed(
        "fourier.unique.samples",
        "seeded random symmetric C ≠ ±B all fail the quadratic identity",
        || {
            let mut g = Lcg::new(seed);
            let mut failed = 0usize;
            let mut drawn = 0usize;
            while drawn < sample_count {
                let mut m = ring.inverse_coeffs().clone();
                let mut delta_zero = true;
                for i in 0..r {
                    for j in i..r {
                        let d = rat(g.small_int(2));
                        if !d.is_zero() {
                            delta_zero = false;
                        }
                        m[(i, j)] += &d;
                        if i != j {
                            m[(j, i)] += &d;
                        }
                    }
                }
                if delta_zero {
                    continue; // C = B; resample
                }
                if m.scale(&rat(-1)) == *ring.inverse_coeffs() {
                    continue; // C = -B; resample
                }
                drawn += 1;
                if kit.quadratic_identity_fails(&m) {
                    failed += 1;
                }
            }
            (format!("{failed}/{drawn} fail"), format!("{sample_count}/{sample_count} fail"))
        },
    );
    rep.timed(
        "fourier.unique.trace_equation_pm_identity",
        "A = ±1 solves 2A² + tr(A)·A − (r+2) = 0",
        || {
            let n = r;
            let bad = [Rat::one(), -Rat::one()]
                .into_iter()
                .filter(|s| {
                    let a = Mat::identity(n).scale(s);
                    !trace_equation_residual(&a).is_zero()
                })
                .count();
            (format!("{bad} of 2 fail"), "0 of 2 fail".into())
        },
    );
    rep.timed(
        "fourier.unique.signs_small_rank",
        "diagonal sign matrices solving the trace equation at rank ≤ 6 are exactly ±1",
        || {
            let mut spurious = 0usize;
            for n in 1..=6usize {
                for mask in 0u32..(1u32 << n) {
                    let mut a = Mat::zero(n, n);
                    for i in 0..n {
                        a[(i, i)] = if mask & (1 << i) != 0 { -Rat::one() } else { Rat::one() };
                    }
                    let solves = trace_equation_residual(&a).is_zero();
                    let is_pm = mask == 0 || mask == (1 << n) - 1;
                    if solves != is_pm {
                        spurious += 1;
                    }
                }
            }
            (format!("{spurious} spurious solutions"), "0 spurious solutions".into())
        },
    );
    rep.timed(
        "fourier.unique.signs_full_rank",
        "diagonal sign matrices with k minus-signs solve the trace equation only for k = 0 or k = r",
        || {
            // for a sign matrix the equation reads tr(A)·a_ii = r for all i;
            // enumerate by the count of minus signs
            let mut spurious = 0usize;
            for k in 0..=r {
                let tr = rat(r as i64) - rat(2 * k as i64);
                let plus_ok = k < r && &tr * rat(1) == rat(r as i64);
                let minus_ok = k > 0 && &tr * rat(-1) == rat(r as i64);
                let solves = (k == 0 && plus_ok)
                    || (k == r && minus_ok)
                    || (k > 0 && k < r && plus_ok && minus_ok);
                let is_pm = k == 0 || k == r;
                if solves != is_pm {
                    spurious += 1;
                }
            }
            (format!("{spurious} spurious sign counts"), "0 spurious sign counts".into())
        },
    );
    rep
}

fn trace_equation_residual(a: &Mat) -> Mat {
    let n = a.rows;
    let tr = a.trace();
    a.mul(a)
        .scale(&rat(2))
        .add(&a.scale(&tr))
        .sub(&Mat::identity(n).scale(&rat((n + 2) as i64)))
}

/// Action-based triple vanishing for the powers of B with the rule
/// t + p + q = 4, plus the admissible negative control (2,1,1).
pub fn mck_vanishing(kit: &FourierKit) -> Report {
    let ring = kit.ring;
    let mut rep = Report::new("mck");
    let mut outcome: Option<TripleReport> = None;
    rep.timed(
        "mck.vanishing",
        "B^t ∘ [Δ_123] ∘ (p13*B^p · p24*B^q) = 0 whenever t+p+q ≠ 4, via actions on basis pairs",
        || {
            let tr = triple_vanishing_check(ring, &kit.powers, |t, p, q| t + p + q == 4);
            let line = format!(
                "{} forbidden triples, {} basis pairs, {} violations",
                tr.triples_checked,
                tr.pairs_checked,
                tr.violations.len()
            );
            let want = format!(
                "{} forbidden triples, {} basis pairs, 0 violations",
                tr.triples_checked, tr.pairs_checked
            );
            outcome = Some(tr);
            (line, want)
        },
    );
    rep.timed(
        "mck.negative_control",
        "the admissible triple (2,1,1) is nonzero on at least one basis pair",
        || {
            let mut found = false;
            'outer: for a in 0..ring.dim(6) {
                for b in 0..ring.dim(6) {
                    let u = act(ring, kit.power(1), &Cls::basis(ring, 6, a));
                    let v = act(ring, kit.power(1), &Cls::basis(ring, 6, b));
                    let z = u.cup(ring, &v);
                    if !act(ring, kit.power(2), &z).is_zero() {
                        found = true;
                        break 'outer;
                    }
                }
            }
            (
                if found { "nonzero pair found" } else { "all pairs vanish" }.into(),
                "nonzero pair found".into(),
            )
        },
    );
    rep
}
