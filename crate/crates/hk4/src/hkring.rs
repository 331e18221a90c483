//! The even cohomology ring of a hyperkähler fourfold whose ring is
//! generated in degree 2: H0 ⊕ H2 ⊕ H4 ⊕ H6 ⊕ H8 with H4 = Sym²H2 and
//! H3 = 0. All quadruple integrals of degree-2 classes are given by the
//! polarized Fujiki relation
//!
//!   ∫ a·b·c·d = c_F (q(a,b)q(c,d) + q(a,c)q(b,d) + q(a,d)q(b,c)),
//!
//! and every other product is forced from it by Poincaré duality.
//!
//! Basis conventions. Degree 2 uses the basis v_1..v_r of the underlying
//! quadratic space. Degree 4 uses the Sym² basis v_i v_j (i ≤ j) with no
//! implicit factor of 2: a class is Σ_{i≤j} m_ij v_i v_j. Degree 6 is
//! stored in the dual basis v_k^∨ defined by ∫ v_k^∨ · v_j = δ_kj.
//! Degree 8 is the coefficient of the point class, ∫ `[pt]` = 1.

use crate::qform::QuadraticSpace;
use crate::rat::{Mat, Rat};
use crate::ring::{Cls, GradedRing, RingError};
use num_traits::{One, Zero};

pub struct HKRing {
    space: QuadraticSpace,
    c_f: Rat,
    inv: Mat,
    r: usize,
    pairs: Vec<(usize, usize)>,
    pair_idx: Vec<Vec<usize>>,
    pairing4: Mat,
    pairing4_inv: Mat,
}

impl HKRing {
    /// Builds the ring and validates that the degree-4 intersection
    /// pairing is invertible (it is, for any nondegenerate form; the
    /// constructed inverse is checked against the Gram matrix exactly).
    pub fn new(space: QuadraticSpace, fujiki_scale: Rat) -> Result<Self, RingError> {
        if fujiki_scale <= Rat::zero() {
            return Err(RingError::NonPositiveFujiki(crate::rat::render(&fujiki_scale)));
        }
        let r = space.rank();
        let inv = space.inverse_form().coeffs().clone();
        let mut pairs = Vec::with_capacity(r * (r + 1) / 2);
        let mut pair_idx = vec![vec![0usize; r]; r];
        for i in 0..r {
            for j in i..r {
                pair_idx[i][j] = pairs.len();
                pair_idx[j][i] = pairs.len();
                pairs.push((i, j));
            }
        }
        let n = pairs.len();
        let mut pairing4 = Mat::zero(n, n);
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if b < a {
                    pairing4[(a, b)] = pairing4[(b, a)].clone();
                    continue;
                }
                pairing4[(a, b)] = fujiki4_units(&space, &fujiki_scale, i, j, k, l);
            }
        }
        let mut ring = HKRing {
            space,
            c_f: fujiki_scale,
            inv,
            r,
            pairs,
            pair_idx,
            pairing4,
            pairing4_inv: Mat::zero(n, n),
        };
        // Invert the middle pairing through the closed form implied by the
        // Fujiki relation, then certify G·G⁻¹ = 1 column by column.
        let mut inv4 = Mat::zero(n, n);
        for a in 0..n {
            let col = ring.pairing4.col(a);
            let sol = ring
                .solve4(&col)
                .ok_or(RingError::DegenerateMiddlePairing)?;
            for (b, x) in sol.into_iter().enumerate() {
                inv4[(b, a)] = x;
            }
            // solve4(G e_a) must reproduce the unit vector exactly
            for (b, x) in inv4.col(a).iter().enumerate() {
                let want = if a == b { Rat::one() } else { Rat::zero() };
                if *x != want {
                    return Err(RingError::DegenerateMiddlePairing);
                }
            }
        }
        // columns solved from unit functionals give the actual inverse
        let mut g4_inv = Mat::zero(n, n);
        for a in 0..n {
            let mut f = vec![Rat::zero(); n];
            f[a] = Rat::one();
            let sol = ring.solve4(&f).ok_or(RingError::DegenerateMiddlePairing)?;
            for (b, x) in sol.into_iter().enumerate() {
                g4_inv[(b, a)] = x;
            }
        }
        ring.pairing4_inv = g4_inv;
        Ok(ring)
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn fujiki_scale(&self) -> &Rat {
        &self.c_f
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn inverse_coeffs(&self) -> &Mat {
        &self.inv
    }

    pub fn sym2_dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn sym2_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        self.pair_idx[i][j]
    }

    pub fn pairing4_gram(&self) -> &Mat {
        &self.pairing4
    }

    pub fn pairing4_inv(&self) -> &Mat {
        &self.pairing4_inv
    }

    /// q(x, y) on degree-2 coordinates.
    pub fn q(&self, x: &[Rat], y: &[Rat]) -> Rat {
        self.space.eval(x, y)
    }

    /// The polarized Fujiki quadruple integral ∫ a·b·c·d.
    pub fn fujiki4(&self, a: &[Rat], b: &[Rat], c: &[Rat], d: &[Rat]) -> Rat {
        let t = self.q(a, b) * self.q(c, d)
            + self.q(a, c) * self.q(b, d)
            + self.q(a, d) * self.q(b, c);
        &self.c_f * t
    }

    /// b = ι_Δ*B: the inverse form as a degree-4 class, off-diagonal
    /// coefficients doubled by the Sym² convention.
    pub fn b_class(&self) -> Cls {
        let mut m = vec![Rat::zero(); self.sym2_dim()];
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            m[a] = if i == j {
                self.inv[(i, i)].clone()
            } else {
                &self.inv[(i, j)] * crate::rat::rat(2)
            };
        }
        Cls::from_component(4, m)
    }

    /// Degree-4 coordinates as a symmetric matrix X with
    /// class = Σ_{k,l} X_kl v_k v_l (full double sum).
    pub fn sym_to_mat(&self, m: &[Rat]) -> Mat {
        let mut x = Mat::zero(self.r, self.r);
        let half = crate::rat::frac(1, 2);
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            if i == j {
                x[(i, i)] = m[a].clone();
            } else {
                let v = &m[a] * &half;
                x[(i, j)] = v.clone();
                x[(j, i)] = v;
            }
        }
        x
    }

    pub fn mat_to_sym(&self, x: &Mat) -> Vec<Rat> {
        let mut m = vec![Rat::zero(); self.sym2_dim()];
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            m[a] = if i == j {
                x[(i, i)].clone()
            } else {
                &x[(i, j)] + &x[(j, i)]
            };
        }
        m
    }

    /// Solves ∫ x · (v_k v_l) = T_kl for a degree-4 class. The closed form
    /// comes from the Fujiki relation: with X the unknown as a symmetric
    /// matrix, T = c_F ( tr(QX)·Q + 2·QXQ ).
    fn solve4(&self, f: &[Rat]) -> Option<Vec<Rat>> {
        if f.len() != self.sym2_dim() {
            return None;
        }
        let q = self.space.gram();
        let mut t = Mat::zero(self.r, self.r);
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            t[(i, j)] = f[a].clone();
            t[(j, i)] = f[a].clone();
        }
        // tr(Q⁻¹ T) = c_F (r + 2) tr(QX)
        let tr = self.inv.mul(&t).trace();
        let denom = &self.c_f * crate::rat::rat((self.r + 2) as i64);
        let trqx = tr / denom;
        // S = QXQ = (T/c_F − tr(QX)·Q)/2
        let half = crate::rat::frac(1, 2);
        let s = t
            .scale(&(Rat::one() / &self.c_f))
            .sub(&q.scale(&trqx))
            .scale(&half);
        let x = self.inv.mul(&s).mul(&self.inv);
        Some(self.mat_to_sym(&x))
    }

    /// Degree-6 class with dual coordinates q(alpha, ·).
    pub fn dual_of(&self, alpha: &[Rat]) -> Cls {
        Cls::from_component(6, self.space.gram().mul_vec(alpha))
    }
}

fn fujiki4_units(
    space: &QuadraticSpace,
    c_f: &Rat,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Rat {
    let q = |a: usize, b: usize| space.entry(a, b);
    let t = q(i, j) * q(k, l) + q(i, k) * q(j, l) + q(i, l) * q(j, k);
    c_f * t
}

impl GradedRing for HKRing {
    fn top(&self) -> usize {
        8
    }

    fn dim(&self, degree: usize) -> usize {
        match degree {
            0 | 8 => 1,
            2 | 6 => self.r,
            4 => self.sym2_dim(),
            _ => 0,
        }
    }

    fn cup_units(&self, d1: usize, i: usize, d2: usize, j: usize) -> Vec<(usize, Rat)> {
        match (d1, d2) {
            (0, _) => vec![(j, Rat::one())],
            (_, 0) => vec![(i, Rat::one())],
            (2, 2) => vec![(self.pair_idx[i][j], Rat::one())],
            (2, 4) | (4, 2) => {
                let (pair, v) = if d1 == 4 { (i, j) } else { (j, i) };
                let (a, b) = self.pairs[pair];
                (0..self.r)
                    .filter_map(|m| {
                        let c = fujiki4_units(&self.space, &self.c_f, a, b, v, m);
                        (!c.is_zero()).then_some((m, c))
                    })
                    .collect()
            }
            (2, 6) | (6, 2) => {
                if i == j {
                    vec![(0, Rat::one())]
                } else {
                    vec![]
                }
            }
            (4, 4) => {
                let c = self.pairing4[(i, j)].clone();
                if c.is_zero() {
                    vec![]
                } else {
                    vec![(0, c)]
                }
            }
            _ => vec![],
        }
    }

    fn cup_comp(&self, d1: usize, x: &[Rat], d2: usize, y: &[Rat]) -> Vec<Rat> {
        match (d1, d2) {
            // closed forms through the symmetric-matrix picture
            (2, 4) | (4, 2) => {
                let (m4, v2) = if d1 == 4 { (x, y) } else { (y, x) };
                let xm = self.sym_to_mat(m4);
                let q = self.space.gram();
                let qx = q.mul(&xm);
                let tr = qx.trace();
                let qv = q.mul_vec(v2);
                let kxv = qx.mul(q).mul_vec(v2);
                (0..self.r)
                    .map(|m| &self.c_f * (&tr * &qv[m] + crate::rat::rat(2) * &kxv[m]))
                    .collect()
            }
            (4, 4) => {
                let w = self.pairing_apply(4, y);
                vec![crate::rat::dot(x, &w)]
            }
            _ => {
                // generic expansion over sparse unit products
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
        }
    }

    fn pairing_apply(&self, d: usize, x: &[Rat]) -> Vec<Rat> {
        match d {
            0 | 2 | 6 | 8 => x.to_vec(),
            4 => self.pairing4.mul_vec(x),
            _ => panic!("bad degree {d}"),
        }
    }

    fn pairing_solve(&self, d: usize, f: &[Rat]) -> Result<Vec<Rat>, RingError> {
        let expected = self.dim(self.top() - d);
        if f.len() != expected {
            return Err(RingError::DimensionMismatch { degree: d, expected, got: f.len() });
        }
        match d {
            0 | 2 | 6 | 8 => Ok(f.to_vec()),
            4 => self.solve4(f).ok_or(RingError::DegeneratePairing(4)),
            _ => Err(RingError::BadDegree(d)),
        }
    }

    fn cup_unit_width(&self, d1: usize, d2: usize) -> usize {
        match (d1, d2) {
            (2, 4) | (4, 2) => self.r,
            _ => 1,
        }
    }

    fn cup_block_override(
        &self,
        shape_a: (usize, usize),
        a: &Mat,
        shape_b: (usize, usize),
        b: &Mat,
    ) -> Option<Mat> {
        // both-middle products contract through the Fujiki closed form;
        // the Künneth product is commutative here, so normalize the order
        match (shape_a, shape_b) {
            ((4, 4), (2, 2)) => Some(self.cup44_22(a, b)),
            ((2, 2), (4, 4)) => Some(self.cup44_22(b, a)),
            _ => None,
        }
    }
}

impl HKRing {
    /// Product of a (4,4) block A against a (2,2) block C into (6,6):
    /// R[m][n] = Σ A[α][β] C[c][d] · f4(α, c, m) · f4(β, d, n), evaluated
    /// through tr(QX)/QXQ data instead of the quartic loop.
    fn cup44_22(&self, a: &Mat, c: &Mat) -> Mat {
        use rayon::prelude::*;
        let r = self.r;
        let n = self.sym2_dim();
        let q = self.space.gram();
        let two = crate::rat::rat(2);
        // stage 1: per column β of A, the invariants of the column class
        let cols: Vec<(Rat, Mat)> = (0..n)
            .into_par_iter()
            .map(|beta| {
                let x = self.sym_to_mat(&a.col(beta));
                let qx = q.mul(&x);
                let tr = qx.trace();
                let k = qx.mul(q);
                (tr, k)
            })
            .collect();
        let cq = c.mul(q);
        // stages 2+3: for each (cc, m), collapse the β-sum into one more
        // closed-form pass, then contract against C's row cc
        let rows: Vec<Vec<Rat>> = (0..r)
            .into_par_iter()
            .map(|m| {
                let mut row = vec![Rat::zero(); r];
                for cc in 0..r {
                    if (0..r).all(|d| c[(cc, d)].is_zero()) {
                        continue;
                    }
                    let mut w = vec![Rat::zero(); n];
                    for (beta, item) in w.iter_mut().enumerate() {
                        let (tr, k) = &cols[beta];
                        *item = &self.c_f * (tr * &q[(cc, m)] + &two * &k[(m, cc)]);
                    }
                    let v = self.sym_to_mat(&w);
                    let qv = q.mul(&v);
                    let s2 = qv.trace();
                    let k2 = qv.mul(q);
                    for (nn, item) in row.iter_mut().enumerate() {
                        let mut dotsum = Rat::zero();
                        for d in 0..r {
                            if !c[(cc, d)].is_zero() && !k2[(d, nn)].is_zero() {
                                dotsum += &c[(cc, d)] * &k2[(d, nn)];
                            }
                        }
                        *item += &self.c_f * (&s2 * &cq[(cc, nn)] + &two * dotsum);
                    }
                }
                row
            })
            .collect();
        Mat::from_rows(rows)
    }
}
