//! Rational quadratic spaces, their inverse forms, and the lattice
//! constructors used by the geometric models.

use crate::rat::{parse_rat, rat, render, Mat, Rat};
use num_traits::Zero;
use std::io::{BufRead, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QformError {
    #[error("rank must be a positive integer")]
    ZeroRank,
    #[error("gram table is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("gram table is degenerate (determinant 0)")]
    Degenerate,
    #[error("gram table has wrong shape: expected {expected}x{expected}, got {got_rows} rows, row {bad_row} has {got_cols} entries")]
    BadShape { expected: usize, got_rows: usize, bad_row: usize, got_cols: usize },
    #[error("intersection form has b0(h^2,h^2) = {0}, expected 3 (smooth cubic fourfold)")]
    WrongCubicDegree(String),
    #[error("h2 index {0} out of range for rank {1}")]
    BadH2Index(usize, usize),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parsing {path} line {line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
}

/// A rank-r nondegenerate symmetric bilinear form over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSpace {
    rank: usize,
    gram: Mat,
}

/// The exact inverse of a space's Gram table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseForm {
    coeffs: Mat,
}

impl QuadraticSpace {
    pub fn new(rank: usize, gram: Mat) -> Result<Self, QformError> {
        if rank == 0 {
            return Err(QformError::ZeroRank);
        }
        if gram.rows != rank || gram.cols != rank {
            return Err(QformError::BadShape {
                expected: rank,
                got_rows: gram.rows,
                bad_row: 0,
                got_cols: gram.cols,
            });
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(QformError::NotSymmetric(i, j));
                }
            }
        }
        if gram.det().is_zero() {
            return Err(QformError::Degenerate);
        }
        Ok(QuadraticSpace { rank, gram })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, QformError> {
        let rank = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(QformError::BadShape {
                    expected: rank,
                    got_rows: rank,
                    bad_row: i,
                    got_cols: row.len(),
                });
            }
        }
        QuadraticSpace::new(rank, Mat::from_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.gram[(i, j)]
    }

    /// q(x, y) for coordinate vectors.
    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> Rat {
        crate::rat::dot(&self.gram.mul_vec(y), x)
    }

    pub fn inverse_form(&self) -> InverseForm {
        // nondegeneracy was validated at construction
        let coeffs = self.gram.inverse().expect("validated nondegenerate");
        InverseForm { coeffs }
    }
}

impl InverseForm {
    pub fn coeffs(&self) -> &Mat {
        &self.coeffs
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.coeffs[(i, j)]
    }
}

/// Direct sum with a (-2) line; the new last index is the δ-slot.
pub fn k3hilb_lattice(k3: &QuadraticSpace) -> QuadraticSpace {
    let r = k3.rank();
    let mut g = Mat::zero(r + 1, r + 1);
    for i in 0..r {
        for j in 0..r {
            g[(i, j)] = k3.entry(i, j).clone();
        }
    }
    g[(r, r)] = rat(-2);
    QuadraticSpace::new(r + 1, g).expect("block sum of nondegenerate forms")
}

/// Beauville–Bogomolov lattice of the variety of lines from the middle
/// intersection form of the cubic: q(â,â') = b0(a,h²)b0(a',h²) − b0(a,a').
pub fn fano_lattice(b0: &QuadraticSpace, h2_index: usize) -> Result<QuadraticSpace, QformError> {
    let r = b0.rank();
    if h2_index >= r {
        return Err(QformError::BadH2Index(h2_index, r));
    }
    let d = b0.entry(h2_index, h2_index);
    if *d != rat(3) {
        return Err(QformError::WrongCubicDegree(render(d)));
    }
    let mut g = Mat::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            g[(i, j)] = b0.entry(i, h2_index) * b0.entry(j, h2_index) - b0.entry(i, j);
        }
    }
    QuadraticSpace::new(r, g)
}

/// Hyperbolic plane U.
pub fn u_lattice() -> Vec<Vec<Rat>> {
    vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]
}

/// E8 Cartan Gram, negated. Nodes ordered as in the Bourbaki diagram:
/// 1-3-4-5-6-7-8 chain with node 2 attached to node 4.
pub fn e8_minus_lattice() -> Vec<Vec<Rat>> {
    let adj: [(usize, usize); 7] = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut g = vec![vec![rat(0); 8]; 8];
    for i in 0..8 {
        g[i][i] = rat(-2);
    }
    for (a, b) in adj {
        g[a][b] = rat(1);
        g[b][a] = rat(1);
    }
    g
}

fn block_sum(blocks: &[Vec<Vec<Rat>>]) -> Vec<Vec<Rat>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut g = vec![vec![rat(0); n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                g[off + i][off + j] = x.clone();
            }
        }
        off += b.len();
    }
    g
}

/// The rank-22 K3 intersection form U^3 ⊕ E8(-1)^2.
pub fn k3_lattice() -> QuadraticSpace {
    let u = u_lattice();
    let e8 = e8_minus_lattice();
    QuadraticSpace::from_rows(block_sum(&[u.clone(), u.clone(), u, e8.clone(), e8]))
        .expect("unimodular K3 lattice")
}

/// Default stand-in intersection form for a cubic fourfold:
/// diag(3) ⊕ identity, h²-slot at index 0. Any nondegenerate choice with
/// b0(h²,h²)=3 verifies the same identities; the true lattice differs in
/// signature and discriminant only.
pub fn default_fano_b0() -> QuadraticSpace {
    let mut rows = vec![vec![rat(0); 23]; 23];
    rows[0][0] = rat(3);
    for i in 1..23 {
        rows[i][i] = rat(1);
    }
    QuadraticSpace::from_rows(rows).expect("diag(3) + identity")
}

pub fn identity_space(rank: usize) -> QuadraticSpace {
    QuadraticSpace::new(rank, Mat::identity(rank)).expect("identity form")
}

/// Headers recognised in a Gram-matrix file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GramHeaders {
    pub fujiki_scale: Option<Rat>,
    pub h2_index: Option<usize>,
}

/// Reads the exchange format: first line `rank r`, optional header lines
/// `fujiki_scale p/q` and `h2_index k`, then r lines of r rationals.
pub fn read_gram_file(path: &Path) -> Result<(QuadraticSpace, GramHeaders), QformError> {
    let io = |source| QformError::Io { path: path.display().to_string(), source };
    let file = std::fs::File::open(path).map_err(io)?;
    let reader = std::io::BufReader::new(file);
    let mut lines = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|source| QformError::Io {
            path: path.display().to_string(),
            source,
        })?;
        if !line.trim().is_empty() {
            lines.push(line);
        }
    }
    parse_gram_lines(&lines, &path.display().to_string())
}

pub fn parse_gram_lines(
    lines: &[String],
    path: &str,
) -> Result<(QuadraticSpace, GramHeaders), QformError> {
    let perr = |line: usize, msg: String| QformError::Parse { path: path.to_string(), line, msg };
    let mut it = lines.iter().enumerate();
    let (ln, first) = it.next().ok_or_else(|| perr(1, "empty file".into()))?;
    let rank: usize = first
        .trim()
        .strip_prefix("rank")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(ln + 1, format!("expected 'rank r', got '{first}'")))?;
    let mut headers = GramHeaders::default();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(rank);
    for (ln, line) in it {
        let t = line.trim();
        if let Some(v) = t.strip_prefix("fujiki_scale") {
            headers.fujiki_scale = Some(
                parse_rat(v).ok_or_else(|| perr(ln + 1, format!("bad rational '{v}'")))?,
            );
            continue;
        }
        if let Some(v) = t.strip_prefix("h2_index") {
            headers.h2_index = Some(
                v.trim().parse().map_err(|_| perr(ln + 1, format!("bad index '{v}'")))?,
            );
            continue;
        }
        let row: Option<Vec<Rat>> = t.split_whitespace().map(parse_rat).collect();
        let row = row.ok_or_else(|| perr(ln + 1, format!("bad matrix row '{t}'")))?;
        if row.len() != rank {
            return Err(QformError::BadShape {
                expected: rank,
                got_rows: rows.len() + 1,
                bad_row: rows.len(),
                got_cols: row.len(),
            });
        }
        rows.push(row);
    }
    if rows.len() != rank {
        return Err(QformError::BadShape {
            expected: rank,
            got_rows: rows.len(),
            bad_row: rows.len(),
            got_cols: rank,
        });
    }
    Ok((QuadraticSpace::from_rows(rows)?, headers))
}

/// Writes the exchange format; `read_gram_file` round-trips it exactly.
pub fn write_gram_file(
    path: &Path,
    space: &QuadraticSpace,
    headers: &GramHeaders,
) -> Result<(), QformError> {
    let io = |source| QformError::Io { path: path.display().to_string(), source };
    let mut f = std::fs::File::create(path).map_err(io)?;
    let mut body = format!("rank {}\n", space.rank());
    if let Some(c) = &headers.fujiki_scale {
        body.push_str(&format!("fujiki_scale {}\n", render(c)));
    }
    if let Some(k) = headers.h2_index {
        body.push_str(&format!("h2_index {k}\n"));
    }
    for i in 0..space.rank() {
        let row: Vec<String> = (0..space.rank()).map(|j| render(space.entry(i, j))).collect();
        body.push_str(&row.join(" "));
        body.push('\n');
    }
    f.write_all(body.as_bytes())
        .map_err(|source| QformError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn delta_line_is_valid() {
        let q = QuadraticSpace::from_rows(vec![vec![rat(-2)]]).unwrap();
        assert_eq!(q.inverse_form().entry(0, 0), &frac(-1, 2));
    }

    #[test]
    fn identity_is_valid_and_self_inverse() {
        let q = identity_space(2);
        assert_eq!(q.inverse_form().coeffs(), &Mat::identity(2));
    }

    #[test]
    fn rank_one_degenerate_rejected() {
        let err = QuadraticSpace::from_rows(vec![
            vec![rat(1), rat(1)],
            vec![rat(1), rat(1)],
        ])
        .unwrap_err();
        assert!(matches!(err, QformError::Degenerate));
    }

    #[test]
    fn asymmetric_rejected() {
        let err = QuadraticSpace::new(
            2,
            Mat::from_rows(vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]]),
        )
        .unwrap_err();
        assert!(matches!(err, QformError::NotSymmetric(1, 0)));
    }

    #[test]
    fn bad_shape_rejected() {
        let err = QuadraticSpace::from_rows(vec![vec![rat(1), rat(0)]]).unwrap_err();
        assert!(matches!(err, QformError::BadShape { .. }));
    }

    #[test]
    fn inverse_times_gram_is_identity() {
        let q = k3_lattice();
        let inv = q.inverse_form();
        assert_eq!(inv.coeffs().mul(q.gram()), Mat::identity(22));
    }

    #[test]
    fn scaled_line_inversion() {
        let q = QuadraticSpace::from_rows(vec![vec![rat(6)]]).unwrap();
        assert_eq!(q.inverse_form().entry(0, 0), &frac(1, 6));
    }

    #[test]
    fn k3hilb_block_assembly() {
        let q = QuadraticSpace::from_rows(vec![vec![rat(2)]]).unwrap();
        let h = k3hilb_lattice(&q);
        assert_eq!(h.gram(), &Mat::from_rows(vec![vec![rat(2), rat(0)], vec![rat(0), rat(-2)]]));
    }

    #[test]
    fn k3hilb_determinant_scales_by_minus_two() {
        // oracle: direct determinant computation on both sides
        let k3 = k3_lattice();
        let h = k3hilb_lattice(&k3);
        assert_eq!(h.gram().det(), k3.gram().det() * rat(-2));
        // the δ-slot is orthogonal to the K3 block
        let r = k3.rank();
        for i in 0..r {
            assert_eq!(h.entry(i, r), &rat(0));
            assert_eq!(h.entry(r, i), &rat(0));
        }
    }

    #[test]
    fn fano_lattice_default_values() {
        let b0 = default_fano_b0();
        let q = fano_lattice(&b0, 0).unwrap();
        // q(g,g) = 3*3 - 3 = 6
        assert_eq!(q.entry(0, 0), &rat(6));
        // primitive part orthogonal to g and equal to -b0 on it
        for i in 1..23 {
            assert_eq!(q.entry(0, i), &rat(0));
            for j in 1..23 {
                assert_eq!(q.entry(i, j), &(-b0.entry(i, j).clone()));
            }
        }
    }

    #[test]
    fn fano_lattice_wrong_degree_rejected() {
        let b0 = identity_space(23);
        assert!(matches!(fano_lattice(&b0, 0), Err(QformError::WrongCubicDegree(_))));
    }

    #[test]
    fn fano_lattice_permutation_equivariance() {
        use crate::rng::Lcg;
        let mut g = Lcg::new(7);
        // random symmetric b0 with h2-slot pinned at index 0
        let n = 6;
        let b0 = loop {
            let mut rows = vec![vec![rat(0); n]; n];
            rows[0][0] = rat(3);
            for i in 1..n {
                let d = g.small_int(4);
                rows[i][i] = rat(d);
                for j in 1..i {
                    let v = rat(g.small_int(2));
                    rows[i][j] = v.clone();
                    rows[j][i] = v;
                }
            }
            for j in 1..n {
                let v = rat(g.small_int(2));
                rows[0][j] = v.clone();
                rows[j][0] = v;
            }
            if let Ok(q) = QuadraticSpace::from_rows(rows) {
                break q;
            }
        };
        let q = fano_lattice(&b0, 0).unwrap();
        // permute the primitive block (fix index 0) and compare
        let perm: Vec<usize> = {
            let mut p: Vec<usize> = (1..n).collect();
            for i in (1..p.len()).rev() {
                let j = g.below((i + 1) as u64) as usize;
                p.swap(i, j);
            }
            let mut full = vec![0];
            full.extend(p);
            full
        };
        let mut rows = vec![vec![rat(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = b0.entry(perm[i], perm[j]).clone();
            }
        }
        let b0p = QuadraticSpace::from_rows(rows).unwrap();
        let qp = fano_lattice(&b0p, 0).unwrap();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(qp.entry(i, j), q.entry(perm[i], perm[j]));
            }
        }
    }
}
