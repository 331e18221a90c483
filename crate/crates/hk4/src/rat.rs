//! Exact rational scalars and small dense matrices over them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical rendering: lowest terms, positive denominator, integers
/// without the "/1".
pub fn render(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses "p/q" or a plain integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        m
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= c;
        }
        m
    }

    pub fn add_assign_scaled(&mut self, other: &Mat, c: &Rat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let row_of = |i: usize| -> Vec<Rat> {
            let mut acc = vec![Rat::zero(); other.cols];
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for (j, item) in acc.iter_mut().enumerate() {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        *item += a * b;
                    }
                }
            }
            acc
        };
        let rows: Vec<Vec<Rat>> = if self.rows * self.cols * other.cols >= 1 << 20 {
            use rayon::prelude::*;
            (0..self.rows).into_par_iter().map(row_of).collect()
        } else {
            (0..self.rows).map(row_of).collect()
        };
        Mat { rows: self.rows, cols: other.cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination on a
    /// rational working copy.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot else {
                return Rat::zero();
            };
            if p != col {
                for j in 0..n {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                }
                det = -det;
            }
            let pv = a[(col, col)].clone();
            det *= &pv;
            for r in (col + 1)..n {
                let f = &a[(r, col)] / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &a[(col, j)] * &f;
                    a[(r, j)] -= sub;
                }
            }
        }
        det
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if p != col {
                for j in 0..n {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                    let tmp = inv[(p, j)].clone();
                    inv[(p, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = tmp;
                }
            }
            let pv = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &pv;
                inv[(col, j)] /= &pv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let s = &a[(col, j)] * &f;
                    a[(r, j)] -= s;
                    let s = &inv[(col, j)] * &f;
                    inv[(r, j)] -= s;
                }
            }
        }
        Some(inv)
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// First nonzero entry in row-major order, for failure reports.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Rat)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() {
                    return Some((i, j, &self[(i, j)]));
                }
            }
        }
        None
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = String::new();
        for i in 0..self.rows {
            let _ = write!(s, "[{}] ", self.row(i).iter().map(render).collect::<Vec<_>>().join(" "));
        }
        write!(f, "Mat{}x{} {}", self.rows, self.cols, s)
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `a == c*b` for some scalar `c` (b nonzero); used for eigenline checks.
pub fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    assert_eq!(a.len(), b.len());
    let Some(k) = b.iter().position(|x| !x.is_zero()) else {
        return vec_is_zero(a);
    };
    let c = &a[k] / &b[k];
    a.iter().zip(b).all(|(x, y)| *x == y * &c)
}
