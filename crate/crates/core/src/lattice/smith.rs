use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `A = U · D · V` with `U`, `V` unimodular and `D` in Smith normal form.
///
/// `left` and `right` are the inverses of `U` and `V`, so that
/// `left · A · right = D`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `D` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Elementary divisors greater than one.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| *x > BigInt::from(1)).collect()
    }
}

struct Work {
    a: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
    left: IntegerMatrix,
    right: IntegerMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.left.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.right.swap_cols(i, j);
        self.v.swap_rows(i, j);
    }

    /// `row[dst] += c · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.left.add_row_multiple(dst, src, c);
        self.u.add_col_multiple(src, dst, &-c);
    }

    /// `col[dst] += c · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.right.add_col_multiple(dst, src, c);
        self.v.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.left.negate_row(i);
        self.u.negate_col(i);
    }

    /// Position of the smallest nonzero absolute entry in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` outside the pivot. Returns false if a
    /// smaller remainder appeared and the pivot must be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let p = self.a.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t).clone();
            if x.is_zero() {
                continue;
            }
            let q = x.div_floor(&p);
            self.add_row(i, t, &-q);
            if !self.a.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j).clone();
            if x.is_zero() {
                continue;
            }
            let q = x.div_floor(&p);
            self.add_col(j, t, &-q);
            if !self.a.get(t, j).is_zero() {
                clean = false;
            }
        }
        clean
    }
}

/// Smith normal form over the integers.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
        left: IntegerMatrix::identity(m),
        right: IntegerMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.min_pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            if !w.clear_cross(t) {
                let (pi, pj) = w.min_pivot_cross(t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            let p = w.a.get(t, t).clone();
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
    }
    SmithDecomposition { u: w.u, d: w.a, v: w.v, left: w.left, right: w.right }
}

impl Work {
    /// Smallest nonzero entry on row `t` or column `t` (pivot included).
    fn min_pivot_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a.get(t, t).abs());
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t).abs();
            if !x.is_zero() && x < best.2 {
                best = (i, t, x);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j).abs();
            if !x.is_zero() && x < best.2 {
                best = (t, j, x);
            }
        }
        (best.0, best.1)
    }
}

/// Basis of `{x ∈ ℤⁿ : A·x = 0}` as the columns of the returned matrix.
///
/// The basis is saturated: it is part of a unimodular basis of ℤⁿ.
pub fn integer_kernel_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let cols: Vec<usize> = (rank..a.cols()).collect();
    snf.right.select_columns(&cols)
}
