//! Signed permutation matrices, the compact form of every involution and
//! conjugating isometry used in the classification.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::lattice::IntegerMatrix;

/// A matrix sending `e_j` to `sign[j] · e_{target[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    target: Vec<u8>,
    sign: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self { target: (0..n as u8).collect(), sign: alloc::vec![1; n] }
    }

    pub fn from_parts(target: Vec<u8>, sign: Vec<i8>) -> Self {
        debug_assert_eq!(target.len(), sign.len());
        Self { target, sign }
    }

    /// Recognizes a signed permutation matrix.
    pub fn from_matrix(m: &IntegerMatrix) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let n = m.rows();
        let mut target = Vec::with_capacity(n);
        let mut sign = Vec::with_capacity(n);
        let mut seen = alloc::vec![false; n];
        for j in 0..n {
            let mut hit = None;
            for i in 0..n {
                let x = m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let s = if x.is_one() {
                    1
                } else if *x == -BigInt::one() {
                    -1
                } else {
                    return None;
                };
                if hit.is_some() || seen[i] {
                    return None;
                }
                hit = Some((i, s));
            }
            let (i, s) = hit?;
            seen[i] = true;
            target.push(i as u8);
            sign.push(s);
        }
        Some(Self { target, sign })
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// `±(k+1)` for each `e_j ↦ ±e_k`.
    pub fn signed_images(&self) -> Vec<i16> {
        self.target.iter().zip(&self.sign).map(|(&t, &s)| i16::from(s) * (i16::from(t) + 1)).collect()
    }

    pub fn to_matrix(&self) -> IntegerMatrix {
        let n = self.dim();
        let mut m = IntegerMatrix::zeros(n, n);
        for j in 0..n {
            m.set(self.target[j] as usize, j, BigInt::from(self.sign[j]));
        }
        m
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.dim();
        let mut target = Vec::with_capacity(n);
        let mut sign = Vec::with_capacity(n);
        for j in 0..n {
            let k = other.target[j] as usize;
            target.push(self.target[k]);
            sign.push(other.sign[j] * self.sign[k]);
        }
        Self { target, sign }
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut target = alloc::vec![0u8; n];
        let mut sign = alloc::vec![0i8; n];
        for j in 0..n {
            let i = self.target[j] as usize;
            target[i] = j as u8;
            sign[i] = self.sign[j];
        }
        Self { target, sign }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.target.iter().enumerate().all(|(j, &t)| t as usize == j) && self.sign.iter().all(|&s| s == 1)
    }

    /// Dense row-major entries, the ordering key for canonical forms.
    pub fn row_major(&self) -> Vec<i8> {
        let n = self.dim();
        let mut out = alloc::vec![0i8; n * n];
        for j in 0..n {
            out[self.target[j] as usize * n + j] = self.sign[j];
        }
        out
    }

    /// Direct sum acting on the concatenated coordinates.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let off = self.dim() as u8;
        let mut target = self.target.clone();
        target.extend(other.target.iter().map(|t| t + off));
        let mut sign = self.sign.clone();
        sign.extend_from_slice(&other.sign);
        Self { target, sign }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip_and_product() {
        let a = IntegerMatrix::from_rows(&[[0, -1, 0], [1, 0, 0], [0, 0, -1]]);
        let b = IntegerMatrix::from_rows(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
        let pa = SignedPermutation::from_matrix(&a).unwrap();
        let pb = SignedPermutation::from_matrix(&b).unwrap();
        assert_eq!(pa.to_matrix(), a);
        assert_eq!(pa.compose(&pb).to_matrix(), &a * &b);
        assert!(pa.compose(&pa.inverse()).is_identity());
        assert!(SignedPermutation::from_matrix(&IntegerMatrix::from_rows(&[[2]])).is_none());
    }
}
