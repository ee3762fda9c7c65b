use num_bigint::BigInt;
use num_integer::Integer;

use super::form::{signature_of, Signature};
use super::matrix::IntegerMatrix;

/// Edges of the E₈ Dynkin diagram in Bourbaki labeling:
/// the chain 1–3–4–5–6–7–8 with node 2 attached to node 4 (zero-based here).
pub const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

/// An integral lattice given by its Gram matrix in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: IntegerMatrix,
}

impl GramLattice {
    /// # Panics
    /// Panics if `gram` is not symmetric.
    pub fn new(gram: IntegerMatrix) -> Self {
        assert!(gram.is_symmetric(), "Gram matrix must be symmetric");
        Self { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntegerMatrix {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn signature(&self) -> Signature {
        signature_of(&self.gram)
    }
}

/// The hyperbolic plane `H`.
pub fn hyperbolic_plane() -> GramLattice {
    GramLattice::new(IntegerMatrix::from_rows(&[[0, 1], [1, 0]]))
}

/// Negative of the E₈ Cartan matrix.
pub fn minus_e8() -> GramLattice {
    let mut g = IntegerMatrix::from_diagonal(&[-2; 8]);
    for &(i, j) in &E8_EDGES {
        g.set(i, j, BigInt::from(1));
        g.set(j, i, BigInt::from(1));
    }
    GramLattice::new(g)
}

/// Rank-one lattice `⟨k⟩`.
pub fn rank_one(k: i64) -> GramLattice {
    GramLattice::new(IntegerMatrix::from_rows(&[[k]]))
}

/// `L(k)`: the form multiplied by `k`.
pub fn rescale(lattice: &GramLattice, k: i64) -> GramLattice {
    GramLattice::new(lattice.gram.scale(&BigInt::from(k)))
}

pub fn direct_sum(a: &GramLattice, b: &GramLattice) -> GramLattice {
    GramLattice::new(a.gram.block_diag(&b.gram))
}

/// `3H ⊕ 2(−E₈)` with basis ordered as the three hyperbolic planes
/// followed by the two `−E₈` summands.
pub fn k3_gram() -> GramLattice {
    let h = hyperbolic_plane();
    let e = minus_e8();
    let three_h = direct_sum(&direct_sum(&h, &h), &h);
    direct_sum(&three_h, &direct_sum(&e, &e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_is_unimodular() {
        assert_eq!(minus_e8().determinant(), BigInt::from(1));
    }
}
