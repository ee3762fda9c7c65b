//! The simple involutions of the K3 lattice and their fixed-lattice invariants.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::InvolutionError;
use crate::lattice::{discriminant_data, integer_kernel_basis, k3_gram, signature_of, DiscriminantData, IntegerMatrix};
use crate::perm::SignedPermutation;

/// One of the four admissible 2×2 blocks on a hyperbolic plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MBlock {
    M1,
    M2,
    M3,
    M4,
}

impl MBlock {
    pub const ALL: [MBlock; 4] = [MBlock::M1, MBlock::M2, MBlock::M3, MBlock::M4];

    pub fn from_index(i: u8) -> Result<Self, InvolutionError> {
        match i {
            1 => Ok(Self::M1),
            2 => Ok(Self::M2),
            3 => Ok(Self::M3),
            4 => Ok(Self::M4),
            _ => Err(InvolutionError::IndexOutOfRange { index: i, min: 1, max: 4 }),
        }
    }

    pub fn index(self) -> u8 {
        self as u8 + 1
    }

    fn perm(self) -> SignedPermutation {
        match self {
            Self::M1 => SignedPermutation::from_parts(alloc::vec![0, 1], alloc::vec![1, 1]),
            Self::M2 => SignedPermutation::from_parts(alloc::vec![0, 1], alloc::vec![-1, -1]),
            Self::M3 => SignedPermutation::from_parts(alloc::vec![1, 0], alloc::vec![1, 1]),
            Self::M4 => SignedPermutation::from_parts(alloc::vec![1, 0], alloc::vec![-1, -1]),
        }
    }
}

/// `M₁ = I`, `M₂ = −I`, `M₃ = [[0,1],[1,0]]`, `M₄ = [[0,−1],[−1,0]]`.
pub fn m_matrix(i: u8) -> Result<IntegerMatrix, InvolutionError> {
    Ok(MBlock::from_index(i)?.perm().to_matrix())
}

/// The two hyperbolic planes exchanged by a swap form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SwapPair {
    H12,
    H13,
    H23,
}

impl SwapPair {
    pub const ALL: [SwapPair; 3] = [SwapPair::H12, SwapPair::H13, SwapPair::H23];

    /// `(first, second, untouched)` plane indices, zero-based.
    pub fn planes(self) -> (usize, usize, usize) {
        match self {
            Self::H12 => (0, 1, 2),
            Self::H13 => (0, 2, 1),
            Self::H23 => (1, 2, 0),
        }
    }
}

/// Action on `3H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RhoPrimeSpec {
    Diagonal([MBlock; 3]),
    /// `M_k` between the swapped planes, `M_m` on the remaining one.
    Swap {
        pair: SwapPair,
        k: MBlock,
        m: MBlock,
    },
}

impl RhoPrimeSpec {
    pub fn diagonal(j: u8, k: u8, l: u8) -> Result<Self, InvolutionError> {
        Ok(Self::Diagonal([MBlock::from_index(j)?, MBlock::from_index(k)?, MBlock::from_index(l)?]))
    }

    pub fn swap(pair: SwapPair, k: u8, m: u8) -> Result<Self, InvolutionError> {
        Ok(Self::Swap { pair, k: MBlock::from_index(k)?, m: MBlock::from_index(m)? })
    }

    /// All 64 diagonal and 48 swap forms.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(112);
        for a in MBlock::ALL {
            for b in MBlock::ALL {
                for c in MBlock::ALL {
                    out.push(Self::Diagonal([a, b, c]));
                }
            }
        }
        for pair in SwapPair::ALL {
            for k in MBlock::ALL {
                for m in MBlock::ALL {
                    out.push(Self::Swap { pair, k, m });
                }
            }
        }
        out
    }

    pub fn is_swap(&self) -> bool {
        matches!(self, Self::Swap { .. })
    }

    pub fn perm(&self) -> SignedPermutation {
        let mut target = alloc::vec![0u8; 6];
        let mut sign = alloc::vec![0i8; 6];
        let mut place = |from: usize, to: usize, block: MBlock| {
            let p = block.perm();
            let pm = p.to_matrix();
            for c in 0..2 {
                for r in 0..2 {
                    let x = pm.get(r, c);
                    if !x.is_zero() {
                        target[2 * from + c] = (2 * to + r) as u8;
                        sign[2 * from + c] = if x.is_one() { 1 } else { -1 };
                    }
                }
            }
        };
        match *self {
            Self::Diagonal(blocks) => {
                for (i, b) in blocks.into_iter().enumerate() {
                    place(i, i, b);
                }
            }
            Self::Swap { pair, k, m } => {
                let (p, q, s) = pair.planes();
                place(p, q, k);
                place(q, p, k);
                place(s, s, m);
            }
        }
        SignedPermutation::from_parts(target, sign)
    }

    pub fn matrix(&self) -> IntegerMatrix {
        self.perm().to_matrix()
    }
}

impl fmt::Display for RhoPrimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Diagonal([a, b, c]) => write!(f, "diag({},{},{})", a.index(), b.index(), c.index()),
            Self::Swap { pair, k, m } => {
                let (p, q, _) = pair.planes();
                write!(f, "swap(H{}H{};{},{})", p + 1, q + 1, k.index(), m.index())
            }
        }
    }
}

/// Action on `2(−E₈)`, one of the six forms `ρ″₁ … ρ″₆`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RhoDoublePrimeSpec(u8);

impl RhoDoublePrimeSpec {
    pub fn new(t: u8) -> Result<Self, InvolutionError> {
        if (1..=6).contains(&t) {
            Ok(Self(t))
        } else {
            Err(InvolutionError::IndexOutOfRange { index: t, min: 1, max: 6 })
        }
    }

    pub fn all() -> [Self; 6] {
        [Self(1), Self(2), Self(3), Self(4), Self(5), Self(6)]
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn perm(&self) -> SignedPermutation {
        let (swap, s1, s2): (bool, i8, i8) = match self.0 {
            1 => (false, 1, 1),
            2 => (false, 1, -1),
            3 => (false, -1, 1),
            4 => (false, -1, -1),
            5 => (true, 1, 1),
            _ => (true, -1, -1),
        };
        let target = (0..16u8).map(|j| if swap { (j + 8) % 16 } else { j }).collect();
        let sign = (0..16).map(|j| if j < 8 { s1 } else { s2 }).collect();
        SignedPermutation::from_parts(target, sign)
    }

    pub fn matrix(&self) -> IntegerMatrix {
        self.perm().to_matrix()
    }
}

impl fmt::Display for RhoDoublePrimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho''{}", self.0)
    }
}

/// An involution `ρ = ρ′ ⊕ ρ″` of the K3 lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Involution {
    pub matrix: IntegerMatrix,
    pub prime: RhoPrimeSpec,
    pub double_prime: RhoDoublePrimeSpec,
}

impl K3Involution {
    pub fn perm(&self) -> SignedPermutation {
        self.prime.perm().direct_sum(&self.double_prime.perm())
    }
}

/// Assembles and validates `ρ′ ⊕ ρ″`.
pub fn build_involution(
    prime: RhoPrimeSpec,
    double_prime: RhoDoublePrimeSpec,
) -> Result<K3Involution, InvolutionError> {
    let matrix = prime.matrix().block_diag(&double_prime.matrix());
    check_isometric_involution(&matrix)?;
    Ok(K3Involution { matrix, prime, double_prime })
}

/// Checks `A² = I` and `AᵀGA = G` for the K3 form.
pub fn check_isometric_involution(a: &IntegerMatrix) -> Result<(), InvolutionError> {
    if !(a * a).is_identity() {
        return Err(InvolutionError::Internal("matrix is not an involution".to_string()));
    }
    let g = k3_gram();
    if g.gram().congruent(a) != *g.gram() {
        return Err(InvolutionError::Internal("matrix is not an isometry".to_string()));
    }
    Ok(())
}

/// Primitive sublattice fixed by an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSublattice {
    /// Basis vectors as columns in ambient coordinates.
    pub basis: IntegerMatrix,
    pub gram: IntegerMatrix,
}

impl FixedSublattice {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }
}

/// Fixed sublattice of `matrix` inside the lattice with Gram matrix `ambient`.
pub fn fixed_sublattice_of(matrix: &IntegerMatrix, ambient: &IntegerMatrix) -> FixedSublattice {
    let n = matrix.rows();
    let basis = integer_kernel_basis(&(matrix - &IntegerMatrix::identity(n)));
    let gram = ambient.congruent(&basis);
    FixedSublattice { basis, gram }
}

pub fn fixed_sublattice(inv: &K3Involution) -> FixedSublattice {
    fixed_sublattice_of(&inv.matrix, k3_gram().gram())
}

/// The invariants `(r, a, δ)` of a 2-elementary lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoElementaryInvariants {
    pub r: u32,
    pub a: u32,
    pub delta: u8,
    pub hyperbolic: bool,
}

impl TwoElementaryInvariants {
    pub fn triple(&self) -> (u32, u32, u8) {
        (self.r, self.a, self.delta)
    }

    /// Direct-sum rule `(r₁+r₂, a₁+a₂, max δ)`; hyperbolicity is not additive
    /// and is left to the caller.
    pub fn combine(&self, other: &Self, hyperbolic: bool) -> Self {
        Self { r: self.r + other.r, a: self.a + other.a, delta: self.delta.max(other.delta), hyperbolic }
    }
}

impl fmt::Display for TwoElementaryInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.a, self.delta)
    }
}

/// Invariants of a fixed lattice; δ is computed over every coset.
pub fn invariants_of(fixed: &FixedSublattice) -> Result<TwoElementaryInvariants, InvolutionError> {
    invariants_of_gram(&fixed.gram)
}

pub fn invariants_of_gram(gram: &IntegerMatrix) -> Result<TwoElementaryInvariants, InvolutionError> {
    let r = gram.rows();
    if r == 0 {
        return Ok(TwoElementaryInvariants { r: 0, a: 0, delta: 0, hyperbolic: false });
    }
    let disc = discriminant_data(gram)?;
    check_two_elementary(&disc)?;
    let delta = delta_brute_force(gram, &disc);
    let hyperbolic = signature_of(gram).is_hyperbolic();
    Ok(TwoElementaryInvariants { r: r as u32, a: disc.invariant_factors.len() as u32, delta, hyperbolic })
}

fn check_two_elementary(disc: &DiscriminantData) -> Result<(), InvolutionError> {
    match disc.invariant_factors.iter().find(|d| **d != BigInt::from(2)) {
        Some(d) => Err(InvolutionError::NotTwoElementary { factor: d.to_string() }),
        None => Ok(()),
    }
}

/// δ over all `2ᵃ` cosets: 0 iff every element of `L*/L` has integral norm.
///
/// Norms of `Σ cᵢ gᵢ` are evaluated through the Gram matrix of the generators.
pub fn delta_brute_force(gram: &IntegerMatrix, disc: &DiscriminantData) -> u8 {
    let gens = &disc.coset_representatives;
    let a = gens.len();
    if a == 0 {
        return 0;
    }
    let den = gens.iter().fold(BigInt::one(), |l, g| l.lcm(&g.denominator));
    let scaled: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            let s = &den / &g.denominator;
            g.numerators.iter().map(|x| x * &s).collect()
        })
        .collect();
    let b: Vec<Vec<BigInt>> = scaled.iter().map(|x| scaled.iter().map(|y| gram.bilinear(x, y)).collect()).collect();
    let den2 = &den * &den;
    let moduli: Vec<u64> = disc.invariant_factors.iter().map(|d| u64::try_from(d).unwrap_or(2)).collect();
    let mut coeffs = alloc::vec![0u64; a];
    loop {
        let mut norm = BigInt::zero();
        for i in 0..a {
            if coeffs[i] == 0 {
                continue;
            }
            for j in 0..a {
                if coeffs[j] != 0 {
                    norm += &b[i][j] * BigInt::from(coeffs[i] * coeffs[j]);
                }
            }
        }
        if !norm.is_multiple_of(&den2) {
            return 1;
        }
        let mut i = 0;
        loop {
            if i == a {
                return 0;
            }
            coeffs[i] += 1;
            if coeffs[i] < moduli[i] {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// δ from the generators alone; equals [`delta_brute_force`] on 2-elementary lattices.
pub fn delta_from_generators(gram: &IntegerMatrix, disc: &DiscriminantData) -> u8 {
    u8::from(disc.coset_representatives.iter().any(|g| !g.norm_is_integral(gram)))
}

/// Fixed lattice is 2-elementary and hyperbolic.
pub fn is_simple_nonsymplectic_candidate(inv: &K3Involution) -> bool {
    invariants_of(&fixed_sublattice(inv)).is_ok_and(|t| t.hyperbolic)
}

/// Invariants of the fixed lattice of `ρ′` inside `3H`.
pub fn prime_invariants(spec: &RhoPrimeSpec) -> Result<TwoElementaryInvariants, InvolutionError> {
    let g = three_h_gram();
    invariants_of(&fixed_sublattice_of(&spec.matrix(), &g))
}

/// Invariants of the fixed lattice of `ρ″` inside `2(−E₈)`.
pub fn double_prime_invariants(spec: &RhoDoublePrimeSpec) -> Result<TwoElementaryInvariants, InvolutionError> {
    let g = two_e8_gram();
    invariants_of(&fixed_sublattice_of(&spec.matrix(), &g))
}

pub(crate) fn three_h_gram() -> IntegerMatrix {
    k3_gram().gram().submatrix(0..6, 0..6)
}

pub(crate) fn two_e8_gram() -> IntegerMatrix {
    k3_gram().gram().submatrix(6..22, 6..22)
}

/// Helper for messages naming a spec pair.
pub fn describe(prime: &RhoPrimeSpec, double_prime: &RhoDoublePrimeSpec) -> alloc::string::String {
    format!("{prime}+{double_prime}")
}
