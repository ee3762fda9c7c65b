use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use super::smith::smith_normal_form;
use crate::error::LatticeError;

/// Inertia of a real symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Self {
        Self { positive, zero, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.zero + self.negative
    }

    /// Signature `(1, 0, n − 1)` with `n ≥ 1`.
    pub fn is_hyperbolic(&self) -> bool {
        self.positive == 1 && self.zero == 0
    }
}

/// Exact inertia by fraction-free symmetric elimination.
///
/// # Panics
/// Panics if `gram` is not symmetric.
pub fn signature_of(gram: &IntegerMatrix) -> Signature {
    assert!(gram.is_symmetric(), "signature of a non-symmetric matrix");
    let mut a: Vec<Vec<BigInt>> = (0..gram.rows()).map(|i| gram.row(i).to_vec()).collect();
    let mut sig = Signature::new(0, 0, 0);
    while !a.is_empty() {
        let n = a.len();
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            let s = if pivot.is_positive() { BigInt::one() } else { -BigInt::one() };
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            // Schur complement scaled by |p|, which preserves inertia.
            let mut next: Vec<Vec<BigInt>> = rest
                .iter()
                .map(|&i| rest.iter().map(|&j| &s * (&pivot * &a[i][j] - &a[i][p] * &a[p][j])).collect())
                .collect();
            reduce_content(&mut next);
            a = next;
            continue;
        }
        let off = (0..n).find_map(|i| (i + 1..n).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
        match off {
            None => {
                sig.zero += n;
                break;
            }
            Some((i, j)) => {
                // Replace e_i by e_i + e_j; the new diagonal entry 2·a_ij is nonzero.
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
            }
        }
    }
    sig
}

fn reduce_content(a: &mut [Vec<BigInt>]) {
    let g = a.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in a.iter_mut().flatten() {
            *x = &*x / &g;
        }
    }
}

/// A rational vector `numerators / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

impl RationalVector {
    /// Norm `xᵀ G x` as a reduced fraction `(num, den)` with `den > 0`.
    pub fn norm(&self, gram: &IntegerMatrix) -> (BigInt, BigInt) {
        let num = gram.bilinear(&self.numerators, &self.numerators);
        let den = &self.denominator * &self.denominator;
        let g = num.gcd(&den);
        if g.is_zero() {
            return (BigInt::zero(), BigInt::one());
        }
        (num / &g, den / g)
    }

    pub fn norm_is_integral(&self, gram: &IntegerMatrix) -> bool {
        self.norm(gram).1.is_one()
    }

    /// `self + v` for an integer vector `v`.
    pub fn shifted(&self, v: &[BigInt]) -> Self {
        Self {
            numerators: self.numerators.iter().zip(v).map(|(a, b)| a + b * &self.denominator).collect(),
            denominator: self.denominator.clone(),
        }
    }

    /// Integer combination `Σ cᵢ xᵢ`, all sharing one denominator.
    fn combine(gens: &[RationalVector], coeffs: &[u64], dim: usize) -> Self {
        let den = gens.iter().fold(BigInt::one(), |l, g| l.lcm(&g.denominator));
        let mut num = alloc::vec![BigInt::zero(); dim];
        for (g, &c) in gens.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            let scale = &den / &g.denominator * BigInt::from(c);
            for (acc, x) in num.iter_mut().zip(&g.numerators) {
                *acc += x * &scale;
            }
        }
        Self { numerators: num, denominator: den }
    }
}

/// Finite discriminant group `L*/L` of a nondegenerate lattice.
#[derive(Clone, Debug)]
pub struct DiscriminantData {
    /// Elementary divisors greater than one, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    /// One generator per invariant factor, in lattice coordinates.
    pub coset_representatives: Vec<RationalVector>,
}

/// Upper bound on the number of cosets enumerated by [`DiscriminantData::cosets`].
pub const COSET_ENUMERATION_CAP: u64 = 1 << 12;

impl DiscriminantData {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Every element of `L*/L` as `Σ cᵢ gᵢ` with `0 ≤ cᵢ < dᵢ`.
    pub fn cosets(&self) -> Result<Vec<RationalVector>, LatticeError> {
        let order = self.order();
        let count = u64::try_from(&order).ok().filter(|&n| n <= COSET_ENUMERATION_CAP);
        let Some(count) = count else {
            return Err(LatticeError::TooManyCosets { cap: COSET_ENUMERATION_CAP });
        };
        let moduli: Vec<u64> =
            self.invariant_factors.iter().map(|d| u64::try_from(d).expect("bounded by cap")).collect();
        let dim = self.coset_representatives.first().map_or(0, |g| g.numerators.len());
        let mut out = Vec::with_capacity(count as usize);
        let mut coeffs = alloc::vec![0u64; moduli.len()];
        for _ in 0..count {
            out.push(RationalVector::combine(&self.coset_representatives, &coeffs, dim));
            for (c, m) in coeffs.iter_mut().zip(&moduli) {
                *c += 1;
                if *c < *m {
                    break;
                }
                *c = 0;
            }
        }
        Ok(out)
    }
}

/// Discriminant group of the lattice with Gram matrix `gram`.
pub fn discriminant_data(gram: &IntegerMatrix) -> Result<DiscriminantData, LatticeError> {
    if !gram.is_symmetric() {
        return Err(LatticeError::NotSymmetric);
    }
    let snf = smith_normal_form(gram);
    if snf.rank() < gram.rows() {
        return Err(LatticeError::DegenerateForm);
    }
    // L* = Q·D⁻¹·ℤⁿ where D = P·G·Q.
    let mut factors = Vec::new();
    let mut reps = Vec::new();
    for (i, d) in snf.diagonal().into_iter().enumerate() {
        if d.is_one() {
            continue;
        }
        reps.push(RationalVector { numerators: snf.right.column(i), denominator: d.clone() });
        factors.push(d);
    }
    Ok(DiscriminantData { invariant_factors: factors, coset_representatives: reps })
}
