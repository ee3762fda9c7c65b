//! Commuting involution pairs on the K3 lattice, reduced modulo simultaneous
//! conjugation, and the invariant census built from them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::InvolutionError;
use crate::involution::{
    build_involution, fixed_sublattice_of, invariants_of, three_h_gram, two_e8_gram, K3Involution, MBlock,
    RhoDoublePrimeSpec, RhoPrimeSpec, TwoElementaryInvariants,
};
use crate::lattice::{integer_kernel_basis, k3_gram, IntegerMatrix};
use crate::perm::SignedPermutation;

/// Which pairs of `3H` actions survive the candidate filter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairRule {
    /// Commuting, both hyperbolic, trivial common fixed lattice for every pair.
    #[default]
    Strict,
    /// The common fixed lattice is tested only when neither map is a swap form.
    Published,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairFamily {
    DiagonalDiagonal,
    SwapDiagonal,
    DiagonalSwap,
    SwapSwap,
}

impl PairFamily {
    pub const ALL: [PairFamily; 4] = [Self::DiagonalDiagonal, Self::SwapDiagonal, Self::DiagonalSwap, Self::SwapSwap];

    pub fn of(first: &RhoPrimeSpec, second: &RhoPrimeSpec) -> Self {
        match (first.is_swap(), second.is_swap()) {
            (false, false) => Self::DiagonalDiagonal,
            (true, false) => Self::SwapDiagonal,
            (false, true) => Self::DiagonalSwap,
            (true, true) => Self::SwapSwap,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::DiagonalDiagonal => "diagonal/diagonal",
            Self::SwapDiagonal => "swap/diagonal",
            Self::DiagonalSwap => "diagonal/swap",
            Self::SwapSwap => "swap/swap",
        }
    }
}

/// A finite group of signed permutations acting by simultaneous conjugation.
#[derive(Clone, Debug)]
pub struct ConjugationGroup {
    pub generators: Vec<IntegerMatrix>,
    elements: Vec<SignedPermutation>,
}

impl ConjugationGroup {
    /// Closure of signed-permutation generators.
    ///
    /// # Panics
    /// Panics if a generator is not a signed permutation matrix.
    pub fn generate(generators: Vec<IntegerMatrix>) -> Self {
        let gens: Vec<SignedPermutation> = generators
            .iter()
            .map(|g| SignedPermutation::from_matrix(g).expect("generator must be a signed permutation"))
            .collect();
        let n = generators.first().map_or(0, IntegerMatrix::rows);
        let mut seen = BTreeSet::new();
        let id = SignedPermutation::identity(n);
        seen.insert(id.clone());
        let mut elements = alloc::vec![id];
        let mut i = 0;
        while i < elements.len() {
            for g in &gens {
                let h = elements[i].compose(g);
                if seen.insert(h.clone()) {
                    elements.push(h);
                }
            }
            i += 1;
        }
        Self { generators, elements }
    }

    /// Plane permutations and `diag(M_a, M_b, M_c)` on `3H`.
    pub fn prime() -> Self {
        let mut gens = Vec::new();
        for pair in [crate::involution::SwapPair::H12, crate::involution::SwapPair::H23] {
            let (p, q, s) = pair.planes();
            let mut target = alloc::vec![0u8; 6];
            for (from, to) in [(p, q), (q, p), (s, s)] {
                target[2 * from] = (2 * to) as u8;
                target[2 * from + 1] = (2 * to + 1) as u8;
            }
            gens.push(SignedPermutation::from_parts(target, alloc::vec![1; 6]).to_matrix());
        }
        for plane in 0..3 {
            for block in [MBlock::M2, MBlock::M3] {
                let mut blocks = [MBlock::M1; 3];
                blocks[plane] = block;
                gens.push(RhoPrimeSpec::Diagonal(blocks).matrix());
            }
        }
        Self::generate(gens)
    }

    /// Summand exchange and `diag(±I₈, ±I₈)` on `2(−E₈)`.
    pub fn double_prime() -> Self {
        let gens = [5u8, 2, 3].into_iter().map(|t| RhoDoublePrimeSpec::new(t).expect("valid index").matrix()).collect();
        Self::generate(gens)
    }

    /// The product of [`Self::prime`] and [`Self::double_prime`] on the whole lattice.
    pub fn full() -> Self {
        let id6 = IntegerMatrix::identity(6);
        let id16 = IntegerMatrix::identity(16);
        let mut gens: Vec<IntegerMatrix> = Self::prime().generators.iter().map(|g| g.block_diag(&id16)).collect();
        gens.extend(Self::double_prime().generators.iter().map(|g| id6.block_diag(g)));
        Self::generate(gens)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    /// Canonical representative of the orbit of `(a, b)`: the largest conjugate
    /// pair in row-major order.
    pub fn canonical_pair(
        &self,
        a: &SignedPermutation,
        b: &SignedPermutation,
    ) -> (SignedPermutation, SignedPermutation) {
        let mut best: Option<(Vec<i8>, Vec<i8>, SignedPermutation, SignedPermutation)> = None;
        for g in &self.elements {
            let ca = a.conjugate_by(g);
            let ka = ca.row_major();
            if let Some((ba, _, _, _)) = &best {
                if ka < *ba {
                    continue;
                }
            }
            let cb = b.conjugate_by(g);
            let kb = cb.row_major();
            let better = match &best {
                None => true,
                Some((ba, bb, _, _)) => (&ka, &kb) > (ba, bb),
            };
            if better {
                best = Some((ka, kb, ca, cb));
            }
        }
        let (_, _, ca, cb) = best.expect("group contains the identity");
        (ca, cb)
    }

    /// Every conjugate pair of `(a, b)`.
    pub fn orbit(
        &self,
        a: &SignedPermutation,
        b: &SignedPermutation,
    ) -> BTreeSet<(SignedPermutation, SignedPermutation)> {
        self.elements.iter().map(|g| (a.conjugate_by(g), b.conjugate_by(g))).collect()
    }
}

fn commute(a: &SignedPermutation, b: &SignedPermutation) -> bool {
    a.compose(b) == b.compose(a)
}

/// `ker(A − I) ∩ ker(B − I) = 0`.
pub fn trivial_common_fixed(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    let id = IntegerMatrix::identity(a.rows());
    integer_kernel_basis(&(a - &id).vstack(&(b - &id))).cols() == 0
}

fn prime_spec_of(p: &SignedPermutation) -> Option<RhoPrimeSpec> {
    RhoPrimeSpec::all().into_iter().find(|s| s.perm() == *p)
}

fn double_prime_spec_of(p: &SignedPermutation) -> Option<RhoDoublePrimeSpec> {
    RhoDoublePrimeSpec::all().into_iter().find(|s| s.perm() == *p)
}

/// Forms on `3H` whose fixed lattice has exactly one positive direction.
pub fn hyperbolic_prime_specs() -> Vec<RhoPrimeSpec> {
    let g = three_h_gram();
    RhoPrimeSpec::all()
        .into_iter()
        .filter(|s| crate::lattice::signature_of(&fixed_sublattice_of(&s.matrix(), &g).gram).is_hyperbolic())
        .collect()
}

/// Reduced ordered pairs of `3H` actions under the strict rule.
pub fn enumerate_prime_pairs() -> Vec<(RhoPrimeSpec, RhoPrimeSpec)> {
    enumerate_prime_pairs_with(PairRule::Strict)
}

pub fn enumerate_prime_pairs_with(rule: PairRule) -> Vec<(RhoPrimeSpec, RhoPrimeSpec)> {
    let specs = hyperbolic_prime_specs();
    let mut candidates = Vec::new();
    for s in &specs {
        for t in &specs {
            let (ps, pt) = (s.perm(), t.perm());
            if !commute(&ps, &pt) {
                continue;
            }
            let check = match rule {
                PairRule::Strict => true,
                PairRule::Published => !s.is_swap() && !t.is_swap(),
            };
            if check && !trivial_common_fixed(&s.matrix(), &t.matrix()) {
                continue;
            }
            candidates.push((ps, pt));
        }
    }
    let group = ConjugationGroup::prime();
    let reps = reduce(&group, &candidates);
    let mut out: Vec<(RhoPrimeSpec, RhoPrimeSpec)> = reps
        .into_iter()
        .map(|(a, b)| {
            (prime_spec_of(&a).expect("conjugate of a form"), prime_spec_of(&b).expect("conjugate of a form"))
        })
        .collect();
    out.sort_by_key(|(a, b)| (PairFamily::of(a, b), *a, *b));
    out
}

/// Reduced ordered pairs of `2(−E₈)` actions.
pub fn enumerate_double_prime_pairs() -> Vec<(RhoDoublePrimeSpec, RhoDoublePrimeSpec)> {
    let specs = RhoDoublePrimeSpec::all();
    let mut candidates = Vec::new();
    for s in &specs {
        for t in &specs {
            let (ps, pt) = (s.perm(), t.perm());
            if commute(&ps, &pt) && trivial_common_fixed(&s.matrix(), &t.matrix()) {
                candidates.push((ps, pt));
            }
        }
    }
    let group = ConjugationGroup::double_prime();
    let mut out: Vec<_> = reduce(&group, &candidates)
        .into_iter()
        .map(|(a, b)| (double_prime_spec_of(&a).expect("form"), double_prime_spec_of(&b).expect("form")))
        .collect();
    out.sort();
    out
}

/// Canonical representatives of the orbits met by `candidates`.
pub fn reduce(
    group: &ConjugationGroup,
    candidates: &[(SignedPermutation, SignedPermutation)],
) -> BTreeSet<(SignedPermutation, SignedPermutation)> {
    candidates.iter().map(|(a, b)| group.canonical_pair(a, b)).collect()
}

/// A classified pair with its product and the three sets of invariants.
#[derive(Clone, Debug)]
pub struct InvolutionPair {
    pub rho1: K3Involution,
    pub rho2: K3Involution,
    pub rho3: K3Involution,
    pub invariants: [TwoElementaryInvariants; 3],
}

impl InvolutionPair {
    pub fn family(&self) -> PairFamily {
        PairFamily::of(&self.rho1.prime, &self.rho2.prime)
    }
}

/// Invariants `(r₁,a₁|r₂,a₂|r₃,a₃)` with the δ values kept alongside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantTuple {
    pub ra: [(u32, u32); 3],
    pub delta: Option<[u8; 3]>,
}

impl InvariantTuple {
    pub fn from_invariants(t: &[TwoElementaryInvariants; 3]) -> Self {
        Self {
            ra: [(t[0].r, t[0].a), (t[1].r, t[1].a), (t[2].r, t[2].a)],
            delta: Some([t[0].delta, t[1].delta, t[2].delta]),
        }
    }

    pub fn rank_sum(&self) -> u32 {
        self.ra.iter().map(|x| x.0).sum()
    }

    /// Census key: the `(r, a)` part only.
    pub fn key(&self) -> [(u32, u32); 3] {
        self.ra
    }
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [(r1, a1), (r2, a2), (r3, a3)] = self.ra;
        write!(f, "({r1},{a1}|{r2},{a2}|{r3},{a3})")
    }
}

pub fn invariant_tuple(pair: &InvolutionPair) -> InvariantTuple {
    InvariantTuple::from_invariants(&pair.invariants)
}

/// Memoized invariants of full involutions.
#[derive(Default)]
pub struct InvariantCache {
    map: BTreeMap<SignedPermutation, TwoElementaryInvariants>,
}

impl InvariantCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, inv: &K3Involution) -> Result<TwoElementaryInvariants, InvolutionError> {
        let key = inv.perm();
        if let Some(t) = self.map.get(&key) {
            return Ok(*t);
        }
        let t = invariants_of(&fixed_sublattice_of(&inv.matrix, k3_gram().gram()))?;
        self.map.insert(key, t);
        Ok(t)
    }
}

/// The strict classification: every reduced `3H` pair with every reduced `2(−E₈)` pair.
pub fn classify_pairs() -> Result<Vec<InvolutionPair>, InvolutionError> {
    classify_pairs_with(PairRule::Strict)
}

pub fn classify_pairs_with(rule: PairRule) -> Result<Vec<InvolutionPair>, InvolutionError> {
    let primes = enumerate_prime_pairs_with(rule);
    let doubles = enumerate_double_prime_pairs();
    let mut cache = InvariantCache::new();
    let mut out = Vec::with_capacity(primes.len() * doubles.len());
    for (p1, p2) in &primes {
        let p3 = prime_spec_of(&p1.perm().compose(&p2.perm()))
            .ok_or_else(|| InvolutionError::Internal("product of 3H forms is not a form".to_string()))?;
        for (d1, d2) in &doubles {
            let d3 = double_prime_spec_of(&d1.perm().compose(&d2.perm()))
                .ok_or_else(|| InvolutionError::Internal("product of E8 forms is not a form".to_string()))?;
            let rho1 = build_involution(*p1, *d1)?;
            let rho2 = build_involution(*p2, *d2)?;
            let rho3 = build_involution(p3, d3)?;
            let invariants = [cache.get(&rho1)?, cache.get(&rho2)?, cache.get(&rho3)?];
            out.push(InvolutionPair { rho1, rho2, rho3, invariants });
        }
    }
    Ok(out)
}

/// Tuple of block invariants `(ρ₁, ρ₂, ρ₁ρ₂)` on `3H`.
pub fn prime_pair_tuple(p1: &RhoPrimeSpec, p2: &RhoPrimeSpec) -> Result<[(u32, u32); 3], InvolutionError> {
    let g = three_h_gram();
    let m3 = &p1.matrix() * &p2.matrix();
    block_tuple([p1.matrix(), p2.matrix(), m3], &g)
}

/// Tuple of block invariants `(ρ₁, ρ₂, ρ₁ρ₂)` on `2(−E₈)`.
pub fn double_prime_pair_tuple(
    d1: &RhoDoublePrimeSpec,
    d2: &RhoDoublePrimeSpec,
) -> Result<[(u32, u32); 3], InvolutionError> {
    let g = two_e8_gram();
    let m3 = &d1.matrix() * &d2.matrix();
    block_tuple([d1.matrix(), d2.matrix(), m3], &g)
}

fn block_tuple(ms: [IntegerMatrix; 3], g: &IntegerMatrix) -> Result<[(u32, u32); 3], InvolutionError> {
    let mut out = [(0, 0); 3];
    for (slot, m) in out.iter_mut().zip(ms.iter()) {
        let t = invariants_of(&fixed_sublattice_of(m, g))?;
        *slot = (t.r, t.a);
    }
    Ok(out)
}

/// Summary counts of a classification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCensus {
    pub rule: PairRule,
    pub family_counts: [usize; 4],
    pub prime_pairs: usize,
    pub double_prime_pairs: usize,
    pub total_pairs: usize,
    /// `3H` tuples over pairs whose product is also hyperbolic.
    pub prime_tuples: BTreeSet<[(u32, u32); 3]>,
    pub double_prime_tuples: BTreeSet<[(u32, u32); 3]>,
    /// Full `(r, a)` tuples over pairs whose product is also hyperbolic.
    pub tuples: BTreeSet<[(u32, u32); 3]>,
    /// Pairs whose product `ρ₁ρ₂` fails to be hyperbolic.
    pub non_hyperbolic_products: usize,
}

pub fn census(rule: PairRule) -> Result<PairCensus, InvolutionError> {
    let primes = enumerate_prime_pairs_with(rule);
    let doubles = enumerate_double_prime_pairs();
    let g = three_h_gram();
    let mut family_counts = [0usize; 4];
    let mut prime_tuples = BTreeSet::new();
    let mut hyperbolic_primes = Vec::new();
    for (p1, p2) in &primes {
        family_counts[PairFamily::of(p1, p2) as usize] += 1;
        let m3 = &p1.matrix() * &p2.matrix();
        let hyp = crate::lattice::signature_of(&fixed_sublattice_of(&m3, &g).gram).is_hyperbolic();
        if hyp {
            prime_tuples.insert(prime_pair_tuple(p1, p2)?);
            hyperbolic_primes.push((p1, p2));
        }
    }
    let mut double_prime_tuples = BTreeSet::new();
    for (d1, d2) in &doubles {
        double_prime_tuples.insert(double_prime_pair_tuple(d1, d2)?);
    }
    let mut tuples = BTreeSet::new();
    for pt in &prime_tuples {
        for dt in &double_prime_tuples {
            let mut t = [(0, 0); 3];
            for i in 0..3 {
                t[i] = (pt[i].0 + dt[i].0, pt[i].1 + dt[i].1);
            }
            tuples.insert(t);
        }
    }
    Ok(PairCensus {
        rule,
        family_counts,
        prime_pairs: primes.len(),
        double_prime_pairs: doubles.len(),
        total_pairs: primes.len() * doubles.len(),
        prime_tuples,
        double_prime_tuples,
        tuples,
        non_hyperbolic_products: (primes.len() - hyperbolic_primes.len()) * doubles.len(),
    })
}

/// Invariants of every single simple involution with one positive fixed direction.
pub fn simple_triples() -> Result<BTreeSet<(u32, u32, u8)>, InvolutionError> {
    let mut cache = InvariantCache::new();
    let mut out = BTreeSet::new();
    for p in hyperbolic_prime_specs() {
        for d in RhoDoublePrimeSpec::all() {
            let inv = build_involution(p, d)?;
            out.insert(cache.get(&inv)?.triple());
        }
    }
    Ok(out)
}

/// `r₁ + r₂ ≤ 11` or `r₁ + r₂ + a₁ + a₂ < 22`.
pub fn kovalev_lee_admissible(r1: u32, a1: u32, r2: u32, a2: u32) -> bool {
    r1 + r2 <= 11 || r1 + r2 + a1 + a2 < 22
}
