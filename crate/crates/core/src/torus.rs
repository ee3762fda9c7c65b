//! Affine isometries of `T³ = ℝ³/ℤ³`, the finite groups they generate and
//! their fixed-point sets.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::TorusError;
use crate::lattice::{smith_normal_form, IntegerMatrix};

pub type Rational = Ratio<i64>;
pub type Point = [Rational; 3];

/// Every translation denominator must divide this.
pub const TRANSLATION_DENOMINATOR: i64 = 8;

/// Upper bound on group closure.
pub const GROUP_CAP: usize = 10_000;

fn frac(x: Rational) -> Rational {
    x - x.floor()
}

pub fn reduce_point(p: Point) -> Point {
    p.map(frac)
}

fn det3(a: &[[i64; 3]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn is_signed_rotation(a: &[[i64; 3]; 3]) -> bool {
    let entries_ok = a.iter().flatten().all(|x| (-1..=1).contains(x));
    let orthogonal = (0..3).all(|i| {
        (0..3).all(|j| {
            let dot: i64 = (0..3).map(|k| a[k][i] * a[k][j]).sum();
            dot == i64::from(i == j)
        })
    });
    entries_ok && orthogonal && det3(a) == 1
}

/// `x ↦ A·x + v (mod ℤ³)` with `A ∈ SO(3) ∩ GL(3, ℤ)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineTorusMap {
    linear: [[i64; 3]; 3],
    translation: Point,
}

impl AffineTorusMap {
    pub fn new(linear: [[i64; 3]; 3], translation: Point) -> Result<Self, TorusError> {
        if !is_signed_rotation(&linear) {
            return Err(TorusError::InvalidLinearPart);
        }
        if translation.iter().any(|t| TRANSLATION_DENOMINATOR % t.denom() != 0) {
            return Err(TorusError::InvalidTranslation(TRANSLATION_DENOMINATOR));
        }
        Ok(Self { linear, translation: reduce_point(translation) })
    }

    /// Diagonal linear part `signs` with translation `num / den`.
    pub fn diagonal(signs: [i64; 3], num: [i64; 3], den: i64) -> Result<Self, TorusError> {
        let mut linear = [[0; 3]; 3];
        for i in 0..3 {
            linear[i][i] = signs[i];
        }
        Self::new(linear, num.map(|n| Rational::new(n, den)))
    }

    pub fn identity() -> Self {
        Self { linear: [[1, 0, 0], [0, 1, 0], [0, 0, 1]], translation: [Rational::zero(); 3] }
    }

    pub fn linear(&self) -> [[i64; 3]; 3] {
        self.linear
    }

    pub fn linear_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(&self.linear)
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    pub fn apply(&self, x: &Point) -> Point {
        let mut y = self.translation;
        for (i, yi) in y.iter_mut().enumerate() {
            for (j, xj) in x.iter().enumerate() {
                *yi += *xj * self.linear[i][j];
            }
        }
        reduce_point(y)
    }

    pub fn apply_linear(&self, d: &[i64; 3]) -> [i64; 3] {
        let mut y = [0; 3];
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (0..3).map(|j| self.linear[i][j] * d[j]).sum();
        }
        y
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Diagonal of the linear part, when the linear part is diagonal.
    pub fn diagonal_signs(&self) -> Option<[i64; 3]> {
        let off = (0..3).any(|i| (0..3).any(|j| i != j && self.linear[i][j] != 0));
        (!off).then(|| [self.linear[0][0], self.linear[1][1], self.linear[2][2]])
    }

    /// Traces of the linear part on `Λ¹`, `Λ²`, `Λ³` of `ℝ³`.
    pub fn exterior_traces(&self) -> [i64; 3] {
        let a = &self.linear;
        let e1 = a[0][0] + a[1][1] + a[2][2];
        let minor = |i: usize, j: usize| a[i][i] * a[j][j] - a[i][j] * a[j][i];
        [e1, minor(0, 1) + minor(0, 2) + minor(1, 2), det3(a)]
    }
}

impl fmt::Debug for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..3 {
            if i > 0 {
                write!(f, ", ")?;
            }
            let mut first = true;
            let t = self.translation[i];
            if !t.is_zero() {
                write!(f, "{t}")?;
                first = false;
            }
            for j in 0..3 {
                let c = self.linear[i][j];
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 {
                    "-"
                } else if first {
                    ""
                } else {
                    "+"
                };
                write!(f, "{sign}x{}", j + 1)?;
                first = false;
            }
            if first {
                write!(f, "0")?;
            }
        }
        write!(f, ")")
    }
}

/// `f ∘ g`.
pub fn compose(f: &AffineTorusMap, g: &AffineTorusMap) -> AffineTorusMap {
    let mut linear = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            linear[i][j] = (0..3).map(|k| f.linear[i][k] * g.linear[k][j]).sum();
        }
    }
    let mut translation = f.translation;
    for (i, t) in translation.iter_mut().enumerate() {
        for j in 0..3 {
            *t += g.translation[j] * f.linear[i][j];
        }
    }
    AffineTorusMap { linear, translation: reduce_point(translation) }
}

pub fn inverse(f: &AffineTorusMap) -> AffineTorusMap {
    let mut linear = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            linear[i][j] = f.linear[j][i];
        }
    }
    let mut translation = [Rational::zero(); 3];
    for (i, t) in translation.iter_mut().enumerate() {
        for j in 0..3 {
            *t -= f.translation[j] * linear[i][j];
        }
    }
    AffineTorusMap { linear, translation: reduce_point(translation) }
}

/// A connected component `p + span_ℝ(directions) mod ℤ³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusComponent {
    pub base_point: Point,
    pub directions: Vec<[i64; 3]>,
}

impl TorusComponent {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// The tangent direction of a circle.
    pub fn direction(&self) -> Option<[i64; 3]> {
        match self.directions.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Builds the canonical form: echelon directions and the lexicographically
    /// smallest base point in `[0,1)³`.
    pub fn canonical(base: Point, directions: Vec<[i64; 3]>) -> Self {
        let directions = echelon(directions);
        let mut candidates = alloc::vec![reduce_point(base)];
        for d in &directions {
            let pivot = d.iter().position(|&x| x != 0).expect("nonzero direction");
            let h = d[pivot];
            let mut next = Vec::new();
            for p in &candidates {
                for m in 0..h {
                    let t = (Rational::from_integer(m) - p[pivot]) / h;
                    let q = [p[0] + t * d[0], p[1] + t * d[1], p[2] + t * d[2]];
                    next.push(reduce_point(q));
                }
            }
            candidates = next;
        }
        let base_point = candidates.into_iter().min().expect("at least one candidate");
        Self { base_point, directions }
    }

    /// `x ∈ p + span_ℝ(directions) + ℤ³`.
    pub fn contains(&self, x: &Point) -> bool {
        let diff: Vec<Rational> = (0..3).map(|i| x[i] - self.base_point[i]).collect();
        let k = self.directions.len();
        if k == 0 {
            return diff.iter().all(Rational::is_integer);
        }
        let d = IntegerMatrix::from_fn(3, k, |i, j| BigInt::from(self.directions[j][i]));
        let left = smith_normal_form(&d).left;
        (k..3).all(|row| {
            let v: Rational = (0..3)
                .map(|c| diff[c] * i64::try_from(left.get(row, c)).expect("small entries"))
                .fold(Rational::zero(), |a, b| a + b);
            v.is_integer()
        })
    }

    /// Image under an affine map, in canonical form.
    pub fn image(&self, f: &AffineTorusMap) -> Self {
        Self::canonical(f.apply(&self.base_point), self.directions.iter().map(|d| f.apply_linear(d)).collect())
    }
}

/// Integer echelon basis with strictly increasing pivots, each positive.
fn echelon(mut dirs: Vec<[i64; 3]>) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for coord in 0..3 {
        loop {
            let mut with: Vec<usize> = (0..dirs.len()).filter(|&i| dirs[i][coord] != 0).collect();
            if with.is_empty() {
                break;
            }
            with.sort_by_key(|&i| dirs[i][coord].abs());
            let p = with[0];
            if with.len() == 1 {
                let mut v = dirs.remove(p);
                if v[coord] < 0 {
                    v = v.map(|x| -x);
                }
                out.push(v);
                break;
            }
            for &i in &with[1..] {
                let q = Integer::div_floor(&dirs[i][coord], &dirs[p][coord]);
                let pv = dirs[p];
                for (c, x) in dirs[i].iter_mut().enumerate() {
                    *x -= q * pv[c];
                }
            }
        }
    }
    for v in &mut out {
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        if g > 1 {
            *v = v.map(|x| x / g);
        }
    }
    out
}

/// Fixed-point set of an affine torus map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusFixedSet {
    /// `None` when empty.
    pub dimension: Option<usize>,
    pub components: Vec<TorusComponent>,
}

impl TorusFixedSet {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Index of the component containing `x`.
    pub fn locate(&self, x: &Point) -> Option<usize> {
        self.components.iter().position(|c| c.contains(x))
    }
}

/// Solves `(A − I)·x ≡ −v (mod ℤ³)`.
pub fn fixed_set(f: &AffineTorusMap) -> TorusFixedSet {
    let b = &f.linear_matrix() - &IntegerMatrix::identity(3);
    let snf = smith_normal_form(&b);
    let to_i64 = |x: &BigInt| i64::try_from(x).expect("small entries");
    // w = P·(−v)
    let w: Vec<Rational> = (0..3)
        .map(|i| (0..3).map(|j| -f.translation[j] * to_i64(snf.left.get(i, j))).fold(Rational::zero(), |a, b| a + b))
        .collect();
    let diag: Vec<i64> = snf.diagonal().iter().map(to_i64).collect();
    let mut choices: Vec<Vec<Rational>> = Vec::with_capacity(3);
    let mut free = Vec::new();
    for i in 0..3 {
        if diag[i] == 0 {
            if !w[i].is_integer() {
                return TorusFixedSet { dimension: None, components: Vec::new() };
            }
            choices.push(alloc::vec![Rational::zero()]);
            free.push(i);
        } else {
            let d = diag[i].abs();
            choices.push((0..d).map(|m| (w[i] + m) / diag[i]).collect());
        }
    }
    let q = |i: usize, j: usize| to_i64(snf.right.get(i, j));
    let directions: Vec<[i64; 3]> = free.iter().map(|&j| [q(0, j), q(1, j), q(2, j)]).collect();
    let mut components = Vec::new();
    for y0 in &choices[0] {
        for y1 in &choices[1] {
            for y2 in &choices[2] {
                let y = [*y0, *y1, *y2];
                let x: Point =
                    core::array::from_fn(|i| (0..3).map(|j| y[j] * q(i, j)).fold(Rational::zero(), |a, b| a + b));
                components.push(TorusComponent::canonical(x, directions.clone()));
            }
        }
    }
    components.sort();
    components.dedup();
    TorusFixedSet { dimension: Some(free.len()), components }
}

/// A finite group of torus maps with its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteActionGroup {
    /// Identity first, then in discovery order.
    pub elements: Vec<AffineTorusMap>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
}

/// Breadth-first closure of `gens` under `mul`, capped at [`GROUP_CAP`].
pub(crate) fn close<T: Ord + Clone>(identity: T, gens: &[T], mul: impl Fn(&T, &T) -> T) -> Result<Vec<T>, TorusError> {
    let mut index = BTreeMap::new();
    index.insert(identity.clone(), 0usize);
    let mut elements = alloc::vec![identity];
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let h = mul(&elements[i], g);
            if !index.contains_key(&h) {
                if elements.len() >= GROUP_CAP {
                    return Err(TorusError::NotFinite { cap: GROUP_CAP });
                }
                index.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        i += 1;
    }
    Ok(elements)
}

pub fn generate_group(generators: &[AffineTorusMap]) -> Result<FiniteActionGroup, TorusError> {
    let elements = close(AffineTorusMap::identity(), generators, compose)?;
    Ok(FiniteActionGroup::from_elements(elements))
}

impl FiniteActionGroup {
    fn from_elements(elements: Vec<AffineTorusMap>) -> Self {
        let index: BTreeMap<AffineTorusMap, usize> = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let table = elements.iter().map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect()).collect();
        Self { elements, table }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, f: &AffineTorusMap) -> Option<usize> {
        self.elements.iter().position(|e| e == f)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.table[i].iter().position(|&k| k == 0).expect("group element has an inverse")
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.table[cur][i];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Dihedral of order `2m`, `m ≥ 3`: an element `r` of order `m` and an
    /// involution `s ∉ ⟨r⟩` with `s r s = r⁻¹`.
    pub fn is_dihedral(&self) -> bool {
        let n = self.order();
        if n < 6 || !n.is_multiple_of(2) || self.is_abelian() {
            return false;
        }
        let m = n / 2;
        let Some(r) = (0..n).find(|&i| self.element_order(i) == m) else { return false };
        let mut cyclic = alloc::vec![0usize];
        while cyclic.len() < m {
            let last = *cyclic.last().expect("nonempty");
            cyclic.push(self.table[last][r]);
        }
        let r_inv = self.inverse_index(r);
        (0..n).any(|s| !cyclic.contains(&s) && self.element_order(s) == 2 && self.table[self.table[s][r]][s] == r_inv)
    }
}

/// The four quotient constructions of `S × T³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionCase {
    Case1,
    Case2,
    Case3,
    D4,
}

impl ConstructionCase {
    pub const ALL: [ConstructionCase; 4] = [Self::Case1, Self::Case2, Self::Case3, Self::D4];

    pub fn label(self) -> &'static str {
        match self {
            Self::Case1 => "1",
            Self::Case2 => "2",
            Self::Case3 => "3",
            Self::D4 => "d4",
        }
    }
}

impl fmt::Display for ConstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl core::str::FromStr for ConstructionCase {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.to_ascii_lowercase().as_str() {
            "1" => Ok(Self::Case1),
            "2" => Ok(Self::Case2),
            "3" => Ok(Self::Case3),
            "d4" | "4" => Ok(Self::D4),
            _ => Err(()),
        }
    }
}

/// Element of `ℤ₂²` recording which of `ρ¹`, `ρ²` act on the K3 factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RhoLabel(u8);

impl RhoLabel {
    pub const IDENTITY: RhoLabel = RhoLabel(0);
    pub const RHO1: RhoLabel = RhoLabel(1);
    pub const RHO2: RhoLabel = RhoLabel(2);
    pub const RHO3: RhoLabel = RhoLabel(3);

    pub fn compose(self, other: Self) -> Self {
        Self(self.0 ^ other.0)
    }

    /// `None` for the identity, else `1`, `2` or `3`.
    pub fn rho_index(self) -> Option<usize> {
        (self.0 != 0).then_some(self.0 as usize)
    }

    /// Action on the hyper-Kähler triple `(ω₁, ω₂, ω₃)`.
    pub fn omega_signs(self) -> [i64; 3] {
        match self.0 {
            0 => [1, 1, 1],
            1 => [1, -1, -1],
            2 => [-1, 1, -1],
            _ => [-1, -1, 1],
        }
    }
}

/// Generators of one construction together with the group they generate on `S × T³`.
#[derive(Clone, Debug)]
pub struct BuiltinAction {
    pub case: ConstructionCase,
    pub psi1: AffineTorusMap,
    pub psi2: AffineTorusMap,
    pub group: FiniteActionGroup,
    /// Action on the K3 factor of each group element.
    pub labels: Vec<RhoLabel>,
}

impl BuiltinAction {
    /// Signs on `(ω₁,ω₂,ω₃)` and on `(dx¹,dx²,dx³)` per group element.
    pub fn sign_actions(&self) -> Vec<([i64; 3], Option<[i64; 3]>)> {
        self.group.elements.iter().zip(&self.labels).map(|(e, l)| (l.omega_signs(), e.diagonal_signs())).collect()
    }

    /// Index of `(ψ¹)^j (ψ²)^k`.
    pub fn element(&self, j: usize, k: usize) -> usize {
        let mut f = AffineTorusMap::identity();
        for _ in 0..j {
            f = compose(&f, &self.psi1);
        }
        for _ in 0..k {
            f = compose(&f, &self.psi2);
        }
        self.group.index_of(&f).expect("word lies in the group")
    }
}

pub fn builtin_generators(case: ConstructionCase) -> (AffineTorusMap, AffineTorusMap) {
    let m = |signs, num, den| AffineTorusMap::diagonal(signs, num, den).expect("builtin map is valid");
    match case {
        ConstructionCase::Case1 => (m([1, -1, -1], [1, 0, 1], 2), m([-1, 1, -1], [0, 0, 0], 1)),
        ConstructionCase::Case2 => (m([1, -1, -1], [0, 0, 0], 1), m([-1, 1, -1], [0, 0, 1], 2)),
        ConstructionCase::Case3 => (m([1, -1, -1], [0, 0, 0], 1), m([-1, 1, -1], [0, 0, 0], 1)),
        ConstructionCase::D4 => (m([1, -1, -1], [1, 1, 0], 4), m([-1, 1, -1], [0, 0, 0], 1)),
    }
}

pub fn builtin_action(case: ConstructionCase) -> Result<BuiltinAction, TorusError> {
    let (psi1, psi2) = builtin_generators(case);
    let labeled = close(
        (AffineTorusMap::identity(), RhoLabel::IDENTITY),
        &[(psi1, RhoLabel::RHO1), (psi2, RhoLabel::RHO2)],
        |a, b| (compose(&a.0, &b.0), a.1.compose(b.1)),
    )?;
    let elements: Vec<AffineTorusMap> = labeled.iter().map(|e| e.0).collect();
    let labels = labeled.iter().map(|e| e.1).collect();
    let group = FiniteActionGroup::from_elements(elements);
    if group.order() != labeled.len() {
        return Err(TorusError::InconsistentLabels);
    }
    Ok(BuiltinAction { case, psi1, psi2, group, labels })
}

/// Points of the grid `(1/n)ℤ³/ℤ³`.
pub fn grid_points(n: i64) -> Vec<Point> {
    let mut out = Vec::with_capacity((n * n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push([Rational::new(a, n), Rational::new(b, n), Rational::new(c, n)]);
            }
        }
    }
    out
}
