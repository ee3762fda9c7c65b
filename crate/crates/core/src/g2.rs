//! Betti numbers, singular loci and fundamental-group labels of the resolved
//! quotients `(S × T³)/Γ`.
//!
//! Two independent routes are provided. [`outcome`] derives the singular locus
//! from the torus group: it collects fixed circles of the group elements,
//! splits them into `Γ`-orbits and reads off twisting from the stabilizers.
//! [`closed_form_betti`] evaluates the published per-case formulas. The
//! function [`cross_check`] compares them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::G2Error;
use crate::pairs::InvariantTuple;
use crate::torus::{builtin_action, fixed_set, BuiltinAction, ConstructionCase, TorusComponent};

/// Invariants of one involution; `delta` may be unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocusTriple {
    pub r: u32,
    pub a: u32,
    pub delta: Option<u8>,
}

impl LocusTriple {
    pub fn new(r: u32, a: u32, delta: u8) -> Self {
        Self { r, a, delta: Some(delta) }
    }

    pub fn without_delta(r: u32, a: u32) -> Self {
        Self { r, a, delta: None }
    }

    pub fn topology(&self) -> Result<FixedLocusTopology, G2Error> {
        fixed_locus_topology(self.r, self.a, self.delta)
    }

    pub fn is_empty_locus(&self) -> Result<bool, G2Error> {
        Ok(self.topology()? == FixedLocusTopology::Empty)
    }
}

impl fmt::Display for LocusTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.delta {
            Some(d) => write!(f, "({},{},{})", self.r, self.a, d),
            None => write!(f, "({},{})", self.r, self.a),
        }
    }
}

/// Fixed curves of a non-symplectic involution on a K3 surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixedLocusTopology {
    Empty,
    TwoElliptic,
    /// A genus-`genus` curve and `rational` rational curves.
    Generic {
        genus: u32,
        rational: u32,
    },
}

pub fn fixed_locus_topology(r: u32, a: u32, delta: Option<u8>) -> Result<FixedLocusTopology, G2Error> {
    let invalid = |reason| Err(G2Error::InvalidTriple { r, a, delta, reason });
    if r == 0 || r > 22 || a > r || r + a > 22 {
        return invalid("out of range");
    }
    if !(r + a).is_multiple_of(2) {
        return invalid("genus and rational-curve count are not integral");
    }
    if delta.is_some_and(|d| d > 1) {
        return invalid("delta must be 0 or 1");
    }
    match (r, a, delta) {
        (10, 10, Some(0)) => return Ok(FixedLocusTopology::Empty),
        (10, 8, Some(0)) => return Ok(FixedLocusTopology::TwoElliptic),
        (10, 10 | 8, None) => return invalid("delta is needed to decide the fixed locus"),
        _ => {}
    }
    Ok(FixedLocusTopology::Generic { genus: (22 - r - a) / 2, rational: (r - a) / 2 })
}

/// `(b⁰, b¹)` of a nonempty fixed locus.
pub fn fixed_locus_betti(t: FixedLocusTopology) -> Result<(u32, u32), G2Error> {
    match t {
        FixedLocusTopology::Empty => Err(G2Error::EmptyLocus),
        FixedLocusTopology::TwoElliptic => Ok((2, 4)),
        FixedLocusTopology::Generic { genus, rational } => Ok((rational + 1, 2 * genus)),
    }
}

/// `b¹` of `(F × S¹)/ℤ₂` with ℤ-twisted coefficients, when the involution
/// preserves each curve and reverses the circle: each curve of genus `g`
/// contributes `g + 1`.
pub fn twisted_b1(t: FixedLocusTopology) -> Result<u32, G2Error> {
    match t {
        FixedLocusTopology::Empty => Err(G2Error::EmptyLocus),
        FixedLocusTopology::TwoElliptic => Err(G2Error::Inadmissible("two curves of genus 1".to_string())),
        FixedLocusTopology::Generic { genus, rational } => {
            if rational >= 2 || (rational == 1 && genus == 0) {
                Err(G2Error::Inadmissible("two curves of genus 0".to_string()))
            } else {
                Ok(genus + 1 + rational)
            }
        }
    }
}

/// Invariants of `ρ¹`, `ρ²`, `ρ³ = ρ¹ρ²`; missing entries are allowed when
/// the construction does not use them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantInput {
    pub rho: [Option<LocusTriple>; 3],
}

impl InvariantInput {
    pub fn new(rho1: Option<LocusTriple>, rho2: Option<LocusTriple>, rho3: Option<LocusTriple>) -> Self {
        Self { rho: [rho1, rho2, rho3] }
    }

    pub fn from_tuple(t: &InvariantTuple) -> Self {
        let d = t.delta;
        let make = |i: usize| LocusTriple { r: t.ra[i].0, a: t.ra[i].1, delta: d.map(|d| d[i]) };
        Self { rho: [Some(make(0)), Some(make(1)), Some(make(2))] }
    }

    /// `ρ¹`, `ρ²` known; only the rank of `ρ³` follows.
    pub fn from_pair(rho1: LocusTriple, rho2: LocusTriple) -> Self {
        Self { rho: [Some(rho1), Some(rho2), None] }
    }

    /// Slot `i ∈ {1,2,3}`.
    pub fn get(&self, i: usize) -> Result<LocusTriple, G2Error> {
        self.rho[i - 1].ok_or_else(|| G2Error::Inadmissible(format!("invariants of rho{i} are required")))
    }

    /// Ranks of the three fixed lattices, completing a missing one from `Σ r = 22`.
    pub fn ranks(&self) -> Result<[i64; 3], G2Error> {
        let known: Vec<usize> = (0..3).filter(|&i| self.rho[i].is_some()).collect();
        let mut r = [0i64; 3];
        for &i in &known {
            r[i] = i64::from(self.rho[i].expect("known").r);
        }
        match known.len() {
            3 => {
                if r.iter().sum::<i64>() != 22 {
                    return Err(G2Error::Inadmissible("r1 + r2 + r3 must equal 22".to_string()));
                }
            }
            2 => {
                let missing = (0..3).find(|i| !known.contains(i)).expect("one slot missing");
                r[missing] = 22 - r.iter().sum::<i64>();
                if r[missing] < 0 {
                    return Err(G2Error::Inadmissible("ranks exceed 22".to_string()));
                }
            }
            _ => return Err(G2Error::Inadmissible("at least two invariant triples are required".to_string())),
        }
        Ok(r)
    }
}

/// Orbifold Betti numbers `(b¹, b², b³)` of `(S × T³)/Γ` by averaging
/// characters over `Γ`.
pub fn orbifold_betti(case: ConstructionCase, input: &InvariantInput) -> Result<(u32, u32, u32), G2Error> {
    let action = builtin_action(case)?;
    orbifold_betti_for(&action, &input.ranks()?)
}

pub(crate) fn orbifold_betti_for(action: &BuiltinAction, ranks: &[i64; 3]) -> Result<(u32, u32, u32), G2Error> {
    let mut sums = [0i64; 3];
    for (elem, label) in action.group.elements.iter().zip(&action.labels) {
        let h2 = match label.rho_index() {
            None => 22,
            Some(i) => 2 * ranks[i - 1] - 22,
        };
        let [e1, e2, e3] = elem.exterior_traces();
        sums[0] += e1;
        sums[1] += e2 + h2;
        sums[2] += e3 + h2 * e1;
    }
    let n = action.group.order() as i64;
    let mut out = [0u32; 3];
    for (o, s) in out.iter_mut().zip(sums) {
        if s % n != 0 || s < 0 {
            return Err(G2Error::NonA1Singularity(format!("character average {s}/{n} is not a dimension")));
        }
        *o = (s / n) as u32;
    }
    Ok((out[0], out[1], out[2]))
}

/// One family of singular components `copies × (Fix(ρ^rho) × S¹)`, divided
/// by a reflection of the circle when `twisted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocusComponent {
    pub rho: usize,
    pub surface: FixedLocusTopology,
    pub copies: u32,
    pub twisted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocusModel {
    pub components: Vec<LocusComponent>,
    pub b0: u32,
    pub b1: u32,
}

impl SingularLocusModel {
    pub fn empty() -> Self {
        Self { components: Vec::new(), b0: 0, b1: 0 }
    }

    fn from_components(components: Vec<LocusComponent>) -> Result<Self, G2Error> {
        let (mut b0, mut b1) = (0, 0);
        for c in &components {
            if c.twisted {
                b1 += c.copies * twisted_b1(c.surface)?;
            } else {
                let (f0, f1) = fixed_locus_betti(c.surface)?;
                b0 += c.copies * f0;
                b1 += c.copies * (f0 + f1);
            }
        }
        Ok(Self { components, b0, b1 })
    }
}

/// Circle families of the singular set, before fixing the K3 data: for each
/// `Γ`-orbit of fixed circles, the K3 involution acting there and whether the
/// stabilizer reverses the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleOrbit {
    pub rho: usize,
    pub element: usize,
    pub circle: TorusComponent,
    pub orbit_size: usize,
    pub twisted: bool,
}

/// Orbits of fixed circles for the elements whose K3 locus is nonempty.
pub fn circle_orbits(action: &BuiltinAction, nonempty: [bool; 3]) -> Result<Vec<CircleOrbit>, G2Error> {
    let group = &action.group;
    let n = group.order();
    let fixed: Vec<_> = group.elements.iter().map(fixed_set).collect();
    let mut items: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        let Some(rho) = action.labels[i].rho_index() else {
            if !fixed[i].is_empty() {
                return Err(G2Error::NonA1Singularity("element acting trivially on S has fixed points".to_string()));
            }
            continue;
        };
        if !nonempty[rho - 1] || fixed[i].is_empty() {
            continue;
        }
        if fixed[i].dimension != Some(1) {
            return Err(G2Error::NonA1Singularity(format!("fixed set of dimension {:?}", fixed[i].dimension)));
        }
        items.extend((0..fixed[i].components.len()).map(|c| (i, c)));
    }
    check_disjoint(action, &fixed, &items, nonempty)?;
    let act = |h: usize, (g, c): (usize, usize)| -> Result<(usize, usize), G2Error> {
        let conj = group.table[group.table[h][g]][group.inverse_index(h)];
        let image = fixed[g].components[c].image(&group.elements[h]);
        let idx = fixed[conj]
            .components
            .iter()
            .position(|d| *d == image)
            .ok_or_else(|| G2Error::NonA1Singularity("image of a fixed circle is not fixed".to_string()))?;
        Ok((conj, idx))
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &item in &items {
        if seen.contains(&item) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut stabilizer = Vec::new();
        for h in 0..n {
            let img = act(h, item)?;
            orbit.insert(img);
            if img == item {
                stabilizer.push(h);
            }
        }
        let (g, c) = item;
        let circle = fixed[g].components[c].clone();
        let dir = circle.direction().expect("circle");
        let mut twisted = false;
        for &h in &stabilizer {
            if h == 0 || h == g {
                continue;
            }
            let image = group.elements[h].apply_linear(&dir);
            if image == dir.map(|x| -x) {
                twisted = true;
            } else {
                return Err(G2Error::NonA1Singularity("stabilizer rotates a fixed circle".to_string()));
            }
        }
        if stabilizer.len() > 4 {
            return Err(G2Error::NonA1Singularity("stabilizer larger than Z2^2".to_string()));
        }
        let rho = action.labels[g].rho_index().expect("nontrivial label");
        seen.extend(orbit.iter().copied());
        out.push(CircleOrbit { rho, element: g, circle, orbit_size: orbit.len(), twisted });
    }
    Ok(out)
}

/// Circles of different K3 involutions may only meet when some involution
/// has empty locus, since common fixed points on `S` are fixed by all three.
fn check_disjoint(
    action: &BuiltinAction,
    fixed: &[crate::torus::TorusFixedSet],
    items: &[(usize, usize)],
    nonempty: [bool; 3],
) -> Result<(), G2Error> {
    if nonempty.iter().any(|x| !x) {
        return Ok(());
    }
    for (x, &(g1, c1)) in items.iter().enumerate() {
        for &(g2, c2) in &items[x + 1..] {
            if action.labels[g1] == action.labels[g2] {
                continue;
            }
            let a = &fixed[g1].components[c1];
            let b = &fixed[g2].components[c2];
            let mut dirs = a.directions.clone();
            dirs.extend(b.directions.iter().copied());
            if TorusComponent::canonical(a.base_point, dirs).contains(&b.base_point) {
                return Err(G2Error::NonA1Singularity("fixed circles of different involutions meet".to_string()));
            }
        }
    }
    Ok(())
}

/// Why an input is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub reason: Option<String>,
}

impl Admissibility {
    fn ok() -> Self {
        Self { admissible: true, reason: None }
    }

    fn reject(reason: impl Into<String>) -> Self {
        Self { admissible: false, reason: Some(reason.into()) }
    }
}

/// Why `t` may not sit in slot `slot` of a Case 3 input, if it may not.
pub fn case3_exclusion(t: &LocusTriple, slot: usize) -> Option<String> {
    if t.r == 10 && t.a == 8 && t.delta == Some(0) {
        return Some(format!("rho{slot}: TwoElliptic excluded"));
    }
    if t.r >= t.a + 4 {
        return Some(format!("rho{slot}: r - a >= 4"));
    }
    if t.r + t.a == 22 && t.r != t.a {
        return Some(format!("rho{slot}: r + a = 22 with r != a"));
    }
    None
}

pub fn admissible(case: ConstructionCase, input: &InvariantInput) -> Admissibility {
    match admissible_inner(case, input) {
        Ok(a) => a,
        Err(e) => Admissibility::reject(e.to_string()),
    }
}

fn admissible_inner(case: ConstructionCase, input: &InvariantInput) -> Result<Admissibility, G2Error> {
    for t in input.rho.iter().flatten() {
        if (t.r, t.a) != (10, 10) && (t.r, t.a) != (10, 8) {
            t.topology()?;
        }
    }
    input.ranks()?;
    Ok(match case {
        ConstructionCase::Case1 => {
            if input.get(2)?.is_empty_locus()? {
                Admissibility::reject("Fix(rho2) is empty")
            } else {
                Admissibility::ok()
            }
        }
        ConstructionCase::Case2 => {
            if input.get(1)?.is_empty_locus()? && input.get(2)?.is_empty_locus()? {
                Admissibility::reject("Fix(rho1) and Fix(rho2) are both empty")
            } else {
                Admissibility::ok()
            }
        }
        ConstructionCase::Case3 => {
            let t1 = input.get(1)?;
            if !(t1.r == 10 && t1.a == 10 && t1.delta == Some(0)) {
                return Ok(Admissibility::reject("Fix(rho1) must be empty, i.e. (10,10,0)"));
            }
            for slot in [2, 3] {
                let t = input.get(slot)?;
                if let Some(reason) = case3_exclusion(&t, slot) {
                    return Ok(Admissibility::reject(reason));
                }
                t.topology()?;
            }
            Admissibility::ok()
        }
        ConstructionCase::D4 => {
            if input.get(2)?.is_empty_locus()? {
                Admissibility::reject("Fix(rho2) is empty")
            } else if input.get(3)?.is_empty_locus()? {
                Admissibility::reject("Fix(rho1 rho2) is empty")
            } else {
                Admissibility::ok()
            }
        }
    })
}

fn require_admissible(case: ConstructionCase, input: &InvariantInput) -> Result<(), G2Error> {
    let adm = admissible(case, input);
    if adm.admissible {
        Ok(())
    } else {
        Err(G2Error::Inadmissible(adm.reason.unwrap_or_default()))
    }
}

/// Whether each involution contributes fixed points: its locus on `S` is
/// nonempty and some group element acting by it has torus fixed points.
/// Input is required only for involutions met by such elements.
fn nonempty_flags(action: &BuiltinAction, input: &InvariantInput) -> Result<[bool; 3], G2Error> {
    let mut flags = [false; 3];
    for (elem, label) in action.group.elements.iter().zip(&action.labels) {
        let Some(rho) = label.rho_index() else { continue };
        if !flags[rho - 1] && !fixed_set(elem).is_empty() {
            flags[rho - 1] = !input.get(rho)?.is_empty_locus()?;
        }
    }
    Ok(flags)
}

/// Singular locus of `(S × T³)/Γ` derived from the group action.
pub fn singular_locus(case: ConstructionCase, input: &InvariantInput) -> Result<SingularLocusModel, G2Error> {
    require_admissible(case, input)?;
    let action = builtin_action(case)?;
    let flags = nonempty_flags(&action, input)?;
    let orbits = circle_orbits(&action, flags)?;
    let mut grouped: BTreeMap<(usize, bool), u32> = BTreeMap::new();
    for o in &orbits {
        *grouped.entry((o.rho, o.twisted)).or_default() += 1;
    }
    let mut components = Vec::new();
    for ((rho, twisted), copies) in grouped {
        components.push(LocusComponent { rho, surface: input.get(rho)?.topology()?, copies, twisted });
    }
    SingularLocusModel::from_components(components)
}

/// `bᵏ(N) = bᵏ(orbifold) + b^{k−2}(L)`.
pub fn resolve_betti(orbifold: (u32, u32, u32), locus: &SingularLocusModel) -> (u32, u32, u32) {
    (orbifold.0, orbifold.1 + locus.b0, orbifold.2 + locus.b1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pi1Label {
    Trivial,
    ZRtimesZ2,
    Z3RtimesZ2Squared,
    Other,
}

impl fmt::Display for Pi1Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Trivial => "trivial",
            Self::ZRtimesZ2 => "Z⋊Z2",
            Self::Z3RtimesZ2Squared => "Z³⋊Z2²",
            Self::Other => "other",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HolonomyLabel {
    G2,
    SU3RtimesZ2,
    Smaller,
}

impl fmt::Display for HolonomyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::G2 => "G2",
            Self::SU3RtimesZ2 => "SU(3)⋊Z2",
            Self::Smaller => "smaller",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2Outcome {
    pub case: ConstructionCase,
    pub b1: u32,
    pub b2: u32,
    pub b3: u32,
    pub pi1: Pi1Label,
    pub holonomy: HolonomyLabel,
    /// Holonomy `SU(3)⋊ℤ₂`.
    pub barely: bool,
    pub locus: SingularLocusModel,
}

/// Resolved Betti numbers and labels, computed from the group action.
pub fn outcome(case: ConstructionCase, input: &InvariantInput) -> Result<G2Outcome, G2Error> {
    let locus = singular_locus(case, input)?;
    let orb = orbifold_betti(case, input)?;
    let (b1, b2, b3) = resolve_betti(orb, &locus);
    let e = |i: usize| -> Result<bool, G2Error> { Ok(!input.get(i)?.is_empty_locus()?) };
    let all_used_nonempty = match case {
        ConstructionCase::Case1 => false,
        ConstructionCase::Case2 => e(1)? && e(2)?,
        ConstructionCase::Case3 | ConstructionCase::D4 => e(2)? && e(3)?,
    };
    let (pi1, holonomy) = if all_used_nonempty {
        (Pi1Label::Trivial, HolonomyLabel::G2)
    } else {
        (Pi1Label::ZRtimesZ2, HolonomyLabel::SU3RtimesZ2)
    };
    Ok(G2Outcome { case, b1, b2, b3, pi1, holonomy, barely: !all_used_nonempty, locus })
}

/// The published closed forms for `(b², b³)`.
pub fn closed_form_betti(case: ConstructionCase, input: &InvariantInput) -> Result<(u32, u32), G2Error> {
    require_admissible(case, input)?;
    let one = |t: LocusTriple| (t.r - t.a + 2, 69 - t.r - 3 * t.a);
    Ok(match case {
        ConstructionCase::Case1 => one(input.get(2)?),
        ConstructionCase::Case2 => {
            let (t1, t2) = (input.get(1)?, input.get(2)?);
            match (t1.is_empty_locus()?, t2.is_empty_locus()?) {
                (true, _) => one(t2),
                (_, true) => one(t1),
                _ => (4 + t1.r + t2.r - t1.a - t2.a, 115 - t1.r - t2.r - 3 * t1.a - 3 * t2.a),
            }
        }
        ConstructionCase::Case3 => {
            let (t2, t3) = (input.get(2)?, input.get(3)?);
            match (t2.is_empty_locus()?, t3.is_empty_locus()?) {
                (true, _) => (0, 71 - 4 * t3.a),
                (_, true) => (0, 71 - 4 * t2.a),
                _ => (0, 119 - 4 * (t2.a + t3.a)),
            }
        }
        ConstructionCase::D4 => {
            let (t2, t3) = (input.get(2)?, input.get(3)?);
            let (r, a) = (t2.r + t3.r, t2.a + t3.a);
            (8 + 2 * r - 2 * a, 207 - 2 * r - 6 * a)
        }
    })
}

/// Both routes side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiComparison {
    pub derived: (u32, u32),
    pub closed_form: (u32, u32),
}

impl BettiComparison {
    pub fn agrees(&self) -> bool {
        self.derived == self.closed_form
    }
}

pub fn cross_check(case: ConstructionCase, input: &InvariantInput) -> Result<BettiComparison, G2Error> {
    let o = outcome(case, input)?;
    Ok(BettiComparison { derived: (o.b2, o.b3), closed_form: closed_form_betti(case, input)? })
}

/// Subgroup generated by elements with a fixed point on `S × T³`; the
/// quotient is simply connected exactly when this is all of `Γ`.
pub fn fixed_point_subgroup_order(action: &BuiltinAction, nonempty: [bool; 3]) -> usize {
    let group = &action.group;
    let gens: Vec<usize> = (1..group.order())
        .filter(|&i| {
            let on_s = match action.labels[i].rho_index() {
                None => true,
                Some(rho) => nonempty[rho - 1],
            };
            on_s && !fixed_set(&group.elements[i]).is_empty()
        })
        .collect();
    let mut reached = BTreeSet::from([0usize]);
    let mut frontier = alloc::vec![0usize];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = group.table[x][g];
            if reached.insert(y) {
                frontier.push(y);
            }
        }
    }
    reached.len()
}
