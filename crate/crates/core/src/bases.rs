//! Bases, positive systems, Cartan matrices, and virtual reflections.
//!
//! A base is a linearly independent spanning tuple of roots such that every
//! root has all-nonnegative or all-nonpositive integer coordinates in it.
//! Bases are in bijection with positive systems, and any two bases are
//! connected by a chain of virtual reflections, which is what
//! [`Base::enumerate_all`] exploits to list all of them.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::grs::{Grs, GrsError};
use crate::linalg;
use crate::rat::{
    add_coords, add_scaled, coord_signs, is_integer, is_zero_coords, neg_coords, rint,
    sub_coords, Rat,
};
use crate::Coords;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseError {
    NotABasis,
    NotARoot(Coords),
    NonIntegralCoordinates(Coords),
    MixedSigns(Coords),
    NotASimpleRoot(Coords),
    Grs(GrsError),
}

impl fmt::Display for BaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseError::NotABasis => write!(f, "tuple is not a vector space basis"),
            BaseError::NotARoot(v) => {
                write!(f, "not a root: {}", crate::rat::format_coords(v))
            }
            BaseError::NonIntegralCoordinates(v) => write!(
                f,
                "root has non-integer coordinates in the tuple: {}",
                crate::rat::format_coords(v)
            ),
            BaseError::MixedSigns(v) => write!(
                f,
                "root has mixed-sign coordinates in the tuple: {}",
                crate::rat::format_coords(v)
            ),
            BaseError::NotASimpleRoot(v) => write!(
                f,
                "not a simple root of this base: {}",
                crate::rat::format_coords(v)
            ),
            BaseError::Grs(e) => write!(f, "{e}"),
        }
    }
}

impl From<GrsError> for BaseError {
    fn from(e: GrsError) -> Self {
        BaseError::Grs(e)
    }
}

/// An ordered base of a GRS, with cached coordinate data.
#[derive(Clone)]
pub struct Base {
    grs: Grs,
    simples: Vec<Coords>,
    /// Inverse of the matrix whose columns are the simple roots: maps
    /// ambient coordinates to base coordinates.
    to_base: Vec<Vec<Rat>>,
}

impl fmt::Debug for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Base[")?;
        for (i, s) in self.simples.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", crate::rat::format_coords(s))?;
        }
        write!(f, "]")
    }
}

impl PartialEq for Base {
    /// Base equality is set equality of the simple roots.
    fn eq(&self, other: &Self) -> bool {
        self.grs == other.grs && self.canonical_key() == other.canonical_key()
    }
}
impl Eq for Base {}

impl Base {
    /// Validate and build a base: the tuple must be a vector space basis and
    /// every root must have one-signed integer coordinates in it.
    pub fn new(grs: Grs, simples: Vec<Coords>) -> Result<Base, BaseError> {
        for s in &simples {
            if !grs.contains(s) {
                return Err(BaseError::NotARoot(s.clone()));
            }
        }
        let base = Base::new_unchecked(grs, simples)?;
        for r in base.grs.roots() {
            let c = base.coords(r);
            if !crate::rat::all_integer(&c) {
                return Err(BaseError::NonIntegralCoordinates(r.clone()));
            }
            let (pos, neg) = coord_signs(&c);
            if pos && neg {
                return Err(BaseError::MixedSigns(r.clone()));
            }
        }
        Ok(base)
    }

    /// Build without the per-root sign checks (for tuples produced by
    /// operations that guarantee base-ness). Still requires invertibility.
    pub(crate) fn new_unchecked(grs: Grs, simples: Vec<Coords>) -> Result<Base, BaseError> {
        if simples.len() != grs.rank() {
            return Err(BaseError::NotABasis);
        }
        let cols = linalg::transpose(&simples);
        let to_base = linalg::invert(&cols).ok_or(BaseError::NotABasis)?;
        Ok(Base {
            grs,
            simples,
            to_base,
        })
    }

    pub fn grs(&self) -> &Grs {
        &self.grs
    }

    pub fn simples(&self) -> &[Coords] {
        &self.simples
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    /// Coordinates of an ambient vector in this base.
    pub fn coords(&self, v: &[Rat]) -> Coords {
        linalg::mat_vec(&self.to_base, v)
    }

    /// Ambient vector from base coordinates.
    pub fn from_coords(&self, c: &[Rat]) -> Coords {
        let mut out = crate::rat::zero_coords(self.grs.rank());
        for (ci, s) in c.iter().zip(&self.simples) {
            if !ci.is_zero() {
                out = add_scaled(&out, ci, s);
            }
        }
        out
    }

    /// Set-equality key: the simple roots in sorted order.
    pub fn canonical_key(&self) -> Vec<Coords> {
        let mut key = self.simples.clone();
        key.sort();
        key
    }

    /// The same base with simples sorted lexicographically.
    pub fn canonicalized(&self) -> Base {
        Base::new_unchecked(self.grs.clone(), self.canonical_key()).expect("same span")
    }

    pub fn opposite(&self) -> Base {
        let simples = self.simples.iter().map(|s| neg_coords(s)).collect();
        Base::new_unchecked(self.grs.clone(), simples).expect("negated basis")
    }

    pub fn index_of(&self, simple: &[Rat]) -> Option<usize> {
        self.simples.iter().position(|s| s == simple)
    }

    /// Height: the sum of base coordinates. Integer-valued on roots.
    pub fn height(&self, v: &[Rat]) -> Result<Rat, BaseError> {
        if v.len() != self.grs.rank() {
            return Err(BaseError::Grs(GrsError::Space(
                crate::space::SpaceError::DimensionMismatch,
            )));
        }
        Ok(self.coords(v).into_iter().sum())
    }

    /// `a <= b` in the base order: `b - a` has all-nonnegative coordinates.
    pub fn leq(&self, a: &[Rat], b: &[Rat]) -> bool {
        let diff = self.coords(&sub_coords(b, a));
        !diff.iter().any(|c| c.is_negative())
    }

    /// The positive system `R+(S)`: exactly the nonnegative-coordinate
    /// roots (zero included).
    pub fn positive_system(&self) -> PositiveSystem {
        let positives: BTreeSet<Coords> = self
            .grs
            .roots()
            .filter(|r| {
                let (_, neg) = coord_signs(&self.coords(r));
                !neg
            })
            .cloned()
            .collect();
        PositiveSystem {
            grs: self.grs.clone(),
            positives,
        }
    }

    /// Cartan matrix `c[i][j] = 2 <s_i, s_j> / <s_i, s_i>`. Entries are
    /// exact rationals and need not be integers.
    pub fn cartan_matrix(&self) -> CartanMatrix {
        let space = self.grs.space();
        let entries: Vec<Vec<Rat>> = self
            .simples
            .iter()
            .map(|si| {
                let nsq = space.ip(si, si);
                self.simples
                    .iter()
                    .map(|sj| rint(2) * space.ip(si, sj) / nsq.clone())
                    .collect()
            })
            .collect();
        CartanMatrix { entries }
    }

    /// The base obtained by applying the virtual reflection along a simple
    /// root to every simple root.
    pub fn reflect(&self, alpha: &[Rat]) -> Result<Base, BaseError> {
        if self.index_of(alpha).is_none() {
            return Err(BaseError::NotASimpleRoot(alpha.to_vec()));
        }
        let simples: Vec<Coords> = self
            .simples
            .iter()
            .map(|beta| {
                if beta == alpha {
                    neg_coords(alpha)
                } else {
                    // reversal of the alpha-string through beta
                    let s = self.grs.root_string(beta, alpha).expect("simple roots");
                    let shift = rint(i64::from(s.q) - i64::from(s.p));
                    add_scaled(beta, &shift, alpha)
                }
            })
            .collect();
        Base::new_unchecked(self.grs.clone(), simples)
    }

    /// All bases of the GRS: breadth-first closure of [`Base::reflect`]
    /// starting from this base, together with the adjacency graph whose
    /// edges are labeled by the reflected simple root.
    pub fn enumerate_all(&self) -> BaseGraph {
        let mut bases: Vec<Base> = Vec::new();
        let mut index: BTreeMap<Vec<Coords>, usize> = BTreeMap::new();
        let mut edges: BTreeSet<(usize, usize, Coords)> = BTreeSet::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        let start = self.clone();
        index.insert(start.canonical_key(), 0);
        bases.push(start);
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let current = bases[i].clone();
            for alpha in current.simples().to_vec() {
                let next = current.reflect(&alpha).expect("simple root of current");
                let key = next.canonical_key();
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = bases.len();
                        index.insert(key, j);
                        bases.push(next);
                        queue.push_back(j);
                        j
                    }
                };
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                edges.insert((a, b, alpha));
            }
        }
        BaseGraph {
            grs: self.grs.clone(),
            bases,
            edges: edges.into_iter().collect(),
        }
    }

    /// Positive system `(R+ \ R_I+) u (-R_I+)` for a subset `I` of the
    /// simple roots (given by indices). Its base contains `-I`.
    pub fn flip_subset_positive(&self, subset: &[usize]) -> Result<PositiveSystem, BaseError> {
        for &i in subset {
            if i >= self.rank() {
                return Err(BaseError::NotASimpleRoot(Vec::new()));
            }
        }
        let in_subset = |idx: usize| subset.contains(&idx);
        let positives_before = self.positive_system();
        let mut positives: BTreeSet<Coords> = BTreeSet::new();
        for r in positives_before.iter() {
            let c = self.coords(r);
            // inside span(I) iff support within the subset
            let inside = c
                .iter()
                .enumerate()
                .all(|(i, x)| x.is_zero() || in_subset(i));
            if inside && !is_zero_coords(r) {
                positives.insert(neg_coords(r));
            } else {
                positives.insert(r.clone());
            }
        }
        Ok(PositiveSystem {
            grs: self.grs.clone(),
            positives,
        })
    }

    /// Support of a root: the simple roots with nonzero coefficient, with
    /// connectivity w.r.t. non-orthogonality among them.
    pub fn support(&self, beta: &[Rat]) -> Result<Support, BaseError> {
        if !self.grs.contains(beta) {
            return Err(BaseError::NotARoot(beta.to_vec()));
        }
        let c = self.coords(beta);
        let indices: Vec<usize> = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect();
        let connected = self.subset_connected(&indices);
        Ok(Support { indices, connected })
    }

    /// Connectivity of a set of simple-root indices under non-orthogonality.
    pub fn subset_connected(&self, indices: &[usize]) -> bool {
        if indices.is_empty() {
            return true;
        }
        let space = self.grs.space();
        let mut seen = vec![false; indices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..indices.len() {
                if !seen[j]
                    && !space
                        .ip(&self.simples[indices[i]], &self.simples[indices[j]])
                        .is_zero()
                {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The unique maximal root with respect to this base. Requires an
    /// irreducible system; all its base coefficients are strictly positive.
    pub fn highest_root(&self) -> Result<Coords, BaseError> {
        if !self.grs.is_irreducible() {
            return Err(BaseError::Grs(GrsError::Reducible));
        }
        let theta = self
            .positive_system()
            .iter()
            .max_by_key(|r| self.height(r).expect("root in space"))
            .expect("positive system nonempty")
            .clone();
        debug_assert!(
            self.grs.roots().all(|r| self.leq(r, &theta)),
            "height-maximal root must dominate all roots"
        );
        debug_assert!(self.coords(&theta).iter().all(|c| c.is_positive()));
        Ok(theta)
    }

    /// Poset meet in `R+`: the coordinatewise minimum, which is again a
    /// root.
    pub fn meet(&self, b1: &[Rat], b2: &[Rat]) -> Result<Coords, BaseError> {
        self.expect_positive(b1)?;
        self.expect_positive(b2)?;
        let c1 = self.coords(b1);
        let c2 = self.coords(b2);
        let m: Coords = c1
            .iter()
            .zip(&c2)
            .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
            .collect();
        let v = self.from_coords(&m);
        debug_assert!(self.grs.contains(&v), "coordinatewise min must be a root");
        Ok(v)
    }

    /// Poset join in `R+`: the meet of the set of common upper bounds. Not
    /// in general the coordinatewise maximum.
    pub fn join(&self, b1: &[Rat], b2: &[Rat]) -> Result<Coords, BaseError> {
        self.expect_positive(b1)?;
        self.expect_positive(b2)?;
        let positives = self.positive_system_cache();
        let uppers: Vec<&Coords> = positives
            .iter()
            .filter(|g| self.leq(b1, g) && self.leq(b2, g))
            .collect();
        // nonempty: contains the highest root of each component
        let mut min_coords: Option<Coords> = None;
        for g in &uppers {
            let c = self.coords(g);
            min_coords = Some(match min_coords {
                None => c,
                Some(m) => m
                    .iter()
                    .zip(&c)
                    .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                    .collect(),
            });
        }
        let v = self.from_coords(&min_coords.expect("upper bound set is nonempty"));
        debug_assert!(self.grs.contains(&v), "meet of upper bounds must be a root");
        Ok(v)
    }

    fn positive_system_cache(&self) -> Vec<Coords> {
        // positives recomputed on demand; callers that loop should hold on
        // to a PositiveSystem instead
        self.positive_system().iter().cloned().collect()
    }

    fn expect_positive(&self, v: &[Rat]) -> Result<(), BaseError> {
        if !self.grs.contains(v) {
            return Err(BaseError::NotARoot(v.to_vec()));
        }
        let (_, neg) = coord_signs(&self.coords(v));
        if neg {
            return Err(BaseError::MixedSigns(v.to_vec()));
        }
        Ok(())
    }
}

/// Base adjacency graph produced by exhaustive enumeration: nodes are bases,
/// edges are virtual reflections labeled by the reflected simple root.
#[derive(Debug, Clone)]
pub struct BaseGraph {
    pub grs: Grs,
    pub bases: Vec<Base>,
    pub edges: Vec<(usize, usize, Coords)>,
}

impl BaseGraph {
    pub fn count(&self) -> usize {
        self.bases.len()
    }

    pub fn contains_base(&self, other: &Base) -> bool {
        let key = other.canonical_key();
        self.bases.iter().any(|b| b.canonical_key() == key)
    }
}

/// A positive system: closed under addition within `R`, `R = P u -P`,
/// `P n -P = {0}`. Zero is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveSystem {
    grs: Grs,
    positives: BTreeSet<Coords>,
}

impl PositiveSystem {
    pub fn grs(&self) -> &Grs {
        &self.grs
    }

    pub fn iter(&self) -> impl Iterator<Item = &Coords> {
        self.positives.iter()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.positives.contains(v)
    }

    /// Number of elements including zero.
    pub fn count(&self) -> usize {
        self.positives.len()
    }

    pub fn set(&self) -> &BTreeSet<Coords> {
        &self.positives
    }

    /// Positive iff the coordinate vector is lexicographically positive
    /// under the given coordinate ordering. This realizes a generic linear
    /// functional: lexicographic order is a total group order on the
    /// lattice, so the axioms hold with no perturbation bookkeeping.
    pub fn lexicographic(grs: &Grs, ordering: &[usize]) -> PositiveSystem {
        assert_eq!(ordering.len(), grs.rank());
        let positives: BTreeSet<Coords> = grs
            .roots()
            .filter(|r| {
                for &i in ordering {
                    if r[i].is_positive() {
                        return true;
                    }
                    if r[i].is_negative() {
                        return false;
                    }
                }
                true // zero
            })
            .cloned()
            .collect();
        PositiveSystem {
            grs: grs.clone(),
            positives,
        }
    }

    /// The indecomposable nonzero elements, ordered lexicographically, as a
    /// base. Round-trips with [`Base::positive_system`].
    pub fn base(&self) -> Base {
        let nonzero: Vec<&Coords> = self
            .positives
            .iter()
            .filter(|r| !is_zero_coords(r))
            .collect();
        let mut simples: Vec<Coords> = Vec::new();
        for &beta in &nonzero {
            let decomposable = nonzero.iter().any(|&g| {
                if g == beta || is_zero_coords(g) {
                    return false;
                }
                let rest = sub_coords(beta, g);
                !is_zero_coords(&rest) && self.positives.contains(&rest)
            });
            if !decomposable {
                simples.push(beta.clone());
            }
        }
        let base = Base::new_unchecked(self.grs.clone(), simples)
            .expect("indecomposables of a positive system form a base");
        debug_assert_eq!(&base.positive_system(), self);
        base
    }

    /// Axioms check, used by tests: closure under addition, covering, and
    /// trivial intersection with the negation.
    pub fn check_axioms(&self) -> bool {
        for a in self.iter() {
            for b in self.iter() {
                let s = add_coords(a, b);
                if self.grs.contains(&s) && !self.positives.contains(&s) {
                    return false;
                }
            }
        }
        for r in self.grs.roots() {
            let pos = self.positives.contains(r);
            let neg = self.positives.contains(&neg_coords(r));
            if !pos && !neg {
                return false;
            }
            if pos && neg && !is_zero_coords(r) {
                return false;
            }
        }
        true
    }
}

/// Exact Cartan matrix of a pair `(R, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<Rat>>,
}

impl CartanMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Diagonal 2, off-diagonal nonpositive, zero-symmetric.
    pub fn check_invariants(&self) -> bool {
        let n = self.rank();
        for i in 0..n {
            if self.entries[i][i] != rint(2) {
                return false;
            }
            for j in 0..n {
                if i != j {
                    if self.entries[i][j].is_positive() {
                        return false;
                    }
                    if self.entries[i][j].is_zero() != self.entries[j][i].is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(is_integer)
    }

    /// Entries permuted by `perm` on both rows and columns:
    /// `result[i][j] = entries[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> CartanMatrix {
        let entries = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        CartanMatrix { entries }
    }
}

/// The string-reversing involution along a root, as an explicit bijection
/// table on the root set. Generally not linear.
#[derive(Debug, Clone)]
pub struct VirtualReflection {
    grs: Grs,
    axis: Coords,
    map: BTreeMap<Coords, Coords>,
}

impl VirtualReflection {
    /// Virtual reflection along `alpha`. A non-primitive axis delegates to
    /// its primitive generator, so the reflections along `alpha` and
    /// `2*alpha` coincide.
    pub fn new(grs: &Grs, alpha: &[Rat]) -> Result<VirtualReflection, GrsError> {
        if is_zero_coords(alpha) {
            return Err(GrsError::ZeroAxis);
        }
        let axis = grs.primitive_generator(alpha)?;
        let mut map: BTreeMap<Coords, Coords> = BTreeMap::new();
        for beta in grs.roots() {
            if map.contains_key(beta) {
                continue;
            }
            // walk to the start of the alpha-string through beta
            let s = grs.root_string(beta, &axis).expect("roots of grs");
            let start = add_scaled(beta, &rint(-i64::from(s.p)), &axis);
            let len = s.len();
            for i in 0..len {
                let from = add_scaled(&start, &rint(i64::from(i)), &axis);
                let to = add_scaled(&start, &rint(i64::from(len - 1 - i)), &axis);
                map.insert(from, to);
            }
        }
        Ok(VirtualReflection {
            grs: grs.clone(),
            axis,
            map,
        })
    }

    pub fn axis(&self) -> &Coords {
        &self.axis
    }

    pub fn apply(&self, root: &[Rat]) -> Result<&Coords, GrsError> {
        self.map
            .get(root)
            .ok_or_else(|| GrsError::NotARoot(root.to_vec()))
    }

    pub fn table(&self) -> &BTreeMap<Coords, Coords> {
        &self.map
    }

    /// Try to extend the bijection table to a linear map of the ambient
    /// space; `None` when no linear extension exists.
    pub fn linear_extension(&self) -> Option<Vec<Vec<Rat>>> {
        // pick a root basis, define the map from their images, verify on all
        let roots: Vec<&Coords> = self.grs.roots().collect();
        let mut basis: Vec<Coords> = Vec::new();
        let mut images: Vec<Coords> = Vec::new();
        for r in &roots {
            let mut trial = basis.clone();
            trial.push((*r).clone());
            if linalg::rank(&trial) > basis.len() {
                images.push(self.map.get(*r).expect("table complete").clone());
                basis = trial;
            }
        }
        // M * basis_i = image_i  =>  M = images_mat * basis_mat^{-1}
        let basis_cols = linalg::transpose(&basis);
        let images_cols = linalg::transpose(&images);
        let inv = linalg::invert(&basis_cols)?;
        let m = linalg::mat_mul(&images_cols, &inv);
        for r in &roots {
            if &linalg::mat_vec(&m, r) != self.map.get(*r).expect("table complete") {
                return None;
            }
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rfrac, rint};
    use crate::space::AmbientSpace;

    fn v2(a: i64, b: i64) -> Coords {
        vec![rint(a), rint(b)]
    }

    fn a2() -> Grs {
        let space =
            AmbientSpace::new(vec![vec![rint(2), rint(-1)], vec![rint(-1), rint(2)]]).unwrap();
        let roots = vec![v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1), v2(1, 1), v2(-1, -1)];
        Grs::validate(space, roots, None).unwrap()
    }

    /// B2 with base (alpha1 long, alpha2 short), Bourbaki normalization.
    fn b2() -> Grs {
        let space =
            AmbientSpace::new(vec![vec![rint(2), rint(-1)], vec![rint(-1), rint(1)]]).unwrap();
        let roots = vec![
            v2(1, 0),
            v2(-1, 0),
            v2(0, 1),
            v2(0, -1),
            v2(1, 1),
            v2(-1, -1),
            v2(1, 2),
            v2(-1, -2),
        ];
        Grs::validate(space, roots, None).unwrap()
    }

    fn g2() -> Grs {
        // alpha1 short (norm 2/3), alpha2 long (norm 2)
        let space = AmbientSpace::new(vec![
            vec![rfrac(2, 3), rint(-1)],
            vec![rint(-1), rint(2)],
        ])
        .unwrap();
        let pos = [
            v2(1, 0),
            v2(0, 1),
            v2(1, 1),
            v2(2, 1),
            v2(3, 1),
            v2(3, 2),
        ];
        let mut roots: Vec<Coords> = Vec::new();
        for r in pos {
            roots.push(neg_coords(&r));
            roots.push(r);
        }
        Grs::validate(space, roots, None).unwrap()
    }

    fn std_base(g: &Grs) -> Base {
        Base::new(g.clone(), vec![v2(1, 0), v2(0, 1)]).unwrap()
    }

    #[test]
    fn a2_positive_system() {
        let p = std_base(&a2()).positive_system();
        assert_eq!(p.count(), 4);
        assert!(p.contains(&v2(1, 1)));
        assert!(p.check_axioms());
    }

    #[test]
    fn b2_positive_count() {
        let p = std_base(&b2()).positive_system();
        assert_eq!(p.count(), 5);
    }

    #[test]
    fn g2_positive_count_and_string() {
        let g = g2();
        let p = std_base(&g).positive_system();
        assert_eq!(p.count(), 7);
        // string of alpha1 (short) through alpha2: length 4
        let s = g.root_string(&v2(0, 1), &v2(1, 0)).unwrap();
        assert_eq!((s.p, s.q), (0, 3));
    }

    #[test]
    fn b2_string_of_short_through_long() {
        let g = b2();
        let s = g.root_string(&v2(1, 0), &v2(0, 1)).unwrap();
        assert_eq!((s.p, s.q), (0, 2));
    }

    #[test]
    fn lex_positive_matches_standard_on_a2() {
        let g = a2();
        let p = PositiveSystem::lexicographic(&g, &[0, 1]);
        assert_eq!(p, std_base(&g).positive_system());
        let p_rev = PositiveSystem::lexicographic(&g, &[1, 0]);
        assert_eq!(p_rev.set(), p.set());
        assert!(p_rev.check_axioms());
    }

    #[test]
    fn base_from_positive_round_trips() {
        let g = a2();
        let p = std_base(&g).positive_system();
        let b = p.base();
        assert_eq!(b.canonical_key(), vec![v2(0, 1), v2(1, 0)]);

        // BC1-type: {0, a, 2a}: 2a decomposable
        let space = AmbientSpace::new(vec![vec![rint(1)]]).unwrap();
        let r1 = Grs::validate(
            space,
            vec![vec![rint(1)], vec![rint(-1)], vec![rint(2)], vec![rint(-2)]],
            None,
        )
        .unwrap();
        let p1 = PositiveSystem::lexicographic(&r1, &[0]);
        assert_eq!(p1.base().simples(), &[vec![rint(1)]]);
    }

    #[test]
    fn heights() {
        let b = std_base(&a2());
        assert_eq!(b.height(&v2(1, 1)).unwrap(), rint(2));
        assert_eq!(b.height(&v2(1, 0)).unwrap(), rint(1));
        assert_eq!(b.height(&v2(0, 0)).unwrap(), rint(0));
    }

    #[test]
    fn cartan_matrices() {
        let c = std_base(&a2()).cartan_matrix();
        assert_eq!(
            c.entries,
            vec![vec![rint(2), rint(-1)], vec![rint(-1), rint(2)]]
        );
        assert!(c.check_invariants());

        // G2 with alpha1 short first: c12 = -3, c21 = -1
        let c = std_base(&g2()).cartan_matrix();
        assert_eq!(
            c.entries,
            vec![vec![rint(2), rint(-3)], vec![rint(-1), rint(2)]]
        );
    }

    #[test]
    fn reflect_base_examples() {
        // A2: reflect {a1, a2} at a1 -> {-a1, a1+a2}
        let b = std_base(&a2());
        let rb = b.reflect(&v2(1, 0)).unwrap();
        assert_eq!(rb.canonical_key(), vec![v2(-1, 0), v2(1, 1)]);

        // B2: reflect at the short root alpha2 ({alpha, beta} with
        // alpha = alpha2 short): sigma_alpha2({a1, a2}) = {a1 + 2 a2, -a2}
        let b = std_base(&b2());
        let rb = b.reflect(&v2(0, 1)).unwrap();
        assert_eq!(rb.canonical_key(), vec![v2(0, -1), v2(1, 2)]);

        // G2: reflect at short alpha1: {-a1, a2 + 3 a1}
        let b = std_base(&g2());
        let rb = b.reflect(&v2(1, 0)).unwrap();
        assert_eq!(rb.canonical_key(), vec![v2(-1, 0), v2(3, 1)]);

        // double reflection at alpha then -alpha returns the base
        let back = rb.reflect(&v2(-1, 0)).unwrap();
        assert_eq!(back.canonical_key(), b.canonical_key());
    }

    #[test]
    fn base_counts_6_8_12() {
        assert_eq!(std_base(&a2()).enumerate_all().count(), 6);
        assert_eq!(std_base(&b2()).enumerate_all().count(), 8);
        assert_eq!(std_base(&g2()).enumerate_all().count(), 12);
    }

    #[test]
    fn positive_base_bijection_over_all_bases() {
        let g = b2();
        let graph = std_base(&g).enumerate_all();
        let mut seen_positive_systems = BTreeSet::new();
        for b in &graph.bases {
            let p = b.positive_system();
            assert!(p.check_axioms());
            assert_eq!(p.base().canonical_key(), b.canonical_key());
            seen_positive_systems.insert(p.set().clone());
        }
        assert_eq!(seen_positive_systems.len(), graph.count());
    }

    #[test]
    fn sigma_is_involution_preserving_roots() {
        let g = b2();
        for alpha in g.nonzero_roots() {
            let s = VirtualReflection::new(&g, alpha).unwrap();
            for r in g.roots() {
                let image = s.apply(r).unwrap();
                assert!(g.contains(image));
                assert_eq!(s.apply(image).unwrap(), r);
            }
            assert_eq!(s.apply(alpha).unwrap(), &neg_coords(alpha));
        }
    }

    #[test]
    fn sigma_delegates_to_primitive() {
        let space = AmbientSpace::new(vec![vec![rint(1)]]).unwrap();
        let g = Grs::validate(
            space,
            vec![vec![rint(1)], vec![rint(-1)], vec![rint(2)], vec![rint(-2)]],
            None,
        )
        .unwrap();
        let s1 = VirtualReflection::new(&g, &[rint(1)]).unwrap();
        let s2 = VirtualReflection::new(&g, &[rint(2)]).unwrap();
        assert_eq!(s1.table(), s2.table());
    }

    #[test]
    fn b2_sigma_reverses_string() {
        // sigma_alpha on the alpha-string through beta, alpha = a2 (short):
        // beta = a1: a1 -> a1 + 2 a2, a1 + a2 fixed, a1 + 2 a2 -> a1
        let g = b2();
        let s = VirtualReflection::new(&g, &v2(0, 1)).unwrap();
        assert_eq!(s.apply(&v2(1, 0)).unwrap(), &v2(1, 2));
        assert_eq!(s.apply(&v2(1, 1)).unwrap(), &v2(1, 1));
        assert_eq!(s.apply(&v2(1, 2)).unwrap(), &v2(1, 0));
    }

    #[test]
    fn flip_subset_positive_examples() {
        let b = std_base(&a2());
        let p = b.flip_subset_positive(&[0]).unwrap();
        let expected: BTreeSet<Coords> =
            [v2(0, 0), v2(-1, 0), v2(0, 1), v2(1, 1)].into_iter().collect();
        assert_eq!(p.set(), &expected);
        assert!(p.check_axioms());
        // base of P contains -I
        assert!(p.base().simples().contains(&v2(-1, 0)));

        let unchanged = b.flip_subset_positive(&[]).unwrap();
        assert_eq!(unchanged.set(), b.positive_system().set());
    }

    #[test]
    fn support_and_highest_root() {
        let g = a2();
        let b = std_base(&g);
        let sup = b.support(&v2(1, 1)).unwrap();
        assert_eq!(sup.indices, vec![0, 1]);
        assert!(sup.connected);
        assert_eq!(b.support(&v2(1, 0)).unwrap().indices, vec![0]);
        assert_eq!(b.highest_root().unwrap(), v2(1, 1));
    }

    #[test]
    fn meet_and_join() {
        // A3 examples live in catalog tests; here check the trivial laws.
        let g = b2();
        let b = std_base(&g);
        assert_eq!(b.meet(&v2(1, 1), &v2(1, 1)).unwrap(), v2(1, 1));
        assert_eq!(b.join(&v2(1, 1), &v2(1, 1)).unwrap(), v2(1, 1));
        assert_eq!(b.meet(&v2(1, 1), &v2(0, 1)).unwrap(), v2(0, 1));
    }

    #[test]
    fn linear_extension_of_sigma() {
        // In B2 every virtual reflection is an honest reflection.
        let g = b2();
        let s = VirtualReflection::new(&g, &v2(1, 0)).unwrap();
        let m = s.linear_extension().expect("root system reflections are linear");
        // reflection matrix fixes the orthogonal complement: M^2 = id
        let m2 = linalg::mat_mul(&m, &m);
        assert_eq!(
            m2,
            vec![vec![rint(1), rint(0)], vec![rint(0), rint(1)]]
        );
    }
}

/// Support of a root w.r.t. a base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    /// Indices into the base's simple tuple.
    pub indices: Vec<usize>,
    /// Connected w.r.t. non-orthogonality among the supporting simples.
    pub connected: bool,
}
