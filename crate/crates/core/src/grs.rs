//! Generalized root systems: validation and root-level queries.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::linalg;
use crate::rat::{
    add_coords, add_scaled, format_coords, is_zero_coords, neg_coords, rint, scale_coords,
    sub_coords, zero_coords, Rat,
};
use crate::space::{AmbientSpace, SpaceError};
use crate::Coords;

/// Why a candidate set is not a GRS.
///
/// The pair reported is the first offending one in lexicographic order, so
/// diagnostics are reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `<a,b> < 0` but `a + b` is missing.
    NegSum(Coords, Coords),
    /// `<a,b> > 0` but `a - b` is missing.
    PosDiff(Coords, Coords),
    /// `<a,b> = 0` but exactly one of `a + b`, `a - b` is present.
    OrthIff(Coords, Coords),
    /// The roots do not span the ambient space.
    Span,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegSum(a, b) => write!(
                f,
                "negative inner product but sum missing: {} , {}",
                format_coords(a),
                format_coords(b)
            ),
            Violation::PosDiff(a, b) => write!(
                f,
                "positive inner product but difference missing: {} , {}",
                format_coords(a),
                format_coords(b)
            ),
            Violation::OrthIff(a, b) => write!(
                f,
                "orthogonal pair with sum/difference asymmetry: {} , {}",
                format_coords(a),
                format_coords(b)
            ),
            Violation::Span => write!(f, "roots do not span the ambient space"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrsError {
    Violation(Violation),
    Space(SpaceError),
    EmptyCandidate,
    NotARoot(Coords),
    ZeroAxis,
    Reducible,
}

impl fmt::Display for GrsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrsError::Violation(v) => write!(f, "axiom violation: {v}"),
            GrsError::Space(e) => write!(f, "{e}"),
            GrsError::EmptyCandidate => write!(f, "candidate root set is empty"),
            GrsError::NotARoot(v) => write!(f, "not a root: {}", format_coords(v)),
            GrsError::ZeroAxis => write!(f, "the zero vector cannot be used here"),
            GrsError::Reducible => write!(f, "operation requires an irreducible system"),
        }
    }
}

impl From<SpaceError> for GrsError {
    fn from(e: SpaceError) -> Self {
        GrsError::Space(e)
    }
}

/// The maximal interval `[-p, q]` with `beta + t*alpha` a root for every
/// integer `t` in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StringInterval {
    pub p: u32,
    pub q: u32,
}

impl StringInterval {
    pub fn len(&self) -> u32 {
        self.p + self.q + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Primitivity data of a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInfo {
    pub root: Coords,
    /// Not a proper positive integer multiple of another root.
    pub primitive: bool,
    /// Multiplier of the primitive generator of the ray: the largest `k`
    /// with `k * generator` a root.
    pub multiplier: u32,
}

struct GrsInner {
    space: AmbientSpace,
    roots: BTreeSet<Coords>,
    label: Option<String>,
}

/// A validated generalized root system.
///
/// Immutable after construction; cloning is cheap and clones share storage,
/// so values can be sent across threads freely.
#[derive(Clone)]
pub struct Grs {
    inner: Arc<GrsInner>,
}

impl fmt::Debug for Grs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Grs({}, rank {}, {} nonzero roots)",
            self.inner.label.as_deref().unwrap_or("unlabeled"),
            self.rank(),
            self.nonzero_count()
        )
    }
}

impl PartialEq for Grs {
    fn eq(&self, other: &Self) -> bool {
        self.inner.space == other.inner.space && self.inner.roots == other.inner.roots
    }
}
impl Eq for Grs {}

impl Grs {
    /// Validate a candidate set against the GRS axioms.
    ///
    /// The candidate is deduplicated; the zero vector may be omitted (it is
    /// forced by the axioms whenever the set is valid and is always stored).
    /// On failure the first offending pair in lexicographic order is
    /// reported, with the three sign rules checked in the order
    /// `NegSum`, `PosDiff`, `OrthIff`.
    pub fn validate(
        space: AmbientSpace,
        candidate: impl IntoIterator<Item = Coords>,
        label: Option<String>,
    ) -> Result<Grs, GrsError> {
        let dim = space.dim();
        let mut roots: BTreeSet<Coords> = BTreeSet::new();
        for v in candidate {
            if v.len() != dim {
                return Err(GrsError::Space(SpaceError::DimensionMismatch));
            }
            roots.insert(v);
        }
        if roots.is_empty() {
            return Err(GrsError::EmptyCandidate);
        }
        // The zero root may be omitted on input; it is forced by the axioms
        // (any nonzero root a has <a,a> > 0, hence a - a must be a root).
        roots.insert(zero_coords(dim));
        let list: Vec<&Coords> = roots.iter().collect();
        for a in &list {
            for b in &list {
                let ip = space.ip(a, b);
                if ip.is_negative() {
                    if !roots.contains(&add_coords(a, b)) {
                        return Err(GrsError::Violation(Violation::NegSum(
                            (*a).clone(),
                            (*b).clone(),
                        )));
                    }
                } else if ip.is_positive() {
                    if !roots.contains(&sub_coords(a, b)) {
                        return Err(GrsError::Violation(Violation::PosDiff(
                            (*a).clone(),
                            (*b).clone(),
                        )));
                    }
                } else {
                    let sum = roots.contains(&add_coords(a, b));
                    let diff = roots.contains(&sub_coords(a, b));
                    if sum != diff {
                        return Err(GrsError::Violation(Violation::OrthIff(
                            (*a).clone(),
                            (*b).clone(),
                        )));
                    }
                }
            }
        }
        let mat: Vec<Coords> = roots.iter().cloned().collect();
        if linalg::rank(&mat) != dim {
            return Err(GrsError::Violation(Violation::Span));
        }
        let mut roots = roots;
        roots.insert(zero_coords(dim));
        let g = Grs {
            inner: Arc::new(GrsInner {
                space,
                roots,
                label,
            }),
        };
        // Derived consequences of the axioms; cf. the validation above.
        debug_assert!(g.contains(&zero_coords(dim)));
        debug_assert!(g.roots().all(|r| g.contains(&neg_coords(r))));
        Ok(g)
    }

    /// Construct without re-running the pairwise axiom checks.
    ///
    /// For internal use on sets already known to be GRSs (e.g. catalog
    /// closures, validated quotients re-expressed in another basis).
    pub(crate) fn new_unchecked(
        space: AmbientSpace,
        mut roots: BTreeSet<Coords>,
        label: Option<String>,
    ) -> Grs {
        roots.insert(zero_coords(space.dim()));
        Grs {
            inner: Arc::new(GrsInner {
                space,
                roots,
                label,
            }),
        }
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.inner.space
    }

    pub fn rank(&self) -> usize {
        self.inner.space.dim()
    }

    pub fn label(&self) -> Option<&str> {
        self.inner.label.as_deref()
    }

    pub fn with_label(&self, label: String) -> Grs {
        Grs {
            inner: Arc::new(GrsInner {
                space: self.inner.space.clone(),
                roots: self.inner.roots.clone(),
                label: Some(label),
            }),
        }
    }

    /// All roots including zero, in lexicographic order.
    pub fn roots(&self) -> impl Iterator<Item = &Coords> {
        self.inner.roots.iter()
    }

    pub fn root_set(&self) -> &BTreeSet<Coords> {
        &self.inner.roots
    }

    pub fn nonzero_roots(&self) -> impl Iterator<Item = &Coords> {
        self.inner.roots.iter().filter(|r| !is_zero_coords(r))
    }

    /// Number of roots including zero.
    pub fn count(&self) -> usize {
        self.inner.roots.len()
    }

    pub fn nonzero_count(&self) -> usize {
        self.count() - 1
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.inner.roots.contains(v)
    }

    fn expect_root(&self, v: &[Rat]) -> Result<(), GrsError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GrsError::NotARoot(v.to_vec()))
        }
    }

    /// The `alpha`-string through `beta`: the maximal interval `[-p, q]`
    /// with `beta + t*alpha` in the system. Contiguity is guaranteed for
    /// validated systems.
    pub fn root_string(&self, beta: &[Rat], alpha: &[Rat]) -> Result<StringInterval, GrsError> {
        if is_zero_coords(alpha) {
            return Err(GrsError::ZeroAxis);
        }
        self.expect_root(beta)?;
        self.expect_root(alpha)?;
        let mut q = 0u32;
        let mut v = beta.to_vec();
        loop {
            v = add_coords(&v, alpha);
            if !self.contains(&v) {
                break;
            }
            q += 1;
        }
        let mut p = 0u32;
        let mut v = beta.to_vec();
        loop {
            v = sub_coords(&v, alpha);
            if !self.contains(&v) {
                break;
            }
            p += 1;
        }
        Ok(StringInterval { p, q })
    }

    /// Primitive generator of the ray through `alpha` plus its multiplier.
    pub fn root_info(&self, alpha: &[Rat]) -> Result<RootInfo, GrsError> {
        if is_zero_coords(alpha) {
            return Err(GrsError::ZeroAxis);
        }
        self.expect_root(alpha)?;
        let gen = self.primitive_generator(alpha)?;
        let primitive = gen == alpha;
        let mut k = 1u32;
        loop {
            let next = scale_coords(&rint(i64::from(k) + 1), &gen);
            if !self.contains(&next) {
                break;
            }
            k += 1;
        }
        Ok(RootInfo {
            root: alpha.to_vec(),
            primitive,
            multiplier: k,
        })
    }

    /// The primitive root generating the ray through `alpha`.
    pub fn primitive_generator(&self, alpha: &[Rat]) -> Result<Coords, GrsError> {
        if is_zero_coords(alpha) {
            return Err(GrsError::ZeroAxis);
        }
        self.expect_root(alpha)?;
        // Roots on a ray form {g, 2g, ..., mg}; the generator is alpha/k for
        // the largest integer k with alpha/k a root.
        let mut best = alpha.to_vec();
        let mut k = 2i64;
        loop {
            let candidate = scale_coords(&Rat::new(1.into(), k.into()), alpha);
            if self.contains(&candidate) {
                best = candidate;
            }
            // k cannot exceed the multiplier bound; stop once alpha/k is
            // shorter than any root could subdivide further.
            if k > self.count() as i64 {
                break;
            }
            k += 1;
        }
        Ok(best)
    }

    /// Decompose into irreducible components: the partition of the nonzero
    /// roots into mutually orthogonal, internally non-splittable groups.
    /// Each component is returned as a GRS in its own spanned subspace with
    /// the restricted Gram form, together with embedding data.
    pub fn irreducible_components(&self) -> Vec<GrsComponent> {
        let nonzero: Vec<Coords> = self.nonzero_roots().cloned().collect();
        let n = nonzero.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
                r
            } else {
                i
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if !self.inner.space.ip(&nonzero[i], &nonzero[j]).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: alloc::collections::BTreeMap<usize, Vec<usize>> =
            alloc::collections::BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut components: Vec<GrsComponent> = Vec::new();
        for idxs in groups.values() {
            let members: Vec<Coords> = idxs.iter().map(|&i| nonzero[i].clone()).collect();
            // greedy independent subset as the component's coordinate basis
            let mut basis: Vec<Coords> = Vec::new();
            for m in &members {
                let mut trial = basis.clone();
                trial.push(m.clone());
                if linalg::rank(&trial) > basis.len() {
                    basis = trial;
                }
            }
            let gram = self.inner.space.gram_of(&basis);
            let space = AmbientSpace::new(gram).expect("restricted gram is positive definite");
            let basis_t = linalg::transpose(&basis);
            let mut roots: BTreeSet<Coords> = BTreeSet::new();
            for m in &members {
                let c = linalg::solve(&basis_t, m)
                    .expect("shape")
                    .expect("member lies in component span");
                roots.insert(c);
            }
            let grs = Grs::new_unchecked(space, roots, None);
            components.push(GrsComponent {
                grs,
                basis_in_parent: basis,
                members_in_parent: members,
            });
        }
        // deterministic order: by smallest member in parent coordinates
        components.sort_by(|a, b| {
            a.members_in_parent
                .iter()
                .min()
                .cmp(&b.members_in_parent.iter().min())
        });
        components
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible_components().len() == 1
    }

    /// Orthogonal direct sum of two systems.
    pub fn direct_sum(&self, other: &Grs) -> Grs {
        let d1 = self.rank();
        let d2 = other.rank();
        let dim = d1 + d2;
        let mut gram = alloc::vec![zero_coords(dim); dim];
        for i in 0..d1 {
            for j in 0..d1 {
                gram[i][j] = self.inner.space.gram()[i][j].clone();
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                gram[d1 + i][d1 + j] = other.inner.space.gram()[i][j].clone();
            }
        }
        let space = AmbientSpace::new(gram).expect("block diagonal of positive definite");
        let mut roots = BTreeSet::new();
        for r in self.roots() {
            let mut v = r.clone();
            v.extend(zero_coords(d2));
            roots.insert(v);
        }
        for r in other.roots() {
            let mut v = zero_coords(d1);
            v.extend(r.iter().cloned());
            roots.insert(v);
        }
        Grs::new_unchecked(space, roots, None)
    }

    /// Rescale the Gram form by a positive rational. The root set is
    /// unchanged; only the geometry is scaled (a conformal change).
    pub fn rescaled(&self, factor: &Rat) -> Grs {
        assert!(factor.is_positive());
        let gram = self
            .inner
            .space
            .gram()
            .iter()
            .map(|row| row.iter().map(|x| x * factor).collect())
            .collect();
        Grs {
            inner: Arc::new(GrsInner {
                space: AmbientSpace::new(gram).expect("scaled gram stays positive definite"),
                roots: self.inner.roots.clone(),
                label: self.inner.label.clone(),
            }),
        }
    }

    /// Apply an invertible linear change of coordinates to every root.
    /// `matrix` maps old coordinates to new ones; the Gram form is
    /// transported so all inner products are preserved.
    pub fn change_of_basis(&self, matrix: &[Vec<Rat>]) -> Grs {
        let inv = linalg::invert(matrix).expect("change of basis must be invertible");
        // new gram = inv^T * G * inv
        let gi = linalg::mat_mul(self.inner.space.gram(), &inv);
        let gram = linalg::mat_mul(&linalg::transpose(&inv), &gi);
        let space = AmbientSpace::new(gram).expect("transported gram is positive definite");
        let roots: BTreeSet<Coords> = self
            .inner
            .roots
            .iter()
            .map(|r| linalg::mat_vec(matrix, r))
            .collect();
        Grs::new_unchecked(space, roots, self.inner.label.clone())
    }

    /// Membership interval `{t : beta + t*alpha in R}` scanned directly over
    /// `[-limit, limit]`; used by tests as an oracle for string contiguity.
    pub fn string_membership_scan(&self, beta: &[Rat], alpha: &[Rat], limit: i64) -> Vec<i64> {
        let mut out = Vec::new();
        for t in -limit..=limit {
            let v = add_scaled(beta, &rint(t), alpha);
            if self.contains(&v) {
                out.push(t);
            }
        }
        out
    }
}

/// One irreducible component of a GRS, with its embedding into the parent.
#[derive(Debug, Clone)]
pub struct GrsComponent {
    /// The component as a standalone GRS in its spanned subspace; root
    /// coordinates refer to `basis_in_parent`.
    pub grs: Grs,
    /// Basis of the component's span, in parent coordinates.
    pub basis_in_parent: Vec<Coords>,
    /// The component's nonzero roots in parent coordinates.
    pub members_in_parent: Vec<Coords>,
}
