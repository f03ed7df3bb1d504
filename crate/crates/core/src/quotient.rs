//! Quotients of GRSs, fibers, and the classical closed forms.
//!
//! Given a base `S` and a subset `I` of it, the quotient is the image of the
//! root set under the orthogonal projection away from `span(I)`. Quotient
//! roots are kept in coordinates with respect to the basis `S/I` (the
//! projected kept simples): the coordinates of a projected root are just the
//! kept base coordinates of the parent root, so everything stays integral
//! and deduplication is exact equality. The induced Gram matrix of `S/I` is
//! stored in the target's ambient space.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::bases::{Base, BaseError, BaseGraph};
use crate::catalog::{CatalogError, Family, RootSystemId};
use crate::grs::{Grs, GrsError};
use crate::linalg;
use crate::rat::{is_zero_coords, rfrac, rint, zero_coords, Rat};
use crate::space::AmbientSpace;
use crate::Coords;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientError {
    IndexOutOfRange,
    NotInTarget(Coords),
    Grs(GrsError),
    Base(BaseError),
    Catalog(CatalogError),
    InvalidIndexSet,
}

impl fmt::Display for QuotientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientError::IndexOutOfRange => write!(f, "subset index out of range"),
            QuotientError::NotInTarget(v) => {
                write!(f, "not a quotient root: {}", crate::rat::format_coords(v))
            }
            QuotientError::Grs(e) => write!(f, "{e}"),
            QuotientError::Base(e) => write!(f, "{e}"),
            QuotientError::Catalog(e) => write!(f, "{e}"),
            QuotientError::InvalidIndexSet => write!(f, "invalid index set"),
        }
    }
}

impl From<GrsError> for QuotientError {
    fn from(e: GrsError) -> Self {
        QuotientError::Grs(e)
    }
}
impl From<BaseError> for QuotientError {
    fn from(e: BaseError) -> Self {
        QuotientError::Base(e)
    }
}
impl From<CatalogError> for QuotientError {
    fn from(e: CatalogError) -> Self {
        QuotientError::Catalog(e)
    }
}

/// A parent system together with its quotient by a subset of a base.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    parent: Grs,
    parent_base: Base,
    /// Indices (into the parent base) of the projected-out simples `I`.
    dropped: Vec<usize>,
    /// Indices of the kept simples, ascending; the target base order.
    kept: Vec<usize>,
    target: Grs,
    target_base: Base,
    /// `pi_I(alpha_j)` in parent ambient coordinates, for each kept `j`.
    proj_basis: Vec<Coords>,
    /// Fibers: target root (in `S/I` coordinates) to the parent roots above
    /// it (in parent ambient coordinates, sorted).
    fibers: BTreeMap<Coords, Vec<Coords>>,
}

impl QuotientMap {
    /// Quotient of the base's system by the simples at `dropped` indices.
    ///
    /// The target is re-validated against the GRS axioms; quotients of
    /// valid systems always pass.
    pub fn new(base: &Base, dropped: &[usize]) -> Result<QuotientMap, QuotientError> {
        let rank = base.rank();
        let mut dropped: Vec<usize> = dropped.to_vec();
        dropped.sort_unstable();
        dropped.dedup();
        if dropped.iter().any(|&i| i >= rank) {
            return Err(QuotientError::IndexOutOfRange);
        }
        if dropped.len() == rank {
            return Err(QuotientError::InvalidIndexSet);
        }
        let kept: Vec<usize> = (0..rank).filter(|i| !dropped.contains(i)).collect();
        let grs = base.grs();
        let space = grs.space();

        let i_vectors: Vec<Coords> = dropped.iter().map(|&i| base.simples()[i].clone()).collect();
        let proj_basis: Vec<Coords> = kept
            .iter()
            .map(|&j| {
                space
                    .project_perp(&i_vectors, &base.simples()[j])
                    .expect("simple roots are independent")
            })
            .collect();

        let mut fibers: BTreeMap<Coords, Vec<Coords>> = BTreeMap::new();
        for r in grs.roots() {
            let c = base.coords(r);
            let image: Coords = kept.iter().map(|&j| c[j].clone()).collect();
            fibers.entry(image).or_default().push(r.clone());
        }
        for members in fibers.values_mut() {
            members.sort();
        }

        let gram: Vec<Vec<Rat>> = proj_basis
            .iter()
            .map(|u| proj_basis.iter().map(|v| space.ip(u, v)).collect())
            .collect();
        let target_space =
            AmbientSpace::new(gram).expect("projection of a basis stays positive definite");
        let label = grs.label().map(|l| {
            let idx: Vec<String> = kept.iter().map(|j| (j + 1).to_string()).collect();
            format!("{}^{{{}}}", l, idx.join(","))
        });
        let target = Grs::validate(target_space, fibers.keys().cloned(), label)?;
        let simples: Vec<Coords> = (0..kept.len())
            .map(|i| {
                let mut e = zero_coords(kept.len());
                e[i] = rint(1);
                e
            })
            .collect();
        let target_base = Base::new_unchecked(target.clone(), simples)?;
        Ok(QuotientMap {
            parent: grs.clone(),
            parent_base: base.clone(),
            dropped,
            kept,
            target,
            target_base,
            proj_basis,
            fibers,
        })
    }

    pub fn parent(&self) -> &Grs {
        &self.parent
    }

    pub fn parent_base(&self) -> &Base {
        &self.parent_base
    }

    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// The quotient GRS, in `S/I` coordinates.
    pub fn target(&self) -> &Grs {
        &self.target
    }

    /// The base `S/I` of the target (unit vectors in target coordinates).
    pub fn target_base(&self) -> &Base {
        &self.target_base
    }

    /// `pi_I(alpha_j)` in parent ambient coordinates, ordered like the kept
    /// indices.
    pub fn projected_basis(&self) -> &[Coords] {
        &self.proj_basis
    }

    /// Image of an arbitrary parent vector in target (`S/I`) coordinates.
    pub fn project(&self, v: &[Rat]) -> Coords {
        let c = self.parent_base.coords(v);
        self.kept.iter().map(|&j| c[j].clone()).collect()
    }

    /// Image of a target coordinate vector in parent ambient coordinates.
    pub fn lift_to_ambient(&self, c: &[Rat]) -> Coords {
        let mut out = zero_coords(self.parent.rank());
        for (x, b) in c.iter().zip(&self.proj_basis) {
            if !x.is_zero() {
                out = crate::rat::add_scaled(&out, x, b);
            }
        }
        out
    }

    /// The fiber over a target root: the parent roots projecting onto it,
    /// as a poset under the parent base order. For nonzero `nu` the fiber
    /// has unique minimal and maximal elements.
    pub fn fiber(&self, nu: &[Rat]) -> Result<Fiber, QuotientError> {
        let members = self
            .fibers
            .get(nu)
            .ok_or_else(|| QuotientError::NotInTarget(nu.to_vec()))?
            .clone();
        let (min, max) = if is_zero_coords(nu) {
            (None, None)
        } else {
            let coords: Vec<Coords> = members.iter().map(|m| self.parent_base.coords(m)).collect();
            let n = self.parent.rank();
            let mut lo = coords[0].clone();
            let mut hi = coords[0].clone();
            for c in &coords[1..] {
                for i in 0..n {
                    if c[i] < lo[i] {
                        lo[i] = c[i].clone();
                    }
                    if c[i] > hi[i] {
                        hi[i] = c[i].clone();
                    }
                }
            }
            (
                Some(self.parent_base.from_coords(&lo)),
                Some(self.parent_base.from_coords(&hi)),
            )
        };
        Ok(Fiber {
            nu: nu.to_vec(),
            members,
            min,
            max,
        })
    }

    pub fn fiber_keys(&self) -> impl Iterator<Item = &Coords> {
        self.fibers.keys()
    }

    /// All bases of the quotient via reflection closure.
    pub fn quotient_bases(&self) -> BaseGraph {
        self.target_base.enumerate_all()
    }

    /// Quotient further by a subset of the target base (indices into the
    /// kept list). `(R/I)/(J/I)` is computed directly as `R/J` on the
    /// parent; the coordinates agree with quotienting the target.
    pub fn compose(&self, j_over_i: &[usize]) -> Result<QuotientMap, QuotientError> {
        if j_over_i.iter().any(|&i| i >= self.kept.len()) {
            return Err(QuotientError::IndexOutOfRange);
        }
        let mut dropped = self.dropped.clone();
        dropped.extend(j_over_i.iter().map(|&i| self.kept[i]));
        QuotientMap::new(&self.parent_base, &dropped)
    }
}

/// A fiber of the quotient projection.
#[derive(Debug, Clone)]
pub struct Fiber {
    /// The target root, in `S/I` coordinates.
    pub nu: Coords,
    /// Parent roots over `nu`, in parent ambient coordinates, sorted.
    pub members: Vec<Coords>,
    /// Unique minimal element (absent for the kernel fiber).
    pub min: Option<Coords>,
    /// Unique maximal element (absent for the kernel fiber).
    pub max: Option<Coords>,
}

/// Quotient of a catalog system keeping the 1-based node indices in `kept`:
/// the quotient written `X_l^J`, i.e. `X_l / {alpha_i : i not in J}`.
pub fn catalog_quotient(id: RootSystemId, kept: &[usize]) -> Result<QuotientMap, QuotientError> {
    let l = id.rank;
    if kept.is_empty() || kept.iter().any(|&j| j == 0 || j > l) {
        return Err(QuotientError::InvalidIndexSet);
    }
    let (_, base) = crate::catalog::build_root_system(id);
    let dropped: Vec<usize> = (0..l).filter(|i| !kept.contains(&(i + 1))).collect();
    QuotientMap::new(&base, &dropped)
}

/// Type tag for classical quotient closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeTag {
    I,
    II,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::I => write!(f, "I"),
            TypeTag::II => write!(f, "II"),
        }
    }
}

/// Closed-form description of a classical quotient over the diagonal
/// delta-basis with `<delta_s, delta_s> = 1/l_s`.
#[derive(Debug, Clone)]
pub struct ClassicalQuotientForm {
    pub family: Family,
    pub l: usize,
    pub j_set: Vec<usize>,
    /// The gap sequence `L(J)`.
    pub gaps: Vec<usize>,
    pub type_tag: Option<TypeTag>,
    /// Roots expressed over the delta-basis (dimension `gaps.len()`).
    pub delta_roots: Vec<Coords>,
    /// The base `Sigma^J` over the delta-basis.
    pub delta_base: Vec<Coords>,
    /// The instantiated GRS in `Sigma^J` coordinates; coordinate-identical
    /// to the computed quotient's target.
    pub grs: Grs,
    pub base: Base,
}

fn delta_vec(dim: usize, terms: &[(usize, i64)]) -> Coords {
    let mut v = zero_coords(dim);
    for &(s, c) in terms {
        v[s] = rint(c);
    }
    v
}

fn check_j_set(family: Family, l: usize, j_set: &[usize]) -> Result<Vec<usize>, QuotientError> {
    if !matches!(family, Family::A | Family::B | Family::C | Family::D) {
        return Err(QuotientError::InvalidIndexSet);
    }
    let mut j = j_set.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.len() != j_set.len() || j.is_empty() || j[0] == 0 || *j.last().unwrap() > l {
        return Err(QuotientError::InvalidIndexSet);
    }
    Ok(j)
}

/// The gap sequence `L(J)`.
///
/// For `A_l` it has `k+1` entries with sentinels `j_0 = 0`, `j_{k+1} = l+1`;
/// for `B_l` and `C_l` it has `k` entries with `j_0 = 0`. For `D_l` the last
/// entry is special: `l - j_{k-1}` when `j_{k-1} <= l-2 < j_k` (the fork
/// glues the tail into one block regardless of which tip survives), and
/// `j_k - j_{k-1}` otherwise. This differs from the B/C pattern.
pub fn gap_sequence(
    family: Family,
    l: usize,
    j_set: &[usize],
) -> Result<Vec<usize>, QuotientError> {
    let j = check_j_set(family, l, j_set)?;
    let k = j.len();
    let mut gaps = Vec::new();
    match family {
        Family::A => {
            let mut prev = 0usize;
            for &js in &j {
                gaps.push(js - prev);
                prev = js;
            }
            gaps.push(l + 1 - prev);
        }
        Family::B | Family::C => {
            let mut prev = 0usize;
            for &js in &j {
                gaps.push(js - prev);
                prev = js;
            }
        }
        Family::D => {
            for (idx, &js) in j.iter().enumerate() {
                let prev = if idx == 0 { 0 } else { j[idx - 1] };
                if idx + 1 == k && prev <= l - 2 && l - 2 < js {
                    gaps.push(l - prev);
                } else {
                    gaps.push(js - prev);
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(gaps)
}

/// The closed-form quotient `X_l^J` of a classical system over the
/// delta-basis, instantiated as a GRS in `Sigma^J` coordinates.
pub fn classical_form(
    family: Family,
    l: usize,
    j_set: &[usize],
) -> Result<ClassicalQuotientForm, QuotientError> {
    let j = check_j_set(family, l, j_set)?;
    let k = j.len();
    let gaps = gap_sequence(family, l, &j)?;
    let jk = *j.last().unwrap();
    let jk1 = if k >= 2 { j[k - 2] } else { 0 };

    let (dim, type_tag) = match family {
        Family::A => (k + 1, None),
        Family::B => (k, None),
        Family::C => (k, Some(if jk == l { TypeTag::I } else { TypeTag::II })),
        Family::D => (
            k,
            Some(if jk >= l - 1 { TypeTag::I } else { TypeTag::II }),
        ),
        _ => unreachable!(),
    };

    let mut delta_roots: BTreeSet<Coords> = BTreeSet::new();
    delta_roots.insert(zero_coords(dim));
    let mut push_pm = |roots: &mut BTreeSet<Coords>, terms: &[(usize, i64)]| {
        let v = delta_vec(dim, terms);
        let n: Coords = v.iter().map(|x| -x).collect();
        roots.insert(v);
        roots.insert(n);
    };
    match family {
        Family::A => {
            for s in 0..dim {
                for t in 0..dim {
                    if s != t {
                        delta_roots.insert(delta_vec(dim, &[(s, 1), (t, -1)]));
                    }
                }
            }
        }
        Family::B => {
            for s in 0..k {
                for t in s + 1..k {
                    push_pm(&mut delta_roots, &[(s, 1), (t, 1)]);
                    push_pm(&mut delta_roots, &[(s, 1), (t, -1)]);
                }
                push_pm(&mut delta_roots, &[(s, 1)]);
                if gaps[s] >= 2 {
                    push_pm(&mut delta_roots, &[(s, 2)]);
                }
            }
        }
        Family::C => {
            for s in 0..k {
                for t in s + 1..k {
                    push_pm(&mut delta_roots, &[(s, 1), (t, 1)]);
                    push_pm(&mut delta_roots, &[(s, 1), (t, -1)]);
                }
                push_pm(&mut delta_roots, &[(s, 2)]);
                if type_tag == Some(TypeTag::II) {
                    push_pm(&mut delta_roots, &[(s, 1)]);
                }
            }
        }
        Family::D => {
            for s in 0..k {
                for t in s + 1..k {
                    push_pm(&mut delta_roots, &[(s, 1), (t, 1)]);
                    push_pm(&mut delta_roots, &[(s, 1), (t, -1)]);
                }
                if type_tag == Some(TypeTag::II) {
                    push_pm(&mut delta_roots, &[(s, 1)]);
                }
                if gaps[s] >= 2 {
                    push_pm(&mut delta_roots, &[(s, 2)]);
                }
            }
        }
        _ => unreachable!(),
    }

    let delta_base: Vec<Coords> = match family {
        Family::A => (0..k)
            .map(|s| delta_vec(dim, &[(s, 1), (s + 1, -1)]))
            .collect(),
        Family::B | Family::C | Family::D => {
            let mut b: Vec<Coords> = (0..k - 1)
                .map(|s| delta_vec(dim, &[(s, 1), (s + 1, -1)]))
                .collect();
            let last = match family {
                Family::B => delta_vec(dim, &[(k - 1, 1)]),
                Family::C => {
                    if type_tag == Some(TypeTag::I) {
                        delta_vec(dim, &[(k - 1, 2)])
                    } else {
                        delta_vec(dim, &[(k - 1, 1)])
                    }
                }
                Family::D => {
                    if k >= 2 && jk1 == l - 1 && jk == l {
                        delta_vec(dim, &[(k - 2, 1), (k - 1, 1)])
                    } else if jk1 <= l - 2 && l - 2 < jk {
                        delta_vec(dim, &[(k - 1, 2)])
                    } else {
                        delta_vec(dim, &[(k - 1, 1)])
                    }
                }
                _ => unreachable!(),
            };
            b.push(last);
            b
        }
        _ => unreachable!(),
    };

    // Gram of Sigma^J from the diagonal delta form <delta_s, delta_s> = 1/l_s
    let gram_sigma: Vec<Vec<Rat>> = delta_base
        .iter()
        .map(|u| {
            delta_base
                .iter()
                .map(|v| {
                    (0..dim)
                        .map(|s| &u[s] * &v[s] * rfrac(1, gaps[s] as i64))
                        .sum()
                })
                .collect()
        })
        .collect();

    // express delta roots in Sigma^J coordinates (exact; for A_l the system
    // is overdetermined but every root lies in the span of Sigma^J)
    let cols = linalg::transpose(&delta_base);
    let sigma_roots: BTreeSet<Coords> = delta_roots
        .iter()
        .map(|r| {
            linalg::solve(&cols, r)
                .expect("shape")
                .expect("closed-form root lies in the span of Sigma^J")
        })
        .collect();

    let space = AmbientSpace::new(gram_sigma).expect("closed-form gram is positive definite");
    let label = {
        let idx: Vec<String> = j.iter().map(|x| x.to_string()).collect();
        format!("{}{}^{{{}}}", family, l, idx.join(","))
    };
    let grs = Grs::validate(space, sigma_roots, Some(label))?;
    let simples: Vec<Coords> = (0..k)
        .map(|i| {
            let mut e = zero_coords(k);
            e[i] = rint(1);
            e
        })
        .collect();
    let base = Base::new_unchecked(grs.clone(), simples)?;
    Ok(ClassicalQuotientForm {
        family,
        l,
        j_set: j,
        gaps,
        type_tag,
        delta_roots: delta_roots.into_iter().collect(),
        delta_base,
        grs,
        base,
    })
}

/// Image of `J` under the wall-crossing permutation at the pivot `j_s in J`,
/// computed from the classical index formulas (not from the diagram).
pub fn classical_theta_j(
    family: Family,
    l: usize,
    j_set: &[usize],
    pivot: usize,
) -> Result<Vec<usize>, QuotientError> {
    let j = check_j_set(family, l, j_set)?;
    let k = j.len();
    let Some(pos) = j.iter().position(|&x| x == pivot) else {
        return Err(QuotientError::InvalidIndexSet);
    };
    let s = pos + 1; // 1-based position of the pivot in J
    let prev = if pos == 0 { 0 } else { j[pos - 1] };
    let new_pivot = match family {
        Family::A => {
            let next = if s == k { l + 1 } else { j[pos + 1] };
            prev + next - pivot
        }
        Family::B | Family::C => {
            if s <= k - 1 {
                prev + j[pos + 1] - pivot
            } else {
                pivot
            }
        }
        Family::D => {
            let jk = j[k - 1];
            let jk2 = if k >= 3 {
                j[k - 3]
            } else {
                0 // j_{k-2} sentinel
            };
            if s + 2 <= k {
                prev + j[pos + 1] - pivot
            } else if s + 1 == k {
                // pivot = j_{k-1}
                if jk <= l - 2 {
                    jk2 + jk - pivot
                } else if jk2 + 2 <= pivot && pivot <= l - 2 {
                    jk2 + l - pivot
                } else if jk2 + 1 == pivot && pivot <= l - 2 {
                    if jk == l - 1 {
                        l
                    } else {
                        l - 1
                    }
                } else if pivot == l - 1 && jk == l {
                    jk2 + 1
                } else {
                    pivot
                }
            } else {
                // pivot = j_k
                let jk1 = if k >= 2 { j[k - 2] } else { 0 };
                if pivot <= l - 2 {
                    pivot
                } else if pivot == l - 1 {
                    if (l - jk1) % 2 == 1 {
                        l
                    } else {
                        l - 1
                    }
                } else if jk1 == l - 1 {
                    // j_{k-1} = l-1, j_k = l
                    let jk2 = if k >= 3 { j[k - 3] } else { 0 };
                    jk2 + 1
                } else if (l - jk1) % 2 == 1 {
                    l - 1
                } else {
                    l
                }
            }
        }
        _ => return Err(QuotientError::InvalidIndexSet),
    };
    let mut out: Vec<usize> = j.iter().copied().filter(|&x| x != pivot).collect();
    if out.contains(&new_pivot) {
        // degenerate only when the formula returns an existing index, which
        // means the move fixes J as a set
        out.push(pivot);
    } else {
        out.push(new_pivot);
    }
    out.sort_unstable();
    Ok(out)
}

/// The gap sequence of the image of `J` under the pivot move: a transpose
/// of adjacent entries, or the sequence unchanged, per the family rules.
pub fn classical_theta_gaps(
    family: Family,
    l: usize,
    j_set: &[usize],
    pivot: usize,
) -> Result<Vec<usize>, QuotientError> {
    let j = check_j_set(family, l, j_set)?;
    let k = j.len();
    let Some(pos) = j.iter().position(|&x| x == pivot) else {
        return Err(QuotientError::InvalidIndexSet);
    };
    let s = pos + 1;
    let mut gaps = gap_sequence(family, l, &j)?;
    let swap = match family {
        Family::A => true, // L has k+1 entries; adjacent swap at every pivot
        Family::B | Family::C => s <= k - 1,
        Family::D => {
            let jk = j[k - 1];
            let jk1 = if k >= 2 { j[k - 2] } else { 0 };
            s <= k - 1 || (jk1 == l - 1 && jk == l)
        }
        _ => return Err(QuotientError::InvalidIndexSet),
    };
    if swap && pos + 1 < gaps.len() {
        gaps.swap(pos, pos + 1);
    } else if swap && pos + 1 >= gaps.len() {
        // s = k in the D_l fork-tip case: transpose the last two entries
        gaps.swap(pos - 1, pos);
    }
    Ok(gaps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_root_system;

    fn rid(s: &str) -> RootSystemId {
        s.parse().unwrap()
    }

    fn ri(xs: &[i64]) -> Coords {
        xs.iter().map(|&x| rint(x)).collect()
    }

    #[test]
    fn f4_keep_24_matches_published_quotient() {
        let q = catalog_quotient(rid("F4"), &[2, 4]).unwrap();
        assert_eq!(q.target().count(), 17);
        assert_eq!(q.target().nonzero_count(), 16);
        let g = q.target().space().gram();
        assert_eq!(g[0][0], rint(1)); // |a2bar|^2
        assert_eq!(g[1][1], rfrac(3, 2)); // |a4bar|^2
        assert_eq!(g[0][1], rint(-1));
        for r in [[1, 0], [0, 1], [1, 1], [2, 0], [1, 2], [2, 1], [2, 2], [3, 2]] {
            assert!(q.target().contains(&ri(&r)), "{r:?}");
        }
    }

    #[test]
    fn empty_subset_is_identity_quotient() {
        let (g, base) = build_root_system(rid("A3"));
        let q = QuotientMap::new(&base, &[]).unwrap();
        assert_eq!(q.target().count(), g.count());
        assert_eq!(q.target().space().gram(), g.space().gram());
    }

    #[test]
    fn a2_quotient_by_one_simple() {
        let q = catalog_quotient(rid("A2"), &[2]).unwrap();
        assert_eq!(q.target().count(), 3); // {0, +-a2bar}
        assert_eq!(q.target().space().gram()[0][0], rfrac(3, 2));
    }

    #[test]
    fn a2_fiber_structure() {
        let q = catalog_quotient(rid("A2"), &[2]).unwrap();
        let f = q.fiber(&[rint(1)]).unwrap();
        assert_eq!(f.members, vec![ri(&[0, 1]), ri(&[1, 1])]);
        assert_eq!(f.min.unwrap(), ri(&[0, 1]));
        assert_eq!(f.max.unwrap(), ri(&[1, 1]));
        // kernel fiber: R intersect span(I), plus zero
        let f0 = q.fiber(&[rint(0)]).unwrap();
        assert_eq!(f0.members, vec![ri(&[-1, 0]), ri(&[0, 0]), ri(&[1, 0])]);
        assert!(q.fiber(&[rint(7)]).is_err());
    }

    #[test]
    fn d4_123_has_15_roots() {
        // seven nonzero positive images -> 15 roots including zero
        let q = catalog_quotient(rid("D4"), &[1, 2, 3]).unwrap();
        assert_eq!(q.target().count(), 15);
    }

    #[test]
    fn f4_fiber_purity_example() {
        let q = catalog_quotient(rid("F4"), &[2, 4]).unwrap();
        let nu = q.project(&ri(&[0, 1, 0, 0]));
        let f = q.fiber(&nu).unwrap();
        let positives = q.parent_base().positive_system();
        assert!(f.members.iter().all(|m| positives.contains(m)));
    }

    #[test]
    fn compose_equals_direct() {
        let (_, base) = build_root_system(rid("F4"));
        // drop {alpha1} then {alpha3}: equals dropping {alpha1, alpha3}
        let q1 = QuotientMap::new(&base, &[0]).unwrap();
        // q1 keeps parent indices [1,2,3]; alpha3 sits at kept position 1
        let composed = q1.compose(&[1]).unwrap();
        let direct = QuotientMap::new(&base, &[0, 2]).unwrap();
        assert_eq!(composed.target().root_set(), direct.target().root_set());
        assert_eq!(
            composed.target().space().gram(),
            direct.target().space().gram()
        );
        let same = q1.compose(&[]).unwrap();
        assert_eq!(same.target().root_set(), q1.target().root_set());
    }

    #[test]
    fn quotient_of_target_agrees_with_direct() {
        let (_, base) = build_root_system(rid("E6"));
        let q1 = QuotientMap::new(&base, &[1]).unwrap(); // drop alpha2
        let q2 = QuotientMap::new(q1.target_base(), &[2]).unwrap(); // then alpha4
        let direct = QuotientMap::new(&base, &[1, 3]).unwrap();
        assert_eq!(q2.target().root_set(), direct.target().root_set());
        assert_eq!(q2.target().space().gram(), direct.target().space().gram());
    }

    #[test]
    fn gap_sequences() {
        assert_eq!(gap_sequence(Family::A, 4, &[1, 3]).unwrap(), vec![1, 2, 2]);
        assert_eq!(gap_sequence(Family::B, 10, &[2, 6]).unwrap(), vec![2, 4]);
        assert_eq!(gap_sequence(Family::B, 10, &[6, 9]).unwrap(), vec![6, 3]);
        // D_l special last entry
        assert_eq!(
            gap_sequence(Family::D, 8, &[3, 5, 8]).unwrap(),
            vec![3, 2, 3]
        );
        assert_eq!(
            gap_sequence(Family::D, 8, &[3, 7, 8]).unwrap(),
            vec![3, 4, 1]
        );
        assert_eq!(
            gap_sequence(Family::D, 8, &[3, 5, 6]).unwrap(),
            vec![3, 2, 1]
        );
    }

    #[test]
    fn c3_type_tags() {
        assert_eq!(
            classical_form(Family::C, 3, &[1, 3]).unwrap().type_tag,
            Some(TypeTag::I)
        );
        assert_eq!(
            classical_form(Family::C, 3, &[1, 2]).unwrap().type_tag,
            Some(TypeTag::II)
        );
    }

    #[test]
    fn closed_form_matches_computed_quotient_spot() {
        for (fam, l, j, name) in [
            (Family::B, 10, vec![2usize, 6], "B10"),
            (Family::A, 4, vec![1, 3], "A4"),
            (Family::C, 4, vec![2, 4], "C4"),
            (Family::D, 6, vec![2, 5], "D6"),
            (Family::D, 6, vec![5, 6], "D6"),
            (Family::D, 6, vec![2, 6], "D6"),
        ] {
            let form = classical_form(fam, l, &j).unwrap();
            let q = catalog_quotient(rid(name), &j).unwrap();
            assert_eq!(
                form.grs.root_set(),
                q.target().root_set(),
                "{name}^{j:?} roots"
            );
            assert_eq!(
                form.grs.space().gram(),
                q.target().space().gram(),
                "{name}^{j:?} gram"
            );
        }
    }

    #[test]
    fn a4_13_cartan_matrix() {
        // two independent routes agree: [[2, -2/3], [-1, 2]]
        let q = catalog_quotient(rid("A4"), &[1, 3]).unwrap();
        let c = q.target_base().cartan_matrix();
        assert_eq!(c.entries[0][1], rfrac(-2, 3));
        assert_eq!(c.entries[1][0], rint(-1));
        let form = classical_form(Family::A, 4, &[1, 3]).unwrap();
        assert_eq!(form.base.cartan_matrix().entries, c.entries);
    }

    #[test]
    fn classical_theta_index_formulas() {
        assert_eq!(
            classical_theta_j(Family::A, 4, &[1, 3], 1).unwrap(),
            vec![2, 3]
        );
        assert_eq!(
            classical_theta_j(Family::B, 10, &[2, 6], 6).unwrap(),
            vec![2, 6]
        );
        assert_eq!(
            classical_theta_j(Family::B, 10, &[2, 6], 2).unwrap(),
            vec![4, 6]
        );
        // D_l fork parity, k = 1
        assert_eq!(classical_theta_j(Family::D, 5, &[4], 4).unwrap(), vec![5]);
        assert_eq!(classical_theta_j(Family::D, 6, &[5], 5).unwrap(), vec![5]);
        // D_l j_{k-1} = l-1, j_k = l
        assert_eq!(
            classical_theta_j(Family::D, 6, &[2, 5, 6], 6).unwrap(),
            vec![2, 3, 5]
        );
        assert_eq!(
            classical_theta_gaps(Family::B, 10, &[2, 6], 2).unwrap(),
            vec![4, 2]
        );
        assert_eq!(
            classical_theta_gaps(Family::B, 10, &[2, 6], 6).unwrap(),
            vec![2, 4]
        );
    }
}
