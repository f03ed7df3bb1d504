//! The finite root systems A-G in Bourbaki labeling.
//!
//! Normalization (recorded here because only conformal classes are
//! canonical): simply-laced systems have all roots of norm 2; B has short
//! norm 1 / long 2; C short 2 / long 4; F4 short 2 / long 4; G2 short 2/3 /
//! long 2. These choices keep every Gram entry rational and make the
//! classical quotient closed forms come out on the nose.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::bases::Base;
use crate::grs::Grs;
use crate::rat::{neg_coords, rfrac, rint, zero_coords, Rat};
use crate::space::AmbientSpace;
use crate::Coords;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogError {
    InvalidId(String),
    InvalidSubset,
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::InvalidId(s) => write!(f, "invalid root system id: {s}"),
            CatalogError::InvalidSubset => write!(f, "subset contains invalid node indices"),
        }
    }
}

/// A classical or exceptional root system identifier, e.g. `E8` or `D12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootSystemId {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self, CatalogError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            // D3 is accepted as an alias of A3 (D labeling) for oracle tests
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(RootSystemId { family, rank })
        } else {
            Err(CatalogError::InvalidId(format!("{family}{rank}")))
        }
    }

    /// Classical count of nonzero roots.
    pub fn nonzero_root_count(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1),
            Family::B | Family::C => 2 * l * l,
            Family::D => 2 * l * (l - 1),
            Family::E => match l {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next() {
            Some('A') | Some('a') => Family::A,
            Some('B') | Some('b') => Family::B,
            Some('C') | Some('c') => Family::C,
            Some('D') | Some('d') => Family::D,
            Some('E') | Some('e') => Family::E,
            Some('F') | Some('f') => Family::F,
            Some('G') | Some('g') => Family::G,
            _ => return Err(CatalogError::InvalidId(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| CatalogError::InvalidId(s.to_string()))?;
        RootSystemId::new(fam, rank)
    }
}

/// Bourbaki-labeled Dynkin diagram: nodes `1..=l`, edges with bond
/// multiplicity, and the squared norm of each simple root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub nodes: usize,
    /// `(a, b, multiplicity)` with `a < b`.
    pub edges: Vec<(usize, usize, u8)>,
    /// `norms[i]` is the squared norm of the simple root `i + 1`.
    pub norms: Vec<Rat>,
}

impl DynkinDiagram {
    pub fn multiplicity(&self, a: usize, b: usize) -> u8 {
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .iter()
            .find(|&&(u, v, _)| u == x && v == y)
            .map(|&(_, _, m)| m)
            .unwrap_or(0)
    }

    pub fn neighbors(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b, _) in &self.edges {
            if a == n {
                out.push(b);
            } else if b == n {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// Gram matrix generated by this diagram under the catalog
    /// normalization: adjacent simple roots have inner product
    /// `-max(norm_a, norm_b) / 2`.
    pub fn gram(&self) -> Vec<Vec<Rat>> {
        let l = self.nodes;
        let mut g = vec![zero_coords(l); l];
        for i in 0..l {
            g[i][i] = self.norms[i].clone();
        }
        for &(a, b, _) in &self.edges {
            let hi = core::cmp::max(&self.norms[a - 1], &self.norms[b - 1]);
            let v = -(hi / rint(2));
            g[a - 1][b - 1] = v.clone();
            g[b - 1][a - 1] = v;
        }
        g
    }
}

/// Bourbaki diagram of a catalog system.
pub fn dynkin_diagram(id: RootSystemId) -> DynkinDiagram {
    let l = id.rank;
    let two = rint(2);
    let chain = |mult_last: u8| -> Vec<(usize, usize, u8)> {
        let mut e: Vec<(usize, usize, u8)> = (1..l).map(|i| (i, i + 1, 1)).collect();
        if let Some(last) = e.last_mut() {
            last.2 = mult_last;
        }
        e
    };
    match id.family {
        Family::A => DynkinDiagram {
            nodes: l,
            edges: chain(1),
            norms: vec![two; l],
        },
        Family::B => {
            let mut norms = vec![two; l];
            norms[l - 1] = rint(1);
            DynkinDiagram {
                nodes: l,
                edges: chain(2),
                norms,
            }
        }
        Family::C => {
            let mut norms = vec![two; l];
            norms[l - 1] = rint(4);
            DynkinDiagram {
                nodes: l,
                edges: chain(2),
                norms,
            }
        }
        Family::D => {
            let mut edges: Vec<(usize, usize, u8)> = (1..l - 1).map(|i| (i, i + 1, 1)).collect();
            edges.push((l - 2, l, 1));
            edges.sort_unstable();
            DynkinDiagram {
                nodes: l,
                edges,
                norms: vec![two; l],
            }
        }
        Family::E => {
            let mut edges = vec![(1, 3, 1), (2, 4, 1), (3, 4, 1), (4, 5, 1), (5, 6, 1)];
            if l >= 7 {
                edges.push((6, 7, 1));
            }
            if l == 8 {
                edges.push((7, 8, 1));
            }
            edges.sort_unstable();
            DynkinDiagram {
                nodes: l,
                edges,
                norms: vec![two; l],
            }
        }
        Family::F => DynkinDiagram {
            nodes: 4,
            edges: vec![(1, 2, 1), (2, 3, 2), (3, 4, 1)],
            norms: vec![rint(4), rint(4), rint(2), rint(2)],
        },
        Family::G => DynkinDiagram {
            nodes: 2,
            edges: vec![(1, 2, 3)],
            norms: vec![rfrac(2, 3), rint(2)],
        },
    }
}

/// Construct the root system in simple-root coordinates together with its
/// standard ordered base. Roots are generated from the base by closing
/// under the simple Weyl reflections; no root tables are hardcoded.
pub fn build_root_system(id: RootSystemId) -> (Grs, Base) {
    let diagram = dynkin_diagram(id);
    let gram = diagram.gram();
    let space = AmbientSpace::new(gram).expect("catalog gram is positive definite");
    let l = id.rank;
    let mut simples: Vec<Coords> = Vec::new();
    for i in 0..l {
        let mut e = zero_coords(l);
        e[i] = rint(1);
        simples.push(e);
    }
    let mut roots: BTreeSet<Coords> = BTreeSet::new();
    for s in &simples {
        roots.insert(s.clone());
        roots.insert(neg_coords(s));
    }
    let mut frontier: Vec<Coords> = roots.iter().cloned().collect();
    while let Some(beta) = frontier.pop() {
        for (i, alpha) in simples.iter().enumerate() {
            // simple Weyl reflection: beta - c_{beta,alpha} alpha
            let c = rint(2) * space.ip(&beta, alpha) / space.ip(alpha, alpha);
            if c.is_zero() {
                continue;
            }
            let mut image = beta.clone();
            image[i] = &image[i] - &c;
            if roots.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    debug_assert_eq!(roots.len(), id.nonzero_root_count());
    let grs = Grs::new_unchecked(space, roots, Some(id.to_string()));
    let base = Base::new_unchecked(grs.clone(), simples).expect("standard base");
    (grs, base)
}

/// An involutive node permutation on a subset of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramInvolution {
    pub domain: BTreeSet<usize>,
    perm: BTreeMap<usize, usize>,
}

impl DiagramInvolution {
    /// Image of a node; nodes outside the domain are fixed.
    pub fn apply(&self, node: usize) -> usize {
        self.perm.get(&node).copied().unwrap_or(node)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().all(|(k, v)| k == v)
    }

    pub fn check_involution(&self) -> bool {
        self.perm.iter().all(|(&k, &v)| self.apply(v) == k)
    }
}

/// Connected components of the sub-diagram induced on `nodes`.
fn components_on(diagram: &DynkinDiagram, nodes: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut remaining: BTreeSet<usize> = nodes.clone();
    let mut comps = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut comp = vec![start];
        remaining.remove(&start);
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            for m in diagram.neighbors(n) {
                if remaining.contains(&m) {
                    remaining.remove(&m);
                    comp.push(m);
                    stack.push(m);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Shape classification of one connected induced sub-diagram, up to
/// conformal rescaling of the norms.
pub fn classify_component(diagram: &DynkinDiagram, comp: &[usize]) -> Option<RootSystemId> {
    let n = comp.len();
    if n == 1 {
        return RootSystemId::new(Family::A, 1).ok();
    }
    let in_comp = |x: usize| comp.contains(&x);
    let degree = |x: usize| {
        diagram
            .neighbors(x)
            .into_iter()
            .filter(|&y| in_comp(y))
            .count()
    };
    let max_mult = comp
        .iter()
        .flat_map(|&a| {
            comp.iter()
                .filter(move |&&b| b > a)
                .map(move |&b| diagram.multiplicity(a, b))
        })
        .max()
        .unwrap_or(0);
    let norms: Vec<&Rat> = comp.iter().map(|&x| &diagram.norms[x - 1]).collect();
    let min_norm = norms.iter().min().unwrap();
    let all_equal = norms.iter().all(|x| x == min_norm);
    let degrees: Vec<usize> = comp.iter().map(|&x| degree(x)).collect();
    let is_path = degrees.iter().all(|&d| d <= 2) && degrees.iter().filter(|&&d| d == 1).count() == 2;

    if max_mult == 3 {
        return (n == 2).then(|| RootSystemId::new(Family::G, 2).unwrap());
    }
    if max_mult == 2 {
        if !is_path {
            return None;
        }
        // count long nodes (norm = 2 * min)
        let double: Rat = (*min_norm).clone() * rint(2);
        let long = norms.iter().filter(|&&x| *x == double).count();
        let short = norms.iter().filter(|&&x| *x == **min_norm).count();
        if long + short != n {
            return None;
        }
        return match (long, short) {
            (1, 1) => RootSystemId::new(Family::B, 2).ok(),
            (2, 2) if n == 4 => RootSystemId::new(Family::F, 4).ok(),
            (1, _) => RootSystemId::new(Family::C, n).ok(),
            (_, 1) => RootSystemId::new(Family::B, n).ok(),
            _ => None,
        };
    }
    if !all_equal {
        return None;
    }
    if is_path {
        return RootSystemId::new(Family::A, n).ok();
    }
    // exactly one trivalent node, everything else degree <= 2
    let trivalent: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&x| degree(x) == 3)
        .collect();
    if trivalent.len() != 1 || degrees.iter().any(|&d| d > 3) {
        return None;
    }
    let mut arms = arm_lengths(diagram, comp, trivalent[0]);
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, m] => RootSystemId::new(Family::D, m + 3).ok(),
        [1, 2, 2] => RootSystemId::new(Family::E, 6).ok(),
        [1, 2, 3] => RootSystemId::new(Family::E, 7).ok(),
        [1, 2, 4] => RootSystemId::new(Family::E, 8).ok(),
        _ => None,
    }
}

/// Walk each arm away from the trivalent node; returns the node lists.
fn arms_of(diagram: &DynkinDiagram, comp: &[usize], center: usize) -> Vec<Vec<usize>> {
    let in_comp = |x: usize| comp.contains(&x);
    diagram
        .neighbors(center)
        .into_iter()
        .filter(|&x| in_comp(x))
        .map(|first| {
            let mut arm = vec![first];
            let mut prev = center;
            let mut cur = first;
            loop {
                let next: Vec<usize> = diagram
                    .neighbors(cur)
                    .into_iter()
                    .filter(|&x| in_comp(x) && x != prev)
                    .collect();
                match next.as_slice() {
                    [n] => {
                        arm.push(*n);
                        prev = cur;
                        cur = *n;
                    }
                    _ => break,
                }
            }
            arm
        })
        .collect()
}

fn arm_lengths(diagram: &DynkinDiagram, comp: &[usize], center: usize) -> Vec<usize> {
    arms_of(diagram, comp, center).iter().map(Vec::len).collect()
}

/// Order the nodes of a path component from one endpoint to the other,
/// starting from the smaller endpoint label.
fn path_order(diagram: &DynkinDiagram, comp: &[usize]) -> Vec<usize> {
    let in_comp = |x: usize| comp.contains(&x);
    let degree = |x: usize| {
        diagram
            .neighbors(x)
            .into_iter()
            .filter(|&y| in_comp(y))
            .count()
    };
    let mut ends: Vec<usize> = comp.iter().copied().filter(|&x| degree(x) == 1).collect();
    ends.sort_unstable();
    let start = ends[0];
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next: Vec<usize> = diagram
            .neighbors(cur)
            .into_iter()
            .filter(|&x| in_comp(x) && Some(x) != prev)
            .collect();
        match next.as_slice() {
            [n] => {
                order.push(*n);
                prev = Some(cur);
                cur = *n;
            }
            _ => break,
        }
    }
    order
}

/// The duality involution on the sub-diagram induced on `k_subset`: on each
/// connected component it is the unique diagram automorphism realizing
/// dualization of modules, i.e. nontrivial exactly for types `A_n` (n >= 2),
/// `D_odd` (swap the two fork tips), and `E6`.
pub fn duality_involution(
    id: RootSystemId,
    k_subset: &BTreeSet<usize>,
) -> Result<DiagramInvolution, CatalogError> {
    let diagram = dynkin_diagram(id);
    if k_subset.iter().any(|&n| n == 0 || n > diagram.nodes) {
        return Err(CatalogError::InvalidSubset);
    }
    let mut perm: BTreeMap<usize, usize> = k_subset.iter().map(|&n| (n, n)).collect();
    for comp in components_on(&diagram, k_subset) {
        let Some(kind) = classify_component(&diagram, &comp) else {
            continue;
        };
        match kind.family {
            Family::A if kind.rank >= 2 => {
                let order = path_order(&diagram, &comp);
                let n = order.len();
                for (i, &node) in order.iter().enumerate() {
                    perm.insert(node, order[n - 1 - i]);
                }
            }
            Family::D if kind.rank % 2 == 1 => {
                let center = comp
                    .iter()
                    .copied()
                    .find(|&x| {
                        diagram
                            .neighbors(x)
                            .into_iter()
                            .filter(|y| comp.contains(y))
                            .count()
                            == 3
                    })
                    .expect("D component has a trivalent node");
                let arms = arms_of(&diagram, &comp, center);
                let tips: Vec<usize> = arms
                    .iter()
                    .filter(|a| a.len() == 1)
                    .map(|a| a[0])
                    .collect();
                // D_odd with rank >= 5 has exactly two length-1 arms
                if tips.len() == 2 {
                    perm.insert(tips[0], tips[1]);
                    perm.insert(tips[1], tips[0]);
                }
            }
            Family::E if kind.rank == 6 => {
                let center = comp
                    .iter()
                    .copied()
                    .find(|&x| {
                        diagram
                            .neighbors(x)
                            .into_iter()
                            .filter(|y| comp.contains(y))
                            .count()
                            == 3
                    })
                    .expect("E6 component has a trivalent node");
                let arms = arms_of(&diagram, &comp, center);
                let long: Vec<&Vec<usize>> = arms.iter().filter(|a| a.len() == 2).collect();
                debug_assert_eq!(long.len(), 2);
                for i in 0..2 {
                    perm.insert(long[0][i], long[1][i]);
                    perm.insert(long[1][i], long[0][i]);
                }
            }
            _ => {}
        }
    }
    let inv = DiagramInvolution {
        domain: k_subset.clone(),
        perm,
    };
    debug_assert!(inv.check_involution());
    Ok(inv)
}

/// All connected components of the sub-diagram on `k_subset`, classified.
pub fn subdiagram_components(
    id: RootSystemId,
    k_subset: &BTreeSet<usize>,
) -> Result<Vec<(Vec<usize>, Option<RootSystemId>)>, CatalogError> {
    let diagram = dynkin_diagram(id);
    if k_subset.iter().any(|&n| n == 0 || n > diagram.nodes) {
        return Err(CatalogError::InvalidSubset);
    }
    Ok(components_on(&diagram, k_subset)
        .into_iter()
        .map(|comp| {
            let kind = classify_component(&diagram, &comp);
            (comp, kind)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> RootSystemId {
        s.parse().unwrap()
    }

    #[test]
    fn parse_ids() {
        assert_eq!(id("E8"), RootSystemId::new(Family::E, 8).unwrap());
        assert_eq!(id("D12").rank, 12);
        assert!("E9".parse::<RootSystemId>().is_err());
        assert!("F3".parse::<RootSystemId>().is_err());
        assert!("H4".parse::<RootSystemId>().is_err());
        assert!("A0".parse::<RootSystemId>().is_err());
    }

    #[test]
    fn root_counts_match_classical_values() {
        for name in ["A1", "A3", "B2", "B4", "C3", "D4", "D5", "E6", "E7", "F4", "G2"] {
            let sys = id(name);
            let (g, _) = build_root_system(sys);
            assert_eq!(g.nonzero_count(), sys.nonzero_root_count(), "{name}");
        }
    }

    #[test]
    fn e8_has_240_roots_and_validates() {
        let (g, base) = build_root_system(id("E8"));
        assert_eq!(g.nonzero_count(), 240);
        // re-validate the generated set against the axioms
        let revalidated = Grs::validate(
            g.space().clone(),
            g.roots().cloned().collect::<Vec<_>>(),
            None,
        );
        assert!(revalidated.is_ok());
        assert_eq!(base.rank(), 8);
    }

    #[test]
    fn f4_positive_roots_match_published_list() {
        let (g, base) = build_root_system(id("F4"));
        assert_eq!(g.nonzero_count(), 48);
        let positives = base.positive_system();
        assert_eq!(positives.count(), 25);
        // spot checks from the classical list
        for r in [
            [1, 0, 0, 0],
            [1, 1, 1, 0],
            [0, 1, 2, 0],
            [1, 2, 3, 1],
            [1, 2, 4, 2],
            [2, 3, 4, 2],
        ] {
            let v: Coords = r.iter().map(|&x| rint(x)).collect();
            assert!(positives.contains(&v), "{r:?}");
        }
        assert_eq!(
            base.highest_root().unwrap(),
            vec![rint(2), rint(3), rint(4), rint(2)]
        );
    }

    #[test]
    fn highest_roots_bourbaki() {
        for (name, theta) in [
            ("A3", vec![1, 1, 1]),
            ("B3", vec![1, 2, 2]),
            ("C3", vec![2, 2, 1]),
            ("D4", vec![1, 2, 1, 1]),
            ("G2", vec![3, 2]),
        ] {
            let (_, base) = build_root_system(id(name));
            let expected: Coords = theta.iter().map(|&x| rint(x)).collect();
            assert_eq!(base.highest_root().unwrap(), expected, "{name}");
        }
    }

    #[test]
    fn e8_diagram_edges() {
        let d = dynkin_diagram(id("E8"));
        let expected = vec![
            (1, 3, 1),
            (2, 4, 1),
            (3, 4, 1),
            (4, 5, 1),
            (5, 6, 1),
            (6, 7, 1),
            (7, 8, 1),
        ];
        assert_eq!(d.edges, expected);
    }

    #[test]
    fn a3_and_f4_diagrams() {
        let a3 = dynkin_diagram(id("A3"));
        assert_eq!(a3.edges, vec![(1, 2, 1), (2, 3, 1)]);
        let f4 = dynkin_diagram(id("F4"));
        assert_eq!(f4.edges, vec![(1, 2, 1), (2, 3, 2), (3, 4, 1)]);
        assert_eq!(f4.norms, vec![rint(4), rint(4), rint(2), rint(2)]);
    }

    #[test]
    fn meet_join_in_a3() {
        let (_, base) = build_root_system(id("A3"));
        let a1 = vec![rint(1), rint(0), rint(0)];
        let a2 = vec![rint(0), rint(1), rint(0)];
        let a3 = vec![rint(0), rint(0), rint(1)];
        let a12 = vec![rint(1), rint(1), rint(0)];
        let a23 = vec![rint(0), rint(1), rint(1)];
        assert_eq!(base.meet(&a12, &a23).unwrap(), a2);
        // join of a1 and a3 is the full sum, not the coordinatewise max
        assert_eq!(
            base.join(&a1, &a3).unwrap(),
            vec![rint(1), rint(1), rint(1)]
        );
    }

    #[test]
    fn a3_support_connected() {
        let (_, base) = build_root_system(id("A3"));
        let theta = vec![rint(1), rint(1), rint(1)];
        let sup = base.support(&theta).unwrap();
        assert_eq!(sup.indices, vec![0, 1, 2]);
        assert!(sup.connected);
    }

    #[test]
    fn duality_involution_e8_cases() {
        let e8 = id("E8");
        // K = {2,3,4,5,7,8}: D4 on {2,3,4,5} fixed, A2 on {7,8} swapped
        let k: BTreeSet<usize> = [2, 3, 4, 5, 7, 8].into_iter().collect();
        let inv = duality_involution(e8, &k).unwrap();
        assert_eq!(inv.apply(7), 8);
        assert_eq!(inv.apply(8), 7);
        for n in [2, 3, 4, 5] {
            assert_eq!(inv.apply(n), n);
        }
        // K = {2,3,4,5,6,7}: component D6 (even) -> identity
        let k: BTreeSet<usize> = [2, 3, 4, 5, 6, 7].into_iter().collect();
        let inv = duality_involution(e8, &k).unwrap();
        assert!(inv.is_identity());
        // K = {1,2,3,4,5,7}: D5 on {1,...,5} swaps the fork tips 2 and 5
        let k: BTreeSet<usize> = [1, 2, 3, 4, 5, 7].into_iter().collect();
        let inv = duality_involution(e8, &k).unwrap();
        assert!(!inv.is_identity());
        assert_eq!(inv.apply(2), 5);
        assert_eq!(inv.apply(5), 2);
        assert_eq!(inv.apply(1), 1);
        // single node: identity
        let k: BTreeSet<usize> = [3].into_iter().collect();
        assert!(duality_involution(e8, &k).unwrap().is_identity());
        // out of range
        let k: BTreeSet<usize> = [9].into_iter().collect();
        assert!(duality_involution(e8, &k).is_err());
    }

    #[test]
    fn duality_involution_e6_full() {
        let e6 = id("E6");
        let k: BTreeSet<usize> = (1..=6).collect();
        let inv = duality_involution(e6, &k).unwrap();
        assert_eq!(inv.apply(1), 6);
        assert_eq!(inv.apply(3), 5);
        assert_eq!(inv.apply(2), 2);
        assert_eq!(inv.apply(4), 4);
        assert!(inv.check_involution());
    }

    #[test]
    fn classify_subdiagram_types() {
        let e8 = id("E8");
        let comps =
            subdiagram_components(e8, &[2, 3, 4, 5, 7, 8].into_iter().collect()).unwrap();
        let kinds: Vec<_> = comps.iter().map(|(_, k)| k.unwrap()).collect();
        assert!(kinds.contains(&id("D4")));
        assert!(kinds.contains(&id("A2")));
        // F4 sub-diagrams
        let f4 = id("F4");
        let c = subdiagram_components(f4, &[1, 2, 3].into_iter().collect()).unwrap();
        assert_eq!(c[0].1, Some(id("B3")));
        let c = subdiagram_components(f4, &[2, 3, 4].into_iter().collect()).unwrap();
        assert_eq!(c[0].1, Some(id("C3")));
        let c = subdiagram_components(f4, &[2, 3].into_iter().collect()).unwrap();
        assert_eq!(c[0].1, Some(id("B2")));
        let c = subdiagram_components(f4, &(1..=4).collect()).unwrap();
        assert_eq!(c[0].1, Some(id("F4")));
        let c = subdiagram_components(id("G2"), &(1..=2).collect()).unwrap();
        assert_eq!(c[0].1, Some(id("G2")));
    }
}
