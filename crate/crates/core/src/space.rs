//! Ambient Euclidean spaces.
//!
//! An [`AmbientSpace`] is an ordered coordinate basis together with an exact
//! symmetric positive-definite Gram form; all geometry in the crate flows
//! through it.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::linalg;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceError {
    DimensionMismatch,
    NotSquare,
    NotSymmetric,
    NotPositiveDefinite,
    DependentProjectionSet,
}

impl fmt::Display for SpaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceError::DimensionMismatch => write!(f, "vector length does not match dimension"),
            SpaceError::NotSquare => write!(f, "gram matrix is not square"),
            SpaceError::NotSymmetric => write!(f, "gram matrix is not symmetric"),
            SpaceError::NotPositiveDefinite => write!(f, "gram matrix is not positive definite"),
            SpaceError::DependentProjectionSet => {
                write!(f, "projection set is linearly dependent")
            }
        }
    }
}

/// Euclidean space of dimension `dim` with an exact Gram form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AmbientSpace {
    dim: usize,
    gram: Vec<Vec<Rat>>,
}

impl AmbientSpace {
    /// Validates symmetry and positive definiteness (all leading principal
    /// minors positive, exact determinants).
    pub fn new(gram: Vec<Vec<Rat>>) -> Result<Self, SpaceError> {
        let dim = gram.len();
        if gram.iter().any(|r| r.len() != dim) {
            return Err(SpaceError::NotSquare);
        }
        for i in 0..dim {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(SpaceError::NotSymmetric);
                }
            }
        }
        match linalg::is_positive_definite(&gram) {
            Ok(true) => Ok(AmbientSpace { dim, gram }),
            Ok(false) => Err(SpaceError::NotPositiveDefinite),
            Err(linalg::LinAlgError::NotSymmetric) => Err(SpaceError::NotSymmetric),
            Err(_) => Err(SpaceError::NotSquare),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// `u^T G v`, exactly. Symmetric in `u`, `v`.
    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Result<Rat, SpaceError> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(SpaceError::DimensionMismatch);
        }
        Ok(self.ip(u, v))
    }

    /// Inner product without the dimension check; for internal hot paths.
    pub(crate) fn ip(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row = Rat::zero();
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    row += &self.gram[i][j] * vj;
                }
            }
            acc += ui * row;
        }
        acc
    }

    pub fn norm_sq(&self, v: &[Rat]) -> Result<Rat, SpaceError> {
        self.inner(v, v)
    }

    /// Gram matrix of a list of vectors.
    pub fn gram_of(&self, vs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        vs.iter()
            .map(|u| vs.iter().map(|v| self.ip(u, v)).collect())
            .collect()
    }

    /// Coefficients `c` such that `sum c_i set_i` is the orthogonal
    /// projection of `v` onto `span(set)`. Errors if `set` is dependent.
    pub fn projection_coefficients(
        &self,
        set: &[Vec<Rat>],
        v: &[Rat],
    ) -> Result<Vec<Rat>, SpaceError> {
        if v.len() != self.dim || set.iter().any(|u| u.len() != self.dim) {
            return Err(SpaceError::DimensionMismatch);
        }
        if set.is_empty() {
            return Ok(Vec::new());
        }
        let g = self.gram_of(set);
        let rhs: Vec<Rat> = set.iter().map(|u| self.ip(u, v)).collect();
        match linalg::solve(&g, &rhs) {
            Ok(Some(c)) => Ok(c),
            Ok(None) => Err(SpaceError::DependentProjectionSet),
            Err(_) => Err(SpaceError::DimensionMismatch),
        }
    }

    /// Gram-orthogonal projection of `v` onto the orthogonal complement of
    /// `span(set)`. Exact and idempotent; the result is orthogonal to every
    /// element of `set`.
    pub fn project_perp(&self, set: &[Vec<Rat>], v: &[Rat]) -> Result<Vec<Rat>, SpaceError> {
        let coeff = self.projection_coefficients(set, v)?;
        let mut out = v.to_vec();
        for (c, u) in coeff.iter().zip(set) {
            if !c.is_zero() {
                for (o, x) in out.iter_mut().zip(u) {
                    *o -= c * x;
                }
            }
        }
        Ok(out)
    }

    /// Basis of the orthogonal complement of `span(set)`.
    pub fn perp_basis(&self, set: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        if set.is_empty() {
            return (0..self.dim)
                .map(|i| {
                    let mut e = crate::rat::zero_coords(self.dim);
                    e[i] = crate::rat::rone();
                    e
                })
                .collect();
        }
        // rows: <set_i, .> as linear forms = set_i^T G
        let rows: Vec<Vec<Rat>> = set
            .iter()
            .map(|u| linalg::mat_vec(&linalg::transpose(&self.gram), u))
            .collect();
        linalg::null_space(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rfrac, rint, zero_coords};
    use alloc::vec;

    fn a2() -> AmbientSpace {
        AmbientSpace::new(vec![vec![rint(2), rint(-1)], vec![rint(-1), rint(2)]]).unwrap()
    }

    /// Bourbaki-normalized F4 Gram (long roots norm 2, short roots norm 1).
    fn f4_bourbaki() -> AmbientSpace {
        AmbientSpace::new(vec![
            vec![rint(2), rint(-1), rint(0), rint(0)],
            vec![rint(-1), rint(2), rint(-1), rint(0)],
            vec![rint(0), rint(-1), rint(1), rfrac(-1, 2)],
            vec![rint(0), rint(0), rfrac(-1, 2), rint(1)],
        ])
        .unwrap()
    }

    #[test]
    fn inner_reads_gram_entries() {
        let s = a2();
        let a1 = vec![rint(1), rint(0)];
        let a2v = vec![rint(0), rint(1)];
        assert_eq!(s.inner(&a1, &a2v).unwrap(), rint(-1));
        assert_eq!(s.inner(&a2v, &a1).unwrap(), rint(-1));
        assert_eq!(s.inner(&zero_coords(2), &a1).unwrap(), rint(0));
    }

    #[test]
    fn inner_f4_short_root() {
        let s = f4_bourbaki();
        let a3 = vec![rint(0), rint(0), rint(1), rint(0)];
        assert_eq!(s.inner(&a3, &a3).unwrap(), rint(1));
    }

    #[test]
    fn inner_dimension_mismatch() {
        let s = a2();
        assert_eq!(
            s.inner(&[rint(1)], &[rint(0), rint(1)]),
            Err(SpaceError::DimensionMismatch)
        );
    }

    #[test]
    fn project_perp_a2() {
        // project alpha2 away from alpha1: alpha2 + (1/2) alpha1
        let s = a2();
        let a1 = vec![rint(1), rint(0)];
        let a2v = vec![rint(0), rint(1)];
        let p = s.project_perp(&[a1.clone()], &a2v).unwrap();
        assert_eq!(p, vec![rfrac(1, 2), rint(1)]);
        assert_eq!(s.inner(&p, &a1).unwrap(), rint(0));
        // idempotent
        assert_eq!(s.project_perp(&[a1], &p).unwrap(), p);
    }

    #[test]
    fn project_perp_empty_set_is_identity() {
        let s = a2();
        let v = vec![rfrac(5, 3), rint(-2)];
        assert_eq!(s.project_perp(&[], &v).unwrap(), v);
    }

    #[test]
    fn project_perp_dependent_set_errors() {
        let s = a2();
        let u = vec![rint(1), rint(0)];
        let w = vec![rint(2), rint(0)];
        assert_eq!(
            s.project_perp(&[u, w], &[rint(0), rint(1)]),
            Err(SpaceError::DependentProjectionSet)
        );
    }

    #[test]
    fn residual_lies_in_span() {
        // v - project_perp(v) must solve as a combination of the set
        let s = f4_bourbaki();
        let a1 = vec![rint(1), rint(0), rint(0), rint(0)];
        let a3 = vec![rint(0), rint(0), rint(1), rint(0)];
        let v = vec![rint(0), rint(1), rint(0), rint(0)];
        let p = s.project_perp(&[a1.clone(), a3.clone()], &v).unwrap();
        let resid: Vec<Rat> = v.iter().zip(&p).map(|(a, b)| a - b).collect();
        let m = crate::linalg::transpose(&[a1, a3]);
        assert!(crate::linalg::solve(&m, &resid).unwrap().is_some());
    }

    #[test]
    fn rejects_bad_gram() {
        assert_eq!(
            AmbientSpace::new(vec![vec![rint(2), rint(1)], vec![rint(-1), rint(2)]]),
            Err(SpaceError::NotSymmetric)
        );
        assert_eq!(
            AmbientSpace::new(vec![vec![rint(2), rint(-2)], vec![rint(-2), rint(2)]]),
            Err(SpaceError::NotPositiveDefinite)
        );
    }
}
