//! A five-object fixture: the cluster category of the A_2 quiver.
//!
//! Five indecomposables X0..X4 arranged in a pentagon. hom(X_i, X_j) is
//! one-dimensional when j = i or j = i+1 (mod 5) and zero otherwise, with
//! all composites of two non-identity basis maps vanishing. The shift moves
//! three steps around the pentagon; cones come from the exhaustive search
//! backend, gated by the triangulation validator.

use crate::conesearch::SearchParams;
use crate::error::{Error, Result};
use crate::gf::Mat;
use crate::lincat::LinearCategory;
use crate::tricat::{ConeBackend, Substrate, TriStructure};

pub fn pentagon_category(p: u8) -> LinearCategory {
    let n = 5;
    let dim = |i: usize, j: usize| -> usize {
        usize::from(j == i || j == (i + 1) % n)
    };
    let hom_dim: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| dim(i, j)).collect()).collect();
    let mut comp = vec![vec![vec![Vec::new(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = dim(j, k) * dim(i, j) * dim(i, k);
                // only identity-against-basis composites survive
                let val = u8::from(d == 1 && (i == j || j == k));
                comp[i][j][k] = vec![val; d];
            }
        }
    }
    LinearCategory {
        p,
        indec_ids: (0..n).map(|i| format!("X{i}")).collect(),
        hom_dim,
        comp,
        id_coeffs: vec![vec![1]; n],
    }
}

/// Build the validated pentagon substrate over F_p.
pub fn pentagon_substrate(p: u8) -> Result<Substrate> {
    let cat = pentagon_category(p);
    let report = cat.validate();
    if !report.is_valid() {
        return Err(Error::Invalid(format!("pentagon category tables: {report}")));
    }
    let n = 5;
    let shift_obj: Vec<usize> = (0..n).map(|i| (i + 3) % n).collect();
    let shift_mor: Vec<Vec<Mat>> = (0..n)
        .map(|i| (0..n).map(|j| Mat::identity(p, cat.dim(i, j))).collect())
        .collect();
    let tri = TriStructure { cat, shift_obj, shift_mor };
    let sub = Substrate::new(tri, ConeBackend::Search(SearchParams::default()));
    let report = sub.validate_triangulation();
    if !report.is_valid() {
        return Err(Error::Invalid(format!("pentagon triangulation: {report}")));
    }
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{Mor, Obj};

    #[test]
    fn builds_and_validates() {
        for p in [2u8, 3] {
            let sub = pentagon_substrate(p).unwrap();
            assert_eq!(sub.n_indec(), 5);
        }
    }

    #[test]
    fn pentagon_triangles_rotate_around() {
        // the basis map X0 → X1 extends to X0 → X1 → X2 → X3
        let sub = pentagon_substrate(2).unwrap();
        let f = Mor { src: Obj::indec(0), dst: Obj::indec(1), coords: vec![1] };
        let t = sub.cone(&f).unwrap();
        assert_eq!(t.c, Obj::indec(2));
        assert!(!t.g.is_zero());
        assert!(!t.h.is_zero());
    }

    #[test]
    fn ext_one_dimensional_two_steps_away() {
        let sub = pentagon_substrate(3).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let e = sub.tri.ext1(&Obj::indec(i), &Obj::indec(j));
                let expect = usize::from(j == (i + 2) % 5 || j == (i + 3) % 5);
                assert_eq!(e, expect, "ext1(X{i}, X{j})");
            }
        }
    }
}
