//! Finite additive F_p-linear categories presented by indecomposables.
//!
//! A category is a table: a list of indecomposable objects, the dimension of
//! every hom-space between indecomposables, a dense structure-constant tensor
//! expressing composition of basis morphisms, and the coordinates of every
//! identity. Objects are formal direct sums (multisets of indecomposables)
//! and morphisms are block matrices of hom-space coordinate vectors.

use crate::error::{Error, Result};
use crate::gf::{norm, VecIter};
use serde::{Deserialize, Serialize};

/// Default cap on p^dim for a single hom-space enumeration sweep.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LinearCategory {
    pub p: u8,
    pub indec_ids: Vec<String>,
    /// hom_dim[i][j] = dim_{F_p} hom(i, j).
    pub hom_dim: Vec<Vec<usize>>,
    /// comp[i][j][k] is a dense tensor of shape
    /// (hom_dim(j,k), hom_dim(i,j), hom_dim(i,k)) laid out as
    /// `[(g * dim_ij + f) * dim_ik + out]`, expressing the composite of the
    /// g-th basis vector of hom(j,k) with the f-th basis vector of hom(i,j).
    pub comp: Vec<Vec<Vec<Vec<u8>>>>,
    /// Coordinates of the identity endomorphism of each indecomposable.
    pub id_coeffs: Vec<Vec<u8>>,
}

impl LinearCategory {
    pub fn n_indec(&self) -> usize {
        self.indec_ids.len()
    }

    #[inline]
    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.hom_dim[i][j]
    }

    /// Composite of basis vector `g` of hom(j,k) with basis vector `f` of
    /// hom(i,j), as coordinates in hom(i,k).
    #[inline]
    pub fn comp_basis(&self, i: usize, j: usize, k: usize, f: usize, g: usize) -> &[u8] {
        let dim_ij = self.dim(i, j);
        let dim_ik = self.dim(i, k);
        let idx = (g * dim_ij + f) * dim_ik;
        &self.comp[i][j][k][idx..idx + dim_ik]
    }

    /// Zero out one structure-constant vector, deliberately breaking the
    /// composition table — used by mutation controls.
    pub fn zero_comp_entry(&mut self, i: usize, j: usize, k: usize, f: usize, g: usize) {
        let dim_ij = self.dim(i, j);
        let dim_ik = self.dim(i, k);
        let idx = (g * dim_ij + f) * dim_ik;
        for e in &mut self.comp[i][j][k][idx..idx + dim_ik] {
            *e = 0;
        }
    }

    /// Bilinear composition of coordinate vectors: `gv` in hom(j,k) after
    /// `fv` in hom(i,j), yielding coordinates in hom(i,k).
    pub fn comp_elems(&self, i: usize, j: usize, k: usize, fv: &[u8], gv: &[u8]) -> Vec<u8> {
        let p = self.p as u32;
        let mut out = vec![0u32; self.dim(i, k)];
        for (g, &gc) in gv.iter().enumerate() {
            if gc == 0 {
                continue;
            }
            for (f, &fc) in fv.iter().enumerate() {
                if fc == 0 {
                    continue;
                }
                let scale = (gc as u32 * fc as u32) % p;
                for (o, &c) in self.comp_basis(i, j, k, f, g).iter().enumerate() {
                    out[o] = (out[o] + scale * c as u32) % p;
                }
            }
        }
        out.into_iter().map(|x| x as u8).collect()
    }

    /// Structural shape check plus exhaustive identity-law and associativity
    /// verification over all basis triples.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.n_indec();
        if self.p < 2 || (2..self.p).any(|d| self.p.is_multiple_of(d)) {
            report.push(format!("field order {} is not prime", self.p));
            return report;
        }
        if self.hom_dim.len() != n
            || self.hom_dim.iter().any(|r| r.len() != n)
            || self.comp.len() != n
            || self.id_coeffs.len() != n
        {
            report.push("table sizes do not match indecomposable count".into());
            return report;
        }
        for i in 0..n {
            if self.comp[i].len() != n || (0..n).any(|j| self.comp[i][j].len() != n) {
                report.push(format!("comp tensor for source {i} has wrong arity"));
                return report;
            }
            for j in 0..n {
                for k in 0..n {
                    let want = self.dim(j, k) * self.dim(i, j) * self.dim(i, k);
                    if self.comp[i][j][k].len() != want {
                        report.push(format!(
                            "comp tensor ({i},{j},{k}) has {} entries, expected {want}",
                            self.comp[i][j][k].len()
                        ));
                        return report;
                    }
                }
            }
            if self.id_coeffs[i].len() != self.dim(i, i) {
                report.push(format!("identity coordinates of {i} have wrong length"));
                return report;
            }
        }

        // Identity laws on every basis morphism.
        for i in 0..n {
            for j in 0..n {
                for f in 0..self.dim(i, j) {
                    let mut fv = vec![0u8; self.dim(i, j)];
                    fv[f] = 1;
                    let left = self.comp_elems(i, i, j, &self.id_coeffs[i], &fv);
                    if left != fv {
                        report.push(format!("right identity law fails: basis {f} of hom({i},{j})"));
                    }
                    let right = self.comp_elems(i, j, j, &fv, &self.id_coeffs[j]);
                    if right != fv {
                        report.push(format!("left identity law fails: basis {f} of hom({i},{j})"));
                    }
                }
            }
        }

        // Associativity on every basis triple.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for f in 0..self.dim(i, j) {
                            for g in 0..self.dim(j, k) {
                                for h in 0..self.dim(k, l) {
                                    let mut fv = vec![0u8; self.dim(i, j)];
                                    fv[f] = 1;
                                    let mut gv = vec![0u8; self.dim(j, k)];
                                    gv[g] = 1;
                                    let mut hv = vec![0u8; self.dim(k, l)];
                                    hv[h] = 1;
                                    let gf = self.comp_elems(i, j, k, &fv, &gv);
                                    let h_gf = self.comp_elems(i, k, l, &gf, &hv);
                                    let hg = self.comp_elems(j, k, l, &gv, &hv);
                                    let hg_f = self.comp_elems(i, j, l, &fv, &hg);
                                    if h_gf != hg_f {
                                        report.push(format!(
                                            "associativity fails on basis triple ({f},{g},{h}) of hom({i},{j}), hom({j},{k}), hom({k},{l})"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }
}

#[derive(Default, Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn push(&mut self, v: String) {
        self.violations.push(v);
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// A formal direct sum of indecomposables, canonicalized as a sorted multiset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Obj {
    summands: Vec<usize>,
}

impl Obj {
    pub fn zero() -> Self {
        Obj { summands: Vec::new() }
    }

    pub fn indec(i: usize) -> Self {
        Obj { summands: vec![i] }
    }

    pub fn new(mut summands: Vec<usize>) -> Self {
        summands.sort_unstable();
        Obj { summands }
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Direct sum, together with the position maps of both constituents
    /// into the canonical (sorted) sum.
    pub fn direct_sum(&self, other: &Obj) -> (Obj, Vec<usize>, Vec<usize>) {
        let mut tagged: Vec<(usize, usize, usize)> = Vec::new(); // (indec, side, pos)
        for (pos, &i) in self.summands.iter().enumerate() {
            tagged.push((i, 0, pos));
        }
        for (pos, &i) in other.summands.iter().enumerate() {
            tagged.push((i, 1, pos));
        }
        tagged.sort();
        let sum = Obj { summands: tagged.iter().map(|t| t.0).collect() };
        let mut left = vec![0; self.len()];
        let mut right = vec![0; other.len()];
        for (new_pos, &(_, side, pos)) in tagged.iter().enumerate() {
            if side == 0 {
                left[pos] = new_pos;
            } else {
                right[pos] = new_pos;
            }
        }
        (sum, left, right)
    }
}

/// A morphism between formal sums: a block matrix of hom-space coordinate
/// vectors, stored flat in the canonical basis order of hom(src, dst).
///
/// Basis order: source summand position outermost, then destination summand
/// position, then the hom-space basis index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Mor {
    pub src: Obj,
    pub dst: Obj,
    pub coords: Vec<u8>,
}

/// Total dimension of hom(X, Y).
pub fn hom_dim_obj(cat: &LinearCategory, x: &Obj, y: &Obj) -> usize {
    x.summands()
        .iter()
        .map(|&i| y.summands().iter().map(|&j| cat.dim(i, j)).sum::<usize>())
        .sum()
}

fn block_offset(cat: &LinearCategory, x: &Obj, y: &Obj, s: usize, t: usize) -> usize {
    let mut off = 0;
    for s2 in 0..s {
        for &j in y.summands() {
            off += cat.dim(x.summands()[s2], j);
        }
    }
    for t2 in 0..t {
        off += cat.dim(x.summands()[s], y.summands()[t2]);
    }
    off
}

impl Mor {
    pub fn zero(cat: &LinearCategory, src: Obj, dst: Obj) -> Self {
        let d = hom_dim_obj(cat, &src, &dst);
        Mor { src, dst, coords: vec![0; d] }
    }

    pub fn identity(cat: &LinearCategory, x: &Obj) -> Self {
        let mut m = Mor::zero(cat, x.clone(), x.clone());
        for s in 0..x.len() {
            let i = x.summands()[s];
            m.set_block(cat, s, s, &cat.id_coeffs[i].clone());
        }
        m
    }

    pub fn block<'a>(&'a self, cat: &LinearCategory, s: usize, t: usize) -> &'a [u8] {
        let i = self.src.summands()[s];
        let j = self.dst.summands()[t];
        let off = block_offset(cat, &self.src, &self.dst, s, t);
        &self.coords[off..off + cat.dim(i, j)]
    }

    pub fn set_block(&mut self, cat: &LinearCategory, s: usize, t: usize, v: &[u8]) {
        let i = self.src.summands()[s];
        let j = self.dst.summands()[t];
        assert_eq!(v.len(), cat.dim(i, j), "block shape mismatch");
        let off = block_offset(cat, &self.src, &self.dst, s, t);
        self.coords[off..off + v.len()].copy_from_slice(v);
    }

    pub fn from_coords(cat: &LinearCategory, src: Obj, dst: Obj, coords: Vec<u8>) -> Result<Self> {
        let want = hom_dim_obj(cat, &src, &dst);
        if coords.len() != want {
            return Err(Error::Composition(format!(
                "coordinate vector has length {}, expected {want}",
                coords.len()
            )));
        }
        Ok(Mor { src, dst, coords })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, cat: &LinearCategory, other: &Mor) -> Mor {
        assert_eq!((&self.src, &self.dst), (&other.src, &other.dst));
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| ((a as u16 + b as u16) % cat.p as u16) as u8)
            .collect();
        Mor { src: self.src.clone(), dst: self.dst.clone(), coords }
    }

    pub fn neg(&self, cat: &LinearCategory) -> Mor {
        let coords = self.coords.iter().map(|&a| norm(-(a as i64), cat.p)).collect();
        Mor { src: self.src.clone(), dst: self.dst.clone(), coords }
    }

    pub fn sub(&self, cat: &LinearCategory, other: &Mor) -> Mor {
        self.add(cat, &other.neg(cat))
    }

    pub fn scale(&self, cat: &LinearCategory, c: u8) -> Mor {
        let coords =
            self.coords.iter().map(|&a| ((a as u16 * c as u16) % cat.p as u16) as u8).collect();
        Mor { src: self.src.clone(), dst: self.dst.clone(), coords }
    }
}

/// Blockwise composite `g ∘ f` via the structure-constant tensors.
pub fn compose(cat: &LinearCategory, g: &Mor, f: &Mor) -> Result<Mor> {
    if f.dst != g.src {
        return Err(Error::Composition(format!(
            "domain mismatch: {:?} vs {:?}",
            f.dst.summands(),
            g.src.summands()
        )));
    }
    let mid = &f.dst;
    let mut out = Mor::zero(cat, f.src.clone(), g.dst.clone());
    for s in 0..f.src.len() {
        let i = f.src.summands()[s];
        for t in 0..g.dst.len() {
            let k = g.dst.summands()[t];
            let mut acc = vec![0u8; cat.dim(i, k)];
            for b in 0..mid.len() {
                let j = mid.summands()[b];
                let part = cat.comp_elems(i, j, k, f.block(cat, s, b), g.block(cat, b, t));
                for (o, &c) in part.iter().enumerate() {
                    acc[o] = ((acc[o] as u16 + c as u16) % cat.p as u16) as u8;
                }
            }
            out.set_block(cat, s, t, &acc);
        }
    }
    Ok(out)
}

/// All p^dim morphisms X → Y in a fixed deterministic order.
pub fn enumerate_morphisms(
    cat: &LinearCategory,
    x: &Obj,
    y: &Obj,
    cap: u64,
) -> Result<impl Iterator<Item = Mor>> {
    let dim = hom_dim_obj(cat, x, y);
    check_enum_budget(cat.p, dim, cap)?;
    let (x, y) = (x.clone(), y.clone());
    Ok(VecIter::new(cat.p, dim)
        .map(move |coords| Mor { src: x.clone(), dst: y.clone(), coords }))
}

/// Fails when p^dim exceeds the cap.
pub fn check_enum_budget(p: u8, dim: usize, cap: u64) -> Result<()> {
    let bits = (p as f64).log2() * dim as f64;
    if bits > (cap as f64).log2() + 1e-9 {
        return Err(Error::EnumerationBudget { p, dim, cap });
    }
    Ok(())
}

/// Build the matrix of a linear map hom(X,Y) → hom(X',Y') given its action
/// on basis morphisms.
pub fn linear_map_matrix(
    cat: &LinearCategory,
    x: &Obj,
    y: &Obj,
    mut action: impl FnMut(&Mor) -> Vec<u8>,
    out_dim: usize,
) -> crate::gf::Mat {
    let dim = hom_dim_obj(cat, x, y);
    let mut cols: Vec<Vec<u8>> = Vec::with_capacity(dim);
    for b in 0..dim {
        let mut coords = vec![0u8; dim];
        coords[b] = 1;
        let m = Mor { src: x.clone(), dst: y.clone(), coords };
        cols.push(action(&m));
    }
    crate::gf::Mat::from_fn(cat.p, out_dim, dim, |i, j| cols[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-object category: hom(0,0)=k, hom(1,1)=k, hom(0,1)=k, hom(1,0)=0,
    /// all composites the scalar product.
    pub fn arrow_category(p: u8) -> LinearCategory {
        let n = 2;
        let hom_dim = vec![vec![1, 1], vec![0, 1]];
        let mut comp = vec![vec![vec![Vec::new(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = hom_dim[j][k] * hom_dim[i][j] * hom_dim[i][k];
                    // every hom space is at most 1-dimensional and every
                    // allowed composite of basis vectors is the basis vector
                    comp[i][j][k] = vec![1; d];
                }
            }
        }
        LinearCategory {
            p,
            indec_ids: vec!["a".into(), "b".into()],
            hom_dim,
            comp,
            id_coeffs: vec![vec![1], vec![1]],
        }
    }

    #[test]
    fn arrow_category_validates() {
        assert!(arrow_category(2).validate().is_valid());
        assert!(arrow_category(3).validate().is_valid());
    }

    #[test]
    fn flipped_constant_fails_validation() {
        let mut cat = arrow_category(2);
        cat.comp[0][0][1][0] = 0; // break id-then-f
        let report = cat.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.contains("hom(0,1)")));
    }

    #[test]
    fn identity_composition() {
        let cat = arrow_category(3);
        let x = Obj::new(vec![0, 1]);
        let y = Obj::new(vec![1]);
        let id = Mor::identity(&cat, &x);
        for f in enumerate_morphisms(&cat, &x, &y, 1 << 10).unwrap() {
            assert_eq!(compose(&cat, &f, &id).unwrap(), f);
        }
        let zero = Mor::zero(&cat, y.clone(), x.clone());
        let f = Mor::from_coords(&cat, x.clone(), y.clone(), vec![1, 2]).unwrap();
        assert!(compose(&cat, &f, &zero).unwrap().is_zero());
    }

    #[test]
    fn hom_dims_additive() {
        let cat = arrow_category(2);
        let x = Obj::indec(0);
        let xx = Obj::new(vec![0, 0]);
        let y = Obj::indec(1);
        assert_eq!(hom_dim_obj(&cat, &xx, &y), 2 * hom_dim_obj(&cat, &x, &y));
        assert_eq!(hom_dim_obj(&cat, &Obj::zero(), &y), 0);
        let idx = Mor::identity(&cat, &x);
        assert!(!idx.is_zero());
    }

    #[test]
    fn enumeration_count_matches_dimension() {
        let cat = arrow_category(2);
        let x = Obj::new(vec![0, 0, 0]);
        let y = Obj::indec(1);
        let dim = hom_dim_obj(&cat, &x, &y);
        assert_eq!(dim, 3);
        assert_eq!(enumerate_morphisms(&cat, &x, &y, 1 << 10).unwrap().count(), 8);
        // zero hom space: exactly the zero morphism
        assert_eq!(enumerate_morphisms(&cat, &y, &x, 1 << 10).unwrap().count(), 1);
        assert_eq!(
            enumerate_morphisms(&cat, &Obj::zero(), &y, 1 << 10).unwrap().count(),
            1
        );
    }

    #[test]
    fn budget_error_carries_dimension() {
        match check_enum_budget(2, 40, 1 << 20) {
            Err(crate::error::Error::EnumerationBudget { dim, .. }) => assert_eq!(dim, 40),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    proptest::proptest! {
        /// Composition is associative and bilinear for pseudo-random
        /// morphisms between random formal sums in a stable module category.
        #[test]
        fn composition_associative_and_bilinear(seed in 0u64..200) {
            use proptest::prelude::prop_assert_eq;
            let sub = crate::nakayama::generate_nakayama_stable(2, 3, 3).unwrap();
            let cat = sub.cat();
            let n = cat.n_indec();
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut next = |m: usize| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) as usize) % m
            };
            let rand_obj = |next: &mut dyn FnMut(usize) -> usize| {
                Obj::new((0..1 + next(2)).map(|_| next(n)).collect())
            };
            let x = rand_obj(&mut next);
            let y = rand_obj(&mut next);
            let z = rand_obj(&mut next);
            let w = rand_obj(&mut next);
            let rand_mor = |a: &Obj, b: &Obj, next: &mut dyn FnMut(usize) -> usize| {
                let d = hom_dim_obj(cat, a, b);
                let coords = (0..d).map(|_| next(cat.p as usize) as u8).collect();
                Mor::from_coords(cat, a.clone(), b.clone(), coords).unwrap()
            };
            let f = rand_mor(&x, &y, &mut next);
            let f2 = rand_mor(&x, &y, &mut next);
            let g = rand_mor(&y, &z, &mut next);
            let h = rand_mor(&z, &w, &mut next);

            let gf = compose(cat, &g, &f).unwrap();
            let hg = compose(cat, &h, &g).unwrap();
            prop_assert_eq!(compose(cat, &h, &gf).unwrap(), compose(cat, &hg, &f).unwrap());

            // right linearity: g∘(f + f') = g∘f + g∘f'
            let add = |a: &Mor, b: &Mor| {
                let coords = a.coords.iter().zip(&b.coords).map(|(&u, &v)| (u + v) % cat.p).collect();
                Mor::from_coords(cat, a.src.clone(), a.dst.clone(), coords).unwrap()
            };
            let sum = add(&f, &f2);
            prop_assert_eq!(
                compose(cat, &g, &sum).unwrap(),
                add(&gf, &compose(cat, &g, &f2).unwrap())
            );

            // identities are neutral
            prop_assert_eq!(compose(cat, &Mor::identity(cat, &y), &f).unwrap(), f.clone());
            prop_assert_eq!(compose(cat, &f, &Mor::identity(cat, &x)).unwrap(), f);
        }
    }

    #[test]
    fn associativity_on_all_triples() {
        let cat = arrow_category(3);
        let x = Obj::new(vec![0, 0]);
        let y = Obj::new(vec![0, 1]);
        let z = Obj::new(vec![1, 1]);
        for f in enumerate_morphisms(&cat, &x, &y, 1 << 20).unwrap().take(20) {
            for g in enumerate_morphisms(&cat, &y, &z, 1 << 20).unwrap().take(20) {
                for h in enumerate_morphisms(&cat, &z, &z, 1 << 20).unwrap().take(10) {
                    let gf = compose(&cat, &g, &f).unwrap();
                    let hg = compose(&cat, &h, &g).unwrap();
                    assert_eq!(
                        compose(&cat, &h, &gf).unwrap(),
                        compose(&cat, &hg, &f).unwrap()
                    );
                }
            }
        }
    }
}
