//! Ideal quotients C/W: same objects, morphisms modulo those factoring
//! through a fixed subcategory W.
//!
//! For every pair of indecomposables (i, j) the ideal [W](i, j) is the span
//! of all composites i → W_k → j; for sums the ideal is the blockwise direct
//! sum of these (factoring through a sum is a sum of factorizations). Coset
//! coordinates are read off a canonical complement per hom block.

use crate::error::Result;
use crate::gf::{Mat, Subspace, VecIter};
use crate::lincat::{check_enum_budget, compose, LinearCategory, Mor, Obj};
use crate::tricat::{SubCat, TriStructure};

/// An ideal quotient of the ambient category by a subcategory `ideal_class`,
/// restricted to the objects of `allowed`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub allowed: SubCat,
    pub ideal_class: SubCat,
    /// ideal[i][j] ⊆ hom(i, j) for every indec pair of the ambient category.
    ideal: Vec<Vec<Subspace>>,
}

/// A morphism of the quotient: an ambient representative plus its coset
/// coordinates. Two QMors are equal iff endpoints and cosets agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMor {
    pub rep: Mor,
    pub coset: Vec<u8>,
}

impl Quotient {
    pub fn build(tri: &TriStructure, allowed: SubCat, ideal_class: SubCat) -> Quotient {
        let cat = &tri.cat;
        let n = cat.n_indec();
        let mut ideal = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut vectors: Vec<Vec<u8>> = Vec::new();
                for &w in &ideal_class.0 {
                    for f in 0..cat.dim(i, w) {
                        for g in 0..cat.dim(w, j) {
                            vectors.push(cat.comp_basis(i, w, j, f, g).to_vec());
                        }
                    }
                }
                row.push(Subspace::span(cat.p, cat.dim(i, j), &vectors));
            }
            ideal.push(row);
        }
        Quotient { allowed, ideal_class, ideal }
    }

    pub fn ideal_subspace(&self, i: usize, j: usize) -> &Subspace {
        &self.ideal[i][j]
    }

    /// Dimension of qhom(i, j) for indecomposables.
    pub fn qdim_pair(&self, i: usize, j: usize) -> usize {
        self.ideal[i][j].codim()
    }

    /// Dimension of qhom(X, Y).
    pub fn qdim(&self, x: &Obj, y: &Obj) -> usize {
        x.summands()
            .iter()
            .map(|&i| y.summands().iter().map(|&j| self.qdim_pair(i, j)).sum::<usize>())
            .sum()
    }

    /// Coset coordinates of a morphism, blockwise in the canonical order.
    pub fn project(&self, cat: &LinearCategory, m: &Mor) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.qdim(&m.src, &m.dst));
        for s in 0..m.src.len() {
            let i = m.src.summands()[s];
            for t in 0..m.dst.len() {
                let j = m.dst.summands()[t];
                out.extend(self.ideal[i][j].project(m.block(cat, s, t)));
            }
        }
        out
    }

    /// Canonical ambient representative of a coset coordinate vector.
    pub fn lift(&self, cat: &LinearCategory, x: &Obj, y: &Obj, coset: &[u8]) -> Mor {
        assert_eq!(coset.len(), self.qdim(x, y));
        let mut m = Mor::zero(cat, x.clone(), y.clone());
        let mut off = 0;
        for s in 0..x.len() {
            let i = x.summands()[s];
            for t in 0..y.len() {
                let j = y.summands()[t];
                let d = self.qdim_pair(i, j);
                m.set_block(cat, s, t, &self.ideal[i][j].lift(&coset[off..off + d]));
                off += d;
            }
        }
        m
    }

    pub fn qmor(&self, cat: &LinearCategory, rep: Mor) -> QMor {
        let coset = self.project(cat, &rep);
        QMor { rep, coset }
    }

    pub fn is_zero_mor(&self, cat: &LinearCategory, m: &Mor) -> bool {
        self.project(cat, m).iter().all(|&c| c == 0)
    }

    /// X ≅ 0 in the quotient ⟺ every summand lies in the ideal class.
    pub fn is_zero_obj(&self, x: &Obj) -> bool {
        self.ideal_class.contains_obj(x)
    }

    pub fn obj_allowed(&self, x: &Obj) -> bool {
        self.allowed.contains_obj(x)
    }

    /// Matrix of a linear action qhom(x, y) → qhom(x2, y2): each quotient
    /// basis vector is lifted, acted on, and projected.
    pub fn qmap_matrix(
        &self,
        cat: &LinearCategory,
        x: &Obj,
        y: &Obj,
        x2: &Obj,
        y2: &Obj,
        mut action: impl FnMut(&Mor) -> Mor,
    ) -> Mat {
        let dim = self.qdim(x, y);
        let out_dim = self.qdim(x2, y2);
        let mut cols = Vec::with_capacity(dim);
        for b in 0..dim {
            let mut coset = vec![0u8; dim];
            coset[b] = 1;
            let rep = self.lift(cat, x, y, &coset);
            let img = action(&rep);
            debug_assert_eq!((&img.src, &img.dst), (x2, y2));
            cols.push(self.project(cat, &img));
        }
        Mat::from_fn(cat.p, out_dim, dim, |i, j| cols[j][i])
    }

    /// All quotient morphisms x → y, one canonical representative per coset.
    pub fn enumerate_qmors(
        &self,
        cat: &LinearCategory,
        x: &Obj,
        y: &Obj,
        cap: u64,
    ) -> Result<Vec<QMor>> {
        let dim = self.qdim(x, y);
        check_enum_budget(cat.p, dim, cap)?;
        Ok(VecIter::new(cat.p, dim)
            .map(|coset| QMor { rep: self.lift(cat, x, y, &coset), coset })
            .collect())
    }

    /// Search for mutually inverse quotient morphisms between x and y.
    pub fn find_iso(
        &self,
        cat: &LinearCategory,
        x: &Obj,
        y: &Obj,
        cap: u64,
    ) -> Result<Option<(QMor, QMor)>> {
        if self.is_zero_obj(x) && self.is_zero_obj(y) {
            let f = self.qmor(cat, Mor::zero(cat, x.clone(), y.clone()));
            let g = self.qmor(cat, Mor::zero(cat, y.clone(), x.clone()));
            return Ok(Some((f, g)));
        }
        if self.qdim(x, x) == 0 || self.qdim(y, y) == 0 {
            // nonzero object with zero identity cannot happen; but a zero
            // quotient endo space forces the object to be zero
            return Ok(None);
        }
        let idx = self.project(cat, &Mor::identity(cat, x));
        let idy = self.project(cat, &Mor::identity(cat, y));
        for f in self.enumerate_qmors(cat, x, y, cap)? {
            // solve for g with ḡ∘f̄ = id_x and f̄∘ḡ = id_y, linear in g
            let right = self.qmap_matrix(cat, y, x, x, x, |g| {
                compose(cat, g, &f.rep).unwrap()
            });
            let left = self.qmap_matrix(cat, y, x, y, y, |g| {
                compose(cat, &f.rep, g).unwrap()
            });
            let sys = right.vcat(&left);
            let mut target = idx.clone();
            target.extend_from_slice(&idy);
            if let Some(gcoset) = sys.solve(&target) {
                let g = QMor { rep: self.lift(cat, y, x, &gcoset), coset: gcoset };
                return Ok(Some((f, g)));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::enumerate_morphisms;
    use crate::nakayama::generate_nakayama_stable;
    use crate::tricat::SubCat;

    #[test]
    fn quotient_by_everything_is_zero() {
        let sub = generate_nakayama_stable(1, 4, 2).unwrap();
        let all = SubCat::full(3);
        let q = Quotient::build(&sub.tri, all.clone(), all);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(q.qdim_pair(i, j), 0);
            }
            assert!(q.is_zero_obj(&Obj::indec(i)));
        }
    }

    #[test]
    fn quotient_by_nothing_is_ambient() {
        let sub = generate_nakayama_stable(1, 4, 3).unwrap();
        let q = Quotient::build(&sub.tri, SubCat::full(3), SubCat::empty());
        let cat = sub.cat();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(q.qdim_pair(i, j), cat.dim(i, j));
            }
        }
    }

    #[test]
    fn ideal_absorbs_composition() {
        // composing with anything keeps a morphism in the ideal
        let sub = generate_nakayama_stable(1, 4, 2).unwrap();
        let cat = sub.cat();
        let w = SubCat::from_iter([1usize]);
        let q = Quotient::build(&sub.tri, SubCat::full(3), w);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let x = Obj::indec(i);
                    let y = Obj::indec(j);
                    let z = Obj::indec(k);
                    for f in enumerate_morphisms(cat, &x, &y, 1 << 10).unwrap() {
                        if !q.is_zero_mor(cat, &f) {
                            continue;
                        }
                        for g in enumerate_morphisms(cat, &y, &z, 1 << 10).unwrap() {
                            let gf = compose(cat, &g, &f).unwrap();
                            assert!(q.is_zero_mor(cat, &gf));
                        }
                        for e in enumerate_morphisms(cat, &z, &x, 1 << 10).unwrap() {
                            let fe = compose(cat, &f, &e).unwrap();
                            assert!(q.is_zero_mor(cat, &fe));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_lift_roundtrip() {
        let sub = generate_nakayama_stable(2, 3, 3).unwrap();
        let cat = sub.cat();
        let w = SubCat::from_iter([0usize, 2]);
        let q = Quotient::build(&sub.tri, SubCat::full(4), w);
        let x = Obj::new(vec![1, 3]);
        let y = Obj::new(vec![0, 1]);
        let dim = q.qdim(&x, &y);
        for coset in VecIter::new(3, dim) {
            let m = q.lift(cat, &x, &y, &coset);
            assert_eq!(q.project(cat, &m), coset);
        }
    }

    #[test]
    fn object_iso_to_itself_plus_ideal_summand() {
        let sub = generate_nakayama_stable(1, 4, 2).unwrap();
        let cat = sub.cat();
        let w = SubCat::from_iter([1usize]);
        let q = Quotient::build(&sub.tri, SubCat::full(3), w);
        let x = Obj::indec(0);
        let xw = Obj::new(vec![0, 1]);
        let iso = q.find_iso(cat, &x, &xw, 1 << 16).unwrap();
        assert!(iso.is_some());
        let (f, g) = iso.unwrap();
        let gf = compose(cat, &g.rep, &f.rep).unwrap();
        let idx = Mor::identity(cat, &x);
        assert!(q.is_zero_mor(cat, &gf.sub(cat, &idx)));
    }

    proptest::proptest! {
        /// The coset map is linear, lift is a section of project, and
        /// composition descends to cosets: replacing a morphism by another
        /// representative of the same coset does not change the coset of a
        /// composite.
        #[test]
        fn coset_map_is_linear_and_composition_descends(seed in 0u64..200) {
            use proptest::prelude::prop_assert;
            use proptest::prelude::prop_assert_eq;
            use crate::lincat::{compose, hom_dim_obj, Mor};

            let sub = generate_nakayama_stable(2, 3, 3).unwrap();
            let cat = sub.cat();
            let n = cat.n_indec();
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut next = |m: usize| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) as usize) % m
            };
            let w = SubCat::from_iter([next(n)]);
            let q = Quotient::build(&sub.tri, SubCat::full(n), w);
            let x = Obj::new(vec![next(n), next(n)]);
            let y = Obj::new(vec![next(n), next(n)]);
            let z = Obj::indec(next(n));
            let rand_mor = |a: &Obj, b: &Obj, next: &mut dyn FnMut(usize) -> usize| {
                let d = hom_dim_obj(cat, a, b);
                let coords = (0..d).map(|_| next(cat.p as usize) as u8).collect();
                Mor::from_coords(cat, a.clone(), b.clone(), coords).unwrap()
            };
            let f = rand_mor(&x, &y, &mut next);
            let f2 = rand_mor(&x, &y, &mut next);
            let g = rand_mor(&y, &z, &mut next);

            // linearity of the coset map
            let add = |a: &Mor, b: &Mor| {
                let coords: Vec<u8> =
                    a.coords.iter().zip(&b.coords).map(|(&u, &v)| (u + v) % cat.p).collect();
                Mor::from_coords(cat, a.src.clone(), a.dst.clone(), coords).unwrap()
            };
            let add_coset = |a: &[u8], b: &[u8]| -> Vec<u8> {
                a.iter().zip(b).map(|(&u, &v)| (u + v) % cat.p).collect()
            };
            let qf = q.qmor(cat, f.clone());
            let qf2 = q.qmor(cat, f2.clone());
            let qsum = q.qmor(cat, add(&f, &f2));
            prop_assert_eq!(qsum.coset.clone(), add_coset(&qf.coset, &qf2.coset));

            // lift is a section of project
            let lifted = q.lift(cat, &x, &y, &qf.coset);
            prop_assert_eq!(q.project(cat, &lifted), qf.coset.clone());

            // f and its canonical lift differ by the ideal ...
            let diff = f.sub(cat, &lifted);
            prop_assert!(q.is_zero_mor(cat, &diff));

            // ... so composites with either have the same coset
            let via_f = q.qmor(cat, compose(cat, &g, &f).unwrap());
            let via_lift = q.qmor(cat, compose(cat, &g, &lifted).unwrap());
            prop_assert_eq!(via_f.coset, via_lift.coset);
        }
    }
}
