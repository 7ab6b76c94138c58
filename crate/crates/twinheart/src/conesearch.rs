//! Exhaustive cone search for small substrates given by bare tables.
//!
//! The cone object of f : A → B is pinned down numerically: for every test
//! indecomposable T the long exact hom sequence forces
//! dim hom(T, C) = dim coker hom(T, f) + dim ker hom(T, f[1]).
//! We enumerate the multisets of indecomposables matching that profile, then
//! sweep the (constrained) morphism pairs (g, h) and keep the first
//! completion that passes the full triangle validator.

use crate::error::{Error, Result};
use crate::gf::{Mat, VecIter};
use crate::lincat::{check_enum_budget, compose, hom_dim_obj, linear_map_matrix, Mor, Obj};
use crate::tricat::{mor_key, Substrate, Triangle};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchParams {
    /// Cap on p^dim per morphism sweep.
    pub enum_cap: u64,
    /// Cap on candidate cone objects tried.
    pub max_objects: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { enum_cap: crate::lincat::DEFAULT_ENUM_CAP, max_objects: 10_000 }
    }
}

/// Multisets of indecomposables whose hom profile from every test object
/// matches `target` exactly.
pub(crate) fn profile_solutions(
    cols: &[Vec<usize>],
    target: &[usize],
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    let n = cols.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; n];
    fn dfs(
        cols: &[Vec<usize>],
        rem: &mut Vec<usize>,
        idx: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if idx == cols.len() {
            if rem.iter().all(|&r| r == 0) {
                if out.len() == cap {
                    return Err(Error::Indeterminate(format!(
                        "more than {cap} candidate cone objects match the hom profile"
                    )));
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        let col = &cols[idx];
        let bound = rem
            .iter()
            .zip(col)
            .filter(|&(_, &c)| c > 0)
            .map(|(&r, &c)| r / c)
            .min()
            .unwrap_or(0);
        for mult in 0..=bound {
            if mult > 0 {
                for (r, &c) in rem.iter_mut().zip(col) {
                    *r -= c;
                }
            }
            cur[idx] = mult;
            dfs(cols, rem, idx + 1, cur, out, cap)?;
        }
        cur[idx] = 0;
        for (r, &c) in rem.iter_mut().zip(col) {
            *r += bound * c;
        }
        Ok(())
    }
    let mut rem = target.to_vec();
    dfs(cols, &mut rem, 0, &mut cur, &mut out, cap)?;
    Ok(out)
}

/// Morphisms in the kernel of a linear condition on hom(x, y).
fn constrained_morphisms(
    sub: &Substrate,
    x: &Obj,
    y: &Obj,
    condition: &Mat,
    cap: u64,
) -> Result<Vec<Mor>> {
    let cat = sub.cat();
    let basis = condition.nullspace();
    check_enum_budget(cat.p, basis.len(), cap)?;
    let dim = hom_dim_obj(cat, x, y);
    let mut out = Vec::new();
    for coeffs in VecIter::new(cat.p, basis.len()) {
        let mut coords = vec![0u8; dim];
        for (bi, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &v) in basis[bi].iter().enumerate() {
                coords[o] =
                    ((coords[o] as u16 + c as u16 * v as u16) % cat.p as u16) as u8;
            }
        }
        out.push(Mor { src: x.clone(), dst: y.clone(), coords });
    }
    Ok(out)
}

/// Complete f into a distinguished triangle by exhaustive search.
pub fn cone_search(sub: &Substrate, params: &SearchParams, f: &Mor) -> Result<Triangle> {
    let cat = sub.cat();
    let tri = &sub.tri;
    let n = cat.n_indec();
    let f1 = tri.shift_mor_by(f, 1);

    // Forced hom profile of the cone object.
    let mut target = Vec::with_capacity(n);
    for t_id in 0..n {
        let t = Obj::indec(t_id);
        let fstar = {
            let out_dim = hom_dim_obj(cat, &t, &f.dst);
            linear_map_matrix(cat, &t, &f.src, |phi| compose(cat, f, phi).unwrap().coords, out_dim)
        };
        let f1star = {
            let out_dim = hom_dim_obj(cat, &t, &f1.dst);
            linear_map_matrix(
                cat,
                &t,
                &f1.src,
                |phi| compose(cat, &f1, phi).unwrap().coords,
                out_dim,
            )
        };
        let coker = hom_dim_obj(cat, &t, &f.dst) - fstar.rank();
        let ker = hom_dim_obj(cat, &t, &f1.src) - f1star.rank();
        target.push(coker + ker);
    }
    let cols: Vec<Vec<usize>> =
        (0..n).map(|q| (0..n).map(|t| cat.dim(t, q)).collect()).collect();
    let mut objects = profile_solutions(&cols, &target, params.max_objects)?;
    objects.sort();

    let (a1, _) = tri.shift_obj_by(&f.src, 1);
    for mult in objects {
        let mut summands = Vec::new();
        for (q, &d) in mult.iter().enumerate() {
            summands.extend(std::iter::repeat_n(q, d));
        }
        let c = Obj::new(summands);
        // g : B → C with g ∘ f = 0
        let precond = {
            let out_dim = hom_dim_obj(cat, &f.src, &c);
            linear_map_matrix(cat, &f.dst, &c, |g| compose(cat, g, f).unwrap().coords, out_dim)
        };
        let gs = constrained_morphisms(sub, &f.dst, &c, &precond, params.enum_cap)?;
        for g in gs {
            // h : C → A[1] with f[1] ∘ h = 0 and h ∘ g = 0
            let cond = {
                let out_top = hom_dim_obj(cat, &c, &f1.dst);
                let top = linear_map_matrix(
                    cat,
                    &c,
                    &a1,
                    |h| compose(cat, &f1, h).unwrap().coords,
                    out_top,
                );
                let out_bot = hom_dim_obj(cat, &f.dst, &a1);
                let bot = linear_map_matrix(
                    cat,
                    &c,
                    &a1,
                    |h| compose(cat, h, &g).unwrap().coords,
                    out_bot,
                );
                top.vcat(&bot)
            };
            let hs = constrained_morphisms(sub, &c, &a1, &cond, params.enum_cap)?;
            for h in hs {
                let t = Triangle {
                    a: f.src.clone(),
                    b: f.dst.clone(),
                    c: c.clone(),
                    f: f.clone(),
                    g: g.clone(),
                    h,
                };
                if sub.validate_triangle(&t).is_valid() {
                    return Ok(t);
                }
            }
        }
    }
    Err(Error::ConeUnsupported(mor_key(f)))
}
