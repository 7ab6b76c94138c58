//! Stable module categories of self-injective Nakayama algebras, computed
//! from first principles.
//!
//! The algebra is the path algebra of a cyclic quiver with `m` vertices
//! modulo paths of length `n`. Indecomposable modules are uniserial strings
//! M(v, l) (start vertex v, length 1 ≤ l ≤ n); the modules of length n are
//! the projective-injectives. The stable category has the M(v, l) with
//! l < n as objects, stable homs are module homs modulo maps factoring
//! through projectives, the shift is the cosyzygy, and cones are pushouts
//! along injective hulls.

use crate::error::{Error, Result};
use crate::gf::{Mat, Subspace};
use crate::lincat::{LinearCategory, Mor, Obj};
use crate::tricat::{ConeBackend, Substrate, Triangle, TriStructure};

/// A finite-dimensional representation of the cyclic quiver: one vector
/// space per vertex and the arrow action V_v → V_{v+1}.
#[derive(Clone, Debug)]
pub struct Module {
    pub p: u8,
    pub m: usize,
    pub dims: Vec<usize>,
    /// act[v]: dims[(v+1) % m] × dims[v].
    pub act: Vec<Mat>,
}

impl Module {
    fn empty_shell(p: u8, m: usize, dims: Vec<usize>) -> Self {
        let act = (0..m).map(|v| Mat::zero(p, dims[(v + 1) % m], dims[v])).collect();
        Module { p, m, dims, act }
    }

    /// Matrix of x^k : V_v → V_{v+k}.
    fn pow_map(&self, v: usize, k: usize) -> Mat {
        let mut mat = Mat::identity(self.p, self.dims[v]);
        let mut cur = v;
        for _ in 0..k {
            mat = self.act[cur].mul(&mat);
            cur = (cur + 1) % self.m;
        }
        mat
    }

    fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// A degree-zero linear map between modules, one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMap {
    pub mats: Vec<Mat>,
}

impl ModMap {
    fn zero(src: &Module, dst: &Module) -> Self {
        ModMap {
            mats: (0..src.m).map(|v| Mat::zero(src.p, dst.dims[v], src.dims[v])).collect(),
        }
    }

    fn identity(module: &Module) -> Self {
        ModMap { mats: (0..module.m).map(|v| Mat::identity(module.p, module.dims[v])).collect() }
    }

    fn compose(&self, inner: &ModMap) -> ModMap {
        ModMap {
            mats: self.mats.iter().zip(&inner.mats).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    fn add_scaled(&mut self, other: &ModMap, c: u8) {
        for (a, b) in self.mats.iter_mut().zip(&other.mats) {
            *a = a.add(&b.scale(c));
        }
    }

    fn flatten(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for mat in &self.mats {
            for i in 0..mat.rows() {
                out.extend_from_slice(mat.row(i));
            }
        }
        out
    }

    fn is_module_map(&self, src: &Module, dst: &Module) -> bool {
        (0..src.m).all(|v| {
            let w = (v + 1) % src.m;
            self.mats[w].mul(&src.act[v]) == dst.act[v].mul(&self.mats[v])
        })
    }
}

/// Basis of Hom_A(src, dst), found as the nullspace of the commuting
/// constraints.
fn hom_basis(src: &Module, dst: &Module) -> Vec<ModMap> {
    let p = src.p;
    let m = src.m;
    // Unknowns: entries of the per-vertex matrices, in flatten() order.
    let mut var_off = vec![0usize; m + 1];
    for v in 0..m {
        var_off[v + 1] = var_off[v] + dst.dims[v] * src.dims[v];
    }
    let nvars = var_off[m];
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for v in 0..m {
        let w = (v + 1) % m;
        // F_w * src.act[v] == dst.act[v] * F_v, entry (i, j):
        for i in 0..dst.dims[w] {
            for j in 0..src.dims[v] {
                let mut row = vec![0i64; nvars];
                for k in 0..src.dims[w] {
                    row[var_off[w] + i * src.dims[w] + k] += src.act[v].get(k, j) as i64;
                }
                for k in 0..dst.dims[v] {
                    row[var_off[v] + k * src.dims[v] + j] -= dst.act[v].get(i, k) as i64;
                }
                rows.push(row.into_iter().map(|x| crate::gf::norm(x, p)).collect());
            }
        }
    }
    let mat = if rows.is_empty() {
        Mat::zero(p, 0, nvars)
    } else {
        Mat::from_rows(p, nvars, &rows)
    };
    mat.nullspace()
        .into_iter()
        .map(|sol| {
            let mut mm = ModMap::zero(src, dst);
            for v in 0..m {
                let mut mat_v = Mat::zero(p, dst.dims[v], src.dims[v]);
                for i in 0..dst.dims[v] {
                    for j in 0..src.dims[v] {
                        mat_v.set(i, j, sol[var_off[v] + i * src.dims[v] + j]);
                    }
                }
                mm.mats[v] = mat_v;
            }
            debug_assert!(mm.is_module_map(src, dst));
            mm
        })
        .collect()
}

/// A uniserial module M(v, l) with its string basis b_0..b_{l-1} located in
/// the per-vertex coordinate spaces.
#[derive(Clone, Debug)]
pub struct Uniserial {
    pub v: usize,
    pub l: usize,
    pub module: Module,
    /// pos[t] = (vertex of b_t, coordinate index within that vertex).
    pub pos: Vec<(usize, usize)>,
}

fn uniserial(p: u8, m: usize, n: usize, v: usize, l: usize) -> Uniserial {
    assert!(l >= 1 && l <= n);
    let mut dims = vec![0usize; m];
    let mut pos = Vec::with_capacity(l);
    for t in 0..l {
        let vert = (v + t) % m;
        pos.push((vert, dims[vert]));
        dims[vert] += 1;
    }
    let mut module = Module::empty_shell(p, m, dims);
    for t in 0..l.saturating_sub(1) {
        let (vert, idx) = pos[t];
        let (_, idx2) = pos[t + 1];
        module.act[vert].set(idx2, idx, 1);
    }
    Uniserial { v, l, module, pos }
}

struct HomTable {
    basis: Vec<ModMap>,
    /// Columns are the flattened basis maps; used to read off coordinates.
    flat: Mat,
    /// Span of the maps factoring through a projective, in basis coordinates.
    stable: Subspace,
}

/// The ambient module-category model backing a generated substrate.
pub struct NakayamaModel {
    pub m: usize,
    pub n: usize,
    pub p: u8,
    /// All uniserials, indexed by v * n + (l - 1) for l = 1..=n.
    mods: Vec<Uniserial>,
    hom: Vec<Vec<HomTable>>,
}

impl NakayamaModel {
    fn mod_index(&self, v: usize, l: usize) -> usize {
        v * self.n + (l - 1)
    }

    /// Module index of the stable indecomposable with the given id.
    fn stable_to_mod(&self, stable: usize) -> usize {
        let v = stable / (self.n - 1);
        let l = stable % (self.n - 1) + 1;
        self.mod_index(v, l)
    }

    fn stable_id(&self, v: usize, l: usize) -> usize {
        debug_assert!(l < self.n);
        v * (self.n - 1) + (l - 1)
    }

    /// Start vertex of the cosyzygy of M(v, l).
    fn shift_vertex(&self, v: usize, l: usize) -> usize {
        (v + l + self.m * self.n - self.n) % self.m
    }

    fn hull_target(&self, v: usize, l: usize) -> usize {
        self.mod_index(self.shift_vertex(v, l), self.n)
    }

    /// Injective hull embedding M(v, l) ↪ M(w, n), b_t ↦ e_{t + n - l}.
    fn hull_embedding(&self, v: usize, l: usize) -> ModMap {
        let src = &self.mods[self.mod_index(v, l)];
        let dst = &self.mods[self.hull_target(v, l)];
        let mut mm = ModMap::zero(&src.module, &dst.module);
        for t in 0..l {
            let (vert, i_src) = src.pos[t];
            let (vert2, i_dst) = dst.pos[t + self.n - l];
            debug_assert_eq!(vert, vert2);
            mm.mats[vert].set(i_dst, i_src, 1);
        }
        mm
    }

    /// Cokernel projection of the hull embedding, M(w, n) → M(w, n - l)
    /// (the cosyzygy), e_s ↦ c_s for s < n - l.
    fn hull_quotient(&self, v: usize, l: usize) -> ModMap {
        let hull = &self.mods[self.hull_target(v, l)];
        let target = &self.mods[self.mod_index(self.shift_vertex(v, l), self.n - l)];
        let mut mm = ModMap::zero(&hull.module, &target.module);
        for s in 0..self.n - l {
            let (vert, i_src) = hull.pos[s];
            let (vert2, i_dst) = target.pos[s];
            debug_assert_eq!(vert, vert2);
            mm.mats[vert].set(i_dst, i_src, 1);
        }
        mm
    }

    /// Coordinates of a module map in the hom basis of the pair.
    fn hom_coords(&self, mi: usize, mj: usize, map: &ModMap) -> Vec<u8> {
        let table = &self.hom[mi][mj];
        table
            .flat
            .solve(&map.flatten())
            .expect("module map must lie in the hom space")
    }

    /// Stable coordinates of a module map between non-projective uniserials.
    fn stable_coords(&self, mi: usize, mj: usize, map: &ModMap) -> Vec<u8> {
        let table = &self.hom[mi][mj];
        table.stable.project(&self.hom_coords(mi, mj, map))
    }

    /// Canonical module-map representative of a stable coordinate vector.
    fn stable_rep(&self, mi: usize, mj: usize, coords: &[u8]) -> ModMap {
        let table = &self.hom[mi][mj];
        let hcoords = table.stable.lift(coords);
        let mut mm = ModMap::zero(&self.mods[mi].module, &self.mods[mj].module);
        for (b, &c) in hcoords.iter().enumerate() {
            if c != 0 {
                mm.add_scaled(&table.basis[b], c);
            }
        }
        mm
    }

    /// Direct sum of uniserials with the per-part, per-vertex offsets.
    fn sum_module(&self, parts: &[usize]) -> (Module, Vec<Vec<usize>>) {
        let mut dims = vec![0usize; self.m];
        let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        for &pi in parts {
            offsets.push(dims.clone());
            for v in 0..self.m {
                dims[v] += self.mods[pi].module.dims[v];
            }
        }
        let mut module = Module::empty_shell(self.p, self.m, dims);
        for (k, &pi) in parts.iter().enumerate() {
            let part = &self.mods[pi].module;
            for v in 0..self.m {
                let w = (v + 1) % self.m;
                for i in 0..part.dims[w] {
                    for j in 0..part.dims[v] {
                        let val = part.act[v].get(i, j);
                        if val != 0 {
                            module.act[v].set(offsets[k][w] + i, offsets[k][v] + j, val);
                        }
                    }
                }
            }
        }
        (module, offsets)
    }

    /// Cone of a stable morphism: lift to the module category, push out
    /// along the injective hull of the source, decompose, strip projectives.
    pub fn cone(&self, tri: &TriStructure, f: &Mor) -> Result<Triangle> {
        let cat = &tri.cat;
        let p = self.p;
        let x_parts: Vec<usize> =
            f.src.summands().iter().map(|&i| self.stable_to_mod(i)).collect();
        let y_parts: Vec<usize> =
            f.dst.summands().iter().map(|&i| self.stable_to_mod(i)).collect();
        let (x_mod, x_off) = self.sum_module(&x_parts);
        let (y_mod, y_off) = self.sum_module(&y_parts);

        // Module-level representative of f, block by block.
        let mut f_mats: Vec<Mat> =
            (0..self.m).map(|v| Mat::zero(p, y_mod.dims[v], x_mod.dims[v])).collect();
        for s in 0..f.src.len() {
            for t in 0..f.dst.len() {
                let rep = self.stable_rep(x_parts[s], y_parts[t], f.block(cat, s, t));
                for v in 0..self.m {
                    for i in 0..rep.mats[v].rows() {
                        for j in 0..rep.mats[v].cols() {
                            let val = rep.mats[v].get(i, j);
                            if val != 0 {
                                f_mats[v].set(y_off[t][v] + i, x_off[s][v] + j, val);
                            }
                        }
                    }
                }
            }
        }

        // Injective hull of X and the cosyzygy quotient.
        let hull_parts: Vec<usize> = x_parts
            .iter()
            .map(|&pi| {
                let u = &self.mods[pi];
                self.hull_target(u.v, u.l)
            })
            .collect();
        let (i_mod, i_off) = self.sum_module(&hull_parts);
        let shift_parts: Vec<usize> = x_parts
            .iter()
            .map(|&pi| {
                let u = &self.mods[pi];
                self.mod_index(self.shift_vertex(u.v, u.l), self.n - u.l)
            })
            .collect();
        let (x1_mod, x1_off) = self.sum_module(&shift_parts);
        let mut emb_mats: Vec<Mat> =
            (0..self.m).map(|v| Mat::zero(p, i_mod.dims[v], x_mod.dims[v])).collect();
        let mut quo_mats: Vec<Mat> =
            (0..self.m).map(|v| Mat::zero(p, x1_mod.dims[v], i_mod.dims[v])).collect();
        for (s, &pi) in x_parts.iter().enumerate() {
            let u = &self.mods[pi];
            let e = self.hull_embedding(u.v, u.l);
            let q = self.hull_quotient(u.v, u.l);
            for v in 0..self.m {
                for i in 0..e.mats[v].rows() {
                    for j in 0..e.mats[v].cols() {
                        let val = e.mats[v].get(i, j);
                        if val != 0 {
                            emb_mats[v].set(i_off[s][v] + i, x_off[s][v] + j, val);
                        }
                    }
                }
                for i in 0..q.mats[v].rows() {
                    for j in 0..q.mats[v].cols() {
                        let val = q.mats[v].get(i, j);
                        if val != 0 {
                            quo_mats[v].set(x1_off[s][v] + i, i_off[s][v] + j, val);
                        }
                    }
                }
            }
        }

        // Pushout C = (I_X ⊕ Y) / im(ι, -f), vertex by vertex.
        let mut proj: Vec<Mat> = Vec::with_capacity(self.m);
        let mut sect: Vec<Mat> = Vec::with_capacity(self.m);
        let mut rel: Vec<Subspace> = Vec::with_capacity(self.m);
        for v in 0..self.m {
            let ambient = i_mod.dims[v] + y_mod.dims[v];
            let cols: Vec<Vec<u8>> = (0..x_mod.dims[v])
                .map(|j| {
                    let mut col = Vec::with_capacity(ambient);
                    col.extend(emb_mats[v].col(j));
                    col.extend(f_mats[v].col(j).iter().map(|&x| crate::gf::norm(-(x as i64), p)));
                    col
                })
                .collect();
            let sp = Subspace::span(p, ambient, &cols);
            proj.push(sp.proj_matrix());
            sect.push(sp.lift_matrix());
            rel.push(sp);
        }
        let c_dims: Vec<usize> = (0..self.m).map(|v| proj[v].rows()).collect();
        let mut c_mod = Module::empty_shell(p, self.m, c_dims);
        for v in 0..self.m {
            let w = (v + 1) % self.m;
            // block action of x on I ⊕ Y
            let big = |v: usize, w: usize| -> Mat {
                let mut mat = Mat::zero(
                    p,
                    i_mod.dims[w] + y_mod.dims[w],
                    i_mod.dims[v] + y_mod.dims[v],
                );
                for i in 0..i_mod.dims[w] {
                    for j in 0..i_mod.dims[v] {
                        mat.set(i, j, i_mod.act[v].get(i, j));
                    }
                }
                for i in 0..y_mod.dims[w] {
                    for j in 0..y_mod.dims[v] {
                        mat.set(i_mod.dims[w] + i, i_mod.dims[v] + j, y_mod.act[v].get(i, j));
                    }
                }
                mat
            };
            let bigv = big(v, w);
            // the relation subspace is act-stable; quotient action well defined
            for row in rel[v].basis_rows() {
                let img = bigv.mul_vec(&row);
                if !rel[w].contains(&img) {
                    return Err(Error::EngineBug("pushout relations not act-stable".into()));
                }
            }
            c_mod.act[v] = proj[w].mul(&bigv).mul(&sect[v]);
        }

        // g̃ : Y → C and h̃ : C → X[1].
        let g_mats: Vec<Mat> = (0..self.m)
            .map(|v| {
                let incl = Mat::from_fn(p, i_mod.dims[v] + y_mod.dims[v], y_mod.dims[v], |i, j| {
                    u8::from(i == i_mod.dims[v] + j)
                });
                proj[v].mul(&incl)
            })
            .collect();
        let h_mats: Vec<Mat> = (0..self.m)
            .map(|v| {
                let pi_i = Mat::from_fn(p, i_mod.dims[v], i_mod.dims[v] + y_mod.dims[v], |i, j| {
                    u8::from(i == j)
                });
                quo_mats[v].mul(&pi_i).mul(&sect[v])
            })
            .collect();
        // well-definedness of h̃ on the quotient
        for v in 0..self.m {
            let pi_i = Mat::from_fn(p, i_mod.dims[v], i_mod.dims[v] + y_mod.dims[v], |i, j| {
                u8::from(i == j)
            });
            for row in rel[v].basis_rows() {
                if quo_mats[v].mul_vec(&pi_i.mul_vec(&row)).iter().any(|&x| x != 0) {
                    return Err(Error::EngineBug("cone connecting map not well defined".into()));
                }
            }
        }

        // Decompose C into uniserial chains.
        let chains = jordan_chains(&c_mod, self.n)?;
        // order: non-projective chains sorted by stable id, projectives last
        let mut order: Vec<usize> = (0..chains.len()).collect();
        let chain_key = |ci: &usize| {
            let ch = &chains[*ci];
            if ch.len < self.n {
                (0usize, self.stable_id(ch.vertex, ch.len), *ci)
            } else {
                (1usize, ch.vertex, *ci)
            }
        };
        order.sort_by_key(chain_key);
        let ordered: Vec<&Chain> = order.iter().map(|&i| &chains[i]).collect();
        let d_parts: Vec<usize> =
            ordered.iter().map(|ch| self.mod_index(ch.vertex, ch.len)).collect();
        let (_d_mod, d_off) = self.sum_module(&d_parts);
        // θ: D → C per vertex, columns in sum_module order.
        let mut theta: Vec<Mat> =
            (0..self.m).map(|v| Mat::zero(p, c_mod.dims[v], c_mod.dims[v])).collect();
        for (k, ch) in ordered.iter().enumerate() {
            let part = &self.mods[d_parts[k]];
            for t in 0..ch.len {
                let (vert, idx) = part.pos[t];
                let col = d_off[k][vert] + idx;
                for (i, &val) in ch.vecs[t].iter().enumerate() {
                    theta[vert].set(i, col, val);
                }
            }
        }
        let theta_inv: Vec<Mat> = theta
            .iter()
            .map(|t| {
                t.inverse().ok_or_else(|| {
                    Error::EngineBug("chain decomposition is not a basis".into())
                })
            })
            .collect::<Result<_>>()?;

        // Non-projective part of C as a stable object.
        let nonproj: Vec<usize> = (0..ordered.len()).filter(|&k| ordered[k].len < self.n).collect();
        let c_obj = Obj::new(
            nonproj.iter().map(|&k| self.stable_id(ordered[k].vertex, ordered[k].len)).collect(),
        );
        // ordered[nonproj[idx]] corresponds to position idx of c_obj: the sort
        // above listed non-projective chains by ascending stable id already.

        // g : Y → C_obj
        let mut g = Mor::zero(cat, f.dst.clone(), c_obj.clone());
        for (t_pos, &k) in nonproj.iter().enumerate() {
            for s in 0..y_parts.len() {
                // component U_{y_s} → D_k of θ^{-1} ∘ g̃
                let mut comp = ModMap::zero(
                    &self.mods[y_parts[s]].module,
                    &self.mods[d_parts[k]].module,
                );
                for v in 0..self.m {
                    let full = theta_inv[v].mul(&g_mats[v]);
                    let src_part = &self.mods[y_parts[s]].module;
                    let dst_part = &self.mods[d_parts[k]].module;
                    comp.mats[v] = Mat::from_fn(p, dst_part.dims[v], src_part.dims[v], |i, j| {
                        full.get(d_off[k][v] + i, y_off[s][v] + j)
                    });
                }
                if !comp.is_module_map(
                    &self.mods[y_parts[s]].module,
                    &self.mods[d_parts[k]].module,
                ) {
                    return Err(Error::EngineBug("cone component is not a module map".into()));
                }
                let block = self.stable_coords(y_parts[s], d_parts[k], &comp);
                g.set_block(cat, s, t_pos, &block);
            }
        }

        // h : C_obj → X[1] (in the sorted shift object)
        let (x1_obj, x1_posmap) = tri.shift_obj_by(&f.src, 1);
        let mut h = Mor::zero(cat, c_obj.clone(), x1_obj);
        for (t_pos, &k) in nonproj.iter().enumerate() {
            for (s, &sp) in shift_parts.iter().enumerate() {
                let mut comp = ModMap::zero(
                    &self.mods[d_parts[k]].module,
                    &self.mods[sp].module,
                );
                for v in 0..self.m {
                    let full = h_mats[v].mul(&theta[v]);
                    let src_part = &self.mods[d_parts[k]].module;
                    let dst_part = &self.mods[sp].module;
                    comp.mats[v] = Mat::from_fn(p, dst_part.dims[v], src_part.dims[v], |i, j| {
                        full.get(x1_off[s][v] + i, d_off[k][v] + j)
                    });
                }
                if !comp.is_module_map(&self.mods[d_parts[k]].module, &self.mods[sp].module) {
                    return Err(Error::EngineBug("cone component is not a module map".into()));
                }
                let block = self.stable_coords(d_parts[k], sp, &comp);
                h.set_block(cat, t_pos, x1_posmap[s], &block);
            }
        }

        Ok(Triangle { a: f.src.clone(), b: f.dst.clone(), c: c_obj, f: f.clone(), g, h })
    }
}

#[derive(Debug)]
struct Chain {
    vertex: usize,
    len: usize,
    /// vecs[t] is the coordinate vector of x^t·generator inside
    /// V_{(vertex+t) % m}.
    vecs: Vec<Vec<u8>>,
}

/// Homogeneous Jordan chains of the (nilpotent, degree-one) arrow action:
/// the module decomposes as the direct sum of the uniserials spanned by the
/// chains.
fn jordan_chains(module: &Module, n: usize) -> Result<Vec<Chain>> {
    let p = module.p;
    let m = module.m;
    // K[v][k] = ker x^k on V_v, k = 0..=n
    let mut kernels: Vec<Vec<Subspace>> = Vec::with_capacity(m);
    for v in 0..m {
        let mut per_k = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let pw = module.pow_map(v, k);
            per_k.push(Subspace::span(p, module.dims[v], &pw.nullspace()));
        }
        if per_k[n].dim() != module.dims[v] {
            return Err(Error::EngineBug("arrow action is not nilpotent of the expected degree".into()));
        }
        kernels.push(per_k);
    }
    let mut chains: Vec<Chain> = Vec::new();
    for k in (1..=n).rev() {
        for v in 0..m {
            // Vectors already consumed at this vertex and depth: existing
            // chain vectors at vertex v lying in ker x^k.
            let mut consumed: Vec<Vec<u8>> = kernels[v][k - 1].basis_rows();
            for ch in &chains {
                for t in 0..ch.len {
                    if (ch.vertex + t) % m == v && kernels[v][k].contains(&ch.vecs[t]) {
                        consumed.push(ch.vecs[t].clone());
                    }
                }
            }
            let mut span = Subspace::span(p, module.dims[v], &consumed);
            for w in kernels[v][k].basis_rows() {
                if span.contains(&w) {
                    continue;
                }
                // new generator of depth exactly k
                let mut vecs = vec![w.clone()];
                let mut cur = w.clone();
                let mut vert = v;
                for _ in 1..k {
                    cur = module.act[vert].mul_vec(&cur);
                    vert = (vert + 1) % m;
                    vecs.push(cur.clone());
                }
                chains.push(Chain { vertex: v, len: k, vecs });
                consumed.push(w);
                span = Subspace::span(p, module.dims[v], &consumed);
            }
        }
    }
    let total: usize = chains.iter().map(|c| c.len).sum();
    if total != module.total_dim() {
        return Err(Error::EngineBug(format!(
            "chain decomposition covers {total} of {} dimensions",
            module.total_dim()
        )));
    }
    Ok(chains)
}

/// Generate the stable module category of the self-injective Nakayama
/// algebra with `m` vertices and radical length `n` over F_p, gated through
/// both validators.
pub fn generate_nakayama_stable(m: usize, n: usize, p: u8) -> Result<Substrate> {
    if m < 1 || n < 2 {
        return Err(Error::Format(format!("nakayama parameters out of range: m={m}, n={n}")));
    }
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::Format(format!("field order {p} is not prime")));
    }
    let mods: Vec<Uniserial> = (0..m)
        .flat_map(|v| (1..=n).map(move |l| (v, l)))
        .map(|(v, l)| uniserial(p, m, n, v, l))
        .collect();
    let n_mods = mods.len();
    let mut hom: Vec<Vec<HomTable>> = Vec::with_capacity(n_mods);
    for i in 0..n_mods {
        let mut row = Vec::with_capacity(n_mods);
        for j in 0..n_mods {
            let basis = hom_basis(&mods[i].module, &mods[j].module);
            let flat_len = basis.first().map_or_else(
                || {
                    (0..m)
                        .map(|v| mods[j].module.dims[v] * mods[i].module.dims[v])
                        .sum::<usize>()
                },
                |b| b.flatten().len(),
            );
            let flat = {
                let cols: Vec<Vec<u8>> = basis.iter().map(ModMap::flatten).collect();
                Mat::from_fn(p, flat_len, basis.len(), |r, c| cols[c][r])
            };
            // span of composites through each projective
            let mut through_proj: Vec<Vec<u8>> = Vec::new();
            for w in 0..m {
                let pk = w * n + (n - 1);
                let to_p = hom_basis(&mods[i].module, &mods[pk].module);
                let from_p = hom_basis(&mods[pk].module, &mods[j].module);
                for a in &to_p {
                    for b in &from_p {
                        let comp = b.compose(a);
                        if let Some(coords) = flat.solve(&comp.flatten()) {
                            through_proj.push(coords);
                        } else {
                            return Err(Error::EngineBug(
                                "projective composite outside hom space".into(),
                            ));
                        }
                    }
                }
            }
            let stable = Subspace::span(p, basis.len(), &through_proj);
            row.push(HomTable { basis, flat, stable });
        }
        hom.push(row);
    }
    let model = NakayamaModel { m, n, p, mods, hom };

    // Stable category tables.
    let n_stable = m * (n - 1);
    let stable_mods: Vec<usize> = (0..n_stable).map(|i| model.stable_to_mod(i)).collect();
    let hom_dim: Vec<Vec<usize>> = (0..n_stable)
        .map(|i| {
            (0..n_stable)
                .map(|j| model.hom[stable_mods[i]][stable_mods[j]].stable.codim())
                .collect()
        })
        .collect();
    let mut comp = vec![vec![vec![Vec::new(); n_stable]; n_stable]; n_stable];
    for i in 0..n_stable {
        for j in 0..n_stable {
            for k in 0..n_stable {
                let (mi, mj, mk) = (stable_mods[i], stable_mods[j], stable_mods[k]);
                let (dij, djk, dik) = (hom_dim[i][j], hom_dim[j][k], hom_dim[i][k]);
                let mut tensor = vec![0u8; djk * dij * dik];
                for g in 0..djk {
                    let mut gv = vec![0u8; djk];
                    gv[g] = 1;
                    let grep = model.stable_rep(mj, mk, &gv);
                    for f in 0..dij {
                        let mut fv = vec![0u8; dij];
                        fv[f] = 1;
                        let frep = model.stable_rep(mi, mj, &fv);
                        let out = model.stable_coords(mi, mk, &grep.compose(&frep));
                        let off = (g * dij + f) * dik;
                        tensor[off..off + dik].copy_from_slice(&out);
                    }
                }
                comp[i][j][k] = tensor;
            }
        }
    }
    let id_coeffs: Vec<Vec<u8>> = (0..n_stable)
        .map(|i| {
            let mi = stable_mods[i];
            model.stable_coords(mi, mi, &ModMap::identity(&model.mods[mi].module))
        })
        .collect();
    let cat = LinearCategory {
        p,
        indec_ids: (0..n_stable)
            .map(|i| {
                let u = &model.mods[stable_mods[i]];
                format!("M{}_{}", u.v, u.l)
            })
            .collect(),
        hom_dim,
        comp,
        id_coeffs,
    };
    let report = cat.validate();
    if !report.is_valid() {
        return Err(Error::Invalid(format!("generated category tables: {report}")));
    }

    // Shift tables: cosyzygy on objects, hull lifting on morphisms.
    let shift_obj: Vec<usize> = (0..n_stable)
        .map(|i| {
            let u = &model.mods[stable_mods[i]];
            model.stable_id(model.shift_vertex(u.v, u.l), n - u.l)
        })
        .collect();
    let mut shift_mor: Vec<Vec<Mat>> = Vec::with_capacity(n_stable);
    for i in 0..n_stable {
        let mut row = Vec::with_capacity(n_stable);
        for j in 0..n_stable {
            let (mi, mj) = (stable_mods[i], stable_mods[j]);
            let ui = &model.mods[mi];
            let uj = &model.mods[mj];
            let emb_i = model.hull_embedding(ui.v, ui.l);
            let emb_j = model.hull_embedding(uj.v, uj.l);
            let quo_j = model.hull_quotient(uj.v, uj.l);
            let (pi, pj) = (model.hull_target(ui.v, ui.l), model.hull_target(uj.v, uj.l));
            let (si, sj) = (shift_obj[i], shift_obj[j]);
            let (smi, smj) = (model.stable_to_mod(si), model.stable_to_mod(sj));
            let dim = cat.dim(i, j);
            let mut cols: Vec<Vec<u8>> = Vec::with_capacity(dim);
            for b in 0..dim {
                let mut bv = vec![0u8; dim];
                bv[b] = 1;
                let frep = model.stable_rep(mi, mj, &bv);
                // lift through the hulls: F ∘ emb_i = emb_j ∘ f
                let target = emb_j.compose(&frep);
                let pbasis = &model.hom[pi][pj].basis;
                let comp_cols: Vec<Vec<u8>> =
                    pbasis.iter().map(|bb| bb.compose(&emb_i).flatten()).collect();
                let flat_len = target.flatten().len();
                let sys = Mat::from_fn(p, flat_len, pbasis.len(), |r, c| comp_cols[c][r]);
                let sol = sys.solve(&target.flatten()).ok_or_else(|| {
                    Error::EngineBug("injective hull lift has no solution".into())
                })?;
                let mut big_f = ModMap::zero(&model.mods[pi].module, &model.mods[pj].module);
                for (bidx, &c) in sol.iter().enumerate() {
                    if c != 0 {
                        big_f.add_scaled(&pbasis[bidx], c);
                    }
                }
                // induced map on cokernels: Ω⁻¹f ∘ quo_i = quo_j ∘ F
                let sec_i = {
                    // plain linear section of quo_i: c_s ↦ e_s
                    let hull = &model.mods[pi];
                    let tgt = &model.mods[smi];
                    let mut mats: Vec<Mat> = (0..model.m)
                        .map(|v| Mat::zero(p, hull.module.dims[v], tgt.module.dims[v]))
                        .collect();
                    for s in 0..tgt.l {
                        let (vert, isrc) = tgt.pos[s];
                        let (vert2, idst) = hull.pos[s];
                        debug_assert_eq!(vert, vert2);
                        mats[vert].set(idst, isrc, 1);
                    }
                    mats
                };
                let shifted = ModMap {
                    mats: (0..model.m)
                        .map(|v| quo_j.mats[v].mul(&big_f.mats[v]).mul(&sec_i[v]))
                        .collect(),
                };
                if !shifted
                    .is_module_map(&model.mods[smi].module, &model.mods[smj].module)
                {
                    return Err(Error::EngineBug("cosyzygy of morphism not a module map".into()));
                }
                cols.push(model.stable_coords(smi, smj, &shifted));
            }
            let out_dim = cat.dim(si, sj);
            row.push(Mat::from_fn(p, out_dim, dim, |r, c| cols[c][r]));
        }
        shift_mor.push(row);
    }

    let tri = TriStructure { cat, shift_obj, shift_mor };
    let sub = Substrate::new(tri, ConeBackend::Nakayama(model));
    let report = sub.validate_triangulation();
    if !report.is_valid() {
        return Err(Error::Invalid(format!("generated triangulation: {report}")));
    }
    Ok(sub)
}
