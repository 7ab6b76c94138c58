//! The explicit constructions in the quotient categories of a twin
//! cotorsion pair: coreflections K_C, reflections Z_C, the adjoint functors
//! τ±, the adjoints σ_U/σ_T, and the kernel/cokernel constructions via M_f
//! and L_f.

use crate::error::{Error, Result};
use crate::lincat::{compose, Mor, Obj};
use crate::pairs::Twin;
use crate::quotient::{QMor, Quotient};
use crate::tricat::{direct_sum_triangles, in_star, StarCfg, StarResult, SubCat, Substrate, Triangle};
use std::collections::BTreeMap;
use std::sync::Mutex;

/// Per-twin working context: the twin, its quotient categories, and
/// write-once caches for the object-level constructions.
pub struct Heart<'a> {
    pub sub: &'a Substrate,
    pub twin: Twin,
    pub cfg: StarCfg,
    /// Quotient C̄ = C/W over all objects.
    pub qc: Quotient,
    /// The heart H̄ = H/W (same ideal, objects restricted to H).
    pub qh: Quotient,
    k_cache: Mutex<BTreeMap<Obj, Mor>>,
    z_cache: Mutex<BTreeMap<Obj, Mor>>,
}

impl<'a> Heart<'a> {
    pub fn new(sub: &'a Substrate, twin: Twin, cfg: StarCfg) -> Self {
        let all = SubCat::full(sub.n_indec());
        let qc = Quotient::build(&sub.tri, all, twin.w.clone());
        let qh = Quotient::build(&sub.tri, twin.h.clone(), twin.w.clone());
        Heart {
            sub,
            twin,
            cfg,
            qc,
            qh,
            k_cache: Mutex::new(BTreeMap::new()),
            z_cache: Mutex::new(BTreeMap::new()),
        }
    }

    fn cat(&self) -> &crate::lincat::LinearCategory {
        self.sub.cat()
    }

    /// A triangle S[-1] → C → T → S for an arbitrary object (exists for all
    /// C because (S,T) is a cotorsion pair), assembled summandwise.
    pub fn st_witness(&self, c: &Obj) -> Result<Triangle> {
        let s_m1 = self.twin.s().shift(&self.sub.tri, -1);
        let t = self.twin.t();
        let parts: Vec<Triangle> = c
            .summands()
            .iter()
            .map(|&i| match in_star(self.sub, &s_m1, t, &Obj::indec(i), &self.cfg) {
                StarResult::Member(tr) => Ok(tr),
                StarResult::NotMember => Err(Error::EngineBug(format!(
                    "indecomposable {i} has no S[-1]∗T decomposition"
                ))),
                StarResult::Indeterminate(why) => Err(Error::Indeterminate(why)),
            })
            .collect::<Result<_>>()?;
        Ok(direct_sum_triangles(self.sub, &parts))
    }

    /// The coreflection K_C → C: decompose C over (S,T), decompose the
    /// T-part over (U,V), and take the shifted cone of the composite into
    /// V[1]. Returns k_C with source K_C.
    pub fn construct_k(&self, c: &Obj) -> Result<Mor> {
        if let Some(k) = self.k_cache.lock().unwrap().get(c) {
            return Ok(k.clone());
        }
        let cat = self.cat();
        let t1 = self.st_witness(c)?;
        let a = &t1.g; // C → T
        let t2 = self.twin.second.witness_for(self.sub, &t1.c)?;
        if !self.twin.w.contains_obj(&t2.a) {
            return Err(Error::EngineBug(
                "U-part of the T decomposition must lie in W".into(),
            ));
        }
        let b = &t2.g; // T → V[1]
        let ba = compose(cat, b, a)?;
        let t3 = self.sub.cone(&ba);
        let t3 = t3?;
        let rb2 = self.sub.rotate_back(&self.sub.rotate_back(&t3));
        // rb2 = (V, K_C, C): the middle map is k_C
        let k = rb2.g.clone();
        if !self.twin.c_minus.contains_obj(&k.src) {
            return Err(Error::EngineBug("K_C does not lie in C⁻".into()));
        }
        if self.twin.c_plus.contains_obj(c) && !self.twin.h.contains_obj(&k.src) {
            return Err(Error::EngineBug("K_C of a C⁺ object does not lie in H".into()));
        }
        self.k_cache.lock().unwrap().entry(c.clone()).or_insert_with(|| k.clone());
        Ok(k)
    }

    /// The reflection C → Z_C: decompose C over (U,V), decompose the U-part
    /// over (S,T), and take the cone of the composite out of S[-1].
    pub fn construct_z(&self, c: &Obj) -> Result<Mor> {
        if let Some(z) = self.z_cache.lock().unwrap().get(c) {
            return Ok(z.clone());
        }
        let cat = self.cat();
        let t1 = self.twin.second.witness_for(self.sub, c)?;
        let a = &t1.f; // U → C
        let t2 = self.st_witness(&t1.a)?;
        let b = &t2.f; // S[-1] → U
        let ab = compose(cat, a, b)?;
        let t3 = self.sub.cone(&ab);
        let t3 = t3?;
        // t3 = (S[-1], C, Z_C): the second map is z_C
        let z = t3.g.clone();
        if !self.twin.c_plus.contains_obj(&z.dst) {
            return Err(Error::EngineBug("Z_C does not lie in C⁺".into()));
        }
        if self.twin.c_minus.contains_obj(c) && !self.twin.h.contains_obj(&z.dst) {
            return Err(Error::EngineBug("Z_C of a C⁻ object does not lie in H".into()));
        }
        self.z_cache.lock().unwrap().entry(c.clone()).or_insert_with(|| z.clone());
        Ok(z)
    }

    /// τ⁺ on morphisms: the unique quotient morphism Z_A → Z_B with
    /// ψ̄ ∘ z̄_A = z̄_B ∘ f̄, solved through the reflection bijection.
    pub fn tau_plus_mor(&self, f: &Mor) -> Result<QMor> {
        let cat = self.cat();
        let za = self.construct_z(&f.src)?;
        let zb = self.construct_z(&f.dst)?;
        let target = self.qc.project(cat, &compose(cat, &zb, f)?);
        // matrix of −∘z̄_A : qhom(Z_A, Z_B) → qhom(A, Z_B)
        let m = self.qc.qmap_matrix(cat, &za.dst, &zb.dst, &f.src, &zb.dst, |psi| {
            compose(cat, psi, &za).unwrap()
        });
        let sol = m.solve(&target).ok_or_else(|| {
            Error::EngineBug("reflection transport has no solution".into())
        })?;
        if !m.nullspace().is_empty() {
            return Err(Error::EngineBug("reflection transport is not unique".into()));
        }
        Ok(QMor { rep: self.qc.lift(cat, &za.dst, &zb.dst, &sol), coset: sol })
    }

    /// τ⁻ on morphisms: the unique quotient morphism K_A → K_B with
    /// k̄_B ∘ φ̄ = f̄ ∘ k̄_A.
    pub fn tau_minus_mor(&self, f: &Mor) -> Result<QMor> {
        let cat = self.cat();
        let ka = self.construct_k(&f.src)?;
        let kb = self.construct_k(&f.dst)?;
        let target = self.qc.project(cat, &compose(cat, f, &ka)?);
        let m = self.qc.qmap_matrix(cat, &ka.src, &kb.src, &ka.src, &f.dst, |phi| {
            compose(cat, &kb, phi).unwrap()
        });
        let sol = m.solve(&target).ok_or_else(|| {
            Error::EngineBug("coreflection transport has no solution".into())
        })?;
        if !m.nullspace().is_empty() {
            return Err(Error::EngineBug("coreflection transport is not unique".into()));
        }
        Ok(QMor { rep: self.qc.lift(cat, &ka.src, &kb.src, &sol), coset: sol })
    }

    /// σ_U: the U-part of the (U,V)-decomposition triangle V → U_C → C.
    /// Returns u_C : U_C → C.
    pub fn sigma_u(&self, c: &Obj) -> Result<Mor> {
        let t = self.twin.second.witness_for(self.sub, c)?;
        Ok(t.f)
    }

    /// σ_T: the T-part of the (S,T)-decomposition triangle
    /// S[-1] → C → T_C → S. Returns t_C : C → T_C.
    pub fn sigma_t(&self, c: &Obj) -> Result<Mor> {
        let t = self.st_witness(c)?;
        Ok(t.g)
    }

    /// M_f for f : A → B with A ∈ C⁻: cone of f ∘ s_A where
    /// S_A[-1] → A → W_A is the C⁻ witness of A. Returns m_f : B → M_f.
    pub fn construct_m(&self, f: &Mor) -> Result<Mor> {
        let cat = self.cat();
        if !self.twin.c_minus.contains_obj(&f.src) {
            return Err(Error::Construction {
                step: "M_f".into(),
                detail: "source is not in C⁻".into(),
            });
        }
        let t1 = self.twin.cminus_witness(self.sub, &f.src)?;
        let s_a = &t1.f; // S_A[-1] → A
        let fs = compose(cat, f, s_a)?;
        let t2 = self.sub.cone(&fs)?;
        let m_f = t2.g.clone();
        // m̄_f ∘ f̄ = 0 and C⁻ stability when the target lies in C⁻
        if !self.qc.is_zero_mor(cat, &compose(cat, &m_f, f)?) {
            return Err(Error::EngineBug("m̄_f ∘ f̄ ≠ 0".into()));
        }
        if self.twin.c_minus.contains_obj(&f.dst)
            && !self.twin.c_minus.contains_obj(&m_f.dst)
        {
            return Err(Error::EngineBug("M_f left C⁻ although B ∈ C⁻".into()));
        }
        Ok(m_f)
    }

    /// L_f for f : A → B with B ∈ C⁺: shifted cone of v_B ∘ f where
    /// W_B → B → V_B[1] is the C⁺ witness of B. Returns ℓ_f : L_f → A.
    pub fn construct_l(&self, f: &Mor) -> Result<Mor> {
        let cat = self.cat();
        if !self.twin.c_plus.contains_obj(&f.dst) {
            return Err(Error::Construction {
                step: "L_f".into(),
                detail: "target is not in C⁺".into(),
            });
        }
        let t1 = self.twin.cplus_witness(self.sub, &f.dst)?;
        let v_b = &t1.g; // B → V_B[1]
        let vf = compose(cat, v_b, f)?;
        let t3 = self.sub.cone(&vf)?;
        let rb2 = self.sub.rotate_back(&self.sub.rotate_back(&t3));
        // rb2 = (V_B, L_f, A): the middle map is ℓ_f
        let ell = rb2.g.clone();
        if !self.qc.is_zero_mor(cat, &compose(cat, f, &ell)?) {
            return Err(Error::EngineBug("f̄ ∘ ℓ̄_f ≠ 0".into()));
        }
        if self.twin.c_plus.contains_obj(&f.src) && !self.twin.c_plus.contains_obj(&ell.src) {
            return Err(Error::EngineBug("L_f left C⁺ although A ∈ C⁺".into()));
        }
        Ok(ell)
    }

    /// Cokernel in H̄: z̄_{M_f} ∘ m̄_f : B → Z_{M_f}.
    pub fn cokernel(&self, f: &Mor) -> Result<QMor> {
        let cat = self.cat();
        if !self.twin.h.contains_obj(&f.src) || !self.twin.h.contains_obj(&f.dst) {
            return Err(Error::Construction {
                step: "cokernel".into(),
                detail: "endpoints are not in H".into(),
            });
        }
        let m_f = self.construct_m(f)?;
        let z = self.construct_z(&m_f.dst)?;
        if !self.twin.h.contains_obj(&z.dst) {
            return Err(Error::EngineBug("Z_{M_f} does not lie in H".into()));
        }
        let rep = compose(cat, &z, &m_f)?;
        Ok(self.qh.qmor(cat, rep))
    }

    /// Kernel in H̄: ℓ̄_f ∘ k̄_{L_f} : K_{L_f} → A.
    pub fn kernel(&self, f: &Mor) -> Result<QMor> {
        let cat = self.cat();
        if !self.twin.h.contains_obj(&f.src) || !self.twin.h.contains_obj(&f.dst) {
            return Err(Error::Construction {
                step: "kernel".into(),
                detail: "endpoints are not in H".into(),
            });
        }
        let ell = self.construct_l(f)?;
        let k = self.construct_k(&ell.src)?;
        if !self.twin.h.contains_obj(&k.src) {
            return Err(Error::EngineBug("K_{L_f} does not lie in H".into()));
        }
        let rep = compose(cat, &ell, &k)?;
        Ok(self.qh.qmor(cat, rep))
    }
}
