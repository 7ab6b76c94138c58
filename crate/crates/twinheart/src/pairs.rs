//! Cotorsion pairs, their enumeration, and twin cotorsion pairs with the
//! derived classes W, C⁻, C⁺, H.

use crate::error::{Error, Result};
use crate::lincat::Obj;
use crate::tricat::{
    direct_sum_triangles, in_star, right_perp, StarCfg, StarResult, SubCat, Substrate, Triangle,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default cap on the indecomposable count for pair enumeration.
pub const DEFAULT_PAIR_ENUM_CAP: usize = 16;

/// A cotorsion pair (U, V): Ext¹(U, V) = 0 and every object decomposes as
/// U ∗ V[1]. Decomposition witnesses are kept per indecomposable.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CotorsionPair {
    pub u: SubCat,
    pub v: SubCat,
    /// Per indecomposable C: a validated triangle U' → C → V'[1] → U'[1].
    pub witnesses: BTreeMap<usize, Triangle>,
}

impl CotorsionPair {
    /// Decomposition triangle of an arbitrary object, assembled summandwise.
    pub fn witness_for(&self, sub: &Substrate, c: &Obj) -> Result<Triangle> {
        let parts: Vec<Triangle> = c
            .summands()
            .iter()
            .map(|i| {
                self.witnesses.get(i).cloned().ok_or_else(|| Error::Construction {
                    step: "pair decomposition".into(),
                    detail: format!("no witness for indecomposable {i}"),
                })
            })
            .collect::<Result<_>>()?;
        Ok(direct_sum_triangles(sub, &parts))
    }
}

/// Verdict of a cotorsion-pair check.
#[derive(Clone, Debug)]
pub enum PairCheck {
    Pair(CotorsionPair),
    Not(String),
    Indeterminate(String),
}

impl PairCheck {
    pub fn is_pair(&self) -> bool {
        matches!(self, PairCheck::Pair(_))
    }
}

/// Decide whether (u, v) is a cotorsion pair: Ext-vanishing on all member
/// pairs plus a validated decomposition witness for every indecomposable.
pub fn is_cotorsion_pair(sub: &Substrate, u: &SubCat, v: &SubCat, cfg: &StarCfg) -> PairCheck {
    let tri = &sub.tri;
    for &i in &u.0 {
        for &j in &v.0 {
            if tri.ext1(&Obj::indec(i), &Obj::indec(j)) != 0 {
                return PairCheck::Not(format!("Ext¹({i},{j}) ≠ 0"));
            }
        }
    }
    let v1 = v.shift(tri, 1);
    let mut witnesses = BTreeMap::new();
    for c in 0..sub.n_indec() {
        match in_star(sub, u, &v1, &Obj::indec(c), cfg) {
            StarResult::Member(t) => {
                let report = sub.validate_triangle(&t);
                if !report.is_valid() {
                    return PairCheck::Indeterminate(format!(
                        "decomposition witness of {c} failed validation: {report}"
                    ));
                }
                witnesses.insert(c, t);
            }
            StarResult::NotMember => {
                return PairCheck::Not(format!("indecomposable {c} is not in U ∗ V[1]"));
            }
            StarResult::Indeterminate(why) => {
                return PairCheck::Indeterminate(format!("star search for {c}: {why}"));
            }
        }
    }
    PairCheck::Pair(CotorsionPair { u: u.clone(), v: v.clone(), witnesses })
}

/// Result of an enumeration sweep: validated pairs plus the candidates the
/// search could not settle (reported, never coerced to a verdict).
#[derive(Clone, Debug, Default)]
pub struct PairEnumeration {
    pub pairs: Vec<CotorsionPair>,
    pub indeterminate: Vec<(SubCat, SubCat, String)>,
}

/// Enumerate all cotorsion pairs: sweep summand-closed U (arbitrary subsets
/// of indecomposables), set V := (U[-1])⊥, and keep the validated pairs.
/// Complete because V is determined by U.
pub fn enumerate_cotorsion_pairs(
    sub: &Substrate,
    cfg: &StarCfg,
    count_cap: usize,
) -> Result<PairEnumeration> {
    let n = sub.n_indec();
    if n > count_cap {
        return Err(Error::CountCap { count: n, cap: count_cap });
    }
    let mut out = PairEnumeration::default();
    for mask in 0u64..(1 << n) {
        let u = SubCat::from_iter((0..n).filter(|i| mask >> i & 1 == 1));
        let v = right_perp(&sub.tri, &u.shift(&sub.tri, -1));
        match is_cotorsion_pair(sub, &u, &v, cfg) {
            PairCheck::Pair(p) => out.pairs.push(p),
            PairCheck::Not(_) => {}
            PairCheck::Indeterminate(why) => out.indeterminate.push((u, v, why)),
        }
    }
    Ok(out)
}

/// Brute-force double-subset enumeration, used as an independent oracle for
/// the sweep above on small substrates.
pub fn enumerate_pairs_bruteforce(
    sub: &Substrate,
    cfg: &StarCfg,
    count_cap: usize,
) -> Result<PairEnumeration> {
    let n = sub.n_indec();
    if n > count_cap {
        return Err(Error::CountCap { count: n, cap: count_cap });
    }
    let mut out = PairEnumeration::default();
    for umask in 0u64..(1 << n) {
        let u = SubCat::from_iter((0..n).filter(|i| umask >> i & 1 == 1));
        for vmask in 0u64..(1 << n) {
            let v = SubCat::from_iter((0..n).filter(|i| vmask >> i & 1 == 1));
            match is_cotorsion_pair(sub, &u, &v, cfg) {
                PairCheck::Pair(p) => out.pairs.push(p),
                PairCheck::Not(_) => {}
                PairCheck::Indeterminate(why) => out.indeterminate.push((u.clone(), v, why)),
            }
        }
    }
    Ok(out)
}

/// Classification flags of a single cotorsion pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFlags {
    pub t_structure: bool,
    pub co_t_structure: bool,
    pub rigid: bool,
    pub cluster_tilting: bool,
}

/// Decide the four classification flags by inclusion tests; the stated
/// equivalences (U[1]⊆U ⟺ V[-1]⊆V, U[-1]⊆U ⟺ V[1]⊆V, Ext¹(U,U)=0 ⟺ U⊆V)
/// are asserted along the way.
pub fn classify_pair(sub: &Substrate, pair: &CotorsionPair) -> Result<PairFlags> {
    let tri = &sub.tri;
    let u = &pair.u;
    let v = &pair.v;
    let t_structure = u.shift(tri, 1).is_subset(u);
    if t_structure != v.shift(tri, -1).is_subset(v) {
        return Err(Error::EngineBug("t-structure equivalences disagree".into()));
    }
    let co_t_structure = u.shift(tri, -1).is_subset(u);
    if co_t_structure != v.shift(tri, 1).is_subset(v) {
        return Err(Error::EngineBug("co-t-structure equivalences disagree".into()));
    }
    let rigid = u
        .0
        .iter()
        .all(|&i| u.0.iter().all(|&j| tri.ext1(&Obj::indec(i), &Obj::indec(j)) == 0));
    if rigid != u.is_subset(v) {
        return Err(Error::EngineBug("rigidity equivalence disagrees".into()));
    }
    let cluster_tilting = u == v;
    Ok(PairFlags { t_structure, co_t_structure, rigid, cluster_tilting })
}

/// A twin cotorsion pair (S,T),(U,V) with the derived classes and their
/// membership witnesses.
#[derive(Clone, Debug)]
pub struct Twin {
    pub first: CotorsionPair,
    pub second: CotorsionPair,
    pub w: SubCat,
    pub c_minus: SubCat,
    pub c_plus: SubCat,
    pub h: SubCat,
    /// Per C⁻ indecomposable: triangle S'[-1] → C → W' → S'.
    pub cm_witness: BTreeMap<usize, Triangle>,
    /// Per C⁺ indecomposable: triangle W' → C → V'[1] → W'[1].
    pub cp_witness: BTreeMap<usize, Triangle>,
}

impl Twin {
    pub fn s(&self) -> &SubCat {
        &self.first.u
    }
    pub fn t(&self) -> &SubCat {
        &self.first.v
    }
    pub fn u(&self) -> &SubCat {
        &self.second.u
    }
    pub fn v(&self) -> &SubCat {
        &self.second.v
    }

    pub fn is_single(&self) -> bool {
        self.first.u == self.second.u
    }

    /// C⁻-membership witness of an object, assembled summandwise.
    pub fn cminus_witness(&self, sub: &Substrate, c: &Obj) -> Result<Triangle> {
        let parts: Vec<Triangle> = c
            .summands()
            .iter()
            .map(|i| {
                self.cm_witness.get(i).cloned().ok_or_else(|| Error::Construction {
                    step: "C⁻ witness".into(),
                    detail: format!("indecomposable {i} is not in C⁻"),
                })
            })
            .collect::<Result<_>>()?;
        Ok(direct_sum_triangles(sub, &parts))
    }

    /// C⁺-membership witness of an object, assembled summandwise.
    pub fn cplus_witness(&self, sub: &Substrate, c: &Obj) -> Result<Triangle> {
        let parts: Vec<Triangle> = c
            .summands()
            .iter()
            .map(|i| {
                self.cp_witness.get(i).cloned().ok_or_else(|| Error::Construction {
                    step: "C⁺ witness".into(),
                    detail: format!("indecomposable {i} is not in C⁺"),
                })
            })
            .collect::<Result<_>>()?;
        Ok(direct_sum_triangles(sub, &parts))
    }
}

/// Form a twin cotorsion pair, checking the three equivalent link conditions
/// and computing the derived classes.
pub fn make_twin(
    sub: &Substrate,
    first: &CotorsionPair,
    second: &CotorsionPair,
    cfg: &StarCfg,
) -> Result<Twin> {
    let tri = &sub.tri;
    let (s, t) = (&first.u, &first.v);
    let (u, v) = (&second.u, &second.v);
    let ext_link = s
        .0
        .iter()
        .all(|&i| v.0.iter().all(|&j| tri.ext1(&Obj::indec(i), &Obj::indec(j)) == 0));
    let s_in_u = s.is_subset(u);
    let v_in_t = v.is_subset(t);
    if ext_link != s_in_u || s_in_u != v_in_t {
        return Err(Error::EngineBug(format!(
            "twin link conditions disagree: ext={ext_link}, S⊆U={s_in_u}, V⊆T={v_in_t}"
        )));
    }
    if !ext_link {
        return Err(Error::NotATwin("Ext¹(S,V) ≠ 0".into()));
    }
    let w = t.intersect(u);
    let s_m1 = s.shift(tri, -1);
    let v_p1 = v.shift(tri, 1);
    let mut cm_witness = BTreeMap::new();
    let mut cp_witness = BTreeMap::new();
    for c in 0..sub.n_indec() {
        match in_star(sub, &s_m1, &w, &Obj::indec(c), cfg) {
            StarResult::Member(tr) => {
                cm_witness.insert(c, tr);
            }
            StarResult::NotMember => {}
            StarResult::Indeterminate(why) => {
                return Err(Error::Indeterminate(format!("C⁻ membership of {c}: {why}")));
            }
        }
        match in_star(sub, &w, &v_p1, &Obj::indec(c), cfg) {
            StarResult::Member(tr) => {
                cp_witness.insert(c, tr);
            }
            StarResult::NotMember => {}
            StarResult::Indeterminate(why) => {
                return Err(Error::Indeterminate(format!("C⁺ membership of {c}: {why}")));
            }
        }
    }
    let c_minus = SubCat::from_iter(cm_witness.keys().copied());
    let c_plus = SubCat::from_iter(cp_witness.keys().copied());
    let h = c_minus.intersect(&c_plus);
    if !w.is_subset(&h) {
        return Err(Error::EngineBug("W is not contained in H".into()));
    }
    Ok(Twin {
        first: first.clone(),
        second: second.clone(),
        w,
        c_minus,
        c_plus,
        h,
        cm_witness,
        cp_witness,
    })
}

/// Class membership report for a single object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub in_w: bool,
    pub in_cminus: bool,
    pub in_cplus: bool,
    pub in_h: bool,
}

pub fn membership(twin: &Twin, c: &Obj) -> Membership {
    Membership {
        in_w: twin.w.contains_obj(c),
        in_cminus: twin.c_minus.contains_obj(c),
        in_cplus: twin.c_plus.contains_obj(c),
        in_h: twin.h.contains_obj(c),
    }
}

/// Condition (6.1): U ⊆ S ∗ T or T ⊆ U ∗ V, decided by star searches over
/// the indecomposables of U (resp. T).
pub fn condition_double(sub: &Substrate, twin: &Twin, cfg: &StarCfg) -> Result<bool> {
    let check = |m: &SubCat, n: &SubCat, members: &SubCat| -> Result<bool> {
        for &c in &members.0 {
            match in_star(sub, m, n, &Obj::indec(c), cfg) {
                StarResult::Member(_) => {}
                StarResult::NotMember => return Ok(false),
                StarResult::Indeterminate(why) => {
                    return Err(Error::Indeterminate(format!("condition (6.1) on {c}: {why}")))
                }
            }
        }
        Ok(true)
    };
    Ok(check(twin.s(), twin.t(), twin.u())? || check(twin.u(), twin.v(), twin.t())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nakayama::generate_nakayama_stable;
    use crate::pentagon::pentagon_substrate;

    #[test]
    fn trivial_pairs_always_exist() {
        let sub = generate_nakayama_stable(1, 4, 2).unwrap();
        let cfg = StarCfg::default();
        let all = SubCat::full(3);
        let none = SubCat::empty();
        assert!(is_cotorsion_pair(&sub, &all, &none, &cfg).is_pair());
        assert!(is_cotorsion_pair(&sub, &none, &all, &cfg).is_pair());
    }

    #[test]
    fn enumeration_finds_trivial_pairs() {
        let sub = generate_nakayama_stable(1, 4, 2).unwrap();
        let cfg = StarCfg::default();
        let out = enumerate_cotorsion_pairs(&sub, &cfg, 16).unwrap();
        assert!(out.indeterminate.is_empty());
        assert!(out.pairs.iter().any(|p| p.u == SubCat::full(3) && p.v == SubCat::empty()));
        assert!(out.pairs.iter().any(|p| p.u == SubCat::empty() && p.v == SubCat::full(3)));
        // maximality invariants hold for every enumerated pair
        for p in &out.pairs {
            assert_eq!(p.v, right_perp(&sub.tri, &p.u.shift(&sub.tri, -1)));
        }
    }

    #[test]
    fn pentagon_has_cluster_tilting_pairs() {
        let sub = pentagon_substrate(2).unwrap();
        let cfg = StarCfg::default();
        let out = enumerate_cotorsion_pairs(&sub, &cfg, 16).unwrap();
        let ct: Vec<&CotorsionPair> = out.pairs.iter().filter(|p| p.u == p.v).collect();
        assert!(!ct.is_empty(), "expected cluster tilting pairs on the pentagon");
        for p in ct {
            let flags = classify_pair(&sub, p).unwrap();
            assert!(flags.cluster_tilting);
            assert!(flags.rigid);
        }
    }

    #[test]
    fn count_cap_is_enforced() {
        let sub = generate_nakayama_stable(2, 3, 2).unwrap();
        match enumerate_cotorsion_pairs(&sub, &StarCfg::default(), 3) {
            Err(Error::CountCap { count, cap }) => {
                assert_eq!(count, 4);
                assert_eq!(cap, 3);
            }
            other => panic!("expected count cap error, got {other:?}"),
        }
    }

    #[test]
    fn single_twin_has_expected_classes() {
        // degenerate twin from a single pair: W = T ∩ U
        let sub = generate_nakayama_stable(1, 4, 2).unwrap();
        let cfg = StarCfg::default();
        let out = enumerate_cotorsion_pairs(&sub, &cfg, 16).unwrap();
        for p in &out.pairs {
            let twin = make_twin(&sub, p, p, &cfg).unwrap();
            assert!(twin.is_single());
            assert_eq!(twin.w, p.v.intersect(&p.u));
            assert!(twin.w.is_subset(&twin.h));
        }
    }

    #[test]
    fn t_equals_u_twin_covers_everything() {
        // whenever T = U, the classes collapse: W = T = U, C⁺ = C⁻ = C
        let sub = generate_nakayama_stable(1, 4, 2).unwrap();
        let cfg = StarCfg::default();
        let out = enumerate_cotorsion_pairs(&sub, &cfg, 16).unwrap();
        let mut found = 0;
        for p1 in &out.pairs {
            for p2 in &out.pairs {
                if p1.v != p2.u {
                    continue;
                }
                if let Ok(twin) = make_twin(&sub, p1, p2, &cfg) {
                    found += 1;
                    assert_eq!(twin.w, p1.v);
                    assert_eq!(twin.c_minus, SubCat::full(3));
                    assert_eq!(twin.c_plus, SubCat::full(3));
                }
            }
        }
        assert!(found > 0, "no T = U twin found");
    }

    #[test]
    fn mismatched_pairs_are_rejected() {
        let sub = pentagon_substrate(2).unwrap();
        let cfg = StarCfg::default();
        let out = enumerate_cotorsion_pairs(&sub, &cfg, 16).unwrap();
        let mut rejected = 0;
        for p1 in &out.pairs {
            for p2 in &out.pairs {
                if !p1.u.is_subset(&p2.u) {
                    match make_twin(&sub, p1, p2, &cfg) {
                        Err(Error::NotATwin(_)) => rejected += 1,
                        other => panic!("expected rejection, got {other:?}"),
                    }
                }
            }
        }
        assert!(rejected > 0);
    }
}
