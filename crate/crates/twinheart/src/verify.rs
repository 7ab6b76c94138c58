//! Independent brute-force oracles over quotient categories (epi/mono tests,
//! universal-property kernel/cokernel search, pullbacks/pushouts) and the
//! structural verdicts: preabelian, semi-abelian, integral, abelian.
//!
//! Everything here is decided by finite linear algebra and is deliberately
//! independent of the explicit constructions in `heart`, so the two sides can
//! cross-check each other.

use crate::conesearch::profile_solutions;
use crate::error::{Error, Result};
use crate::gf::Subspace;
use crate::heart::Heart;
use crate::lincat::{compose, LinearCategory, Mor, Obj};
use crate::quotient::{QMor, Quotient};
use crate::tricat::SubCat;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

#[derive(Clone, Debug)]
pub struct PropertyVerdict {
    pub name: String,
    pub verdict: Verdict,
    /// Counterexample / witness payload, or the budget that was exhausted.
    pub detail: String,
    /// Number of elementary checks performed.
    pub checks: u64,
}

impl PropertyVerdict {
    fn holds(name: &str, checks: u64) -> Self {
        PropertyVerdict { name: name.into(), verdict: Verdict::Holds, detail: String::new(), checks }
    }
    fn fails(name: &str, detail: String, checks: u64) -> Self {
        PropertyVerdict { name: name.into(), verdict: Verdict::Fails, detail, checks }
    }
    fn indeterminate(name: &str, detail: String, checks: u64) -> Self {
        PropertyVerdict { name: name.into(), verdict: Verdict::Indeterminate, detail, checks }
    }
    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "FAILS",
            Verdict::Indeterminate => "indeterminate",
        };
        write!(f, "{:<24} {:<13} ({} checks)", self.name, v, self.checks)?;
        if !self.detail.is_empty() {
            write!(f, " — {}", self.detail)?;
        }
        Ok(())
    }
}

/// Sweep bounds for the quantified checks. `max_summands` bounds the number
/// of indecomposable summands of the objects ranged over; the decided
/// properties are additive in the test object, so indecomposables already
/// witness failures, and larger bounds are a stress knob.
#[derive(Clone, Debug)]
pub struct SweepCfg {
    pub max_summands: usize,
    pub enum_cap: u64,
}

impl Default for SweepCfg {
    fn default() -> Self {
        SweepCfg { max_summands: 1, enum_cap: 1 << 16 }
    }
}

/// All nonzero-in-quotient bounded sums of allowed indecomposables,
/// plus the zero object.
pub fn sweep_objects(q: &Quotient, cfg: &SweepCfg) -> Vec<Obj> {
    let mut singles: Vec<usize> =
        q.allowed.0.iter().copied().filter(|&i| !q.ideal_class.contains(i)).collect();
    singles.sort_unstable();
    let mut out = vec![Obj::zero()];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..cfg.max_summands {
        let mut next = Vec::new();
        for base in &layer {
            let lo = base.last().copied().unwrap_or(0);
            for &i in singles.iter().filter(|&&i| i >= lo) {
                let mut s = base.clone();
                s.push(i);
                out.push(Obj::new(s.clone()));
                next.push(s);
            }
        }
        layer = next;
    }
    out
}

/// f̄ is an epimorphism iff −∘f̄ : qhom(B, t) → qhom(A, t) is injective for
/// every allowed indecomposable t (sufficient by additivity).
pub fn is_epi(q: &Quotient, cat: &LinearCategory, f: &QMor) -> bool {
    q.allowed.0.iter().all(|&t| {
        let tobj = Obj::indec(t);
        let m = q.qmap_matrix(cat, &f.rep.dst, &tobj, &f.rep.src, &tobj, |g| {
            compose(cat, g, &f.rep).unwrap()
        });
        m.nullspace().is_empty()
    })
}

/// Dual: f̄ is a monomorphism iff f̄∘− is injective on qhom(t, A) for all t.
pub fn is_mono(q: &Quotient, cat: &LinearCategory, f: &QMor) -> bool {
    q.allowed.0.iter().all(|&t| {
        let tobj = Obj::indec(t);
        let m = q.qmap_matrix(cat, &tobj, &f.rep.src, &tobj, &f.rep.dst, |g| {
            compose(cat, &f.rep, g).unwrap()
        });
        m.nullspace().is_empty()
    })
}

/// Universal-property check: k̄ : K → A is a kernel of f̄ : A → B iff
/// f̄∘k̄ = 0 and for every allowed indecomposable t the map
/// −∘k̄ : qhom(t,K) → qhom(t,A) is injective with image exactly
/// ker(f̄∘− : qhom(t,A) → qhom(t,B)).
pub fn is_kernel(q: &Quotient, cat: &LinearCategory, f: &QMor, k: &QMor) -> bool {
    if k.rep.dst != f.rep.src {
        return false;
    }
    if !q.is_zero_mor(cat, &compose(cat, &f.rep, &k.rep).unwrap()) {
        return false;
    }
    q.allowed.0.iter().all(|&t| {
        let tobj = Obj::indec(t);
        let mk = q.qmap_matrix(cat, &tobj, &k.rep.src, &tobj, &f.rep.src, |g| {
            compose(cat, &k.rep, g).unwrap()
        });
        let mf = q.qmap_matrix(cat, &tobj, &f.rep.src, &tobj, &f.rep.dst, |g| {
            compose(cat, &f.rep, g).unwrap()
        });
        mk.nullspace().is_empty()
            && mk.rank() == q.qdim(&tobj, &f.rep.src) - mf.rank()
    })
}

/// Dual universal-property check for a cokernel c̄ : B → C of f̄ : A → B.
pub fn is_cokernel(q: &Quotient, cat: &LinearCategory, f: &QMor, c: &QMor) -> bool {
    if c.rep.src != f.rep.dst {
        return false;
    }
    if !q.is_zero_mor(cat, &compose(cat, &c.rep, &f.rep).unwrap()) {
        return false;
    }
    q.allowed.0.iter().all(|&t| {
        let tobj = Obj::indec(t);
        let mc = q.qmap_matrix(cat, &c.rep.dst, &tobj, &f.rep.dst, &tobj, |g| {
            compose(cat, g, &c.rep).unwrap()
        });
        let mf = q.qmap_matrix(cat, &f.rep.dst, &tobj, &f.rep.src, &tobj, |g| {
            compose(cat, g, &f.rep).unwrap()
        });
        mc.nullspace().is_empty()
            && mc.rank() == q.qdim(&f.rep.dst, &tobj) - mf.rank()
    })
}

/// Candidate source objects for a kernel of f̄: any kernel object K must
/// satisfy dim qhom(t, K) = dim ker(f̄∘− on qhom(t, A)) for every allowed
/// indecomposable t, which pins the summand multiset down to the solutions
/// of an integer profile system.
fn kernel_candidates(q: &Quotient, cat: &LinearCategory, f: &QMor, cap: usize) -> Result<Vec<Obj>> {
    let tests: Vec<usize> = q.allowed.0.iter().copied().collect();
    let mut target = Vec::with_capacity(tests.len());
    for &t in &tests {
        let tobj = Obj::indec(t);
        let mf = q.qmap_matrix(cat, &tobj, &f.rep.src, &tobj, &f.rep.dst, |g| {
            compose(cat, &f.rep, g).unwrap()
        });
        target.push(q.qdim(&tobj, &f.rep.src) - mf.rank());
    }
    let cands: Vec<usize> =
        tests.iter().copied().filter(|&i| !q.ideal_class.contains(i)).collect();
    let cols: Vec<Vec<usize>> =
        cands.iter().map(|&i| tests.iter().map(|&t| q.qdim_pair(t, i)).collect()).collect();
    let sols = profile_solutions(&cols, &target, cap)?;
    Ok(sols
        .into_iter()
        .map(|mults| {
            let mut summands = Vec::new();
            for (pos, &m) in mults.iter().enumerate() {
                summands.extend(std::iter::repeat_n(cands[pos], m));
            }
            Obj::new(summands)
        })
        .collect())
}

fn cokernel_candidates(q: &Quotient, cat: &LinearCategory, f: &QMor, cap: usize) -> Result<Vec<Obj>> {
    let tests: Vec<usize> = q.allowed.0.iter().copied().collect();
    let mut target = Vec::with_capacity(tests.len());
    for &t in &tests {
        let tobj = Obj::indec(t);
        let mf = q.qmap_matrix(cat, &f.rep.dst, &tobj, &f.rep.src, &tobj, |g| {
            compose(cat, g, &f.rep).unwrap()
        });
        target.push(q.qdim(&f.rep.dst, &tobj) - mf.rank());
    }
    let cands: Vec<usize> =
        tests.iter().copied().filter(|&i| !q.ideal_class.contains(i)).collect();
    let cols: Vec<Vec<usize>> =
        cands.iter().map(|&i| tests.iter().map(|&t| q.qdim_pair(i, t)).collect()).collect();
    let sols = profile_solutions(&cols, &target, cap)?;
    Ok(sols
        .into_iter()
        .map(|mults| {
            let mut summands = Vec::new();
            for (pos, &m) in mults.iter().enumerate() {
                summands.extend(std::iter::repeat_n(cands[pos], m));
            }
            Obj::new(summands)
        })
        .collect())
}

/// Exhaustive kernel search: sweep the profile-constrained candidate objects
/// and all quotient morphisms into the source, returning the first morphism
/// that passes the universal-property check, or None if no kernel exists
/// within bounds.
pub fn oracle_kernel(
    q: &Quotient,
    cat: &LinearCategory,
    f: &QMor,
    cfg: &SweepCfg,
) -> Result<Option<QMor>> {
    for kobj in kernel_candidates(q, cat, f, 10_000)? {
        for k in q.enumerate_qmors(cat, &kobj, &f.rep.src, cfg.enum_cap)? {
            if is_kernel(q, cat, f, &k) {
                return Ok(Some(k));
            }
        }
    }
    Ok(None)
}

pub fn oracle_cokernel(
    q: &Quotient,
    cat: &LinearCategory,
    f: &QMor,
    cfg: &SweepCfg,
) -> Result<Option<QMor>> {
    for cobj in cokernel_candidates(q, cat, f, 10_000)? {
        for c in q.enumerate_qmors(cat, &f.rep.dst, &cobj, cfg.enum_cap)? {
            if is_cokernel(q, cat, f, &c) {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Pullback of γ : B → D and δ : C → D, built as the kernel of the
/// difference map (γ, −δ) : B ⊕ C → D. Returns (α : P → B, β : P → C)
/// with γ∘α = δ∘β, or None if the required kernel is not found.
pub fn pullback(
    q: &Quotient,
    cat: &LinearCategory,
    gamma: &QMor,
    delta: &QMor,
    cfg: &SweepCfg,
) -> Result<Option<(QMor, QMor)>> {
    assert_eq!(gamma.rep.dst, delta.rep.dst, "pullback legs must share a target");
    let b = &gamma.rep.src;
    let c = &delta.rep.src;
    let d = &gamma.rep.dst;
    let (e, bpos, cpos) = b.direct_sum(c);
    // difference map (γ, −δ) : B ⊕ C → D
    let mut diff = Mor::zero(cat, e.clone(), d.clone());
    for (pos, _) in b.summands().iter().enumerate() {
        for t in 0..d.len() {
            diff.set_block(cat, bpos[pos], t, gamma.rep.block(cat, pos, t));
        }
    }
    let ndelta = delta.rep.neg(cat);
    for (pos, _) in c.summands().iter().enumerate() {
        for t in 0..d.len() {
            diff.set_block(cat, cpos[pos], t, ndelta.block(cat, pos, t));
        }
    }
    let k = match oracle_kernel(q, cat, &q.qmor(cat, diff), cfg)? {
        Some(k) => k,
        None => return Ok(None),
    };
    // project the kernel morphism onto the two legs
    let p = k.rep.src.clone();
    let mut alpha = Mor::zero(cat, p.clone(), b.clone());
    for s in 0..p.len() {
        for (pos, _) in b.summands().iter().enumerate() {
            alpha.set_block(cat, s, pos, k.rep.block(cat, s, bpos[pos]));
        }
    }
    let mut beta = Mor::zero(cat, p.clone(), c.clone());
    for s in 0..p.len() {
        for (pos, _) in c.summands().iter().enumerate() {
            beta.set_block(cat, s, pos, k.rep.block(cat, s, cpos[pos]));
        }
    }
    Ok(Some((q.qmor(cat, alpha), q.qmor(cat, beta))))
}

/// Pushout of γ : D → B and δ : D → C as the cokernel of
/// (γ, −δ) : D → B ⊕ C. Returns (α : B → P, β : C → P).
pub fn pushout(
    q: &Quotient,
    cat: &LinearCategory,
    gamma: &QMor,
    delta: &QMor,
    cfg: &SweepCfg,
) -> Result<Option<(QMor, QMor)>> {
    assert_eq!(gamma.rep.src, delta.rep.src, "pushout legs must share a source");
    let b = &gamma.rep.dst;
    let c = &delta.rep.dst;
    let d = &gamma.rep.src;
    let (e, bpos, cpos) = b.direct_sum(c);
    let mut diff = Mor::zero(cat, d.clone(), e.clone());
    for s in 0..d.len() {
        for (pos, _) in b.summands().iter().enumerate() {
            diff.set_block(cat, s, bpos[pos], gamma.rep.block(cat, s, pos));
        }
    }
    let ndelta = delta.rep.neg(cat);
    for s in 0..d.len() {
        for (pos, _) in c.summands().iter().enumerate() {
            diff.set_block(cat, s, cpos[pos], ndelta.block(cat, s, pos));
        }
    }
    let q0 = match oracle_cokernel(q, cat, &q.qmor(cat, diff), cfg)? {
        Some(c) => c,
        None => return Ok(None),
    };
    let p = q0.rep.dst.clone();
    let mut alpha = Mor::zero(cat, b.clone(), p.clone());
    for (pos, _) in b.summands().iter().enumerate() {
        for t in 0..p.len() {
            alpha.set_block(cat, pos, t, q0.rep.block(cat, bpos[pos], t));
        }
    }
    let mut beta = Mor::zero(cat, c.clone(), p.clone());
    for (pos, _) in c.summands().iter().enumerate() {
        for t in 0..p.len() {
            beta.set_block(cat, pos, t, q0.rep.block(cat, cpos[pos], t));
        }
    }
    Ok(Some((q.qmor(cat, alpha), q.qmor(cat, beta))))
}

/// One canonical representative per (source, target, coset) triple for every
/// quotient morphism between sweep objects.
fn all_qmors(q: &Quotient, cat: &LinearCategory, cfg: &SweepCfg) -> Result<Vec<QMor>> {
    let objs = sweep_objects(q, cfg);
    let mut out = Vec::new();
    for x in &objs {
        for y in &objs {
            out.extend(q.enumerate_qmors(cat, x, y, cfg.enum_cap)?);
        }
    }
    Ok(out)
}

fn mor_tag(m: &QMor) -> String {
    format!("{:?}→{:?}:{:?}", m.rep.src.summands(), m.rep.dst.summands(), m.coset)
}

/// Preabelian: every quotient morphism between sweep objects has both a
/// kernel and a cokernel produced by the explicit constructions, each
/// passing the independent universal-property verification.
pub fn check_preabelian(heart: &Heart<'_>, cfg: &SweepCfg) -> PropertyVerdict {
    let name = "preabelian";
    let cat = heart.sub.cat();
    let q = &heart.qh;
    let mors = match all_qmors(q, cat, cfg) {
        Ok(m) => m,
        Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), 0),
    };
    let mut checks = 0;
    for f in &mors {
        checks += 2;
        let k = match heart.kernel(&f.rep) {
            Ok(k) => k,
            Err(Error::Indeterminate(w)) => {
                return PropertyVerdict::indeterminate(name, w, checks)
            }
            Err(e) => return PropertyVerdict::fails(name, e.to_string(), checks),
        };
        if !is_kernel(q, cat, f, &k) {
            return PropertyVerdict::fails(
                name,
                format!("constructed kernel of {} is not universal", mor_tag(f)),
                checks,
            );
        }
        let c = match heart.cokernel(&f.rep) {
            Ok(c) => c,
            Err(Error::Indeterminate(w)) => {
                return PropertyVerdict::indeterminate(name, w, checks)
            }
            Err(e) => return PropertyVerdict::fails(name, e.to_string(), checks),
        };
        if !is_cokernel(q, cat, f, &c) {
            return PropertyVerdict::fails(
                name,
                format!("constructed cokernel of {} is not universal", mor_tag(f)),
                checks,
            );
        }
    }
    PropertyVerdict::holds(name, checks)
}

/// All cokernel morphisms arising as cokernel(ḡ) over the sweep, one per
/// distinct (source, target, coset); dually all kernel morphisms.
pub fn cokernel_morphisms(heart: &Heart<'_>, cfg: &SweepCfg) -> Result<Vec<QMor>> {
    let cat = heart.sub.cat();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in all_qmors(&heart.qh, cat, cfg)? {
        let c = heart.cokernel(&g.rep)?;
        if seen.insert(mor_tag(&c)) {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn kernel_morphisms(heart: &Heart<'_>, cfg: &SweepCfg) -> Result<Vec<QMor>> {
    let cat = heart.sub.cat();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in all_qmors(&heart.qh, cat, cfg)? {
        let k = heart.kernel(&g.rep)?;
        if seen.insert(mor_tag(&k)) {
            out.push(k);
        }
    }
    Ok(out)
}

/// Left condition: for every δ in `deltas` and every γ into its target, the
/// pullback edge opposite δ is epi. With `deltas` = cokernel morphisms this
/// is left semi-abelian; with `deltas` = all epis it is left integral.
fn left_stability(
    name: &str,
    q: &Quotient,
    cat: &LinearCategory,
    deltas: &[QMor],
    cfg: &SweepCfg,
) -> PropertyVerdict {
    let objs = sweep_objects(q, cfg);
    let mut checks = 0;
    for delta in deltas {
        for b in &objs {
            let gammas = match q.enumerate_qmors(cat, b, &delta.rep.dst, cfg.enum_cap) {
                Ok(g) => g,
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            };
            for gamma in gammas {
                checks += 1;
                match pullback(q, cat, &gamma, delta, cfg) {
                    Ok(Some((alpha, _))) => {
                        if !is_epi(q, cat, &alpha) {
                            return PropertyVerdict::fails(
                                name,
                                format!(
                                    "pullback of δ={} along γ={} has non-epi edge {}",
                                    mor_tag(delta),
                                    mor_tag(&gamma),
                                    mor_tag(&alpha)
                                ),
                                checks,
                            );
                        }
                    }
                    Ok(None) => {
                        return PropertyVerdict::fails(
                            name,
                            format!(
                                "no pullback of δ={} along γ={}",
                                mor_tag(delta),
                                mor_tag(&gamma)
                            ),
                            checks,
                        )
                    }
                    Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
                }
            }
        }
    }
    PropertyVerdict::holds(name, checks)
}

/// Dual: pushouts of the given kernel morphisms (resp. monos) along
/// arbitrary morphisms have mono opposite edges.
fn right_stability(
    name: &str,
    q: &Quotient,
    cat: &LinearCategory,
    deltas: &[QMor],
    cfg: &SweepCfg,
) -> PropertyVerdict {
    let objs = sweep_objects(q, cfg);
    let mut checks = 0;
    for delta in deltas {
        for b in &objs {
            let gammas = match q.enumerate_qmors(cat, &delta.rep.src, b, cfg.enum_cap) {
                Ok(g) => g,
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            };
            for gamma in gammas {
                checks += 1;
                match pushout(q, cat, &gamma, delta, cfg) {
                    Ok(Some((alpha, _))) => {
                        // the edge parallel to δ is the one out of γ's target
                        if !is_mono(q, cat, &alpha) {
                            return PropertyVerdict::fails(
                                name,
                                format!(
                                    "pushout of δ={} along γ={} has non-mono edge {}",
                                    mor_tag(delta),
                                    mor_tag(&gamma),
                                    mor_tag(&alpha)
                                ),
                                checks,
                            );
                        }
                    }
                    Ok(None) => {
                        return PropertyVerdict::fails(
                            name,
                            format!(
                                "no pushout of δ={} along γ={}",
                                mor_tag(delta),
                                mor_tag(&gamma)
                            ),
                            checks,
                        )
                    }
                    Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
                }
            }
        }
    }
    PropertyVerdict::holds(name, checks)
}

pub(crate) fn combine(name: &str, left: PropertyVerdict, right: PropertyVerdict) -> PropertyVerdict {
    let checks = left.checks + right.checks;
    match (left.verdict, right.verdict) {
        (Verdict::Holds, Verdict::Holds) => PropertyVerdict::holds(name, checks),
        (Verdict::Fails, _) => PropertyVerdict::fails(name, format!("left: {}", left.detail), checks),
        (_, Verdict::Fails) => {
            PropertyVerdict::fails(name, format!("right: {}", right.detail), checks)
        }
        _ => PropertyVerdict::indeterminate(
            name,
            format!("left: {} / right: {}", left.detail, right.detail),
            checks,
        ),
    }
}

/// Semi-abelian: pullbacks of cokernel morphisms have epi opposite edges,
/// and pushouts of kernel morphisms have mono opposite edges. The δ lists
/// are supplied by the caller so corrupted data can be injected as a
/// negative control.
pub fn check_semi_abelian(
    q: &Quotient,
    cat: &LinearCategory,
    cokernel_mors: &[QMor],
    kernel_mors: &[QMor],
    cfg: &SweepCfg,
) -> PropertyVerdict {
    let left = left_stability("left semi-abelian", q, cat, cokernel_mors, cfg);
    let right = right_stability("right semi-abelian", q, cat, kernel_mors, cfg);
    combine("semi-abelian", left, right)
}

/// All epis (resp. monos) between sweep objects.
pub fn all_epis(q: &Quotient, cat: &LinearCategory, cfg: &SweepCfg) -> Result<Vec<QMor>> {
    Ok(all_qmors(q, cat, cfg)?.into_iter().filter(|f| is_epi(q, cat, f)).collect())
}

pub fn all_monos(q: &Quotient, cat: &LinearCategory, cfg: &SweepCfg) -> Result<Vec<QMor>> {
    Ok(all_qmors(q, cat, cfg)?.into_iter().filter(|f| is_mono(q, cat, f)).collect())
}

pub fn check_left_integral(q: &Quotient, cat: &LinearCategory, cfg: &SweepCfg) -> PropertyVerdict {
    match all_epis(q, cat, cfg) {
        Ok(epis) => left_stability("left integral", q, cat, &epis, cfg),
        Err(e) => PropertyVerdict::indeterminate("left integral", e.to_string(), 0),
    }
}

pub fn check_right_integral(q: &Quotient, cat: &LinearCategory, cfg: &SweepCfg) -> PropertyVerdict {
    match all_monos(q, cat, cfg) {
        Ok(monos) => right_stability("right integral", q, cat, &monos, cfg),
        Err(e) => PropertyVerdict::indeterminate("right integral", e.to_string(), 0),
    }
}

/// Integral: pullbacks of epis are epi and pushouts of monos are mono.
pub fn check_integral(q: &Quotient, cat: &LinearCategory, cfg: &SweepCfg) -> PropertyVerdict {
    combine(
        "integral",
        check_left_integral(q, cat, cfg),
        check_right_integral(q, cat, cfg),
    )
}

/// Abelian: every mono is the kernel of its cokernel, every epi is the
/// cokernel of its kernel — the canonical comparison morphism is invertible.
/// (Preabelianness is checked separately.)
pub fn check_abelian(q: &Quotient, cat: &LinearCategory, cfg: &SweepCfg) -> PropertyVerdict {
    let name = "abelian";
    let mors = match all_qmors(q, cat, cfg) {
        Ok(m) => m,
        Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), 0),
    };
    let mut checks = 0;
    for f in &mors {
        if is_mono(q, cat, f) {
            checks += 1;
            let c = match oracle_cokernel(q, cat, f, cfg) {
                Ok(Some(c)) => c,
                Ok(None) => {
                    return PropertyVerdict::fails(name, format!("no cokernel of {}", mor_tag(f)), checks)
                }
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            };
            let k = match oracle_kernel(q, cat, &c, cfg) {
                Ok(Some(k)) => k,
                Ok(None) => {
                    return PropertyVerdict::fails(name, format!("no kernel of {}", mor_tag(&c)), checks)
                }
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            };
            // factor f through k: solve k̄∘φ̄ = f̄, then require φ̄ invertible
            match comparison_iso(q, cat, &k, f) {
                Ok(true) => {}
                Ok(false) => {
                    return PropertyVerdict::fails(
                        name,
                        format!("mono {} is not the kernel of its cokernel", mor_tag(f)),
                        checks,
                    )
                }
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            }
        }
        if is_epi(q, cat, f) {
            checks += 1;
            let k = match oracle_kernel(q, cat, f, cfg) {
                Ok(Some(k)) => k,
                Ok(None) => {
                    return PropertyVerdict::fails(name, format!("no kernel of {}", mor_tag(f)), checks)
                }
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            };
            let c = match oracle_cokernel(q, cat, &k, cfg) {
                Ok(Some(c)) => c,
                Ok(None) => {
                    return PropertyVerdict::fails(name, format!("no cokernel of {}", mor_tag(&k)), checks)
                }
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            };
            match comparison_iso_epi(q, cat, &c, f) {
                Ok(true) => {}
                Ok(false) => {
                    return PropertyVerdict::fails(
                        name,
                        format!("epi {} is not the cokernel of its kernel", mor_tag(f)),
                        checks,
                    )
                }
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            }
        }
    }
    PropertyVerdict::holds(name, checks)
}

/// Solve k̄∘φ̄ = f̄ for φ̄ : A → K and decide whether φ̄ is invertible.
fn comparison_iso(q: &Quotient, cat: &LinearCategory, k: &QMor, f: &QMor) -> Result<bool> {
    let a = &f.rep.src;
    let kk = &k.rep.src;
    let m = q.qmap_matrix(cat, a, kk, a, &f.rep.dst, |phi| compose(cat, &k.rep, phi).unwrap());
    let phi = match m.solve(&f.coset) {
        Some(phi) => QMor { rep: q.lift(cat, a, kk, &phi), coset: phi },
        None => return Ok(false),
    };
    qmor_invertible(q, cat, &phi)
}

/// Solve φ̄∘c̄ = f̄ for φ̄ : C → B and decide whether φ̄ is invertible.
fn comparison_iso_epi(q: &Quotient, cat: &LinearCategory, c: &QMor, f: &QMor) -> Result<bool> {
    let cc = &c.rep.dst;
    let b = &f.rep.dst;
    let m = q.qmap_matrix(cat, cc, b, &f.rep.src, b, |phi| compose(cat, phi, &c.rep).unwrap());
    let phi = match m.solve(&f.coset) {
        Some(phi) => QMor { rep: q.lift(cat, cc, b, &phi), coset: phi },
        None => return Ok(false),
    };
    qmor_invertible(q, cat, &phi)
}

/// Decide invertibility of a fixed quotient morphism by solving linearly for
/// a simultaneous two-sided inverse.
pub fn qmor_invertible(q: &Quotient, cat: &LinearCategory, f: &QMor) -> Result<bool> {
    let x = &f.rep.src;
    let y = &f.rep.dst;
    if q.is_zero_obj(x) && q.is_zero_obj(y) {
        return Ok(true);
    }
    let right = q.qmap_matrix(cat, y, x, x, x, |g| compose(cat, g, &f.rep).unwrap());
    let left = q.qmap_matrix(cat, y, x, y, y, |g| compose(cat, &f.rep, g).unwrap());
    let sys = right.vcat(&left);
    let mut target = q.project(cat, &Mor::identity(cat, x));
    target.extend(q.project(cat, &Mor::identity(cat, y)));
    Ok(sys.solve(&target).is_some())
}

/// The ideal of morphisms B → C factoring through finite sums from `class`
/// (a subspace, since factorizations add up over direct sums).
pub fn factoring_subspace(
    cat: &LinearCategory,
    class: &SubCat,
    b: usize,
    c: usize,
) -> Subspace {
    let dim = cat.dim(b, c);
    let mut gens = Vec::new();
    for &x in &class.0 {
        for g in 0..cat.dim(x, c) {
            for f in 0..cat.dim(b, x) {
                gens.push(cat.comp_basis(b, x, c, f, g).to_vec());
            }
        }
    }
    Subspace::span(cat.p, dim, &gens)
}

/// Epi criterion from factorization: in every distinguished triangle
/// A → B → C with A, B in H, if the second map factors through the additive
/// hull of U then the first map is epi in H̄. Swept over all basis morphisms
/// between H-indecomposables.
pub fn check_epi_criterion(heart: &Heart<'_>, cfg: &SweepCfg) -> PropertyVerdict {
    let name = "epi factorization";
    let sub = heart.sub;
    let cat = sub.cat();
    let mut checks = 0;
    for &a in &heart.twin.h.0 {
        for &b in &heart.twin.h.0 {
            let (aobj, bobj) = (Obj::indec(a), Obj::indec(b));
            let mors = match crate::lincat::enumerate_morphisms(cat, &aobj, &bobj, cfg.enum_cap) {
                Ok(m) => m,
                Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
            };
            for f in mors {
                let t = match sub.cone(&f) {
                    Ok(t) => t,
                    Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), checks),
                };
                // does g : B → C factor through add(U)?
                let factors = t.c.summands().iter().enumerate().all(|(pos, &cid)| {
                    factoring_subspace(cat, heart.twin.u(), b, cid)
                        .contains(t.g.block(cat, 0, pos))
                });
                if !factors {
                    continue;
                }
                checks += 1;
                let fq = heart.qh.qmor(cat, f.clone());
                if !is_epi(&heart.qh, cat, &fq) {
                    return PropertyVerdict::fails(
                        name,
                        format!("{} not epi despite U-factoring cone map", mor_tag(&fq)),
                        checks,
                    );
                }
            }
        }
    }
    PropertyVerdict::holds(name, checks)
}

/// Structural form of cokernel morphisms: every cokernel morphism β : B → C
/// is, up to an isomorphism η of C in the quotient, induced by a morphism g
/// whose cone lies in add(S). Verified by sweeping g over hom(B, C).
pub fn check_cokernel_morphism_form(heart: &Heart<'_>, beta: &QMor, cfg: &SweepCfg) -> Result<bool> {
    let sub = heart.sub;
    let cat = sub.cat();
    let q = &heart.qh;
    let b = &beta.rep.src;
    let c = &beta.rep.dst;
    let s_class = heart.twin.s();
    for g in crate::lincat::enumerate_morphisms(cat, b, c, cfg.enum_cap)? {
        let cone = sub.cone(&g)?;
        if !s_class.contains_obj(&cone.c) {
            continue;
        }
        // solve η̄∘ḡ = β̄ for η : C → C, then require η̄ invertible
        let gq = q.qmor(cat, g.clone());
        let m = q.qmap_matrix(cat, c, c, b, c, |eta| compose(cat, eta, &g).unwrap());
        if let Some(eta) = m.solve(&beta.coset) {
            let etaq = QMor { rep: q.lift(cat, c, c, &eta), coset: eta };
            if qmor_invertible(q, cat, &etaq)? {
                let _ = gq;
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Epi/mono characterization: for every quotient morphism f̄ between sweep
/// objects of H̄, the three conditions "f̄ epi", "M_f ∈ U", "Z_{M_f} ∈ W"
/// agree, and dually "f̄ mono", "L_f ∈ T", "K_{L_f} ∈ W" agree.
pub fn check_epi_mono_characterization(heart: &Heart<'_>, cfg: &SweepCfg) -> PropertyVerdict {
    let name = "epi/mono criterion";
    let cat = heart.sub.cat();
    let q = &heart.qh;
    let mors = match all_qmors(q, cat, cfg) {
        Ok(m) => m,
        Err(e) => return PropertyVerdict::indeterminate(name, e.to_string(), 0),
    };
    let mut checks = 0;
    for f in &mors {
        checks += 2;
        let epi = is_epi(q, cat, f);
        let m_f = match heart.construct_m(&f.rep) {
            Ok(m) => m,
            Err(Error::Indeterminate(w)) => {
                return PropertyVerdict::indeterminate(name, w, checks)
            }
            Err(e) => return PropertyVerdict::fails(name, e.to_string(), checks),
        };
        let m_in_u = heart.twin.u().contains_obj(&m_f.dst);
        let z = match heart.construct_z(&m_f.dst) {
            Ok(z) => z,
            Err(Error::Indeterminate(w)) => {
                return PropertyVerdict::indeterminate(name, w, checks)
            }
            Err(e) => return PropertyVerdict::fails(name, e.to_string(), checks),
        };
        let z_in_w = heart.twin.w.contains_obj(&z.dst);
        if epi != m_in_u || epi != z_in_w {
            return PropertyVerdict::fails(
                name,
                format!(
                    "epi({})={} but M_f∈U={} Z_M∈W={}",
                    mor_tag(f),
                    epi,
                    m_in_u,
                    z_in_w
                ),
                checks,
            );
        }
        let mono = is_mono(q, cat, f);
        let l_f = match heart.construct_l(&f.rep) {
            Ok(l) => l,
            Err(Error::Indeterminate(w)) => {
                return PropertyVerdict::indeterminate(name, w, checks)
            }
            Err(e) => return PropertyVerdict::fails(name, e.to_string(), checks),
        };
        let l_in_t = heart.twin.t().contains_obj(&l_f.src);
        let k = match heart.construct_k(&l_f.src) {
            Ok(k) => k,
            Err(Error::Indeterminate(w)) => {
                return PropertyVerdict::indeterminate(name, w, checks)
            }
            Err(e) => return PropertyVerdict::fails(name, e.to_string(), checks),
        };
        let k_in_w = heart.twin.w.contains_obj(&k.src);
        if mono != l_in_t || mono != k_in_w {
            return PropertyVerdict::fails(
                name,
                format!(
                    "mono({})={} but L_f∈T={} K_L∈W={}",
                    mor_tag(f),
                    mono,
                    l_in_t,
                    k_in_w
                ),
                checks,
            );
        }
    }
    PropertyVerdict::holds(name, checks)
}

/// Adjunction laws for the reflection τ⁺ (C̄ → C̄⁺) and coreflection τ⁻
/// (C̄ → C̄⁻), checked over all indecomposables of C:
///   - −∘z̄_C : qhom(Z_C, Y) → qhom(C, Y) is bijective for all indec Y ∈ C⁺;
///   - z̄_X is invertible for X ∈ C⁺ and τ⁺(z̄_C) is invertible for all C
///     (whiskered triangle identities);
///   - Z_C ∈ W ⟺ C ∈ U (τ⁺ kills exactly U);
///   - the three dual statements for τ⁻ with k̄, C⁻, and T;
///   - τ± respect composition on all basis morphism pairs.
pub fn check_adjunction(heart: &Heart<'_>, cfg: &SweepCfg) -> PropertyVerdict {
    let name = "adjoint laws";
    let cat = heart.sub.cat();
    let q = &heart.qc;
    let twin = &heart.twin;
    let mut checks = 0;
    let n = cat.n_indec();
    macro_rules! try_v {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(Error::Indeterminate(w)) => {
                    return PropertyVerdict::indeterminate(name, w, checks)
                }
                Err(e) => return PropertyVerdict::fails(name, e.to_string(), checks),
            }
        };
    }
    for c in 0..n {
        let cobj = Obj::indec(c);
        let z = try_v!(heart.construct_z(&cobj));
        let k = try_v!(heart.construct_k(&cobj));
        // vanishing equivalences
        if twin.w.contains_obj(&z.dst) != twin.u().contains(c)
            || twin.w.contains_obj(&k.src) != twin.t().contains(c)
        {
            return PropertyVerdict::fails(
                name,
                format!("vanishing equivalence broken at indec {c}"),
                checks,
            );
        }
        // hom bijections against all indec test objects in C⁺ / C⁻
        for y in 0..n {
            checks += 1;
            let yobj = Obj::indec(y);
            if twin.c_plus.contains(y) {
                let m = q.qmap_matrix(cat, &z.dst, &yobj, &cobj, &yobj, |g| {
                    compose(cat, g, &z).unwrap()
                });
                if m.rank() != q.qdim(&z.dst, &yobj) || m.rank() != q.qdim(&cobj, &yobj) {
                    return PropertyVerdict::fails(
                        name,
                        format!("−∘z̄ not bijective at C={c}, Y={y}"),
                        checks,
                    );
                }
            }
            if twin.c_minus.contains(y) {
                let m = q.qmap_matrix(cat, &yobj, &k.src, &yobj, &cobj, |g| {
                    compose(cat, &k, g).unwrap()
                });
                if m.rank() != q.qdim(&yobj, &k.src) || m.rank() != q.qdim(&yobj, &cobj) {
                    return PropertyVerdict::fails(
                        name,
                        format!("k̄∘− not bijective at C={c}, X={y}"),
                        checks,
                    );
                }
            }
        }
        // whiskered triangle identities
        checks += 2;
        let tz = try_v!(heart.tau_plus_mor(&z));
        if !try_v!(qmor_invertible(q, cat, &tz)) {
            return PropertyVerdict::fails(name, format!("τ⁺(z̄) not invertible at {c}"), checks);
        }
        let tk = try_v!(heart.tau_minus_mor(&k));
        if !try_v!(qmor_invertible(q, cat, &tk)) {
            return PropertyVerdict::fails(name, format!("τ⁻(k̄) not invertible at {c}"), checks);
        }
        if twin.c_plus.contains(c) {
            let zq = q.qmor(cat, z.clone());
            if !try_v!(qmor_invertible(q, cat, &zq)) {
                return PropertyVerdict::fails(name, format!("unit not iso on C⁺ object {c}"), checks);
            }
        }
        if twin.c_minus.contains(c) {
            let kq = q.qmor(cat, k.clone());
            if !try_v!(qmor_invertible(q, cat, &kq)) {
                return PropertyVerdict::fails(name, format!("counit not iso on C⁻ object {c}"), checks);
            }
        }
    }
    // functoriality on composable morphism pairs between indecomposables
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ao, bo, co) = (Obj::indec(a), Obj::indec(b), Obj::indec(c));
                let fs = try_v!(crate::lincat::enumerate_morphisms(cat, &ao, &bo, cfg.enum_cap));
                for f in fs {
                    let gs =
                        try_v!(crate::lincat::enumerate_morphisms(cat, &bo, &co, cfg.enum_cap));
                    for g in gs {
                        checks += 1;
                        let gf = compose(cat, &g, &f).unwrap();
                        let t_gf = try_v!(heart.tau_plus_mor(&gf));
                        let t_g = try_v!(heart.tau_plus_mor(&g));
                        let t_f = try_v!(heart.tau_plus_mor(&f));
                        let comp = q.project(cat, &compose(cat, &t_g.rep, &t_f.rep).unwrap());
                        if comp != t_gf.coset {
                            return PropertyVerdict::fails(
                                name,
                                format!("τ⁺ not functorial on {a}→{b}→{c}"),
                                checks,
                            );
                        }
                        let t_gf = try_v!(heart.tau_minus_mor(&gf));
                        let t_g = try_v!(heart.tau_minus_mor(&g));
                        let t_f = try_v!(heart.tau_minus_mor(&f));
                        let comp = q.project(cat, &compose(cat, &t_g.rep, &t_f.rep).unwrap());
                        if comp != t_gf.coset {
                            return PropertyVerdict::fails(
                                name,
                                format!("τ⁻ not functorial on {a}→{b}→{c}"),
                                checks,
                            );
                        }
                    }
                }
            }
        }
    }
    PropertyVerdict::holds(name, checks)
}
