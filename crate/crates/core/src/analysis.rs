//! Commutators, associators, and the subloops built from them: generated
//! subloops, center, nucleus, normal closures, quotients and the upper
//! central series.
//!
//! Triple loops get parameter-space fast paths for the center and the
//! nucleus, but only after [`certify_bracket_forms`] has matched the closed
//! forms against definitional evaluation and handed out a
//! [`FormCertificate`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loops::{Backend, Loop, TripleElement, TripleLoop};
use crate::mapping::InnerGenerators;
use crate::report::SuiteReport;
use crate::ring::RingSpec;
use crate::sampling::{SamplingPlan, Scan};

/// Largest Cayley order for which the nucleus is computed by brute force.
pub const NUCLEUS_CAYLEY_MAX: usize = 1024;

/// Largest `n³` for which all associators of a Cayley loop are enumerated.
pub const ASSOCIATOR_ENUMERATION_MAX: usize = 1 << 27;

/// Quotients check every element pair up to this many pairs.
pub const QUOTIENT_FULL_CHECK_MAX: usize = 1 << 28;
const QUOTIENT_SAMPLES: usize = 1 << 20;

/// `[x,y] = (yx)\(xy)`.
#[inline]
pub fn commutator(lp: &Loop, x: usize, y: usize) -> usize {
    lp.ldiv(lp.mul(y, x), lp.mul(x, y))
}

/// `[x,y,z] = (x(yz))\((xy)z)`.
#[inline]
pub fn associator(lp: &Loop, x: usize, y: usize, z: usize) -> usize {
    lp.ldiv(lp.mul(x, lp.mul(y, z)), lp.mul(lp.mul(x, y), z))
}

/// A set of element indices closed under the loop operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subloop {
    elements: Vec<usize>,
    member: Vec<bool>,
    normal: Option<bool>,
    how: String,
}

impl Subloop {
    /// Wraps a set already known to be a subloop of a loop of order `n`.
    pub fn from_elements(
        n: usize,
        elements: impl IntoIterator<Item = usize>,
        how: impl Into<String>,
    ) -> Subloop {
        let mut member = vec![false; n];
        for x in elements {
            member[x] = true;
        }
        member[0] = true;
        Subloop {
            elements: (0..n).filter(|&x| member[x]).collect(),
            member,
            normal: None,
            how: how.into(),
        }
    }

    pub fn trivial(n: usize) -> Subloop {
        Subloop::from_elements(n, [0], "trivial").with_normal(true, "trivial")
    }

    pub fn whole(n: usize) -> Subloop {
        Subloop::from_elements(n, 0..n, "whole loop").with_normal(true, "whole loop")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: a subloop contains the neutral element.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn parent_order(&self) -> usize {
        self.member.len()
    }

    pub fn normal(&self) -> Option<bool> {
        self.normal
    }

    /// How the set was obtained and, if applicable, how normality was settled.
    pub fn how(&self) -> &str {
        &self.how
    }

    pub fn with_normal(mut self, normal: bool, how: &str) -> Subloop {
        self.normal = Some(normal);
        self.how = format!("{}; normality: {how}", self.how);
        self
    }

    pub fn is_subset_of(&self, other: &Subloop) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Exhaustive check of closure under multiplication and both divisions.
    pub fn is_closed(&self, lp: &Loop) -> bool {
        self.elements.par_iter().all(|&x| {
            self.elements.iter().all(|&y| {
                self.contains(lp.mul(x, y))
                    && self.contains(lp.ldiv(x, y))
                    && self.contains(lp.rdiv(x, y))
            })
        })
    }

    /// Sorted indices, and decoded coordinates for triple loops, truncated
    /// after `limit` elements.
    pub fn describe(&self, lp: &Loop, limit: usize) -> String {
        let shown: Vec<String> = self
            .elements
            .iter()
            .take(limit)
            .map(|&x| match lp.as_triple() {
                Some(t) => format!("{x}={}", t.render(x)),
                None => x.to_string(),
            })
            .collect();
        let mut out = format!("{{{}", shown.join(", "));
        if self.len() > limit {
            out.push_str(&format!(", … {} more", self.len() - limit));
        }
        out.push('}');
        out
    }
}

/// Closes `elements[..]` under multiplication, assuming `elements[..done]`
/// is already closed. In a finite loop this also gives closure under both
/// divisions, because a translation restricted to a finite set closed under
/// multiplication is injective and hence onto.
fn close(lp: &Loop, elements: &mut Vec<usize>, member: &mut [bool], mut done: usize) {
    while done < elements.len() {
        let x = elements[done];
        for i in 0..=done {
            let y = elements[i];
            for p in [lp.mul(x, y), lp.mul(y, x)] {
                if !member[p] {
                    member[p] = true;
                    elements.push(p);
                }
            }
        }
        done += 1;
    }
}

/// `⟨S⟩`, the least subloop containing `gens`.
pub fn subloop_generated(lp: &Loop, gens: &[usize]) -> Subloop {
    extend_subloop(lp, &Subloop::trivial(lp.order()), gens)
}

/// `⟨H ∪ S⟩` for a subloop `H`.
pub fn extend_subloop(lp: &Loop, h: &Subloop, extra: &[usize]) -> Subloop {
    let mut member = h.member.clone();
    let mut elements = h.elements.clone();
    let done = elements.len();
    for &x in extra {
        if !member[x] {
            member[x] = true;
            elements.push(x);
        }
    }
    close(lp, &mut elements, &mut member, done);
    elements.sort_unstable();
    Subloop {
        elements,
        member,
        normal: None,
        how: "generated".into(),
    }
}

/// Proof that the closed forms of a triple loop's brackets and inner
/// mappings match definitional evaluation. Only [`certify_bracket_forms`]
/// creates one.
#[derive(Clone, Debug)]
pub struct FormCertificate {
    spec: RingSpec,
}

impl FormCertificate {
    pub fn applies_to(&self, lp: &Loop) -> bool {
        lp.as_triple().is_some_and(|t| t.spec() == &self.spec)
    }
}

/// `p·q·r` for `p, q, r ∈ X₁`, as an `X₃` index.
#[inline]
fn t3(t: &TripleLoop, p: usize, q: usize, r: usize) -> usize {
    t.prod21(t.prod11(p, q), r)
}

#[inline]
fn twice2(t: &TripleLoop, v: usize) -> usize {
    t.add2(v, v)
}

fn el(t: &TripleLoop, a: usize, b: usize, c: usize) -> usize {
    t.encode(TripleElement { a, b, c })
}

/// The closed forms, one function per family, on flat indices.
mod forms {
    use super::*;

    pub fn commutator(t: &TripleLoop, x: usize, y: usize) -> usize {
        let (p, q) = (t.decode(x), t.decode(y));
        el(
            t,
            0,
            twice2(t, t.prod11(p.a, q.a)),
            t.sub3(t.prod21(p.b, q.a), t.prod21(q.b, p.a)),
        )
    }

    pub fn iterated(t: &TripleLoop, x: usize, y: usize, z: usize) -> usize {
        let v = t3(t, t.decode(x).a, t.decode(y).a, t.decode(z).a);
        el(t, 0, 0, t.add3(v, v))
    }

    pub fn associator(t: &TripleLoop, x: usize, y: usize, z: usize) -> usize {
        el(t, 0, 0, t3(t, t.decode(x).a, t.decode(y).a, t.decode(z).a))
    }

    /// `x L(y,z) = x R(y,z) = (a, b, c + aa'a'')`.
    pub fn inner_lr(t: &TripleLoop, x: usize, y: usize, z: usize) -> usize {
        let p = t.decode(x);
        let v = t3(t, p.a, t.decode(y).a, t.decode(z).a);
        el(t, p.a, p.b, t.add3(p.c, v))
    }

    /// `x T(y) = (a, b + 2aa', c − ab' + ba')`. Since `ab' = b'a` for
    /// `a ∈ X₁, b' ∈ X₂`, this is `c + ba' − b'a`, which is what
    /// `y\(xy)` gives.
    pub fn inner_t(t: &TripleLoop, x: usize, y: usize) -> usize {
        let q = t.decode(y);
        t.s_map(q.a, t.neg2(q.b), x)
    }

    /// The variant `(a, b + 2aa', c + ab' + ba')`, which differs from
    /// `inner_t` by `2ab'`.
    pub fn inner_t_plus(t: &TripleLoop, x: usize, y: usize) -> usize {
        let q = t.decode(y);
        t.s_map(q.a, q.b, x)
    }
}

/// First pair `(x, y)` in index order where `xT(y)` differs from
/// `(a, b + 2aa', c + ab' + ba')`, if any.
pub fn t_plus_sign_counterexample(lp: &Loop) -> Option<(usize, usize)> {
    let t = lp.as_triple()?;
    let n = t.order();
    (0..n).find_map(|y| {
        (0..n)
            .find(|&x| lp.ldiv(y, lp.mul(x, y)) != forms::inner_t_plus(t, x, y))
            .map(|x| (x, y))
    })
}

fn form_predicates<'a>(lp: &'a Loop, t: &'a TripleLoop) -> Vec<Box<crate::sampling::Pred<'a>>> {
    vec![
        Box::new(move |v: &[usize]| {
            Some(commutator(lp, v[0], v[1]) == forms::commutator(t, v[0], v[1]))
        }),
        Box::new(move |v: &[usize]| {
            let c = commutator(lp, commutator(lp, v[0], v[1]), v[2]);
            Some(c == forms::iterated(t, v[0], v[1], v[2]))
        }),
        Box::new(move |v: &[usize]| {
            Some(associator(lp, v[0], v[1], v[2]) == forms::associator(t, v[0], v[1], v[2]))
        }),
        Box::new(move |v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let l = lp.ldiv(lp.mul(z, y), lp.mul(z, lp.mul(y, x)));
            let r = lp.rdiv(lp.mul(lp.mul(x, y), z), lp.mul(y, z));
            let f = forms::inner_lr(t, x, y, z);
            Some(l == f && r == f)
        }),
        Box::new(move |v: &[usize]| {
            Some(lp.ldiv(v[1], lp.mul(v[0], v[1])) == forms::inner_t(t, v[0], v[1]))
        }),
    ]
}

const FORM_NAMES: [&str; 5] = [
    "commutator",
    "iterated_commutator",
    "associator",
    "inner_lr",
    "inner_t",
];

/// Matches the five closed-form families against definitional evaluation:
/// exhaustively over all `(a, a', a'')` with zero `b, c` components, and on
/// seeded random full triples (`plan.samples`, default 10⁶).
pub fn certify_bracket_forms(
    lp: &Loop,
    plan: &SamplingPlan,
) -> Result<(SuiteReport, Option<FormCertificate>)> {
    let t = lp
        .as_triple()
        .ok_or_else(|| Error::Refused("closed forms apply to triple loops only".into()))?;
    let preds = form_predicates(lp, t);
    let pred_refs: Vec<&crate::sampling::Pred<'_>> = preds.iter().map(|b| b.as_ref()).collect();
    let mut report = SuiteReport::new("bracket-forms");

    let n1 = t.sizes().0;
    let lift = |v: &[usize]| -> Vec<usize> { v.iter().map(|&a| el(t, a, 0, 0)).collect() };
    let lifted: Vec<Box<crate::sampling::Pred<'_>>> = pred_refs
        .iter()
        .map(|p| {
            let p = *p;
            Box::new(move |v: &[usize]| p(&lift(v))) as Box<crate::sampling::Pred<'_>>
        })
        .collect();
    let lifted_refs: Vec<&crate::sampling::Pred<'_>> = lifted.iter().map(|b| b.as_ref()).collect();
    let a_names: Vec<String> = FORM_NAMES.iter().map(|n| format!("{n}.a_space")).collect();
    let a_names: Vec<&str> = a_names.iter().map(String::as_str).collect();
    let mut items = Scan::exhaustive(n1, 3).run(&a_names, &lifted_refs);
    for item in &mut items {
        for w in &mut item.witnesses {
            *w = lift(w);
        }
    }

    let samples = plan.samples.unwrap_or(SamplingPlan::default_samples(3));
    let r_names: Vec<String> = FORM_NAMES.iter().map(|n| format!("{n}.sampled")).collect();
    let r_names: Vec<&str> = r_names.iter().map(String::as_str).collect();
    let sampled = Scan::sampled(lp.order(), 3, samples, plan.seed).run(&r_names, &pred_refs);
    for (a, s) in items.into_iter().zip(sampled) {
        report.push(a);
        report.push(s);
    }
    let cert = report.passed().then(|| FormCertificate {
        spec: t.spec().clone(),
    });
    Ok((report, cert))
}

fn certified<'a>(lp: &'a Loop, cert: Option<&FormCertificate>) -> Option<&'a TripleLoop> {
    match cert {
        Some(c) if c.applies_to(lp) => lp.as_triple(),
        _ => None,
    }
}

/// Does `x` associate with everything in all three positions?
fn associates_with_all<M: Fn(usize, usize) -> usize + Sync>(n: usize, m: M, x: usize) -> bool {
    (0..n).into_par_iter().all(|y| {
        let xy = m(x, y);
        let yx = m(y, x);
        (0..n).all(|z| {
            let yz = m(y, z);
            m(xy, z) == m(x, yz) && m(yx, z) == m(y, m(x, z)) && m(yz, x) == m(y, m(z, x))
        })
    })
}

fn associates(lp: &Loop, x: usize) -> bool {
    let n = lp.order();
    match lp.backend() {
        Backend::Cayley(c) => associates_with_all(n, |a, b| c.mul(a, b), x),
        Backend::Triple(t) => associates_with_all(n, |a, b| t.mul(a, b), x),
    }
}

/// `a ∈ X₁` with `aa'a'' = a'aa'' = a'a''a = 0` for all `a', a''`.
fn nuclear_a(t: &TripleLoop) -> Vec<bool> {
    let n1 = t.sizes().0;
    (0..n1)
        .into_par_iter()
        .map(|a| {
            (0..n1).all(|p| {
                (0..n1).all(|q| t3(t, a, p, q) == 0 && t3(t, p, a, q) == 0 && t3(t, p, q, a) == 0)
            })
        })
        .collect()
}

/// `Z(Q)`: a commutant pass, then associativity checks on the survivors.
///
/// The second phase uses the certified associator form on triple loops. On
/// other loops a survivor is skipped when it already lies in the subloop
/// generated by confirmed central elements, which is exact because the
/// center is a subloop.
pub fn center(lp: &Loop, cert: Option<&FormCertificate>) -> Subloop {
    let n = lp.order();
    let commutant: Vec<usize> = (0..n)
        .into_par_iter()
        .filter(|&x| (0..n).all(|y| lp.mul(x, y) == lp.mul(y, x)))
        .collect();
    if let Some(t) = certified(lp, cert) {
        let ok = nuclear_a(t);
        let z = commutant.into_iter().filter(|&x| ok[t.decode(x).a]);
        return Subloop::from_elements(n, z, "center via certified associator form")
            .with_normal(true, "center");
    }
    let mut span = Subloop::trivial(n);
    for x in commutant {
        if !span.contains(x) && associates(lp, x) {
            span = extend_subloop(lp, &span, &[x]);
        }
    }
    Subloop {
        how: "center by commutant and associator filter".into(),
        ..span
    }
    .with_normal(true, "center")
}

/// `N(Q)`. Brute force for Cayley loops up to [`NUCLEUS_CAYLEY_MAX`]; triple
/// loops need a form certificate.
pub fn nucleus(lp: &Loop, cert: Option<&FormCertificate>) -> Result<Subloop> {
    let n = lp.order();
    if let Some(t) = certified(lp, cert) {
        let ok = nuclear_a(t);
        let els = (0..n).filter(|&x| ok[t.decode(x).a]);
        return Ok(Subloop::from_elements(
            n,
            els,
            "nucleus via certified associator form",
        ));
    }
    if lp.as_triple().is_some() {
        return Err(Error::Refused(
            "nucleus of a triple loop needs certified bracket forms".into(),
        ));
    }
    if n > NUCLEUS_CAYLEY_MAX {
        return Err(Error::Refused(format!(
            "nucleus by brute force is limited to order {NUCLEUS_CAYLEY_MAX}, got {n}"
        )));
    }
    let mut span = Subloop::trivial(n);
    for x in 1..n {
        if !span.contains(x) && associates(lp, x) {
            span = extend_subloop(lp, &span, &[x]);
        }
    }
    Ok(Subloop {
        how: "nucleus by exhaustive associator filter".into(),
        ..span
    })
}

/// Least normal subloop containing `seeds`: alternates subloop closure with
/// images under every inner generator until nothing new appears.
pub fn normal_closure(lp: &Loop, seeds: &[usize], gens: &InnerGenerators) -> Subloop {
    let mut h = subloop_generated(lp, seeds);
    loop {
        let mut fresh = vec![false; lp.order()];
        let mut new = Vec::new();
        for &x in h.elements() {
            for g in 0..gens.len() {
                let y = gens.image(lp, g, x);
                if !h.contains(y) && !fresh[y] {
                    fresh[y] = true;
                    new.push(y);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        h = extend_subloop(lp, &h, &new);
    }
    Subloop {
        how: "normal closure".into(),
        ..h
    }
    .with_normal(true, "closed under inner generators")
}

fn distinct_brackets(
    lp: &Loop,
    cert: Option<&FormCertificate>,
    commutators: bool,
) -> Result<Vec<usize>> {
    let n = lp.order();
    let mut seen = vec![false; n];
    if let Some(t) = certified(lp, cert) {
        let (n1, n2, _) = t.sizes();
        for a in 0..n1 {
            for a2 in 0..n1 {
                for a3 in 0..n1 {
                    seen[forms::associator(t, el(t, a, 0, 0), el(t, a2, 0, 0), el(t, a3, 0, 0))] =
                        true;
                }
                if commutators {
                    for b in 0..n2 {
                        for b2 in 0..n2 {
                            seen[forms::commutator(t, el(t, a, b, 0), el(t, a2, b2, 0))] = true;
                        }
                    }
                }
            }
        }
    } else if lp.as_triple().is_some() {
        return Err(Error::Refused(
            "enumerating brackets of a triple loop needs certified bracket forms".into(),
        ));
    } else {
        if n.saturating_mul(n).saturating_mul(n) > ASSOCIATOR_ENUMERATION_MAX {
            return Err(Error::Refused(format!(
                "enumerating all associators at order {n} exceeds the budget"
            )));
        }
        let found: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut local = vec![false; n];
                for y in 0..n {
                    if commutators {
                        local[commutator(lp, x, y)] = true;
                    }
                    for z in 0..n {
                        local[associator(lp, x, y, z)] = true;
                    }
                }
                (0..n).filter(|&v| local[v]).collect()
            })
            .collect();
        for v in found.into_iter().flatten() {
            seen[v] = true;
        }
    }
    Ok((0..n).filter(|&v| seen[v]).collect())
}

/// `Q'`, the least normal subloop containing all commutators and associators.
pub fn derived_subloop(
    lp: &Loop,
    gens: &InnerGenerators,
    cert: Option<&FormCertificate>,
) -> Result<Subloop> {
    let seeds = distinct_brackets(lp, cert, true)?;
    let h = normal_closure(lp, &seeds, gens);
    Ok(Subloop {
        how: format!("derived subloop; {}", h.how),
        ..h
    })
}

/// `A(Q)`, the least normal subloop containing all associators.
pub fn associator_subloop(
    lp: &Loop,
    gens: &InnerGenerators,
    cert: Option<&FormCertificate>,
) -> Result<Subloop> {
    let seeds = distinct_brackets(lp, cert, false)?;
    let h = normal_closure(lp, &seeds, gens);
    Ok(Subloop {
        how: format!("associator subloop; {}", h.how),
        ..h
    })
}

/// `Hφ ⊆ H` for every inner generator `φ`. For a finite `H` and a
/// permutation `φ` this is `Hφ = H`.
pub fn is_normal(lp: &Loop, h: &Subloop, gens: &InnerGenerators) -> bool {
    h.elements()
        .par_iter()
        .all(|&x| (0..gens.len()).all(|g| h.contains(gens.image(lp, g, x))))
}

/// Settles normality of `h` against `gens` and records the outcome.
pub fn verify_normal(lp: &Loop, h: Subloop, gens: &InnerGenerators) -> Subloop {
    let normal = is_normal(lp, &h, gens);
    h.with_normal(
        normal,
        &format!("checked against {} inner generators", gens.len()),
    )
}

/// `Q/H` with the projection of each element onto its coset index.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub lp: Loop,
    /// Coset index of every element of the parent loop.
    pub proj: Vec<u32>,
    /// Smallest element of each coset.
    pub reps: Vec<usize>,
    /// Whether representative independence was checked on every pair.
    pub fully_checked: bool,
}

/// Builds the coset table of a normal subloop. Every pair of parent elements
/// (or 2²⁰ seeded pairs for very large loops) is multiplied and compared
/// with the product of the coset representatives.
pub fn quotient(lp: &Loop, h: &Subloop) -> Result<Quotient> {
    if h.normal() != Some(true) {
        return Err(Error::NotNormal(format!(
            "normality of the subloop of order {} is not verified",
            h.len()
        )));
    }
    let n = lp.order();
    if !n.is_multiple_of(h.len()) {
        return Err(Error::NotNormal(format!(
            "order {} does not divide {n}",
            h.len()
        )));
    }
    let unset = u32::MAX;
    let mut proj = vec![unset; n];
    let mut reps = Vec::with_capacity(n / h.len());
    for x in 0..n {
        if proj[x] != unset {
            continue;
        }
        let k = reps.len() as u32;
        reps.push(x);
        for &e in h.elements() {
            let y = lp.mul(x, e);
            if proj[y] != unset {
                return Err(Error::NotNormal(format!(
                    "cosets of {x} and {} overlap at {y}",
                    reps[proj[y] as usize]
                )));
            }
            proj[y] = k;
        }
    }
    let m = reps.len();
    let entries: Vec<usize> = (0..m * m)
        .map(|i| proj[lp.mul(reps[i / m], reps[i % m])] as usize)
        .collect();
    let check = |x: usize, y: usize| {
        proj[lp.mul(x, y)] as usize == entries[proj[x] as usize * m + proj[y] as usize]
    };
    let fully_checked = n.saturating_mul(n) <= QUOTIENT_FULL_CHECK_MAX;
    let bad = if fully_checked {
        (0..n)
            .into_par_iter()
            .find_first(|&x| (0..n).any(|y| !check(x, y)))
            .map(|x| (x, (0..n).find(|&y| !check(x, y)).unwrap()))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(crate::sampling::DEFAULT_SEED);
        (0..QUOTIENT_SAMPLES)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .find(|&(x, y)| !check(x, y))
    };
    if let Some((x, y)) = bad {
        return Err(Error::NotNormal(format!(
            "coset product depends on representatives at ({x}, {y})"
        )));
    }
    let name = format!("{}/H{}", lp.name(), h.len());
    Ok(Quotient {
        lp: Loop::from_table(name, m, &entries)?,
        proj,
        reps,
        fully_checked,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Class(usize),
    /// The series stopped growing at a proper term of this order.
    NotNilpotent {
        stabilized: usize,
    },
}

#[derive(Clone, Debug)]
pub struct CentralSeries {
    /// `Z₀ ⊆ Z₁ ⊆ …`, as subloops of the original loop.
    pub terms: Vec<Subloop>,
    pub verdict: Nilpotency,
}

impl CentralSeries {
    pub fn class(&self) -> Option<usize> {
        match self.verdict {
            Nilpotency::Class(m) => Some(m),
            Nilpotency::NotNilpotent { .. } => None,
        }
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subloop::len).collect()
    }
}

/// Iterates center and quotient, pulling each center back to the original
/// loop. A certificate speeds up the first center of a triple loop.
pub fn upper_central_series(lp: &Loop, cert: Option<&FormCertificate>) -> Result<CentralSeries> {
    let n = lp.order();
    let mut terms = vec![Subloop::trivial(n)];
    let mut current = lp.clone();
    let mut proj: Vec<u32> = (0..n as u32).collect();
    loop {
        if current.order() == 1 {
            let class = terms.len() - 1;
            return Ok(CentralSeries {
                terms,
                verdict: Nilpotency::Class(class),
            });
        }
        let z = center(&current, if terms.len() == 1 { cert } else { None });
        if z.len() == 1 {
            let stabilized = terms.last().map(Subloop::len).unwrap_or(1);
            return Ok(CentralSeries {
                terms,
                verdict: Nilpotency::NotNilpotent { stabilized },
            });
        }
        let q = quotient(&current, &z)?;
        let level = terms.len();
        let pulled = (0..n).filter(|&x| z.contains(proj[x] as usize));
        terms.push(
            Subloop::from_elements(n, pulled, format!("Z{level} by center of quotient"))
                .with_normal(true, "term of the upper central series"),
        );
        for p in &mut proj {
            *p = q.proj[*p as usize];
        }
        current = q.lp;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::preset;

    #[test]
    fn brackets_vanish_trivially() {
        let lp = preset("s3").unwrap();
        for x in 0..6 {
            assert_eq!(commutator(&lp, x, x), 0);
            for y in 0..6 {
                assert_eq!(associator(&lp, 0, x, y), 0);
            }
        }
    }

    #[test]
    fn generated_subloops() {
        let lp = preset("c4").unwrap();
        assert_eq!(subloop_generated(&lp, &[]).elements(), &[0]);
        assert_eq!(subloop_generated(&lp, &[2]).elements(), &[0, 2]);
        assert_eq!(subloop_generated(&lp, &[1]).len(), 4);
        let s3 = preset("s3").unwrap();
        let h = subloop_generated(&s3, &[3]);
        assert_eq!(h.len(), 3);
        assert!(h.is_closed(&s3));
    }

    #[test]
    fn centers_of_small_groups() {
        assert_eq!(center(&preset("c4").unwrap(), None).len(), 4);
        assert_eq!(center(&preset("s3").unwrap(), None).len(), 1);
        assert_eq!(center(&preset("d4").unwrap(), None).len(), 2);
        assert_eq!(center(&preset("heis27").unwrap(), None).len(), 3);
    }

    #[test]
    fn nucleus_of_group_is_everything() {
        let lp = preset("d4").unwrap();
        assert_eq!(nucleus(&lp, None).unwrap().len(), 8);
    }

    #[test]
    fn series_of_small_groups() {
        let c4 = upper_central_series(&preset("c4").unwrap(), None).unwrap();
        assert_eq!(c4.class(), Some(1));
        let d4 = upper_central_series(&preset("d4").unwrap(), None).unwrap();
        assert_eq!(d4.class(), Some(2));
        assert_eq!(d4.orders(), vec![1, 2, 8]);
        let s3 = upper_central_series(&preset("s3").unwrap(), None).unwrap();
        assert_eq!(s3.verdict, Nilpotency::NotNilpotent { stabilized: 1 });
    }

    #[test]
    fn quotient_by_trivial_is_a_copy() {
        let lp = preset("s3").unwrap();
        let q = quotient(&lp, &Subloop::trivial(6)).unwrap();
        assert_eq!(q.lp.as_cayley(), lp.as_cayley());
    }

    #[test]
    fn quotient_refuses_unverified_subloop() {
        let lp = preset("s3").unwrap();
        let h = subloop_generated(&lp, &[1]);
        assert!(matches!(quotient(&lp, &h), Err(Error::NotNormal(_))));
        // A non-normal subgroup of order 2 is caught by the coset checks too.
        let forced = h.with_normal(true, "forced for the test");
        assert!(matches!(quotient(&lp, &forced), Err(Error::NotNormal(_))));
    }
}
