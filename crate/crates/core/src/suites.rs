//! Identity batteries and the theorem harness.
//!
//! Every battery is a list of named tuple predicates. Predicates of equal
//! arity run on one shared scan, so related identities are judged on the
//! same tuples. Hypotheses are evaluated, never assumed: a battery whose
//! gate fails reports its items as vacuous together with the gate trace.

use std::fmt;

use crate::analysis::{associator, commutator};
use crate::error::{Error, Result};
use crate::half::{divisibility, half_suite};
use crate::loops::TripleElement;
use crate::mapping::{l_image, r_image, t_image};
use crate::report::{ItemReport, Mode, Status, SuiteReport};
use crate::sampling::{Pred, SamplingPlan, Scan};
use crate::session::Session;
use crate::Loop;

/// Sample count for the lemma batteries when the plan sets none.
pub const SUITE_SAMPLES: u64 = 100_000;

/// Largest order at which `tsmall` compares maps on every point when no
/// inner-form certificate is available.
pub const POINTWISE_GATE_MAX: usize = 1024;

pub const SUITE_IDS: &[&str] = &[
    "moufang",
    "bruck-battery",
    "class2-bundle",
    "tsmall",
    "t-compose",
    "class3-bundle",
    "min-counterexample",
    "half-bundle",
    "linear-commutator",
    "linear-associator",
    "linear-triple-comm",
    "linear-assoc-comm",
];

/// Bracket maps `Qᵏ → Q` whose linearity is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketMap {
    /// `[x,y]`
    Commutator,
    /// `[x,y,z]`
    Associator,
    /// `[[x,y],z]`
    TripleComm,
    /// `[[x,y,z],u]`
    AssocComm,
    /// `[x,y,[z,u]]`
    AssocOfComm,
    /// `[x,y,[z,u,v]]`
    AssocOfAssoc,
}

impl BracketMap {
    pub fn arity(self) -> usize {
        match self {
            BracketMap::Commutator => 2,
            BracketMap::Associator | BracketMap::TripleComm => 3,
            BracketMap::AssocComm | BracketMap::AssocOfComm => 4,
            BracketMap::AssocOfAssoc => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BracketMap::Commutator => "commutator",
            BracketMap::Associator => "associator",
            BracketMap::TripleComm => "triple_comm",
            BracketMap::AssocComm => "assoc_comm",
            BracketMap::AssocOfComm => "assoc_of_comm",
            BracketMap::AssocOfAssoc => "assoc_of_assoc",
        }
    }

    pub fn eval(self, lp: &Loop, v: &[usize]) -> usize {
        match self {
            BracketMap::Commutator => commutator(lp, v[0], v[1]),
            BracketMap::Associator => associator(lp, v[0], v[1], v[2]),
            BracketMap::TripleComm => commutator(lp, commutator(lp, v[0], v[1]), v[2]),
            BracketMap::AssocComm => commutator(lp, associator(lp, v[0], v[1], v[2]), v[3]),
            BracketMap::AssocOfComm => associator(lp, v[0], v[1], commutator(lp, v[2], v[3])),
            BracketMap::AssocOfAssoc => {
                associator(lp, v[0], v[1], associator(lp, v[2], v[3], v[4]))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteId {
    Moufang,
    BruckBattery,
    Class2Bundle,
    TSmall,
    TCompose,
    Class3Bundle,
    MinCounterexample,
    HalfBundle,
    Linear(BracketMap),
}

impl SuiteId {
    pub fn parse(id: &str) -> Result<SuiteId> {
        Ok(match id {
            "moufang" => SuiteId::Moufang,
            "bruck-battery" => SuiteId::BruckBattery,
            "class2-bundle" => SuiteId::Class2Bundle,
            "tsmall" => SuiteId::TSmall,
            "t-compose" => SuiteId::TCompose,
            "class3-bundle" => SuiteId::Class3Bundle,
            "min-counterexample" => SuiteId::MinCounterexample,
            "half-bundle" => SuiteId::HalfBundle,
            "linear-commutator" => SuiteId::Linear(BracketMap::Commutator),
            "linear-associator" => SuiteId::Linear(BracketMap::Associator),
            "linear-triple-comm" => SuiteId::Linear(BracketMap::TripleComm),
            "linear-assoc-comm" => SuiteId::Linear(BracketMap::AssocComm),
            other => return Err(Error::Refused(format!("unknown suite `{other}`"))),
        })
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteId::Moufang => f.write_str("moufang"),
            SuiteId::BruckBattery => f.write_str("bruck-battery"),
            SuiteId::Class2Bundle => f.write_str("class2-bundle"),
            SuiteId::TSmall => f.write_str("tsmall"),
            SuiteId::TCompose => f.write_str("t-compose"),
            SuiteId::Class3Bundle => f.write_str("class3-bundle"),
            SuiteId::MinCounterexample => f.write_str("min-counterexample"),
            SuiteId::HalfBundle => f.write_str("half-bundle"),
            SuiteId::Linear(m) => write!(f, "linear-{}", m.name().replace('_', "-")),
        }
    }
}

/// Flags that cannot be computed and must be asserted by the caller.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    /// Every proper subloop has class at most 2.
    pub proper_subloops_class2: bool,
}

struct Check<'a> {
    name: String,
    arity: usize,
    /// Sample count used when the scan samples and the plan sets none.
    fallback: u64,
    /// Tuples range over `X₁` and are lifted to `(a,0,0)` before evaluation.
    a_space: bool,
    pred: Box<Pred<'a>>,
}

impl<'a> Check<'a> {
    fn new(
        name: impl Into<String>,
        arity: usize,
        fallback: u64,
        pred: impl Fn(&[usize]) -> Option<bool> + Sync + 'a,
    ) -> Check<'a> {
        Check {
            name: name.into(),
            arity,
            fallback,
            a_space: false,
            pred: Box::new(pred),
        }
    }
}

fn scan_for(plan: &SamplingPlan, n: usize, arity: usize, fallback: u64) -> Scan {
    let mut scan = plan.scan(n, arity);
    if scan.mode == Mode::Sampled && plan.samples.is_none() {
        scan.count = fallback;
    }
    scan
}

/// Runs checks grouped by scan, returning items in declaration order.
fn run_checks(lp: &Loop, plan: &SamplingPlan, checks: &[Check<'_>]) -> Vec<ItemReport> {
    let mut out: Vec<Option<ItemReport>> = checks.iter().map(|_| None).collect();
    let mut done = vec![false; checks.len()];
    for i in 0..checks.len() {
        if done[i] {
            continue;
        }
        let key = (checks[i].arity, checks[i].fallback, checks[i].a_space);
        let group: Vec<usize> = (i..checks.len())
            .filter(|&j| {
                !done[j] && (checks[j].arity, checks[j].fallback, checks[j].a_space) == key
            })
            .collect();
        let names: Vec<&str> = group.iter().map(|&j| checks[j].name.as_str()).collect();
        let items = if key.2 {
            let t = lp.as_triple().expect("a-space checks need a triple loop");
            let lift = |v: &[usize]| -> Vec<usize> {
                v.iter()
                    .map(|&a| t.encode(TripleElement { a, b: 0, c: 0 }))
                    .collect()
            };
            let lifted: Vec<Box<Pred<'_>>> = group
                .iter()
                .map(|&j| {
                    let p = &checks[j].pred;
                    Box::new(move |v: &[usize]| p(&lift(v))) as Box<Pred<'_>>
                })
                .collect();
            let refs: Vec<&Pred<'_>> = lifted.iter().map(|b| b.as_ref()).collect();
            let mut items = Scan::exhaustive(t.sizes().0, key.0).run(&names, &refs);
            for item in &mut items {
                for w in &mut item.witnesses {
                    *w = lift(w);
                }
            }
            items
        } else {
            let refs: Vec<&Pred<'_>> = group.iter().map(|&j| checks[j].pred.as_ref()).collect();
            scan_for(plan, lp.order(), key.0, key.1).run(&names, &refs)
        };
        for (&j, item) in group.iter().zip(items) {
            done[j] = true;
            out[j] = Some(item);
        }
    }
    out.into_iter()
        .map(|i| i.expect("every check ran"))
        .collect()
}

/// Left-bracketed product `((x₁x₂)x₃)…`.
fn product(lp: &Loop, xs: &[usize]) -> usize {
    xs.iter().fold(0, |acc, &x| lp.mul(acc, x))
}

/// All permutations of `0..k` other than the identity, with their parity.
fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in 0..k {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut all = Vec::new();
    rec(&mut Vec::new(), k, &mut all);
    all.into_iter()
        .skip(1)
        .map(|p| {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, inversions % 2 == 0)
        })
        .collect()
}

/// Per-slot linearity `f(…, xx', …) = f(…, x, …)·f(…, x', …)`, and, when
/// asked, alternation `f(x_π) = f(x)^{sgn π}` over every permutation.
/// Sample counts follow the map's arity, not the tuple length.
fn linear_checks<'a>(lp: &'a Loop, map: BracketMap, alternating: bool) -> Vec<Check<'a>> {
    let k = map.arity();
    let fallback = SamplingPlan::default_samples(k);
    let prefix = map.name();
    let mut checks = Vec::new();
    for slot in 0..k {
        checks.push(Check::new(
            format!("{prefix}.linear_{}", slot + 1),
            k + 1,
            fallback,
            move |v: &[usize]| {
                let (base, x2) = (&v[..k], v[k]);
                let mut a = [0usize; 6];
                let mut b = [0usize; 6];
                a[..k].copy_from_slice(base);
                b[..k].copy_from_slice(base);
                a[slot] = lp.mul(base[slot], x2);
                b[slot] = x2;
                let whole = map.eval(lp, &a[..k]);
                Some(whole == lp.mul(map.eval(lp, base), map.eval(lp, &b[..k])))
            },
        ));
    }
    if alternating {
        let perms = permutations(k);
        checks.push(Check::new(
            format!("{prefix}.alternating"),
            k,
            fallback,
            move |v: &[usize]| {
                let f = map.eval(lp, v);
                let f_inv = lp.inv(f);
                let mut w = [0usize; 6];
                Some(perms.iter().all(|(p, even)| {
                    for i in 0..k {
                        w[i] = v[p[i]];
                    }
                    map.eval(lp, &w[..k]) == if *even { f } else { f_inv }
                }))
            },
        ));
    }
    checks
}

fn moufang_checks(lp: &Loop) -> Vec<Check<'_>> {
    let fallback = SamplingPlan::default_samples(3);
    let mut checks = vec![Check::new("moufang", 3, fallback, move |v: &[usize]| {
        let (x, y, z) = (v[0], v[1], v[2]);
        Some(lp.mul(x, lp.mul(y, lp.mul(x, z))) == lp.mul(lp.mul(lp.mul(x, y), x), z))
    })];
    if lp.as_triple().is_some() {
        let reduction = move |v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let p = associator(lp, x, y, lp.mul(x, z));
            let q = associator(lp, lp.mul(x, y), x, z);
            Some(lp.mul(p, q) == 0)
        };
        checks.push(Check::new("reduction", 3, fallback, reduction));
        let mut a = Check::new("reduction.a_space", 3, fallback, reduction);
        a.a_space = true;
        checks.push(a);
    }
    checks
}

/// The Moufang identity `x(y(xz)) = ((xy)x)z`. On triple loops also the
/// reduction `[x,y,xz]·[xy,x,z] = 1`, on the sampled tuples and on every
/// triple of `X₁` components.
pub fn check_moufang(lp: &Loop, plan: &SamplingPlan) -> SuiteReport {
    let mut report = SuiteReport::new("moufang");
    for item in run_checks(lp, plan, &moufang_checks(lp)) {
        report.push(item);
    }
    report
}

/// Linearity in every slot and alternation of one bracket map. The class-2
/// hypotheses under which these are expected are reported, not enforced.
pub fn check_multilinear_alternating(s: &Session, map: BracketMap) -> SuiteReport {
    let lp = s.lp();
    let mut report = SuiteReport::new(format!("linear-{}", map.name()));
    report.gate(divisible_line(lp));
    report.gate(match s.class() {
        Ok(Some(c)) => format!("class {c}"),
        Ok(None) => "not nilpotent".into(),
        Err(e) => format!("class unknown: {e}"),
    });
    for item in run_checks(lp, s.plan(), &linear_checks(lp, map, true)) {
        report.push(item);
    }
    report
}

const BRUCK_IDENTITIES: [&str; 7] = [
    "identity_i",
    "identity_ii",
    "identity_iii",
    "identity_iv",
    "identity_v",
    "identity_vi",
    "identity_vii",
];

type Ternary<'a> = Box<dyn Fn(usize, usize, usize) -> bool + Sync + 'a>;

fn bruck_checks(lp: &Loop) -> Vec<Check<'_>> {
    let f = SUITE_SAMPLES;
    let a = move |x, y, z| associator(lp, x, y, z);
    let inv = move |x| lp.inv(x);
    let identities: [Ternary<'_>; 7] = [
        Box::new(move |x, y, z| commutator(lp, a(x, y, z), x) == 0),
        Box::new(move |x, y, z| a(x, y, commutator(lp, y, z)) == 0),
        Box::new(move |x, y, z| inv(a(x, y, z)) == a(inv(x), y, z)),
        Box::new(move |x, y, z| inv(a(x, y, z)) == a(inv(x), inv(y), inv(z))),
        Box::new(move |x, y, z| a(x, y, z) == a(x, lp.mul(z, y), z)),
        Box::new(move |x, y, z| a(x, y, z) == a(x, z, inv(y))),
        Box::new(move |x, y, z| a(x, y, z) == a(x, lp.mul(x, y), z)),
    ];
    let mut checks: Vec<Check<'_>> = identities
        .into_iter()
        .zip(BRUCK_IDENTITIES)
        .map(|(id, name)| Check::new(name, 3, f, move |v: &[usize]| Some(id(v[0], v[1], v[2]))))
        .collect();
    checks.push(Check::new("cyclic", 3, f, move |v: &[usize]| {
        let (x, y, z) = (v[0], v[1], v[2]);
        let w = a(x, y, z);
        Some(w == a(y, z, x) && w == inv(a(y, x, z)))
    }));
    checks.push(Check::new("powers", 3, f, move |v: &[usize]| {
        let (x, y, z) = (v[0], v[1], v[2]);
        let w = a(x, y, z);
        Some((-2..=3).all(|k| a(lp.pw(x, k), y, z) == lp.pw(w, k)))
    }));
    checks.push(Check::new(
        "product_commutator",
        3,
        f,
        move |v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let xz = commutator(lp, x, z);
            let rhs = product(
                lp,
                &[
                    xz,
                    commutator(lp, xz, y),
                    commutator(lp, y, z),
                    lp.pw(a(x, y, z), 3),
                ],
            );
            Some(commutator(lp, lp.mul(x, y), z) == rhs)
        },
    ));
    checks.push(Check::new("inner_lr", 3, f, move |v: &[usize]| {
        let (x, y, z) = (v[0], v[1], v[2]);
        let target = lp.mul(x, a(x, y, z));
        Some(l_image(lp, y, z, x) == target && r_image(lp, y, z, x) == target)
    }));
    checks
}

fn class2_checks<'a>(s: &'a Session) -> Vec<Check<'a>> {
    let lp = s.lp();
    let mut checks = Vec::new();
    match s.nucleus() {
        Ok(nuc) => checks.push(Check::new(
            "cube_nuclear",
            1,
            SamplingPlan::default_samples(1),
            move |v: &[usize]| Some(nuc.contains(lp.pw(v[0], 3))),
        )),
        Err(_) => checks.push(Check::new(
            "cube_nuclear",
            3,
            SamplingPlan::default_samples(3),
            move |v: &[usize]| {
                let (c, y, z) = (lp.pw(v[0], 3), v[1], v[2]);
                Some(
                    associator(lp, c, y, z) == 0
                        && associator(lp, y, c, z) == 0
                        && associator(lp, y, z, c) == 0,
                )
            },
        )),
    }
    let f = SamplingPlan::default_samples(3);
    checks.push(Check::new(
        "associator_cubed",
        3,
        f,
        move |v: &[usize]| Some(lp.pw(associator(lp, v[0], v[1], v[2]), 3) == 0),
    ));
    checks.push(Check::new(
        "product_commutator",
        3,
        f,
        move |v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let rhs = lp.mul(
                lp.mul(commutator(lp, x, z), commutator(lp, y, z)),
                lp.pw(associator(lp, x, y, z), 3),
            );
            Some(commutator(lp, lp.mul(x, y), z) == rhs)
        },
    ));
    checks.extend(linear_checks(lp, BracketMap::Commutator, true));
    checks.extend(linear_checks(lp, BracketMap::Associator, true));
    checks
}

/// Does `T(x)` commute with `L(y,z)`? In parameter space when the inner
/// form is certified, otherwise on every point.
fn t_l_commute(s: &Session, x: usize, y: usize, z: usize) -> bool {
    let lp = s.lp();
    if let (Some(t), Some(_)) = (lp.as_triple(), s.inner_cert()) {
        let (p, q, r) = (t.decode(x), t.decode(y), t.decode(z));
        let h = (p.a, t.neg2(p.b));
        let k = (0, t.prod11(q.a, r.a));
        return t.h_mul(h, k) == t.h_mul(k, h);
    }
    (0..lp.order())
        .all(|w| l_image(lp, y, z, t_image(lp, x, w)) == t_image(lp, x, l_image(lp, y, z, w)))
}

fn tsmall_checks<'a>(s: &'a Session) -> Vec<Check<'a>> {
    let lp = s.lp();
    vec![Check::new(
        "small",
        3,
        SUITE_SAMPLES,
        move |v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            t_l_commute(s, x, y, z).then(|| commutator(lp, associator(lp, x, y, z), x) == 0)
        },
    )]
}

fn t_compose_checks<'a>(s: &'a Session) -> Result<Vec<Check<'a>>> {
    let lp = s.lp();
    let nuc = s.nucleus()?;
    let f = SUITE_SAMPLES;
    Ok(vec![
        Check::new("gate.small", 3, f, move |v: &[usize]| {
            Some(commutator(lp, associator(lp, v[0], v[1], v[2]), v[0]) == 0)
        }),
        Check::new("gate.commutators_nuclear", 3, f, move |v: &[usize]| {
            Some(nuc.contains(commutator(lp, v[0], v[1])))
        }),
        Check::new("gate.iterated", 3, f, move |v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            Some(commutator(lp, commutator(lp, x, y), z) == lp.pw(associator(lp, x, y, z), 2))
        }),
        Check::new("law_yx", 3, f, move |v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let lhs = t_image(lp, x, t_image(lp, y, z));
            let rhs = lp.mul(
                t_image(lp, lp.mul(y, x), z),
                lp.pw(associator(lp, x, y, z), -3),
            );
            Some(lhs == rhs)
        }),
        Check::new("law_xy", 3, f, move |v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let lhs = t_image(lp, x, t_image(lp, y, z));
            let rhs = lp.mul(
                t_image(lp, y, t_image(lp, x, z)),
                lp.pw(associator(lp, x, y, z), -4),
            );
            Some(lhs == rhs)
        }),
    ])
}

fn class3_checks(lp: &Loop) -> Vec<Check<'_>> {
    let mut checks = linear_checks(lp, BracketMap::TripleComm, true);
    checks.extend(linear_checks(lp, BracketMap::AssocComm, false));
    checks.extend(linear_checks(lp, BracketMap::AssocOfComm, false));
    checks.extend(linear_checks(lp, BracketMap::AssocOfAssoc, false));
    checks
}

fn min_counterexample_checks(lp: &Loop) -> Vec<Check<'_>> {
    let f4 = SamplingPlan::default_samples(4);
    let f3 = SamplingPlan::default_samples(3);
    vec![
        Check::new("assoc_comm_trivial", 4, f4, move |v: &[usize]| {
            Some(BracketMap::AssocComm.eval(lp, v) == 0)
        }),
        Check::new("comm_assoc_trivial", 4, f4, move |v: &[usize]| {
            Some(associator(lp, commutator(lp, v[0], v[1]), v[2], v[3]) == 0)
        }),
        Check::new("triple_comm_trivial", 3, f3, move |v: &[usize]| {
            Some(BracketMap::TripleComm.eval(lp, v) == 0)
        }),
        Check::new("assoc_assoc_trivial", 5, f4, move |v: &[usize]| {
            Some(associator(lp, associator(lp, v[0], v[1], v[2]), v[3], v[4]) == 0)
        }),
    ]
}

fn divisible_line(lp: &Loop) -> String {
    match divisibility(lp, 2) {
        Ok(_) => "uniquely 2-divisible: yes".into(),
        Err(e) => format!("uniquely 2-divisible: no ({e})"),
    }
}

fn moufang_line(s: &Session) -> String {
    let m = s.moufang();
    let checked = m.total_checked();
    format!(
        "moufang: {} ({checked} checks)",
        if m.passed() { "pass" } else { "fail" }
    )
}

/// Gate of the class-`k` bundles: Moufang, uniquely 2-divisible, class ≤ k.
fn class_gate(s: &Session, report: &mut SuiteReport, max_class: usize) -> bool {
    let lp = s.lp();
    report.gate(moufang_line(s));
    report.gate(divisible_line(lp));
    let mut open = s.is_moufang() && divisibility(lp, 2).is_ok();
    match s.class() {
        Ok(Some(c)) => {
            report.gate(format!("class {c}, at most {max_class} required"));
            open &= c <= max_class;
        }
        Ok(None) => {
            report.gate("not nilpotent");
            open = false;
        }
        Err(e) => {
            report.gate(format!("class unknown: {e}"));
            open = false;
        }
    }
    open
}

fn push_all(report: &mut SuiteReport, items: Vec<ItemReport>) {
    for item in items {
        report.push(item);
    }
}

fn push_vacuous(report: &mut SuiteReport, checks: &[Check<'_>], why: &str) {
    for c in checks {
        report.push(ItemReport::vacuous(c.name.clone(), why));
    }
}

/// Runs one battery. Errors are reserved for inputs a battery cannot be
/// evaluated on (for instance a nucleus that is out of reach).
pub fn run_suite(s: &Session, id: SuiteId, opts: SuiteOptions) -> Result<SuiteReport> {
    let lp = s.lp();
    let plan = s.plan();
    let mut report = SuiteReport::new(id.to_string());
    match id {
        SuiteId::Moufang => return Ok(s.moufang().clone()),
        SuiteId::HalfBundle => return Ok(half_suite(s)?.suite),
        SuiteId::Linear(map) => return Ok(check_multilinear_alternating(s, map)),
        SuiteId::BruckBattery => {
            report.gate(moufang_line(s));
            let checks = bruck_checks(lp);
            if !s.is_moufang() {
                push_vacuous(&mut report, &checks, "not Moufang");
                return Ok(report);
            }
            let items = run_checks(lp, plan, &checks);
            let verdicts: Vec<Status> = items[..7].iter().map(|i| i.status).collect();
            let mut meta = ItemReport::new("all_or_none", Mode::Exhaustive);
            meta.record(verdicts.iter().all(|&v| v == verdicts[0]), Vec::new);
            let passing = verdicts.iter().filter(|&&v| v == Status::Pass).count();
            push_all(&mut report, items);
            report.push(meta.with_note(format!("{passing} of 7 identities hold")));
        }
        SuiteId::Class2Bundle => {
            let open = class_gate(s, &mut report, 2);
            let checks = class2_checks(s);
            if open {
                push_all(&mut report, run_checks(lp, plan, &checks));
            } else {
                push_vacuous(&mut report, &checks, "class-2 hypotheses fail");
            }
        }
        SuiteId::TSmall => {
            report.gate(moufang_line(s));
            if s.inner_cert().is_none() && lp.order() > POINTWISE_GATE_MAX {
                return Err(Error::Refused(format!(
                    "pointwise T/L commutation above order {POINTWISE_GATE_MAX} needs a certified inner form"
                )));
            }
            let checks = tsmall_checks(s);
            if !s.is_moufang() {
                push_vacuous(&mut report, &checks, "not Moufang");
                return Ok(report);
            }
            let scan = scan_for(plan, lp.order(), 3, SUITE_SAMPLES);
            let mut items = run_checks(lp, plan, &checks);
            let item = items.remove(0);
            let note = format!("gate open on {} of {} tuples", item.checked, scan.count);
            report.gate(note.clone());
            report.push(item.with_note(note));
        }
        SuiteId::TCompose => {
            report.gate(moufang_line(s));
            let checks = t_compose_checks(s)?;
            if !s.is_moufang() {
                push_vacuous(&mut report, &checks, "not Moufang");
                return Ok(report);
            }
            let mut items = run_checks(lp, plan, &checks);
            let gates: Vec<bool> = items[..3].iter().map(ItemReport::passed).collect();
            report.gate(format!(
                "[[x,y,z],x] = 1: {}; commutators nuclear: {}; [[x,y],z] = [x,y,z]^2: {}",
                items[0].status, items[1].status, items[2].status
            ));
            if !gates[0] {
                items[3] = ItemReport::vacuous("law_yx", "[[x,y,z],x] = 1 fails");
            }
            if !gates.iter().all(|&g| g) {
                items[4] = ItemReport::vacuous("law_xy", "hypotheses fail on the sample");
            }
            push_all(&mut report, items);
        }
        SuiteId::Class3Bundle => {
            let mut open = class_gate(s, &mut report, 3);
            report.gate(format!(
                "proper subloops of class at most 2: {} (asserted by the caller)",
                if opts.proper_subloops_class2 {
                    "yes"
                } else {
                    "not asserted"
                }
            ));
            open &= opts.proper_subloops_class2;
            let checks = class3_checks(lp);
            if open {
                push_all(&mut report, run_checks(lp, plan, &checks));
            } else {
                push_vacuous(&mut report, &checks, "class-3 hypotheses fail");
            }
        }
        SuiteId::MinCounterexample => {
            report.gate(moufang_line(s));
            report.gate(divisible_line(lp));
            let abelian = s.inn().map(|g| g.is_abelian());
            report.gate(match &abelian {
                Ok(a) => format!("Inn abelian: {a}"),
                Err(e) => format!("Inn unknown: {e}"),
            });
            let class = s.class().ok().flatten();
            report.gate(format!("class {class:?}, exactly 3 required"));
            report.gate(format!(
                "proper subloops of class at most 2: {} (asserted by the caller)",
                if opts.proper_subloops_class2 {
                    "yes"
                } else {
                    "not asserted"
                }
            ));
            let open = s.is_moufang()
                && divisibility(lp, 2).is_ok()
                && matches!(abelian, Ok(true))
                && class == Some(3)
                && opts.proper_subloops_class2;
            let checks = min_counterexample_checks(lp);
            if open {
                push_all(&mut report, run_checks(lp, plan, &checks));
            } else {
                push_vacuous(&mut report, &checks, "not a minimal counterexample");
            }
        }
    }
    Ok(report)
}

/// Re-evaluates one item of a battery on a single tuple, independently of
/// the scan that produced it. `Some(false)` confirms a failure witness.
pub fn reverify(s: &Session, id: SuiteId, item: &str, tuple: &[usize]) -> Result<Option<bool>> {
    let lp = s.lp();
    let checks = match id {
        SuiteId::Moufang => moufang_checks(lp),
        SuiteId::BruckBattery => bruck_checks(lp),
        SuiteId::Class2Bundle => class2_checks(s),
        SuiteId::TSmall => tsmall_checks(s),
        SuiteId::TCompose => t_compose_checks(s)?,
        SuiteId::Class3Bundle => class3_checks(lp),
        SuiteId::MinCounterexample => min_counterexample_checks(lp),
        SuiteId::Linear(map) => linear_checks(lp, map, true),
        SuiteId::HalfBundle => {
            return Err(Error::Refused(
                "half-bundle items are not tuple predicates".into(),
            ))
        }
    };
    let check = checks
        .iter()
        .find(|c| c.name == item)
        .ok_or_else(|| Error::Refused(format!("{id} has no item `{item}`")))?;
    if tuple.len() != check.arity || tuple.iter().any(|&x| x >= lp.order()) {
        return Err(Error::Refused(format!(
            "tuple {tuple:?} does not fit `{item}`"
        )));
    }
    Ok((check.pred)(tuple))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// Moufang of odd order with abelian `Inn` has class at most 2.
    OddOrder,
    /// The same for uniquely 6-divisible loops.
    SixDiv,
}

impl Theorem {
    pub fn parse(s: &str) -> Result<Theorem> {
        match s {
            "odd-order" => Ok(Theorem::OddOrder),
            "six-div" => Ok(Theorem::SixDiv),
            other => Err(Error::Refused(format!("unknown theorem `{other}`"))),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::OddOrder => "odd-order",
            Theorem::SixDiv => "six-div",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Hypotheses hold and so does the conclusion.
    Pass,
    /// A hypothesis fails and nothing follows.
    NotApplicable,
    /// `Inn` is nonabelian and the class exceeds 2, as the contrapositive allows.
    ContrapositiveConsistent,
    /// Hypotheses hold but the conclusion fails.
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::NotApplicable => "not-applicable",
            Verdict::ContrapositiveConsistent => "contrapositive-consistent",
            Verdict::Violation => "violation",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub verdict: Verdict,
    pub class: Option<usize>,
    pub suite: SuiteReport,
}

fn flag(name: &str, ok: bool, note: impl Into<String>) -> ItemReport {
    let mut item = ItemReport::new(name, Mode::Exhaustive);
    item.record(ok, Vec::new);
    item.with_note(note)
}

/// Evaluates the hypotheses cheapest first and, when all hold, asserts
/// class at most 2. Expensive hypotheses are skipped once a cheap one fails.
pub fn theorem_harness(s: &Session, which: Theorem) -> Result<TheoremReport> {
    let lp = s.lp();
    let n = lp.order();
    let mut suite = SuiteReport::new(format!("theorem-{which}"));
    suite.push(flag("hyp.finite", true, format!("order {n}")));
    let structural = match which {
        Theorem::OddOrder => {
            let odd = n % 2 == 1;
            suite.push(flag("hyp.odd_order", odd, format!("order {n}")));
            odd
        }
        Theorem::SixDiv => {
            let mut all = true;
            for m in [2, 3] {
                let d = divisibility(lp, m);
                let note = match &d {
                    Ok(_) => "power map is a bijection".to_string(),
                    Err(e) => e.to_string(),
                };
                suite.push(flag(&format!("hyp.divisible_{m}"), d.is_ok(), note));
                all &= d.is_ok();
            }
            all
        }
    };
    let not_evaluated = |suite: &mut SuiteReport, names: &[&str]| {
        for name in names {
            suite.push(ItemReport::vacuous(*name, "not evaluated"));
        }
    };
    if !structural {
        not_evaluated(
            &mut suite,
            &["hyp.moufang", "hyp.inn_abelian", "conclusion.class"],
        );
        return Ok(TheoremReport {
            theorem: which,
            verdict: Verdict::NotApplicable,
            class: None,
            suite,
        });
    }
    let m = s.moufang();
    let moufang = m.passed();
    let mut item = flag(
        "hyp.moufang",
        moufang,
        format!("{} checks", m.total_checked()),
    );
    item.mode = m.items.first().map_or(Mode::Exhaustive, |i| i.mode);
    suite.push(item);
    if !moufang {
        not_evaluated(&mut suite, &["hyp.inn_abelian", "conclusion.class"]);
        return Ok(TheoremReport {
            theorem: which,
            verdict: Verdict::NotApplicable,
            class: None,
            suite,
        });
    }
    let inn = s.inn()?;
    let abelian = inn.is_abelian();
    suite.push(flag(
        "hyp.inn_abelian",
        abelian,
        format!("|Inn| = {}", inn.order()),
    ));
    let class = s.class()?;
    let small = class.is_some_and(|c| c <= 2);
    let class_note = match class {
        Some(c) => format!("class {c}"),
        None => "not nilpotent".to_string(),
    };
    let verdict = match (abelian, small) {
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Violation,
        (false, false) => Verdict::ContrapositiveConsistent,
        (false, true) => Verdict::NotApplicable,
    };
    if abelian {
        suite.push(flag("conclusion.class", small, class_note));
    } else {
        suite.push(ItemReport::vacuous("conclusion.class", class_note));
    }
    Ok(TheoremReport {
        theorem: which,
        verdict,
        class,
        suite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::preset;

    fn session(name: &str) -> Session {
        Session::new(preset(name).unwrap(), SamplingPlan::default())
    }

    #[test]
    fn permutation_parities() {
        let p = permutations(3);
        assert_eq!(p.len(), 5);
        assert_eq!(p.iter().filter(|(_, even)| *even).count(), 2);
    }

    #[test]
    fn suite_ids_round_trip() {
        for id in SUITE_IDS {
            assert_eq!(SuiteId::parse(id).unwrap().to_string(), *id);
        }
        assert!(SuiteId::parse("nope").is_err());
    }

    #[test]
    fn nassoc5_is_not_moufang() {
        let s = session("nassoc5");
        let r = s.moufang();
        assert!(!r.passed());
        let w = r.items[0].witnesses[0].clone();
        assert_eq!(
            reverify(&s, SuiteId::Moufang, "moufang", &w).unwrap(),
            Some(false)
        );
    }

    #[test]
    fn groups_pass_the_battery() {
        let s = session("s3");
        let r = run_suite(&s, SuiteId::BruckBattery, SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn heis27_commutator_is_bilinear() {
        let s = session("heis27");
        let r = check_multilinear_alternating(&s, BracketMap::Commutator);
        assert!(r.passed());
        assert_eq!(
            r.item("commutator.linear_1").unwrap().mode,
            Mode::Exhaustive
        );
    }

    #[test]
    fn class3_bundle_needs_the_flag() {
        let s = session("cml81");
        let r = run_suite(&s, SuiteId::Class3Bundle, SuiteOptions::default()).unwrap();
        assert!(r.items.iter().all(|i| i.status == Status::VacuousGate));
    }

    #[test]
    fn harness_on_small_loops() {
        let t = theorem_harness(&session("c3"), Theorem::OddOrder).unwrap();
        assert_eq!(t.verdict, Verdict::Pass);
        let t = theorem_harness(&session("s3"), Theorem::OddOrder).unwrap();
        assert_eq!(t.verdict, Verdict::NotApplicable);
        let t = theorem_harness(&session("heis27"), Theorem::SixDiv).unwrap();
        assert_eq!(t.verdict, Verdict::NotApplicable);
    }
}
