//! Translations, inner mappings and the inner mapping group.
//!
//! Mappings act on the right: `x(φψ) = (xφ)ψ`. The inner generators are
//! `zT(x) = x\(zx)`, `zL(x,y) = (yx)\(y(xz))` and `zR(x,y) = ((zx)y)/(xy)`.
//!
//! On a triple loop the whole inner mapping group can be handled in the
//! parameter space of the maps `S(u,v)`, once [`certify_inner_form`] has
//! checked that every `T`, `L` and `R` is such a map, that the maps compose
//! like `H` and that distinct parameters give distinct maps.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::Subloop;
use crate::error::{Error, Result};
use crate::loops::{GroupTable, Loop, TripleElement, TripleLoop, DEFAULT_EXPORT_CAP};
use crate::report::{ItemReport, Mode, SuiteReport, MAX_WITNESSES};
use crate::ring::RingSpec;
use crate::sampling::{SamplingPlan, DEFAULT_SEED};

/// Number of fixed probe points used for fingerprints.
pub const PROBES: usize = 64;

/// Default cap on point evaluations when materializing every `T`, `L`, `R`.
pub const DEFINITIONAL_BUDGET: usize = 1 << 27;

/// Default cap on the number of group elements produced by a closure.
pub const CLOSURE_BUDGET: usize = 1 << 16;

#[inline]
pub fn t_image(lp: &Loop, x: usize, z: usize) -> usize {
    lp.ldiv(x, lp.mul(z, x))
}

#[inline]
pub fn l_image(lp: &Loop, x: usize, y: usize, z: usize) -> usize {
    lp.ldiv(lp.mul(y, x), lp.mul(y, lp.mul(x, z)))
}

#[inline]
pub fn r_image(lp: &Loop, x: usize, y: usize, z: usize) -> usize {
    lp.rdiv(lp.mul(lp.mul(z, x), y), lp.mul(x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerKind {
    T,
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mapping {
    Materialized(Vec<u32>),
    Identity,
    /// `y ↦ xy`.
    LeftTranslation(usize),
    /// `y ↦ yx`.
    RightTranslation(usize),
    T(usize),
    L(usize, usize),
    R(usize, usize),
    /// `S(u,v)` by part indices; triple loops only.
    S(usize, usize),
    /// Applied left to right.
    Composite(Vec<Mapping>),
}

impl Mapping {
    pub fn apply(&self, lp: &Loop, z: usize) -> usize {
        match self {
            Mapping::Materialized(img) => img[z] as usize,
            Mapping::Identity => z,
            Mapping::LeftTranslation(x) => lp.mul(*x, z),
            Mapping::RightTranslation(x) => lp.mul(z, *x),
            Mapping::T(x) => t_image(lp, *x, z),
            Mapping::L(x, y) => l_image(lp, *x, *y, z),
            Mapping::R(x, y) => r_image(lp, *x, *y, z),
            Mapping::S(u, v) => lp
                .as_triple()
                .expect("S(u,v) is defined on triple loops")
                .s_map(*u, *v, z),
            Mapping::Composite(parts) => parts.iter().fold(z, |acc, m| m.apply(lp, acc)),
        }
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Mapping) -> Mapping {
        match self {
            Mapping::Composite(mut parts) => {
                parts.push(next);
                Mapping::Composite(parts)
            }
            first => Mapping::Composite(vec![first, next]),
        }
    }

    /// The image array, checked to be a permutation.
    pub fn materialize(&self, lp: &Loop) -> Result<Vec<u32>> {
        let n = lp.order();
        let img: Vec<u32> = (0..n)
            .into_par_iter()
            .map(|z| self.apply(lp, z) as u32)
            .collect();
        let mut seen = vec![false; n];
        for (z, &v) in img.iter().enumerate() {
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::Refused(format!(
                    "mapping is not a bijection: {v} is hit twice (again at {z})"
                )));
            }
        }
        Ok(img)
    }
}

/// `T(x)`, `L(x,y)` or `R(x,y)`; the second element is required for `L`, `R`.
pub fn inner_generator(kind: InnerKind, x: usize, y: Option<usize>) -> Result<Mapping> {
    match (kind, y) {
        (InnerKind::T, _) => Ok(Mapping::T(x)),
        (InnerKind::L, Some(y)) => Ok(Mapping::L(x, y)),
        (InnerKind::R, Some(y)) => Ok(Mapping::R(x, y)),
        (_, None) => Err(Error::Refused(format!("{kind:?}(x,y) needs two elements"))),
    }
}

/// Evidence that every inner generator of a triple loop is an `S(u,v)`, that
/// these maps compose like `H` and are pairwise distinct. Only
/// [`certify_inner_form`] creates one.
#[derive(Clone, Debug)]
pub struct InnerCertificate {
    spec: RingSpec,
}

impl InnerCertificate {
    pub fn applies_to(&self, lp: &Loop) -> bool {
        lp.as_triple().is_some_and(|t| t.spec() == &self.spec)
    }
}

fn probe_points(n: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    (0..PROBES).map(|_| rng.gen_range(0..n)).collect()
}

/// Folds per-chunk `(checked, failures, witnesses)` into one item.
fn summarize(name: &str, mode: Mode, parts: Vec<(u64, u64, Vec<Vec<usize>>)>) -> ItemReport {
    let mut item = ItemReport::new(name, mode);
    for (checked, failures, witnesses) in parts {
        item.checked += checked;
        item.failures += failures;
        for w in witnesses {
            if item.witnesses.len() < MAX_WITNESSES {
                item.witnesses.push(w);
            }
        }
    }
    if item.failures > 0 {
        item.status = crate::report::Status::Fail;
    }
    item
}

fn h_index(t: &TripleLoop, h: (usize, usize)) -> usize {
    h.0 * t.sizes().1 + h.1
}

fn h_param(t: &TripleLoop, i: usize) -> (usize, usize) {
    let n2 = t.sizes().1;
    (i / n2, i % n2)
}

/// Certifies `Inn(Q) = {S(u,v)} ≅ H` for a triple loop:
/// 1. `T(y) = S(a',−b')` on every point, for every `y`;
/// 2. `L(x,y) = R(x,y) = S(0,a'a'')` on every point for all `x, y` with zero
///    `b, c` parts, and on [`PROBES`] sampled points for 10⁴ random pairs;
/// 3. `S(h)S(k) = S(hk)` for all `h, k ∈ H` on the probe points;
/// 4. the maps `S(h)` are pairwise distinct (probe fingerprints, with every
///    collision settled on all points).
pub fn certify_inner_form(
    lp: &Loop,
    plan: &SamplingPlan,
) -> Result<(SuiteReport, Option<InnerCertificate>)> {
    let t = lp
        .as_triple()
        .ok_or_else(|| Error::Refused("the S(u,v) family exists on triple loops only".into()))?;
    let n = t.order();
    let (n1, n2, n3) = t.sizes();
    let all: Vec<TripleElement> = (0..n).map(|x| t.decode(x)).collect();
    let mut report = SuiteReport::new("inner-form");

    // 1. T(y) = S(a', -b').
    let parts: Vec<_> = (0..n)
        .into_par_iter()
        .map(|y| {
            let q = all[y];
            let mut fails = 0u64;
            let mut wit = Vec::new();
            for (z, &p) in all.iter().enumerate() {
                if t.ldiv_e(q, t.mul_e(p, q)) != t.s_map_e(q.a, t.neg2(q.b), p) {
                    fails += 1;
                    if wit.len() < MAX_WITNESSES {
                        wit.push(vec![y, z]);
                    }
                }
            }
            (n as u64, fails, wit)
        })
        .collect();
    report.push(summarize("t_is_s", Mode::Exhaustive, parts));

    // 2. L = R = S(0, a'a''), exhaustively on a-components.
    let lr_ok = |x: TripleElement, y: TripleElement, p: TripleElement| {
        let s = t.s_map_e(0, t.prod11(x.a, y.a), p);
        let yx = t.mul_e(y, x);
        let l = t.ldiv_e(yx, t.mul_e(y, t.mul_e(x, p)));
        let r = t.rdiv_e(t.mul_e(t.mul_e(p, x), y), t.mul_e(x, y));
        l == s && r == s
    };
    let parts: Vec<_> = (0..n1 * n1)
        .into_par_iter()
        .map(|i| {
            let x = TripleElement {
                a: i / n1,
                b: 0,
                c: 0,
            };
            let y = TripleElement {
                a: i % n1,
                b: 0,
                c: 0,
            };
            let mut fails = 0u64;
            let mut wit = Vec::new();
            for (z, &p) in all.iter().enumerate() {
                if !lr_ok(x, y, p) {
                    fails += 1;
                    if wit.len() < MAX_WITNESSES {
                        wit.push(vec![t.encode(x), t.encode(y), z]);
                    }
                }
            }
            (n as u64, fails, wit)
        })
        .collect();
    report.push(summarize("lr_is_s.a_space", Mode::Exhaustive, parts));

    let pairs = plan.samples.map_or(10_000, |s| s.max(10_000));
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut item = ItemReport::new("lr_is_s.sampled", Mode::Sampled);
    for _ in 0..pairs {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        for _ in 0..PROBES {
            let z = rng.gen_range(0..n);
            item.record(lr_ok(all[x], all[y], all[z]), || vec![x, y, z]);
        }
    }
    report.push(item);

    // 3. Composition law on the probe points.
    let probes: Vec<TripleElement> = probe_points(n).into_iter().map(|z| all[z]).collect();
    let hn = n1 * n2;
    let prints: Vec<Vec<TripleElement>> = (0..hn)
        .into_par_iter()
        .map(|i| {
            let (u, v) = h_param(t, i);
            probes.iter().map(|&p| t.s_map_e(u, v, p)).collect()
        })
        .collect();
    let parts: Vec<_> = (0..hn)
        .into_par_iter()
        .map(|i| {
            let h = h_param(t, i);
            let mut fails = 0u64;
            let mut wit = Vec::new();
            for j in 0..hn {
                let k = h_param(t, j);
                let hk = &prints[h_index(t, t.h_mul(h, k))];
                let ok = prints[i]
                    .iter()
                    .zip(hk)
                    .all(|(&img, &target)| t.s_map_e(k.0, k.1, img) == target);
                if !ok {
                    fails += 1;
                    if wit.len() < MAX_WITNESSES {
                        wit.push(vec![h.0, h.1, k.0, k.1]);
                    }
                }
            }
            (hn as u64, fails, wit)
        })
        .collect();
    report.push(summarize("composition", Mode::Exhaustive, parts));

    // 4. Distinctness.
    let mut order: Vec<usize> = (0..hn).collect();
    order.par_sort_by(|&i, &j| {
        let key = |e: &TripleElement| (e.a, e.b, e.c);
        prints[i].iter().map(key).cmp(prints[j].iter().map(key))
    });
    let mut item = ItemReport::new("distinct", Mode::Exhaustive);
    for w in order.windows(2) {
        let (i, j) = (w[0], w[1]);
        let same = prints[i] == prints[j] && {
            let (h, k) = (h_param(t, i), h_param(t, j));
            all.iter()
                .all(|&p| t.s_map_e(h.0, h.1, p) == t.s_map_e(k.0, k.1, p))
        };
        item.record(!same, || {
            let (h, k) = (h_param(t, i), h_param(t, j));
            vec![h.0, h.1, k.0, k.1]
        });
    }
    report.push(item.with_note(format!("{hn} parameters, {n3}-element X3")));

    let cert = report.passed().then(|| InnerCertificate {
        spec: t.spec().clone(),
    });
    Ok((report, cert))
}

#[derive(Clone, Debug)]
enum GenRepr {
    Perms(Vec<Vec<u32>>),
    SFamily(Vec<(usize, usize)>),
}

/// A deduplicated generating set of `Inn(Q)` with the identity removed.
#[derive(Clone, Debug)]
pub struct InnerGenerators {
    repr: GenRepr,
}

impl InnerGenerators {
    /// Every `T(x)`, `L(x,y)`, `R(x,y)` as an image array, deduplicated.
    /// Refused when `(2n² + n)·n` exceeds `budget`.
    pub fn definitional(lp: &Loop, budget: usize) -> Result<InnerGenerators> {
        let n = lp.order();
        let cost = (2 * n * n + n).saturating_mul(n);
        if cost > budget {
            return Err(Error::Refused(format!(
                "materializing all inner generators at order {n} needs {cost} evaluations, budget {budget}"
            )));
        }
        let per_x: Vec<HashSet<Vec<u32>>> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut set = HashSet::new();
                set.insert((0..n).map(|z| t_image(lp, x, z) as u32).collect::<Vec<_>>());
                for y in 0..n {
                    set.insert(
                        (0..n)
                            .map(|z| l_image(lp, x, y, z) as u32)
                            .collect::<Vec<_>>(),
                    );
                    set.insert(
                        (0..n)
                            .map(|z| r_image(lp, x, y, z) as u32)
                            .collect::<Vec<_>>(),
                    );
                }
                set
            })
            .collect();
        let mut all: HashSet<Vec<u32>> = HashSet::new();
        for s in per_x {
            all.extend(s);
        }
        let identity: Vec<u32> = (0..n as u32).collect();
        all.remove(&identity);
        let mut perms: Vec<Vec<u32>> = all.into_iter().collect();
        perms.sort_unstable();
        Ok(InnerGenerators {
            repr: GenRepr::Perms(perms),
        })
    }

    /// All maps `S(u,v) ≠ id`; by the certificate these are exactly the
    /// `T(x)` (with `T(a',b',c') = S(a',−b')`), and they include every `L`, `R`.
    pub fn certified(lp: &Loop, cert: &InnerCertificate) -> Result<InnerGenerators> {
        if !cert.applies_to(lp) {
            return Err(Error::Refused(
                "inner-form certificate is for another loop".into(),
            ));
        }
        let t = lp.as_triple().expect("certificate implies a triple loop");
        let (n1, n2, _) = t.sizes();
        let params = (0..n1 * n2).skip(1).map(|i| h_param(t, i)).collect();
        Ok(InnerGenerators {
            repr: GenRepr::SFamily(params),
        })
    }

    /// The certified family when a certificate is given, else all `T, L, R`.
    pub fn for_loop(lp: &Loop, cert: Option<&InnerCertificate>) -> Result<InnerGenerators> {
        match cert {
            Some(c) => InnerGenerators::certified(lp, c),
            None => InnerGenerators::definitional(lp, DEFINITIONAL_BUDGET),
        }
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            GenRepr::Perms(p) => p.len(),
            GenRepr::SFamily(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn image(&self, lp: &Loop, g: usize, x: usize) -> usize {
        match &self.repr {
            GenRepr::Perms(p) => p[g][x] as usize,
            GenRepr::SFamily(p) => {
                let (u, v) = p[g];
                lp.as_triple()
                    .expect("S family on a triple loop")
                    .s_map(u, v, x)
            }
        }
    }
}

#[derive(Clone, Debug)]
enum GroupRepr {
    Perms(Vec<Vec<u32>>),
    /// Elements of `H`, discovered in closure order.
    SFamily(Vec<(usize, usize)>),
}

#[derive(Clone, Debug)]
pub struct InnerGroup {
    repr: GroupRepr,
    generators: usize,
    complete: bool,
    abelian: bool,
    exponent: u64,
}

#[derive(Clone, Copy, Debug)]
pub enum GeneratorPolicy<'a> {
    /// All `T(x)`, `L(x,y)`, `R(x,y)` as image arrays.
    Definitional { budget: usize },
    /// The certified `S(u,v)` family, closed in parameter space.
    Certified(&'a InnerCertificate),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn perm_order(p: &[u32]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let (mut len, mut x) = (0u64, start);
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

/// `x(pq) = (xp)q`.
fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    p.iter().map(|&v| q[v as usize]).collect()
}

/// Breadth-first closure of the inner generators under composition.
/// Stops with `complete = false` once `max_elements` is exceeded.
pub fn inner_group_closure(
    lp: &Loop,
    policy: GeneratorPolicy<'_>,
    max_elements: usize,
) -> Result<InnerGroup> {
    match policy {
        GeneratorPolicy::Definitional { budget } => {
            let gens = InnerGenerators::definitional(lp, budget)?;
            let GenRepr::Perms(gens) = gens.repr else {
                unreachable!()
            };
            let n = lp.order();
            let identity: Vec<u32> = (0..n as u32).collect();
            let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
            let mut elements = vec![identity.clone()];
            index.insert(identity, 0);
            let mut queue = VecDeque::from([0usize]);
            let mut complete = true;
            'bfs: while let Some(i) = queue.pop_front() {
                for g in &gens {
                    let p = compose(&elements[i], g);
                    if !index.contains_key(&p) {
                        if elements.len() >= max_elements {
                            complete = false;
                            break 'bfs;
                        }
                        index.insert(p.clone(), elements.len());
                        queue.push_back(elements.len());
                        elements.push(p);
                    }
                }
            }
            let abelian = gens.par_iter().enumerate().all(|(i, g)| {
                gens[i + 1..]
                    .iter()
                    .all(|h| (0..n).all(|x| h[g[x] as usize] == g[h[x] as usize]))
            });
            let exponent = elements.par_iter().map(|p| perm_order(p)).reduce(|| 1, lcm);
            Ok(InnerGroup {
                repr: GroupRepr::Perms(elements),
                generators: gens.len(),
                complete,
                abelian,
                exponent,
            })
        }
        GeneratorPolicy::Certified(cert) => {
            let gens = InnerGenerators::certified(lp, cert)?;
            let GenRepr::SFamily(gens) = gens.repr else {
                unreachable!()
            };
            let t = lp.as_triple().expect("certified triple loop");
            let (n1, n2, _) = t.sizes();
            let mut seen = vec![false; n1 * n2];
            seen[0] = true;
            let mut elements = vec![(0usize, 0usize)];
            let mut queue = VecDeque::from([(0usize, 0usize)]);
            let mut complete = true;
            'bfs: while let Some(h) = queue.pop_front() {
                for &g in &gens {
                    let p = t.h_mul(h, g);
                    let i = h_index(t, p);
                    if !seen[i] {
                        if elements.len() >= max_elements {
                            complete = false;
                            break 'bfs;
                        }
                        seen[i] = true;
                        elements.push(p);
                        queue.push_back(p);
                    }
                }
            }
            let abelian = gens.par_iter().enumerate().all(|(i, &g)| {
                gens[i + 1..]
                    .iter()
                    .all(|&h| t.h_mul(g, h) == t.h_mul(h, g))
            });
            let h_order = |g: (usize, usize)| {
                let (mut acc, mut k) = (g, 1u64);
                while acc != (0, 0) {
                    acc = t.h_mul(acc, g);
                    k += 1;
                }
                k
            };
            let exponent = elements.par_iter().map(|&g| h_order(g)).reduce(|| 1, lcm);
            Ok(InnerGroup {
                repr: GroupRepr::SFamily(elements),
                generators: gens.len(),
                complete,
                abelian,
                exponent,
            })
        }
    }
}

impl InnerGroup {
    pub fn order(&self) -> usize {
        match &self.repr {
            GroupRepr::Perms(p) => p.len(),
            GroupRepr::SFamily(p) => p.len(),
        }
    }

    /// Number of distinct non-identity generators used.
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Decided by pairwise commutation of the generators.
    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_parametrized(&self) -> bool {
        matches!(self.repr, GroupRepr::SFamily(_))
    }

    fn image(&self, lp: &Loop, i: usize, x: usize) -> usize {
        match &self.repr {
            GroupRepr::Perms(p) => p[i][x] as usize,
            GroupRepr::SFamily(p) => {
                let (u, v) = p[i];
                lp.as_triple().expect("triple loop").s_map(u, v, x)
            }
        }
    }

    /// Points fixed by every element of the closure.
    pub fn fixed_points(&self, lp: &Loop) -> Subloop {
        let n = lp.order();
        let fixed: Vec<usize> = (0..n)
            .into_par_iter()
            .filter(|&x| (0..self.order()).all(|i| self.image(lp, i, x) == x))
            .collect();
        Subloop::from_elements(n, fixed, "fixed points of the inner mapping group")
    }

    /// Closure check: every product of two elements is an element.
    pub fn is_closed(&self, lp: &Loop) -> bool {
        match &self.repr {
            GroupRepr::Perms(p) => {
                let set: HashSet<&[u32]> = p.iter().map(Vec::as_slice).collect();
                p.par_iter()
                    .all(|a| p.iter().all(|b| set.contains(compose(a, b).as_slice())))
            }
            GroupRepr::SFamily(p) => {
                let t = lp.as_triple().expect("triple loop");
                let set: HashSet<(usize, usize)> = p.iter().copied().collect();
                p.par_iter()
                    .all(|&a| p.iter().all(|&b| set.contains(&t.h_mul(a, b))))
            }
        }
    }

    /// Exports the group as a Cayley table. Elements are ordered by their
    /// image arrays, so the identity comes first.
    pub fn to_group_table(&self, lp: &Loop) -> Result<GroupTable> {
        let m = self.order();
        if !self.complete {
            return Err(Error::Refused("closure is incomplete".into()));
        }
        if m > DEFAULT_EXPORT_CAP {
            return Err(Error::CapExceeded {
                order: m,
                cap: DEFAULT_EXPORT_CAP,
            });
        }
        let n = lp.order();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| {
            (0..n)
                .map(|x| self.image(lp, i, x).cmp(&self.image(lp, j, x)))
                .find(|c| c.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let entries: Vec<usize> = match &self.repr {
            GroupRepr::Perms(p) => {
                let index: HashMap<&[u32], usize> = order
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| (p[i].as_slice(), k))
                    .collect();
                (0..m * m)
                    .map(|k| index[compose(&p[order[k / m]], &p[order[k % m]]).as_slice()])
                    .collect()
            }
            GroupRepr::SFamily(p) => {
                let t = lp.as_triple().expect("triple loop");
                let index: HashMap<(usize, usize), usize> =
                    order.iter().enumerate().map(|(k, &i)| (p[i], k)).collect();
                (0..m * m)
                    .map(|k| index[&t.h_mul(p[order[k / m]], p[order[k % m]])])
                    .collect()
            }
        };
        let table = Loop::from_table(format!("Inn({})", lp.name()), m, &entries)?;
        GroupTable::verify(table, None)
    }
}

/// Checks the pseudo-automorphism identity `(xφ)(yφ·c) = (xy)φ·c` on the
/// pairs selected by `plan`.
pub fn companion_check(lp: &Loop, phi: &Mapping, c: usize, plan: &SamplingPlan) -> ItemReport {
    plan.scan(lp.order(), 2)
        .run_one("companion", &|v: &[usize]| {
            let (x, y) = (v[0], v[1]);
            let left = lp.mul(phi.apply(lp, x), lp.mul(phi.apply(lp, y), c));
            let right = lp.mul(phi.apply(lp, lp.mul(x, y)), c);
            Some(left == right)
        })
}

/// Checks that `φ` is a center automorphism and then that
/// `ψ: x ↦ x\(xφ)` is a homomorphism into `center`.
pub fn center_automorphism_check(
    lp: &Loop,
    phi: &Mapping,
    center: &Subloop,
    plan: &SamplingPlan,
) -> SuiteReport {
    let mut report = SuiteReport::new("center-automorphism");
    let n = lp.order();
    let pairs = plan.scan(n, 2);
    let auto = pairs.run_one("automorphism", &|v: &[usize]| {
        let (x, y) = (v[0], v[1]);
        Some(phi.apply(lp, lp.mul(x, y)) == lp.mul(phi.apply(lp, x), phi.apply(lp, y)))
    });
    let psi = |x: usize| lp.ldiv(x, phi.apply(lp, x));
    let cosets = crate::sampling::Scan::exhaustive(n, 1)
        .run_one("center_cosets", &|v: &[usize]| {
            Some(center.contains(psi(v[0])))
        });
    let pre = auto.passed() && cosets.passed();
    report.gate(format!(
        "automorphism: {}; xZ = (xφ)Z: {}",
        auto.status, cosets.status
    ));
    report.push(auto);
    report.push(cosets);
    if pre {
        report.push(pairs.run_one("psi_homomorphism", &|v: &[usize]| {
            let (x, y) = (v[0], v[1]);
            Some(psi(lp.mul(x, y)) == lp.mul(psi(x), psi(y)))
        }));
    } else {
        report.push(ItemReport::vacuous(
            "psi_homomorphism",
            "not a center automorphism",
        ));
    }
    report
}
