//! Power maps, roots and the Bruck loop `Q(1/2)` with
//! `x*y = (x^{1/2}y)x^{1/2}`.

use crate::analysis::{associator, commutator};
use crate::error::{Error, Result};
use crate::loops::DEFAULT_EXPORT_CAP;
use crate::report::{ItemReport, Mode, SuiteReport};
use crate::sampling::{SamplingPlan, Scan};
use crate::session::Session;
use crate::suites::check_moufang;
use crate::Loop;

/// The power map `x ↦ x^m` of a uniquely `m`-divisible loop and its inverse.
#[derive(Clone, Debug)]
pub struct RootTable {
    m: u32,
    forward: Vec<u32>,
    inverse: Vec<u32>,
}

impl RootTable {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn power(&self, x: usize) -> usize {
        self.forward[x] as usize
    }

    /// The unique `r` with `r^m = x`.
    pub fn root(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }
}

/// Computes `x^m` for every `x` and inverts the map, or names the least
/// element that is not an `m`-th power.
pub fn divisibility(lp: &Loop, m: u32) -> Result<RootTable> {
    if m < 2 {
        return Err(Error::Refused(format!("divisibility needs m ≥ 2, got {m}")));
    }
    let n = lp.order();
    let forward: Vec<u32> = (0..n).map(|x| lp.pw(x, m as i64) as u32).collect();
    let mut inverse = vec![u32::MAX; n];
    for (x, &y) in forward.iter().enumerate() {
        inverse[y as usize] = x as u32;
    }
    if let Some(witness) = inverse.iter().position(|&r| r == u32::MAX) {
        return Err(Error::NotDivisible { m, witness });
    }
    Ok(RootTable {
        m,
        forward,
        inverse,
    })
}

#[derive(Clone, Debug)]
pub struct HalfLoop {
    lp: Loop,
    roots: RootTable,
    bol: ItemReport,
}

impl HalfLoop {
    /// `Q(1/2)` as a Cayley loop on the same element labels.
    pub fn as_loop(&self) -> &Loop {
        &self.lp
    }

    pub fn roots(&self) -> &RootTable {
        &self.roots
    }

    /// The Bol identity check made during construction.
    pub fn bol(&self) -> &ItemReport {
        &self.bol
    }
}

/// Builds `Q(1/2)`. Refused unless the input is uniquely 2-divisible, passes
/// the Moufang suite and fits the Cayley cap; the table is then checked
/// against `x*(y*(x*z)) = (x*(y*x))*z`.
pub fn build_half_loop(lp: &Loop, plan: &SamplingPlan) -> Result<HalfLoop> {
    let roots = divisibility(lp, 2)?;
    build_with(lp, plan, roots, &check_moufang(lp, plan))
}

fn build_with(
    lp: &Loop,
    plan: &SamplingPlan,
    roots: RootTable,
    moufang: &SuiteReport,
) -> Result<HalfLoop> {
    if !moufang.passed() {
        return Err(Error::Refused(
            "Q(1/2) is only built for loops that pass the Moufang suite".into(),
        ));
    }
    let n = lp.order();
    if n > DEFAULT_EXPORT_CAP {
        return Err(Error::CapExceeded {
            order: n,
            cap: DEFAULT_EXPORT_CAP,
        });
    }
    let entries: Vec<usize> = (0..n * n)
        .map(|i| {
            let r = roots.root(i / n);
            lp.mul(lp.mul(r, i % n), r)
        })
        .collect();
    let half = Loop::from_table(format!("{}(1/2)", lp.name()), n, &entries)?;
    let bol = plan.scan(n, 3).run_one("bol", &|v: &[usize]| {
        let (x, y, z) = (v[0], v[1], v[2]);
        let m = |a, b| half.mul(a, b);
        Some(m(x, m(y, m(x, z))) == m(m(x, m(y, x)), z))
    });
    if !bol.passed() {
        return Err(Error::Refused(format!(
            "Q(1/2) fails the Bol identity at {:?}",
            bol.witnesses[0]
        )));
    }
    Ok(HalfLoop {
        lp: half,
        roots,
        bol,
    })
}

fn flag(name: &str, ok: bool, note: impl Into<String>) -> ItemReport {
    let mut item = ItemReport::new(name, Mode::Exhaustive);
    item.record(ok, Vec::new);
    item.with_note(note)
}

#[derive(Clone, Debug)]
pub struct HalfReport {
    pub suite: SuiteReport,
    /// `Q(1/2)` is commutative.
    pub commutative: bool,
    /// `Q(1/2)` is an abelian group.
    pub abelian: bool,
}

/// The lemma battery relating `Q` and `Q(1/2)`. Biconditionals are judged
/// by evaluating both sides on the same tuple set. Items that need class
/// at most 2 are vacuous otherwise.
pub fn half_suite(s: &Session) -> Result<HalfReport> {
    let lp = s.lp();
    let plan = s.plan();
    let roots = divisibility(lp, 2)?;
    let h = build_with(lp, plan, roots, s.moufang())?;
    let star = h.as_loop();
    let r = |x: usize| h.roots.root(x);
    let n = lp.order();
    let mut report = SuiteReport::new("half-bundle");
    report.push(h.bol.clone());

    let points = Scan::exhaustive(n, 1);
    let pairs = plan.scan(n, 2);
    let triples = plan.scan(n, 3);

    let mut items = points.run(
        &["neutral", "square", "powers"],
        &[
            &|v: &[usize]| Some(star.mul(0, v[0]) == v[0] && star.mul(v[0], 0) == v[0]),
            &|v: &[usize]| Some(star.mul(v[0], v[0]) == lp.pw(v[0], 2)),
            &|v: &[usize]| {
                let x = v[0];
                let mut acc = x;
                Some((2..=8).all(|k| {
                    acc = star.mul(x, acc);
                    acc == lp.pw(x, k)
                }))
            },
        ],
    );
    let nucleus = s.nucleus()?;
    let center = s.center();
    items.extend(pairs.run(
        &[
            "bracketings_agree",
            "commutative",
            "commutator_identity",
            "criterion.commutators_nuclear",
        ],
        &[
            &|v: &[usize]| {
                let (x, y) = (r(v[0]), v[1]);
                Some(lp.mul(lp.mul(x, y), x) == lp.mul(x, lp.mul(y, x)))
            },
            &|v: &[usize]| Some(star.mul(v[0], v[1]) == star.mul(v[1], v[0])),
            &|v: &[usize]| {
                let c = commutator(lp, v[0], v[1]);
                Some(lp.mul(c, v[0]) == lp.mul(v[0], c))
            },
            &|v: &[usize]| Some(nucleus.contains(commutator(lp, v[0], v[1]))),
        ],
    ));
    items.extend(triples.run(
        &[
            "associative",
            "criterion.associators_central",
            "criterion.iterated",
        ],
        &[
            &|v: &[usize]| {
                let (x, y, z) = (v[0], v[1], v[2]);
                Some(star.mul(star.mul(x, y), z) == star.mul(x, star.mul(y, z)))
            },
            &|v: &[usize]| Some(center.contains(associator(lp, v[0], v[1], v[2]))),
            &|v: &[usize]| {
                let (x, y, z) = (v[0], v[1], v[2]);
                let lhs = commutator(lp, commutator(lp, x, y), z);
                Some(lhs == lp.pw(associator(lp, x, y, z), 2))
            },
        ],
    ));
    // Properties of Q and Q(1/2) that may legitimately fail; only the
    // equivalences between them are asserted.
    const FACTS: [&str; 6] = [
        "commutative",
        "commutator_identity",
        "criterion.commutators_nuclear",
        "associative",
        "criterion.associators_central",
        "criterion.iterated",
    ];
    let (facts, mut items): (Vec<ItemReport>, Vec<ItemReport>) = items
        .into_iter()
        .partition(|i| FACTS.contains(&i.name.as_str()));
    for f in &facts {
        let mut line = format!("{}: {} ({} {})", f.name, f.passed(), f.checked, f.mode);
        if let Some(w) = f.witnesses.first() {
            line.push_str(&format!(", counterexample {w:?}"));
        }
        report.gate(line);
    }
    let passed = |name: &str| facts.iter().any(|i| i.name == name && i.passed());
    let commutative = passed("commutative");
    let identity = passed("commutator_identity");
    let abelian = commutative && passed("associative");
    let criterion = passed("criterion.commutators_nuclear")
        && passed("criterion.associators_central")
        && passed("criterion.iterated");
    items.push(flag(
        "commutative_iff",
        commutative == identity,
        format!("Q(1/2) commutative: {commutative}; [x,y]x = x[x,y]: {identity}"),
    ));
    items.push(flag(
        "abelian_iff",
        abelian == criterion,
        format!("Q(1/2) abelian group: {abelian}; criterion: {criterion}"),
    ));

    let class = s.class()?;
    report.gate(match class {
        Some(c) => format!("class {c}, at most 2 required for the aux and associator items"),
        None => "not nilpotent".into(),
    });
    let names = [
        "aux.conjugation",
        "aux.root_commutator",
        "associators_agree",
    ];
    if class.is_some_and(|c| c <= 2) {
        items.extend(pairs.run(
            &names[..2],
            &[
                &|v: &[usize]| {
                    let (x, y) = (v[0], v[1]);
                    let lhs = lp.mul(lp.mul(lp.inv(y), x), y);
                    Some(lhs == star.mul(x, commutator(lp, x, y)))
                },
                &|v: &[usize]| {
                    let (x, y) = (v[0], v[1]);
                    Some(commutator(lp, r(x), y) == r(commutator(lp, x, y)))
                },
            ],
        ));
        items.push(triples.run_one(names[2], &|v: &[usize]| {
            let (x, y, z) = (v[0], v[1], v[2]);
            Some(associator(lp, x, y, z) == associator(star, x, y, z))
        }));
    } else {
        for name in names {
            items.push(ItemReport::vacuous(name, "class exceeds 2"));
        }
    }
    for item in items {
        report.push(item);
    }
    Ok(HalfReport {
        suite: report,
        commutative,
        abelian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::preset;

    #[test]
    fn c3_roots() {
        let c3 = preset("c3").unwrap();
        let roots = divisibility(&c3, 2).unwrap();
        assert_eq!(roots.root(1), 2);
        let h = build_half_loop(&c3, &SamplingPlan::default()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(h.as_loop().mul(x, y), (x + y) % 3);
            }
        }
    }

    #[test]
    fn even_order_is_refused() {
        let c4 = preset("c4").unwrap();
        assert!(matches!(
            divisibility(&c4, 2),
            Err(Error::NotDivisible { m: 2, .. })
        ));
        assert!(build_half_loop(&c4, &SamplingPlan::default()).is_err());
    }

    #[test]
    fn heis27_half_is_abelian() {
        let s = Session::new(preset("heis27").unwrap(), SamplingPlan::default());
        let r = half_suite(&s).unwrap();
        assert!(r.suite.passed(), "{:?}", r.suite);
        assert!(r.abelian && r.commutative);
    }
}
