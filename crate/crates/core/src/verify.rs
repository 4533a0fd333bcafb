//! End-to-end reproduction for a ring: build the triple loop and confirm
//! the structure claimed for it.
//!
//! Every stage is run when its inputs exist, and each failing stage is
//! named in the report together with its first witness. Stage checks are
//! internal consistency conditions that make sense for any ring; the
//! specific values for a given ring are left to the caller to compare.

use crate::analysis::{commutator, t_plus_sign_counterexample};
use crate::loops::{build_bruck_loop, TripleElement, TripleLoop};
use crate::report::{Report, SuiteReport};
use crate::ring::{check_ring_axioms, graded_parts, RingSpec};
use crate::sampling::SamplingPlan;
use crate::session::Session;
use crate::suites::{run_suite, theorem_harness, SuiteId, SuiteOptions, Theorem, Verdict};

pub const EXPECTED_CLASS: usize = 3;

#[derive(Clone, Debug)]
pub struct Verification {
    pub report: Report,
    /// Names of failing stages, in pipeline order.
    pub failed: Vec<String>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

struct Pipeline {
    report: Report,
    failed: Vec<String>,
}

impl Pipeline {
    fn stage(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.report.push(format!("stage.{name}.witness"), witness());
            self.failed.push(name.to_string());
        }
    }

    fn suite(&mut self, name: &str, suite: &SuiteReport) {
        if !suite.passed() {
            suite.render_into(&format!("detail.{name}"), &mut self.report);
            let first = suite
                .failing()
                .next()
                .map(|i| format!("{} at {:?}", i.name, i.witnesses.first()))
                .unwrap_or_default();
            self.stage(name, false, || first);
        }
    }

    fn finish(mut self) -> Verification {
        let failed = if self.failed.is_empty() {
            "none".to_string()
        } else {
            self.failed.join(",")
        };
        self.report.push("stages.failed", failed);
        self.report.push("verify.ok", self.failed.is_empty());
        Verification {
            report: self.report,
            failed: self.failed,
        }
    }
}

/// `(e, 0, 0)` for the `i`-th basis vector, when it lies in `X₁`.
fn lifted_basis(t: &TripleLoop, i: usize) -> Option<usize> {
    let a = t.parts().x1.index_of(&t.spec().basis(i))?;
    Some(t.encode(TripleElement { a, b: 0, c: 0 }))
}

/// `H = X₁ × X₂` is commutative iff `4uu' = 0` for all `u, u'`.
fn h_is_abelian(t: &TripleLoop) -> bool {
    let n1 = t.sizes().0;
    (0..n1).all(|u| (0..n1).all(|w| t.h_mul((u, 0), (w, 0)) == t.h_mul((w, 0), (u, 0))))
}

pub fn verify_paper(spec: &RingSpec, plan: &SamplingPlan) -> Verification {
    let mut p = Pipeline {
        report: Report::new(),
        failed: Vec::new(),
    };

    let axioms = check_ring_axioms(spec);
    p.report.push("ring.ok", axioms.passed());
    if !axioms.passed() {
        p.suite("ring", &axioms);
        return p.finish();
    }

    let parts = match graded_parts(spec) {
        Ok(parts) => parts,
        Err(e) => {
            p.stage("parts", false, || e.to_string());
            return p.finish();
        }
    };
    let (n1, n2, n3) = (parts.x1.len(), parts.x2.len(), parts.x3.len());
    p.report.push("x1.size", n1);
    p.report.push("x2.size", n2);
    p.report.push("x3.size", n3);

    let lp = match build_bruck_loop(spec) {
        Ok(lp) => lp,
        Err(e) => {
            p.stage("loop", false, || e.to_string());
            return p.finish();
        }
    };
    p.report.push("loop.order", lp.order());
    p.stage("loop", lp.order() == n1 * n2 * n3, || {
        format!("order {} is not {n1}·{n2}·{n3}", lp.order())
    });
    let s = Session::new(lp, plan.clone());
    let lp = s.lp();
    let t = lp.as_triple().expect("built from a ring");

    p.report.push("moufang.ok", s.is_moufang());
    p.suite("moufang", s.moufang());

    let (forms, form_cert) = s.forms().expect("triple loop");
    p.report.push("forms.certified", form_cert.is_some());
    p.suite("forms", forms);
    if let Some((x, y)) = t_plus_sign_counterexample(lp) {
        p.report.push(
            "forms.t_sign_note",
            format!(
                "xT(y) = (a, b+2aa', c+ab'+ba') fails at x={}, y={}; c-ab'+ba' is certified",
                lp.render(x),
                lp.render(y)
            ),
        );
    }

    let (inner, inner_cert) = s.inner_form().expect("triple loop");
    p.report.push("inn.certified", inner_cert.is_some());
    p.suite("inner_form", inner);
    match s.inn() {
        Ok(inn) => {
            p.report.push("inn.order", inn.order());
            p.report.push("inn.abelian", inn.is_abelian());
            p.report.push("inn.exponent", inn.exponent());
            let h_abelian = h_is_abelian(t);
            p.stage(
                "inn",
                inn.order() == n1 * n2 && inn.is_abelian() == h_abelian,
                || {
                    format!(
                        "|Inn| = {}, |H| = {}, H abelian: {h_abelian}",
                        inn.order(),
                        n1 * n2
                    )
                },
            );
        }
        Err(e) => p.stage("inn", false, || e.to_string()),
    }

    let center = s.center();
    let x3_missing = (0..n3)
        .map(|c| t.encode(TripleElement { a: 0, b: 0, c }))
        .find(|&x| !center.contains(x));
    p.report.push("center.contains_x3", x3_missing.is_none());
    p.report.push("center.order", center.len());
    p.stage("center", x3_missing.is_none(), || {
        format!("{} is not central", lp.render(x3_missing.unwrap_or(0)))
    });
    match s.nucleus() {
        Ok(nuc) => {
            let missing = (0..n2 * n3)
                .map(|i| {
                    t.encode(TripleElement {
                        a: 0,
                        b: i / n3,
                        c: i % n3,
                    })
                })
                .find(|&x| !nuc.contains(x));
            p.report.push("nucleus.contains_bc", missing.is_none());
            p.report.push("nucleus.order", nuc.len());
            p.stage("nucleus", missing.is_none(), || {
                format!("{} is not nuclear", lp.render(missing.unwrap_or(0)))
            });
        }
        Err(e) => {
            p.report.push("nucleus.contains_bc", false);
            p.stage("nucleus", false, || e.to_string());
        }
    }

    let basis: Vec<usize> = spec
        .x1_basis()
        .iter()
        .take(3)
        .filter_map(|&i| lifted_basis(t, i))
        .collect();
    if basis.len() == 3 {
        let v = commutator(lp, commutator(lp, basis[0], basis[1]), basis[2]);
        p.report.push("triple_comm.e123", lp.render(v));
        let (e1, e2, e3) = (
            spec.basis(spec.x1_basis()[0]),
            spec.basis(spec.x1_basis()[1]),
            spec.basis(spec.x1_basis()[2]),
        );
        let prod = spec.mul(&spec.mul(&e1, &e2), &e3);
        let expected = t
            .parts()
            .x3
            .index_of(&spec.add(&prod, &prod))
            .map(|c| t.encode(TripleElement { a: 0, b: 0, c }));
        p.stage("triple_comm", v != 0 && Some(v) == expected, || {
            format!(
                "[[e1,e2],e3] = {}, expected (0,0,2·e1e2e3) ≠ 1",
                lp.render(v)
            )
        });
    } else {
        p.stage("triple_comm", false, || {
            "X1 has fewer than three basis vectors".into()
        });
    }

    match s.class() {
        Ok(class) => {
            p.report.push(
                "class",
                class.map_or("not-nilpotent".to_string(), |c| c.to_string()),
            );
            p.report.push(
                "series.orders",
                format!("{:?}", s.series().map(|c| c.orders()).unwrap_or_default()),
            );
            p.stage("class", class == Some(EXPECTED_CLASS), || {
                format!("class {class:?}")
            });
        }
        Err(e) => p.stage("class", false, || e.to_string()),
    }

    for (key, id) in [
        ("suites.bruck_battery", SuiteId::BruckBattery),
        ("suites.t_compose", SuiteId::TCompose),
    ] {
        match run_suite(&s, id, SuiteOptions::default()) {
            Ok(r) => {
                p.report.push(key, if r.passed() { "pass" } else { "fail" });
                p.suite(&id.to_string(), &r);
            }
            Err(e) => {
                p.report.push(key, "error");
                p.stage(&id.to_string(), false, || e.to_string());
            }
        }
    }

    match theorem_harness(&s, Theorem::OddOrder) {
        Ok(th) => {
            p.report.push("theorem.odd_order", th.verdict);
            p.stage("theorem", th.verdict != Verdict::Violation, || {
                "hypotheses hold but class exceeds 2".into()
            });
        }
        Err(e) => p.stage("theorem", false, || e.to_string()),
    }
    p.finish()
}
