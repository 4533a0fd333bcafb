//! The acceptance battery. Each criterion prints one PASS or FAIL line;
//! the process exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use loopforge::analysis::{
    certify_bracket_forms, derived_subloop, quotient, t_plus_sign_counterexample,
    upper_central_series,
};
use loopforge::half::half_suite;
use loopforge::loops::{preset, GroupTable, PRESETS};
use loopforge::report::{Mode, Status, SuiteReport};
use loopforge::ring::{check_ring_axioms, parse_ring_spec, ring_preset, ring_preset_text};
use loopforge::sampling::SamplingPlan;
use loopforge::session::Session;
use loopforge::suites::{
    check_moufang, reverify, run_suite, theorem_harness, SuiteId, SuiteOptions, Theorem, Verdict,
};
use loopforge::Error;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn first_failure(r: &SuiteReport) -> String {
    r.failing()
        .next()
        .map(|i| format!("{} fails at {:?}", i.name, i.witnesses.first()))
        .unwrap_or_else(|| "no failing item".into())
}

fn session(name: &str) -> Result<Session, String> {
    Ok(Session::new(
        preset(name).map_err(err)?,
        SamplingPlan::default(),
    ))
}

fn verify_paper_binary() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_loopforge"))
        .arg("verify-paper")
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let get = |key: &str| {
        text.lines()
            .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" = ")))
            .unwrap_or("")
            .to_string()
    };
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}", out.status.code())
    })?;
    ensure(elapsed <= Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })?;
    let expected = [
        ("ring.ok", "true"),
        ("x1.size", "64"),
        ("x2.size", "64"),
        ("x3.size", "4"),
        ("loop.order", "16384"),
        ("moufang.ok", "true"),
        ("inn.order", "4096"),
        ("inn.abelian", "true"),
        ("inn.exponent", "4"),
        ("center.contains_x3", "true"),
        ("nucleus.contains_bc", "true"),
        ("class", "3"),
        ("suites.bruck_battery", "pass"),
        ("suites.t_compose", "pass"),
        ("verify.ok", "true"),
    ];
    for (key, want) in expected {
        let got = get(key);
        ensure(got == want, || format!("{key} = {got:?}, expected {want}"))?;
    }
    let e123 = get("triple_comm.e123");
    ensure(e123.starts_with("(0,0,") && e123 != "(0,0,0)", || {
        format!("triple_comm.e123 = {e123}")
    })?;
    Ok(format!(
        "{elapsed:.1?}, |Inn| 4096 abelian exponent 4, class 3, [[e1,e2],e3] = {e123}"
    ))
}

fn ring_axioms() -> Outcome {
    let spec = ring_preset("paper-z4").map_err(err)?;
    let r = check_ring_axioms(&spec);
    ensure(r.passed(), || first_failure(&r))?;
    let assoc = r.item("associativity").map_or(0, |i| i.checked);
    let anti = r.item("x1.anticommute").map_or(0, |i| i.checked);
    ensure(assoc == 343 && anti == 4096, || {
        format!("checked {assoc} and {anti}")
    })?;

    let text = ring_preset_text("paper-z4").ok_or("no ring preset text")?;
    let lines: Vec<&str> = text.lines().collect();
    let mut caught = 0;
    for (skip, line) in lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.starts_with("prod"))
    {
        let cut: String = lines
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, l)| format!("{l}\n"))
            .collect();
        let r = check_ring_axioms(&parse_ring_spec(&cut).map_err(err)?);
        let item = r
            .failing()
            .next()
            .ok_or_else(|| format!("deleting `{line}` went unnoticed"))?;
        ensure(!item.witnesses.is_empty(), || {
            format!("{} has no witness", item.name)
        })?;
        caught += 1;
    }
    ensure(caught == 12, || format!("{caught} product lines found"))?;
    Ok(format!(
        "343 associativity and 4096 anticommutation checks; all {caught} deletions caught"
    ))
}

fn moufang_z4() -> Outcome {
    let lp = preset("paper-z4").map_err(err)?;
    let start = Instant::now();
    let r = check_moufang(&lp, &SamplingPlan::default());
    let elapsed = start.elapsed();
    ensure(r.passed(), || first_failure(&r))?;
    ensure(elapsed <= Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    let sampled = r.item("moufang").map_or(0, |i| i.checked);
    let a_space = r.item("reduction.a_space").map_or(0, |i| i.checked);
    ensure(sampled >= 1_000_000, || format!("{sampled} sampled checks"))?;
    ensure(a_space == 262_144, || format!("{a_space} a-space checks"))?;
    let failures: u64 = r.items.iter().map(|i| i.failures).sum();
    Ok(format!(
        "{sampled} sampled, {a_space} a-space, {failures} failures, {elapsed:.1?}"
    ))
}

fn bracket_forms() -> Outcome {
    let lp = preset("paper-z4").map_err(err)?;
    let (r, cert) = certify_bracket_forms(&lp, &SamplingPlan::default()).map_err(err)?;
    ensure(r.passed() && cert.is_some(), || first_failure(&r))?;
    let (x, y) =
        t_plus_sign_counterexample(&lp).ok_or("the plus-sign form of T was not refuted")?;
    println!(
        "  note: T is certified as (a, b+2aa', c-ab'+ba'); the plus-sign variant fails at x={}, y={}",
        lp.render(x),
        lp.render(y)
    );
    Ok(format!("{} items certified", r.items.len()))
}

fn paper_z3() -> Outcome {
    let s = session("paper-z3")?;
    let inn = s.inn().map_err(err)?;
    ensure(!inn.is_abelian(), || "Inn is abelian".into())?;
    let th = theorem_harness(&s, Theorem::OddOrder).map_err(err)?;
    ensure(th.class == Some(3), || format!("class {:?}", th.class))?;
    ensure(th.verdict == Verdict::ContrapositiveConsistent, || {
        format!("verdict {}", th.verdict)
    })?;
    Ok(format!(
        "class 3, |Inn| {} nonabelian, {}",
        inn.order(),
        th.verdict
    ))
}

fn odd_order_controls() -> Outcome {
    let mut parts = Vec::new();
    for name in ["c3", "heis27", "cml81"] {
        let s = session(name)?;
        let th = theorem_harness(&s, Theorem::OddOrder).map_err(err)?;
        ensure(th.verdict == Verdict::Pass, || {
            format!("{name}: {}", th.verdict)
        })?;
        ensure(th.class.is_some_and(|c| c <= 2), || {
            format!("{name}: class {:?}", th.class)
        })?;
        parts.push(format!("{name} class {}", th.class.unwrap()));
    }
    let s = session("cml81")?;
    let table = s.inn().map_err(err)?.to_group_table(s.lp()).map_err(err)?;
    let inn_class = upper_central_series(table.as_loop(), None)
        .map_err(err)?
        .class();
    let class = s.class().map_err(err)?;
    ensure(inn_class.map(|c| c + 1) == class, || {
        format!("cl(Inn) = {inn_class:?}, cl = {class:?}")
    })?;
    Ok(format!(
        "{}; cml81 cl(Inn)+1 = {}",
        parts.join(", "),
        class.unwrap()
    ))
}

fn bruck_and_tsmall(z4: &Session) -> Outcome {
    let b = run_suite(z4, SuiteId::BruckBattery, SuiteOptions::default()).map_err(err)?;
    ensure(b.passed(), || first_failure(&b))?;
    let meta = b.item("all_or_none").ok_or("no all_or_none item")?;
    ensure(meta.status == Status::Pass, || "all_or_none fails".into())?;
    let t = run_suite(z4, SuiteId::TSmall, SuiteOptions::default()).map_err(err)?;
    ensure(t.passed(), || first_failure(&t))?;
    let small = t.item("small").ok_or("no small item")?;
    ensure(
        small.status == Status::Pass && small.checked == 100_000,
        || format!("small: {:?} on {}", small.status, small.checked),
    )?;
    Ok(format!(
        "{} battery items pass, all_or_none holds; small on {} tuples",
        b.items.len() - 1,
        small.checked
    ))
}

fn t_compose(z4: &Session) -> Outcome {
    let r = run_suite(z4, SuiteId::TCompose, SuiteOptions::default()).map_err(err)?;
    ensure(r.passed(), || first_failure(&r))?;
    let mut counts = Vec::new();
    for name in [
        "gate.small",
        "gate.commutators_nuclear",
        "gate.iterated",
        "law_yx",
        "law_xy",
    ] {
        let item = r.item(name).ok_or_else(|| format!("no {name} item"))?;
        ensure(item.status == Status::Pass, || {
            format!("{name}: {:?}", item.status)
        })?;
        counts.push(item.checked);
    }
    ensure(counts.iter().all(|&c| c == counts[0]), || {
        format!("sample sizes {counts:?}")
    })?;
    Ok(format!(
        "gates and both laws pass on the same {} tuples",
        counts[0]
    ))
}

fn half_loops() -> Outcome {
    let h = half_suite(&session("heis27")?).map_err(err)?;
    ensure(h.suite.passed() && h.abelian, || {
        format!("heis27: {}", first_failure(&h.suite))
    })?;
    ensure(
        h.suite.items.iter().all(|i| i.mode == Mode::Exhaustive),
        || "heis27 scans not exhaustive".into(),
    )?;
    let h = half_suite(&session("cml81")?).map_err(err)?;
    ensure(h.suite.passed() && h.commutative, || {
        format!("cml81: {}", first_failure(&h.suite))
    })?;
    let agree = h
        .suite
        .item("associators_agree")
        .ok_or("no associators_agree item")?;
    ensure(
        agree.status == Status::Pass && agree.checked == 531_441,
        || format!("associators_agree: {:?} on {}", agree.status, agree.checked),
    )?;
    let refusal = match half_suite(&session("paper-z4")?) {
        Ok(_) => return Err("paper-z4 was not refused".into()),
        Err(e) => e,
    };
    Ok(format!(
        "heis27 abelian; cml81 commutative, associators agree on 531441; paper-z4: {refusal}"
    ))
}

fn class2_bundle() -> Outcome {
    let s = session("cml81")?;
    let r = run_suite(&s, SuiteId::Class2Bundle, SuiteOptions::default()).map_err(err)?;
    ensure(r.passed(), || first_failure(&r))?;
    let n = s.lp().order() as u64;
    for item in &r.items {
        ensure(item.status == Status::Pass, || {
            format!("{}: {:?}", item.name, item.status)
        })?;
        let enough = match item.mode {
            Mode::Exhaustive => item.checked >= n,
            _ => item.checked >= 500_000,
        };
        ensure(enough, || {
            format!("{}: {} checks ({})", item.name, item.checked, item.mode)
        })?;
    }
    let exhaustive = r
        .items
        .iter()
        .filter(|i| i.mode == Mode::Exhaustive)
        .count();
    Ok(format!(
        "{} items, {exhaustive} exhaustive, the rest on at least 500000",
        r.items.len()
    ))
}

fn structure_consistency() -> Outcome {
    let mut seen = Vec::new();
    for &name in PRESETS {
        let s = session(name)?;
        let lp = s.lp();
        if lp.order() > 4096 {
            continue;
        }
        let z = s.center();
        let fixed = s.inn().map_err(err)?.fixed_points(lp);
        ensure(z.elements() == fixed.elements(), || {
            format!("{name}: center {} vs fixed points {}", z.len(), fixed.len())
        })?;
        let d =
            derived_subloop(lp, s.inner_generators().map_err(err)?, s.form_cert()).map_err(err)?;
        let class = s.class().map_err(err)?;
        ensure(class.is_some_and(|c| c <= 2) == d.is_subset_of(z), || {
            format!("{name}: class {class:?}, |Q'| {}, |Z| {}", d.len(), z.len())
        })?;
        let q = quotient(lp, z).map_err(|e| format!("{name}: Q/Z: {e}"))?;
        ensure(q.fully_checked, || format!("{name}: Q/Z not fully checked"))?;
        for term in &s.series().map_err(err)?.terms {
            let q = quotient(lp, term).map_err(|e| format!("{name}: Q/Z_i: {e}"))?;
            ensure(q.fully_checked, || {
                format!("{name}: Q/Z_i not fully checked")
            })?;
        }
        seen.push(name);
    }
    ensure(seen.contains(&"paper-z3"), || "paper-z3 was skipped".into())?;
    Ok(format!("{} loops: {}", seen.len(), seen.join(",")))
}

fn controls() -> Outcome {
    let lp = preset("nassoc5").map_err(err)?;
    let a = check_moufang(&lp, &SamplingPlan::default());
    let b = check_moufang(&lp, &SamplingPlan::default());
    let item = a
        .failing()
        .next()
        .ok_or("nassoc5 passes the Moufang suite")?;
    let w = item.witnesses.first().ok_or("no witness")?.clone();
    ensure(
        b.failing().next().and_then(|i| i.witnesses.first()) == Some(&w),
        || "witness differs between runs".into(),
    )?;
    let s = Session::new(lp, SamplingPlan::default());
    let again = reverify(&s, SuiteId::Moufang, &item.name, &w).map_err(err)?;
    ensure(again == Some(false), || format!("reverify gave {again:?}"))?;

    let s = session("chein-s3")?;
    ensure(s.is_moufang(), || first_failure(s.moufang()))?;
    ensure(GroupTable::verify(s.lp().clone(), None).is_err(), || {
        "chein-s3 is associative".into()
    })?;
    let class = s.class().map_err(err)?;
    ensure(class.is_none(), || format!("chein-s3 has class {class:?}"))?;
    Ok(format!(
        "nassoc5 fails {} at {w:?} reproducibly; chein-s3 Moufang, nonassociative, not nilpotent",
        item.name
    ))
}

fn main() {
    let z4 = Session::new(preset("paper-z4").expect("preset"), SamplingPlan::default());
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(verify_paper_binary)),
        (2, Box::new(ring_axioms)),
        (3, Box::new(moufang_z4)),
        (4, Box::new(bracket_forms)),
        (5, Box::new(paper_z3)),
        (6, Box::new(odd_order_controls)),
        (7, Box::new(|| bruck_and_tsmall(&z4))),
        (8, Box::new(|| t_compose(&z4))),
        (9, Box::new(half_loops)),
        (10, Box::new(class2_bundle)),
        (11, Box::new(structure_consistency)),
        (12, Box::new(controls)),
    ];
    let mut failed = Vec::new();
    for (k, f) in &criteria {
        match f() {
            Ok(detail) => println!("criterion {k} PASS: {detail}"),
            Err(detail) => {
                println!("criterion {k} FAIL: {detail}");
                failed.push(*k);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
