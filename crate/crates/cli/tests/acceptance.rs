//! Acceptance suite: one PASS/FAIL line per criterion.

#![allow(clippy::absurd_extreme_comparisons)]

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use lccc::adjunction::{
    check_chain, check_chain_with_fault, check_composite_sum, check_currying, diagonal_product_adjunction,
    slice_exp_as_composite, CheckConfig, Fault, LawReport,
};
use lccc::depprod::{compare_dependent_products, dependent_product_fiberwise, dependent_sum};
use lccc::exponentials::exp;
use lccc::finset::{
    compose, fiber_indices, fiber_sizes, hom_count, hom_set, identity, map_equal, product, unique_to_terminal,
};
use lccc::instances::{family_with_fibers, Sampler};
use lccc::limits::{mediator, pullback, Cospan};
use lccc::{FinMap, FinSet, Result};

/// Law failures tolerated by every certification criterion.
const MAX_FAILURES: u64 = 0;
/// Required detection rate for injected faults.
const DETECTION_RATE: f64 = 1.0;
/// Wall-clock budget for the whole suite, in seconds.
const TIME_BUDGET_SECS: f64 = 60.0;

const SEED: u64 = 0;
const RANDOM_COSPANS: usize = 200;
const RANDOM_CHAIN_MAPS: usize = 50;
const RANDOM_PRODUCTS: usize = 50;
const RANDOM_CARDINALITIES: usize = 100;
const MAX_CONE: usize = 2;
/// Enumeration limit for the slice-exponential checks; `!: B → 1` with `|B| = 3`
/// needs 13824 items.
const SLICE_EXP_LIMIT: usize = 100_000;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }

    fn laws(report: &LawReport, what: &str) -> Self {
        let mut detail = format!(
            "{}: {} checks, {} failures",
            what,
            report.checked,
            report.failure_count()
        );
        if let Some(first) = report.failures.first() {
            detail += &format!("; first: {} at {} ({})", first.law, first.instance, first.witness);
        }
        Outcome::new(report.failure_count() <= MAX_FAILURES, detail)
    }
}

fn cfg() -> CheckConfig {
    CheckConfig {
        seed: SEED,
        ..CheckConfig::default()
    }
}

fn running() -> FinMap {
    let b = FinSet::from_labels("B", &["b1", "b2", "b3"]).unwrap();
    let a = FinSet::from_labels("A", &["a1", "a2"]).unwrap();
    FinMap::from_pairs(b, a, &[("b1", "a1"), ("b2", "a1"), ("b3", "a2")])
        .unwrap()
        .with_name("f")
}

fn maps_into(name: &str, prefix: &str, max_dom: usize, cod: &FinSet) -> Vec<FinMap> {
    (0..=max_dom)
        .flat_map(|n| hom_set(&FinSet::numbered(name, prefix, n), cod, usize::MAX).unwrap())
        .collect()
}

/// Every cospan with `|A| ≤ 2` and `|B|, |C| ≤ 3`, then seeded random ones.
fn cospans() -> Vec<Cospan> {
    let mut out = Vec::new();
    for na in 0..=2 {
        let a = FinSet::numbered("A", "a", na);
        let bs = maps_into("B", "b", 3, &a);
        let cs = maps_into("C", "c", 3, &a);
        for f in &bs {
            for g in &cs {
                out.push(Cospan::new(f.clone(), g.clone()).unwrap());
            }
        }
    }
    let mut sampler = Sampler::new(SEED);
    for _ in 0..RANDOM_COSPANS {
        let a = FinSet::numbered("A", "a", sampler.between(1, 2));
        let (nb, nc) = (sampler.between(0, 3), sampler.between(0, 3));
        out.push(Cospan::new(sampler.map_into("B", "b", nb, &a), sampler.map_into("C", "c", nc, &a)).unwrap());
    }
    out
}

/// The identity, `!: B → 1` for `|B| ≤ 3`, and the running example.
fn fixed_suite() -> Vec<FinMap> {
    let mut out = vec![identity(running().dom()).with_name("id")];
    for n in 0..=3 {
        out.push(unique_to_terminal(&FinSet::numbered("B", "b", n)).with_name("!"));
    }
    out.push(running());
    out
}

fn chain_suite() -> Vec<FinMap> {
    let mut out = fixed_suite();
    let mut sampler = Sampler::new(SEED);
    out.extend((0..RANDOM_CHAIN_MAPS).map(|_| sampler.map(3, 2)));
    out
}

fn universal_property() -> Result<Outcome> {
    let (mut cones, mut bad) = (0usize, Vec::new());
    let all = cospans();
    for c in &all {
        let pb = pullback(c);
        for w in (0..=MAX_CONE).map(|n| FinSet::numbered("W", "w", n)) {
            let candidates = hom_set(&w, &pb.carrier, usize::MAX)?;
            for p2 in hom_set(&w, c.f.dom(), usize::MAX)? {
                for q2 in hom_set(&w, c.g.dom(), usize::MAX)? {
                    if !map_equal(&compose(&c.f, &p2)?, &compose(&c.g, &q2)?) {
                        continue;
                    }
                    cones += 1;
                    let mut factoring = Vec::new();
                    for u in &candidates {
                        if map_equal(&compose(&pb.p, u)?, &p2) && map_equal(&compose(&pb.q, u)?, &q2) {
                            factoring.push(u);
                        }
                    }
                    let m = mediator(c, &pb, &p2, &q2)?;
                    if factoring.len() != 1 || !map_equal(factoring[0], &m) {
                        bad.push(format!("{:?} / {:?}", c.f, c.g));
                    }
                }
            }
        }
    }
    Ok(Outcome::new(
        bad.len() as u64 <= MAX_FAILURES,
        format!(
            "{} cospans, {} cones, {} without a unique mediator",
            all.len(),
            cones,
            bad.len()
        ),
    ))
}

fn fibered_product_formula() -> Result<Outcome> {
    let all = cospans();
    let mismatches = all
        .iter()
        .filter(|c| {
            let (fs, gs) = (fiber_sizes(&c.f), fiber_sizes(&c.g));
            let expected: usize = fs.iter().zip(&gs).map(|(x, y)| x * y).sum();
            pullback(c).carrier.len() != expected
        })
        .count();
    Ok(Outcome::new(
        mismatches == 0,
        format!("{} cospans, {} mismatches", all.len(), mismatches),
    ))
}

fn currying() -> Result<Outcome> {
    let sizes = 0..=2;
    let mut failures = 0u64;
    let mut checked = 0u64;
    for nx in sizes.clone() {
        for ny in sizes.clone() {
            for nz in sizes.clone() {
                let (x, y, z) = (
                    FinSet::numbered("X", "x", nx),
                    FinSet::numbered("Y", "y", ny),
                    FinSet::numbered("Z", "z", nz),
                );
                let e = exp(&y, &z, usize::MAX)?;
                let xy = product(&x, &y).object;
                failures += u64::from(hom_count(&xy, &z) != hom_count(&x, &e.carrier));
                for u in hom_set(&xy, &z, usize::MAX)? {
                    checked += 1;
                    failures += u64::from(!map_equal(&e.uncurry(&e.curry(&x, &u)?)?, &u));
                }
                for v in hom_set(&x, &e.carrier, usize::MAX)? {
                    checked += 1;
                    failures += u64::from(!map_equal(&e.curry(&x, &e.uncurry(&v)?)?, &v));
                }
            }
        }
    }
    let report = check_currying(2, &cfg())?;
    let mut out = Outcome::laws(&report, "(−)×Y ⊣ (−)^Y certified");
    out.detail += &format!("; {checked} round trips, {failures} failures");
    out.pass &= failures <= MAX_FAILURES;
    Ok(out)
}

fn chain_certification() -> Result<Outcome> {
    let suite = chain_suite();
    let mut report = LawReport::new();
    for f in &suite {
        report.merge(check_chain(f, &cfg())?);
    }
    Ok(Outcome::laws(&report, &format!("{} maps", suite.len())))
}

fn product_equivalence() -> Result<Outcome> {
    let mut instances = Vec::new();
    for na in 0..=2 {
        let a = FinSet::numbered("A", "a", na);
        for f in maps_into("B", "b", 3, &a) {
            let n = f.dom().len();
            for code in 0..3usize.pow(n as u32) {
                let sizes: Vec<usize> = (0..n).map(|i| code / 3usize.pow(i as u32) % 3).collect();
                instances.push((f.clone(), family_with_fibers(f.dom(), &sizes, "e")));
            }
        }
    }
    let mut sampler = Sampler::new(SEED);
    for _ in 0..RANDOM_PRODUCTS {
        let f = sampler.map(3, 2);
        let p = sampler.family(f.dom(), 2, "e");
        instances.push((f, p));
    }
    let mut failures = 0usize;
    for (f, p) in &instances {
        let c = compare_dependent_products(f, p, usize::MAX)?;
        failures +=
            usize::from(!c.round_trips() || c.fiberwise.object.fiber_sizes() != c.via_pullback.object.fiber_sizes());
    }
    let f = running();
    let p = family_with_fibers(f.dom(), &[2, 1, 0], "e");
    let c = compare_dependent_products(&f, &p, usize::MAX)?;
    let routes = (c.fiberwise.object.fiber_sizes(), c.via_pullback.object.fiber_sizes());
    let running_ok = routes.0 == [2, 0] && routes.1 == [2, 0] && c.round_trips();
    Ok(Outcome::new(
        failures == 0 && running_ok,
        format!(
            "{} instances, {} failures; running example fibers {:?} and {:?}",
            instances.len(),
            failures,
            routes.0,
            routes.1
        ),
    ))
}

fn cardinality_laws() -> Result<Outcome> {
    let mut sampler = Sampler::new(SEED.wrapping_add(6));
    let (mut failures, mut empty_products, mut annihilated) = (0usize, 0usize, 0usize);
    for _ in 0..RANDOM_CARDINALITIES {
        let f = sampler.map(3, 2);
        let p = sampler.family(f.dom(), 3, "e");
        let sizes = p.fiber_sizes();
        let sum = dependent_sum(&f).obj(&p)?.fiber_sizes();
        let prod = dependent_product_fiberwise(&f, &p, usize::MAX)?.object.fiber_sizes();
        for (a, bs) in fiber_indices(&f).iter().enumerate() {
            let s: usize = bs.iter().map(|&b| sizes[b]).sum();
            let m: usize = bs.iter().map(|&b| sizes[b]).product();
            failures += usize::from(sum[a] != s || prod[a] != m);
            if bs.is_empty() {
                empty_products += 1;
                failures += usize::from(prod[a] != 1);
            }
            if bs.iter().any(|&b| sizes[b] == 0) {
                annihilated += 1;
                failures += usize::from(prod[a] != 0);
            }
        }
    }
    Ok(Outcome::new(
        failures == 0,
        format!(
            "{RANDOM_CARDINALITIES} instances, {failures} mismatches ({empty_products} empty products, {annihilated} annihilated fibers)"
        ),
    ))
}

fn slice_exponential() -> Result<Outcome> {
    let suite = fixed_suite();
    let mut report = LawReport::new();
    for f in &suite {
        let cfg = CheckConfig {
            limit: SLICE_EXP_LIMIT,
            ..cfg()
        };
        report.merge(slice_exp_as_composite(f, &cfg)?);
    }
    Ok(Outcome::laws(&report, &format!("{} maps", suite.len())))
}

fn composite_adjunctions() -> Result<Outcome> {
    let f = running();
    let a = f.cod().clone();
    let to_one = unique_to_terminal(&a).with_name("!");
    let c = FinSet::numbered("C", "c", 3);
    let onto_b = FinMap::new(c, f.dom().clone(), vec![0, 0, 2])?.with_name("h");
    let pairs = [
        (f.clone(), to_one),
        (identity(f.dom()).with_name("id"), f.clone()),
        (onto_b, f.clone()),
    ];
    let mut report = LawReport::new();
    for (first, second) in &pairs {
        report.merge(check_composite_sum(first, second, &cfg())?);
    }
    Ok(Outcome::laws(&report, &format!("{} composable pairs", pairs.len())))
}

fn diagonal() -> Result<Outcome> {
    Ok(Outcome::laws(&diagonal_product_adjunction(&cfg())?, "sizes ≤ 2"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn lccc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lccc"))
        .args(args)
        .env_remove("LCCC_LIMIT")
        .output()
        .expect("binary runs")
}

fn eval_fibers(file: &str) -> Option<Vec<u64>> {
    let out = lccc(&["eval", &fixture(file), "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).ok()?;
    v["result"]["fiber_sizes"]
        .as_array()?
        .iter()
        .map(|x| x.as_u64())
        .collect()
}

fn dsl_end_to_end() -> Result<Outcome> {
    let sum = eval_fibers("running-sum.dtt");
    let pi = eval_fibers("running.dtt");
    let pull = eval_fibers("running-pull.dtt");
    let original = eval_fibers("running-obj.dtt");
    let mut pass =
        sum.as_deref() == Some(&[3, 0]) && pi.as_deref() == Some(&[2, 0]) && pull.is_some() && pull == original;
    let mut diagnosed = 0;
    let errors: Vec<_> = std::fs::read_dir(fixture("errors"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    for path in &errors {
        let out = lccc(&["eval", path.to_str().unwrap()]);
        let stderr = String::from_utf8_lossy(&out.stderr).to_string();
        let positioned = stderr
            .split(':')
            .collect::<Vec<_>>()
            .windows(2)
            .any(|w| w[0].trim().parse::<u32>().is_ok() && w[1].trim().parse::<u32>().is_ok());
        if out.status.code() == Some(2) && positioned && out.stdout.is_empty() {
            diagnosed += 1;
        }
    }
    pass &= diagnosed == errors.len() && !errors.is_empty();
    Ok(Outcome::new(
        pass,
        format!(
            "Sum {sum:?}, Pi {pi:?}, Pull(id) {pull:?} vs {original:?}; {diagnosed}/{} error fixtures diagnosed with exit 2",
            errors.len()
        ),
    ))
}

fn negative_controls() -> Result<Outcome> {
    let (mut total, mut detected) = (0usize, 0usize);
    for fault in Fault::ALL {
        total += 1;
        let out = lccc(&[
            "adjoint-check",
            &fixture(&format!("corrupted-{}.json", fault.name())),
            "f",
        ]);
        detected += usize::from(out.status.code() == Some(1));
    }
    let shipped = detected;
    for f in [running(), unique_to_terminal(&FinSet::numbered("B", "b", 2))] {
        for fault in Fault::ALL {
            total += 1;
            detected += usize::from(!check_chain_with_fault(&f, fault, &cfg())?.passed());
        }
    }
    let rate = detected as f64 / total as f64;
    Ok(Outcome::new(
        rate >= DETECTION_RATE,
        format!(
            "{detected}/{total} injected faults detected ({shipped}/{} shipped fixtures)",
            Fault::ALL.len()
        ),
    ))
}

fn determinism() -> Result<Outcome> {
    let running = fixture("running.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["pullback", &running, "f", "g"],
        vec!["sigma", &running, "f", "p"],
        vec!["pi", &running, "f", "p"],
        vec!["pull", &running, "f", "y"],
        vec!["exp", &running, "X", "Y", "--ev"],
        vec!["adjoint-check", &running, "f", "--seed", "3"],
        vec!["adjoint-check", &running, "f", "--slice-exp"],
    ];
    let dsl = fixture("running.dtt");
    let mut runs = runs;
    runs.push(vec!["eval", &dsl]);
    let mut identical = 0;
    for args in &runs {
        let mut all = args.clone();
        all.extend(["--format", "structured"]);
        let (a, b) = (lccc(&all), lccc(&all));
        identical += usize::from(a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty());
    }
    Ok(Outcome::new(
        identical == runs.len(),
        format!("{identical}/{} commands byte-identical across two runs", runs.len()),
    ))
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 12] = [
        ("pullback universal property", universal_property),
        ("fibered-product formula", fibered_product_formula),
        ("currying adjunction", currying),
        ("chain certification", chain_certification),
        ("dependent-product equivalence", product_equivalence),
        ("sum and product cardinalities", cardinality_laws),
        ("slice exponential as composite", slice_exponential),
        ("composition of adjunctions", composite_adjunctions),
        ("diagonal and product", diagonal),
        ("DSL end to end", dsl_end_to_end),
        ("negative controls", negative_controls),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        failed += usize::from(!outcome.pass);
        println!(
            "{} criterion {:>2} {}: {} [{:.2}s]",
            if outcome.pass { "PASS" } else { "FAIL" },
            i + 1,
            name,
            outcome.detail,
            t.elapsed().as_secs_f64()
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("total {elapsed:.2}s (budget {TIME_BUDGET_SECS:.0}s)");
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
