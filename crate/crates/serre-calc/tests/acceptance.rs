//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use serre_calc::characters::{collision_scan, digit_unique, CharCtx};
use serre_calc::monomial::{multfree_check, tau_dimension};
use serre_calc::repmodel::{chain_model, nonsplit_lattice, sigma_dual, subquot_char_identity};
use serre_calc::subset::{binomial, IndexSet};
use serre_calc::verify::{run, RunConfig, Status, Suite};
use serre_calc::weights::*;

const R: [u64; 4] = [10, 12, 14, 16];

fn params(f: usize, p: u64, j_rho: IndexSet, r: &[u64]) -> Params {
    Params::new(f, p, j_rho, r[..f].to_vec()).unwrap()
}

/// Runs suites and collects the ids of everything that did not pass.
fn suites(prm: &Params, list: &[Suite], jobs: usize) -> Vec<String> {
    let cfg = RunConfig::new(prm.clone(), list.to_vec(), None, jobs).unwrap();
    run(&cfg)
        .unwrap()
        .checks()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("f={} J_rho={} {} {}", prm.f(), prm.j_rho(), c.id, c.status))
        .collect()
}

fn every_j_rho(fs: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = (usize, IndexSet)> {
    fs.flat_map(|f| IndexSet::all(f).map(move |j| (f, j)))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    problems: Vec<String>,
    note: String,
}

fn criterion1() -> Outcome {
    let mut problems = Vec::new();
    for f in 1..=5 {
        let dss = enumerate_dss(f);
        let mut js: Vec<IndexSet> = dss.iter().map(LambdaTuple::j_set).collect();
        js.sort();
        js.dedup();
        if dss.len() != 1 << f || js.len() != 1 << f {
            problems.push(format!("D^ss at f = {f}"));
        }
        for j_rho in IndexSet::all(f) {
            let d = enumerate_d(&params(f, 61, j_rho, &[10, 12, 14, 16, 18])).len();
            if d != 1 << j_rho.len() {
                problems.push(format!("|D| = {d} at f = {f}, J_rho = {j_rho}"));
            }
        }
    }
    let brute = |f: usize| {
        (0..6usize.pow(f as u32))
            .map(|c| LambdaTuple::new((0..f).map(|j| Sym::from_index(c / 6usize.pow(j as u32) % 6)).collect()))
            .filter(LambdaTuple::in_pss)
            .count()
    };
    let sizes = [(enumerate_pss(1).len(), brute(1)), (enumerate_pss(2).len(), brute(2))];
    if sizes != [(4, 4), (10, 10)] {
        problems.push(format!("P^ss sizes {sizes:?}"));
    }
    for (f, j_rho) in every_j_rho(1..=4) {
        problems.extend(suites(&params(f, 61, j_rho, &R), &[Suite::Enumeration], 4));
    }
    Outcome { problems, note: "f <= 5, every J_rho".into() }
}

fn criterion2() -> Outcome {
    let mut problems = Vec::new();
    let vectors = |f: usize, b: i64| -> Vec<Vec<i64>> {
        (0..f).fold(vec![vec![]], |acc, _| {
            acc.into_iter()
                .flat_map(|v: Vec<i64>| {
                    (-b..=b).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect()
        })
    };
    let norm = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
    let mut pairs = 0;
    for p in [29, 61] {
        for f in 1..=3 {
            for a in vectors(f, 1).into_iter().filter(|a| norm(a) <= 3) {
                for b in vectors(f, 3).into_iter().filter(|b| norm(b) <= norm(&a)) {
                    pairs += 1;
                    if !digit_unique(&a, &b, p).unwrap() {
                        problems.push(format!("digit uniqueness p = {p}: {a:?} {b:?}"));
                    }
                }
            }
        }
    }
    let mut configs: Vec<(u64, Vec<u64>)> = vec![(61, R.to_vec())];
    for r0 in [5, 6, 7, 19, 20, 21] {
        for r1 in [5, 6, 7, 19, 20, 21] {
            configs.push((29, vec![r0, r1]));
        }
    }
    let (mut scans, mut numeric) = (0, 0);
    for (p, r) in &configs {
        for (f, j_rho) in every_j_rho(1..=2) {
            let prm = params(f, *p, j_rho, r);
            let ctx = CharCtx::new(&prm);
            let set = enumerate_p(&prm);
            for m in (1..=4).filter(|&m| prm.validate_genericity(m + 1)) {
                let scan = collision_scan(&set, m, &ctx).unwrap();
                scans += 1;
                numeric += scan.numeric_only().count();
                problems.extend(scan.violations().map(|h| format!("violation {} {} {:?}", h.lambda, h.mu, h.i)));
                for l in &set {
                    let t = l.t_type(j_rho).unwrap();
                    let movable: IndexSet = (0..f).filter(|&j| t[j] != TType::YZ).collect();
                    for s in movable.subsets().filter(|s| !s.is_empty()) {
                        let i: Vec<i32> = (0..f)
                            .map(|j| match (s.contains(j), t[j]) {
                                (false, _) => 0,
                                (true, TType::Z) => 1,
                                (true, _) => -1,
                            })
                            .collect();
                        let mu = l.shift_by_s(s, j_rho).unwrap();
                        if !scan.contains(l, &mu, &i) {
                            problems.push(format!("shift pair {l} -> {mu} not found"));
                        }
                    }
                }
            }
        }
    }
    Outcome {
        problems,
        note: format!("{pairs} digit pairs, {scans} scans, {numeric} numeric-only coincidences recorded"),
    }
}

fn criterion3() -> Outcome {
    let mut problems = Vec::new();
    for (f, j_rho) in every_j_rho(1..=4) {
        problems.extend(suites(&params(f, 61, j_rho, &R), &[Suite::Cycles], 8));
    }
    Outcome { problems, note: "total-mult, mult-add, additivity for f <= 4, every J_rho".into() }
}

fn criterion4() -> Outcome {
    let mut problems = Vec::new();
    for f in 1..=3 {
        problems.extend(suites(&params(f, 61, IndexSet::full(f), &R), &[Suite::Cm], 8));
    }
    Outcome { problems, note: "basic, I_d, Kunneth modules, shellings, negative control; f <= 3".into() }
}

fn criterion5() -> Outcome {
    let mut problems = Vec::new();
    for (f, j_rho) in every_j_rho(1..=2) {
        let list: &[Suite] = if j_rho.is_empty() { &[Suite::Resolutions, Suite::Tor] } else { &[Suite::Tor] };
        problems.extend(suites(&params(f, 61, j_rho, &R), list, 8));
    }
    Outcome { problems, note: "every t-pattern and J_rho for f <= 2".into() }
}

fn criterion6() -> Outcome {
    let mut problems = Vec::new();
    for (f, j_rho) in every_j_rho(1..=4) {
        let prm = params(f, 61, j_rho, &R);
        for n in 1..=f as u32 + 1 {
            for l in enumerate_p(&prm) {
                let (count, formula) = tau_dimension(&l, j_rho, n).unwrap();
                if count != formula {
                    problems.push(format!("dim {l} n = {n}: {count} vs {formula}"));
                }
            }
            if prm.validate_genericity(2 * n - 1) {
                let m = multfree_check(&prm, n).unwrap();
                if !m.holds() {
                    problems.push(format!("multfree f = {f}, J_rho = {j_rho}, n = {n}: {} collisions", m.collisions.len()));
                }
            }
        }
    }
    Outcome { problems, note: "n <= f + 1, f <= 4, every J_rho".into() }
}

fn criterion7() -> Outcome {
    let mut problems = Vec::new();
    for (f, j_rho) in every_j_rho(1..=4) {
        let prm = params(f, 61, j_rho, &R);
        let fi = f as i64;
        for i0 in -1..=fi {
            for i0p in i0 + 1..=fi {
                if !subquot_char_identity(&prm, i0, i0p).unwrap().holds() {
                    problems.push(format!("subquot f = {f}, J_rho = {j_rho}, ({i0}, {i0p})"));
                }
            }
            let s = nonsplit_lattice(&prm, i0).unwrap();
            let want: u64 = (0..=i0).map(|i| binomial(f as u64, i as u64)).sum();
            if s.d_xi_dim != want || (i0 == fi && s.d_xi_dim != 1 << f) {
                problems.push(format!("D_xi dim f = {f}, i0 = {i0}: {}", s.d_xi_dim));
            }
        }
        let c = chain_model(&prm, &(-1..=fi).collect::<Vec<_>>()).unwrap();
        if !c.holds() || c.length != f + 1 {
            problems.push(format!("maximal chain f = {f}, J_rho = {j_rho}"));
        }
        if j_rho == IndexSet::full(f) {
            problems.extend(suites(&prm, &[Suite::Lattice, Suite::Split, Suite::Chain], 8));
            for bits in 0u32..1 << (f + 1) {
                let sigma = (0..=f).filter(|i| bits >> i & 1 == 1).collect();
                if sigma_dual(f, &sigma_dual(f, &sigma)) != sigma {
                    problems.push(format!("sigma duality f = {f}, {sigma:?}"));
                }
            }
        }
    }
    Outcome { problems, note: "f <= 4, every J_rho".into() }
}

fn criterion8() -> Outcome {
    let mut problems = Vec::new();
    for (f, j_rho) in [(1, IndexSet::singleton(0)), (2, IndexSet::singleton(0)), (2, IndexSet::full(2))] {
        let prm = params(f, 61, j_rho, &R);
        let report = |jobs| {
            run(&RunConfig::new(prm.clone(), Suite::ALL.to_vec(), None, jobs).unwrap()).unwrap().without_timings().to_json()
        };
        if report(1) != report(8) {
            problems.push(format!("reports differ at f = {f}, J_rho = {j_rho}"));
        }
    }
    Outcome { problems, note: "all suites, jobs 1 vs 8".into() }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("enumeration", criterion1, Duration::from_secs(1)),
        ("character engine", criterion2, Duration::from_secs(30)),
        ("cycles", criterion3, Duration::from_secs(30)),
        ("commutative CM", criterion4, Duration::from_secs(120)),
        ("noncommutative Tor", criterion5, Duration::from_secs(300)),
        ("tau dimensions", criterion6, Duration::from_secs(30)),
        ("structural predictions", criterion7, Duration::from_secs(30)),
        ("determinism", criterion8, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    for (k, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let pass = out.problems.is_empty();
        println!(
            "criterion {}: {} {name} ({}; {:.2}s, budget {}s)",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            out.note,
            elapsed.as_secs_f64(),
            budget.as_secs(),
        );
        for p in out.problems.iter().take(10) {
            println!("    {p}");
        }
        if !pass {
            failed.push(k + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
