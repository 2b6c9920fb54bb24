//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or runs past its time limit.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use genset_core::arith::{binomial_u128, ratio};
use genset_core::kneser::turan::complete_multipartite;
use genset_core::*;

type Outcome = Result<String, String>;
type RunResult = Result<(Option<i32>, Vec<u8>, Vec<u8>), String>;
type Criterion = (&'static str, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ac1_canonical_sizes() -> Outcome {
    let mut checked = 0;
    for n in 1..=24u32 {
        for k in 1..=n {
            let partition = CanonicalPartition::new(n, k).map_err(err)?;
            let formula: u64 = partition.class_sizes().map(|c| (1u64 << c) - 1).sum();
            let size = canonical_size(n, k).map_err(err)?;
            let built = canonical_generator(n, k).map_err(err)?.len() as u64;
            ensure(size == formula && built == formula, || {
                format!("n={n} k={k}: size {size}, built {built}, formula {formula}")
            })?;
            if n % k == 0 {
                let even = k as u64 * ((1u64 << (n / k)) - 1);
                ensure(size == even, || format!("n={n} k={k}: {size} != {even}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (n,k) pairs"))
}

fn ac2_construction_generates() -> Outcome {
    let limits = Limits::default();
    let mut checked = 0;
    for n in 1..=20u32 {
        for k in 1..=4u32.min(n) {
            let f = canonical_generator(n, k).map_err(err)?;
            let v = is_k_generator(&f, k as usize, &limits).map_err(err)?;
            ensure(v.holds, || format!("n={n} k={k}: {:?} not generated", v.counterexample))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} constructions verified"))
}

fn ac3_conjecture_small_cases() -> Outcome {
    let limits = Limits::default();
    let cases = [(2, 2, 2), (3, 2, 4), (4, 2, 6), (5, 2, 10), (3, 3, 3), (4, 3, 5), (4, 4, 4), (5, 3, 7)];
    let mut found = Vec::new();
    for (n, k, expected) in cases {
        let r = min_generator_size(n, k, &limits).map_err(err)?;
        ensure(r.conclusive, || format!("n={n} k={k}: inconclusive"))?;
        ensure(r.minimum == expected && r.minimum == r.canonical_size, || {
            format!("n={n} k={k}: minimum {} canonical {} expected {expected}", r.minimum, r.canonical_size)
        })?;
        ensure(r.trivial_bound <= r.minimum, || format!("n={n} k={k}: trivial bound above minimum"))?;
        let (w, _) = SetFamily::new(n, r.witness.iter().copied()).map_err(err)?;
        ensure(is_k_generator(&w, k as usize, &limits).map_err(err)?.holds, || format!("n={n} k={k}: bad witness"))?;
        found.push(format!("({n},{k})={}", r.minimum));
    }
    Ok(found.join(" "))
}

fn ac4_trivial_bound() -> Outcome {
    for n in 1..=10u32 {
        let b = trivial_lower_bound(n, 1).map_err(err)?;
        ensure(b == (1u64 << n) - 1, || format!("n={n} k=1: {b}"))?;
    }
    ensure(trivial_lower_bound(3, 2).map_err(err)? == 4, || "trivial(3,2) != 4".into())?;
    for n in 1..=24u32 {
        for k in 1..=n {
            let b = trivial_lower_bound(n, k).map_err(err)?;
            if k > 1 {
                let prev = trivial_lower_bound(n, k - 1).map_err(err)?;
                ensure(b <= prev, || format!("not monotone in k at n={n} k={k}"))?;
            }
            if k < n {
                let next = trivial_lower_bound(n + 1, k).map_err(err)?;
                ensure(b <= next, || format!("not monotone in n at n={n} k={k}"))?;
            }
            ensure(b <= canonical_size(n, k).map_err(err)?, || format!("above canonical at n={n} k={k}"))?;
        }
    }
    Ok("k=1 closed form, (3,2)=4, monotone for n<=24".into())
}

fn ac5_turan() -> Outcome {
    let limits = Limits::default();
    for s in 1..=5usize {
        for t in 1..=6usize {
            let g = complete_multipartite(&vec![t; s], &limits).map_err(err)?;
            for r in 1..=s {
                let want = binomial_u128(s as u64, r as u64) * (t as u128).pow(r as u32);
                let got = count_cliques(&g, r, &limits).map_err(err)?;
                ensure(got == want, || format!("s={s} T={t} r={r}: {got} != {want}"))?;
            }
        }
    }
    let tol = ratio(1, 50);
    let mut worst = 0.0f64;
    for s in 1..=4u32 {
        for r in 1..=s {
            let p = TuranParams::new(r, s, 50).map_err(err)?;
            let gap = p.eta() - p.density();
            ensure(gap < tol && -gap.clone() < tol, || format!("s={s} r={r}: gap {gap}"))?;
            worst = worst.max(genset_core::arith::rational_to_f64(&gap).abs());
        }
    }
    Ok(format!("exact counts s<=5 T<=6; max gap at T=50 {worst:.5}"))
}

fn ac6_erdos() -> Outcome {
    let limits = Limits::default();
    for (s, r) in [(2, 2), (3, 2), (3, 3)] {
        for l in 1..=7usize {
            let c = erdos_max_check(l, s, r, &limits).map_err(err)?;
            ensure(c.attained_by_turan, || {
                format!("l={l} s={s} r={r}: max {} turan {}", c.max_count, c.turan_count)
            })?;
            if s == 2 {
                ensure(c.max_count == (l * l / 4) as u128, || format!("l={l}: max edges {}", c.max_count))?;
            }
        }
    }
    Ok("Turán graph attains the maximum for l<=7".into())
}

fn ac7_kneser_k2() -> Outcome {
    let limits = Limits::default();
    let f = canonical_generator(20, 2).map_err(err)?;
    let g = disjointness_graph(&f, &limits).map_err(err)?;
    // Two blocks of 10: disjoint pairs inside one block plus all cross-block pairs.
    let within = (3u64.pow(10) + 1 - 2 * 1024) / 2;
    let oracle = 2 * within + 1023 * 1023;
    let edges = g.edge_count() as u64;
    ensure(edges == oracle && edges == 1_103_531, || format!("edges {edges}, oracle {oracle}"))?;
    let density = clique_density(&g, 2, &limits).map_err(err)?;
    let want = ratio(1_103_531, 2_092_035);
    ensure(density == want, || format!("density {density}"))?;
    Ok(format!("{edges} edges, density {:.5}", genset_core::arith::rational_to_f64(&density)))
}

fn ac8_kneser_k3() -> Outcome {
    let limits = Limits::default();
    let f = canonical_generator(12, 3).map_err(err)?;
    let sets: Vec<u64> = f.iter().map(|x| x.bits()).collect();
    let mut oracle = 0u128;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i] & sets[j] != 0 {
                continue;
            }
            for l in j + 1..sets.len() {
                if (sets[i] | sets[j]) & sets[l] == 0 {
                    oracle += 1;
                }
            }
        }
    }
    let g = disjointness_graph(&f, &limits).map_err(err)?;
    let got = count_cliques(&g, 3, &limits).map_err(err)?;
    ensure(got == oracle && oracle == 5655, || format!("count {got}, oracle {oracle}"))?;
    Ok(format!("{got} triangles"))
}

fn ac9_coverage() -> Outcome {
    let limits = Limits::default();
    let mut checked = 0;
    let mut families = Vec::new();
    for n in 1..=16u32 {
        for k in 1..=3u32.min(n) {
            families.push((canonical_generator(n, k).map_err(err)?, k));
        }
    }
    for (n, k) in [(4, 2), (5, 2), (5, 3), (4, 3)] {
        let r = min_generator_size(n, k, &limits).map_err(err)?;
        families.push((SetFamily::new(n, r.witness.iter().copied()).map_err(err)?.0, k));
    }
    for (f, k) in &families {
        let rep = coverage_inequality_check(f, *k, true, &limits).map_err(err)?;
        ensure(rep.generator_verified == Some(true), || format!("n={} k={k}: not a generator", f.n()))?;
        ensure(rep.holds, || format!("n={} k={k}: {} < {}", f.n(), rep.tuples, rep.two_to_n))?;
        checked += 1;
    }
    Ok(format!("{checked} generators satisfy the coverage inequality"))
}

fn ac10_union_probability() -> Outcome {
    let limits = Limits::default();
    let f = canonical_generator(4, 2).map_err(err)?;
    let exact = small_union_probability(&f, 2, 2, SampleMode::Exact, &limits).map_err(err)?;
    ensure(exact == Probability::Exact(ratio(2, 3)), || format!("exact {exact:?}"))?;

    for (n, k, m) in [(9u32, 2u32, 32u64), (9, 2, 16), (6, 2, 8), (8, 3, 16)] {
        let all = SetFamily::all_nonempty(n).map_err(err)?;
        let members = all.members()[all.len() - m as usize..].to_vec();
        let (g, _) = SetFamily::new(n, members).map_err(err)?;
        let delta = BoundParams::from_power_of_two(n, k, m, 1).map_err(err)?.delta;
        for t in 1..=3 {
            let rep = union_bound_check(&g, k, &delta, t, SampleMode::Exact, &limits).map_err(err)?;
            ensure(rep.in_regime && rep.bound_holds, || format!("n={n} k={k} m={m} t={t}: bound fails"))?;
        }
    }

    let sampled = small_union_probability(&f, 2, 2, SampleMode::Sampled { seed: 2024, trials: 100_000 }, &limits)
        .map_err(err)?;
    let Probability::Sampled(e) = sampled else {
        return Err("sampled mode returned an exact value".into());
    };
    let z = (e.estimate - 2.0 / 3.0).abs() / e.std_error;
    ensure(z <= 3.0, || format!("estimate {} is {z:.2} SE from 2/3", e.estimate))?;
    Ok(format!("exact 2/3; sampled {:.5} ({z:.2} SE)", e.estimate))
}

fn brute_generates(n: u32, members: &[u64], k: usize) -> bool {
    let mut reach: HashSet<u64> = HashSet::from([0]);
    let mut frontier = vec![(0u64, 0usize)];
    for _ in 0..k {
        let mut next = Vec::new();
        for &(union, start) in &frontier {
            for (i, &m) in members.iter().enumerate().skip(start) {
                if union & m == 0 {
                    reach.insert(union | m);
                    next.push((union | m, i + 1));
                }
            }
        }
        frontier = next;
    }
    reach.len() == 1 << n
}

fn ac11_checker_oracle() -> Outcome {
    let limits = Limits::default();
    let mut families = 0u64;
    for n in 1..=4u32 {
        let universe: Vec<u64> = (1..1u64 << n).collect();
        let mut chosen = Vec::new();
        fn walk(
            n: u32,
            universe: &[u64],
            start: usize,
            chosen: &mut Vec<u64>,
            limits: &Limits,
            families: &mut u64,
        ) -> Result<(), String> {
            let (f, _) = SetFamily::new(n, chosen.iter().map(|&b| SubsetMask(b))).map_err(err)?;
            for k in 1..=3u32 {
                let fast = is_k_generator(&f, k as usize, limits).map_err(err)?.holds;
                let slow = brute_generates(n, chosen, k as usize);
                ensure(fast == slow, || format!("n={n} k={k} family {chosen:?}: checker {fast}, brute force {slow}"))?;
            }
            *families += 1;
            if chosen.len() == 6 {
                return Ok(());
            }
            for i in start..universe.len() {
                chosen.push(universe[i]);
                walk(n, universe, i + 1, chosen, limits, families)?;
                chosen.pop();
            }
            Ok(())
        }
        walk(n, &universe, 0, &mut chosen, &limits, &mut families)?;
    }
    Ok(format!("{families} families x k in 1..=3"))
}

fn ac12_blowups() -> Outcome {
    let limits = Limits::default();
    let k32 = complete_multipartite(&[2, 2, 2], &limits).map_err(err)?;
    let found = find_blowup(&k32, BlowupSpec::new(3, 2).map_err(err)?, &limits).map_err(err)?;
    ensure(found.is_some(), || "K_3(2) has no K_3(2) blow-up".into())?;
    let c5 = Graph::cycle(5);
    let absent = find_blowup(&c5, BlowupSpec::new(2, 2).map_err(err)?, &limits).map_err(err)?;
    ensure(absent.is_none(), || format!("C5 reported {absent:?}"))?;
    Ok(format!("K_3(2) classes {:?}; C5 absent", found.unwrap()))
}

fn ac13_cli_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("genset-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let fam = dir.join("c52.txt");
    let graph = dir.join("k32.txt");
    let fam_s = fam.to_str().unwrap();
    let graph_s = graph.to_str().unwrap();
    let bin = env!("CARGO_BIN_EXE_genset");
    let run = |args: &[&str]| -> RunResult {
        let out = Command::new(bin).args(args).env_remove("GENSET_THREADS").output().map_err(err)?;
        Ok((out.status.code(), out.stdout, out.stderr))
    };
    let setup: [&[&str]; 2] = [
        &["construct", "-n", "5", "-k", "2", "-o", fam_s],
        &["--no-meta", "turan", "graph", "-s", "3", "-T", "2"],
    ];
    run(setup[0])?;
    std::fs::write(&graph, run(setup[1])?.1).map_err(err)?;

    let invocations: Vec<Vec<&str>> = vec![
        vec!["construct", "-n", "7", "-k", "3"],
        vec!["construct", "-n", "6", "-k", "2", "--format", "json"],
        vec!["check", "--family", fam_s, "-k", "2"],
        vec!["check", "--family", fam_s, "-k", "1"],
        vec!["check", "--family", fam_s, "-k", "2", "--base"],
        vec!["check", "--family", fam_s, "-k", "2", "--decompose", "1,3,4,5"],
        vec!["search-min", "-n", "5", "-k", "3"],
        vec!["search-min", "--sweep", "--n-max", "5", "--k-max", "3"],
        vec!["search-min", "-n", "9", "-k", "2"],
        vec!["graph", "--family", fam_s, "--cliques", "3", "--density", "2"],
        vec!["graph", "--family", fam_s, "--emit-edges"],
        vec!["graph", "--graph", graph_s, "--cliques", "3"],
        vec!["turan", "eta", "-r", "3", "-s", "5"],
        vec!["turan", "closed-form", "-s", "4", "-T", "5", "-r", "3"],
        vec!["turan", "erdos", "-l", "6", "-s", "3", "-r", "3"],
        vec!["blowup", "--graph", graph_s, "-a", "3", "-t", "2"],
        vec!["blowup", "--family", fam_s, "-a", "3", "-t", "1"],
        vec!["bounds", "trivial", "-n", "20", "-k", "3"],
        vec!["bounds", "lemma4", "-n", "30", "-k", "2", "-m", "4096", "-t", "2"],
        vec!["bounds", "analytic", "-n", "40", "-k", "2", "-m", "100", "-t", "3"],
        vec!["bounds", "union-check", "--family", fam_s, "-k", "2", "--delta", "1/5", "-t", "2"],
        vec!["bounds", "union-check", "--family", fam_s, "-k", "2", "--delta", "1/5", "-t", "2", "--trials", "20000"],
        vec!["bounds", "coverage", "--family", fam_s, "-k", "2"],
        vec!["bounds", "table", "--n-max", "12", "--k-max", "4"],
        vec!["experiment", "dense-subset", "--family", fam_s, "-l", "5", "-r", "2", "--threshold", "1/2"],
        vec!["experiment", "dense-subset", "--family", fam_s, "-l", "5", "-r", "2", "--threshold", "1/2", "--samples", "5000"],
        vec!["experiment", "union-prob", "--family", fam_s, "-t", "2", "--threshold", "2", "--trials", "50000"],
    ];
    for inv in &invocations {
        let mut args = vec!["--no-meta", "--seed", "99"];
        args.extend(inv.iter().copied());
        let first = run(&args)?;
        let second = run(&args)?;
        ensure(first == second, || format!("differs between runs: {}", inv.join(" ")))?;
        ensure(!first.1.is_empty() || !first.2.is_empty(), || format!("no output: {}", inv.join(" ")))?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} invocations byte-identical", invocations.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("AC1", "canonical sizes", 1, ac1_canonical_sizes),
        ("AC2", "construction is a k-generator", 60, ac2_construction_generates),
        ("AC3", "minimum generators at small n", 600, ac3_conjecture_small_cases),
        ("AC4", "trivial lower bound", 1, ac4_trivial_bound),
        ("AC5", "Turán clique counts", 30, ac5_turan),
        ("AC6", "Erdős maximisation", 300, ac6_erdos),
        ("AC7", "disjointness graph edges, k=2", 60, ac7_kneser_k2),
        ("AC8", "disjointness graph triangles, k=3", 60, ac8_kneser_k3),
        ("AC9", "coverage inequality", 120, ac9_coverage),
        ("AC10", "small-union probability and bound", 60, ac10_union_probability),
        ("AC11", "checker vs brute force", 600, ac11_checker_oracle),
        ("AC12", "blow-up finder", 1, ac12_blowups),
        ("AC13", "CLI determinism", 300, ac13_cli_determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded {limit}s")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {id} {name} ({:.2}s, limit {limit}s): {detail}", elapsed.as_secs_f64());
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
