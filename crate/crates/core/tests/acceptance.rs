//! Acceptance criteria 1 to 9. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::Instant;

use indorder::order::compare;
use indorder::poly::rational;
use indorder::roots::rational_string;
use indorder::scan::{
    scan_chains, scan_degree_questions, scan_starlike, scan_starlike_by_order, scan_total_order,
    theorem_suite, ScanReport, TheoremLimits,
};
use indorder::seq::{
    check_adding_invariance, convert, dominance_compare, dominance_implies_lex_check, lex_compare,
    replay, Conversion, ConversionStep, DominanceVerdict,
};
use indorder::trees::{all_trees, level_sequence_trees, prufer_trees, FREE_TREE_COUNTS};
use indorder::{
    brute_force_polynomial, canonical_form, independence_polynomial, parse_graph, xi, BigRational,
    Graph, IntPolynomial, IntSequence, OrderVerdict,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion: `Ok(detail)` or `Err(detail)`.
type Outcome = Result<String, String>;

/// Criteria that cannot pass as stated, with the reason. They still run and
/// print FAIL, but do not fail the target.
const UNATTAINABLE: &[(usize, &str)] = &[(
    1,
    "reference value 1+6x+10x^2+3x^3+x^4 for T(2,2,4) is impossible: its unique \
     independent 4-set alone contributes four 3-subsets; brute force gives 5x^3",
)];

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn g(spec: &str) -> Graph {
    parse_graph(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn criterion_1() -> Outcome {
    let cases: [(&str, &[i64]); 5] = [
        ("K2", &[1, 2]),
        ("3*K1", &[1, 3, 3, 1]),
        ("H(6,3)", &[1, 6, 10, 6, 1]),
        ("T(2,2,4)", &[1, 6, 10, 3, 1]),
        ("T(2,3,3)", &[1, 6, 10, 5]),
    ];
    let mut bad = Vec::new();
    for (spec, want) in cases {
        let graph = g(spec);
        let got = independence_polynomial(&graph);
        let brute = brute_force_polynomial(&graph).map_err(|e| e.to_string())?;
        ensure(got == brute, format!("{spec}: DP and brute force disagree"))?;
        if got != IntPolynomial::from_i64(want) {
            bad.push(format!(
                "{spec} computed {got}, reference {}",
                IntPolynomial::from_i64(want)
            ));
        }
    }
    if bad.is_empty() {
        Ok("5 reference polynomials reproduced".into())
    } else {
        Err(bad.join("; "))
    }
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = HashSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    let density: f64 = rng.gen_range(0.0..0.5);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.insert((u, v));
            }
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, &edges).unwrap().relabel(&perm)
}

fn criterion_2() -> Outcome {
    let mut trees = 0;
    for n in 1..=12 {
        for t in &all_trees(n).map_err(|e| e.to_string())?.trees {
            let brute = brute_force_polynomial(t).map_err(|e| e.to_string())?;
            ensure(
                independence_polynomial(t) == brute,
                format!("tree mismatch at n={n}"),
            )?;
            trees += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d9f);
    for i in 0..500 {
        let n = rng.gen_range(1..=16);
        let h = random_connected(&mut rng, n);
        ensure(h.is_connected(), "generator produced a disconnected graph")?;
        let brute = brute_force_polynomial(&h).map_err(|e| e.to_string())?;
        ensure(
            independence_polynomial(&h) == brute,
            format!("random graph #{i} mismatch: {}", h.to_edge_list()),
        )?;
    }
    Ok(format!(
        "{trees} trees and 500 random connected graphs agree"
    ))
}

/// `lo <= (-3 + sqrt 5)/2 <= hi`, decided with integer arithmetic only.
fn brackets_p3_root(lo: &BigRational, hi: &BigRational) -> bool {
    let five = rational(5, 1);
    let at_most_root = |q: &BigRational| {
        let t = q * rational(2, 1) + rational(3, 1);
        t <= rational(0, 1) || &t * &t <= five
    };
    let at_least_root = |q: &BigRational| {
        let t = q * rational(2, 1) + rational(3, 1);
        t >= rational(0, 1) && &t * &t >= five
    };
    at_most_root(lo) && at_least_root(hi)
}

fn criterion_3() -> Outcome {
    let k2 = xi(&g("K2")).map_err(|e| e.to_string())?;
    ensure(
        k2.as_rational() == Some(rational(-1, 2)),
        format!("xi(K2) = {k2:?}"),
    )?;
    let k1 = xi(&g("3*K1")).map_err(|e| e.to_string())?;
    ensure(
        k1.as_rational() == Some(rational(-1, 1)),
        format!("xi(3K1) = {k1:?}"),
    )?;
    let width = BigRational::new(1.into(), 1_000_000_000.into());
    let p3 = xi(&g("P3")).map_err(|e| e.to_string())?.refine(&width);
    ensure(p3.width() <= width, "P3 bracket too wide")?;
    ensure(
        brackets_p3_root(p3.lo(), p3.hi()),
        "P3 bracket misses (-3+sqrt5)/2",
    )?;
    Ok(format!(
        "xi(K2)=-1/2, xi(3K1)=-1 exact; xi(P3) in [{}, {}]",
        rational_string(p3.lo()),
        rational_string(p3.hi())
    ))
}

fn criterion_4() -> Outcome {
    for n in 3..=30 {
        let (c, gn) = (g(&format!("C{n}")), g(&format!("G{n}")));
        ensure(
            compare(&c, &gn) == OrderVerdict::Equivalent,
            format!("C{n} vs G{n} not equivalent"),
        )?;
        if n >= 4 {
            ensure(
                canonical_form(&c) != canonical_form(&gn),
                format!("C{n} ~= G{n}"),
            )?;
        }
    }
    Ok("C_n and G_n equivalent for 3..=30".into())
}

fn clean(r: &ScanReport) -> Result<(), String> {
    ensure(
        r.theorem_violations() == 0,
        format!("{}: {} theorem violations", r.scan, r.theorem_violations()),
    )
}

fn criterion_5() -> Outcome {
    let r = theorem_suite(TheoremLimits::default()).map_err(|e| e.to_string())?;
    clean(&r)?;
    ensure(r.is_clean(), "suite reported findings")?;
    let checks: u64 = r.totals.values().sum();
    Ok(format!("theorem suite clean ({checks} counted checks)"))
}

fn random_seq(rng: &mut ChaCha8Rng, len: usize, max: i64) -> IntSequence {
    let v: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=max)).collect();
    IntSequence::from_multiset(&v).unwrap()
}

/// A pair with equal length and total; roughly half are built to be
/// dominance-comparable by random unit moves.
fn random_pair(rng: &mut ChaCha8Rng) -> (IntSequence, IntSequence) {
    let len = rng.gen_range(1..=8);
    let x = random_seq(rng, len, 12);
    if rng.gen_bool(0.5) && len >= 2 {
        let mut y = x.clone();
        for _ in 0..rng.gen_range(1..6) {
            let j = rng.gen_range(1..len);
            let step = ConversionStep {
                j: rng.gen_range(1..=j),
                k: rng.gen_range(j + 1..=len),
            };
            if let Ok(next) = y.apply(step) {
                y = next;
            }
        }
        (y, x)
    } else {
        let mut y = random_seq(rng, len, 12).entries().to_vec();
        let mut xs = x.entries().to_vec();
        let diff = x.total() - y.iter().sum::<i64>();
        y[0] += diff.max(0);
        xs[0] += (-diff).max(0);
        (
            IntSequence::from_multiset(&xs).unwrap(),
            IntSequence::from_multiset(&y).unwrap(),
        )
    }
}

/// Is `y` reachable from `x` by steps that keep the sequence non-increasing?
/// States whose prefix sums exceed those of `y` are pruned, since steps only
/// raise prefix sums.
fn bfs_reachable(x: &IntSequence, y: &IntSequence) -> bool {
    let ypre = y.prefix_sums();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([x.clone()]);
    seen.insert(x.clone());
    while let Some(s) = queue.pop_front() {
        if &s == y {
            return true;
        }
        let n = s.len();
        for j in 1..=n {
            for k in j + 1..=n {
                let Ok(next) = s.apply(ConversionStep { j, k }) else {
                    continue;
                };
                if next.prefix_sums().iter().zip(&ypre).any(|(a, b)| a > b) {
                    continue;
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

fn sequences(len: usize, max: i64) -> Vec<IntSequence> {
    fn rec(prefix: &mut Vec<i64>, len: usize, cap: i64, out: &mut Vec<IntSequence>) {
        if prefix.len() == len {
            out.push(IntSequence::new(prefix.clone()).unwrap());
            return;
        }
        for v in 0..=cap {
            prefix.push(v);
            rec(prefix, len, v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), len, max, &mut out);
    out
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e9);
    let mut comparable = 0;
    for _ in 0..10_000 {
        let (x, y) = random_pair(&mut rng);
        ensure(
            dominance_implies_lex_check(&x, &y).map_err(|e| e.to_string())?,
            format!("dominance without lex: {x} vs {y}"),
        )?;
        if dominance_compare(&x, &y)
            .map_err(|e| e.to_string())?
            .at_least()
        {
            comparable += 1;
        }
    }
    for _ in 0..1_000 {
        let (x, y) = random_pair(&mut rng);
        let ext: Vec<i64> = (0..rng.gen_range(0..5))
            .map(|_| rng.gen_range(0..=12))
            .collect();
        ensure(
            check_adding_invariance(x.entries(), y.entries(), &ext).map_err(|e| e.to_string())?,
            format!("adding invariance fails: {x} vs {y} + {ext:?}"),
        )?;
    }

    let mut bfs_pairs = 0;
    for len in 1..=5 {
        let all = sequences(len, 8);
        for x in &all {
            for y in all.iter().filter(|y| y.total() == x.total()) {
                let reachable = bfs_reachable(x, y);
                let verdict = convert(x, y).map_err(|e| e.to_string())?;
                match verdict {
                    Conversion::Convertible(steps) => {
                        ensure(reachable, format!("convert claims {x} -> {y}"))?;
                        ensure(
                            replay(x, &steps).map_err(|e| e.to_string())? == *y,
                            format!("certificate for {x} -> {y} does not replay"),
                        )?;
                    }
                    Conversion::NotConvertible(_) => {
                        ensure(!reachable, format!("convert misses {x} -> {y}"))?;
                    }
                }
                bfs_pairs += 1;
            }
        }
    }

    let seq = |s: &str| s.parse::<IntSequence>().unwrap();
    let (a, b) = (seq("9,9,6,6"), seq("10,8,7,5"));
    match convert(&a, &b).map_err(|e| e.to_string())? {
        Conversion::Convertible(steps) => ensure(
            replay(&a, &steps).map_err(|e| e.to_string())? == b,
            "replay failed",
        )?,
        _ => return Err("(9,9,6,6) -> (10,8,7,5) not convertible".into()),
    }
    ensure(
        matches!(
            convert(&seq("8,8,4"), &seq("10,5,5")),
            Ok(Conversion::NotConvertible(_))
        ),
        "(8,8,4) -> (10,5,5) should not convert",
    )?;
    let (p, q) = (seq("7,2,2"), seq("5,5,1"));
    ensure(
        lex_compare(&p, &q) == Ok(Ordering::Greater)
            && dominance_compare(&p, &q) == Ok(DominanceVerdict::Incomparable),
        "(7,2,2) vs (5,5,1)",
    )?;
    Ok(format!(
        "10^4 lex checks ({comparable} comparable), 10^3 invariance, {bfs_pairs} BFS pairs, worked instances"
    ))
}

fn criterion_7() -> Outcome {
    let r = scan_starlike(1..=14, 3..=6).map_err(|e| e.to_string())?;
    clean(&r)?;
    let pairs = r.totals.get("dominance_pairs").copied().unwrap_or(0);
    ensure(pairs > 0, "no dominance pairs examined")?;
    Ok(format!(
        "{pairs} dominance pairs over {} families, 0 violations ({} conjecture findings)",
        r.totals.get("families").copied().unwrap_or(0),
        r.conjecture_findings()
    ))
}

fn conjecture_scans() -> Result<Vec<ScanReport>, String> {
    let e = |e: indorder::Error| e.to_string();
    Ok(vec![
        scan_total_order(1..=10, 14).map_err(e)?,
        scan_chains(2..=10, 10, 14).map_err(e)?,
        scan_starlike_by_order(1..=10, 3..=9).map_err(e)?,
        scan_degree_questions(1..=10, 14).map_err(e)?,
    ])
}

fn criterion_8() -> Outcome {
    let (first, second) = (conjecture_scans()?, conjecture_scans()?);
    let mut findings = Vec::new();
    for (a, b) in first.iter().zip(&second) {
        clean(a)?;
        ensure(
            a.to_json() == b.to_json(),
            format!("{} JSON differs", a.scan),
        )?;
        ensure(a.to_csv() == b.to_csv(), format!("{} CSV differs", a.scan))?;
        findings.push(format!("{}={}", a.scan, a.conjecture_findings()));
    }
    Ok(format!(
        "byte-identical reruns; findings {}",
        findings.join(", ")
    ))
}

fn criterion_9() -> Outcome {
    let forms = |v: &[Graph]| v.iter().map(canonical_form).collect::<BTreeSet<_>>();
    for n in 1..=10 {
        let level = forms(&level_sequence_trees(n));
        let prufer = forms(&prufer_trees(n, true).map_err(|e| e.to_string())?);
        ensure(level == prufer, format!("generators disagree at n={n}"))?;
        ensure(
            level.len() == FREE_TREE_COUNTS[n],
            format!(
                "n={n}: {} trees, expected {}",
                level.len(),
                FREE_TREE_COUNTS[n]
            ),
        )?;
        if n <= 8 {
            let full = forms(&prufer_trees(n, false).map_err(|e| e.to_string())?);
            ensure(full == level, format!("full Pruefer differs at n={n}"))?;
        }
    }
    Ok("counts 1..=10 agree across generators".into())
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = 0;
    for (id, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let known = UNATTAINABLE.iter().find(|(k, _)| *k == id);
        match (&outcome, known) {
            (Ok(detail), _) => println!("criterion {id}: PASS ({secs:.2}s) {detail}"),
            (Err(detail), Some((_, why))) => {
                println!("criterion {id}: FAIL ({secs:.2}s) {detail} [known: {why}]")
            }
            (Err(detail), None) => {
                unexpected += 1;
                println!("criterion {id}: FAIL ({secs:.2}s) {detail}");
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
