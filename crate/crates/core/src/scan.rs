//! Exhaustive checks over tree corpora and starlike families.
//!
//! Every scan produces a [`ScanReport`] whose JSON form depends only on the
//! inputs: work is spread over the rayon pool but results are assembled in
//! corpus order, and no wall-clock data is stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::canonical_form;
use crate::error::Result;
use crate::family::FamilySpec;
use crate::graph::{admissible_star_triples, Graph};
use crate::indpoly::IndependenceCalculator;
use crate::order::{compare_profiles, xi_at_least, Comparison, GraphProfile, OrderVerdict};
use crate::roots::rational_string;
use crate::seq::{dominance_compare, lex_compare, DominanceVerdict, IntSequence};
use crate::trees::{all_starlike, all_trees_with_limit, DEFAULT_MAX_ORDER};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClaimKind {
    /// A proven statement; a violation means a bug.
    Theorem,
    /// An open statement; a violation is a finding.
    Conjecture,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub claim: String,
    pub kind: ClaimKind,
    pub instance: Value,
    pub witness: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub scan: String,
    pub tool_version: String,
    pub parameters: BTreeMap<String, Value>,
    pub totals: BTreeMap<String, u64>,
    pub per_order: Vec<Value>,
    pub violations: Vec<Violation>,
}

impl ScanReport {
    fn new(scan: &str) -> Self {
        ScanReport {
            scan: scan.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            parameters: BTreeMap::new(),
            totals: BTreeMap::new(),
            per_order: Vec::new(),
            violations: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, v: impl Into<Value>) {
        self.parameters.insert(key.to_string(), v.into());
    }

    fn add(&mut self, key: &str, n: u64) {
        *self.totals.entry(key.to_string()).or_default() += n;
    }

    fn violate(&mut self, claim: &str, kind: ClaimKind, instance: Value, witness: Value) {
        self.violations.push(Violation {
            claim: claim.to_string(),
            kind,
            instance,
            witness,
        });
    }

    pub fn theorem_violations(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| v.kind == ClaimKind::Theorem)
            .count()
    }

    pub fn conjecture_findings(&self) -> usize {
        self.violations.len() - self.theorem_violations()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Folds another report's totals, rows and violations into this one.
    pub fn absorb(&mut self, other: ScanReport) {
        for (k, v) in other.totals {
            self.add(&format!("{}.{k}", other.scan), v);
        }
        for row in other.per_order {
            self.per_order.push(json!({"scan": other.scan, "row": row}));
        }
        self.violations.extend(other.violations);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// `scan,metric,value` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("scan,metric,value\n");
        for (k, v) in &self.totals {
            out.push_str(&format!("{},{k},{v}\n", self.scan));
        }
        out.push_str(&format!(
            "{},theorem_violations,{}\n",
            self.scan,
            self.theorem_violations()
        ));
        out.push_str(&format!(
            "{},conjecture_findings,{}\n",
            self.scan,
            self.conjecture_findings()
        ));
        out
    }
}

/// Replayable description of a graph.
pub fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
    json!({"order": g.order(), "edges": edges})
}

pub fn comparison_json(a: &GraphProfile, b: &GraphProfile, c: &Comparison) -> Value {
    json!({
        "verdict": c.verdict,
        "witness_against_first": c.against_first.as_ref().map(rational_string),
        "witness_against_second": c.against_second.as_ref().map(rational_string),
        "I_first": a.poly,
        "I_second": b.poly,
    })
}

fn profiles(graphs: &[Graph]) -> Vec<GraphProfile> {
    graphs
        .par_iter()
        .map_init(IndependenceCalculator::new, |calc, g| {
            GraphProfile::with_calculator(g, calc)
        })
        .collect()
}

/// Compares every unordered pair `i < j`, in lexicographic pair order.
fn all_pairs(p: &[GraphProfile]) -> Vec<(usize, usize, Comparison)> {
    let n = p.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, compare_profiles(&p[i], &p[j])))
        .collect()
}

/// The strictly larger side of a comparison, if any.
fn strict_sides(c: &Comparison) -> Option<(bool, bool)> {
    match c.verdict {
        OrderVerdict::FirstStrictlyGreater => Some((true, false)),
        OrderVerdict::SecondStrictlyGreater => Some((false, true)),
        _ => None,
    }
}

/// Checks the largest-root consequence for a comparison that found a
/// domination. Returns whether a check was made.
fn check_xi(
    report: &mut ScanReport,
    a: &GraphProfile,
    b: &GraphProfile,
    c: &Comparison,
    instance: impl FnOnce() -> Value,
) -> bool {
    let (hi, lo) = match c.verdict {
        OrderVerdict::FirstStrictlyGreater | OrderVerdict::Equivalent => (a, b),
        OrderVerdict::SecondStrictlyGreater => (b, a),
        OrderVerdict::Incomparable => return false,
    };
    if !xi_at_least(hi, lo) {
        report.violate(
            "domination implies largest-root order",
            ClaimKind::Theorem,
            instance(),
            comparison_json(a, b, c),
        );
    }
    true
}

struct OrderData {
    trees: Vec<Graph>,
    profiles: Vec<GraphProfile>,
    pairs: Vec<(usize, usize, Comparison)>,
}

fn order_data(n: usize, limit: usize) -> Result<OrderData> {
    let corpus = all_trees_with_limit(n, limit)?;
    let profiles = profiles(&corpus.trees);
    let pairs = all_pairs(&profiles);
    Ok(OrderData {
        trees: corpus.trees,
        profiles,
        pairs,
    })
}

fn pair_instance(n: usize, d: &OrderData, i: usize, j: usize) -> Value {
    json!({
        "order": n,
        "first_index": i,
        "second_index": j,
        "first": graph_json(&d.trees[i]),
        "second": graph_json(&d.trees[j]),
    })
}

fn range_params(report: &mut ScanReport, orders: &RangeInclusive<usize>, limit: usize) {
    report.param("min_n", *orders.start());
    report.param("max_n", *orders.end());
    report.param("order_limit", limit);
}

/// Every pair of trees of each order should be comparable.
pub fn scan_total_order(orders: RangeInclusive<usize>, limit: usize) -> Result<ScanReport> {
    let mut report = ScanReport::new("total-order");
    range_params(&mut report, &orders, limit);
    for n in orders {
        let d = order_data(n, limit)?;
        let mut counts = [0u64; 3];
        let mut xi_checks = 0;
        for (i, j, c) in &d.pairs {
            let (a, b) = (&d.profiles[*i], &d.profiles[*j]);
            match c.verdict {
                OrderVerdict::Equivalent => counts[0] += 1,
                OrderVerdict::Incomparable => {
                    counts[2] += 1;
                    report.violate(
                        "trees of equal order are comparable",
                        ClaimKind::Conjecture,
                        pair_instance(n, &d, *i, *j),
                        comparison_json(a, b, c),
                    );
                }
                _ => counts[1] += 1,
            }
            if check_xi(&mut report, a, b, c, || pair_instance(n, &d, *i, *j)) {
                xi_checks += 1;
            }
        }
        report.add("trees", d.trees.len() as u64);
        report.add("pairs", d.pairs.len() as u64);
        report.add("equivalent", counts[0]);
        report.add("strict", counts[1]);
        report.add("comparable", counts[0] + counts[1]);
        report.add("incomparable", counts[2]);
        report.add("xi_checks", xi_checks);
        report.per_order.push(json!({
            "n": n,
            "trees": d.trees.len(),
            "pairs": d.pairs.len(),
            "equivalent": counts[0],
            "strict": counts[1],
            "incomparable": counts[2],
        }));
    }
    Ok(report)
}

fn build(spec: FamilySpec) -> Graph {
    spec.build().expect("parameters validated by caller")
}

/// `upper ⪰ lower`, strict unless the two are isomorphic.
fn expect_domination(
    report: &mut ScanReport,
    claim: &str,
    upper: (&Graph, &GraphProfile),
    lower: (&Graph, &GraphProfile),
    strict_unless_isomorphic: bool,
) {
    let c = compare_profiles(upper.1, lower.1);
    let instance = || json!({"upper": graph_json(upper.0), "lower": graph_json(lower.0)});
    let iso = canonical_form(upper.0) == canonical_form(lower.0);
    let ok = match c.verdict {
        OrderVerdict::FirstStrictlyGreater => !iso,
        OrderVerdict::Equivalent => iso || !strict_unless_isomorphic,
        _ => false,
    };
    report.add("checks", 1);
    if !ok {
        report.violate(
            claim,
            ClaimKind::Theorem,
            instance(),
            comparison_json(upper.1, lower.1, &c),
        );
    }
    if check_xi(report, upper.1, lower.1, &c, instance) {
        report.add("xi_checks", 1);
    }
}

/// Both extremal-tree sandwiches for every tree of each order.
pub fn scan_sandwich(orders: RangeInclusive<usize>, limit: usize) -> Result<ScanReport> {
    let mut report = ScanReport::new("sandwich");
    range_params(&mut report, &orders, limit);
    for n in orders {
        let corpus = all_trees_with_limit(n, limit)?;
        if n < 2 {
            report
                .per_order
                .push(json!({"n": n, "trees": corpus.len(), "skipped": true}));
            continue;
        }
        let profs = profiles(&corpus.trees);
        let star = build(FamilySpec::Star(n));
        let path = build(FamilySpec::Path(n));
        let (pstar, ppath) = (GraphProfile::new(&star), GraphProfile::new(&path));
        let rows: Vec<ScanReport> = corpus
            .trees
            .par_iter()
            .zip(&profs)
            .map(|(t, pt)| {
                let mut r = ScanReport::new("sandwich");
                let k = t.max_degree();
                let h = build(FamilySpec::Hnk(n, k));
                let l = build(FamilySpec::Tnk(n, k));
                let (ph, pl) = (GraphProfile::new(&h), GraphProfile::new(&l));
                expect_domination(
                    &mut r,
                    "double star dominates tree",
                    (&h, &ph),
                    (t, pt),
                    true,
                );
                expect_domination(
                    &mut r,
                    "tree dominates one-long-leg spider",
                    (t, pt),
                    (&l, &pl),
                    true,
                );
                expect_domination(
                    &mut r,
                    "star dominates tree",
                    (&star, &pstar),
                    (t, pt),
                    true,
                );
                expect_domination(
                    &mut r,
                    "tree dominates path",
                    (t, pt),
                    (&path, &ppath),
                    true,
                );
                r
            })
            .collect();
        let mut checks = 0;
        for r in rows {
            checks += r.totals.get("checks").copied().unwrap_or(0);
            report.add("xi_checks", r.totals.get("xi_checks").copied().unwrap_or(0));
            report.violations.extend(r.violations);
        }
        report.add("trees", corpus.len() as u64);
        report.add("checks", checks);
        report
            .per_order
            .push(json!({"n": n, "trees": corpus.len(), "checks": checks}));
    }
    Ok(report)
}

/// Consecutive members of a family chain must be strictly decreasing.
fn check_family_chain(
    report: &mut ScanReport,
    claim: &str,
    chain: &[(FamilySpec, Graph)],
) -> usize {
    let profs: Vec<GraphProfile> = chain.iter().map(|(_, g)| GraphProfile::new(g)).collect();
    for w in 0..chain.len().saturating_sub(1) {
        let c = compare_profiles(&profs[w], &profs[w + 1]);
        report.add("chain_links", 1);
        let instance =
            || json!({"upper": chain[w].0.to_string(), "lower": chain[w + 1].0.to_string()});
        if c.verdict != OrderVerdict::FirstStrictlyGreater {
            report.violate(
                claim,
                ClaimKind::Theorem,
                instance(),
                comparison_json(&profs[w], &profs[w + 1], &c),
            );
        }
        check_xi(report, &profs[w], &profs[w + 1], &c, instance);
    }
    chain.len()
}

/// Longest chain in the strict order on equivalence classes, as a list of
/// class representatives. `None` if the relation has a cycle.
fn longest_chain(classes: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut succ = vec![Vec::new(); classes];
    let mut indeg = vec![0usize; classes];
    for &(a, b) in edges {
        succ[a].push(b);
        indeg[b] += 1;
    }
    for s in &mut succ {
        s.sort_unstable();
    }
    // Kahn order, smallest index first for determinism
    let mut ready: std::collections::BTreeSet<usize> =
        (0..classes).filter(|&v| indeg[v] == 0).collect();
    let mut topo = Vec::with_capacity(classes);
    while let Some(v) = ready.pop_first() {
        topo.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if topo.len() != classes {
        return None;
    }
    let mut best = vec![1usize; classes];
    let mut next = vec![usize::MAX; classes];
    for &v in topo.iter().rev() {
        for &w in &succ[v] {
            if best[w] + 1 > best[v] {
                best[v] = best[w] + 1;
                next[v] = w;
            }
        }
    }
    let start = (0..classes).max_by_key(|&v| (best[v], std::cmp::Reverse(v)))?;
    let mut chain = vec![start];
    while next[*chain.last().unwrap()] != usize::MAX {
        chain.push(next[*chain.last().unwrap()]);
    }
    Some(chain)
}

/// Family chains for each order, plus (when `full_max_n` allows) the longest
/// chain among all trees of that order.
pub fn scan_chains(
    orders: RangeInclusive<usize>,
    full_max_n: usize,
    limit: usize,
) -> Result<ScanReport> {
    let mut report = ScanReport::new("chains");
    range_params(&mut report, &orders, limit);
    report.param("longest_chain_max_n", full_max_n);
    for n in orders {
        if n < 2 {
            continue;
        }
        let spider_chain: Vec<(FamilySpec, Graph)> = (2..n)
            .rev()
            .map(|k| {
                let s = FamilySpec::Tnk(n, k);
                let g = build(s.clone());
                (s, g)
            })
            .collect();
        let spider_len = check_family_chain(
            &mut report,
            "one-long-leg spiders form a chain",
            &spider_chain,
        );
        let double_chain: Vec<(FamilySpec, Graph)> = (n.div_ceil(2)..n)
            .rev()
            .map(|k| {
                let s = FamilySpec::Hnk(n, k);
                let g = build(s.clone());
                (s, g)
            })
            .collect();
        check_family_chain(&mut report, "double stars form a chain", &double_chain);
        let mut row = json!({"n": n, "family_chain_length": spider_len});
        if n <= full_max_n {
            let d = order_data(n, limit)?;
            let mut class_of: HashMap<&crate::poly::IntPolynomial, usize> = HashMap::new();
            let mut reps = Vec::new();
            let tree_class: Vec<usize> = d
                .profiles
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    *class_of.entry(&p.poly).or_insert_with(|| {
                        reps.push(i);
                        reps.len() - 1
                    })
                })
                .collect();
            let mut edges = Vec::new();
            for (i, j, c) in &d.pairs {
                if let Some((first, _)) = strict_sides(c) {
                    let (a, b) = if first { (*i, *j) } else { (*j, *i) };
                    edges.push((tree_class[a], tree_class[b]));
                }
            }
            edges.sort_unstable();
            edges.dedup();
            match longest_chain(reps.len(), &edges) {
                None => report.violate(
                    "strict domination is acyclic",
                    ClaimKind::Theorem,
                    json!({"order": n}),
                    Value::Null,
                ),
                Some(chain) => {
                    let len = chain.len();
                    let bound = n.saturating_sub(2).max(1);
                    let chain_trees: Vec<Value> = chain
                        .iter()
                        .map(|&c| graph_json(&d.trees[reps[c]]))
                        .collect();
                    if len < spider_len {
                        report.violate(
                            "longest chain is at least the family chain",
                            ClaimKind::Theorem,
                            json!({"order": n}),
                            json!({"longest": len, "family": spider_len}),
                        );
                    }
                    if len > bound {
                        report.violate(
                            "chains of trees have at most n-2 members",
                            ClaimKind::Conjecture,
                            json!({"order": n}),
                            json!({"length": len, "chain": chain_trees}),
                        );
                    }
                    row["classes"] = json!(reps.len());
                    row["longest_chain"] = json!(len);
                    row["equals_n_minus_2"] = json!(len == bound);
                    row["chain"] = json!(chain_trees);
                    report.add("pairs", d.pairs.len() as u64);
                }
            }
        }
        report.per_order.push(row);
    }
    Ok(report)
}

fn seq_string(s: &IntSequence) -> String {
    s.to_string()
}

/// All pairs of starlike trees with the same leg sum and leg count.
pub fn scan_starlike(sums: RangeInclusive<usize>, ks: RangeInclusive<usize>) -> Result<ScanReport> {
    let mut report = ScanReport::new("starlike");
    report.param("min_sum", *sums.start());
    report.param("max_sum", *sums.end());
    report.param("min_k", *ks.start());
    report.param("max_k", *ks.end());
    report.param("parameterization", "leg sum; tree order is sum - k + 1");
    let families = sums.flat_map(|sum| ks.clone().map(move |k| (sum, k)));
    starlike_families(report, families)
}

/// Same scan indexed by tree order: leg sum `order + k - 1`.
pub fn scan_starlike_by_order(
    orders: RangeInclusive<usize>,
    ks: RangeInclusive<usize>,
) -> Result<ScanReport> {
    let mut report = ScanReport::new("starlike");
    report.param("min_order", *orders.start());
    report.param("max_order", *orders.end());
    report.param("min_k", *ks.start());
    report.param("max_k", *ks.end());
    report.param("parameterization", "tree order; leg sum is order + k - 1");
    let families = orders.flat_map(|o| ks.clone().map(move |k| (o + k - 1, k)));
    starlike_families(report, families)
}

fn starlike_families(
    mut report: ScanReport,
    families: impl Iterator<Item = (usize, usize)>,
) -> Result<ScanReport> {
    for (sum, k) in families {
        if k < 3 {
            continue;
        }
        let family = all_starlike(sum, k)?;
        if family.is_empty() {
            continue;
        }
        let graphs: Vec<Graph> = family.iter().map(|s| s.graph.clone()).collect();
        let profs = profiles(&graphs);
        let pairs = all_pairs(&profs);
        let mut dominance_pairs = 0u64;
        let mut conj_ok = 0u64;
        for (i, j, c) in &pairs {
            let (x, y) = (&family[*i].legs, &family[*j].legs);
            let lex = lex_compare(x, y)?;
            let dom = dominance_compare(x, y)?;
            let instance = || {
                json!({
                    "sum": sum, "k": k, "order": sum - k + 1,
                    "first": seq_string(x), "second": seq_string(y),
                    "lex": format!("{lex:?}"), "dominance": dom,
                })
            };
            let witness = || comparison_json(&profs[*i], &profs[*j], c);
            // leg sequences ordered up means trees ordered down
            let (upper_leg, lower_leg) = match dom {
                DominanceVerdict::GreaterEq => (Some(true), None),
                DominanceVerdict::LessEq => (None, Some(true)),
                _ => (None, None),
            };
            if upper_leg.is_some() || lower_leg.is_some() {
                dominance_pairs += 1;
                let expected = if upper_leg.is_some() {
                    OrderVerdict::SecondStrictlyGreater
                } else {
                    OrderVerdict::FirstStrictlyGreater
                };
                if c.verdict != expected {
                    report.violate(
                        "leg dominance reverses to strict tree domination",
                        ClaimKind::Theorem,
                        instance(),
                        witness(),
                    );
                }
                let (big, small) = if upper_leg.is_some() {
                    (*j, *i)
                } else {
                    (*i, *j)
                };
                if !xi_at_least(&profs[big], &profs[small]) {
                    report.violate(
                        "leg dominance reverses largest-root order",
                        ClaimKind::Theorem,
                        instance(),
                        witness(),
                    );
                }
                if profs[*i].poly == profs[*j].poly {
                    report.violate(
                        "strict leg dominance separates polynomials",
                        ClaimKind::Theorem,
                        instance(),
                        witness(),
                    );
                }
            }
            let expected = match lex {
                Ordering::Greater => OrderVerdict::SecondStrictlyGreater,
                Ordering::Less => OrderVerdict::FirstStrictlyGreater,
                Ordering::Equal => OrderVerdict::Equivalent,
            };
            if c.verdict == expected {
                conj_ok += 1;
            } else {
                report.violate(
                    "lex order of legs reverses tree order",
                    ClaimKind::Conjecture,
                    instance(),
                    witness(),
                );
            }
            check_xi(&mut report, &profs[*i], &profs[*j], c, instance);
        }
        report.add("families", 1);
        report.add("trees", family.len() as u64);
        report.add("pairs", pairs.len() as u64);
        report.add("dominance_pairs", dominance_pairs);
        report.add("lex_conjecture_consistent", conj_ok);
        report.per_order.push(json!({
            "sum": sum, "k": k, "order": sum - k + 1,
            "trees": family.len(), "pairs": pairs.len(),
            "dominance_pairs": dominance_pairs,
        }));
    }
    Ok(report)
}

/// Degree-sequence questions over all tree pairs of each order.
pub fn scan_degree_questions(orders: RangeInclusive<usize>, limit: usize) -> Result<ScanReport> {
    let mut report = ScanReport::new("degree-questions");
    range_params(&mut report, &orders, limit);
    for n in orders {
        let d = order_data(n, limit)?;
        let degs: Vec<IntSequence> = d
            .trees
            .iter()
            .map(|t| IntSequence::new(t.degree_sequence()))
            .collect::<Result<_>>()?;
        let (mut lex_pairs, mut q1_bad, mut equiv, mut q2_bad) = (0u64, 0u64, 0u64, 0u64);
        for (i, j, c) in &d.pairs {
            let lex = lex_compare(&degs[*i], &degs[*j])?;
            let instance = || {
                let mut v = pair_instance(n, &d, *i, *j);
                v["first_degrees"] = json!(seq_string(&degs[*i]));
                v["second_degrees"] = json!(seq_string(&degs[*j]));
                v
            };
            let expected = match lex {
                Ordering::Greater => Some(OrderVerdict::FirstStrictlyGreater),
                Ordering::Less => Some(OrderVerdict::SecondStrictlyGreater),
                Ordering::Equal => None,
            };
            if let Some(e) = expected {
                lex_pairs += 1;
                if c.verdict != e {
                    q1_bad += 1;
                    report.violate(
                        "larger degree sequence means larger tree",
                        ClaimKind::Conjecture,
                        instance(),
                        comparison_json(&d.profiles[*i], &d.profiles[*j], c),
                    );
                }
            }
            if c.verdict == OrderVerdict::Equivalent {
                equiv += 1;
                if lex != Ordering::Equal {
                    q2_bad += 1;
                    report.violate(
                        "equal polynomials mean equal degree sequences",
                        ClaimKind::Conjecture,
                        instance(),
                        comparison_json(&d.profiles[*i], &d.profiles[*j], c),
                    );
                }
            }
        }
        // degree sequences of the extremal trees bracket every tree
        if n >= 2 {
            for (t, dt) in d.trees.iter().zip(&degs) {
                let k = t.max_degree();
                let dh = IntSequence::new(build(FamilySpec::Hnk(n, k)).degree_sequence())?;
                let dl = IntSequence::new(build(FamilySpec::Tnk(n, k)).degree_sequence())?;
                report.add("degree_bracket_checks", 1);
                if lex_compare(&dh, dt)? == Ordering::Less
                    || lex_compare(dt, &dl)? == Ordering::Less
                {
                    report.violate(
                        "extremal trees bracket degree sequences",
                        ClaimKind::Theorem,
                        json!({"order": n, "tree": graph_json(t)}),
                        json!({"upper": seq_string(&dh), "tree": seq_string(dt), "lower": seq_string(&dl)}),
                    );
                }
            }
        }
        report.add("pairs", d.pairs.len() as u64);
        report.add("lex_distinct_pairs", lex_pairs);
        report.add("question_larger_degrees_counterexamples", q1_bad);
        report.add("equivalent_pairs", equiv);
        report.add("question_equal_degrees_counterexamples", q2_bad);
        report.per_order.push(json!({
            "n": n, "trees": d.trees.len(), "pairs": d.pairs.len(),
            "lex_distinct_pairs": lex_pairs, "larger_degrees_counterexamples": q1_bad,
            "equivalent_pairs": equiv, "equal_degrees_counterexamples": q2_bad,
        }));
    }
    Ok(report)
}

/// Every tree strictly dominates each single-vertex and single-edge deletion.
pub fn suite_subgraph(orders: RangeInclusive<usize>, limit: usize) -> Result<ScanReport> {
    let mut report = ScanReport::new("subgraph");
    range_params(&mut report, &orders, limit);
    for n in orders {
        let corpus = all_trees_with_limit(n, limit)?;
        let rows: Vec<ScanReport> = corpus
            .trees
            .par_iter()
            .map(|t| {
                let mut r = ScanReport::new("subgraph");
                let pt = GraphProfile::new(t);
                let mut subs: Vec<Graph> = (0..n)
                    .map(|v| t.delete_vertex(v).expect("in range"))
                    .collect();
                subs.extend(t.edges().map(|(u, v)| t.delete_edge(u, v).expect("edge")));
                for s in &subs {
                    let ps = GraphProfile::new(s);
                    let c = compare_profiles(&pt, &ps);
                    let instance = || json!({"graph": graph_json(t), "subgraph": graph_json(s)});
                    r.add("checks", 1);
                    if c.verdict != OrderVerdict::FirstStrictlyGreater {
                        r.violate(
                            "graph strictly dominates proper subgraph",
                            ClaimKind::Theorem,
                            instance(),
                            comparison_json(&pt, &ps, &c),
                        );
                    }
                    if check_xi(&mut r, &pt, &ps, &c, instance) {
                        r.add("xi_checks", 1);
                    }
                }
                r
            })
            .collect();
        let mut checks = 0;
        for r in rows {
            checks += r.totals.get("checks").copied().unwrap_or(0);
            report.add("xi_checks", r.totals.get("xi_checks").copied().unwrap_or(0));
            report.violations.extend(r.violations);
        }
        report.add("checks", checks);
        report
            .per_order
            .push(json!({"n": n, "trees": corpus.len(), "checks": checks}));
    }
    Ok(report)
}

/// The leaf-moving operation never increases a tree in the order.
pub fn suite_star(orders: RangeInclusive<usize>, limit: usize) -> Result<ScanReport> {
    let mut report = ScanReport::new("star-monotonicity");
    range_params(&mut report, &orders, limit);
    for n in orders {
        let corpus = all_trees_with_limit(n, limit)?;
        let rows: Vec<ScanReport> = corpus
            .trees
            .par_iter()
            .map(|t| {
                let mut r = ScanReport::new("star-monotonicity");
                let pt = GraphProfile::new(t);
                for (u, v, w) in admissible_star_triples(t) {
                    let s = t.star_op(u, v, w).expect("admissible");
                    let ps = GraphProfile::new(&s);
                    let c = compare_profiles(&pt, &ps);
                    let instance = || json!({"tree": graph_json(t), "u": u, "v": v, "w": w});
                    r.add("checks", 1);
                    if !matches!(
                        c.verdict,
                        OrderVerdict::FirstStrictlyGreater | OrderVerdict::Equivalent
                    ) {
                        r.violate(
                            "tree dominates its image under the leaf move",
                            ClaimKind::Theorem,
                            instance(),
                            comparison_json(&pt, &ps, &c),
                        );
                    }
                    if check_xi(&mut r, &pt, &ps, &c, instance) {
                        r.add("xi_checks", 1);
                    }
                }
                r
            })
            .collect();
        let mut checks = 0;
        for r in rows {
            checks += r.totals.get("checks").copied().unwrap_or(0);
            report.add("xi_checks", r.totals.get("xi_checks").copied().unwrap_or(0));
            report.violations.extend(r.violations);
        }
        report.add("checks", checks);
        report
            .per_order
            .push(json!({"n": n, "trees": corpus.len(), "checks": checks}));
    }
    Ok(report)
}

/// Upper limits for the combined theorem suite.
#[derive(Debug, Clone, Copy)]
pub struct TheoremLimits {
    pub subgraph: usize,
    pub star: usize,
    pub sandwich: usize,
    pub chains: usize,
}

impl Default for TheoremLimits {
    fn default() -> Self {
        TheoremLimits {
            subgraph: 9,
            star: 10,
            sandwich: 10,
            chains: 12,
        }
    }
}

/// Runs every theorem-backed check; any violation is a bug.
pub fn theorem_suite(limits: TheoremLimits) -> Result<ScanReport> {
    let cap = DEFAULT_MAX_ORDER
        .max(limits.subgraph)
        .max(limits.star)
        .max(limits.sandwich);
    let mut report = ScanReport::new("theorems");
    report.param("subgraph_max_n", limits.subgraph);
    report.param("star_max_n", limits.star);
    report.param("sandwich_max_n", limits.sandwich);
    report.param("chains_max_n", limits.chains);
    report.absorb(suite_subgraph(1..=limits.subgraph, cap)?);
    report.absorb(suite_star(1..=limits.star, cap)?);
    report.absorb(scan_sandwich(1..=limits.sandwich, cap)?);
    report.absorb(scan_chains(2..=limits.chains, 0, cap)?);
    Ok(report)
}
