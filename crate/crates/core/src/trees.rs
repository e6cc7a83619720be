//! Enumeration of free trees and starlike trees.
//!
//! The main generator walks canonical rooted level sequences and keeps the
//! ones rooted at a centroid (the smaller-coded centroid for bicentral
//! trees), so each free tree appears once. A Prüfer-based generator with
//! canonical deduplication serves as an independent check.

use std::collections::{BTreeSet, HashMap};

use crate::canon::{canonical_form, centroids, rooted_tree_code, tree_code};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::Graph;
use crate::seq::IntSequence;

pub const DEFAULT_MAX_ORDER: usize = 14;

/// Number of free trees of order `n` for `n = 0..=14` (order 0 unused).
pub const FREE_TREE_COUNTS: [usize; 15] =
    [0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159];

/// All trees of one order, sorted by canonical form.
#[derive(Debug, Clone)]
pub struct TreeCorpus {
    pub order: usize,
    pub trees: Vec<Graph>,
    pub codes: Vec<Vec<u8>>,
    pub index: HashMap<Vec<u8>, usize>,
}

impl TreeCorpus {
    fn from_graphs(order: usize, graphs: Vec<Graph>) -> Self {
        let mut keyed: Vec<(Vec<u8>, Graph)> = graphs
            .into_iter()
            .map(|g| (canonical_form(&g), g))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        let index = keyed
            .iter()
            .enumerate()
            .map(|(i, (c, _))| (c.clone(), i))
            .collect();
        let (codes, trees) = keyed.into_iter().unzip();
        TreeCorpus {
            order,
            trees,
            codes,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Position of the tree isomorphic to `g`, if any.
    pub fn position(&self, g: &Graph) -> Option<usize> {
        self.index.get(&canonical_form(g)).copied()
    }

    /// One line per tree: `n m u v u v ...` followed by a tab and the
    /// canonical form in hex.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (t, code) in self.trees.iter().zip(&self.codes) {
            out.push_str(&format!("{} {}", t.order(), t.size()));
            for (u, v) in t.edges() {
                out.push_str(&format!(" {u} {v}"));
            }
            out.push('\t');
            for b in code {
                out.push_str(&format!("{b:02x}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn all_trees(n: usize) -> Result<TreeCorpus> {
    all_trees_with_limit(n, DEFAULT_MAX_ORDER)
}

pub fn all_trees_with_limit(n: usize, limit: usize) -> Result<TreeCorpus> {
    if n == 0 {
        return Err(Error::InvalidParameters("tree order must be >= 1".into()));
    }
    if n > limit {
        return Err(Error::TooLarge { order: n, limit });
    }
    Ok(TreeCorpus::from_graphs(n, level_sequence_trees(n)))
}

fn from_level_sequence(levels: &[usize]) -> Graph {
    let mut last_at = vec![0usize; levels.len() + 2];
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for (i, &l) in levels.iter().enumerate() {
        if i > 0 {
            edges.push((last_at[l - 1], i));
        }
        last_at[l] = i;
    }
    Graph::from_edges(levels.len(), &edges).expect("level sequences give trees")
}

/// Free trees of order `n`, one per isomorphism class, in generation order.
pub fn level_sequence_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut levels: Vec<usize> = (1..=n).collect();
    loop {
        let t = from_level_sequence(&levels);
        let cs = centroids(&t);
        let keep = cs.contains(&0) && (cs.len() == 1 || rooted_tree_code(&t, 0) == tree_code(&t));
        if keep {
            out.push(t);
        }
        let Some(p) = levels.iter().rposition(|&l| l > 2) else {
            break;
        };
        let q = levels[..p]
            .iter()
            .rposition(|&l| l == levels[p] - 1)
            .expect("a parent level exists");
        let period = p - q;
        for i in p..n {
            levels[i] = levels[i - period];
        }
    }
    out
}

/// Decodes a Prüfer sequence over labels `0..n` (`n = seq.len() + 2`).
pub fn prufer_decode(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = leaves.pop_first().expect("a leaf is available");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    Graph::from_edges(n, &edges).expect("Prüfer sequences give trees")
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Integer partitions of `total` into at most `max_parts` parts, each at
/// most `max_part`, non-increasing.
fn bounded_partitions(total: usize, max_parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, parts - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, max_parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// Labelled trees from Prüfer sequences, deduplicated up to isomorphism.
///
/// With `degree_sorted` only sequences in which label `i` occurs at least as
/// often as label `i + 1` are decoded; every tree has such a labelling (sort
/// vertices by degree), so no class is lost. Without it all `n^(n-2)`
/// sequences are decoded, which is only practical for small `n`.
pub fn prufer_trees(n: usize, degree_sorted: bool) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::InvalidParameters("tree order must be >= 1".into()));
    }
    if n <= 2 {
        return Ok(vec![level_sequence_trees(n).remove(0)]);
    }
    let len = n - 2;
    let mut seen: HashMap<Vec<u8>, Graph> = HashMap::new();
    let mut visit = |seq: &[usize]| {
        let t = prufer_decode(seq);
        seen.entry(canonical_form(&t)).or_insert(t);
    };
    if degree_sorted {
        for counts in bounded_partitions(len, n, len) {
            let mut word: Vec<usize> = counts
                .iter()
                .enumerate()
                .flat_map(|(label, &c)| std::iter::repeat_n(label, c))
                .collect();
            loop {
                visit(&word);
                if !next_permutation(&mut word) {
                    break;
                }
            }
        }
    } else {
        if n > 9 {
            return Err(Error::TooLarge { order: n, limit: 9 });
        }
        let mut word = vec![0usize; len];
        'outer: loop {
            visit(&word);
            for i in (0..len).rev() {
                word[i] += 1;
                if word[i] < n {
                    continue 'outer;
                }
                word[i] = 0;
            }
            break;
        }
    }
    let mut keyed: Vec<(Vec<u8>, Graph)> = seen.into_iter().collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

/// A starlike tree together with its leg parameters `n_1 >= ... >= n_k`.
#[derive(Debug, Clone)]
pub struct Starlike {
    pub legs: IntSequence,
    pub graph: Graph,
}

/// Partitions of `total` into exactly `k` parts, each at least 2, in
/// lex-decreasing order.
pub fn partitions_min2(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest < 2 * parts {
            return;
        }
        let hi = cap.min(rest - 2 * (parts - 1));
        for p in (2..=hi).rev() {
            cur.push(p);
            rec(rest - p, parts - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, k, total, &mut Vec::new(), &mut out);
    out
}

/// All `T(n_1, ..., n_k)` with `n_1 + ... + n_k = sum`; these have order
/// `sum - k + 1`. For `k <= 2` every partition gives the same path, so only
/// the lex-largest one is returned.
pub fn all_starlike(sum: usize, k: usize) -> Result<Vec<Starlike>> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be >= 1".into()));
    }
    let mut parts = partitions_min2(sum, k);
    if k <= 2 {
        parts.truncate(1);
    }
    parts
        .into_iter()
        .map(|p| {
            let graph = FamilySpec::Spider(p.clone()).build()?;
            let legs = IntSequence::new(p.into_iter().map(|x| x as i64).collect())?;
            Ok(Starlike { legs, graph })
        })
        .collect()
}

/// Same family indexed by tree order instead of the leg sum.
pub fn all_starlike_by_order(order: usize, k: usize) -> Result<Vec<Starlike>> {
    if order == 0 {
        return Err(Error::InvalidParameters("order must be >= 1".into()));
    }
    all_starlike(order + k.max(1) - 1, k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpiderSignature {
    Starlike(IntSequence),
    /// The tree is a path (no vertex of degree >= 3).
    Path,
    /// More than one vertex has degree >= 3.
    Multiple,
}

/// Leg parameters `(n_1, ..., n_k)` of a starlike tree: each leg's vertex
/// count plus one, sorted non-increasingly.
pub fn spider_signature(t: &Graph) -> Result<SpiderSignature> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let high: Vec<usize> = (0..t.order()).filter(|&v| t.degree(v) >= 3).collect();
    let center = match high.as_slice() {
        [] => return Ok(SpiderSignature::Path),
        [c] => *c,
        _ => return Ok(SpiderSignature::Multiple),
    };
    let mut legs: Vec<i64> = t
        .neighbors(center)
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            while t.degree(cur) == 2 {
                let next = t
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .unwrap();
                prev = cur;
                cur = next;
                len += 1;
            }
            len + 1
        })
        .collect();
    legs.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SpiderSignature::Starlike(IntSequence::new(legs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::parse_graph;
    use crate::graph::admissible_star_triples;

    #[test]
    fn level_sequence_counts() {
        for n in 1..=14 {
            assert_eq!(level_sequence_trees(n).len(), FREE_TREE_COUNTS[n], "n={n}");
        }
    }

    #[test]
    fn corpus_basics() {
        let c = all_trees(4).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.position(&parse_graph("P4").unwrap()).is_some());
        assert!(c.position(&parse_graph("S4").unwrap()).is_some());
        for t in &all_trees(8).unwrap().trees {
            assert!(t.is_tree());
            assert_eq!(t.size(), 7);
        }
        assert!(matches!(
            all_trees(15),
            Err(Error::TooLarge {
                order: 15,
                limit: 14
            })
        ));
        assert!(all_trees(0).is_err());
        assert!(all_trees_with_limit(15, 15).is_ok());
    }

    #[test]
    fn prufer_agrees_with_level_sequences() {
        for n in 1..=8 {
            let full: Vec<Vec<u8>> = prufer_trees(n, false)
                .unwrap()
                .iter()
                .map(canonical_form)
                .collect();
            let sorted: Vec<Vec<u8>> = prufer_trees(n, true)
                .unwrap()
                .iter()
                .map(canonical_form)
                .collect();
            assert_eq!(full, sorted, "n={n}");
            assert_eq!(full, all_trees(n).unwrap().codes, "n={n}");
        }
    }

    #[test]
    fn prufer_decode_examples() {
        let star = prufer_decode(&[0, 0, 0]);
        assert_eq!(star.degree(0), 4);
        let path = prufer_decode(&[1, 2, 3]);
        assert_eq!(path.max_degree(), 2);
    }

    #[test]
    fn starlike_examples() {
        let legs =
            |v: Vec<Starlike>| -> Vec<String> { v.iter().map(|s| s.legs.to_string()).collect() };
        let nine = all_starlike(9, 3).unwrap();
        assert_eq!(legs(nine.clone()), ["5,2,2", "4,3,2", "3,3,3"]);
        assert!(nine.iter().all(|s| s.graph.order() == 7));
        let six = all_starlike(6, 3).unwrap();
        assert_eq!(six.len(), 1);
        assert_eq!(
            canonical_form(&six[0].graph),
            canonical_form(&parse_graph("S4").unwrap())
        );
        let path = all_starlike(7, 2).unwrap();
        assert_eq!(path.len(), 1);
        assert_eq!(
            canonical_form(&path[0].graph),
            canonical_form(&parse_graph("P6").unwrap())
        );
        assert_eq!(all_starlike_by_order(7, 3).unwrap().len(), 3);
        assert!(all_starlike(9, 0).is_err());
    }

    #[test]
    fn starlike_counts_match_partition_oracle() {
        // p(n, k) with parts >= 2 equals partitions of n - k into exactly k parts
        fn exact_parts(n: usize, k: usize) -> usize {
            let mut dp = vec![vec![0usize; k + 1]; n + 1];
            dp[0][0] = 1;
            for total in 1..=n {
                for parts in 1..=k.min(total) {
                    dp[total][parts] = dp[total - 1][parts - 1] + dp[total - parts][parts];
                }
            }
            dp[n][k]
        }
        for sum in 2..=20 {
            for k in 3..=6 {
                let expect = if sum >= k { exact_parts(sum - k, k) } else { 0 };
                assert_eq!(partitions_min2(sum, k).len(), expect, "sum={sum} k={k}");
            }
        }
    }

    #[test]
    fn spider_signatures() {
        let sig = |s: &str| spider_signature(&parse_graph(s).unwrap()).unwrap();
        assert_eq!(
            sig("T(4,3,2)"),
            SpiderSignature::Starlike("4,3,2".parse().unwrap())
        );
        assert_eq!(
            sig("T(2,2,2,5)"),
            SpiderSignature::Starlike("5,2,2,2".parse().unwrap())
        );
        assert_eq!(sig("P7"), SpiderSignature::Path);
        assert_eq!(sig("H(7,3)"), SpiderSignature::Multiple);
        assert_eq!(
            spider_signature(&parse_graph("C4").unwrap()),
            Err(Error::NotATree)
        );
        for sum in 6..=13 {
            for k in 3..=5 {
                for s in all_starlike(sum, k).unwrap() {
                    assert_eq!(
                        spider_signature(&s.graph).unwrap(),
                        SpiderSignature::Starlike(s.legs)
                    );
                }
            }
        }
    }

    #[test]
    fn corpus_closed_under_star() {
        for n in 4..=9 {
            let corpus = all_trees(n).unwrap();
            for t in &corpus.trees {
                for (u, v, w) in admissible_star_triples(t) {
                    let s = t.star_op(u, v, w).unwrap();
                    assert!(corpus.position(&s).is_some());
                }
            }
        }
    }

    #[test]
    fn export_lines() {
        let c = all_trees(3).unwrap();
        let text = c.export();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("3 2 "));
    }
}
