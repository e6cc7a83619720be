//! Exact isomorphism-invariant encodings.
//!
//! Trees are encoded with the AHU parenthesis code rooted at the centroid
//! (the smaller code wins when there are two centroids). Other connected
//! graphs go through colour refinement plus individualisation, keeping the
//! lexicographically smallest adjacency bit string over all leaves of the
//! search tree. Interchangeable twin vertices are only individualised once.
//! Disconnected graphs sort the codes of their components.

use crate::graph::Graph;

/// Canonical byte string: equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let comps = g.components();
    if g.is_forest() {
        let mut codes: Vec<Vec<u8>> = comps
            .iter()
            .filter(|c| !c.is_empty())
            .map(tree_code)
            .collect();
        codes.sort();
        let mut out = vec![b'F'];
        for c in codes {
            out.extend(c);
        }
        return out;
    }
    let mut codes: Vec<Vec<u8>> = comps.iter().map(component_code).collect();
    codes.sort();
    let mut out = vec![b'G'];
    for c in codes {
        out.extend((c.len() as u32).to_le_bytes());
        out.extend(c);
    }
    out
}

fn component_code(g: &Graph) -> Vec<u8> {
    if g.is_tree() {
        let mut out = vec![b't'];
        out.extend(tree_code(g));
        out
    } else {
        let mut out = vec![b'c'];
        out.extend((g.order() as u32).to_le_bytes());
        out.extend(adjacency_bits(g, &canonical_labeling(g)));
        out
    }
}

/// AHU code of `t` rooted at `root`: `(` + sorted child codes + `)`.
pub fn rooted_tree_code(t: &Graph, root: usize) -> Vec<u8> {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut child_codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[v]);
        kids.sort();
        let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for k in kids {
            code.extend(k);
        }
        code.push(b')');
        if v == root {
            return code;
        }
        child_codes[parent[v]].push(code);
    }
    unreachable!("root is processed last")
}

/// Centroid vertices of a tree (one or two, adjacent when two).
pub fn centroids(t: &Graph) -> Vec<usize> {
    let n = t.order();
    if n == 0 {
        return Vec::new();
    }
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev().take(n - 1) {
        size[parent[v]] += size[v];
    }
    (0..n)
        .filter(|&v| {
            let heaviest_child = t
                .neighbors(v)
                .iter()
                .filter(|&&w| parent[w] == v && w != v)
                .map(|&w| size[w])
                .max()
                .unwrap_or(0);
            heaviest_child.max(n - size[v]) * 2 <= n
        })
        .collect()
}

/// Canonical code of a (connected) tree.
pub fn tree_code(t: &Graph) -> Vec<u8> {
    centroids(t)
        .into_iter()
        .map(|c| rooted_tree_code(t, c))
        .min()
        .unwrap_or_default()
}

fn adjacency_bits(g: &Graph, label: &[usize]) -> Vec<u8> {
    let n = g.order();
    let mut inv = vec![0; n];
    for (v, &l) in label.iter().enumerate() {
        inv[l] = v;
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 16 + 1);
    let mut byte = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in i + 1..n {
            byte = (byte << 1) | g.has_edge(inv[i], inv[j]) as u8;
            filled += 1;
            if filled == 8 {
                bits.push(byte);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bits.push(byte << (8 - filled));
    }
    bits
}

/// Iterated colour refinement; colours are ranks of (colour, neighbour
/// colour multiset) signatures, so the result is labelling-independent.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.order();
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap())
            .collect();
        let next_classes = distinct.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let a = g.neighbors(u).iter().filter(|&&x| x != v);
    let b = g.neighbors(v).iter().filter(|&&x| x != u);
    a.eq(b)
}

/// A canonical labelling (vertex -> new index) of `g`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let init: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    search(g, refine(g, init), &mut best);
    best.map(|(_, l)| l).unwrap_or_default()
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let n = g.order();
    let mut counts = vec![0usize; n.max(1)];
    for &c in &colors {
        counts[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let code = adjacency_bits(g, &colors);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, colors));
        }
        return;
    };
    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let split: Vec<usize> = (0..n)
            .map(|w| 2 * colors[w] + usize::from(colors[w] == target && w != v))
            .collect();
        search(g, refine(g, split), best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::parse_graph;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        g.relabel(&perm)
    }

    #[test]
    fn invariant_under_relabeling() {
        for spec in [
            "P4",
            "C5",
            "K4",
            "K3,4",
            "G9",
            "H(9,4)",
            "T(4,3,2)",
            "P3 + C4 + K1",
            "C6 + C3 + C3",
            "2*C3",
            "K5 + P2",
            "C12",
        ] {
            let g = parse_graph(spec).unwrap();
            let c = canonical_form(&g);
            for seed in 0..10 {
                assert_eq!(canonical_form(&shuffled(&g, seed)), c, "{spec}");
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let forms: Vec<Vec<u8>> = [
            "C5", "P5", "G5", "C6", "2*C3", "K3,3", "G6", "T(3,3,2)", "T(4,2,2)",
        ]
        .iter()
        .map(|s| canonical_form(&parse_graph(s).unwrap()))
        .collect();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                assert_ne!(forms[i], forms[j], "{i} vs {j}");
            }
        }
    }

    #[test]
    fn tnk_matches_path() {
        assert_eq!(
            canonical_form(&parse_graph("Tnk(6,2)").unwrap()),
            canonical_form(&parse_graph("P6").unwrap())
        );
    }

    #[test]
    fn centroid_counts() {
        assert_eq!(centroids(&parse_graph("P4").unwrap()).len(), 2);
        assert_eq!(centroids(&parse_graph("P5").unwrap()), vec![2]);
        assert_eq!(centroids(&parse_graph("S6").unwrap()), vec![0]);
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        let k = parse_graph("K12").unwrap();
        assert_eq!(canonical_form(&k), canonical_form(&shuffled(&k, 3)));
        let kb = parse_graph("K6,7").unwrap();
        assert_eq!(canonical_form(&kb), canonical_form(&shuffled(&kb, 5)));
    }
}
