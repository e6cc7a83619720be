//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! A [`Graph`] is immutable once built. Every structural operation returns a
//! fresh graph; deletions renumber the surviving vertices in their original
//! order.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A simple graph stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.order(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidParameters(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::InvalidParameters(format!(
                    "duplicate edge at vertex {v}"
                )));
            }
        }
        Ok(Graph { adj })
    }

    /// Builds from adjacency lists that are already known to be valid.
    pub(crate) fn from_adj_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    fn check_edge(&self, u: usize, v: usize) -> Result<()> {
        if self.has_edge(u, v) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(u, v))
        }
    }

    /// Subgraph induced on the vertices with `keep[v] == true`, renumbered in order.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        let mut next = 0;
        for (v, &k) in keep.iter().enumerate() {
            if k {
                index[v] = next;
                next += 1;
            }
        }
        let mut adj = Vec::with_capacity(next);
        for (v, &k) in keep.iter().enumerate() {
            if k {
                adj.push(
                    self.adj[v]
                        .iter()
                        .filter(|&&w| keep[w])
                        .map(|&w| index[w])
                        .collect(),
                );
            }
        }
        Graph { adj }
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut keep = vec![true; self.order()];
        keep[v] = false;
        Ok(self.induced(&keep))
    }

    /// Removes `[v]`, the vertex together with all its neighbours.
    pub fn delete_closed_nbhd_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut keep = vec![true; self.order()];
        keep[v] = false;
        for &w in &self.adj[v] {
            keep[w] = false;
        }
        Ok(self.induced(&keep))
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_edge(u, v)?;
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        Ok(Graph { adj })
    }

    /// Removes `[e] = [u] ∪ [v]`.
    pub fn delete_closed_nbhd_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_edge(u, v)?;
        let mut keep = vec![true; self.order()];
        for x in [u, v] {
            keep[x] = false;
            for &w in &self.adj[x] {
                keep[w] = false;
            }
        }
        Ok(self.induced(&keep))
    }

    /// `self + other`; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&w| w + shift).collect()),
        );
        Graph { adj }
    }

    /// `r` disjoint copies of `self`.
    pub fn copies(&self, r: usize) -> Graph {
        (0..r).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// The raw ⋆ move: delete edge `vw`, add edge `uw`.
    ///
    /// Requires `deg(u) = 1`, `deg(v) >= 3`, `w ~ v`, `w != u` and `u !~ w`.
    /// Whether `v` is a nearest high-degree vertex to `u` is not checked here;
    /// see [`admissible_star_triples`].
    pub fn star_op(&self, u: usize, v: usize, w: usize) -> Result<Graph> {
        for x in [u, v, w] {
            self.check_vertex(x)?;
        }
        let fail = |m: &str| Err(Error::PreconditionViolated(m.to_string()));
        if self.degree(u) != 1 {
            return fail("deg(u) must be 1");
        }
        if self.degree(v) < 3 {
            return fail("deg(v) must be at least 3");
        }
        if !self.has_edge(v, w) {
            return fail("w must be adjacent to v");
        }
        if w == u {
            return fail("w must differ from u");
        }
        if self.has_edge(u, w) {
            return fail("u must not be adjacent to w");
        }
        let mut adj = self.adj.clone();
        adj[v].retain(|&x| x != w);
        adj[w].retain(|&x| x != v);
        adj[u].push(w);
        adj[w].push(u);
        adj[u].sort_unstable();
        adj[w].sort_unstable();
        Ok(Graph { adj })
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Graph> {
        let sets = self.component_vertex_sets();
        if sets.len() == 1 {
            return vec![self.clone()];
        }
        sets.iter()
            .map(|set| {
                let mut keep = vec![false; self.order()];
                for &v in set {
                    keep[v] = true;
                }
                self.induced(&keep)
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_vertex_sets().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.size() + self.component_count() == self.order()
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.size() + 1 == self.order() && self.is_connected()
    }

    /// The non-increasing degree sequence `D_G`.
    pub fn degree_sequence(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.adj.iter().map(|l| l.len() as i64).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Applies the vertex permutation `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.order()];
        for (v, list) in self.adj.iter().enumerate() {
            adj[perm[v]] = list.iter().map(|&w| perm[w]).collect();
        }
        Graph::from_adj_unchecked(adj)
    }

    /// BFS distances from `s`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Serializes to the text edge-list format: `n m` then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut tokens = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let trimmed = line.split('#').next().unwrap_or("");
            for tok in trimmed.split_whitespace() {
                let pos = offset + tok.as_ptr() as usize - line.as_ptr() as usize;
                tokens.push((pos, tok));
            }
            offset += line.len();
        }
        let mut it = tokens.into_iter();
        let mut next_num = |what: &str| -> Result<usize> {
            let (pos, tok) = it
                .next()
                .ok_or_else(|| Error::parse(text.len(), format!("expected {what}")))?;
            tok.parse::<usize>()
                .map_err(|_| Error::parse(pos, format!("expected {what}, found `{tok}`")))
        };
        let n = next_num("vertex count")?;
        let m = next_num("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let u = next_num("edge endpoint")?;
            let v = next_num("edge endpoint")?;
            edges.push((u, v));
        }
        Graph::from_edges(n, &edges)
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_edge_list(s)
    }
}

/// All `(u, v, w)` triples to which the ⋆ operation applies, where `v` is a
/// nearest vertex of degree at least 3 to the leaf `u` (every tied nearest
/// candidate is listed) and `w` is not on a shortest path from `v` to `u`.
pub fn admissible_star_triples(g: &Graph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in (0..g.order()).filter(|&u| g.degree(u) == 1) {
        let dist = g.distances_from(u);
        let nearest = (0..g.order())
            .filter(|&v| g.degree(v) >= 3 && dist[v] != usize::MAX)
            .map(|v| dist[v])
            .min();
        let Some(d) = nearest else { continue };
        for v in (0..g.order()).filter(|&v| g.degree(v) >= 3 && dist[v] == d) {
            for &w in g.neighbors(v) {
                // a neighbour closer to u would cut the u-v path off
                if w != u && !g.has_edge(u, w) && dist[w] >= dist[v] {
                    out.push((u, v, w));
                }
            }
        }
    }
    out
}

/// Applies ⋆ at leaf `u`, choosing the nearest high-degree vertex with the
/// lowest index and its lowest-index admissible neighbour.
pub fn guided_star_op(g: &Graph, u: usize) -> Result<Graph> {
    let (_, v, w) = admissible_star_triples(g)
        .into_iter()
        .find(|t| t.0 == u)
        .ok_or_else(|| Error::PreconditionViolated(format!("no admissible triple for leaf {u}")))?;
    g.star_op(u, v, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn vertex_deletions() {
        let g = path(3).delete_vertex(1).unwrap();
        assert_eq!(g, Graph::empty(2));
        let g = star(5).delete_closed_nbhd_vertex(0).unwrap();
        assert_eq!(g.order(), 0);
        let g = path(4).delete_closed_nbhd_vertex(0).unwrap();
        assert_eq!(g, path(2));
        assert!(matches!(
            path(3).delete_vertex(3),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn edge_deletions() {
        assert_eq!(path(2).delete_edge(0, 1).unwrap(), Graph::empty(2));
        assert_eq!(path(4).delete_closed_nbhd_edge(1, 2).unwrap().order(), 0);
        assert_eq!(
            cycle(5).delete_closed_nbhd_edge(2, 3).unwrap(),
            Graph::empty(1)
        );
        assert_eq!(path(3).delete_edge(0, 2), Err(Error::NotAnEdge(0, 2)));
    }

    #[test]
    fn union_and_components() {
        let k1 = Graph::empty(1);
        assert_eq!(k1.disjoint_union(&k1), Graph::empty(2));
        let g = path(2).disjoint_union(&path(3));
        assert_eq!((g.order(), g.size(), g.component_count()), (5, 3, 2));
        assert_eq!(g.components(), vec![path(2), path(3)]);
        assert_eq!(Graph::empty(0).disjoint_union(&cycle(4)), cycle(4));
        assert_eq!(
            Graph::empty(3).components(),
            vec![k1.clone(), k1.clone(), k1]
        );
        assert_eq!(cycle(6).components(), vec![cycle(6)]);
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(star(5).degree_sequence(), vec![4, 1, 1, 1, 1]);
        assert_eq!(path(4).degree_sequence(), vec![2, 2, 1, 1]);
    }

    #[test]
    fn star_op_preconditions() {
        let s = star(4);
        assert!(matches!(
            s.star_op(0, 1, 2),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            s.star_op(1, 0, 1),
            Err(Error::PreconditionViolated(_))
        ));
        let p = path(5);
        assert!(matches!(
            p.star_op(0, 2, 3),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn star_op_reduces_leaves_by_one() {
        // spider with legs 3,2,2: center 0, legs 0-1-2, 0-3, 0-4
        let t = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 3), (0, 4)]).unwrap();
        let leaves = |g: &Graph| (0..g.order()).filter(|&v| g.degree(v) == 1).count();
        for (u, v, w) in admissible_star_triples(&t) {
            let h = t.star_op(u, v, w).unwrap();
            assert_eq!(h.order(), t.order());
            assert_eq!(h.size(), t.size());
            assert_eq!(leaves(&h) + 1, leaves(&t));
            assert!(h.is_tree());
            assert_eq!(
                crate::canonical_form(&h),
                crate::canonical_form(&crate::parse_graph("P5").unwrap())
            );
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = cycle(5);
        let text = g.to_edge_list();
        assert_eq!(text.lines().next(), Some("5 5"));
        assert_eq!(text.parse::<Graph>().unwrap(), g);
        let err = Graph::parse_edge_list("3 1\n0 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                pos: 6,
                msg: "expected edge endpoint, found `x`".into()
            }
        );
    }

    #[test]
    fn forest_and_tree_predicates() {
        assert!(path(5).is_tree());
        assert!(!cycle(5).is_forest());
        assert!(Graph::empty(3).is_forest());
        assert!(!Graph::empty(3).is_tree());
        assert!(!Graph::empty(0).is_tree());
    }
}
