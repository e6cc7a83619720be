//! Independence polynomials `I(G, x) = sum_k s(G, k) x^k`.
//!
//! The general algorithm multiplies over connected components, uses a
//! bottom-up tree DP on tree components, and otherwise expands
//! `I(G) = I(G - v) + x I(G - [v])` at a vertex of maximum degree, memoising
//! non-tree components on their exact canonical form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPolynomial;

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 24;

/// Memoising evaluator. Results never depend on the memo contents, so one
/// calculator per worker thread is as good as a shared one.
#[derive(Debug, Default)]
pub struct IndependenceCalculator {
    memo: HashMap<Vec<u8>, IntPolynomial>,
}

impl IndependenceCalculator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn compute(&mut self, g: &Graph) -> IntPolynomial {
        g.components()
            .iter()
            .filter(|c| !c.is_empty())
            .fold(IntPolynomial::one(), |acc, c| &acc * &self.connected(c))
    }

    fn connected(&mut self, g: &Graph) -> IntPolynomial {
        if g.is_tree() {
            return tree_dp(g);
        }
        let key = canonical_form(g);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let pivot = (0..g.order())
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("non-empty graph");
        let without = self.compute(&g.delete_vertex(pivot).expect("pivot in range"));
        let with = self.compute(&g.delete_closed_nbhd_vertex(pivot).expect("pivot in range"));
        let p = &without + &with.shift(1);
        self.memo.insert(key, p.clone());
        p
    }
}

pub fn independence_polynomial(g: &Graph) -> IntPolynomial {
    IndependenceCalculator::new().compute(g)
}

/// Linear-time DP for forests.
pub fn independence_polynomial_tree(g: &Graph) -> Result<IntPolynomial> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    Ok(g.components()
        .iter()
        .filter(|c| !c.is_empty())
        .fold(IntPolynomial::one(), |acc, c| &acc * &tree_dp(c)))
}

/// For each vertex: (sets in its subtree avoiding it, sets containing it).
fn tree_dp(t: &Graph) -> IntPolynomial {
    let n = t.order();
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
    let x = IntPolynomial::monomial(1);
    let mut excl = vec![IntPolynomial::one(); n];
    let mut incl = vec![x; n];
    for &v in order.iter().rev() {
        if v == 0 {
            break;
        }
        let p = parent[v];
        let total = &excl[v] + &incl[v];
        excl[p] = &excl[p] * &total;
        incl[p] = &incl[p] * &excl[v];
    }
    &excl[0] + &incl[0]
}

/// Counts independent sets of every size by enumerating all vertex subsets.
pub fn brute_force_polynomial(g: &Graph) -> Result<IntPolynomial> {
    brute_force_polynomial_with_limit(g, DEFAULT_BRUTE_FORCE_LIMIT)
}

pub fn brute_force_polynomial_with_limit(g: &Graph, limit: usize) -> Result<IntPolynomial> {
    let n = g.order();
    if n > limit || n >= 64 {
        return Err(Error::TooLarge { order: n, limit });
    }
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let mut counts = vec![0u64; n + 1];
    for mask in 0u64..(1u64 << n) {
        let independent = (0..n).all(|v| mask & (1 << v) == 0 || mask & nbr[v] == 0);
        if independent {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(IntPolynomial::new(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// Independence number `alpha(G)`, the degree of `I(G, x)`.
pub fn independence_number(p: &IntPolynomial) -> usize {
    p.degree().unwrap_or(0)
}

/// Checks `s(G,0) = 1`, `s(G,1) = n`, `s(G,2) = C(n,2) - m` and positivity
/// up to the degree.
pub fn check_coefficient_identities(g: &Graph, p: &IntPolynomial) -> bool {
    let n = g.order();
    let m = g.size();
    let c = p.coeffs();
    let positive = c.iter().all(|a| *a > BigInt::zero());
    let s0 = c.first().is_some_and(One::is_one);
    let s1 = n == 0 || p.coeff(1) == BigInt::from(n);
    let s2 = p.degree().unwrap_or(0) < 2 || p.coeff(2) == BigInt::from(n * (n - 1) / 2 - m);
    positive && s0 && s1 && s2
}
