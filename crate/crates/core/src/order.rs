//! The root-interval order: `G ⪰ H` iff `I(H, x) >= I(G, x)` for every
//! `x` in `[xi(G), 0]`.
//!
//! With `D = I(H) - I(G)` we isolate the roots of the square-free part of
//! `D / x^m` inside `(xi(G), 0)` and test the sign of `D` at one rational
//! point of every root-free gap. No floating point is involved.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::indpoly::IndependenceCalculator;
use crate::poly::IntPolynomial;
use crate::roots::{
    compare_roots, isolate_roots, rational_string, xi_of_poly, AlgebraicRoot, SturmSequence,
};

/// Independence polynomial plus its largest root, computed once per graph.
#[derive(Debug, Clone)]
pub struct GraphProfile {
    pub poly: IntPolynomial,
    /// `None` only for the empty graph, whose polynomial is the constant 1.
    /// Such a graph is treated as having `xi = -inf`.
    pub xi: Option<AlgebraicRoot>,
}

impl GraphProfile {
    pub fn new(g: &Graph) -> Self {
        Self::with_calculator(g, &mut IndependenceCalculator::new())
    }

    pub fn with_calculator(g: &Graph, calc: &mut IndependenceCalculator) -> Self {
        Self::from_poly(calc.compute(g))
    }

    pub fn from_poly(poly: IntPolynomial) -> Self {
        let xi = (poly.degree().unwrap_or(0) > 0)
            .then(|| xi_of_poly(&poly).expect("independence polynomials have a real root"));
        GraphProfile { poly, xi }
    }
}

/// Outcome of testing one direction `G ⪰ H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domination {
    pub holds: bool,
    /// A rational `x0` in `(xi(G), 0)` with `I(H, x0) < I(G, x0)` when the
    /// relation fails.
    pub witness: Option<BigRational>,
    /// Sign of `I(H) - I(G)` at `x = xi(G)`.
    pub endpoint_sign: Ordering,
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigInt::from(2)
}

/// Decides `g ⪰ h` from precomputed profiles.
pub fn dominates_profiles(g: &GraphProfile, h: &GraphProfile) -> Domination {
    let d = &h.poly - &g.poly;
    let trivially = Domination {
        holds: true,
        witness: None,
        endpoint_sign: Ordering::Equal,
    };
    if d.is_zero() {
        return trivially;
    }
    // I = 1 has no root, so the interval is all of (-inf, 0]; there
    // I(h) - 1 is negative just left of 0 whenever h is non-empty
    let Some(xi) = &g.xi else {
        let mut x = -BigRational::one();
        while d.sign_at(&x) != Ordering::Less {
            x /= BigInt::from(2);
        }
        return Domination {
            holds: false,
            witness: Some(x),
            endpoint_sign: Ordering::Less,
        };
    };
    let e = d.unshift(d.trailing_zeros());
    let sf = e.square_free_part().expect("nonzero");
    let sturm = SturmSequence::new(&sf);
    let zero = BigRational::zero();

    // `start` in (xi, 0) with no root of sf in (xi, start]
    let xi_is_root = xi.is_root_of(&sf);
    let mut r = xi.clone();
    let allowed = usize::from(xi_is_root);
    while !r.is_exact() && sturm.count(r.lo(), r.hi()) > allowed {
        r.bisect();
    }
    let start = if r.is_exact() {
        let x = r.lo().clone();
        let mut probe = midpoint(&x, &zero);
        while sturm.count(&x, &probe) > 0 {
            probe = midpoint(&x, &probe);
        }
        probe
    } else {
        r.hi().clone()
    };
    debug_assert!(start < zero);

    let endpoint_sign = if xi_is_root {
        Ordering::Equal
    } else {
        d.sign_at(&start)
    };

    let mut brackets = isolate_roots(&sturm, &start, &zero);
    if let Some(last) = brackets.last_mut() {
        while last.0 != last.1 && last.1 >= zero {
            let mid = midpoint(&last.0, &last.1);
            match sf.sign_at(&mid) {
                Ordering::Equal => *last = (mid.clone(), mid),
                s if s == sf.sign_at(&last.0) => last.0 = mid,
                _ => last.1 = mid,
            }
        }
    }

    let mut samples = vec![start];
    for (j, (lo, hi)) in brackets.iter().enumerate() {
        let sample = if lo != hi {
            hi.clone()
        } else {
            match brackets.get(j + 1) {
                Some((nlo, nhi)) if nlo != nhi => nlo.clone(),
                Some((nlo, _)) => midpoint(lo, nlo),
                None => midpoint(lo, &zero),
            }
        };
        samples.push(sample);
    }

    let witness = samples.into_iter().find(|x| d.sign_at(x) == Ordering::Less);
    Domination {
        holds: witness.is_none() && endpoint_sign != Ordering::Less,
        witness,
        endpoint_sign,
    }
}

pub fn dominates(g: &Graph, h: &Graph) -> bool {
    dominates_profiles(&GraphProfile::new(g), &GraphProfile::new(h)).holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrderVerdict {
    Equivalent,
    FirstStrictlyGreater,
    SecondStrictlyGreater,
    Incomparable,
}

impl OrderVerdict {
    pub fn reversed(self) -> Self {
        match self {
            OrderVerdict::FirstStrictlyGreater => OrderVerdict::SecondStrictlyGreater,
            OrderVerdict::SecondStrictlyGreater => OrderVerdict::FirstStrictlyGreater,
            v => v,
        }
    }

    pub fn is_comparable(self) -> bool {
        self != OrderVerdict::Incomparable
    }
}

/// Verdict plus the rational evidence defeating each failing direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub verdict: OrderVerdict,
    /// Defeats `first ⪰ second`.
    pub against_first: Option<BigRational>,
    /// Defeats `second ⪰ first`.
    pub against_second: Option<BigRational>,
}

impl Comparison {
    /// The witness for the direction(s) that failed, first direction first.
    pub fn witness(&self) -> Option<&BigRational> {
        self.against_first.as_ref().or(self.against_second.as_ref())
    }
}

pub fn compare_profiles(a: &GraphProfile, b: &GraphProfile) -> Comparison {
    if a.poly == b.poly {
        return Comparison {
            verdict: OrderVerdict::Equivalent,
            against_first: None,
            against_second: None,
        };
    }
    let ab = dominates_profiles(a, b);
    let ba = dominates_profiles(b, a);
    assert!(
        !(ab.holds && ba.holds),
        "both strict directions hold for distinct polynomials {} and {}",
        a.poly,
        b.poly
    );
    let verdict = match (ab.holds, ba.holds) {
        (true, _) => OrderVerdict::FirstStrictlyGreater,
        (_, true) => OrderVerdict::SecondStrictlyGreater,
        _ => OrderVerdict::Incomparable,
    };
    Comparison {
        verdict,
        against_first: ab.witness,
        against_second: ba.witness,
    }
}

pub fn compare(g: &Graph, h: &Graph) -> OrderVerdict {
    compare_profiles(&GraphProfile::new(g), &GraphProfile::new(h)).verdict
}

/// `xi(g) >= xi(h)`, the consequence of `g ⪰ h`. Returns `true` when the
/// hypothesis does not hold.
pub fn xi_consequence_check_profiles(g: &GraphProfile, h: &GraphProfile) -> bool {
    if !dominates_profiles(g, h).holds {
        return true;
    }
    xi_at_least(g, h)
}

/// `xi(g) >= xi(h)`; the empty graph has no root and sits below everything.
pub fn xi_at_least(g: &GraphProfile, h: &GraphProfile) -> bool {
    match (&g.xi, &h.xi) {
        (Some(a), Some(b)) => compare_roots(a, b) != Ordering::Less,
        (_, None) => true,
        (None, Some(_)) => false,
    }
}

pub fn xi_consequence_check(g: &Graph, h: &Graph) -> bool {
    xi_consequence_check_profiles(&GraphProfile::new(g), &GraphProfile::new(h))
}

/// JSON shape of a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub verdict: OrderVerdict,
    pub witness_x: Option<String>,
    pub witness_against_first: Option<String>,
    pub witness_against_second: Option<String>,
    #[serde(rename = "I_g")]
    pub poly_g: IntPolynomial,
    #[serde(rename = "I_h")]
    pub poly_h: IntPolynomial,
    pub xi_g: Option<Interval>,
    pub xi_h: Option<Interval>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Interval {
    pub lo: String,
    pub hi: String,
}

impl From<&AlgebraicRoot> for Interval {
    fn from(r: &AlgebraicRoot) -> Self {
        Interval {
            lo: rational_string(r.lo()),
            hi: rational_string(r.hi()),
        }
    }
}

impl VerdictReport {
    pub fn new(g: &GraphProfile, h: &GraphProfile, c: &Comparison) -> Self {
        VerdictReport {
            verdict: c.verdict,
            witness_x: c.witness().map(rational_string),
            witness_against_first: c.against_first.as_ref().map(rational_string),
            witness_against_second: c.against_second.as_ref().map(rational_string),
            poly_g: g.poly.clone(),
            poly_h: h.poly.clone(),
            xi_g: g.xi.as_ref().map(Interval::from),
            xi_h: h.xi.as_ref().map(Interval::from),
        }
    }
}

/// Builds a full report for two graphs.
pub fn compare_report(g: &Graph, h: &Graph) -> Result<VerdictReport> {
    let (pg, ph) = (GraphProfile::new(g), GraphProfile::new(h));
    let c = compare_profiles(&pg, &ph);
    Ok(VerdictReport::new(&pg, &ph, &c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::parse_graph;
    use crate::roots::sign_at_root;

    fn g(s: &str) -> Graph {
        parse_graph(s).unwrap()
    }

    #[test]
    fn remark_pairs() {
        assert!(!dominates(&g("K2"), &g("3*K1")));
        assert!(!dominates(&g("3*K1"), &g("K2")));
        assert_eq!(compare(&g("3*K1"), &g("K2")), OrderVerdict::Incomparable);
        assert!(dominates(&g("S6"), &g("P6")));
        assert!(dominates(&g("T(3,3,3)"), &g("T(2,2,5)")));
        assert_eq!(
            compare(&g("T(3,3,3)"), &g("T(2,2,5)")),
            OrderVerdict::FirstStrictlyGreater
        );
        assert_eq!(
            compare(&g("H(6,3)"), &g("T(2,2,4)")),
            OrderVerdict::FirstStrictlyGreater
        );
        assert_eq!(
            compare(&g("T(2,2,4)"), &g("H(6,3)")),
            OrderVerdict::SecondStrictlyGreater
        );
    }

    #[test]
    fn reflexive_and_equivalent() {
        for s in ["P5", "C7", "K4", "T(4,3,2)"] {
            assert!(dominates(&g(s), &g(s)));
            assert_eq!(compare(&g(s), &g(s)), OrderVerdict::Equivalent);
        }
        for n in 3..=12 {
            assert_eq!(
                compare(&g(&format!("C{n}")), &g(&format!("G{n}"))),
                OrderVerdict::Equivalent
            );
        }
    }

    #[test]
    fn witnesses_are_checkable() {
        let a = GraphProfile::new(&g("3*K1"));
        let b = GraphProfile::new(&g("K2"));
        let c = compare_profiles(&a, &b);
        for (first, second, w) in [
            (&a, &b, c.against_first.clone().unwrap()),
            (&b, &a, c.against_second.clone().unwrap()),
        ] {
            let d = &second.poly - &first.poly;
            assert_eq!(d.sign_at(&w), Ordering::Less);
            assert!(w < BigRational::zero());
            assert_eq!(
                crate::roots::compare_roots(
                    first.xi.as_ref().unwrap(),
                    &crate::roots::largest_real_root(&IntPolynomial::new(vec![
                        -w.numer().clone(),
                        w.denom().clone()
                    ]))
                    .unwrap()
                ),
                Ordering::Less
            );
        }
    }

    #[test]
    fn endpoint_sign_matches_sign_at_root() {
        let names = [
            "P4", "S5", "C5", "K2", "3*K1", "T(3,2,2)", "H(7,3)", "P2+P3", "K3,3",
        ];
        for a in names {
            for b in names {
                let (pa, pb) = (GraphProfile::new(&g(a)), GraphProfile::new(&g(b)));
                let dom = dominates_profiles(&pa, &pb);
                let d = &pb.poly - &pa.poly;
                if d.is_zero() {
                    continue;
                }
                assert_eq!(
                    dom.endpoint_sign,
                    sign_at_root(&d, pa.xi.as_ref().unwrap()),
                    "{a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn subgraph_is_dominated() {
        let c6 = g("C6");
        let pc = GraphProfile::new(&c6);
        for v in 0..6 {
            let h = GraphProfile::new(&c6.delete_vertex(v).unwrap());
            assert_eq!(
                compare_profiles(&pc, &h).verdict,
                OrderVerdict::FirstStrictlyGreater
            );
            assert!(xi_consequence_check_profiles(&pc, &h));
        }
    }

    #[test]
    fn empty_graph_edge_cases() {
        let e = Graph::empty(0);
        assert!(dominates(&e, &e));
        assert!(dominates(&g("K1"), &e));
        assert!(!dominates(&e, &g("K1")));
        assert_eq!(compare(&g("K1"), &e), OrderVerdict::FirstStrictlyGreater);
    }

    #[test]
    fn report_json_shape() {
        let r = compare_report(&g("3*K1"), &g("K2")).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "Incomparable");
        assert_eq!(v["I_g"], serde_json::json!(["1", "3", "3", "1"]));
        assert_eq!(v["xi_g"]["lo"], "-1");
        assert!(v["witness_x"].is_string());
    }
}
