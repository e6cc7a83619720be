//! Named graph families and the small DSL used to describe them
//! (`P10`, `K3,4`, `T(4,3,2)`, `H(9,4)`, `3*K1 + C5`, ...).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    /// Star `S_n = K_{1,n-1}` on `n` vertices.
    Star(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Cycle(usize),
    /// Path `1..n` plus the chord `(n-2, n)`; I-equivalent to the cycle `C_n`.
    Gn(usize),
    /// Starlike tree `T(n_1, ..., n_k)`: a center with legs `P_{n_i - 1}`.
    Spider(Vec<usize>),
    /// `T(n-k+1, 2, ..., 2)` with `k-1` twos.
    Tnk(usize, usize),
    /// Double broom: adjacent centers carrying `k-1` and `n-k-1` leaves.
    Hnk(usize, usize),
    DisjointUnion(Vec<FamilySpec>),
    Copies(usize, Box<FamilySpec>),
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(Error::InvalidFamilyParameters(msg))
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Star(n) if *n == 0 => invalid("star needs n >= 1".into()),
            FamilySpec::Cycle(n) if *n < 3 => invalid(format!("cycle needs n >= 3, got {n}")),
            FamilySpec::Gn(n) if *n < 3 => invalid(format!("G_n needs n >= 3, got {n}")),
            FamilySpec::Spider(legs) => {
                if legs.is_empty() {
                    return invalid("spider needs at least one leg".into());
                }
                if let Some(l) = legs.iter().find(|&&l| l < 2) {
                    return invalid(format!("spider leg parameters must be >= 2, got {l}"));
                }
                Ok(())
            }
            FamilySpec::Tnk(n, k) if !(*k >= 1 && n >= k) => {
                invalid(format!("T_(n,k) needs n >= k >= 1, got ({n},{k})"))
            }
            FamilySpec::Hnk(n, k) if !(*n >= 2 && *k >= 1 && *k < *n) => invalid(format!(
                "H_(n,k) needs n >= 2 and 1 <= k <= n-1, got ({n},{k})"
            )),
            FamilySpec::DisjointUnion(parts) => parts.iter().try_for_each(FamilySpec::validate),
            FamilySpec::Copies(_, inner) => inner.validate(),
            _ => Ok(()),
        }
    }

    /// Builds the graph. Vertex numbering is deterministic: spider centers are
    /// vertex 0 with legs numbered outward, leg by leg, longest first; `H(n,k)`
    /// has its centers at 0 and 1.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        Ok(self.build_valid())
    }

    fn build_valid(&self) -> Graph {
        match self {
            FamilySpec::Path(n) => path(*n),
            FamilySpec::Star(n) => spider_unchecked(&vec![2; n - 1]),
            FamilySpec::Complete(n) => {
                let edges: Vec<_> = (0..*n)
                    .flat_map(|u| (u + 1..*n).map(move |v| (u, v)))
                    .collect();
                Graph::from_edges(*n, &edges).expect("complete graph")
            }
            FamilySpec::CompleteBipartite(a, b) => {
                let edges: Vec<_> = (0..*a)
                    .flat_map(|u| (0..*b).map(move |v| (u, a + v)))
                    .collect();
                Graph::from_edges(a + b, &edges).expect("complete bipartite graph")
            }
            FamilySpec::Cycle(n) => {
                let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(*n, &edges).expect("cycle")
            }
            FamilySpec::Gn(n) => {
                let mut edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                edges.push((n - 3, n - 1));
                Graph::from_edges(*n, &edges).expect("G_n")
            }
            FamilySpec::Spider(legs) => spider_unchecked(legs),
            FamilySpec::Tnk(n, k) => {
                let mut legs = vec![n - k + 1];
                legs.extend(std::iter::repeat_n(2, k - 1));
                spider_unchecked(&legs)
            }
            FamilySpec::Hnk(n, k) => {
                let left = k - 1;
                let right = n - k - 1;
                let mut edges = vec![(0, 1)];
                edges.extend((0..left).map(|i| (0, 2 + i)));
                edges.extend((0..right).map(|i| (1, 2 + left + i)));
                Graph::from_edges(*n, &edges).expect("H_(n,k)")
            }
            FamilySpec::DisjointUnion(parts) => parts.iter().fold(Graph::empty(0), |acc, p| {
                acc.disjoint_union(&p.build_valid())
            }),
            FamilySpec::Copies(r, inner) => inner.build_valid().copies(*r),
        }
    }
}

fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path")
}

/// Spider with legs sorted non-increasingly; a parameter of 1 is an empty leg.
fn spider_unchecked(legs: &[usize]) -> Graph {
    let mut legs = legs.to_vec();
    legs.sort_unstable_by(|a, b| b.cmp(a));
    let order = 1 + legs.iter().map(|l| l - 1).sum::<usize>();
    let mut edges = Vec::with_capacity(order.saturating_sub(1));
    let mut next = 1;
    for &l in &legs {
        let mut prev = 0;
        for _ in 0..l - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(order, &edges).expect("spider")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            FamilySpec::Path(n) => write!(f, "P{n}"),
            FamilySpec::Star(n) => write!(f, "S{n}"),
            FamilySpec::Complete(n) => write!(f, "K{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            FamilySpec::Cycle(n) => write!(f, "C{n}"),
            FamilySpec::Gn(n) => write!(f, "G{n}"),
            FamilySpec::Spider(legs) => write!(f, "T({})", join(legs)),
            FamilySpec::Tnk(n, k) => write!(f, "Tnk({n},{k})"),
            FamilySpec::Hnk(n, k) => write!(f, "H({n},{k})"),
            FamilySpec::DisjointUnion(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if matches!(p, FamilySpec::DisjointUnion(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            FamilySpec::Copies(r, inner) => match inner.as_ref() {
                FamilySpec::DisjointUnion(_) => write!(f, "{r}*({inner})"),
                _ => write!(f, "{r}*{inner}"),
            },
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let spec = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "unexpected trailing input"));
        }
        spec.validate()?;
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn list(&mut self) -> Result<Vec<usize>> {
        self.expect(b'(')?;
        let mut out = vec![self.number()?];
        while self.eat(b',') {
            out.push(self.number()?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        let at = self.pos;
        match self.list()?.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(Error::parse(at, "expected two arguments")),
        }
    }

    fn expr(&mut self) -> Result<FamilySpec> {
        let mut parts = vec![self.term()?];
        while self.eat(b'+') {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            FamilySpec::DisjointUnion(parts)
        })
    }

    fn term(&mut self) -> Result<FamilySpec> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let r = self.number()?;
            self.expect(b'*')?;
            let inner = self.atom()?;
            return Ok(FamilySpec::Copies(r, Box::new(inner)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<FamilySpec> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'P') => {
                self.pos += 1;
                Ok(FamilySpec::Path(self.number()?))
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(FamilySpec::Star(self.number()?))
            }
            Some(b'C') => {
                self.pos += 1;
                Ok(FamilySpec::Cycle(self.number()?))
            }
            Some(b'G') => {
                self.pos += 1;
                Ok(FamilySpec::Gn(self.number()?))
            }
            Some(b'K') => {
                self.pos += 1;
                let a = self.number()?;
                if self.eat(b',') {
                    Ok(FamilySpec::CompleteBipartite(a, self.number()?))
                } else {
                    Ok(FamilySpec::Complete(a))
                }
            }
            Some(b'H') => {
                self.pos += 1;
                let (n, k) = self.pair()?;
                Ok(FamilySpec::Hnk(n, k))
            }
            Some(b'T') => {
                self.pos += 1;
                if self.src[self.pos..].starts_with(b"nk") {
                    self.pos += 2;
                    let (n, k) = self.pair()?;
                    Ok(FamilySpec::Tnk(n, k))
                } else {
                    Ok(FamilySpec::Spider(self.list()?))
                }
            }
            _ => Err(Error::parse(start, "expected a graph family")),
        }
    }
}

/// Parses a DSL string and builds the graph.
pub fn parse_graph(spec: &str) -> Result<Graph> {
    spec.parse::<FamilySpec>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    fn edges(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().collect()
    }

    #[test]
    fn spider_of_twos_is_a_star() {
        let g = FamilySpec::Spider(vec![2, 2, 2]).build().unwrap();
        assert_eq!(g, FamilySpec::Star(4).build().unwrap());
        assert_eq!(edges(&g), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn spider_numbering_is_leg_by_leg() {
        let g = FamilySpec::Spider(vec![2, 4, 3]).build().unwrap();
        assert_eq!(
            edges(&g),
            vec![(0, 1), (0, 4), (0, 6), (1, 2), (2, 3), (4, 5)]
        );
        assert_eq!(g, FamilySpec::Spider(vec![4, 3, 2]).build().unwrap());
    }

    #[test]
    fn spider_order_formula() {
        for legs in [vec![2], vec![3, 2], vec![5, 4, 3, 2], vec![7, 7, 7, 7, 7]] {
            let n = legs.iter().sum::<usize>() - legs.len() + 1;
            assert_eq!(FamilySpec::Spider(legs).build().unwrap().order(), n);
        }
    }

    #[test]
    fn tnk_small_k_is_path() {
        for n in 2..10 {
            let p = canonical_form(&FamilySpec::Path(n).build().unwrap());
            assert_eq!(canonical_form(&FamilySpec::Tnk(n, 1).build().unwrap()), p);
            assert_eq!(canonical_form(&FamilySpec::Tnk(n, 2).build().unwrap()), p);
        }
        assert_eq!(FamilySpec::Tnk(6, 2).build().unwrap().order(), 6);
    }

    #[test]
    fn hnk_extremes_and_symmetry() {
        for n in 2..10 {
            let s = canonical_form(&FamilySpec::Star(n).build().unwrap());
            assert_eq!(canonical_form(&FamilySpec::Hnk(n, 1).build().unwrap()), s);
            assert_eq!(
                canonical_form(&FamilySpec::Hnk(n, n - 1).build().unwrap()),
                s
            );
            for k in 1..n {
                assert_eq!(
                    canonical_form(&FamilySpec::Hnk(n, k).build().unwrap()),
                    canonical_form(&FamilySpec::Hnk(n, n - k).build().unwrap())
                );
            }
        }
    }

    #[test]
    fn gn_edges() {
        let g = FamilySpec::Gn(5).build().unwrap();
        assert_eq!(edges(&g), vec![(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn invalid_parameters() {
        for spec in [
            FamilySpec::Spider(vec![3, 1]),
            FamilySpec::Spider(vec![]),
            FamilySpec::Hnk(5, 5),
            FamilySpec::Hnk(5, 0),
            FamilySpec::Tnk(3, 4),
            FamilySpec::Cycle(2),
            FamilySpec::Gn(2),
        ] {
            assert!(
                matches!(spec.build(), Err(Error::InvalidFamilyParameters(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn dsl_parses() {
        let cases = [
            ("P10", FamilySpec::Path(10)),
            ("S7", FamilySpec::Star(7)),
            ("K5", FamilySpec::Complete(5)),
            ("K3,4", FamilySpec::CompleteBipartite(3, 4)),
            ("C12", FamilySpec::Cycle(12)),
            ("G12", FamilySpec::Gn(12)),
            ("T(4,3,2)", FamilySpec::Spider(vec![4, 3, 2])),
            ("Tnk(10,4)", FamilySpec::Tnk(10, 4)),
            ("H(9,4)", FamilySpec::Hnk(9, 4)),
            (
                "3*K1",
                FamilySpec::Copies(3, Box::new(FamilySpec::Complete(1))),
            ),
            (
                "P2 + 2*(K1 + C3)",
                FamilySpec::DisjointUnion(vec![
                    FamilySpec::Path(2),
                    FamilySpec::Copies(
                        2,
                        Box::new(FamilySpec::DisjointUnion(vec![
                            FamilySpec::Complete(1),
                            FamilySpec::Cycle(3),
                        ])),
                    ),
                ]),
            ),
        ];
        for (src, want) in cases {
            let got: FamilySpec = src.parse().unwrap();
            assert_eq!(got, want, "{src}");
            assert_eq!(got.to_string().parse::<FamilySpec>().unwrap(), want);
        }
    }

    #[test]
    fn dsl_errors_carry_position() {
        assert_eq!(
            "P3 + Q2".parse::<FamilySpec>(),
            Err(Error::parse(5, "expected a graph family"))
        );
        assert_eq!(
            "T(3,2".parse::<FamilySpec>(),
            Err(Error::parse(5, "expected `)`"))
        );
        assert!(matches!(
            "T(3,1)".parse::<FamilySpec>(),
            Err(Error::InvalidFamilyParameters(_))
        ));
        assert!("P3 P4".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn copies_build() {
        let g = parse_graph("3*K1").unwrap();
        assert_eq!((g.order(), g.size()), (3, 0));
        let g = parse_graph("P2+P3").unwrap();
        assert_eq!((g.order(), g.size(), g.component_count()), (5, 3, 2));
    }
}
