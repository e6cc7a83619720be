//! Orders on non-increasing integer sequences: lexicographic, prefix-sum
//! dominance, their multiset versions, and constructive conversion by unit
//! transfers `x_j += 1, x_k -= 1` with `j < k`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-empty, non-increasing sequence of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSequence {
    entries: Vec<i64>,
}

impl IntSequence {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(i) = entries.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotNonIncreasing(i + 1));
        }
        Ok(IntSequence { entries })
    }

    /// Sorts a multiset into non-increasing order.
    pub fn from_multiset(items: &[i64]) -> Result<Self> {
        let mut entries = items.to_vec();
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn prefix_sums(&self) -> Vec<i64> {
        prefix_sums(&self.entries)
    }

    /// Applies one transfer; fails if the result is not non-increasing.
    pub fn apply(&self, step: ConversionStep) -> Result<Self> {
        let n = self.len();
        if step.j == 0 || step.j >= step.k || step.k > n {
            return Err(Error::InvalidParameters(format!(
                "step ({},{}) is not valid for length {n}",
                step.j, step.k
            )));
        }
        let mut e = self.entries.clone();
        e[step.j - 1] += 1;
        e[step.k - 1] -= 1;
        Self::new(e)
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for IntSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let trimmed = part.trim();
            let lead = part.len() - part.trim_start().len();
            let v = trimmed.parse::<i64>().map_err(|_| {
                Error::parse(
                    pos + lead,
                    format!("expected an integer, found `{trimmed}`"),
                )
            })?;
            entries.push(v);
            pos += part.len() + 1;
        }
        Self::new(entries)
    }
}

impl Serialize for IntSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// `-e_{jk}`: add one at position `j`, remove one at position `k` (1-indexed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConversionStep {
    pub j: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DominanceVerdict {
    GreaterEq,
    Equal,
    LessEq,
    Incomparable,
}

impl DominanceVerdict {
    /// `x ⪰_d y` (including equality).
    pub fn at_least(self) -> bool {
        matches!(self, DominanceVerdict::GreaterEq | DominanceVerdict::Equal)
    }

    pub fn reversed(self) -> Self {
        match self {
            DominanceVerdict::GreaterEq => DominanceVerdict::LessEq,
            DominanceVerdict::LessEq => DominanceVerdict::GreaterEq,
            v => v,
        }
    }
}

fn prefix_sums(xs: &[i64]) -> Vec<i64> {
    xs.iter()
        .scan(0i64, |acc, &v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

fn check_len(x: usize, y: usize) -> Result<()> {
    if x == y {
        Ok(())
    } else {
        Err(Error::LengthMismatch(x, y))
    }
}

pub fn lex_compare(x: &IntSequence, y: &IntSequence) -> Result<Ordering> {
    check_len(x.len(), y.len())?;
    Ok(x.entries.cmp(&y.entries))
}

/// Prefix-sum comparison of raw tuples, sorted or not.
pub fn prefix_compare(x: &[i64], y: &[i64]) -> Result<DominanceVerdict> {
    check_len(x.len(), y.len())?;
    let (px, py) = (prefix_sums(x), prefix_sums(y));
    let ge = px.iter().zip(&py).all(|(a, b)| a >= b);
    let le = px.iter().zip(&py).all(|(a, b)| a <= b);
    Ok(match (ge, le) {
        (true, true) => DominanceVerdict::Equal,
        (true, false) => DominanceVerdict::GreaterEq,
        (false, true) => DominanceVerdict::LessEq,
        (false, false) => DominanceVerdict::Incomparable,
    })
}

/// Totals are not required to agree.
pub fn dominance_compare(x: &IntSequence, y: &IntSequence) -> Result<DominanceVerdict> {
    prefix_compare(&x.entries, &y.entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrderKind {
    Lex,
    Dominance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MultisetVerdict {
    Lex(#[serde(serialize_with = "ser_ordering")] Ordering),
    Dominance(DominanceVerdict),
}

fn ser_ordering<S: Serializer>(o: &Ordering, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Greater => "Greater",
        Ordering::Equal => "Equal",
        Ordering::Less => "Less",
    })
}

pub fn multiset_order(xs: &[i64], ys: &[i64], kind: OrderKind) -> Result<MultisetVerdict> {
    check_len(xs.len(), ys.len())?;
    let (x, y) = (
        IntSequence::from_multiset(xs)?,
        IntSequence::from_multiset(ys)?,
    );
    Ok(match kind {
        OrderKind::Lex => MultisetVerdict::Lex(lex_compare(&x, &y)?),
        OrderKind::Dominance => MultisetVerdict::Dominance(dominance_compare(&x, &y)?),
    })
}

fn union(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().chain(b).copied().collect()
}

/// Checks that appending a common multiset neither creates nor destroys
/// `xs ⪰ ys`, for both the lex and the dominance order.
pub fn check_adding_invariance(xs: &[i64], ys: &[i64], extension: &[i64]) -> Result<bool> {
    check_len(xs.len(), ys.len())?;
    let (xe, ye) = (union(xs, extension), union(ys, extension));
    let lex_ge = |a: &[i64], b: &[i64]| -> Result<bool> {
        Ok(multiset_order(a, b, OrderKind::Lex)? != MultisetVerdict::Lex(Ordering::Less))
    };
    let dom_ge = |a: &[i64], b: &[i64]| -> Result<bool> {
        match multiset_order(a, b, OrderKind::Dominance)? {
            MultisetVerdict::Dominance(v) => Ok(v.at_least()),
            MultisetVerdict::Lex(_) => unreachable!(),
        }
    };
    Ok(lex_ge(xs, ys)? == lex_ge(&xe, &ye)? && dom_ge(xs, ys)? == dom_ge(&xe, &ye)?)
}

/// `x ⪰_d y ⇒ x ⪰ y`; vacuously true when the hypothesis fails.
pub fn dominance_implies_lex_check(x: &IntSequence, y: &IntSequence) -> Result<bool> {
    let d = dominance_compare(x, y)?;
    Ok(!d.at_least() || lex_compare(x, y)? != Ordering::Less)
}

/// Why a conversion does not exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotConvertible {
    /// First (1-indexed) prefix where the target falls below the source.
    pub violated_prefix: Option<usize>,
    /// Target dominates the source but the totals differ, so no sequence of
    /// sum-preserving steps can reach it.
    pub totals_differ: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Conversion {
    Convertible(Vec<ConversionStep>),
    NotConvertible(NotConvertible),
}

/// Finds steps turning `x` into `y`. Each step acts at the first prefix
/// where `y` is ahead of the current sequence and ends at the first later
/// prefix where they agree again, so the certificate is deterministic.
pub fn convert(x: &IntSequence, y: &IntSequence) -> Result<Conversion> {
    check_len(x.len(), y.len())?;
    let (px, py) = (x.prefix_sums(), y.prefix_sums());
    if let Some(i) = (0..px.len()).find(|&i| py[i] < px[i]) {
        return Ok(Conversion::NotConvertible(NotConvertible {
            violated_prefix: Some(i + 1),
            totals_differ: x.total() != y.total(),
        }));
    }
    if x.total() != y.total() {
        return Ok(Conversion::NotConvertible(NotConvertible {
            violated_prefix: None,
            totals_differ: true,
        }));
    }
    let mut cur = px;
    let mut entries = x.entries.clone();
    let mut steps = Vec::new();
    while let Some(j) = (0..cur.len()).find(|&i| py[i] > cur[i]) {
        let k = (j + 1..cur.len())
            .find(|&i| py[i] == cur[i])
            .expect("totals agree at the last prefix");
        entries[j] += 1;
        entries[k] -= 1;
        for c in &mut cur[j..k] {
            *c += 1;
        }
        steps.push(ConversionStep { j: j + 1, k: k + 1 });
    }
    debug_assert_eq!(entries, y.entries);
    Ok(Conversion::Convertible(steps))
}

/// Replays a certificate, checking that every intermediate stays
/// non-increasing and moves up in the dominance order.
pub fn replay(x: &IntSequence, steps: &[ConversionStep]) -> Result<IntSequence> {
    let mut cur = x.clone();
    for &s in steps {
        let next = cur.apply(s)?;
        if !dominance_compare(&next, &cur)?.at_least() {
            return Err(Error::PreconditionViolated(format!(
                "step ({},{}) does not move up in dominance",
                s.j, s.k
            )));
        }
        cur = next;
    }
    Ok(cur)
}

/// `N ⪰_d M` and `n_1 >= m_1 + 1` imply `N ⪰_d M' ⪰_d M` where `M'` is
/// `M` with one unit moved from position 2 to position 1 and re-sorted.
/// Returns `true` when the hypotheses fail.
pub fn unit_transfer_lemma_check(n: &IntSequence, m: &IntSequence) -> Result<bool> {
    check_len(n.len(), m.len())?;
    if n.len() < 2 || n.entries[0] < m.entries[0] + 1 || !dominance_compare(n, m)?.at_least() {
        return Ok(true);
    }
    let mut moved = m.entries.clone();
    moved[0] += 1;
    moved[1] -= 1;
    let mid = IntSequence::from_multiset(&moved)?;
    Ok(dominance_compare(n, &mid)?.at_least() && dominance_compare(&mid, m)?.at_least())
}

/// For `j >= 1`: `n_1 >= m_1 + 1` and `(n_1..n_{j+1}) ⪰_d (m_1, m_2 x j)`
/// imply `(n_1..n_{j+1}) ⪰_d (m_1 + 1, m_2 x (j-1), m_2 - 1)`.
/// Prefix sums are taken on the tuples as written. Returns `true` when the
/// hypotheses fail.
pub fn flat_run_lemma_check(n: &[i64], m1: i64, m2: i64) -> Result<bool> {
    let j = n.len().saturating_sub(1);
    if j == 0 {
        return Err(Error::InvalidParameters("need at least two entries".into()));
    }
    let mut lower = vec![m1];
    lower.extend(std::iter::repeat_n(m2, j));
    if n[0] < m1 + 1 || !prefix_compare(n, &lower)?.at_least() {
        return Ok(true);
    }
    let mut target = vec![m1 + 1];
    target.extend(std::iter::repeat_n(m2, j - 1));
    target.push(m2 - 1);
    Ok(prefix_compare(n, &target)?.at_least())
}
