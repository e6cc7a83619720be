//! Certified real-root machinery: Sturm sequences, isolation of the largest
//! real root, exact sign of a polynomial at an algebraic number and exact
//! comparison of algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::indpoly::independence_polynomial;
use crate::poly::IntPolynomial;

/// Sturm sequence `p, p', -rem(p, p'), ...`, each term scaled by a positive
/// constant.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut seq = vec![p.reduce_content()];
        let d = p.derivative().reduce_content();
        if !d.is_zero() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let a = &seq[seq.len() - 2];
            let b = &seq[seq.len() - 1];
            if b.degree() == Some(0) {
                break;
            }
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^delta * rem; we want -rem up to a positive factor
            let delta = a.degree().unwrap() - b.degree().unwrap() + 1;
            let lc_negative = b.leading().unwrap().is_negative();
            let next = if lc_negative && delta % 2 == 1 {
                r
            } else {
                -&r
            };
            seq.push(next.reduce_content());
        }
        SturmSequence { seq }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.seq[0]
    }

    fn variations_by<F: Fn(&IntPolynomial) -> Ordering>(&self, sign: F) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.seq {
            let s = sign(p);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        self.variations_by(|p| p.sign_at(x))
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Number of distinct real roots overall.
    pub fn count_all(&self) -> usize {
        let neg = self.variations_by(IntPolynomial::sign_at_neg_inf);
        let pos = self.variations_by(IntPolynomial::sign_at_pos_inf);
        neg.saturating_sub(pos)
    }

    /// Roots in the closed interval `[lo, hi]`.
    pub fn count_closed(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let at_lo = usize::from(self.poly().sign_at(lo) == Ordering::Equal);
        if lo == hi {
            return at_lo;
        }
        self.count(lo, hi) + at_lo
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn count_real_roots(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    let sf = p.square_free_part()?;
    Ok(SturmSequence::new(&sf).count(lo, hi))
}

pub fn square_free_part(p: &IntPolynomial) -> Result<IntPolynomial> {
    p.square_free_part()
}

/// Smallest power of two strictly above the Cauchy bound `1 + max|a_i|/|a_d|`.
pub fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs().iter().map(Signed::abs).max().unwrap_or_default();
    let bound = BigRational::one() + BigRational::new(max, lead);
    let mut b = BigRational::one();
    while b <= bound {
        b *= BigInt::from(2);
    }
    b
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigInt::from(2)
}

/// A real algebraic number: the unique root of a square-free integer
/// polynomial in `[lo, hi]`.
///
/// Either `lo == hi` (a rational root, known exactly), or `lo < hi`, the
/// defining polynomial is nonzero at both endpoints and has exactly one root
/// strictly between them.
#[derive(Clone)]
pub struct AlgebraicRoot {
    defpoly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

impl fmt::Debug for AlgebraicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraicRoot({} in [{}, {}])",
            self.defpoly, self.lo, self.hi
        )
    }
}

impl AlgebraicRoot {
    pub fn defpoly(&self) -> &IntPolynomial {
        &self.defpoly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    fn lo_sign(&self) -> Ordering {
        self.defpoly.sign_at(&self.lo)
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = midpoint(&self.lo, &self.hi);
        match self.defpoly.sign_at(&mid) {
            Ordering::Equal => {
                self.lo = mid.clone();
                self.hi = mid;
            }
            s if s == self.lo_sign() => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Bisects in place until `hi - lo <= width`.
    pub fn refine_in_place(&mut self, width: &BigRational) {
        while &self.width() > width {
            self.bisect();
        }
    }

    pub fn refine(&self, width: &BigRational) -> AlgebraicRoot {
        let mut r = self.clone();
        r.refine_in_place(width);
        r
    }

    /// Whether `q` vanishes at this root: looks for a sign change of
    /// `gcd(q, defpoly)` across the isolating interval.
    pub fn is_root_of(&self, q: &IntPolynomial) -> bool {
        if q.is_zero() {
            return true;
        }
        if self.is_exact() {
            return q.sign_at(&self.lo) == Ordering::Equal;
        }
        let g = q.gcd(&self.defpoly);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        // g divides the square-free defpoly, so its only possible root in
        // the interval is this one, and it is simple.
        g.sign_at(&self.lo) != g.sign_at(&self.hi)
    }

    /// The exact rational value, when the root is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_exact() {
            return Some(self.lo.clone());
        }
        // A rational root a/b in lowest terms has b | lc; two such numbers
        // differ by at least 1/lc^2.
        let lc = self.defpoly.leading()?.abs();
        let width = BigRational::new(BigInt::one(), &lc * &lc + BigInt::one());
        let r = self.refine(&width);
        if r.is_exact() {
            return Some(r.lo);
        }
        let q = simplest_between(&r.lo, &r.hi);
        (q.denom() <= &lc && self.defpoly.sign_at(&q) == Ordering::Equal).then_some(q)
    }

    /// Decimal approximation with `digits` fractional digits, after refining
    /// the interval below `10^-digits`.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(q) = self.exact_or_none() {
            return rational_to_decimal(&q, digits);
        }
        let width = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits + 1));
        let r = self.refine(&width);
        rational_to_decimal(&midpoint(&r.lo, &r.hi), digits)
    }

    fn exact_or_none(&self) -> Option<BigRational> {
        self.is_exact().then(|| self.lo.clone())
    }
}

impl Serialize for AlgebraicRoot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AlgebraicRoot", 3)?;
        st.serialize_field("defpoly", &self.defpoly)?;
        st.serialize_field("lo", &rational_string(&self.lo))?;
        st.serialize_field("hi", &rational_string(&self.hi))?;
        st.end()
    }
}

/// `a/b`, or just `a` for integers.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// Rounds `q` to `digits` fractional digits (half away from zero).
pub fn rational_to_decimal(q: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * BigRational::from_integer(scale.clone());
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let rounded = (mag + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if neg && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// The rational with the smallest denominator in `[lo, hi]` (Stern-Brocot).
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + BigRational::one() <= *hi {
        return fl + BigRational::one();
    }
    // lo and hi share the integer part; recurse on the reciprocals
    let a = lo - &fl;
    let b = hi - &fl;
    let inner = simplest_between(&b.recip(), &a.recip());
    fl + inner.recip()
}

/// Isolating interval for the largest real root of `p`.
pub fn largest_real_root(p: &IntPolynomial) -> Result<AlgebraicRoot> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.square_free_part()?;
    if sf.degree() == Some(0) {
        return Err(Error::NoRealRoot);
    }
    let sturm = SturmSequence::new(&sf);
    if sturm.count_all() == 0 {
        return Err(Error::NoRealRoot);
    }
    let b = cauchy_bound(&sf);
    let mut lo = -b.clone();
    let mut hi = b;
    loop {
        if sturm.count(&lo, &hi) == 1 && sf.sign_at(&lo) != Ordering::Equal {
            break;
        }
        let mid = midpoint(&lo, &hi);
        if sturm.count(&mid, &hi) == 0 {
            if sf.sign_at(&mid) == Ordering::Equal {
                lo = mid.clone();
                hi = mid;
                break;
            }
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(AlgebraicRoot {
        defpoly: sf,
        lo,
        hi,
    })
}

/// `xi(G)`: the largest real root of `I(G, x)`, always negative.
pub fn xi(g: &Graph) -> Result<AlgebraicRoot> {
    xi_of_poly(&independence_polynomial(g))
}

pub fn xi_of_poly(ip: &IntPolynomial) -> Result<AlgebraicRoot> {
    let mut r = largest_real_root(ip)?;
    // all real roots of an independence polynomial are negative
    let zero = BigRational::zero();
    while r.hi >= zero && !r.is_exact() {
        r.bisect();
    }
    assert!(
        r.hi < zero,
        "largest root of an independence polynomial must be negative"
    );
    Ok(r)
}

pub fn refine(r: &AlgebraicRoot, width: &BigRational) -> AlgebraicRoot {
    r.refine(width)
}

/// Exact sign of `p` at the root `r`.
pub fn sign_at_root(p: &IntPolynomial, r: &AlgebraicRoot) -> Ordering {
    if p.is_zero() {
        return Ordering::Equal;
    }
    if r.is_exact() {
        return p.sign_at(&r.lo);
    }
    let sf = p.square_free_part().expect("nonzero");
    if r.is_root_of(&sf) {
        return Ordering::Equal;
    }
    let sturm = SturmSequence::new(&sf);
    let mut r = r.clone();
    while sturm.count_closed(&r.lo, &r.hi) > 0 {
        r.bisect();
        if r.is_exact() {
            return p.sign_at(&r.lo);
        }
    }
    p.sign_at(&r.hi)
}

/// Exact comparison of two algebraic numbers.
pub fn compare_roots(a: &AlgebraicRoot, b: &AlgebraicRoot) -> Ordering {
    let mut a = a.clone();
    let mut b = b.clone();
    let common = a.defpoly.gcd(&b.defpoly);
    let shared = common.degree().unwrap_or(0) > 0 && a.is_root_of(&common) && b.is_root_of(&common);
    let common_sturm = shared.then(|| SturmSequence::new(&common));
    loop {
        if a.hi < b.lo {
            return Ordering::Less;
        }
        if b.hi < a.lo {
            return Ordering::Greater;
        }
        if a.is_exact() && b.is_exact() {
            return a.lo.cmp(&b.lo);
        }
        if let Some(s) = &common_sturm {
            let lo = (&a.lo).min(&b.lo);
            let hi = (&a.hi).max(&b.hi);
            if s.count_closed(lo, hi) == 1 {
                return Ordering::Equal;
            }
        }
        if a.width() >= b.width() {
            a.bisect();
        } else {
            b.bisect();
        }
    }
}

/// Bracketing intervals (or exact points) for all roots of the square-free
/// polynomial behind `sturm` in the open interval `(lo, hi)`, in increasing
/// order. Non-exact brackets have non-root endpoints.
pub fn isolate_roots(
    sturm: &SturmSequence,
    lo: &BigRational,
    hi: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    isolate_rec(sturm, lo, hi, &mut out);
    out
}

fn isolate_rec(
    sturm: &SturmSequence,
    lo: &BigRational,
    hi: &BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    let p = sturm.poly();
    let hi_root = usize::from(p.sign_at(hi) == Ordering::Equal);
    let n = sturm.count(lo, hi) - hi_root;
    if n == 0 {
        return;
    }
    if n == 1 && hi_root == 0 && p.sign_at(lo) != Ordering::Equal {
        out.push((lo.clone(), hi.clone()));
        return;
    }
    let mid = midpoint(lo, hi);
    isolate_rec(sturm, lo, &mid, out);
    if p.sign_at(&mid) == Ordering::Equal {
        out.push((mid.clone(), mid.clone()));
    }
    isolate_rec(sturm, &mid, hi, out);
}
