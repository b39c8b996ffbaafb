//! Exact rationals, univariate polynomials in the path parameter `t`, and
//! Sturm-sequence root isolation / sign determination on intervals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `Some(n)` when `x` is an integer fitting in `i64`.
pub fn as_i64(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(x: &Rat) -> i64 {
    x.floor().to_integer().to_i64().expect("value out of i64 range")
}

pub fn ceil_i64(x: &Rat) -> i64 {
    x.ceil().to_integer().to_i64().expect("value out of i64 range")
}

/// Renders `n` or `n/d`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Serde adapter writing rationals as `"n/d"` strings.
pub mod ratstr {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_some(&fmt_rat(x)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rat>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            s.map(|s| parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
                .transpose()
        }
    }
}

// ---------------------------------------------------------------------------
// TPoly

/// Polynomial in `t` with rational coefficients; `coeffs[i]` multiplies `t^i`.
/// The coefficient vector never has a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<Rat>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `a + b t`
    pub fn linear(a: Rat, b: Rat) -> Self {
        Self::new(vec![a, b])
    }

    pub fn t() -> Self {
        Self::linear(Rat::zero(), Rat::one())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &TPoly) -> (TPoly, TPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (TPoly::zero(), self.clone());
        }
        let mut quo = vec![Rat::zero(); n - dd];
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        (TPoly::new(quo), TPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &TPoly) -> TPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Sign of `p` at a point of the extended real line.
    fn sign_at(&self, x: &Ext) -> i8 {
        match x {
            Ext::At(v) => sign_of(&self.eval(v)),
            Ext::PosInf => self.leading().map_or(0, sign_of),
            Ext::NegInf => {
                let s = self.leading().map_or(0, sign_of);
                if self.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    /// Yun's square-free decomposition: coprime square-free factors with
    /// their multiplicities. Constant content is dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(TPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.monic();
        let mut c = a.gcd(&a.derivative());
        let mut w = a.div_rem(&c).0;
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            i += 1;
            c = c.div_rem(&y).0;
            w = y;
        }
        if w.degree().unwrap_or(0) > 0 {
            out.push((w, i));
        }
        out
    }

    /// Formats with a custom variable name, e.g. `17t^2 + 2t + 1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = if a.is_one() && i > 0 {
                String::new()
            } else if a.is_integer() {
                fmt_rat(&a)
            } else {
                format!("({})", fmt_rat(&a))
            };
            out.push_str(&coef);
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl Serialize for TPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(fmt_rat).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| serde::de::Error::custom("bad coefficient")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TPoly::new(coeffs))
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, o: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        TPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, o: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        TPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, o: &TPoly) -> TPoly {
        if self.is_zero() || o.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TPoly {
            type Output = TPoly;
            fn $m(self, o: TPoly) -> TPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn sign_of(x: &Rat) -> i8 {
    match x.cmp(&Rat::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

// ---------------------------------------------------------------------------
// Intervals

/// Interval of the real `t` line, possibly unbounded on either side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TInterval {
    #[serde(with = "ratstr::opt")]
    pub lower: Option<Rat>,
    #[serde(with = "ratstr::opt")]
    pub upper: Option<Rat>,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl TInterval {
    pub fn new(
        lower: Option<Rat>,
        lower_closed: bool,
        upper: Option<Rat>,
        upper_closed: bool,
    ) -> Result<Self> {
        let iv = TInterval {
            lower_closed: lower_closed && lower.is_some(),
            upper_closed: upper_closed && upper.is_some(),
            lower,
            upper,
        };
        if let (Some(a), Some(b)) = (&iv.lower, &iv.upper) {
            let ok = a < b || (a == b && iv.lower_closed && iv.upper_closed);
            if !ok {
                return Err(Error::InvalidInterval(iv.to_string()));
            }
        }
        Ok(iv)
    }

    pub fn closed(a: Rat, b: Rat) -> Result<Self> {
        Self::new(Some(a), true, Some(b), true)
    }

    pub fn open(a: Rat, b: Rat) -> Result<Self> {
        Self::new(Some(a), false, Some(b), false)
    }

    pub fn point(a: Rat) -> Self {
        Self::closed(a.clone(), a).unwrap()
    }

    /// `[a, +inf)`
    pub fn at_least(a: Rat) -> Self {
        Self::new(Some(a), true, None, false).unwrap()
    }

    /// `(a, +inf)`
    pub fn greater_than(a: Rat) -> Self {
        Self::new(Some(a), false, None, false).unwrap()
    }

    pub fn real_line() -> Self {
        Self::new(None, false, None, false).unwrap()
    }

    pub fn contains(&self, t: &Rat) -> bool {
        let lo_ok = match &self.lower {
            None => true,
            Some(a) => t > a || (self.lower_closed && t == a),
        };
        let hi_ok = match &self.upper {
            None => true,
            Some(b) => t < b || (self.upper_closed && t == b),
        };
        lo_ok && hi_ok
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lower, &self.upper), (Some(a), Some(b)) if a == b)
    }

    /// Whether the closure of the interval contains `t`.
    pub fn closure_contains(&self, t: &Rat) -> bool {
        self.lower.as_ref().is_none_or(|a| t >= a) && self.upper.as_ref().is_none_or(|b| t <= b)
    }

    /// Some rational point strictly inside (or the point itself).
    pub fn sample(&self) -> Rat {
        match (&self.lower, &self.upper) {
            (Some(a), Some(b)) if a == b => a.clone(),
            (Some(a), Some(b)) => (a + b) / int(2),
            (Some(a), None) => a + int(1),
            (None, Some(b)) => b - int(1),
            (None, None) => Rat::zero(),
        }
    }

    /// Intersection, `None` when empty.
    pub fn intersect(&self, o: &TInterval) -> Option<TInterval> {
        let (lower, lower_closed) = match (&self.lower, &o.lower) {
            (None, None) => (None, false),
            (Some(a), None) => (Some(a.clone()), self.lower_closed),
            (None, Some(b)) => (Some(b.clone()), o.lower_closed),
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Greater => (Some(a.clone()), self.lower_closed),
                Ordering::Less => (Some(b.clone()), o.lower_closed),
                Ordering::Equal => (Some(a.clone()), self.lower_closed && o.lower_closed),
            },
        };
        let (upper, upper_closed) = match (&self.upper, &o.upper) {
            (None, None) => (None, false),
            (Some(a), None) => (Some(a.clone()), self.upper_closed),
            (None, Some(b)) => (Some(b.clone()), o.upper_closed),
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Less => (Some(a.clone()), self.upper_closed),
                Ordering::Greater => (Some(b.clone()), o.upper_closed),
                Ordering::Equal => (Some(a.clone()), self.upper_closed && o.upper_closed),
            },
        };
        TInterval::new(lower, lower_closed, upper, upper_closed).ok()
    }
}

impl fmt::Display for TInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match &self.lower {
            None => "(-inf".to_string(),
            Some(a) => format!("{}{}", if self.lower_closed { '[' } else { '(' }, fmt_rat(a)),
        };
        let u = match &self.upper {
            None => "+inf)".to_string(),
            Some(b) => format!("{}{}", fmt_rat(b), if self.upper_closed { ']' } else { ')' }),
        };
        write!(f, "{l}, {u}")
    }
}

// ---------------------------------------------------------------------------
// Root isolation

#[derive(Clone, Debug)]
enum Ext {
    NegInf,
    At(Rat),
    PosInf,
}

/// A real root, either known exactly or isolated in the open interval
/// `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootLoc {
    #[serde(with = "ratstr")]
    pub lower: Rat,
    #[serde(with = "ratstr")]
    pub upper: Rat,
    #[serde(with = "ratstr::opt")]
    pub exact: Option<Rat>,
    pub multiplicity: u32,
}

impl RootLoc {
    fn exact(x: Rat, multiplicity: u32) -> Self {
        RootLoc { lower: x.clone(), upper: x.clone(), exact: Some(x), multiplicity }
    }

    pub fn approx(&self) -> f64 {
        let mid = (&self.lower + &self.upper) / int(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }

    fn key(&self) -> Rat {
        self.exact.clone().unwrap_or_else(|| self.lower.clone())
    }
}

impl fmt::Display for RootLoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(x) => f.write_str(&fmt_rat(x)),
            None => {
                write!(f, "in ({}, {}) ~ {:.6}", fmt_rat(&self.lower), fmt_rat(&self.upper), self.approx())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSet {
    /// Number of distinct real roots.
    pub count: usize,
    /// Sorted ascending.
    pub roots: Vec<RootLoc>,
}

fn sturm_chain(p: &TPoly) -> Vec<TPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(-&r);
    }
    chain
}

fn variations(chain: &[TPoly], x: &Ext) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n > BigInt::from(1_000_000_000_000i64) {
        return None;
    }
    let n = n.to_u64()?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}

/// Integer coefficients with the same roots.
fn integer_coeffs(p: &TPoly) -> Vec<BigInt> {
    let l = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect()
}

/// Rational roots of a square-free polynomial, as far as they can be found
/// cheaply. Degrees one and two are always complete.
fn rational_roots(p: &TPoly) -> Vec<Rat> {
    match p.degree() {
        None | Some(0) => vec![],
        Some(1) => vec![-p.coeff(0) / p.coeff(1)],
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - int(4) * &a * &c;
            if disc.is_negative() {
                return vec![];
            }
            let (n, d) = (disc.numer().clone(), disc.denom().clone());
            let (sn, sd) = (n.sqrt(), d.sqrt());
            if &sn * &sn != n || &sd * &sd != d {
                return vec![];
            }
            let sq = Rat::new(sn, sd);
            let two_a = int(2) * &a;
            vec![(-&b - &sq) / &two_a, (-&b + &sq) / &two_a]
        }
        Some(_) => {
            let ic = integer_coeffs(p);
            let mut roots = Vec::new();
            let mut lo = 0;
            while ic[lo].is_zero() {
                lo += 1;
            }
            if lo > 0 {
                roots.push(Rat::zero());
            }
            let (Some(ps), Some(qs)) = (divisors(&ic[lo]), divisors(ic.last().unwrap())) else {
                return roots;
            };
            for num in &ps {
                for den in &qs {
                    for sgn in [1, -1] {
                        let x = Rat::new(num * sgn, den.clone());
                        if !roots.contains(&x) && p.eval(&x).is_zero() {
                            roots.push(x);
                        }
                    }
                }
            }
            roots
        }
    }
}

/// All real roots of a square-free polynomial.
fn isolate_squarefree(p: &TPoly, multiplicity: u32) -> Vec<RootLoc> {
    let mut out: Vec<RootLoc> = Vec::new();
    let mut rest = p.clone();
    for x in rational_roots(p) {
        out.push(RootLoc::exact(x.clone(), multiplicity));
        rest = rest.div_rem(&TPoly::linear(-x, Rat::one())).0;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let chain = sturm_chain(&rest);
        // Cauchy bound: every root lies strictly inside (-b, b).
        let lc = rest.leading().unwrap().abs();
        let b = rest.coeffs.iter().map(|c| c.abs() / &lc).max().unwrap() + int(1);
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = variations(&chain, &Ext::At(lo.clone())) - variations(&chain, &Ext::At(hi.clone()));
            match n {
                0 => {}
                1 => out.push(RootLoc { lower: lo, upper: hi, exact: None, multiplicity }),
                _ => {
                    // Split at a non-root; a polynomial with no rational roots
                    // never vanishes at a rational point, but stay careful.
                    let mut k = 1;
                    let mid = loop {
                        let m = &lo + (&hi - &lo) * rat(k, 2 * k + 1);
                        if !rest.eval(&m).is_zero() {
                            break m;
                        }
                        k += 1;
                    };
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
    }
    out.sort_by_key(|r| r.key());
    out
}

/// Restricts an isolated root to the interval; `None` if it lies outside.
fn clip_root(p: &TPoly, mut loc: RootLoc, iv: &TInterval) -> Option<RootLoc> {
    if let Some(x) = &loc.exact {
        return iv.contains(x).then_some(loc);
    }
    // Root x lies strictly inside (loc.lower, loc.upper).
    if let Some(l) = &iv.lower {
        if *l >= loc.upper {
            return None;
        }
        if *l > loc.lower {
            let pl = p.eval(l);
            if pl.is_zero() {
                let m = loc.multiplicity;
                return iv.contains(l).then(|| RootLoc::exact(l.clone(), m));
            }
            if sign_of(&p.eval(&loc.lower)) != sign_of(&pl) {
                return None;
            }
            loc.lower = l.clone();
        }
    }
    if let Some(u) = &iv.upper {
        if *u <= loc.lower {
            return None;
        }
        if *u < loc.upper {
            let pu = p.eval(u);
            if pu.is_zero() {
                let m = loc.multiplicity;
                return iv.contains(u).then(|| RootLoc::exact(u.clone(), m));
            }
            if sign_of(&p.eval(&loc.upper)) != sign_of(&pu) {
                return None;
            }
            loc.upper = u.clone();
        }
    }
    Some(loc)
}

/// Distinct real roots of `p` inside `iv`, each exact or isolated by
/// rational endpoints, with multiplicities from the square-free
/// decomposition.
pub fn sturm_roots(p: &TPoly, iv: &TInterval) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::IndeterminateRootSet);
    }
    let mut roots: Vec<RootLoc> = p
        .squarefree_decomposition()
        .into_iter()
        .flat_map(|(f, m)| {
            isolate_squarefree(&f, m).into_iter().filter_map(|loc| clip_root(&f, loc, iv)).collect::<Vec<_>>()
        })
        .collect();
    roots.sort_by_key(|r| r.key());
    Ok(RootSet { count: roots.len(), roots })
}

/// Number of distinct real roots in the open interval `(a, b)` counted
/// directly from the Sturm chain of the square-free part. Infinite
/// endpoints use leading-coefficient signs.
pub fn sturm_count_open(p: &TPoly, a: Option<&Rat>, b: Option<&Rat>) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::IndeterminateRootSet);
    }
    let sf = p.div_rem(&p.gcd(&p.derivative())).0;
    let chain = sturm_chain(&sf);
    let ea = a.map_or(Ext::NegInf, |x| Ext::At(x.clone()));
    let eb = b.map_or(Ext::PosInf, |x| Ext::At(x.clone()));
    // V(a) - V(b) counts roots in (a, b]; drop b itself when it is a root.
    let n = variations(&chain, &ea) - variations(&chain, &eb);
    let at_b = b.is_some_and(|x| sf.eval(x).is_zero());
    Ok(n - usize::from(at_b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignVerdict {
    AlwaysPositive,
    AlwaysNegative,
    AlwaysZero,
    /// The polynomial vanishes somewhere on the interval; the roots are the
    /// witnesses.
    MixedOrZero(Vec<RootLoc>),
}

impl SignVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, SignVerdict::AlwaysPositive)
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, SignVerdict::AlwaysNegative)
    }
}

pub fn sign_on_interval(p: &TPoly, iv: &TInterval) -> SignVerdict {
    if p.is_zero() {
        return SignVerdict::AlwaysZero;
    }
    let roots = sturm_roots(p, iv).expect("nonzero polynomial");
    if !roots.roots.is_empty() {
        return SignVerdict::MixedOrZero(roots.roots);
    }
    if sign_of(&p.eval(&iv.sample())) > 0 {
        SignVerdict::AlwaysPositive
    } else {
        SignVerdict::AlwaysNegative
    }
}

// ---------------------------------------------------------------------------
// Certified bounds for quadratics in an integer unknown

/// `F(x, t) = a(t) x^2 + b(t) x + c(t)`.
#[derive(Clone, Debug)]
pub struct QuadInT {
    pub a: TPoly,
    pub b: TPoly,
    pub c: TPoly,
}

impl QuadInT {
    pub fn at(&self, x: i64) -> TPoly {
        let x = int(x);
        &(&self.a.scale(&(&x * &x)) + &self.b.scale(&x)) + &self.c
    }

    /// Certifies `F(x, t) > 0` for every `t` in `iv` and every real `x`
    /// with `|x| >= radius`.
    fn certifies(&self, radius: i64, iv: &TInterval) -> bool {
        let two_r = int(2 * radius);
        let slope_hi = &self.a.scale(&two_r) + &self.b;
        let slope_lo = &self.a.scale(&-two_r) + &self.b;
        sign_on_interval(&self.at(radius), iv).is_positive()
            && sign_on_interval(&self.at(-radius), iv).is_positive()
            && sign_on_interval(&slope_hi, iv).is_positive()
            && sign_on_interval(&slope_lo, iv).is_negative()
    }

    /// Smallest radius `R <= max_radius` such that `F(x, t) <= 0` forces
    /// `|x| < R` uniformly on `iv`. Requires `a(t) > 0` on `iv`.
    pub fn certified_radius(&self, iv: &TInterval, max_radius: i64) -> Option<i64> {
        if !sign_on_interval(&self.a, iv).is_positive() {
            return None;
        }
        let mut hi = 1;
        while !self.certifies(hi, iv) {
            hi *= 2;
            if hi > max_radius {
                return None;
            }
        }
        let mut lo = hi / 2;
        // certifies(lo) is false (or lo == 0), certifies(hi) is true
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.certifies(mid, iv) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> TPoly {
        TPoly::from_ints(c)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[9, 1]).eval(&int(2)), int(11));
        assert_eq!(p(&[1, 2, 17]).eval(&int(1)), int(20));
        assert_eq!(TPoly::zero().eval(&int(7)), int(0));
    }

    #[test]
    fn roots_of_factored_quadratic() {
        let q = p(&[11, -12, 1]);
        let rs = sturm_roots(&q, &TInterval::closed(int(1), int(40)).unwrap()).unwrap();
        assert_eq!(rs.count, 2);
        assert_eq!(rs.roots[0].exact, Some(int(1)));
        assert_eq!(rs.roots[1].exact, Some(int(11)));
    }

    #[test]
    fn no_real_roots() {
        let rs = sturm_roots(&p(&[1, 0, 1]), &TInterval::real_line()).unwrap();
        assert_eq!(rs.count, 0);
    }

    #[test]
    fn linear_root_on_open_ray() {
        let rs = sturm_roots(&p(&[-11, 1]), &TInterval::greater_than(int(1))).unwrap();
        assert_eq!(rs.count, 1);
        assert_eq!(rs.roots[0].exact, Some(int(11)));
    }

    #[test]
    fn zero_polynomial_is_indeterminate() {
        assert_eq!(sturm_roots(&TPoly::zero(), &TInterval::real_line()), Err(Error::IndeterminateRootSet));
    }

    #[test]
    fn open_endpoints_exclude_roots() {
        let q = p(&[11, -12, 1]);
        let rs = sturm_roots(&q, &TInterval::open(int(1), int(11)).unwrap()).unwrap();
        assert_eq!(rs.count, 0);
        assert_eq!(sturm_count_open(&q, Some(&int(1)), Some(&int(11))).unwrap(), 0);
        assert_eq!(sturm_count_open(&q, Some(&int(0)), Some(&int(11))).unwrap(), 1);
        assert_eq!(sturm_count_open(&q, None, None).unwrap(), 2);
    }

    #[test]
    fn irrational_roots_are_isolated() {
        // t^3 - 2: one real root 2^(1/3)
        let q = p(&[-2, 0, 0, 1]);
        let rs = sturm_roots(&q, &TInterval::real_line()).unwrap();
        assert_eq!(rs.count, 1);
        let r = &rs.roots[0];
        assert!(r.exact.is_none());
        assert!(q.eval(&r.lower).is_negative() && q.eval(&r.upper).is_positive());
        assert!((r.approx() - 2f64.cbrt()).abs() < 2.0);
        // t^2 - 2 restricted to (0, 3/2]
        let rs = sturm_roots(
            &p(&[-2, 0, 1]),
            &TInterval::new(Some(int(0)), false, Some(rat(3, 2)), true).unwrap(),
        )
        .unwrap();
        assert_eq!(rs.count, 1);
        assert!(rs.roots[0].upper <= rat(3, 2));
    }

    #[test]
    fn multiplicities_are_reported() {
        // (t - 1)^2 (t + 2)
        let q = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let rs = sturm_roots(&q, &TInterval::real_line()).unwrap();
        assert_eq!(rs.count, 2);
        assert_eq!(rs.roots[0].exact, Some(int(-2)));
        assert_eq!(rs.roots[0].multiplicity, 1);
        assert_eq!(rs.roots[1].exact, Some(int(1)));
        assert_eq!(rs.roots[1].multiplicity, 2);
    }

    #[test]
    fn sign_examples() {
        let ray = TInterval::at_least(int(1));
        assert_eq!(sign_on_interval(&p(&[9, 1]), &ray), SignVerdict::AlwaysPositive);
        match sign_on_interval(&p(&[-11, 1]), &ray) {
            SignVerdict::MixedOrZero(r) => assert_eq!(r[0].exact, Some(int(11))),
            v => panic!("{v:?}"),
        }
        assert_eq!(
            sign_on_interval(&TPoly::zero(), &TInterval::closed(int(1), int(2)).unwrap()),
            SignVerdict::AlwaysZero
        );
        assert_eq!(sign_on_interval(&p(&[-4, 13, 1]), &ray), SignVerdict::AlwaysPositive);
    }

    #[test]
    fn interval_validation() {
        assert!(TInterval::closed(int(2), int(1)).is_err());
        assert!(TInterval::open(int(1), int(1)).is_err());
        assert!(TInterval::point(int(1)).contains(&int(1)));
    }

    #[test]
    fn render_polynomials() {
        assert_eq!(p(&[1, 2, 17]).to_string(), "17t^2 + 2t + 1");
        assert_eq!(p(&[-4, -3, 17]).to_string(), "17t^2 - 3t - 4");
        assert_eq!(TPoly::linear(rat(-1, 5), int(-1)).to_string(), "-t - (1/5)");
    }

    #[test]
    fn certified_radius_closes_for_positive_leading_coefficient() {
        // x^2 (t + 1) - 9 t  <= 0 on [1, 4]: |x| <= 3 * sqrt(t/(t+1)) < 3
        let f = QuadInT { a: p(&[1, 1]), b: TPoly::zero(), c: p(&[0, -9]) };
        let r = f.certified_radius(&TInterval::closed(int(1), int(4)).unwrap(), 1 << 20);
        assert_eq!(r, Some(3));
    }
}
