//! Walls for a reference class `v` along the path `σ_t`.
//!
//! Every candidate class `w` is found by a certified finite search: the
//! pairing conditions make `s` linear in `(r, d)`, the wall equation makes
//! `d` a Möbius function of `t` for fixed `r`, and the Hodge index theorem
//! turns into a quadratic in `r` with `t`-polynomial coefficients whose
//! positivity outside a radius is proven by Sturm sequences.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::charge::{ChargeFamily, ChargeValue};
use crate::exactq::{
    as_i64, ceil_i64, floor_i64, fmt_rat, int, parse_rat, ratstr, sign_on_interval, sturm_roots, QuadInT,
    Rat, SignVerdict, TInterval, TPoly,
};
use crate::mukai::{
    exclusion_check, hodge_ok, pairing_with_reference, Exclusion, HodgeVerdict, K3Context, MukaiProfile,
    ReferenceClass,
};
use crate::{Error, Result};

const MAX_RADIUS: i64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WallCondition {
    /// `<w,w> = -2`, `<v,w> = 0`.
    MinusTwoPairing0,
    /// `<w,w> = 0`, `<v,w> = 1`.
    Isotropic1,
    /// `<w,w> = 0`, `<v,w> = 2`.
    Isotropic2,
    /// `<w,w> = -2`, `<v,w> = 1`.
    MinusTwoPairing1,
    /// `<w,w> = -2`, `<v,w> < 0`, `Re(Z(w)/Z(v)) > 0`.
    TotallySemistableSpherical,
}

impl WallCondition {
    pub const DIVISORIAL: [WallCondition; 3] =
        [WallCondition::MinusTwoPairing0, WallCondition::Isotropic1, WallCondition::Isotropic2];

    /// `(<w,w>, <v,w>)` for the four conditions with a fixed pairing.
    pub fn pairings(self) -> Option<(i64, i64)> {
        match self {
            WallCondition::MinusTwoPairing0 => Some((-2, 0)),
            WallCondition::Isotropic1 => Some((0, 1)),
            WallCondition::Isotropic2 => Some((0, 2)),
            WallCondition::MinusTwoPairing1 => Some((-2, 1)),
            WallCondition::TotallySemistableSpherical => None,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            WallCondition::MinusTwoPairing0 => "BN",
            WallCondition::Isotropic1 => "HC",
            WallCondition::Isotropic2 => "LGU",
            WallCondition::MinusTwoPairing1 => "flop",
            WallCondition::TotallySemistableSpherical => "TSS",
        }
    }
}

impl fmt::Display for WallCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// Wall parameter of a hit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TStar {
    At(Rat),
    /// The charges stay proportional on the whole interval.
    WholeInterval,
}

impl TStar {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            TStar::At(t) => Some(t),
            TStar::WholeInterval => None,
        }
    }
}

impl Ord for TStar {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (TStar::At(a), TStar::At(b)) => a.cmp(b),
            (TStar::At(_), TStar::WholeInterval) => Ordering::Less,
            (TStar::WholeInterval, TStar::At(_)) => Ordering::Greater,
            (TStar::WholeInterval, TStar::WholeInterval) => Ordering::Equal,
        }
    }
}

impl PartialOrd for TStar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for TStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TStar::At(t) => f.write_str(&fmt_rat(t)),
            TStar::WholeInterval => f.write_str("whole"),
        }
    }
}

impl Serialize for TStar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TStar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "whole" {
            return Ok(TStar::WholeInterval);
        }
        parse_rat(&s)
            .map(TStar::At)
            .ok_or_else(|| serde::de::Error::custom(format!("bad wall parameter {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallHit {
    pub w: MukaiProfile,
    pub t_star: TStar,
    pub condition: WallCondition,
    /// `<v, w>`.
    pub pairing: i64,
    pub hodge: HodgeVerdict,
    pub exclusion: Exclusion,
    /// `v - w` for flop hits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<MukaiProfile>,
}

impl WallHit {
    pub fn is_realizable(&self) -> bool {
        !self.exclusion.is_excluded()
    }

    fn sort_key(&self) -> (TStar, WallCondition, MukaiProfile) {
        (self.t_star.clone(), self.condition, self.w)
    }
}

fn sort_hits(hits: &mut [WallHit]) {
    hits.sort_by_key(|h| h.sort_key());
}

/// `Im(Z(w))·Re(Z(v)) - Im(Z(v))·Re(Z(w))`, divided by `√t`.
pub fn wall_equation(fam: &ChargeFamily, v: &ReferenceClass, w: &MukaiProfile) -> TPoly {
    fam.charge(w).im_cross(&fam.charge_of_reference(v))
}

fn validate_path_interval(iv: &TInterval) -> Result<()> {
    match &iv.lower {
        Some(a) if a.is_positive() || (a.is_zero() && !iv.lower_closed) => Ok(()),
        _ => Err(Error::InvalidInterval(format!("{iv} must lie in t > 0"))),
    }
}

fn closure(iv: &TInterval) -> TInterval {
    TInterval::new(iv.lower.clone(), true, iv.upper.clone(), true).expect("closure of a valid interval")
}

fn partner_of(v: &ReferenceClass, w: &MukaiProfile, degree: i64) -> Option<MukaiProfile> {
    // (cH - Δ)^2 = c^2 H^2 - 2c Δ·H + Δ^2
    let c = &v.c;
    let q = c * c * int(degree) - int(2) * c * int(w.d) + int(w.q);
    let q = as_i64(&q)?;
    let dv = as_i64(&(c * int(degree)))?;
    Some(MukaiProfile::new(v.r - w.r, dv - w.d, q, v.s - w.s))
}

/// The wall equation with `s` eliminated through `<v, w> = π`:
/// `W = r·pr(t) + d·pd(t) + π·p0(t)`.
#[derive(Clone, Debug)]
struct Eliminated {
    pr: TPoly,
    pd: TPoly,
    p0: TPoly,
}

fn eliminate_s(fam: &ChargeFamily, v: &ReferenceClass) -> Result<Eliminated> {
    if v.r == 0 {
        return Err(Error::UnsupportedReference(format!("{v} has rank zero")));
    }
    let zv: ChargeValue = fam.charge_of_reference(v);
    let k = fam.k_poly();
    let udb = &fam.u0 * fam.degree_b();
    let wr = &zv.re.scale(&-udb) - &(&zv.im_coeff * &k);
    let wd = &zv.re.scale(&fam.u0) - &zv.im_coeff.scale(&fam.b);
    let ws = zv.im_coeff.clone();
    let rv = int(v.r);
    let pr = &wr - &ws.scale(&(int(v.s) / &rv));
    let pd = &wd + &ws.scale(&(&v.c / &rv));
    let p0 = ws.scale(&(-int(1) / &rv));
    for p in [&pr, &pd, &p0] {
        if p.degree().is_some_and(|n| n > 1) {
            return Err(Error::BoundChainOpen("wall equation is not linear in t".into()));
        }
    }
    Ok(Eliminated { pr, pd, p0 })
}

/// The derived bounds behind an enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub condition: WallCondition,
    /// Wall equation after eliminating `s`: coefficients of `r`, `Δ·H`, `<v,w>`.
    pub wall_r: TPoly,
    pub wall_d: TPoly,
    pub wall_pairing: TPoly,
    /// Hodge index along the wall, `A r^2 + B r + C <= 0`.
    pub hodge_a: TPoly,
    pub hodge_b: TPoly,
    pub hodge_c: TPoly,
    /// `|r| < rank_radius` for every feasible class.
    pub rank_radius: i64,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub hits: Vec<WallHit>,
    pub bound: BoundCertificate,
}

fn check_primitive(v: &ReferenceClass) -> Result<()> {
    if v.is_primitive() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{v} is not primitive")))
    }
}

/// All integer classes satisfying `cond` and lying on a wall with `v` at
/// some `t` in `iv`. Excluded classes are kept and tagged.
pub fn enumerate_condition(
    ctx: &K3Context,
    fam: &ChargeFamily,
    v: &ReferenceClass,
    cond: WallCondition,
    iv: &TInterval,
) -> Result<Enumeration> {
    let Some((sigma, pi)) = cond.pairings() else {
        let rep = totally_semistable_check(ctx, fam, v, iv)?;
        let hits = rep.spherical_candidates();
        let bound = enumerate_condition(ctx, fam, v, WallCondition::Isotropic1, iv)?.bound;
        return Ok(Enumeration {
            hits,
            bound: BoundCertificate {
                condition: cond,
                text: rep.cases.iter().map(|c| c.text.clone()).collect::<Vec<_>>().join("; "),
                ..bound
            },
        });
    };
    check_primitive(v)?;
    validate_path_interval(iv)?;
    let el = eliminate_s(fam, v)?;
    let deg = ctx.degree;
    let cl = closure(iv);
    if el.pd.is_zero() || sturm_roots(&el.pd, &cl)?.count > 0 {
        return Err(Error::BoundChainOpen(format!(
            "Δ·H coefficient {} of the wall equation vanishes on {cl}",
            el.pd
        )));
    }

    // deg·q - d^2 <= 0 with d = -(r pr + π p0)/pd, multiplied by pd^2
    let rv = int(v.r);
    let two_deg_rv = int(2 * deg) / &rv;
    let pi_r = int(pi);
    let pd2 = &el.pd * &el.pd;
    let a =
        &(&(&el.pr * &el.pd).scale(&-&v.c) - &pd2.scale(&int(v.s))).scale(&two_deg_rv) - &(&el.pr * &el.pr);
    let b = &(&(&el.p0 * &el.pd).scale(&-(&v.c * &pi_r)) - &pd2.scale(&pi_r)).scale(&two_deg_rv)
        - &(&el.pr * &el.p0).scale(&(int(2) * &pi_r));
    let c = &pd2.scale(&int(deg * sigma)) - &(&el.p0 * &el.p0).scale(&(&pi_r * &pi_r));
    let quad = QuadInT { a, b, c };
    let radius = quad.certified_radius(iv, MAX_RADIUS).ok_or_else(|| {
        Error::BoundChainOpen(format!(
            "Hodge quadratic in r is not certified positive for large |r| on {iv} (leading coefficient {})",
            quad.a
        ))
    })?;

    let ranks: Vec<i64> = (1 - radius..radius).collect();
    let per_rank: Vec<Result<Vec<WallHit>>> =
        ranks.par_iter().map(|&r| hits_for_rank(ctx, v, &el, cond, sigma, pi, r, iv)).collect();
    let mut hits = Vec::new();
    for h in per_rank {
        hits.extend(h?);
    }
    sort_hits(&mut hits);

    let text = format!(
        "{cond}: s = ({} Δ·H - ({}) r - {pi}) / {}; wall ({})·r + ({})·Δ·H + ({})·{pi} = 0; \
         Hodge ({})r^2 + ({})r + ({}) <= 0 certifies |r| < {radius} on {iv}",
        fmt_rat(&v.c),
        v.s,
        v.r,
        el.pr,
        el.pd,
        el.p0,
        quad.a,
        quad.b,
        quad.c,
    );
    Ok(Enumeration {
        hits,
        bound: BoundCertificate {
            condition: cond,
            wall_r: el.pr,
            wall_d: el.pd,
            wall_pairing: el.p0,
            hodge_a: quad.a,
            hodge_b: quad.b,
            hodge_c: quad.c,
            rank_radius: radius,
            text,
        },
    })
}

#[allow(clippy::too_many_arguments)]
fn hits_for_rank(
    ctx: &K3Context,
    v: &ReferenceClass,
    el: &Eliminated,
    cond: WallCondition,
    sigma: i64,
    pi: i64,
    r: i64,
    iv: &TInterval,
) -> Result<Vec<WallHit>> {
    // a(t) + d·e(t) = 0
    let a = &el.pr.scale(&int(r)) + &el.p0.scale(&int(pi));
    let e = &el.pd;
    let d_at = |t: &Rat| -(a.eval(t) / e.eval(t));
    let lo = iv.lower.as_ref().map(d_at).expect("validated lower bound");
    let hi = match &iv.upper {
        Some(u) => d_at(u),
        None => {
            let (da, de) = (a.degree().unwrap_or(0), e.degree().unwrap_or(0));
            if da > de && !a.is_zero() {
                return Err(Error::BoundChainOpen(format!("Δ·H is unbounded as t grows for r = {r}")));
            }
            if da == de && !a.is_zero() {
                -(a.leading().unwrap() / e.leading().unwrap())
            } else {
                Rat::zero()
            }
        }
    };
    let (dmin, dmax) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut out = Vec::new();
    for d in ceil_i64(&dmin)..=floor_i64(&dmax) {
        let eq = &a + &e.scale(&int(d));
        let t_star = if eq.is_zero() {
            TStar::WholeInterval
        } else if eq.degree() == Some(0) {
            continue;
        } else {
            let t = -(eq.coeff(0) / eq.coeff(1));
            if !iv.contains(&t) {
                continue;
            }
            TStar::At(t)
        };
        let s = (&v.c * int(d) - int(v.s * r + pi)) / int(v.r);
        let Some(s) = as_i64(&s) else { continue };
        let w = MukaiProfile::new(r, d, sigma + 2 * r * s, s);
        let hodge = hodge_ok(ctx, &w);
        if hodge == HodgeVerdict::Infeasible {
            continue;
        }
        debug_assert_eq!(w.self_pairing(), sigma);
        debug_assert_eq!(pairing_with_reference(v, &w).ok(), Some(pi));
        out.push(WallHit {
            w,
            t_star,
            condition: cond,
            pairing: pi,
            hodge,
            exclusion: exclusion_check(ctx, &w),
            partner: (cond == WallCondition::MinusTwoPairing1)
                .then(|| partner_of(v, &w, ctx.degree))
                .flatten(),
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Totally semistable walls

/// One `(λ, <v,w>)` case of the spherical search, where `Z(w) = λ Z(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TssCase {
    #[serde(with = "ratstr")]
    pub lambda: Rat,
    pub pairing: i64,
    /// Must be `>= 0` somewhere on the interval for a class to exist.
    pub certificate: TPoly,
    pub certificate_sign: SignVerdict,
    /// Hodge-feasible rank range `[lo, hi]`, when the sign test alone does
    /// not eliminate the case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_range: Option<(i64, i64)>,
    pub candidates: Vec<WallHit>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TssVerdict {
    Clear,
    Triggered(WallHit),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TssReport {
    pub verdict: TssVerdict,
    pub cases: Vec<TssCase>,
    pub isotropic_hits: Vec<WallHit>,
}

impl TssReport {
    pub fn spherical_candidates(&self) -> Vec<WallHit> {
        let mut v: Vec<WallHit> = self.cases.iter().flat_map(|c| c.candidates.clone()).collect();
        sort_hits(&mut v);
        v
    }

    /// Whether the spherical half of the criterion is clear on its own.
    pub fn spherical_clear(&self) -> bool {
        self.cases.iter().all(|c| c.candidates.iter().all(|h| !h.is_realizable()))
    }
}

/// The kernel of `Z_t` on classes `(r, cH, s)`: `k_t = (1, bH, H^2 b^2 + K(t))`.
/// Returns `(<v, k_t>, <k_t, k_t>)`.
fn kernel_pairings(fam: &ChargeFamily, v: &ReferenceClass) -> (TPoly, TPoly) {
    let deg = int(fam.degree);
    let ks = &TPoly::constant(&deg * &fam.b * &fam.b) + &fam.k_poly();
    let beta = &TPoly::constant(&v.c * &fam.b * &deg - int(v.s)) - &ks.scale(&int(v.r));
    let gamma = TPoly::linear(Rat::zero(), -(&deg * &fam.u0 * &fam.u0));
    (beta, gamma)
}

/// Integer points of `{x : a x^2 + b x + c <= 0}` for `a > 0`.
fn quadratic_integer_range(a: &Rat, b: &Rat, c: &Rat) -> Option<(i64, i64)> {
    let f = |x: i64| a * int(x * x) + b * int(x) + c;
    let center = floor_i64(&(-b / (int(2) * a)));
    let (mut lo, mut hi) = (None, None);
    for start in [center, center + 1] {
        if f(start) <= Rat::zero() {
            let mut l = start;
            while f(l - 1) <= Rat::zero() {
                l -= 1;
            }
            let mut h = start;
            while f(h + 1) <= Rat::zero() {
                h += 1;
            }
            lo = Some(l);
            hi = Some(h);
            break;
        }
    }
    lo.zip(hi)
}

/// Bayer–Macrì totally semistable test: isotropic `w` with `<v,w> = 1`,
/// or spherical `w` with `<v,w> < 0` and `Re(Z(w)/Z(v)) > 0` on the wall.
pub fn totally_semistable_check(
    ctx: &K3Context,
    fam: &ChargeFamily,
    v: &ReferenceClass,
    iv: &TInterval,
) -> Result<TssReport> {
    let a = v.self_pairing(ctx.degree)?;
    if a <= 0 {
        return Err(Error::NonPositiveSquare(a));
    }
    check_primitive(v)?;
    validate_path_interval(iv)?;
    if v.r == 0 {
        return Err(Error::UnsupportedReference(format!("{v} has rank zero")));
    }
    let zv = fam.charge_of_reference(v);
    if zv.im_coeff.degree() != Some(0) {
        return Err(Error::Precondition(format!("{v} has real central charge")));
    }
    // Im Z(w) / u0 = Δ·H - H^2 b r lies in (1/den) Z
    let iv0 = zv.im_coeff.coeff(0) / &fam.u0;
    let db = fam.degree_b();
    let den = db.denom().clone();
    let unit = int(1) / (Rat::from_integer(den) * iv0.abs());
    let (beta, gamma) = kernel_pairings(fam, v);
    let ar = int(a);

    let mut cases = Vec::new();
    let mut j = 1i64;
    loop {
        let lambda = &unit * int(j);
        let base = &lambda * &lambda * &ar;
        if &base + &lambda * int(2) > int(2) {
            break;
        }
        let mut p = 1i64;
        while &base + &lambda * int(2 * p) <= int(2) {
            cases.push(tss_case(ctx, fam, v, &zv, &iv0, &beta, &gamma, &lambda, -p, iv)?);
            p += 1;
        }
        j += 1;
    }

    let isotropic_hits = enumerate_condition(ctx, fam, v, WallCondition::Isotropic1, iv)?.hits;
    let witness = cases
        .iter()
        .flat_map(|c| c.candidates.iter())
        .chain(isotropic_hits.iter())
        .filter(|h| h.is_realizable())
        .min_by_key(|h| h.sort_key())
        .cloned();
    Ok(TssReport { verdict: witness.map_or(TssVerdict::Clear, TssVerdict::Triggered), cases, isotropic_hits })
}

#[allow(clippy::too_many_arguments)]
fn tss_case(
    ctx: &K3Context,
    fam: &ChargeFamily,
    v: &ReferenceClass,
    zv: &ChargeValue,
    iv0: &Rat,
    beta: &TPoly,
    gamma: &TPoly,
    lambda: &Rat,
    pi: i64,
    iv: &TInterval,
) -> Result<TssCase> {
    let a = int(v.self_pairing(ctx.degree)?);
    let pr = int(pi);
    // <w_H, w_H> >= -2 with w_H = λ v + μ k_t and <v, w> = λ a + μ β
    let k0 = -(lambda * lambda * &a) + int(2) * lambda * &pr + int(2);
    let m = &pr - lambda * &a;
    let certificate = &(beta * beta).scale(&k0) + &gamma.scale(&(&m * &m));
    let certificate_sign = sign_on_interval(&certificate, iv);
    let head = format!("λ = {}, <v,w> = {pi}", fmt_rat(lambda));
    if certificate_sign.is_negative() {
        return Ok(TssCase {
            lambda: lambda.clone(),
            pairing: pi,
            text: format!("{head}: {certificate} < 0 on {iv}"),
            certificate,
            certificate_sign,
            rank_range: None,
            candidates: Vec::new(),
        });
    }
    // d = λ Im(Z(v))/u0 + H^2 b r, s from the pairing; both linear in r
    let deg = int(ctx.degree);
    let d0 = lambda * iv0;
    let d1 = fam.degree_b();
    let rv = int(v.r);
    let s0 = (&v.c * &d0 - &pr) / &rv;
    let s1 = (&v.c * &d1 - int(v.s)) / &rv;
    // H^2 (2 r s - 2) <= d^2
    let qa = int(2) * &deg * &s1 - &d1 * &d1;
    let qb = int(2) * &deg * &s0 - int(2) * &d0 * &d1;
    let qc = -(int(2) * &deg) - &d0 * &d0;
    if !qa.is_positive() {
        return Err(Error::SearchNotExhaustive(format!(
            "{head}: Hodge bound on the rank does not close (leading coefficient {})",
            fmt_rat(&qa)
        )));
    }
    let range = quadratic_integer_range(&qa, &qb, &qc);
    let mut candidates = Vec::new();
    if let Some((lo, hi)) = range {
        for r in lo..=hi {
            let (Some(d), Some(s)) = (as_i64(&(&d0 + &d1 * int(r))), as_i64(&(&s0 + &s1 * int(r)))) else {
                continue;
            };
            let w = MukaiProfile::new(r, d, 2 * r * s - 2, s);
            let eq = &fam.charge(&w).re - &zv.re.scale(lambda);
            let t_star = if eq.is_zero() {
                TStar::WholeInterval
            } else if eq.degree() == Some(0) {
                continue;
            } else {
                let t = -(eq.coeff(0) / eq.coeff(1));
                if !iv.contains(&t) {
                    continue;
                }
                TStar::At(t)
            };
            candidates.push(WallHit {
                w,
                t_star,
                condition: WallCondition::TotallySemistableSpherical,
                pairing: pi,
                hodge: hodge_ok(ctx, &w),
                exclusion: exclusion_check(ctx, &w),
                partner: None,
            });
        }
    }
    sort_hits(&mut candidates);
    let span = match range {
        Some((lo, hi)) => format!("ranks {lo}..={hi}"),
        None => "no rank".to_string(),
    };
    Ok(TssCase {
        lambda: lambda.clone(),
        pairing: pi,
        text: format!(
            "{head}: Hodge ({})r^2 + ({})r + ({}) <= 0 leaves {span}; {} on the wall in {iv}",
            fmt_rat(&qa),
            fmt_rat(&qb),
            fmt_rat(&qc),
            candidates.len()
        ),
        certificate,
        certificate_sign,
        rank_range: range,
        candidates,
    })
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisorialKind {
    BrillNoether,
    HilbertChow,
    LiGiesekerUhlenbeck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WallKind {
    /// No realizable witness. Witnesses listed with the verdict are all
    /// excluded.
    NotAWall,
    TotallySemistable,
    Divisorial(DivisorialKind),
    Flopping,
}

impl WallKind {
    pub fn is_wall(self) -> bool {
        self != WallKind::NotAWall
    }
}

impl fmt::Display for WallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallKind::NotAWall => f.write_str("not a wall"),
            WallKind::TotallySemistable => f.write_str("totally semistable"),
            WallKind::Divisorial(DivisorialKind::BrillNoether) => f.write_str("divisorial (BN)"),
            WallKind::Divisorial(DivisorialKind::HilbertChow) => f.write_str("divisorial (HC)"),
            WallKind::Divisorial(DivisorialKind::LiGiesekerUhlenbeck) => f.write_str("divisorial (LGU)"),
            WallKind::Flopping => f.write_str("flopping"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub t_star: TStar,
    pub kind: WallKind,
    /// Realizable witnesses of `kind`, or every (excluded) witness for
    /// [`WallKind::NotAWall`].
    pub witnesses: Vec<WallHit>,
}

impl Classification {
    pub fn witness_profiles(&self) -> Vec<MukaiProfile> {
        self.witnesses.iter().map(|h| h.w).collect()
    }
}

fn classify_group(t_star: TStar, hits: Vec<WallHit>, flop_branch: bool) -> Classification {
    let realizable = |pred: &dyn Fn(&WallHit) -> bool| -> Vec<WallHit> {
        hits.iter().filter(|h| h.is_realizable() && pred(h)).cloned().collect()
    };
    let tss = realizable(&|h| {
        matches!(h.condition, WallCondition::TotallySemistableSpherical | WallCondition::Isotropic1)
    });
    if !tss.is_empty() {
        return Classification { t_star, kind: WallKind::TotallySemistable, witnesses: tss };
    }
    for (cond, kind) in [
        (WallCondition::MinusTwoPairing0, DivisorialKind::BrillNoether),
        (WallCondition::Isotropic2, DivisorialKind::LiGiesekerUhlenbeck),
    ] {
        let ws = realizable(&|h| h.condition == cond);
        if !ws.is_empty() {
            return Classification { t_star, kind: WallKind::Divisorial(kind), witnesses: ws };
        }
    }
    if flop_branch {
        let ws = realizable(&|h| h.condition == WallCondition::MinusTwoPairing1);
        if !ws.is_empty() {
            return Classification { t_star, kind: WallKind::Flopping, witnesses: ws };
        }
    }
    Classification { t_star, kind: WallKind::NotAWall, witnesses: hits }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallReport {
    pub vector: ReferenceClass,
    pub interval: TInterval,
    pub hits: Vec<WallHit>,
    pub classification: Vec<Classification>,
    pub bounds: Vec<BoundCertificate>,
    pub totally_semistable: Vec<TssCase>,
    /// `(t0, inf)` when the interval is unbounded above.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gieseker_chamber: Option<TInterval>,
    /// Classification at an open lower endpoint, which lies outside the
    /// interval but bounds the first chamber.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_endpoint: Option<Classification>,
    pub notes: Vec<String>,
}

impl WallReport {
    pub fn walls(&self) -> impl Iterator<Item = &Classification> {
        self.classification.iter().filter(|c| c.kind.is_wall())
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("vector {}  interval {}\n", self.vector, self.interval));
        out.push_str(&format!(
            "{:<10} {:<20} {:<6} {:<22} {:<26} {}\n",
            "t", "kind", "cond", "w", "exclusion", "partner"
        ));
        for c in &self.classification {
            for h in &c.witnesses {
                out.push_str(&format!(
                    "{:<10} {:<20} {:<6} {:<22} {:<26} {}\n",
                    c.t_star.to_string(),
                    c.kind.to_string(),
                    h.condition.short(),
                    h.w.to_string(),
                    h.exclusion.to_string(),
                    h.partner.map(|p| p.to_string()).unwrap_or_default()
                ));
            }
        }
        if let Some(c) = &self.lower_endpoint {
            let ws: Vec<String> = c.witnesses.iter().map(|h| h.w.to_string()).collect();
            out.push_str(&format!("lower endpoint t = {}: {} {}\n", c.t_star, c.kind, ws.join(" ")));
        }
        match &self.gieseker_chamber {
            Some(g) => out.push_str(&format!("Gieseker chamber {g}\n")),
            None => out.push_str("Gieseker chamber not reached\n"),
        }
        for b in &self.bounds {
            out.push_str(&format!("bound {}\n", b.text));
        }
        for n in &self.notes {
            out.push_str(&format!("note {n}\n"));
        }
        out
    }
}

/// Aggregates every condition over `iv` and classifies each wall parameter.
pub fn walls_on_path(
    ctx: &K3Context,
    fam: &ChargeFamily,
    v: &ReferenceClass,
    iv: &TInterval,
) -> Result<WallReport> {
    ctx.validate()?;
    fam.validate()?;
    let vv = v.self_pairing(ctx.degree)?;
    let tss = totally_semistable_check(ctx, fam, v, iv)?;
    let mut hits = tss.spherical_candidates();
    hits.extend(tss.isotropic_hits.iter().cloned());
    let mut bounds = Vec::new();
    let mut conds = vec![WallCondition::MinusTwoPairing0, WallCondition::Isotropic2];
    let flop_branch = vv == 2;
    if flop_branch {
        conds.push(WallCondition::MinusTwoPairing1);
    }
    let hc = enumerate_condition(ctx, fam, v, WallCondition::Isotropic1, iv)?;
    bounds.push(hc.bound);
    for cond in conds {
        let e = enumerate_condition(ctx, fam, v, cond, iv)?;
        hits.extend(e.hits);
        bounds.push(e.bound);
    }
    bounds.sort_by_key(|b| b.condition);
    sort_hits(&mut hits);

    let mut groups: BTreeMap<TStar, Vec<WallHit>> = BTreeMap::new();
    for h in &hits {
        groups.entry(h.t_star.clone()).or_default().push(h.clone());
    }
    let classification: Vec<Classification> =
        groups.into_iter().map(|(t, hs)| classify_group(t, hs, flop_branch)).collect();

    let mut notes = vec!["fake walls have no numerical criterion and are never reported".to_string()];
    if !flop_branch {
        notes.push(format!("<v,v> = {vv} != 2: flop criterion not evaluated"));
    }
    let last_wall = classification.iter().filter(|c| c.kind.is_wall()).map(|c| c.t_star.clone()).max();
    let gieseker_chamber = match (&iv.upper, last_wall) {
        (Some(_), _) => None,
        (None, Some(TStar::WholeInterval)) => None,
        (None, Some(TStar::At(t0))) => Some(TInterval::greater_than(t0)),
        (None, None) => Some(iv.clone()),
    };
    let lower_endpoint = match &iv.lower {
        Some(a) if !iv.lower_closed && a.is_positive() => Some(classify_wall(ctx, fam, v, a)?),
        _ => None,
    };
    Ok(WallReport {
        vector: v.clone(),
        interval: iv.clone(),
        hits,
        classification,
        bounds,
        totally_semistable: tss.cases,
        gieseker_chamber,
        lower_endpoint,
        notes,
    })
}

/// Classification of the single parameter `t0`.
pub fn classify_wall(
    ctx: &K3Context,
    fam: &ChargeFamily,
    v: &ReferenceClass,
    t0: &Rat,
) -> Result<Classification> {
    let rep = walls_on_path(ctx, fam, v, &TInterval::point(t0.clone()))?;
    let at = TStar::At(t0.clone());
    let mut merged: Vec<WallHit> = rep
        .hits
        .into_iter()
        .map(|mut h| {
            h.t_star = at.clone();
            h
        })
        .collect();
    sort_hits(&mut merged);
    Ok(classify_group(at, merged, v.self_pairing(ctx.degree)? == 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn ctx() -> K3Context {
        K3Context::gushel_mukai()
    }

    fn fam() -> ChargeFamily {
        ChargeFamily::gushel_mukai()
    }

    fn p(r: i64, d: i64, q: i64, s: i64) -> MukaiProfile {
        MukaiProfile::new(r, d, q, s)
    }

    #[test]
    fn wall_equation_examples() {
        let v1 = ReferenceClass::v1();
        let eq = wall_equation(&fam(), &v1, &p(0, 1, -2, -1));
        let roots = sturm_roots(&eq, &TInterval::real_line()).unwrap();
        assert_eq!(roots.roots[0].exact, Some(int(11)));
        let eq = wall_equation(&fam(), &v1, &p(1, -2, -2, 0));
        assert_eq!(sturm_roots(&eq, &TInterval::real_line()).unwrap().roots[0].exact, Some(int(1)));
        assert!(wall_equation(&fam(), &v1, &p(1, 0, 0, -1)).is_zero());
    }

    #[test]
    fn wall_equation_is_twenty_five_times_smaller() {
        // 25 W = 20r + (t+9)d + 20s
        let v1 = ReferenceClass::v1();
        for w in [p(3, -7, 2, 5), p(-2, 11, 0, 1), p(0, 1, -2, -1)] {
            let lhs = wall_equation(&fam(), &v1, &w).scale(&int(25));
            let rhs = TPoly::from_ints(&[20 * w.r + 9 * w.d + 20 * w.s, w.d]);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn t_star_order_and_serde() {
        assert!(TStar::At(int(11)) < TStar::WholeInterval);
        assert!(TStar::At(int(1)) < TStar::At(rat(13, 3)));
        let s = serde_json::to_string(&TStar::At(rat(13, 3))).unwrap();
        assert_eq!(s, "\"13/3\"");
        assert_eq!(serde_json::from_str::<TStar>(&s).unwrap(), TStar::At(rat(13, 3)));
        assert_eq!(serde_json::from_str::<TStar>("\"whole\"").unwrap(), TStar::WholeInterval);
    }

    #[test]
    fn interval_must_be_positive() {
        let v1 = ReferenceClass::v1();
        let bad = TInterval::closed(int(-1), int(2)).unwrap();
        assert!(matches!(
            enumerate_condition(&ctx(), &fam(), &v1, WallCondition::Isotropic1, &bad),
            Err(Error::InvalidInterval(_))
        ));
    }

    #[test]
    fn rank_zero_reference_is_unsupported() {
        let v = ReferenceClass::integral(0, 1, 1);
        let iv = TInterval::at_least(int(1));
        assert!(matches!(
            enumerate_condition(&ctx(), &fam(), &v, WallCondition::Isotropic1, &iv),
            Err(Error::UnsupportedReference(_))
        ));
    }

    #[test]
    fn non_primitive_reference_is_rejected() {
        let v = ReferenceClass::v1().scaled(2);
        let iv = TInterval::at_least(int(1));
        assert!(matches!(
            enumerate_condition(&ctx(), &fam(), &v, WallCondition::Isotropic1, &iv),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tss_requires_positive_square() {
        let v = ReferenceClass::integral(1, 0, 0);
        let iv = TInterval::closed(int(1), int(2)).unwrap();
        assert_eq!(totally_semistable_check(&ctx(), &fam(), &v, &iv), Err(Error::NonPositiveSquare(0)));
    }

    #[test]
    fn tss_cases_for_v1() {
        let v1 = ReferenceClass::v1();
        let rep = totally_semistable_check(&ctx(), &fam(), &v1, &TInterval::at_least(int(1))).unwrap();
        assert_eq!(rep.verdict, TssVerdict::Clear);
        let shape: Vec<(Rat, i64)> = rep.cases.iter().map(|c| (c.lambda.clone(), c.pairing)).collect();
        assert_eq!(shape, vec![(rat(1, 4), -1), (rat(1, 4), -2), (rat(1, 4), -3), (rat(1, 2), -1)]);
        assert!(rep.spherical_candidates().is_empty());
    }

    #[test]
    fn quadratic_range() {
        // 4r^2 + 28r - 21 <= 0 on r in [-7.68, 0.68]
        assert_eq!(quadratic_integer_range(&int(4), &int(28), &int(-21)), Some((-7, 0)));
        assert_eq!(quadratic_integer_range(&int(1), &int(0), &int(1)), None);
        assert_eq!(quadratic_integer_range(&int(1), &int(0), &int(0)), Some((0, 0)));
    }

    #[test]
    fn flop_partner_sums_to_v() {
        let v1 = ReferenceClass::v1();
        let e = enumerate_condition(
            &ctx(),
            &fam(),
            &v1,
            WallCondition::MinusTwoPairing1,
            &TInterval::greater_than(int(1)),
        )
        .unwrap();
        for h in &e.hits {
            let partner = h.partner.unwrap();
            assert_eq!(partner.self_pairing(), -2);
            assert_eq!(partner.r + h.w.r, 1);
            assert_eq!(partner.d + h.w.d, 0);
            assert_eq!(partner.s + h.w.s, -1);
            let t = h.t_star.value().unwrap();
            assert!(wall_equation(&fam(), &v1, &partner).eval(t).is_zero());
        }
    }

    #[test]
    fn gieseker_chamber_for_v1() {
        let v1 = ReferenceClass::v1();
        let rep = walls_on_path(&ctx(), &fam(), &v1, &TInterval::greater_than(int(1))).unwrap();
        let walls: Vec<_> = rep.walls().collect();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].t_star, TStar::At(int(11)));
        assert_eq!(walls[0].kind, WallKind::Flopping);
        assert_eq!(rep.gieseker_chamber, Some(TInterval::greater_than(int(11))));
    }
}
