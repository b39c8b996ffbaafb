//! Stability of spherical classes along `σ_t` by elimination of phase-equal
//! destabilizing factors.
//!
//! A destabilizing factor `F` of a target `T` has `0 < Im Z(F) < Im Z(T)`,
//! which quantizes `k = den·(Δ_F·H - H^2 b r_F)` into an integer gap. Equal
//! phase makes `Z(F) = (k/K) Z(T)`, so `s_F` is linear in `t` for fixed
//! `(r, k)`. Sphericality of `F` plus the Hodge index theorem bound `r`, and
//! every remaining case is decided exactly.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::charge::ChargeFamily;
use crate::exactq::{
    as_i64, ceil_i64, floor_i64, fmt_rat, int, ratstr, sign_on_interval, QuadInT, Rat, SignVerdict,
    TInterval, TPoly,
};
use crate::mukai::{exclusion_check, hodge_ok, Exclusion, HodgeVerdict, K3Context, MukaiProfile, Rule};
use crate::walls::TStar;
use crate::{Error, Result};

const MAX_RADIUS: i64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Subobject,
    Quotient,
}

/// Which Jordan–Hölder factors are assumed spherical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphericalForcing {
    None,
    /// The probed factor.
    Factor,
    /// Both factors, which needs a target with `Δ` proportional to `H`.
    BothFactors,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabProblem {
    pub name: String,
    pub target: MukaiProfile,
    pub iv: TInterval,
    /// Which factor of the destabilizing sequence is probed.
    pub side: Side,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_min: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_max: Option<i64>,
    pub spherical: SphericalForcing,
}

impl DestabProblem {
    pub fn new(name: &str, target: MukaiProfile, iv: TInterval) -> Self {
        DestabProblem {
            name: name.to_string(),
            target,
            iv,
            side: Side::Subobject,
            rank_min: None,
            rank_max: None,
            spherical: SphericalForcing::Factor,
        }
    }

    pub fn rank_at_least(mut self, r: i64) -> Self {
        self.rank_min = Some(r);
        self
    }

    pub fn rank_at_most(mut self, r: i64) -> Self {
        self.rank_max = Some(r);
        self
    }

    pub fn side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn spherical(mut self, s: SphericalForcing) -> Self {
        self.spherical = s;
        self
    }

    fn rank_ok(&self, r: i64) -> bool {
        self.rank_min.is_none_or(|m| r >= m) && self.rank_max.is_none_or(|m| r <= m)
    }
}

/// The six spherical targets along `t >= 1` on the degree 10 preset:
/// line and conic sheaves, their ideal-sheaf partners, and the two
/// tautological bundles.
pub fn gushel_mukai_problems() -> Vec<DestabProblem> {
    let ray = TInterval::at_least(int(1));
    vec![
        DestabProblem::new("line sheaf O_L(-2)", MukaiProfile::new(0, 1, -2, -1), ray.clone())
            .rank_at_least(1)
            .spherical(SphericalForcing::None),
        DestabProblem::new("O_S(-L)", MukaiProfile::new(1, -1, -2, 0), ray.clone()).rank_at_least(1),
        DestabProblem::new("conic sheaf O_C(-2)", MukaiProfile::new(0, 2, -2, -1), ray.clone())
            .rank_at_least(0),
        DestabProblem::new("O_S(-C)", MukaiProfile::new(1, -2, -2, 0), ray.clone()).rank_at_least(1),
        DestabProblem::new("U_S[1]", MukaiProfile::new(-2, 10, 10, -3), ray.clone())
            .side(Side::Quotient)
            .rank_at_most(-1)
            .spherical(SphericalForcing::BothFactors),
        DestabProblem::new("V_S", MukaiProfile::new(3, -10, 10, 2), ray)
            .spherical(SphericalForcing::BothFactors),
    ]
}

/// `den`, the denominator of `H^2 b`.
fn quantum_den(fam: &ChargeFamily) -> i64 {
    fam.degree_b().denom().to_i64().expect("small denominator")
}

/// `den·(Δ·H - H^2 b r)`, an integer multiple of the imaginary part.
fn im_quantum(fam: &ChargeFamily, w: &MukaiProfile) -> Rat {
    int(quantum_den(fam)) * (int(w.d) - fam.degree_b() * int(w.r))
}

/// Integers `k` with `0 < k < K` where `K` is the target's imaginary quantum.
pub fn phase_gap(target: &MukaiProfile, fam: &ChargeFamily) -> Vec<i64> {
    let big_k = floor_i64(&im_quantum(fam, target));
    (1..big_k).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub w: MukaiProfile,
    pub t: TStar,
    pub exclusion: Exclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Elimination {
    /// `poly > 0` on `interval` contradicts the Hodge index theorem.
    HodgeViolation { poly: TPoly, interval: TInterval },
    /// No integral `Δ·H` or `s` is compatible with the relations.
    IntegralityGap,
    /// `poly` must vanish somewhere on the interval but has constant sign.
    SignContradiction { poly: TPoly, sign: SignVerdict },
    /// Every remaining profile is ruled out as divisor data.
    ExclusionRule(Vec<Survivor>),
    /// Not eliminated.
    Survives(Vec<Survivor>),
}

impl Elimination {
    pub fn is_eliminated(&self) -> bool {
        !matches!(self, Elimination::Survives(_))
    }

    pub fn rules(&self) -> Vec<Rule> {
        match self {
            Elimination::ExclusionRule(s) => s
                .iter()
                .filter_map(|x| match &x.exclusion {
                    Exclusion::Excluded(r) => Some(r.clone()),
                    Exclusion::Realizable => None,
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Elimination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elimination::HodgeViolation { poly, interval } => {
                write!(f, "Hodge: {poly} > 0 on {interval}")
            }
            Elimination::IntegralityGap => f.write_str("no integral solution"),
            Elimination::SignContradiction { poly, .. } => write!(f, "{poly} has no root in range"),
            Elimination::ExclusionRule(s) => {
                let parts: Vec<String> =
                    s.iter().map(|x| format!("{} at t = {} {}", x.w, x.t, x.exclusion)).collect();
                write!(f, "{}", parts.join("; "))
            }
            Elimination::Survives(s) => {
                let parts: Vec<String> = s.iter().map(|x| format!("{} at t = {}", x.w, x.t)).collect();
                write!(f, "survives: {}", parts.join("; "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCertificate {
    pub r: i64,
    pub k: i64,
    #[serde(with = "ratstr")]
    pub d: Rat,
    /// `s` of the factor as a function of `t`.
    pub s_of_t: TPoly,
    pub reason: Elimination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DestabVerdict {
    StableEverywhere,
    Candidate(Survivor),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabReport {
    pub problem: DestabProblem,
    pub phase_gap: Vec<i64>,
    /// `s` of the factor from equal phase, e.g. `15s=(3t+12)r-4k-kt`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    /// `<T, F> = -1` when both factors are spherical, e.g. `2s=r-2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing_relation: Option<String>,
    /// Hodge quadratic in `r` and the certified radius `|r| < R`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_radius: Option<i64>,
    pub cases: Vec<CaseCertificate>,
    pub verdict: DestabVerdict,
    /// Exclusions relying on isotropic degrees below 4.
    pub low_degree_dependence: Vec<Rule>,
}

impl DestabReport {
    pub fn is_stable(&self) -> bool {
        self.verdict == DestabVerdict::StableEverywhere
    }
}

// ---------------------------------------------------------------------------
// Rendering

fn lcm_denoms(polys: &[&TPoly]) -> i64 {
    let mut l = num_bigint::BigInt::from(1);
    for p in polys {
        for c in p.coeffs() {
            l = l.lcm(c.denom());
        }
    }
    l.to_i64().expect("small denominator")
}

fn signed_term(c: &Rat, body: &str, first: bool) -> String {
    let sign = if c.is_negative() {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let a = c.abs();
    let mag = if body.is_empty() {
        fmt_rat(&a)
    } else if a == int(1) {
        String::new()
    } else {
        fmt_rat(&a)
    };
    format!("{sign}{mag}{body}")
}

/// Terms of `p` with the given suffix per power, highest power first.
fn terms_desc(p: &TPoly, var: &str) -> Vec<(Rat, String)> {
    let mut out = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let body = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        out.push((c.clone(), body));
    }
    out
}

fn join_terms(terms: &[(Rat, String)], mut first: bool) -> String {
    let mut s = String::new();
    for (c, body) in terms {
        s.push_str(&signed_term(c, body, first));
        first = false;
    }
    s
}

/// `coeff·r` where `coeff` is a polynomial in `t`.
fn r_term(p: &TPoly, first: bool) -> String {
    let terms = terms_desc(p, "t");
    match terms.len() {
        0 => String::new(),
        1 => join_terms(&[(terms[0].0.clone(), format!("{}r", terms[0].1))], first),
        _ => {
            let inner = join_terms(&terms, true);
            format!("{}({inner})r", if first { "" } else { "+" })
        }
    }
}

/// `L s = A(t) r + k B(t)` (or with `k` substituted), remainder terms in
/// ascending powers of `t`.
fn render_relation(alpha: &TPoly, beta: &TPoly, k: Option<i64>) -> String {
    let rest = match k {
        Some(k) => beta.scale(&int(k)),
        None => beta.clone(),
    };
    let l = lcm_denoms(&[alpha, &rest]);
    let a = alpha.scale(&int(l));
    let b = rest.scale(&int(l));
    let lhs = if l == 1 { "s".to_string() } else { format!("{l}s") };
    let mut rhs = r_term(&a, true);
    let mut terms: Vec<(Rat, String)> = terms_desc(&b, "t");
    terms.reverse();
    if k.is_none() {
        for t in &mut terms {
            t.1 = format!("k{}", t.1);
        }
    }
    rhs.push_str(&join_terms(&terms, rhs.is_empty()));
    if rhs.is_empty() {
        rhs.push('0');
    }
    format!("{lhs}={rhs}")
}

/// `s = a r + b k + c` rendered with the smallest positive integer
/// coefficient on `s`.
fn render_pairing_relation(a: &Rat, b: &Rat, c: &Rat) -> String {
    let l = int(lcm_denoms(&[&TPoly::new(vec![a.clone(), b.clone(), c.clone()])]));
    let (a, b, c) = (a * &l, b * &l, c * &l);
    let ints = [&l, &a, &b, &c].map(|x| as_i64(x).expect("integral after scaling"));
    let g = int(ints.iter().fold(0, |g, &x| num_integer::gcd(g, x)).max(1));
    let (m, a, b, c) = (&l / &g, a / &g, b / &g, c / &g);
    let lhs = if m == int(1) { "s".to_string() } else { format!("{}s", fmt_rat(&m)) };
    let mut rhs = String::new();
    for (coef, body) in [(&a, "r"), (&b, "k"), (&c, "")] {
        if !coef.is_zero() {
            rhs.push_str(&signed_term(coef, body, rhs.is_empty()));
        }
    }
    if rhs.is_empty() {
        rhs.push('0');
    }
    format!("{lhs}={rhs}")
}

// ---------------------------------------------------------------------------
// Elimination

struct Setup<'a> {
    ctx: &'a K3Context,
    problem: &'a DestabProblem,
    den: Rat,
    db: Rat,
    alpha: TPoly,
    beta: TPoly,
    /// `s = (pc + pa·r + pk·k)` from `<T, F> = -1`.
    pairing: Option<(Rat, Rat, Rat)>,
}

impl Setup<'_> {
    fn d_of(&self, r: i64, k: i64) -> Rat {
        int(k) / &self.den + &self.db * int(r)
    }

    fn s_poly(&self, r: i64, k: i64) -> TPoly {
        &self.alpha.scale(&int(r)) + &self.beta.scale(&int(k))
    }

    /// `H^2 (2 r s(t) - 2) - d^2`.
    fn hodge_poly(&self, r: i64, k: i64) -> TPoly {
        let deg = int(self.ctx.degree);
        let d = self.d_of(r, k);
        &self.s_poly(r, k).scale(&(int(2) * &deg * int(r))) - &TPoly::constant(int(2) * &deg + &d * &d)
    }

    fn survivor(&self, w: MukaiProfile, t: TStar) -> Survivor {
        Survivor { w, t, exclusion: exclusion_check(self.ctx, &w) }
    }
}

fn classify_survivors(list: Vec<Survivor>) -> Elimination {
    if list.is_empty() {
        Elimination::IntegralityGap
    } else if list.iter().all(|s| s.exclusion.is_excluded()) {
        Elimination::ExclusionRule(list)
    } else {
        Elimination::Survives(list)
    }
}

/// The part of `iv` where the linear polynomial `h` is `<= 0`.
fn nonpositive_part(h: &TPoly, iv: &TInterval) -> Option<TInterval> {
    match h.degree() {
        None => Some(iv.clone()),
        Some(0) => (!h.coeff(0).is_positive()).then(|| iv.clone()),
        Some(_) => {
            let root = -(h.coeff(0) / h.coeff(1));
            let half = if h.coeff(1).is_positive() {
                TInterval::new(None, false, Some(root), true).ok()?
            } else {
                TInterval::new(Some(root), true, None, false).ok()?
            };
            iv.intersect(&half)
        }
    }
}

fn eliminate_case(st: &Setup, r: i64, k: i64) -> Result<CaseCertificate> {
    let iv = &st.problem.iv;
    let d = st.d_of(r, k);
    let s_of_t = st.s_poly(r, k);
    let cert = |reason| CaseCertificate { r, k, d: d.clone(), s_of_t: s_of_t.clone(), reason };
    let Some(di) = as_i64(&d) else {
        return Ok(cert(Elimination::IntegralityGap));
    };
    let h = st.hodge_poly(r, k);
    let hsign = sign_on_interval(&h, iv);
    if hsign.is_positive() {
        return Ok(cert(Elimination::HodgeViolation { poly: h, interval: iv.clone() }));
    }
    let profile = |s: i64| MukaiProfile::new(r, di, 2 * r * s - 2, s);

    if let Some((pc, pa, pk)) = &st.pairing {
        let s = pc + pa * int(r) + pk * int(k);
        let Some(si) = as_i64(&s) else {
            return Ok(cert(Elimination::IntegralityGap));
        };
        let e = &s_of_t - &TPoly::constant(s);
        if e.is_zero() {
            if nonpositive_part(&h, iv).is_none() {
                return Ok(cert(Elimination::HodgeViolation { poly: h, interval: iv.clone() }));
            }
            return Ok(cert(classify_survivors(vec![st.survivor(profile(si), TStar::WholeInterval)])));
        }
        let sign = sign_on_interval(&e, iv);
        if matches!(sign, SignVerdict::AlwaysPositive | SignVerdict::AlwaysNegative) {
            return Ok(cert(Elimination::SignContradiction { poly: e, sign }));
        }
        let t0 = -(e.coeff(0) / e.coeff(1));
        if h.eval(&t0).is_positive() {
            return Ok(cert(Elimination::HodgeViolation { poly: h, interval: TInterval::point(t0) }));
        }
        return Ok(cert(classify_survivors(vec![st.survivor(profile(si), TStar::At(t0))])));
    }

    let Some(j) = nonpositive_part(&h, iv) else {
        return Ok(cert(Elimination::HodgeViolation { poly: h, interval: iv.clone() }));
    };
    if s_of_t.degree().unwrap_or(0) == 0 {
        let s = s_of_t.coeff(0);
        return Ok(cert(match as_i64(&s) {
            Some(si) => classify_survivors(vec![st.survivor(profile(si), TStar::WholeInterval)]),
            None => Elimination::IntegralityGap,
        }));
    }
    let (Some(lo), Some(hi)) = (&j.lower, &j.upper) else {
        return Err(Error::BoundChainOpen(format!("s is unbounded for r = {r}, k = {k} on {j}")));
    };
    let (a, b) = (s_of_t.eval(lo), s_of_t.eval(hi));
    let (smin, smax) = if a <= b { (a, b) } else { (b, a) };
    let mut list = Vec::new();
    for s in ceil_i64(&smin)..=floor_i64(&smax) {
        let t = (int(s) - s_of_t.coeff(0)) / s_of_t.coeff(1);
        if !j.contains(&t) {
            continue;
        }
        let w = profile(s);
        debug_assert!(hodge_ok(st.ctx, &w) != HodgeVerdict::Infeasible);
        list.push(st.survivor(w, TStar::At(t)));
    }
    Ok(cert(classify_survivors(list)))
}

pub fn eliminate(ctx: &K3Context, fam: &ChargeFamily, problem: &DestabProblem) -> Result<DestabReport> {
    let target = &problem.target;
    if !target.is_spherical() {
        return Err(Error::Precondition(format!("target {target} is not spherical")));
    }
    let gap = phase_gap(target, fam);
    if gap.is_empty() {
        return Ok(DestabReport {
            problem: problem.clone(),
            phase_gap: gap,
            relation: None,
            pairing_relation: None,
            rank_radius: None,
            cases: Vec::new(),
            verdict: DestabVerdict::StableEverywhere,
            low_degree_dependence: Vec::new(),
        });
    }
    if problem.spherical == SphericalForcing::None {
        return Err(Error::BoundChainOpen("Δ^2 of the factor is unconstrained without sphericality".into()));
    }
    let deg = int(ctx.degree);
    let den = int(quantum_den(fam));
    let db = fam.degree_b();
    let big_k = im_quantum(fam, target);
    let re_t = fam.charge(target).re;
    let alpha = &TPoly::constant(&db * &fam.b) + &fam.k_poly();
    let beta = &TPoly::constant(&fam.b / &den) - &re_t.scale(&(int(1) / &big_k));

    let pairing = match problem.spherical {
        SphericalForcing::BothFactors => {
            if hodge_ok(ctx, target) != HodgeVerdict::BoundaryProportional || target.r == 0 {
                return Err(Error::Precondition(format!(
                    "pairing with {target} needs Δ proportional to H and nonzero rank"
                )));
            }
            // c d - r_T s - r s_T = -1 with d = k/den + H^2 b r
            let c = int(target.d) / &deg;
            let rt = int(target.r);
            let pc = int(1) / &rt;
            let pa = (&c * &db - int(target.s)) / &rt;
            let pk = &c / (&den * &rt);
            Some((pc, pa, pk))
        }
        _ => None,
    };

    // Hodge in r for each k; the leading coefficient is (H^2 u0)^2 t
    let mut radius = 0;
    for &k in &gap {
        let kd = int(k) / &den;
        let quad = QuadInT {
            a: &alpha.scale(&(int(2) * &deg)) - &TPoly::constant(&db * &db),
            b: &beta.scale(&(int(2) * &deg * int(k))) - &TPoly::constant(int(2) * &kd * &db),
            c: TPoly::constant(-(int(2) * &deg) - &kd * &kd),
        };
        let r = quad
            .certified_radius(&problem.iv, MAX_RADIUS)
            .ok_or_else(|| Error::BoundChainOpen(format!("rank of the factor is unbounded for k = {k}")))?;
        radius = radius.max(r);
    }

    let st = Setup { ctx, problem, den, db, alpha: alpha.clone(), beta: beta.clone(), pairing };
    let mut cases = Vec::new();
    for r in (1 - radius..radius).filter(|&r| problem.rank_ok(r)) {
        for &k in &gap {
            cases.push(eliminate_case(&st, r, k)?);
        }
    }

    let relation = Some(render_relation(&alpha, &beta, (gap.len() == 1).then(|| gap[0])));
    let pairing_relation = st.pairing.as_ref().map(|(pc, pa, pk)| {
        if gap.len() == 1 {
            render_pairing_relation(pa, &Rat::zero(), &(pc + pk * int(gap[0])))
        } else {
            render_pairing_relation(pa, pk, pc)
        }
    });

    let verdict = cases
        .iter()
        .find_map(|c| match &c.reason {
            Elimination::Survives(list) => list.iter().find(|s| !s.exclusion.is_excluded()).cloned(),
            _ => None,
        })
        .map_or(DestabVerdict::StableEverywhere, DestabVerdict::Candidate);
    let mut low: Vec<Rule> =
        cases.iter().flat_map(|c| c.reason.rules()).filter(|r| r.uses_low_isotropic_degree()).collect();
    low.sort();
    low.dedup();
    Ok(DestabReport {
        problem: problem.clone(),
        phase_gap: gap,
        relation,
        pairing_relation,
        rank_radius: Some(radius),
        cases,
        verdict,
        low_degree_dependence: low,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn fam() -> ChargeFamily {
        ChargeFamily::gushel_mukai()
    }

    #[test]
    fn phase_gaps() {
        assert!(phase_gap(&MukaiProfile::new(0, 1, -2, -1), &fam()).is_empty());
        assert_eq!(phase_gap(&MukaiProfile::new(1, -1, -2, 0), &fam()), vec![1, 2]);
        assert_eq!(phase_gap(&MukaiProfile::new(0, 2, -2, -1), &fam()), vec![1]);
        assert_eq!(phase_gap(&MukaiProfile::new(1, -2, -2, 0), &fam()), vec![1]);
        assert_eq!(phase_gap(&MukaiProfile::new(-2, 10, 10, -3), &fam()), vec![1]);
        assert_eq!(phase_gap(&MukaiProfile::new(3, -10, 10, 2), &fam()), vec![1]);
    }

    #[test]
    fn relation_rendering() {
        let ctx = K3Context::gushel_mukai();
        let rel: Vec<Option<String>> =
            gushel_mukai_problems().iter().map(|p| eliminate(&ctx, &fam(), p).unwrap().relation).collect();
        assert_eq!(rel[0], None);
        assert_eq!(rel[1].as_deref(), Some("15s=(3t+12)r-4k-kt"));
        assert_eq!(rel[2].as_deref(), Some("10s=(2t+8)r-5"));
        assert_eq!(rel[3].as_deref(), Some("10s=(2t+8)r-4-t"));
        assert_eq!(rel[4].as_deref(), Some("10s=(2t+8)r-7+2t"));
        assert_eq!(rel[5].as_deref(), Some("10s=(2t+8)r-2-3t"));
    }

    #[test]
    fn pairing_relation_rendering() {
        let ctx = K3Context::gushel_mukai();
        let probs = gushel_mukai_problems();
        let a = eliminate(&ctx, &fam(), &probs[4]).unwrap();
        let b = eliminate(&ctx, &fam(), &probs[5]).unwrap();
        assert_eq!(a.pairing_relation.as_deref(), Some("2s=r-2"));
        assert_eq!(b.pairing_relation.as_deref(), Some("3s=2r"));
    }

    #[test]
    fn six_targets_are_stable() {
        let ctx = K3Context::gushel_mukai();
        for p in gushel_mukai_problems() {
            let rep = eliminate(&ctx, &fam(), &p).unwrap();
            assert!(rep.is_stable(), "{}: {:?}", p.name, rep.verdict);
            for c in &rep.cases {
                assert!(c.reason.is_eliminated());
            }
        }
    }

    #[test]
    fn flop2_survivors_are_low_degree_isotropic() {
        let ctx = K3Context::gushel_mukai();
        let rep = eliminate(&ctx, &fam(), &gushel_mukai_problems()[1]).unwrap();
        let mut excluded: Vec<(MukaiProfile, TStar)> = rep
            .cases
            .iter()
            .flat_map(|c| match &c.reason {
                Elimination::ExclusionRule(s) => s.iter().map(|x| (x.w, x.t.clone())).collect(),
                _ => Vec::new(),
            })
            .collect();
        excluded.sort();
        assert_eq!(
            excluded,
            vec![
                (MukaiProfile::new(1, -3, 0, 1), TStar::At(rat(7, 2))),
                (MukaiProfile::new(1, -2, 0, 1), TStar::At(int(11))),
            ]
        );
        assert_eq!(rep.low_degree_dependence, vec![Rule::R1 { degree: 2 }, Rule::R1 { degree: 3 }]);
    }

    #[test]
    fn exclusions_off_surface_a_candidate() {
        let ctx = K3Context::gushel_mukai().with_excluded_degrees([]);
        let rep = eliminate(&ctx, &fam(), &gushel_mukai_problems()[1]).unwrap();
        assert!(matches!(rep.verdict, DestabVerdict::Candidate(_)));
    }

    #[test]
    fn sign_claims_reverify() {
        let ctx = K3Context::gushel_mukai();
        for p in gushel_mukai_problems() {
            let rep = eliminate(&ctx, &fam(), &p).unwrap();
            for c in rep.cases {
                match c.reason {
                    Elimination::HodgeViolation { poly, interval } => {
                        assert!(sign_on_interval(&poly, &interval).is_positive())
                    }
                    Elimination::SignContradiction { poly, sign } => {
                        assert_eq!(sign_on_interval(&poly, &p.iv), sign)
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn non_spherical_target_is_rejected() {
        let p = DestabProblem::new("x", MukaiProfile::new(1, 0, 0, -1), TInterval::at_least(int(1)));
        assert!(eliminate(&K3Context::gushel_mukai(), &fam(), &p).is_err());
    }
}
