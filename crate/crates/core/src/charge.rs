//! Central charges along the path `σ_t = σ_{√t·u0·H, b·H}`.
//!
//! `Z_t(r, Δ, s) = re(t) + im_coeff(t)·√t·i` with both parts exact
//! polynomials in `t`.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactq::{
    as_i64, ceil_i64, floor_i64, fmt_rat, int, rat, ratstr, sign_on_interval, sturm_roots, Rat, SignVerdict,
    TInterval, TPoly,
};
use crate::mukai::{exclusion_check, hodge_ok, Exclusion, K3Context, MukaiProfile, ReferenceClass, Rule};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeFamily {
    #[serde(with = "ratstr")]
    pub u0: Rat,
    #[serde(with = "ratstr")]
    pub b: Rat,
    pub degree: i64,
}

impl ChargeFamily {
    pub fn new(u0: Rat, b: Rat, degree: i64) -> Result<Self> {
        let fam = ChargeFamily { u0, b, degree };
        fam.validate()?;
        Ok(fam)
    }

    /// `u0 = 1/5`, `b = -2/5` on a degree 10 surface.
    pub fn gushel_mukai() -> Self {
        ChargeFamily { u0: rat(1, 5), b: rat(-2, 5), degree: 10 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.u0.is_positive() {
            return Err(Error::Precondition(format!("u0 must be positive, got {}", fmt_rat(&self.u0))));
        }
        if self.degree <= 0 {
            return Err(Error::Precondition(format!("degree must be positive, got {}", self.degree)));
        }
        Ok(())
    }

    /// `K(t) = (H^2/2)(u0^2 t - b^2)`, the rank coefficient of `re`.
    pub fn k_poly(&self) -> TPoly {
        let half = int(self.degree) / int(2);
        TPoly::linear(-(&half * &self.b * &self.b), &half * &self.u0 * &self.u0)
    }

    /// `H^2·b`, the value of `Δ·H / r` on the `Im = 0` locus.
    pub fn degree_b(&self) -> Rat {
        int(self.degree) * &self.b
    }

    fn parts(&self, r: &Rat, d: &Rat, s: &Rat) -> ChargeValue {
        let re = &self.k_poly().scale(r) + &TPoly::constant(&self.b * d - s);
        let im = &self.u0 * (d - self.degree_b() * r);
        ChargeValue { re, im_coeff: TPoly::constant(im) }
    }

    pub fn charge(&self, w: &MukaiProfile) -> ChargeValue {
        self.parts(&int(w.r), &int(w.d), &int(w.s))
    }

    pub fn charge_of_reference(&self, v: &ReferenceClass) -> ChargeValue {
        self.parts(&int(v.r), &(&v.c * int(self.degree)), &int(v.s))
    }
}

impl Default for ChargeFamily {
    fn default() -> Self {
        Self::gushel_mukai()
    }
}

/// `Z = re(t) + im_coeff(t)·√t·i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeValue {
    pub re: TPoly,
    pub im_coeff: TPoly,
}

impl ChargeValue {
    pub fn at(&self, t: &Rat) -> ChargeAt {
        ChargeAt { t: t.clone(), re: self.re.eval(t), im_coeff: self.im_coeff.eval(t) }
    }

    /// `Re(Z(self)·conj(Z(other)))`, which has the sign of
    /// `Re(Z(self)/Z(other))` wherever `Z(other) != 0`.
    pub fn re_cross(&self, other: &ChargeValue) -> TPoly {
        &(&self.re * &other.re) + &(&(&self.im_coeff * &other.im_coeff) * &TPoly::t())
    }

    /// `Im(Z(self)·conj(Z(other))) / √t`.
    pub fn im_cross(&self, other: &ChargeValue) -> TPoly {
        &(&self.im_coeff * &other.re) - &(&other.im_coeff * &self.re)
    }
}

impl std::ops::Add for &ChargeValue {
    type Output = ChargeValue;
    fn add(self, o: &ChargeValue) -> ChargeValue {
        ChargeValue { re: &self.re + &o.re, im_coeff: &self.im_coeff + &o.im_coeff }
    }
}

impl fmt::Display for ChargeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})·√t·i", self.re, self.im_coeff)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeAt {
    #[serde(with = "ratstr")]
    pub t: Rat,
    #[serde(with = "ratstr")]
    pub re: Rat,
    #[serde(with = "ratstr")]
    pub im_coeff: Rat,
}

impl ChargeAt {
    pub fn to_f64(&self) -> (f64, f64) {
        let t = self.t.to_f64().unwrap_or(f64::NAN);
        (self.re.to_f64().unwrap_or(f64::NAN), self.im_coeff.to_f64().unwrap_or(f64::NAN) * t.sqrt())
    }
}

fn vanishes_somewhere(z: &ChargeValue, iv: &TInterval) -> bool {
    let g = z.re.gcd(&z.im_coeff);
    if g.is_zero() {
        return true;
    }
    match g.degree() {
        Some(0) => false,
        _ => sturm_roots(&g, iv).map(|rs| rs.count > 0).unwrap_or(true),
    }
}

/// Sign of `Re(Z(w)/Z(v))` on `iv`.
pub fn re_ratio_sign(
    fam: &ChargeFamily,
    w: &MukaiProfile,
    v: &MukaiProfile,
    iv: &TInterval,
) -> Result<SignVerdict> {
    let zv = fam.charge(v);
    re_ratio_sign_charges(&fam.charge(w), &zv, iv)
}

pub fn re_ratio_sign_charges(zw: &ChargeValue, zv: &ChargeValue, iv: &TInterval) -> Result<SignVerdict> {
    if vanishes_somewhere(zv, iv) {
        return Err(Error::ReferenceChargeVanishes);
    }
    Ok(sign_on_interval(&zw.re_cross(zv), iv))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeartPosition {
    StrictUpper,
    RealNegative,
    RealPositive,
    Zero,
    Lower,
}

pub fn heart_position(fam: &ChargeFamily, w: &MukaiProfile, t: &Rat) -> Result<HeartPosition> {
    if !t.is_positive() {
        return Err(Error::Precondition(format!("t must be positive, got {}", fmt_rat(t))));
    }
    let z = fam.charge(w).at(t);
    Ok(if z.im_coeff.is_positive() {
        HeartPosition::StrictUpper
    } else if z.im_coeff.is_negative() {
        HeartPosition::Lower
    } else if z.re.is_negative() {
        HeartPosition::RealNegative
    } else if z.re.is_positive() {
        HeartPosition::RealPositive
    } else {
        HeartPosition::Zero
    })
}

// ---------------------------------------------------------------------------
// Existence criterion

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExistenceVerdict {
    NoObstruction,
    Violation(MukaiProfile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceReport {
    #[serde(with = "ratstr")]
    pub t: Rat,
    pub verdict: ExistenceVerdict,
    /// Largest rank a spherical class can have while its charge lies on
    /// the closed negative real ray.
    pub derived_rank_bound: i64,
    pub searched_rank_bound: i64,
    /// Every profile not ruled out, in lexicographic order.
    pub violations: Vec<MukaiProfile>,
    /// Candidates that reach the ray but are ruled out as divisor data.
    pub excluded_candidates: Vec<(MukaiProfile, Rule)>,
    pub verification_mode: String,
}

/// Largest integer `r` with `r^2 <= 2 / (H^2 u0^2 t)`.
pub fn existence_rank_bound(fam: &ChargeFamily, t: &Rat) -> i64 {
    let cap = int(2) / (int(fam.degree) * &fam.u0 * &fam.u0 * t);
    isqrt_floor(&cap)
}

/// `floor(sqrt(x))`, using `floor(sqrt(x)) = floor(sqrt(floor(x)))`.
fn isqrt_floor(x: &Rat) -> i64 {
    let f = floor_i64(x).max(0);
    let mut r = (f as f64).sqrt() as i64;
    while r * r > f {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= f {
        r += 1;
    }
    r
}

/// Searches spherical sheaf-like profiles whose charge at `t` lies on the
/// closed negative real ray.
pub fn existence_check(ctx: &K3Context, fam: &ChargeFamily, t: &Rat, bound: i64) -> Result<ExistenceReport> {
    if !t.is_positive() {
        return Err(Error::Precondition(format!("t must be positive, got {}", fmt_rat(t))));
    }
    if bound < 0 {
        return Err(Error::Precondition("rank bound must be non-negative".into()));
    }
    let derived = existence_rank_bound(fam, t);
    if bound < derived {
        return Err(Error::SearchNotExhaustive(format!(
            "rank bound {bound} is below the derived bound {derived}"
        )));
    }
    let k = fam.k_poly().eval(t);
    let db = fam.degree_b();
    let db2 = &db * &fam.b;
    let mut hits = Vec::new();
    let mut excluded = Vec::new();
    // r = 0 forces d = 0 on the Im = 0 locus, contradicting d > 0
    for r in 1..=derived {
        let Some(d) = as_i64(&(&db * int(r))) else {
            continue;
        };
        let rr = int(r);
        let s_lo = ceil_i64(&(&rr * (&db2 + &k)));
        let s_hi = floor_i64(&((&db2 * &rr * &rr + int(2)) / (int(2) * &rr)));
        for s in s_lo..=s_hi {
            let w = MukaiProfile::new(r, d, 2 * r * s - 2, s);
            let z = fam.charge(&w).at(t);
            debug_assert!(z.im_coeff.is_zero() && !z.re.is_positive());
            if !hodge_ok(ctx, &w).is_feasible() {
                continue;
            }
            match exclusion_check(ctx, &w) {
                Exclusion::Excluded(rule) => excluded.push((w, rule)),
                Exclusion::Realizable => hits.push(w),
            }
        }
    }
    hits.sort();
    excluded.sort();
    Ok(ExistenceReport {
        t: t.clone(),
        verdict: match hits.first() {
            Some(w) => ExistenceVerdict::Violation(*w),
            None => ExistenceVerdict::NoObstruction,
        },
        violations: hits.clone(),
        derived_rank_bound: derived,
        searched_rank_bound: bound,
        excluded_candidates: excluded,
        verification_mode: format!("exact search at t = {}", fmt_rat(t)),
    })
}
