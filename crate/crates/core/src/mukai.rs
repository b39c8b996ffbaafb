//! Numerical Mukai vectors on a polarized K3 surface.
//!
//! A class `(r, Δ, s)` is seen only through its profile `(r, Δ·H, Δ², s)`.
//! Pairings are computed only when one side has `Δ` a multiple of `H`
//! (a [`ReferenceClass`]), which is all the wall analysis needs.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exactq::{as_i64, fmt_rat, int, ratstr, Rat};
use crate::{Error, Result};

/// `(r, d = Δ·H, q = Δ², s)`. Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MukaiProfile {
    pub r: i64,
    pub d: i64,
    pub q: i64,
    pub s: i64,
}

impl MukaiProfile {
    pub const fn new(r: i64, d: i64, q: i64, s: i64) -> Self {
        MukaiProfile { r, d, q, s }
    }

    /// Class of a point.
    pub const POINT: MukaiProfile = MukaiProfile::new(0, 0, 0, 1);

    pub fn self_pairing(&self) -> i64 {
        self.q - 2 * self.r * self.s
    }

    pub fn is_spherical(&self) -> bool {
        self.self_pairing() == -2
    }

    pub fn is_isotropic(&self) -> bool {
        self.self_pairing() == 0
    }
}

impl Neg for MukaiProfile {
    type Output = MukaiProfile;
    fn neg(self) -> MukaiProfile {
        MukaiProfile::new(-self.r, -self.d, self.q, -self.s)
    }
}

/// Fieldwise sum. The `q` entry of a sum is not determined by the summands'
/// profiles, so it is only meaningful when one summand is proportional to
/// `H`; callers that need it go through [`ReferenceClass`].
impl Add for MukaiProfile {
    type Output = MukaiProfile;
    fn add(self, o: MukaiProfile) -> MukaiProfile {
        MukaiProfile::new(self.r + o.r, self.d + o.d, self.q + o.q, self.s + o.s)
    }
}

impl Sub for MukaiProfile {
    type Output = MukaiProfile;
    fn sub(self, o: MukaiProfile) -> MukaiProfile {
        MukaiProfile::new(self.r - o.r, self.d - o.d, self.q - o.q, self.s - o.s)
    }
}

impl fmt::Display for MukaiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.r, self.d, self.q, self.s)
    }
}

/// A Mukai vector `(r, c·H, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceClass {
    pub r: i64,
    #[serde(with = "ratstr")]
    pub c: Rat,
    pub s: i64,
}

impl ReferenceClass {
    pub fn new(r: i64, c: Rat, s: i64) -> Self {
        ReferenceClass { r, c, s }
    }

    pub fn integral(r: i64, c: i64, s: i64) -> Self {
        Self::new(r, int(c), s)
    }

    /// `v1 = (1, 0, -1)`, the class of ideal sheaves of two points.
    pub fn v1() -> Self {
        Self::integral(1, 0, -1)
    }

    /// `v2 = (2, -H, 2)`.
    pub fn v2() -> Self {
        Self::integral(2, -1, 2)
    }

    pub fn profile(&self, degree: i64) -> Result<MukaiProfile> {
        let deg = int(degree);
        let d = &self.c * &deg;
        let q = &self.c * &self.c * &deg;
        match (as_i64(&d), as_i64(&q)) {
            (Some(d), Some(q)) if q % 2 == 0 => Ok(MukaiProfile::new(self.r, d, q, self.s)),
            _ => Err(Error::UnsupportedReference(format!(
                "{self} has non-integral or odd profile on a degree {degree} surface"
            ))),
        }
    }

    /// `<v, v> = c^2 H^2 - 2 r s`.
    pub fn self_pairing(&self, degree: i64) -> Result<i64> {
        Ok(self.profile(degree)?.self_pairing())
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::new(k * self.r, &self.c * int(k), k * self.s)
    }

    /// Primitive in the lattice, with `H` assumed primitive.
    pub fn is_primitive(&self) -> bool {
        match as_i64(&self.c) {
            Some(c) => num_integer::gcd(num_integer::gcd(self.r, c), self.s) == 1,
            None => false,
        }
    }
}

impl fmt::Display for ReferenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}H, {})", self.r, fmt_rat(&self.c), self.s)
    }
}

/// `<v, w> = c·(Δ_w·H) - r_v s_w - r_w s_v`.
pub fn pairing_with_reference(v: &ReferenceClass, w: &MukaiProfile) -> Result<i64> {
    let x = &v.c * int(w.d) - int(v.r * w.s + w.r * v.s);
    as_i64(&x).ok_or_else(|| Error::NonIntegralPairing(format!("<{v}, {w}> = {}", fmt_rat(&x))))
}

pub fn self_pairing(w: &MukaiProfile) -> i64 {
    w.self_pairing()
}

pub fn is_spherical(w: &MukaiProfile) -> bool {
    w.is_spherical()
}

// ---------------------------------------------------------------------------
// Surface context

fn default_closure_range() -> i64 {
    3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3Context {
    /// `H^2`.
    pub degree: i64,
    /// No class with `Δ^2 = 0` has `|Δ·H|` in this set.
    pub excluded_isotropic_degrees: BTreeSet<i64>,
    pub has_lines: bool,
    pub has_conics: bool,
    /// Bound on `|m|, |n|` for the combinations `mH + nΔ` probed by the
    /// closure rule.
    #[serde(default = "default_closure_range")]
    pub closure_range: i64,
}

impl K3Context {
    /// Strongly smooth Gushel–Mukai surface of degree 10 containing lines
    /// and conics.
    pub fn gushel_mukai() -> Self {
        K3Context {
            degree: 10,
            excluded_isotropic_degrees: (1..=4).collect(),
            has_lines: true,
            has_conics: true,
            closure_range: 3,
        }
    }

    pub fn with_lines(mut self, yes: bool) -> Self {
        self.has_lines = yes;
        self
    }

    pub fn with_conics(mut self, yes: bool) -> Self {
        self.has_conics = yes;
        self
    }

    pub fn with_excluded_degrees(mut self, degrees: impl IntoIterator<Item = i64>) -> Self {
        self.excluded_isotropic_degrees = degrees.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree <= 0 || self.degree % 2 != 0 {
            return Err(Error::Precondition(format!(
                "polarization degree must be positive and even, got {}",
                self.degree
            )));
        }
        if self.closure_range < 0 {
            return Err(Error::Precondition("closure range must be non-negative".into()));
        }
        Ok(())
    }
}

impl Default for K3Context {
    fn default() -> Self {
        Self::gushel_mukai()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HodgeVerdict {
    Feasible,
    Infeasible,
    /// `H^2 Δ^2 = (Δ·H)^2`: Δ is numerically a multiple of `H`.
    BoundaryProportional,
}

impl HodgeVerdict {
    pub fn is_feasible(self) -> bool {
        self != HodgeVerdict::Infeasible
    }
}

/// Hodge index: `H^2 Δ^2 <= (Δ·H)^2`.
pub fn hodge_ok(ctx: &K3Context, w: &MukaiProfile) -> HodgeVerdict {
    let lhs = ctx.degree * w.q;
    let rhs = w.d * w.d;
    if lhs > rhs {
        HodgeVerdict::Infeasible
    } else if lhs == rhs {
        HodgeVerdict::BoundaryProportional
    } else {
        HodgeVerdict::Feasible
    }
}

/// Why a profile cannot be the class of a divisor on the surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum Rule {
    /// R1: isotropic divisor of excluded degree.
    R1 { degree: i64 },
    /// R2: a (-2)-class of degree zero.
    R2,
    /// R3: the combination `mH + nΔ` fires `base`.
    R3 { m: i64, n: i64, base: Box<Rule> },
    /// R4: a line class on a surface without lines.
    R4,
    /// R5: a conic class on a surface without conics.
    R5,
}

impl Rule {
    /// Whether the rule leans on an isotropic degree other than 4, i.e. on
    /// Brill–Noether generality rather than strong smoothness alone.
    pub fn uses_low_isotropic_degree(&self) -> bool {
        match self {
            Rule::R1 { degree } => *degree != 4,
            Rule::R3 { base, .. } => base.uses_low_isotropic_degree(),
            _ => false,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::R1 { degree } => write!(f, "R1(isotropic, degree {degree})"),
            Rule::R2 => f.write_str("R2(-2 class of degree 0)"),
            Rule::R3 { m, n, base } => write!(f, "R3({m}H{n:+}D -> {base})"),
            Rule::R4 => f.write_str("R4(no lines)"),
            Rule::R5 => f.write_str("R5(no conics)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exclusion {
    /// Not excluded by the configured rules; this is not a realization
    /// certificate.
    Realizable,
    Excluded(Rule),
}

impl Exclusion {
    pub fn is_excluded(&self) -> bool {
        matches!(self, Exclusion::Excluded(_))
    }
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exclusion::Realizable => f.write_str("realizable"),
            Exclusion::Excluded(r) => write!(f, "excluded {r}"),
        }
    }
}

fn base_rule(ctx: &K3Context, d: i64, q: i64) -> Option<Rule> {
    if q == 0 && d != 0 && ctx.excluded_isotropic_degrees.contains(&d.abs()) {
        return Some(Rule::R1 { degree: d.abs() });
    }
    if q == -2 && d == 0 {
        return Some(Rule::R2);
    }
    None
}

pub fn exclusion_check(ctx: &K3Context, w: &MukaiProfile) -> Exclusion {
    if let Some(rule) = base_rule(ctx, w.d, w.q) {
        return Exclusion::Excluded(rule);
    }
    // smallest combinations first
    for k in 1..=ctx.closure_range {
        for (m, n) in (-k..=k).flat_map(|m| (-k..=k).map(move |n| (m, n))) {
            if n == 0 || m.abs().max(n.abs()) != k || (m == 0 && n.abs() == 1) {
                continue;
            }
            let sq = ctx.degree * m * m + 2 * m * n * w.d + n * n * w.q;
            let dg = ctx.degree * m + n * w.d;
            if let Some(base) = base_rule(ctx, dg, sq) {
                return Exclusion::Excluded(Rule::R3 { m, n, base: Box::new(base) });
            }
        }
    }
    if w.q == -2 && w.d.abs() == 1 && !ctx.has_lines {
        return Exclusion::Excluded(Rule::R4);
    }
    if w.q == -2 && w.d.abs() == 2 && !ctx.has_conics {
        return Exclusion::Excluded(Rule::R5);
    }
    Exclusion::Realizable
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> K3Context {
        K3Context::gushel_mukai()
    }

    #[test]
    fn self_pairing_examples() {
        assert_eq!(MukaiProfile::new(1, 0, 0, -1).self_pairing(), 2);
        assert_eq!(MukaiProfile::POINT.self_pairing(), 0);
        assert_eq!(MukaiProfile::new(2, -10, 10, 2).self_pairing(), 2);
    }

    #[test]
    fn pairing_examples() {
        let v1 = ReferenceClass::v1();
        let v2 = ReferenceClass::v2();
        assert_eq!(pairing_with_reference(&v1, &MukaiProfile::new(0, 1, -2, -1)).unwrap(), 1);
        assert_eq!(pairing_with_reference(&v1, &MukaiProfile::new(1, 0, 0, -1)).unwrap(), 2);
        assert_eq!(pairing_with_reference(&v2, &MukaiProfile::new(1, 0, 0, -1)).unwrap(), 0);
    }

    #[test]
    fn non_integral_pairing_is_reported() {
        let v = ReferenceClass::new(1, crate::exactq::rat(1, 2), 0);
        assert!(matches!(
            pairing_with_reference(&v, &MukaiProfile::new(0, 1, 0, 0)),
            Err(Error::NonIntegralPairing(_))
        ));
    }

    #[test]
    fn reference_profiles() {
        assert_eq!(ReferenceClass::v1().profile(10).unwrap(), MukaiProfile::new(1, 0, 0, -1));
        assert_eq!(ReferenceClass::v2().profile(10).unwrap(), MukaiProfile::new(2, -10, 10, 2));
        assert!(ReferenceClass::new(1, crate::exactq::rat(1, 2), 0).profile(10).is_err());
        assert!(ReferenceClass::v1().is_primitive());
        assert!(!ReferenceClass::v1().scaled(2).is_primitive());
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(hodge_ok(&ctx(), &MukaiProfile::new(0, 1, 2, 0)), HodgeVerdict::Infeasible);
        assert_eq!(hodge_ok(&ctx(), &MukaiProfile::new(-2, 10, 10, -3)), HodgeVerdict::BoundaryProportional);
        assert_eq!(hodge_ok(&ctx(), &MukaiProfile::new(1, -1, -2, 0)), HodgeVerdict::Feasible);
        assert_eq!(hodge_ok(&ctx(), &MukaiProfile::new(0, 0, -2, 1)), HodgeVerdict::Feasible);
    }

    #[test]
    fn exclusion_examples() {
        assert_eq!(
            exclusion_check(&ctx(), &MukaiProfile::new(1, 4, 0, 0)),
            Exclusion::Excluded(Rule::R1 { degree: 4 })
        );
        // (H - Δ)^2 = 0, (H - Δ)·H = 4
        assert_eq!(
            exclusion_check(&ctx(), &MukaiProfile::new(-1, 6, 2, -2)),
            Exclusion::Excluded(Rule::R3 { m: -1, n: 1, base: Box::new(Rule::R1 { degree: 4 }) })
        );
        assert_eq!(exclusion_check(&ctx(), &MukaiProfile::new(0, 0, -2, 1)), Exclusion::Excluded(Rule::R2));
    }

    #[test]
    fn line_and_conic_flags() {
        let line = MukaiProfile::new(0, 1, -2, -1);
        let conic = MukaiProfile::new(0, 2, -2, -1);
        assert_eq!(exclusion_check(&ctx(), &line), Exclusion::Realizable);
        assert_eq!(exclusion_check(&ctx(), &conic), Exclusion::Realizable);
        let bare = ctx().with_lines(false).with_conics(false);
        assert_eq!(exclusion_check(&bare, &line), Exclusion::Excluded(Rule::R4));
        assert_eq!(exclusion_check(&bare, &conic), Exclusion::Excluded(Rule::R5));
        assert_eq!(exclusion_check(&ctx(), &MukaiProfile::new(-2, 10, 10, -3)), Exclusion::Realizable);
    }

    #[test]
    fn closure_catches_h_minus_two_delta() {
        // (H - 2Δ)^2 = 10 - 20 + 8 = -2 and (H - 2Δ)·H = 0
        let w = MukaiProfile::new(-1, 5, 2, -2);
        match exclusion_check(&ctx(), &w) {
            Exclusion::Excluded(Rule::R3 { base, .. }) => assert_eq!(*base, Rule::R2),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn spherical_examples() {
        assert!(MukaiProfile::new(1, -1, -2, 0).is_spherical());
        assert!(!MukaiProfile::new(1, 0, 0, -1).is_spherical());
        assert!(MukaiProfile::new(3, -10, 10, 2).is_spherical());
    }

    /// Independent pairing oracle on the full box.
    #[test]
    fn self_pairing_matches_box_oracle() {
        for r in -6..=6i64 {
            for s in -6..=6i64 {
                for d in -20..=20i64 {
                    for q in (-40..=40i64).step_by(2) {
                        let w = MukaiProfile { r, d, q, s };
                        let oracle = q - (r * s + s * r);
                        assert_eq!(w.self_pairing(), oracle);
                        assert_eq!(w.self_pairing() % 2, 0);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn self_pairing_even_and_sign_invariant(r in -50i64..50, d in -50i64..50, h in -50i64..50, s in -50i64..50) {
            let w = MukaiProfile::new(r, d, 2 * h, s);
            prop_assert_eq!(w.self_pairing() % 2, 0);
            prop_assert_eq!((-w).self_pairing(), w.self_pairing());
        }

        #[test]
        fn reference_pairing_is_additive(
            rv in -5i64..5, cv in -3i64..3, sv in -5i64..5,
            a in (-9i64..9, -9i64..9, -9i64..9),
            b in (-9i64..9, -9i64..9, -9i64..9),
        ) {
            let v = ReferenceClass::integral(rv, cv, sv);
            let wa = MukaiProfile::new(a.0, a.1, 0, a.2);
            let wb = MukaiProfile::new(b.0, b.1, 0, b.2);
            let lhs = pairing_with_reference(&v, &(wa + wb)).unwrap();
            let rhs = pairing_with_reference(&v, &wa).unwrap() + pairing_with_reference(&v, &wb).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
