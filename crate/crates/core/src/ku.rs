//! The numerical lattice `Zκ1 ⊕ Zκ2` of the Kuznetsov component of a
//! special Gushel–Mukai threefold, with Euler form `-I2`, and the forgetful
//! and inflation maps to the Mukai lattice of the branch surface.
//!
//! Chern characters of the basis, for reference only:
//! `ch(κ1) = 1 - h^2/5`, `ch(κ2) = 2 - h + h^3/12`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charge::{ChargeAt, ChargeFamily};
use crate::exactq::{fmt_rat, ratstr, Rat};
use crate::mukai::{MukaiProfile, ReferenceClass};
use crate::{Error, Result};

/// `a κ1 + b κ2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KuClass {
    pub a: i64,
    pub b: i64,
}

impl KuClass {
    pub const fn new(a: i64, b: i64) -> Self {
        KuClass { a, b }
    }
}

impl fmt::Display for KuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

pub fn euler_ku(x: &KuClass, y: &KuClass) -> i64 {
    -(x.a * y.a + x.b * y.b)
}

/// `(r, Δ, s) ↦ (s - r) κ1 + (2r + 2s + Δ·H) κ2`.
pub fn forg(w: &MukaiProfile) -> KuClass {
    KuClass::new(w.s - w.r, 2 * w.r + 2 * w.s + w.d)
}

/// `a κ1 + b κ2 ↦ -a (1, 0, -1) - b (2, -H, 2)`, whose `Δ` is `bH`.
pub fn inf_reference(x: &KuClass) -> ReferenceClass {
    ReferenceClass::integral(-x.a - 2 * x.b, x.b, x.a - 2 * x.b)
}

/// Profile of [`inf_reference`] on the degree 10 surface.
pub fn inf(x: &KuClass) -> MukaiProfile {
    MukaiProfile::new(-x.a - 2 * x.b, 10 * x.b, 10 * x.b * x.b, x.a - 2 * x.b)
}

fn check_t(t: &Rat) -> Result<()> {
    use num_traits::Signed;
    if t.is_positive() {
        Ok(())
    } else {
        Err(Error::Precondition("t must be positive".into()))
    }
}

pub fn ku_charge(fam: &ChargeFamily, x: &KuClass, t: &Rat) -> Result<ChargeAt> {
    check_t(t)?;
    Ok(fam.charge_of_reference(&inf_reference(x)).at(t))
}

/// A charge value `re + im_coeff * sqrt(t) * i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeOut {
    #[serde(with = "ratstr")]
    pub t: Rat,
    #[serde(with = "ratstr")]
    pub re: Rat,
    #[serde(with = "ratstr")]
    pub im_coeff: Rat,
}

impl From<ChargeAt> for ChargeOut {
    fn from(z: ChargeAt) -> Self {
        ChargeOut { t: z.t, re: z.re, im_coeff: z.im_coeff }
    }
}

impl fmt::Display for ChargeOut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})*i", fmt_rat(&self.re), fmt_rat(&self.im_coeff), fmt_rat(&self.t))
    }
}

/// Lattice data of a class on either side of `forg` and `inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Descent {
    Mukai {
        mukai: MukaiProfile,
        self_pairing: i64,
        forg: KuClass,
        euler_forg: i64,
        inf_forg: MukaiProfile,
        charge: ChargeOut,
    },
    Ku {
        ku: KuClass,
        euler: i64,
        inf: MukaiProfile,
        inf_reference: ReferenceClass,
        forg_inf: KuClass,
        charge: ChargeOut,
    },
}

impl Descent {
    pub fn of_mukai(fam: &ChargeFamily, w: &MukaiProfile, t: &Rat) -> Result<Self> {
        check_t(t)?;
        let x = forg(w);
        Ok(Descent::Mukai {
            mukai: *w,
            self_pairing: w.self_pairing(),
            forg: x,
            euler_forg: euler_ku(&x, &x),
            inf_forg: inf(&x),
            charge: fam.charge(w).at(t).into(),
        })
    }

    pub fn of_ku(fam: &ChargeFamily, x: &KuClass, t: &Rat) -> Result<Self> {
        Ok(Descent::Ku {
            ku: *x,
            euler: euler_ku(x, x),
            inf: inf(x),
            inf_reference: inf_reference(x),
            forg_inf: forg(&inf(x)),
            charge: ku_charge(fam, x, t)?.into(),
        })
    }

    pub fn render_table(&self) -> String {
        match self {
            Descent::Mukai { mukai, self_pairing, forg, euler_forg, inf_forg, charge } => format!(
                "mukai         {mukai}\nself pairing  {self_pairing}\nforg          {forg}\n\
                 euler(forg)   {euler_forg}\ninf(forg)     {inf_forg}\ncharge        {charge}\n"
            ),
            Descent::Ku { ku, euler, inf, inf_reference, forg_inf, charge } => format!(
                "ku            {ku}\neuler         {euler}\ninf           {inf}\n\
                 inf class     {inf_reference}\nforg(inf)     {forg_inf}\ncharge        {charge}\n"
            ),
        }
    }
}

/// Integer 2x2 matrix acting on `(a, b)` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KuIsometry {
    pub m: [[i64; 2]; 2],
}

impl KuIsometry {
    pub fn apply(&self, x: &KuClass) -> KuClass {
        KuClass::new(self.m[0][0] * x.a + self.m[0][1] * x.b, self.m[1][0] * x.a + self.m[1][1] * x.b)
    }

    /// Sends `κ1` to `±κ1` and `κ2` to `±κ2`.
    pub fn preserves_basis_lines(&self) -> bool {
        self.m[0][1] == 0 && self.m[1][0] == 0
    }

    pub fn is_isometry(&self) -> bool {
        let e = [KuClass::new(1, 0), KuClass::new(0, 1)];
        e.iter().all(|x| e.iter().all(|y| euler_ku(&self.apply(x), &self.apply(y)) == euler_ku(x, y)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryCensus {
    pub preserving: Vec<KuIsometry>,
    pub swapping: Vec<KuIsometry>,
}

impl IsometryCensus {
    pub fn count(&self) -> usize {
        self.preserving.len() + self.swapping.len()
    }
}

/// Every isometry of `(Z^2, -I2)`. Entries of an isometry of a definite
/// form with unit diagonal are bounded by 1, so the search over
/// `{-1, 0, 1}` is complete.
pub fn isometries() -> IsometryCensus {
    let mut preserving = Vec::new();
    let mut swapping = Vec::new();
    for code in 0..81 {
        let e = |i: u32| (code / 3i64.pow(i)) % 3 - 1;
        let iso = KuIsometry { m: [[e(0), e(1)], [e(2), e(3)]] };
        if !iso.is_isometry() {
            continue;
        }
        if iso.preserves_basis_lines() {
            preserving.push(iso);
        } else {
            swapping.push(iso);
        }
    }
    preserving.sort();
    swapping.sort();
    IsometryCensus { preserving, swapping }
}
