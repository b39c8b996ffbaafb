//! Brute-force cross-check of the destabilizer elimination against a direct
//! scan written from the explicit degree 10 charge.

use std::collections::BTreeSet;

use k3walls::charge::ChargeFamily;
use k3walls::destab::{eliminate, gushel_mukai_problems, DestabProblem, Elimination, SphericalForcing};
use k3walls::exactq::{int, rat, Rat};
use k3walls::mukai::{K3Context, MukaiProfile};
use rand::{Rng, SeedableRng};

const R: i64 = 8;
const D: i64 = 40;

/// `(re, im / sqrt(t))`.
fn charge(r: i64, d: i64, s: i64, t: &Rat) -> (Rat, Rat) {
    ((t - int(4)) * rat(r, 5) - rat(2 * d, 5) - int(s), rat(4 * r + d, 5))
}

fn excluded(d: i64, q: i64) -> bool {
    let direct = |d: i64, q: i64| (q == 0 && d != 0 && d.abs() <= 4) || (q == -2 && d == 0);
    if direct(d, q) {
        return true;
    }
    (-3i64..=3).any(|m| {
        (-3i64..=3).any(|n| n != 0 && direct(10 * m + n * d, 10 * m * m + 2 * m * n * d + n * n * q))
    })
}

/// Factors passing every constraint of `pr` except non-exclusion. With `t`
/// fixed only that parameter is tried; otherwise the phase-equality
/// parameter of each class is solved for and kept if it lies in `[1, 40]`.
fn scan(pr: &DestabProblem, t: Option<&Rat>) -> BTreeSet<(MukaiProfile, Option<Rat>)> {
    let tg = pr.target;
    let mut out = BTreeSet::new();
    for r in -R..=R {
        if pr.rank_min.is_some_and(|m| r < m) || pr.rank_max.is_some_and(|m| r > m) {
            continue;
        }
        for s in -R..=R {
            for d in -D..=D {
                let q = 2 * r * s - 2;
                if 10 * q > d * d {
                    continue;
                }
                if pr.spherical == SphericalForcing::BothFactors {
                    // Δ_T = (d_T / 10) H
                    let pairing = rat(tg.d * d, 10) - int(tg.r * s) - int(r * tg.s);
                    if pairing != int(-1) {
                        continue;
                    }
                }
                let phase = |t: &Rat| {
                    let (rw, iw) = charge(r, d, s, t);
                    let (rt, it) = charge(tg.r, tg.d, tg.s, t);
                    (rw * &it - rt * &iw, iw, it)
                };
                let (_, iw, it) = phase(&int(1));
                if !(iw > int(0) && iw < it) {
                    continue;
                }
                let w = MukaiProfile::new(r, d, q, s);
                match t {
                    Some(t) => {
                        if phase(t).0 == int(0) {
                            out.insert((w, Some(t.clone())));
                        }
                    }
                    None => {
                        let a = phase(&int(0)).0;
                        let b = phase(&int(1)).0 - &a;
                        if b == int(0) {
                            if a == int(0) {
                                out.insert((w, None));
                            }
                            continue;
                        }
                        let t0 = -a / b;
                        if t0 >= int(1) && t0 <= int(40) {
                            out.insert((w, Some(t0)));
                        }
                    }
                }
            }
        }
    }
    out
}

fn engine_survivors(pr: &DestabProblem) -> BTreeSet<(MukaiProfile, Option<Rat>)> {
    let rep = eliminate(&K3Context::gushel_mukai(), &ChargeFamily::gushel_mukai(), pr).unwrap();
    rep.cases
        .iter()
        .flat_map(|c| match &c.reason {
            Elimination::ExclusionRule(l) | Elimination::Survives(l) => l.clone(),
            _ => Vec::new(),
        })
        .filter(|s| s.t.value().is_none_or(|t| *t <= int(40)))
        .map(|s| (s.w, s.t.value().cloned()))
        .collect()
}

fn constrained() -> Vec<DestabProblem> {
    gushel_mukai_problems().into_iter().filter(|p| p.spherical != SphericalForcing::None).collect()
}

#[test]
fn no_realizable_factor_at_random_parameters() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x6b33);
    for _ in 0..25 {
        let t = rat(rng.gen_range(100..=4000), 100);
        for pr in constrained() {
            for (w, _) in scan(&pr, Some(&t)) {
                assert!(excluded(w.d, w.q), "{} destabilized by {w} at t = {t}", pr.name);
            }
        }
    }
}

#[test]
fn survivors_match_scan() {
    for pr in constrained() {
        let want = scan(&pr, None);
        let got = engine_survivors(&pr);
        assert_eq!(got, want, "{}", pr.name);
        assert!(want.iter().all(|(w, _)| excluded(w.d, w.q)), "{}", pr.name);
    }
}

#[test]
fn survivors_are_known() {
    let pr = &gushel_mukai_problems()[1];
    let got = engine_survivors(pr);
    assert!(got.contains(&(MukaiProfile::new(1, -3, 0, 1), Some(rat(7, 2)))));
    assert!(got.contains(&(MukaiProfile::new(1, -2, 0, 1), Some(int(11)))));
}
