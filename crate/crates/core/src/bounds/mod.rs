//! Closed-form chain-count bounds and empirical growth-exponent fitting.
//!
//! Every bound is evaluated with its suppressed constant set to 1. Each
//! summand is reported as exact rational exponents of `n`, `t`, `r` and
//! `log2 n` next to its numeric value, so formulas can be compared
//! symbolically.

mod fit;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::geometry::Scalar;

pub use fit::{fit_growth_exponent, FitReport};
pub use verify::{
    most_frequent_dot, verify_family, ChainPolicy, Direction, Family, ModeVerdict, SweepRow,
    VerifyReport, VerifyRequest, CSV_HEADER, DEFAULT_SLACK,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundId {
    /// General k-chain upper bound in the plane.
    #[serde(rename = "thm-main")]
    ThmMain,
    /// No two points on a common line through the origin.
    #[serde(rename = "cor-starlike")]
    CorStarlike,
    /// At most `t` points on any line.
    #[serde(rename = "cor-lightlines")]
    CorLightlines,
    /// s-adaptable sets in the unit square.
    #[serde(rename = "cor-sadapt")]
    CorSadapt,
    /// `R^d` with at most `r` points per hyperplane, `t` per (d-2)-flat.
    #[serde(rename = "cor-hidim")]
    CorHidim,
    #[serde(rename = "hinge")]
    Hinge,
    #[serde(rename = "single-dot")]
    SingleDot,
    /// Lower bound realized by the staircase construction.
    #[serde(rename = "prop-lower")]
    PropLower,
    /// Distance-chain reference bound with a `u2(n)` slot.
    #[serde(rename = "fk-distance")]
    FkDistance,
}

impl BoundId {
    pub const ALL: [BoundId; 9] = [
        BoundId::ThmMain,
        BoundId::CorStarlike,
        BoundId::CorLightlines,
        BoundId::CorSadapt,
        BoundId::CorHidim,
        BoundId::Hinge,
        BoundId::SingleDot,
        BoundId::PropLower,
        BoundId::FkDistance,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundId::ThmMain => "thm-main",
            BoundId::CorStarlike => "cor-starlike",
            BoundId::CorLightlines => "cor-lightlines",
            BoundId::CorSadapt => "cor-sadapt",
            BoundId::CorHidim => "cor-hidim",
            BoundId::Hinge => "hinge",
            BoundId::SingleDot => "single-dot",
            BoundId::PropLower => "prop-lower",
            BoundId::FkDistance => "fk-distance",
        }
    }

    pub fn needs_t(&self) -> bool {
        matches!(self, BoundId::CorLightlines | BoundId::CorHidim)
    }

    pub fn needs_r(&self) -> bool {
        matches!(self, BoundId::CorHidim)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown bound id {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundParams {
    pub n: Option<f64>,
    pub k: Option<usize>,
    pub t: Option<f64>,
    pub r: Option<f64>,
    pub d: Option<usize>,
    pub s: Option<Scalar>,
    pub eps: Scalar,
    /// Exponent standing in for `u2(n)` in `fk-distance`.
    pub u2_exp: Scalar,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            n: None,
            k: None,
            t: None,
            r: None,
            d: None,
            s: None,
            eps: Scalar::ratio(1, 100).expect("nonzero"),
            u2_exp: Scalar::ratio(4, 3).expect("nonzero"),
        }
    }
}

impl BoundParams {
    pub fn nk(n: f64, k: usize) -> Self {
        BoundParams {
            n: Some(n),
            k: Some(k),
            ..Default::default()
        }
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_s(mut self, s: Scalar) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_eps(mut self, eps: Scalar) -> Self {
        self.eps = eps;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSpec {
    pub id: BoundId,
    pub params: BoundParams,
}

impl BoundSpec {
    pub fn new(id: BoundId, params: BoundParams) -> Self {
        BoundSpec { id, params }
    }
}

/// One summand `n^a t^b r^c (log2 n)^e`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub n_exp: Scalar,
    pub t_exp: Scalar,
    pub r_exp: Scalar,
    pub log_exp: Scalar,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub id: BoundId,
    /// `k mod 3` for the ids whose formula is split by it.
    pub k_class: Option<usize>,
    pub terms: Vec<Term>,
    pub max: f64,
    pub sum: f64,
}

impl BoundValue {
    /// The bound itself: the sum of its summands.
    pub fn value(&self) -> f64 {
        self.sum
    }

    /// Exponent of `n` for single-term bounds.
    pub fn n_exponent(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [only] => Some(&only.n_exp),
            _ => None,
        }
    }
}

fn q(num: i64, den: i64) -> Scalar {
    Scalar::ratio(num, den).expect("nonzero denominator")
}

#[derive(Default)]
struct Exps {
    n: Scalar,
    t: Scalar,
    r: Scalar,
    log: Scalar,
}

impl Exps {
    fn n(n: Scalar) -> Self {
        Exps {
            n,
            ..Default::default()
        }
    }
}

fn lightlines_exps(k: i64) -> Exps {
    match k % 3 {
        0 => Exps {
            log: q(2 * k - 6, 3),
            t: q(k - 3, 3),
            n: q(4 * k + 12, 9),
            ..Default::default()
        },
        1 => Exps {
            log: q(2 * k - 2, 3),
            t: q(k - 1, 3),
            n: q(4 * k + 8, 9),
            ..Default::default()
        },
        _ => Exps {
            log: q(2 * k + 2, 3),
            t: q(k + 1, 3),
            n: q(4 * k + 4, 9),
            ..Default::default()
        },
    }
}

fn hidim_exps(k: i64, d: i64, eps: &Scalar) -> Vec<Exps> {
    let den = 6 * d - 3;
    match k % 3 {
        0 => vec![
            Exps {
                n: q(k + 3, 3),
                r: q(k - 3, 3),
                t: q(2, 1),
                ..Default::default()
            },
            Exps {
                n: q((4 * d - 3) * (k - 1) + 18 * d - 8, den) + eps,
                r: q(k - 3, 3),
                t: q(2 * d - 2, 2 * d - 1),
                ..Default::default()
            },
        ],
        1 => vec![
            Exps {
                n: q(k + 2, 3),
                r: q(k - 1, 3),
                t: q(1, 1),
                ..Default::default()
            },
            Exps {
                n: q((4 * d - 3) * (k - 1) + 9 * d - 6, den) + eps,
                r: q(k - 1, 3),
                t: q(d - 1, 2 * d - 1),
                ..Default::default()
            },
        ],
        _ => vec![
            Exps {
                n: q(k + 1, 3),
                t: q(2 * k + 2, 3),
                ..Default::default()
            },
            Exps {
                n: q((4 * d - 3) * (k + 1), den) + eps,
                t: q((2 * d - 2) * (k + 1), den) + eps,
                ..Default::default()
            },
            Exps {
                n: q(k + 1, 3),
                r: q(k + 1, 3),
                ..Default::default()
            },
        ],
    }
}

fn need<T: Copy>(v: Option<T>, id: BoundId, name: &str) -> Result<T> {
    v.ok_or_else(|| invalid(format!("{id} requires parameter {name}")))
}

/// Evaluates a bound formula with constant 1. The `k mod 3` case is chosen
/// from `k`.
pub fn evaluate_bound(spec: &BoundSpec) -> Result<BoundValue> {
    let id = spec.id;
    let p = &spec.params;
    let n = need(p.n, id, "n")?;
    if !(n >= 1.0 && n.is_finite()) {
        return Err(invalid(format!("n must be >= 1, got {n}")));
    }
    if p.eps.is_negative() {
        return Err(invalid("eps must be >= 0"));
    }
    let k_needed = !matches!(id, BoundId::Hinge | BoundId::SingleDot);
    let k = match (k_needed, p.k) {
        (true, _) => need(p.k, id, "k")?,
        (false, Some(k)) => k,
        (false, None) if id == BoundId::Hinge => 2,
        (false, None) => 1,
    };
    if k < 1 {
        return Err(invalid("k must be >= 1"));
    }
    if id == BoundId::Hinge && k != 2 {
        return Err(invalid(format!("hinge bound is for k = 2, got k = {k}")));
    }
    if id == BoundId::SingleDot && k != 1 {
        return Err(invalid(format!(
            "single-dot bound is for k = 1, got k = {k}"
        )));
    }
    let ki = k as i64;
    let t = if id.needs_t() {
        need(p.t, id, "t")?
    } else {
        1.0
    };
    let r = if id.needs_r() {
        need(p.r, id, "r")?
    } else {
        1.0
    };
    if t <= 0.0 || r <= 0.0 {
        return Err(invalid("t and r must be positive"));
    }

    let (k_class, exps) = match id {
        BoundId::ThmMain => (None, vec![Exps::n(q(2 * (ki + 1), 3))]),
        BoundId::Hinge => (None, vec![Exps::n(q(2, 1))]),
        BoundId::SingleDot => (None, vec![Exps::n(q(4, 3))]),
        BoundId::PropLower => (None, vec![Exps::n(q((ki + 2) / 2, 1))]),
        BoundId::CorStarlike => (
            Some(k % 3),
            vec![Exps::n(match k % 3 {
                0 => q(ki + 3, 3),
                1 => q(ki + 3, 3) + &p.eps,
                _ => q(ki + 4, 3),
            })],
        ),
        BoundId::FkDistance => (
            Some(k % 3),
            vec![Exps::n(match k % 3 {
                0 => q(ki + 3, 3),
                1 => q(ki - 1, 3) + &p.eps + &p.u2_exp,
                _ => q(ki + 4, 3),
            })],
        ),
        BoundId::CorLightlines => (Some(k % 3), vec![lightlines_exps(ki)]),
        BoundId::CorSadapt => {
            let s =
                p.s.clone()
                    .ok_or_else(|| invalid("cor-sadapt requires parameter s"))?;
            if s.is_zero() || s.is_negative() {
                return Err(invalid("s must be positive"));
            }
            let mut e = lightlines_exps(ki);
            // at most ~n^(1/s) points on a line
            e.n = &e.n + &e.t.checked_div(&s)?;
            e.t = Scalar::zero();
            (Some(k % 3), vec![e])
        }
        BoundId::CorHidim => {
            let d = need(p.d, id, "d")?;
            if d < 2 {
                return Err(invalid("d must be >= 2"));
            }
            (Some(k % 3), hidim_exps(ki, d as i64, &p.eps))
        }
    };

    let log_n = n.log2();
    let terms: Vec<Term> = exps
        .into_iter()
        .map(|e| {
            let value = n.powf(e.n.to_f64())
                * t.powf(e.t.to_f64())
                * r.powf(e.r.to_f64())
                * if e.log.is_zero() {
                    1.0
                } else {
                    log_n.powf(e.log.to_f64())
                };
            Term {
                n_exp: e.n,
                t_exp: e.t,
                r_exp: e.r,
                log_exp: e.log,
                value,
            }
        })
        .collect();
    let max = terms
        .iter()
        .map(|t| t.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let sum = terms.iter().map(|t| t.value).sum();
    Ok(BoundValue {
        id,
        k_class,
        terms,
        max,
        sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(id: BoundId, p: BoundParams) -> BoundValue {
        evaluate_bound(&BoundSpec::new(id, p)).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
    }

    #[test]
    fn main_bound_examples() {
        let v = eval(BoundId::ThmMain, BoundParams::nk(100.0, 6));
        assert_eq!(v.n_exponent(), Some(&q(14, 3)));
        assert!(close(v.value(), 100f64.powf(14.0 / 3.0)));
        assert_eq!(
            eval(BoundId::ThmMain, BoundParams::nk(10.0, 1)).n_exponent(),
            Some(&q(4, 3))
        );
        assert_eq!(
            eval(BoundId::ThmMain, BoundParams::nk(10.0, 2)).n_exponent(),
            Some(&q(2, 1))
        );
    }

    #[test]
    fn prop_lower_examples() {
        let v = eval(BoundId::PropLower, BoundParams::nk(100.0, 6));
        assert_eq!(v.n_exponent(), Some(&q(4, 1)));
        assert!(close(v.value(), 1e8));
        assert_eq!(
            eval(BoundId::PropLower, BoundParams::nk(7.0, 3)).n_exponent(),
            Some(&q(2, 1))
        );
    }

    #[test]
    fn starlike_cases() {
        let eps = q(1, 100);
        let e = |k| {
            eval(BoundId::CorStarlike, BoundParams::nk(50.0, k)).terms[0]
                .n_exp
                .clone()
        };
        assert_eq!(e(3), q(2, 1));
        assert_eq!(e(4), q(7, 3) + &eps);
        assert_eq!(e(5), q(3, 1));
    }

    #[test]
    fn lightlines_cases() {
        let v = eval(BoundId::CorLightlines, BoundParams::nk(64.0, 4).with_t(8.0));
        let t = &v.terms[0];
        assert_eq!(
            (t.log_exp.clone(), t.t_exp.clone(), t.n_exp.clone()),
            (q(2, 1), q(1, 1), q(8, 3))
        );
        assert!(close(v.value(), 36.0 * 8.0 * 64f64.powf(8.0 / 3.0)));
        assert_eq!(v.k_class, Some(1));
    }

    #[test]
    fn sadapt_matches_lightlines_with_t_root_n() {
        for k in 1..=12 {
            for n in [16.0, 100.0, 1000.0] {
                let a = eval(BoundId::CorSadapt, BoundParams::nk(n, k).with_s(q(2, 1)));
                let b = eval(
                    BoundId::CorLightlines,
                    BoundParams::nk(n, k).with_t(f64::sqrt(n)),
                );
                assert!(close(a.value(), b.value()), "k {k} n {n}");
                let (ta, tb) = (&a.terms[0], &b.terms[0]);
                assert_eq!(
                    ta.n_exp,
                    &tb.n_exp + &tb.t_exp.checked_div(&q(2, 1)).unwrap()
                );
                assert_eq!(ta.log_exp, tb.log_exp);
            }
        }
    }

    #[test]
    fn hidim_reports_every_summand() {
        let p = BoundParams::nk(1000.0, 5)
            .with_t(5.0)
            .with_r(20.0)
            .with_d(3);
        let v = eval(BoundId::CorHidim, p);
        assert_eq!(v.terms.len(), 3);
        assert_eq!(v.terms[0].n_exp, q(2, 1));
        assert_eq!(v.terms[0].t_exp, q(4, 1));
        assert_eq!(v.terms[1].n_exp, q(54, 15) + &q(1, 100));
        assert_eq!(v.terms[1].t_exp, q(24, 15) + &q(1, 100));
        assert!(close(v.sum, v.terms.iter().map(|t| t.value).sum()));
        assert!(v.max <= v.sum);
        let v = eval(
            BoundId::CorHidim,
            BoundParams::nk(1000.0, 4)
                .with_t(5.0)
                .with_r(20.0)
                .with_d(3),
        );
        assert_eq!(v.terms.len(), 2);
        assert_eq!(v.terms[1].n_exp, q(9 * 3 + 27 - 6, 15) + &q(1, 100));
    }

    #[test]
    fn fk_defaults_u2_to_four_thirds() {
        let eps = q(1, 100);
        let v = eval(BoundId::FkDistance, BoundParams::nk(100.0, 4));
        assert_eq!(v.terms[0].n_exp, q(1, 1) + &eps + &q(4, 3));
        let s = eval(BoundId::CorStarlike, BoundParams::nk(100.0, 4));
        assert_eq!(v.terms[0].n_exp, s.terms[0].n_exp);
    }

    #[test]
    fn missing_parameters_error() {
        let e = |id, p| evaluate_bound(&BoundSpec::new(id, p)).is_err();
        assert!(e(BoundId::ThmMain, BoundParams::default()));
        assert!(e(BoundId::CorLightlines, BoundParams::nk(10.0, 3)));
        assert!(e(BoundId::CorSadapt, BoundParams::nk(10.0, 3)));
        assert!(e(
            BoundId::CorHidim,
            BoundParams::nk(10.0, 3).with_t(2.0).with_r(3.0)
        ));
        assert!(e(BoundId::Hinge, BoundParams::nk(10.0, 3)));
        assert!(e(
            BoundId::CorSadapt,
            BoundParams::nk(10.0, 3).with_s(Scalar::zero())
        ));
        assert!(e(
            BoundId::ThmMain,
            BoundParams::nk(10.0, 3).with_eps(q(-1, 2))
        ));
        let hinge = BoundParams {
            n: Some(10.0),
            ..Default::default()
        };
        assert!(!e(BoundId::Hinge, hinge));
    }

    #[test]
    fn ids_round_trip_through_strings() {
        for id in BoundId::ALL {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
        }
        assert!("thm".parse::<BoundId>().is_err());
    }
}
