//! Bogomolov-Gieseker type quantities: discriminants, the `f_{a,b}` family,
//! the conjectural `ch_3` bounds at `nu = 0`, and the support constant.
//!
//! Every quantity here except [`support_smin`] is a polynomial in
//! `t = alpha^2`, so each check has a `_t` form that the `alpha` form
//! delegates to.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numlattice::{check_alpha, check_t, twist, NumClass, VarietyModel};
use crate::rational::{qi, serde_q, Q};

/// `Delta = c^2 - 2 r d2`, the `H^2` coefficient of `ch_1^2 - 2 ch_0 ch_2`.
pub fn delta(v: &NumClass) -> Q {
    &v.c * &v.c - qi(2) * &v.r * &v.d2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantReport {
    #[serde(with = "serde_q")]
    pub delta: Q,
    #[serde(with = "serde_q")]
    pub delta_bar: Q,
    /// `omega^2 ch^B_1`
    #[serde(with = "serde_q")]
    pub d1: Q,
    /// equal to `delta_bar`
    #[serde(with = "serde_q")]
    pub d2h: Q,
    #[serde(with = "serde_q")]
    pub d3h: Q,
}

pub fn discriminants(
    v: &NumClass,
    alpha: &Q,
    beta: &Q,
    model: &VarietyModel,
) -> Result<DiscriminantReport> {
    check_alpha(alpha)?;
    discriminants_t(v, &(alpha * alpha), beta, model)
}

pub fn discriminants_t(
    v: &NumClass,
    t: &Q,
    beta: &Q,
    model: &VarietyModel,
) -> Result<DiscriminantReport> {
    check_t(t)?;
    let w = twist(v, beta);
    let d = model.degree();
    let t2d2 = t * t * &d * &d;
    let t3d3 = &t2d2 * t * &d;
    let delta_w = delta(&w);
    let delta_bar = &t2d2 * &delta_w;
    let cubic = qi(3) * &w.r * &w.r * &w.d3 - qi(3) * &w.r * &w.c * &w.d2 + &w.c * &w.c * &w.c;
    Ok(DiscriminantReport {
        delta: delta_w,
        d2h: delta_bar.clone(),
        delta_bar,
        d1: t * &d * &w.c,
        d3h: qi(2) * t3d3 * cubic,
    })
}

/// Whether `(a, b)` satisfies the positivity hypotheses of the general
/// inequality on a rank-one Neron-Severi lattice.
///
/// There `f_{a,b}(xH) = alpha^4 d^2 (a + b) x^2`, so the conditions read
/// `a >= -1`, `a + b >= 0` and `a + 1 + b >= 0`.
pub fn valid_ab(a: &Q, b: &Q) -> bool {
    let sum = a + b;
    *a >= qi(-1) && !sum.is_negative() && !(sum + qi(1)).is_negative()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(with = "serde_q")]
    pub margin: Q,
}

/// `omega^3 . omega Delta + f_{a,b}(ch^B_1) >= 0`.
pub fn check_bg_general(
    v: &NumClass,
    alpha: &Q,
    beta: &Q,
    a: &Q,
    b: &Q,
    model: &VarietyModel,
) -> Result<Verdict> {
    check_alpha(alpha)?;
    check_bg_general_t(v, &(alpha * alpha), beta, a, b, model)
}

pub fn check_bg_general_t(
    v: &NumClass,
    t: &Q,
    beta: &Q,
    a: &Q,
    b: &Q,
    model: &VarietyModel,
) -> Result<Verdict> {
    check_t(t)?;
    if !valid_ab(a, b) {
        return Err(Error::InvalidAbParameters { a: a.to_string(), b: b.to_string() });
    }
    let w = twist(v, beta);
    let d = model.degree();
    let margin = t * t * &d * &d * (delta(v) + (a + b) * &w.c * &w.c);
    Ok(Verdict { holds: !margin.is_negative(), margin })
}

/// Checks `nu = 0` exactly: `ch^B_1 != 0` and `ch^B_2 = t r / 6`.
fn require_nu_zero(w: &NumClass, t: &Q) -> Result<()> {
    if w.c.is_zero() {
        return Err(Error::NuNotZero("ch^B_1 = 0, so nu = +inf".into()));
    }
    let im = &w.d2 - t * &w.r / qi(6);
    if !im.is_zero() {
        return Err(Error::NuNotZero(format!("Im Z / alpha = {im}")));
    }
    Ok(())
}

/// `omega^2/18 ch^B_1 - ch^B_3`, asserted nonnegative for tilt-stable
/// classes with `nu = 0`.
pub fn strong_bg_margin(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<Q> {
    check_alpha(alpha)?;
    strong_bg_margin_t(v, &(alpha * alpha), beta, model)
}

pub fn strong_bg_margin_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel) -> Result<Q> {
    ch3_margin_t(v, t, beta, model, &qi(18))
}

/// `omega^2/2 ch^B_1 - ch^B_3`, asserted strictly positive at `nu = 0`.
pub fn con14_margin(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<Q> {
    check_alpha(alpha)?;
    con14_margin_t(v, &(alpha * alpha), beta, model)
}

pub fn con14_margin_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel) -> Result<Q> {
    ch3_margin_t(v, t, beta, model, &qi(2))
}

fn ch3_margin_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel, denom: &Q) -> Result<Q> {
    check_t(t)?;
    let w = twist(v, beta);
    require_nu_zero(&w, t)?;
    let d = model.degree();
    Ok(t * &d * &w.c / denom - d * &w.d3)
}

/// Non-strict verdict for the strong bound.
pub fn strong_bg_verdict_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel) -> Result<Verdict> {
    let margin = strong_bg_margin_t(v, t, beta, model)?;
    Ok(Verdict { holds: !margin.is_negative(), margin })
}

/// Strict verdict for the `Re Z > 0` bound.
pub fn con14_verdict_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel) -> Result<Verdict> {
    let margin = con14_margin_t(v, t, beta, model)?;
    Ok(Verdict { holds: margin.is_positive(), margin })
}

/// Both sides of the higher-discriminant identity at `Im Z = 0`:
/// `ch^B_3 - omega^2/18 ch^B_1` and
/// `(D3 - 2 D1 D2) / (6 (omega^3 rk)^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentitySides {
    #[serde(with = "serde_q")]
    pub lhs: Q,
    #[serde(with = "serde_q")]
    pub rhs: Q,
}

pub fn identity_7_4_sides_t(
    v: &NumClass,
    t: &Q,
    beta: &Q,
    model: &VarietyModel,
) -> Result<IdentitySides> {
    check_t(t)?;
    let w = twist(v, beta);
    if w.r.is_zero() {
        return Err(Error::ZeroRank);
    }
    let im = &w.d2 - t * &w.r / qi(6);
    if !im.is_zero() {
        return Err(Error::NuNotZero(format!("Im Z / alpha = {im}")));
    }
    let d = model.degree();
    let disc = discriminants_t(v, t, beta, model)?;
    // (omega^3 rk)^2 = t^3 d^2 r^2
    let rank_sq = t * t * t * &d * &d * &w.r * &w.r;
    let lhs = &d * &w.d3 - t * &d * &w.c / qi(18);
    let rhs = (disc.d3h - qi(2) * disc.d1 * disc.d2h) / (qi(6) * rank_sq);
    Ok(IdentitySides { lhs, rhs })
}

pub fn identity_7_4(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<bool> {
    check_alpha(alpha)?;
    identity_7_4_t(v, &(alpha * alpha), beta, model)
}

pub fn identity_7_4_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel) -> Result<bool> {
    let sides = identity_7_4_sides_t(v, t, beta, model)?;
    Ok(sides.lhs == sides.rhs)
}

/// `inf |x + i f(x)|` with `f(x) = -omega^3/6 + 2 x^2 / omega^3`.
///
/// `g = x^2 + f^2` has `g' = 2x (1/3 + 8 x^2 / omega^6)`, so the minimum
/// sits at `x = 0` and equals `omega^3 / 6`.
pub fn support_smin(alpha: &Q, model: &VarietyModel) -> Result<Q> {
    check_alpha(alpha)?;
    Ok(alpha * alpha * alpha * model.degree() / qi(6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlattice::{degrees, grr_pushforward, line_bundle_int, tensor_line};
    use crate::rational::q;

    fn p3() -> VarietyModel {
        VarietyModel::p3()
    }

    fn nc(r: i64, c: i64, d2: Q, d3: Q) -> NumClass {
        NumClass::new(qi(r), qi(c), d2, d3)
    }

    #[test]
    fn delta_examples() {
        for k in -3..=3 {
            assert_eq!(delta(&line_bundle_int(k)), qi(0));
        }
        assert_eq!(delta(&nc(2, 1, qi(0), qi(0))), qi(1));
        let v = nc(3, 2, qi(-1), qi(0));
        assert_eq!(delta(&twist(&v, &q(5, 7))), delta(&v));
    }

    #[test]
    fn discriminant_examples() {
        let one = qi(1);
        let zero = qi(0);
        let rep = discriminants(&line_bundle_int(1), &one, &zero, &p3()).unwrap();
        assert_eq!(
            (rep.delta, rep.delta_bar, rep.d1, rep.d2h, rep.d3h),
            (qi(0), qi(0), qi(1), qi(0), qi(0))
        );
        let rep = discriminants(&nc(2, 1, qi(0), qi(0)), &one, &zero, &p3()).unwrap();
        assert_eq!(
            (rep.delta, rep.delta_bar, rep.d1, rep.d2h, rep.d3h),
            (qi(1), qi(1), qi(1), qi(1), qi(2))
        );
        let rep = discriminants(&nc(0, 1, qi(0), qi(0)), &qi(2), &zero, &p3()).unwrap();
        assert_eq!((rep.delta, rep.delta_bar), (qi(1), qi(16)));
    }

    /// Recompute the discriminants from the raw pairings.
    #[test]
    fn discriminants_match_pairing_formulas() {
        let model = VarietyModel::quadric();
        let v = NumClass::new(qi(3), qi(-2), q(5, 6), q(7, 4));
        let (alpha, beta) = (q(3, 2), q(-1, 3));
        let g = degrees(&twist(&v, &beta), &model, &alpha).unwrap();
        let rep = discriminants(&v, &alpha, &beta, &model).unwrap();
        assert_eq!(rep.d1, g.q1);
        assert_eq!(rep.delta_bar, &g.q1 * &g.q1 - qi(2) * &g.q0 * &g.q2);
        let d3h = qi(2)
            * (qi(3) * &g.q0 * &g.q0 * &g.q3 - qi(3) * &g.q0 * &g.q1 * &g.q2
                + &g.q1 * &g.q1 * &g.q1);
        assert_eq!(rep.d3h, d3h);
    }

    #[test]
    fn ab_validity() {
        assert!(valid_ab(&qi(-1), &qi(1)));
        assert!(valid_ab(&qi(0), &qi(0)));
        assert!(!valid_ab(&qi(-2), &qi(5)));
        assert!(!valid_ab(&qi(0), &q(-1, 2)));
    }

    #[test]
    fn bg_general_examples() {
        let one = qi(1);
        let zero = qi(0);
        for (a, b) in [(qi(-1), qi(1)), (qi(0), qi(0)), (q(1, 2), qi(3))] {
            let got = check_bg_general(&line_bundle_int(2), &one, &zero, &a, &b, &p3()).unwrap();
            assert_eq!(got.margin, (&a + &b) * qi(4));
            assert!(got.holds);
        }
        let got = check_bg_general(&nc(2, 1, qi(0), qi(0)), &one, &zero, &zero, &zero, &p3())
            .unwrap();
        assert_eq!(got, Verdict { holds: true, margin: qi(1) });
        let got = check_bg_general(&nc(2, 1, qi(1), qi(0)), &one, &zero, &zero, &zero, &p3())
            .unwrap();
        assert_eq!(got, Verdict { holds: false, margin: qi(-3) });
        let err = check_bg_general(&nc(2, 1, qi(1), qi(0)), &one, &zero, &qi(-2), &qi(5), &p3())
            .unwrap_err();
        assert_eq!(err.code(), "invalid-ab-parameters");
    }

    #[test]
    fn strong_margin_examples() {
        let zero = qi(0);
        // Pushforward with r = 1, m = 2 on P3 at the Bog1 bound s = 1.
        let class = grr_pushforward(&qi(1), &qi(2), &qi(1), &qi(2), &p3(), &zero).unwrap();
        assert_eq!(class, nc(0, 2, qi(0), q(1, 3)));
        for t in [qi(1), qi(3), q(7, 2)] {
            let m = strong_bg_margin_t(&class, &t, &zero, &p3()).unwrap();
            assert_eq!(m, &t / qi(9) - q(1, 3));
        }
        assert_eq!(strong_bg_margin_t(&class, &qi(3), &zero, &p3()).unwrap(), qi(0));

        assert_eq!(strong_bg_margin_t(&line_bundle_int(1), &qi(3), &zero, &p3()).unwrap(), qi(0));
        let err = strong_bg_margin(&line_bundle_int(1), &qi(1), &zero, &p3()).unwrap_err();
        assert_eq!(err.code(), "nu-not-zero");
    }

    #[test]
    fn con14_examples() {
        let zero = qi(0);
        let got = con14_verdict_t(&line_bundle_int(1), &qi(3), &zero, &p3()).unwrap();
        assert_eq!(got, Verdict { holds: true, margin: q(4, 3) });
        // Skyscraper: Im Z = 0 but ch_1 = 0, so nu = +inf and the check is refused.
        let point = nc(0, 0, qi(0), qi(1));
        let err = con14_margin_t(&point, &qi(1), &zero, &p3()).unwrap_err();
        assert_eq!(err.code(), "nu-not-zero");
        let strong = strong_bg_margin_t(&line_bundle_int(1), &qi(3), &zero, &p3()).unwrap();
        let weak = con14_margin_t(&line_bundle_int(1), &qi(3), &zero, &p3()).unwrap();
        assert!(strong <= weak);
    }

    #[test]
    fn margins_invariant_under_combined_twist() {
        let v = line_bundle_int(1);
        let t = qi(3);
        let base = strong_bg_margin_t(&v, &t, &qi(0), &p3()).unwrap();
        for k in -3..=3 {
            let moved = tensor_line(&v, &qi(k));
            let b = qi(k);
            assert_eq!(strong_bg_margin_t(&moved, &t, &b, &p3()).unwrap(), base);
            assert_eq!(
                con14_margin_t(&moved, &t, &b, &p3()).unwrap(),
                con14_margin_t(&v, &t, &qi(0), &p3()).unwrap()
            );
        }
    }

    #[test]
    fn identity_examples() {
        let zero = qi(0);
        let sides = identity_7_4_sides_t(&line_bundle_int(1), &qi(3), &zero, &p3()).unwrap();
        assert_eq!(sides, IdentitySides { lhs: qi(0), rhs: qi(0) });
        let v = NumClass::new(qi(2), qi(3), q(1, 3), q(1, 2));
        assert!(identity_7_4(&v, &qi(1), &zero, &p3()).unwrap());
        let err = identity_7_4(&nc(0, 1, qi(0), qi(0)), &qi(1), &zero, &p3()).unwrap_err();
        assert_eq!(err, Error::ZeroRank);
        let err = identity_7_4(&line_bundle_int(1), &qi(1), &zero, &p3()).unwrap_err();
        assert_eq!(err.code(), "nu-not-zero");
    }

    #[test]
    fn smin_examples() {
        assert_eq!(support_smin(&qi(1), &p3()).unwrap(), q(1, 6));
        assert_eq!(support_smin(&qi(1), &VarietyModel::quadric()).unwrap(), q(1, 3));
        assert_eq!(support_smin(&qi(2), &p3()).unwrap(), q(4, 3));
    }

    /// Exact grid search of `x^2 + f(x)^2` on `[-2, 2]` with step `1/10^4`.
    #[test]
    fn smin_matches_grid_search() {
        let w3 = qi(1);
        let f = |x: &Q| -&w3 / qi(6) + qi(2) * x * x / &w3;
        let mut best: Option<Q> = None;
        for i in -20_000..=20_000 {
            let x = q(i, 10_000);
            let fx = f(&x);
            let g = &x * &x + &fx * &fx;
            if best.as_ref().is_none_or(|b| &g < b) {
                best = Some(g);
            }
        }
        let s = support_smin(&qi(1), &p3()).unwrap();
        assert_eq!(best.unwrap(), &s * &s);
    }
}
