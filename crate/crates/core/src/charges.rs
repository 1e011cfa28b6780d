//! Central charges and slope functions.
//!
//! All charges use the twisted class `w = twist(v, beta)` and `omega = alpha H`.
//! Quantities that only depend on `alpha^2` also come in a `_t` form taking
//! `t = alpha^2` directly, so loci such as `alpha^2 = 3` stay rational.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numlattice::{check_alpha, check_t, twist, NumClass, VarietyModel};
use crate::rational::{format_q, parse_q, qi, serde_q, Q};

/// Exact complex rational.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexQ {
    #[serde(with = "serde_q")]
    pub re: Q,
    #[serde(with = "serde_q")]
    pub im: Q,
}

impl ComplexQ {
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }
}

impl fmt::Display for ComplexQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Add for &ComplexQ {
    type Output = ComplexQ;
    fn add(self, o: &ComplexQ) -> ComplexQ {
        ComplexQ::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ComplexQ {
    type Output = ComplexQ;
    fn sub(self, o: &ComplexQ) -> ComplexQ {
        ComplexQ::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &ComplexQ {
    type Output = ComplexQ;
    fn mul(self, o: &ComplexQ) -> ComplexQ {
        ComplexQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &ComplexQ {
    type Output = ComplexQ;
    fn neg(self) -> ComplexQ {
        ComplexQ::new(-&self.re, -&self.im)
    }
}

/// A slope: a finite rational or `+inf` (the torsion convention).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SlopeValue {
    Finite(Q),
    PositiveInfinity,
}

impl SlopeValue {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            SlopeValue::Finite(x) => Some(x),
            SlopeValue::PositiveInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SlopeValue::PositiveInfinity)
    }
}

impl Ord for SlopeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use SlopeValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), PositiveInfinity) => Ordering::Less,
            (PositiveInfinity, Finite(_)) => Ordering::Greater,
            (PositiveInfinity, PositiveInfinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for SlopeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeValue::Finite(x) => write!(f, "{x}"),
            SlopeValue::PositiveInfinity => write!(f, "+inf"),
        }
    }
}

impl Serialize for SlopeValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            SlopeValue::Finite(x) => map.serialize_entry("finite", &format_q(x))?,
            SlopeValue::PositiveInfinity => map.serialize_entry("infinite", &true)?,
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SlopeValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            finite: Option<String>,
            infinite: Option<bool>,
        }
        match Raw::deserialize(d)? {
            Raw { finite: Some(s), infinite: None } => {
                parse_q(&s).map(SlopeValue::Finite).map_err(de::Error::custom)
            }
            Raw { finite: None, infinite: Some(true) } => Ok(SlopeValue::PositiveInfinity),
            _ => Err(de::Error::custom(
                r#"expected {"finite":"p/q"} or {"infinite":true}"#,
            )),
        }
    }
}

/// `Z_{omega,B} = (-ch^B_3 + omega^2/2 ch^B_1) + i (omega ch^B_2 - omega^3/6 ch^B_0)`.
pub fn z(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<ComplexQ> {
    check_alpha(alpha)?;
    let w = twist(v, beta);
    let d = model.degree();
    let a2 = alpha * alpha;
    let re = &d * (-&w.d3 + &a2 * &w.c / qi(2));
    let im = &d * (alpha * &w.d2 - &a2 * alpha * &w.r / qi(6));
    Ok(ComplexQ::new(re, im))
}

/// `Re Z` in terms of `t = alpha^2`.
pub fn re_z_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel) -> Result<Q> {
    check_t(t)?;
    let w = twist(v, beta);
    Ok(model.degree() * (-&w.d3 + t * &w.c / qi(2)))
}

/// `Im Z / alpha`, a function of `t = alpha^2`; it vanishes exactly when `Im Z` does.
pub fn im_z_over_alpha_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel) -> Result<Q> {
    check_t(t)?;
    let w = twist(v, beta);
    Ok(model.degree() * (&w.d2 - t * &w.r / qi(6)))
}

/// Support charge: `omega^2/2 ch^B_1 + i Im Z`.
pub fn z_bar(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<ComplexQ> {
    let full = z(v, alpha, beta, model)?;
    let w = twist(v, beta);
    let re = alpha * alpha * model.degree() * &w.c / qi(2);
    Ok(ComplexQ::new(re, full.im))
}

/// `Z^{s,t} = (-ch_3 + s ch_1) + i (ch_2 - t rk)`, defined for models with `d = 1`.
pub fn z_st(v: &NumClass, s: &Q, t: &Q, model: &VarietyModel) -> Result<ComplexQ> {
    if model.d != 1 {
        return Err(Error::UnsupportedModel {
            model: model.name.clone(),
            detail: "Z^{s,t} is only defined when H^3 = 1".into(),
        });
    }
    Ok(ComplexQ::new(-&v.d3 + s * &v.c, &v.d2 - t * &v.r))
}

/// Classical slope `omega^2 ch^B_1 / ch^B_0`, `+inf` on rank zero.
pub fn mu(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<SlopeValue> {
    check_alpha(alpha)?;
    mu_t(v, &(alpha * alpha), beta, model)
}

pub fn mu_t(v: &NumClass, t: &Q, beta: &Q, model: &VarietyModel) -> Result<SlopeValue> {
    check_t(t)?;
    if v.r.is_zero() {
        return Ok(SlopeValue::PositiveInfinity);
    }
    let w = twist(v, beta);
    Ok(SlopeValue::Finite(t * model.degree() * &w.c / &v.r))
}

/// Tilt slope `Im Z / omega^2 ch^B_1`, `+inf` when `ch^B_1 = 0`.
///
/// The model degree cancels between numerator and denominator.
pub fn nu(v: &NumClass, alpha: &Q, beta: &Q, _model: &VarietyModel) -> Result<SlopeValue> {
    check_alpha(alpha)?;
    let w = twist(v, beta);
    if w.c.is_zero() {
        return Ok(SlopeValue::PositiveInfinity);
    }
    let a2 = alpha * alpha;
    let num = alpha * &w.d2 - &a2 * alpha * &w.r / qi(6);
    Ok(SlopeValue::Finite(num / (a2 * &w.c)))
}

/// Sign of `nu` (as -1, 0, 1) without needing `alpha` itself; `None` when `nu = +inf`.
pub fn nu_sign_t(v: &NumClass, t: &Q, beta: &Q) -> Result<Option<Ordering>> {
    check_t(t)?;
    let w = twist(v, beta);
    if w.c.is_zero() {
        return Ok(None);
    }
    let num = &w.d2 - t * &w.r / qi(6);
    Ok(Some((num * &w.c).cmp(&Q::zero())))
}

/// Result of [`mu_hat`]: the slope plus a flag for positive-rank input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuHat {
    pub slope: SlopeValue,
    /// Set when the class has nonzero rank; the slope is meant for sheaves
    /// supported in dimension at most two.
    pub nonzero_rank_warning: bool,
}

/// `omega ch^B_2 / omega^2 ch^B_1`, `+inf` when `ch^B_1 = 0`.
pub fn mu_hat(v: &NumClass, alpha: &Q, beta: &Q, _model: &VarietyModel) -> Result<MuHat> {
    check_alpha(alpha)?;
    let w = twist(v, beta);
    let slope = if w.c.is_zero() {
        SlopeValue::PositiveInfinity
    } else {
        SlopeValue::Finite(&w.d2 / (alpha * &w.c))
    };
    Ok(MuHat { slope, nonzero_rank_warning: !v.r.is_zero() })
}

/// Smallest positive value of `omega^2 ch^B_1` over lattice classes.
///
/// With `beta = p/q` in lowest terms, `c - beta r` ranges over `(1/q) Z`.
pub fn minimal_ch1(alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<Q> {
    check_alpha(alpha)?;
    minimal_ch1_t(&(alpha * alpha), beta, model)
}

pub fn minimal_ch1_t(t: &Q, beta: &Q, model: &VarietyModel) -> Result<Q> {
    check_t(t)?;
    debug_assert!(beta.numer().gcd(beta.denom()) == 1.into());
    let denom = Q::from_integer(beta.denom().abs());
    Ok(t * model.degree() / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlattice::{dualize, line_bundle_int};
    use crate::rational::q;

    fn p3() -> VarietyModel {
        VarietyModel::p3()
    }

    fn nc(r: Q, c: Q, d2: Q, d3: Q) -> NumClass {
        NumClass::new(r, c, d2, d3)
    }

    fn cq(re: Q, im: Q) -> ComplexQ {
        ComplexQ::new(re, im)
    }

    #[test]
    fn central_charge_examples() {
        let zero = qi(0);
        let one = qi(1);
        assert_eq!(z(&line_bundle_int(1), &one, &zero, &p3()).unwrap(), cq(q(1, 3), q(1, 3)));
        assert_eq!(z(&line_bundle_int(0), &one, &zero, &p3()).unwrap(), cq(qi(0), q(-1, 6)));
        let point = nc(qi(0), qi(0), qi(0), qi(1));
        for (a, b) in [(q(1, 1), q(0, 1)), (q(7, 3), q(-5, 2))] {
            assert_eq!(z(&point, &a, &b, &p3()).unwrap(), cq(qi(-1), qi(0)));
        }
        assert_eq!(z(&point, &qi(-1), &zero, &p3()).unwrap_err().code(), "invalid-ample-class");
    }

    #[test]
    fn support_charge_examples() {
        let zero = qi(0);
        let one = qi(1);
        assert_eq!(z_bar(&line_bundle_int(1), &one, &zero, &p3()).unwrap(), cq(q(1, 2), q(1, 3)));
        assert_eq!(z_bar(&line_bundle_int(0), &one, &zero, &p3()).unwrap(), cq(qi(0), q(-1, 6)));
        let point = nc(qi(0), qi(0), qi(0), qi(1));
        assert_eq!(z_bar(&point, &one, &zero, &p3()).unwrap(), ComplexQ::zero());
    }

    #[test]
    fn z_st_examples() {
        let o1 = line_bundle_int(1);
        assert_eq!(z_st(&o1, &q(1, 6), &q(1, 2), &p3()).unwrap(), ComplexQ::zero());
        let point = nc(qi(0), qi(0), qi(0), qi(1));
        assert_eq!(z_st(&point, &q(3, 7), &q(2, 9), &p3()).unwrap(), cq(qi(-1), qi(0)));
        let t = q(5, 11);
        assert_eq!(z_st(&line_bundle_int(0), &qi(4), &t, &p3()).unwrap(), cq(qi(0), -t.clone()));
        let err = z_st(&o1, &q(1, 6), &q(1, 2), &VarietyModel::quadric()).unwrap_err();
        assert_eq!(err.code(), "unsupported-model");
    }

    #[test]
    fn mu_examples() {
        let zero = qi(0);
        let one = qi(1);
        assert_eq!(mu(&line_bundle_int(2), &one, &zero, &p3()).unwrap(), SlopeValue::Finite(qi(2)));
        let torsion = nc(qi(0), qi(2), qi(0), q(1, 3));
        assert!(mu(&torsion, &q(3, 2), &q(1, 5), &p3()).unwrap().is_infinite());
        assert_eq!(mu(&line_bundle_int(1), &one, &one, &p3()).unwrap(), SlopeValue::Finite(qi(0)));
    }

    #[test]
    fn nu_examples() {
        let zero = qi(0);
        let one = qi(1);
        assert_eq!(nu(&line_bundle_int(1), &one, &zero, &p3()).unwrap(), SlopeValue::Finite(q(1, 3)));
        assert!(nu(&line_bundle_int(0), &q(4, 3), &zero, &p3()).unwrap().is_infinite());
        // nu(O(1)) = (3 - alpha^2) / (6 alpha) vanishes at alpha^2 = 3.
        assert_eq!(nu_sign_t(&line_bundle_int(1), &qi(3), &zero).unwrap(), Some(Ordering::Equal));
        assert_eq!(nu_sign_t(&line_bundle_int(1), &qi(2), &zero).unwrap(), Some(Ordering::Greater));
        assert_eq!(nu_sign_t(&line_bundle_int(1), &qi(4), &zero).unwrap(), Some(Ordering::Less));
        let a = q(3, 2);
        assert_eq!(
            nu(&line_bundle_int(1), &a, &zero, &p3()).unwrap(),
            SlopeValue::Finite((qi(3) - &a * &a) / (qi(6) * &a))
        );
    }

    #[test]
    fn mu_hat_examples() {
        let zero = qi(0);
        let one = qi(1);
        let o_s = nc(qi(0), qi(2), qi(-2), q(4, 3));
        let got = mu_hat(&o_s, &one, &zero, &p3()).unwrap();
        assert_eq!(got.slope, SlopeValue::Finite(qi(-1)));
        assert!(!got.nonzero_rank_warning);
        let curve = nc(qi(0), qi(0), qi(1), qi(0));
        assert!(mu_hat(&curve, &q(2, 3), &q(1, 2), &p3()).unwrap().slope.is_infinite());
        let o_s1 = nc(qi(0), qi(2), qi(0), q(1, 3));
        assert_eq!(mu_hat(&o_s1, &one, &zero, &p3()).unwrap().slope, SlopeValue::Finite(qi(0)));
        assert!(mu_hat(&line_bundle_int(1), &one, &zero, &p3()).unwrap().nonzero_rank_warning);
    }

    #[test]
    fn minimal_ch1_examples() {
        assert_eq!(minimal_ch1(&qi(1), &qi(0), &p3()).unwrap(), qi(1));
        assert_eq!(minimal_ch1(&qi(1), &q(1, 2), &p3()).unwrap(), q(1, 2));
        assert_eq!(minimal_ch1(&qi(2), &q(1, 3), &VarietyModel::quadric()).unwrap(), q(8, 3));
        assert_eq!(minimal_ch1(&qi(1), &q(-2, 3), &p3()).unwrap(), q(1, 3));
    }

    #[test]
    fn minimal_ch1_matches_lattice_search() {
        let model = VarietyModel::quadric();
        for beta in [q(0, 1), q(1, 2), q(-2, 5), q(7, 3)] {
            let alpha = q(3, 2);
            let mut best: Option<Q> = None;
            for r in -12..=12 {
                for c in -40..=40 {
                    let x = &alpha * &alpha * model.degree() * (qi(c) - &beta * qi(r));
                    if x > qi(0) && best.as_ref().is_none_or(|b| &x < b) {
                        best = Some(x);
                    }
                }
            }
            assert_eq!(minimal_ch1(&alpha, &beta, &model).unwrap(), best.unwrap());
        }
    }

    #[test]
    fn nu_dual_antisymmetry_example() {
        let v = nc(qi(2), qi(1), q(-1, 2), q(1, 3));
        let a = q(5, 4);
        let b = q(1, 3);
        let lhs = nu(&dualize(&v), &a, &-b.clone(), &p3()).unwrap();
        let rhs = nu(&v, &a, &b, &p3()).unwrap();
        assert_eq!(lhs.finite().unwrap(), &-rhs.finite().unwrap().clone());
    }

    #[test]
    fn slope_json() {
        let s = serde_json::to_string(&SlopeValue::Finite(q(-3, 4))).unwrap();
        assert_eq!(s, r#"{"finite":"-3/4"}"#);
        assert_eq!(serde_json::to_string(&SlopeValue::PositiveInfinity).unwrap(), r#"{"infinite":true}"#);
        let back: SlopeValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back, SlopeValue::Finite(q(-3, 4)));
        assert!(serde_json::from_str::<SlopeValue>(r#"{"infinite":false}"#).is_err());
        let c = serde_json::to_string(&cq(q(1, 3), qi(0))).unwrap();
        assert_eq!(c, r#"{"re":"1/3","im":"0"}"#);
    }

    #[test]
    fn slope_order() {
        assert!(SlopeValue::PositiveInfinity > SlopeValue::Finite(qi(1_000_000)));
        assert!(SlopeValue::Finite(qi(-1)) < SlopeValue::Finite(qi(0)));
    }
}
