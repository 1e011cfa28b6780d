//! Central charges valued in polynomials of a scaling parameter `m`, and
//! their phase ordering for `m >> 0`.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::charges::ComplexQ;
use crate::error::{Error, Result};
use crate::numlattice::{check_alpha, twist, NumClass, VarietyModel};
use crate::rational::{qi, Q};

/// `sum_k coeffs[k] m^k` for `k = 0..=3`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyCharge {
    pub coeffs: [ComplexQ; 4],
}

impl PolyCharge {
    pub fn new(coeffs: [ComplexQ; 4]) -> Self {
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ComplexQ::is_zero)
    }

    /// Value at `m`, by Horner.
    pub fn eval(&self, m: &Q) -> ComplexQ {
        self.coeffs.iter().rev().fold(ComplexQ::zero(), |acc, c| {
            ComplexQ::new(&acc.re * m + &c.re, &acc.im * m + &c.im)
        })
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.clone().map(|c| -&c))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.clone().map(|c| c.conj()))
    }
}

fn cq(re: Q, im: Q) -> ComplexQ {
    ComplexQ::new(re, im)
}

struct Scaled {
    d3: Q,
    d2: Q,
    c: Q,
    r: Q,
}

/// Twisted class with the pairings against `omega` folded in.
fn scaled(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<Scaled> {
    check_alpha(alpha)?;
    let w = twist(v, beta);
    let d = model.degree();
    let a2 = alpha * alpha;
    Ok(Scaled {
        d3: &d * &w.d3,
        d2: alpha * &d * &w.d2,
        c: &a2 * &d * &w.c,
        r: a2 * alpha * d * &w.r,
    })
}

/// `Z_p = -ch^B_3 + m i omega ch^B_2 + m^2 (omega^2/2 ch^B_1 - i omega^3/6 ch^B_0)`.
pub fn zp(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<PolyCharge> {
    let s = scaled(v, alpha, beta, model)?;
    Ok(PolyCharge::new([
        cq(-s.d3, Q::zero()),
        cq(Q::zero(), s.d2),
        cq(s.c / qi(2), -s.r / qi(6)),
        ComplexQ::zero(),
    ]))
}

/// `Z_B = -ch^B_3 + m^2 (omega^2/2 ch^B_1 + i (omega ch^B_2 - omega^3/6 ch^B_0))`.
pub fn zb_poly(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<PolyCharge> {
    let s = scaled(v, alpha, beta, model)?;
    Ok(PolyCharge::new([
        cq(-s.d3, Q::zero()),
        ComplexQ::zero(),
        cq(s.c / qi(2), s.d2 - s.r / qi(6)),
        ComplexQ::zero(),
    ]))
}

/// `Z_{m omega, B}` as a polynomial in `m`.
pub fn z_inf(v: &NumClass, alpha: &Q, beta: &Q, model: &VarietyModel) -> Result<PolyCharge> {
    let s = scaled(v, alpha, beta, model)?;
    Ok(PolyCharge::new([
        cq(-s.d3, Q::zero()),
        cq(Q::zero(), s.d2),
        cq(s.c / qi(2), Q::zero()),
        cq(Q::zero(), -s.r / qi(6)),
    ]))
}

/// Coefficients of `conj(p(m)) q(m)` split into real and imaginary parts.
fn cross_products(p: &PolyCharge, q: &PolyCharge) -> ([Q; 7], [Q; 7]) {
    let mut re: [Q; 7] = Default::default();
    let mut im: [Q; 7] = Default::default();
    for (i, a) in p.coeffs.iter().enumerate() {
        for (j, b) in q.coeffs.iter().enumerate() {
            re[i + j] += &a.re * &b.re + &a.im * &b.im;
            im[i + j] += &a.re * &b.im - &a.im * &b.re;
        }
    }
    (re, im)
}

fn leading(coeffs: &[Q]) -> Option<&Q> {
    coeffs.iter().rev().find(|c| !c.is_zero())
}

/// Compare the phases of `p(m)` and `q(m)` for `m >> 0`.
///
/// `Greater` means `p` has the larger phase. The test is the sign of the
/// leading coefficient of `Im(conj(p) q)`, which is only meaningful while
/// the two phases stay less than 1 apart; antiparallel rays are rejected.
pub fn compare_limit_phase(p: &PolyCharge, q: &PolyCharge) -> Result<Ordering> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::DegenerateCharge);
    }
    let (re, im) = cross_products(p, q);
    match leading(&im) {
        Some(lead) => Ok(if *lead < Q::zero() { Ordering::Greater } else { Ordering::Less }),
        None => match leading(&re) {
            Some(lead) if *lead > Q::zero() => Ok(Ordering::Equal),
            _ => Err(Error::PhaseGapViolation),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charges::z;
    use crate::numlattice::{dualize, line_bundle_int};
    use crate::rational::q;

    fn p3() -> VarietyModel {
        VarietyModel::p3()
    }

    fn zc() -> ComplexQ {
        ComplexQ::zero()
    }

    #[test]
    fn zp_examples() {
        let zero = qi(0);
        let one = qi(1);
        let shifted_o = line_bundle_int(0).shift(1);
        let got = zp(&shifted_o, &one, &zero, &p3()).unwrap();
        assert_eq!(got, PolyCharge::new([zc(), zc(), cq(qi(0), q(1, 6)), zc()]));

        let point = NumClass::new(qi(0), qi(0), qi(0), qi(1));
        let got = zp(&point, &one, &zero, &p3()).unwrap();
        assert_eq!(got, PolyCharge::new([cq(qi(-1), qi(0)), zc(), zc(), zc()]));

        let got = zp(&line_bundle_int(1), &one, &zero, &p3()).unwrap();
        assert_eq!(
            got,
            PolyCharge::new([
                cq(q(-1, 6), qi(0)),
                cq(qi(0), q(1, 2)),
                cq(q(1, 2), q(-1, 6)),
                zc()
            ])
        );
    }

    #[test]
    fn zb_examples() {
        let zero = qi(0);
        let one = qi(1);
        let got = zb_poly(&line_bundle_int(1), &one, &zero, &p3()).unwrap();
        assert_eq!(got, PolyCharge::new([cq(q(-1, 6), qi(0)), zc(), cq(q(1, 2), q(1, 3)), zc()]));
        let point = NumClass::new(qi(0), qi(0), qi(0), qi(1));
        let got = zb_poly(&point, &one, &zero, &p3()).unwrap();
        assert_eq!(got, PolyCharge::new([cq(qi(-1), qi(0)), zc(), zc(), zc()]));
    }

    #[test]
    fn zb_quadratic_slope_is_twice_nu() {
        use crate::charges::nu;
        let v = NumClass::new(qi(2), qi(3), q(1, 4), q(-1, 3));
        for (a, b) in [(q(1, 1), q(0, 1)), (q(3, 2), q(1, 3)), (q(1, 5), q(-2, 1))] {
            let poly = zb_poly(&v, &a, &b, &p3()).unwrap();
            let m2 = &poly.coeffs[2];
            let n = nu(&v, &a, &b, &p3()).unwrap();
            assert_eq!(&m2.im / &m2.re, n.finite().unwrap() * qi(2));
        }
    }

    #[test]
    fn z_inf_examples() {
        let v = NumClass::new(qi(2), qi(1), q(-1, 2), qi(0));
        let (alpha, beta, m0) = (qi(1), q(1, 2), qi(7));
        let poly = z_inf(&v, &alpha, &beta, &p3()).unwrap();
        assert_eq!(poly.eval(&m0), z(&v, &(&m0 * &alpha), &beta, &p3()).unwrap());

        let got = z_inf(&line_bundle_int(0), &qi(1), &qi(0), &p3()).unwrap();
        assert_eq!(got, PolyCharge::new([zc(), zc(), zc(), cq(qi(0), q(-1, 6))]));
        let curve = NumClass::new(qi(0), qi(0), qi(1), qi(0));
        let got = z_inf(&curve, &qi(1), &qi(0), &p3()).unwrap();
        assert_eq!(got, PolyCharge::new([zc(), cq(qi(0), qi(1)), zc(), zc()]));
    }

    #[test]
    fn phase_examples() {
        let zero = qi(0);
        let one = qi(1);
        let p = z_inf(&line_bundle_int(1).shift(1), &one, &zero, &p3()).unwrap();
        let q_ = z_inf(&line_bundle_int(0).shift(1), &one, &zero, &p3()).unwrap();
        assert_eq!(compare_limit_phase(&p, &q_).unwrap(), Ordering::Greater);
        assert_eq!(compare_limit_phase(&q_, &p).unwrap(), Ordering::Less);
        assert_eq!(compare_limit_phase(&p, &p).unwrap(), Ordering::Equal);

        let o = z_inf(&line_bundle_int(0), &one, &zero, &p3()).unwrap();
        assert_eq!(compare_limit_phase(&o, &o.neg()).unwrap_err(), Error::PhaseGapViolation);
        assert_eq!(
            compare_limit_phase(&o, &PolyCharge::default()).unwrap_err(),
            Error::DegenerateCharge
        );
    }

    #[test]
    fn positive_multiples_compare_equal() {
        let p = zp(&line_bundle_int(2), &q(2, 3), &q(1, 4), &p3()).unwrap();
        let mut scaled = p.clone();
        for c in scaled.coeffs.iter_mut() {
            *c = c.scale(&qi(5));
        }
        assert_eq!(compare_limit_phase(&p, &scaled).unwrap(), Ordering::Equal);
    }

    #[test]
    fn duality_conjugates_zp() {
        let v = NumClass::new(qi(3), qi(-2), q(5, 6), q(1, 7));
        let (a, b) = (q(4, 3), q(2, 5));
        let lhs = zp(&dualize(&v), &a, &-b.clone(), &p3()).unwrap();
        let rhs = zp(&v, &a, &b, &p3()).unwrap().conj();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_shape() {
        let poly = z_inf(&line_bundle_int(0), &qi(1), &qi(0), &p3()).unwrap();
        let s = serde_json::to_string(&poly).unwrap();
        assert!(s.starts_with(r#"{"coeffs":[{"re":"0","im":"0"}"#));
        let back: PolyCharge = serde_json::from_str(&s).unwrap();
        assert_eq!(back, poly);
        assert!(serde_json::from_str::<PolyCharge>(r#"{"coeffs":[]}"#).is_err());
    }
}
