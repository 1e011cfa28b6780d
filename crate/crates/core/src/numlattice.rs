//! Numerical Chern characters on a Picard-rank-one threefold.
//!
//! A class is stored through its coefficients against powers of the ample
//! generator `H`: `ch = (r, c H, d2 H^2, d3 H^3)`. Intersection numbers are
//! recovered with the model degree `d = H^3`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{qi, serde_q, Q};

/// A threefold with `Pic = Z[H]`, reduced to the numbers the numerics need.
///
/// `lam2` and `lam3` are the denominators allowed for the `H^2` and `H^3`
/// coefficients of lattice classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct VarietyModel {
    pub name: String,
    pub d: u64,
    pub lam2: u64,
    pub lam3: u64,
}

#[derive(Deserialize)]
struct RawModel {
    name: String,
    d: u64,
    lam2: u64,
    lam3: u64,
}

impl TryFrom<RawModel> for VarietyModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        VarietyModel::new(raw.name, raw.d, raw.lam2, raw.lam3)
    }
}

impl VarietyModel {
    pub fn new(name: impl Into<String>, d: u64, lam2: u64, lam3: u64) -> Result<Self> {
        let name = name.into();
        if d == 0 || lam2 == 0 || lam3 == 0 {
            return Err(Error::InvalidModel(format!(
                "{name}: d, lam2 and lam3 must be positive (got {d}, {lam2}, {lam3})"
            )));
        }
        let valid_name = !name.is_empty()
            && name
                .chars()
                .all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '-');
        if !valid_name {
            return Err(Error::InvalidModel(format!("bad identifier {name:?}")));
        }
        Ok(Self { name, d, lam2, lam3 })
    }

    pub fn p3() -> Self {
        Self { name: "p3".into(), d: 1, lam2: 2, lam3: 6 }
    }

    pub fn quadric() -> Self {
        Self { name: "quadric".into(), d: 2, lam2: 2, lam3: 6 }
    }

    /// Smooth hypersurface of degree `degree` in P^4.
    pub fn hypersurface(degree: u64) -> Result<Self> {
        Self::new(format!("hypersurface_{degree}"), degree, 2, 6)
    }

    /// `d` as a rational.
    pub fn degree(&self) -> Q {
        Q::from_integer(self.d.into())
    }
}

/// Numerical Chern character `(r, c, d2, d3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumClass {
    #[serde(with = "serde_q")]
    pub r: Q,
    #[serde(with = "serde_q")]
    pub c: Q,
    #[serde(with = "serde_q")]
    pub d2: Q,
    #[serde(with = "serde_q")]
    pub d3: Q,
}

impl NumClass {
    pub fn new(r: Q, c: Q, d2: Q, d3: Q) -> Self {
        Self { r, c, d2, d3 }
    }

    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero(), Q::zero(), Q::zero())
    }

    /// Shift by `[n]` at the level of classes: multiply by `(-1)^n`.
    pub fn shift(&self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            self.clone()
        } else {
            -self
        }
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.r, self.c, self.d2, self.d3)
    }
}

impl Add for &NumClass {
    type Output = NumClass;
    fn add(self, o: &NumClass) -> NumClass {
        NumClass::new(&self.r + &o.r, &self.c + &o.c, &self.d2 + &o.d2, &self.d3 + &o.d3)
    }
}

impl Sub for &NumClass {
    type Output = NumClass;
    fn sub(self, o: &NumClass) -> NumClass {
        NumClass::new(&self.r - &o.r, &self.c - &o.c, &self.d2 - &o.d2, &self.d3 - &o.d3)
    }
}

impl Neg for &NumClass {
    type Output = NumClass;
    fn neg(self) -> NumClass {
        NumClass::new(-&self.r, -&self.c, -&self.d2, -&self.d3)
    }
}

impl Mul<&Q> for &NumClass {
    type Output = NumClass;
    fn mul(self, k: &Q) -> NumClass {
        NumClass::new(&self.r * k, &self.c * k, &self.d2 * k, &self.d3 * k)
    }
}

/// Pairings of a class against powers of `omega = alpha H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degrees {
    /// `omega^3 ch_0`
    #[serde(with = "serde_q")]
    pub q0: Q,
    /// `omega^2 ch_1`
    #[serde(with = "serde_q")]
    pub q1: Q,
    /// `omega ch_2`
    #[serde(with = "serde_q")]
    pub q2: Q,
    /// `ch_3`
    #[serde(with = "serde_q")]
    pub q3: Q,
}

pub(crate) fn check_alpha(alpha: &Q) -> Result<()> {
    if alpha.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidAmpleClass(alpha.to_string()))
    }
}

pub(crate) fn check_t(t: &Q) -> Result<()> {
    if t.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidAmpleClass(format!("alpha^2 = {t}")))
    }
}

/// `ch(O(kH)) = e^{kH}`.
pub fn line_bundle(k: &Q) -> NumClass {
    let k2 = k * k;
    let k3 = &k2 * k;
    NumClass::new(Q::one(), k.clone(), k2 / qi(2), k3 / qi(6))
}

/// `ch^B = ch . e^{-B}` for `B = beta H`.
pub fn twist(v: &NumClass, beta: &Q) -> NumClass {
    let b2 = beta * beta;
    let b3 = &b2 * beta;
    NumClass::new(
        v.r.clone(),
        &v.c - beta * &v.r,
        &v.d2 - beta * &v.c + &b2 * &v.r / qi(2),
        &v.d3 - beta * &v.d2 + &b2 * &v.c / qi(2) - b3 * &v.r / qi(6),
    )
}

/// Class of the derived dual `E^vee[1]`: signs of `ch_0` and `ch_2` flip.
pub fn dualize(v: &NumClass) -> NumClass {
    NumClass::new(-&v.r, v.c.clone(), -&v.d2, v.d3.clone())
}

/// Class of `E (x) O(kH)`.
pub fn tensor_line(v: &NumClass, k: &Q) -> NumClass {
    twist(v, &-k)
}

pub fn degrees(v: &NumClass, model: &VarietyModel, alpha: &Q) -> Result<Degrees> {
    check_alpha(alpha)?;
    let d = model.degree();
    let a2 = alpha * alpha;
    let a3 = &a2 * alpha;
    Ok(Degrees {
        q0: a3 * &d * &v.r,
        q1: a2 * &d * &v.c,
        q2: alpha * &d * &v.d2,
        q3: d * &v.d3,
    })
}

pub fn is_lattice_point(v: &NumClass, model: &VarietyModel) -> bool {
    let lam2 = Q::from_integer(model.lam2.into());
    let lam3 = Q::from_integer(model.lam3.into());
    v.r.is_integer()
        && v.c.is_integer()
        && (lam2 * &v.d2).is_integer()
        && (lam3 * &v.d3).is_integer()
}

/// Pushforward `i_* E` along a smooth divisor `S` in `|mH|`.
///
/// `(r, lambda, s)` describe `ch^B(E)` on `S`: rank `r`, `i_* l = lambda H^2`
/// and `s` the degree of the top component. The untwisted formula is
/// evaluated first and the result is then twisted by `beta`.
pub fn grr_pushforward(
    r: &Q,
    lambda: &Q,
    s: &Q,
    m: &Q,
    model: &VarietyModel,
    beta: &Q,
) -> Result<NumClass> {
    if !m.is_positive() {
        return Err(Error::InvalidDivisor(m.to_string()));
    }
    let d = model.degree();
    let m2 = m * m;
    let m3 = &m2 * m;
    let top = r * &m3 * &d / qi(6) - m * lambda * &d / qi(2) + s;
    let class = NumClass::new(Q::zero(), r * m, -(r * &m2) / qi(2) + lambda, top / d);
    Ok(twist(&class, beta))
}

/// Convenience: `(1, 1, 1/2, 1/6)` and friends for integer `k`.
pub fn line_bundle_int(k: i64) -> NumClass {
    line_bundle(&qi(k))
}
