//! Worked examples: sheaves pushed forward from a divisor, and ideal sheaves
//! of curves on hypersurfaces twisted by the hyperplane class.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charges::re_z_t;
use crate::error::{Error, Result};
use crate::inequalities::strong_bg_margin_t;
use crate::numlattice::{grr_pushforward, line_bundle, tensor_line, NumClass, VarietyModel};
use crate::rational::{qi, serde_q, Q};

/// A sheaf of rank `r` on a smooth `S` in `|mH|`, with `ch_2`-degree `s`,
/// normalised so that its pushforward has `nu = 0` at `B = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDivisorScenario")]
pub struct DivisorScenario {
    #[serde(with = "serde_q")]
    pub r: Q,
    pub m: u64,
    /// `alpha^2`; stored squared so that loci like `alpha^2 = 3` stay exact.
    #[serde(with = "serde_q")]
    pub alpha_sq: Q,
    #[serde(with = "serde_q")]
    pub s: Q,
    pub model: VarietyModel,
}

#[derive(Deserialize)]
struct RawDivisorScenario {
    #[serde(with = "serde_q")]
    r: Q,
    m: u64,
    #[serde(default, with = "opt_q")]
    alpha: Option<Q>,
    #[serde(default, with = "opt_q")]
    alpha_sq: Option<Q>,
    #[serde(with = "serde_q")]
    s: Q,
    model: VarietyModel,
}

mod opt_q {
    use serde::{Deserialize, Deserializer};

    use crate::rational::{parse_q, Q};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| parse_q(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

impl TryFrom<RawDivisorScenario> for DivisorScenario {
    type Error = Error;

    fn try_from(raw: RawDivisorScenario) -> Result<Self> {
        let alpha_sq = match (raw.alpha, raw.alpha_sq) {
            (Some(a), None) => {
                if !a.is_positive() {
                    return Err(Error::InvalidAmpleClass(a.to_string()));
                }
                &a * &a
            }
            (None, Some(t)) => t,
            _ => {
                return Err(Error::InvalidArgument(
                    "give exactly one of alpha and alpha_sq".into(),
                ))
            }
        };
        DivisorScenario::with_alpha_sq(raw.r, raw.m, alpha_sq, raw.s, raw.model)
    }
}

impl DivisorScenario {
    pub fn new(r: Q, m: u64, alpha: Q, s: Q, model: VarietyModel) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidAmpleClass(alpha.to_string()));
        }
        Self::with_alpha_sq(r, m, &alpha * &alpha, s, model)
    }

    pub fn with_alpha_sq(r: Q, m: u64, alpha_sq: Q, s: Q, model: VarietyModel) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidArgument(format!("rank on S must be positive, got {r}")));
        }
        if m == 0 {
            return Err(Error::InvalidDivisor("0".into()));
        }
        if !alpha_sq.is_positive() {
            return Err(Error::InvalidAmpleClass(format!("alpha^2 = {alpha_sq}")));
        }
        Ok(Self { r, m, alpha_sq, s, model })
    }

    fn m_q(&self) -> Q {
        Q::from_integer(self.m.into())
    }

    /// `lambda = r m^2 / 2`, the value giving `nu = 0`.
    pub fn lambda(&self) -> Q {
        let m = self.m_q();
        &self.r * &m * &m / qi(2)
    }

    /// `ch(i_* E)` at `B = 0`; its rank and `ch_2` vanish.
    pub fn pushforward(&self) -> Result<NumClass> {
        let v = grr_pushforward(&self.r, &self.lambda(), &self.s, &self.m_q(), &self.model, &Q::zero())?;
        assert!(v.r.is_zero() && v.d2.is_zero(), "nu-zero normalisation failed: {v}");
        Ok(v)
    }
}

/// `d r m^3 / 8`.
pub fn bog1_bound(sc: &DivisorScenario) -> Q {
    let m = sc.m_q();
    sc.model.degree() * &sc.r * &m * &m * &m / qi(8)
}

/// `r d m alpha^2 / 6`.
pub fn bog2_bound(sc: &DivisorScenario) -> Q {
    &sc.r * sc.model.degree() * sc.m_q() * &sc.alpha_sq / qi(6)
}

/// `(r d m / 24)(12 alpha^2 - m^2)`, a lower bound for `Re Z` of the
/// pushforward when only the first bound is assumed.
pub fn rez_lower_bound(sc: &DivisorScenario) -> Result<Q> {
    let b1 = bog1_bound(sc);
    if sc.s > b1 {
        return Err(Error::BoundViolated(format!("s = {} exceeds {b1}", sc.s)));
    }
    let m = sc.m_q();
    Ok(&sc.r * sc.model.degree() * &m / qi(24) * (qi(12) * &sc.alpha_sq - &m * &m))
}

/// `Re Z` of the pushforward at `B = 0`.
pub fn pushforward_re_z(sc: &DivisorScenario) -> Result<Q> {
    re_z_t(&sc.pushforward()?, &sc.alpha_sq, &Q::zero(), &sc.model)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActiveCase {
    Bog1,
    Bog2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop61Report {
    pub holds: bool,
    pub active_case: ActiveCase,
    #[serde(with = "serde_q")]
    pub margin: Q,
    pub class: NumClass,
}

/// Checks `ch_3 <= omega^2/18 ch_1` for the pushforward under both bounds.
/// The proof uses the first bound when `3 m^2 <= 4 alpha^2`.
pub fn prop61_verify(sc: &DivisorScenario) -> Result<Prop61Report> {
    let (b1, b2) = (bog1_bound(sc), bog2_bound(sc));
    if sc.s > b1 || sc.s > b2 {
        return Err(Error::HypothesisViolated(format!(
            "s = {} but the bounds are {b1} and {b2}",
            sc.s
        )));
    }
    let class = sc.pushforward()?;
    let margin = strong_bg_margin_t(&class, &sc.alpha_sq, &Q::zero(), &sc.model)?;
    let m = sc.m_q();
    let active_case = if qi(3) * &m * &m <= qi(4) * &sc.alpha_sq {
        ActiveCase::Bog1
    } else {
        ActiveCase::Bog2
    };
    Ok(Prop61Report { holds: !margin.is_negative(), active_case, margin, class })
}

/// A curve of degree `dcurve` and arithmetic genus `g` on a degree `big_d`
/// hypersurface in P^4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveScenario {
    pub big_d: u64,
    pub dcurve: u64,
    pub g: i64,
}

impl CurveScenario {
    pub fn new(big_d: u64, dcurve: u64, g: i64) -> Result<Self> {
        let sc = Self { big_d, dcurve, g };
        sc.check()?;
        Ok(sc)
    }

    fn check(&self) -> Result<()> {
        if self.dcurve == 0 || 2 * self.dcurve >= self.big_d {
            return Err(Error::ScenarioInvariant(format!(
                "need 1 <= d < D/2, got d = {}, D = {}",
                self.dcurve, self.big_d
            )));
        }
        Ok(())
    }

    pub fn model(&self) -> Result<VarietyModel> {
        VarietyModel::hypersurface(self.big_d)
    }

    fn dq(&self) -> (Q, Q) {
        (Q::from_integer(self.big_d.into()), Q::from_integer(self.dcurve.into()))
    }

    /// `ch_3(O_C) = (1 - g) - (d/2)(4 - D)` by Riemann-Roch.
    pub fn ch3_structure_sheaf(&self) -> Q {
        let (big_d, d) = self.dq();
        qi(1 - self.g) - d / qi(2) * (qi(4) - big_d)
    }

    /// `t_scale^2 = 3 - 6d/D`: with `omega = t_scale H` this puts `L (x) I_C` at `nu = 0`.
    pub fn t_scale_sq(&self) -> Q {
        let (big_d, d) = self.dq();
        qi(3) - qi(6) * d / big_d
    }
}

/// Class of `L (x) I_C`, in powers of `H` on the hypersurface.
pub fn curve_ideal_class(cs: &CurveScenario) -> Result<NumClass> {
    cs.check()?;
    let (big_d, d) = cs.dq();
    let o_c = NumClass::new(Q::zero(), Q::zero(), d / &big_d, cs.ch3_structure_sheaf() / big_d);
    Ok(tensor_line(&(&line_bundle(&Q::zero()) - &o_c), &qi(1)))
}

/// Strong-bound margin of `L (x) I_C` at `B = 0` and `alpha^2 = t_scale^2`.
pub fn curve_strong_margin(cs: &CurveScenario) -> Result<Q> {
    let v = curve_ideal_class(cs)?;
    strong_bg_margin_t(&v, &cs.t_scale_sq(), &Q::zero(), &cs.model()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CastelnuovoCase {
    #[serde(rename = "D")]
    pub big_d: u64,
    pub d: u64,
    /// `(d - 1)(d - 2)/2`
    #[serde(with = "serde_q")]
    pub castelnuovo_bound: Q,
    /// `dD/2 - 4d/3 + 1`
    #[serde(with = "serde_q")]
    pub bg_bound: Q,
    pub holds: bool,
    #[serde(with = "serde_q")]
    pub t_scale_sq: Q,
    /// Strong-bound margin of `L (x) I_C` for a curve of the Castelnuovo genus.
    #[serde(with = "serde_q")]
    pub margin: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CastelnuovoReport {
    pub all_hold: bool,
    pub cases: Vec<CastelnuovoCase>,
}

fn castelnuovo_case(big_d: u64, d: u64) -> Result<CastelnuovoCase> {
    let (dq, big_q) = (Q::from_integer(d.into()), Q::from_integer(big_d.into()));
    let castelnuovo_bound = (&dq - qi(1)) * (&dq - qi(2)) / qi(2);
    let bg_bound = &dq * &big_q / qi(2) - qi(4) * &dq / qi(3) + qi(1);
    let genus = castelnuovo_bound.to_integer();
    let g = i64::try_from(genus).map_err(|_| Error::InvalidArgument("genus overflow".into()))?;
    let cs = CurveScenario::new(big_d, d, g)?;
    Ok(CastelnuovoCase {
        big_d,
        d,
        holds: castelnuovo_bound <= bg_bound,
        t_scale_sq: cs.t_scale_sq(),
        margin: curve_strong_margin(&cs)?,
        castelnuovo_bound,
        bg_bound,
    })
}

/// Every `(D, d)` with `d_lo <= D <= d_hi` and `1 <= d < D/2`.
pub fn castelnuovo_verify(d_lo: u64, d_hi: u64) -> Result<CastelnuovoReport> {
    if d_lo == 0 || d_lo > d_hi {
        return Err(Error::InvalidArgument(format!("bad degree range {d_lo}..={d_hi}")));
    }
    let pairs: Vec<(u64, u64)> = (d_lo..=d_hi)
        .flat_map(|big_d| (1..).take_while(move |d| 2 * d < big_d).map(move |d| (big_d, d)))
        .collect();
    let cases = pairs
        .par_iter()
        .map(|&(big_d, d)| castelnuovo_case(big_d, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(CastelnuovoReport { all_hold: cases.iter().all(|c| c.holds), cases })
}
