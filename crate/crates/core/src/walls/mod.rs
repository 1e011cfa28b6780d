//! Numerical walls `nu(v) = nu(w)` in the `(beta, t = alpha^2)` half-plane.
//!
//! Cross-multiplying the tilt slopes gives
//! `(ch^B_2(v) - t r_v/6) ch^B_1(w) = (ch^B_2(w) - t r_w/6) ch^B_1(v)`.
//! The cubic terms in `beta` cancel, leaving a conic that is linear in `t`:
//! `(u0 + u1 beta) t + (q0 + q1 beta + q2 beta^2) = 0`.

mod enumerate;
mod quad;
mod regions;
mod window;

pub use enumerate::{
    enumerate_pseudo_walls, enumerate_pseudo_walls_with_threads, ClassTriple, PseudoWall,
    WallEnumeration, DEFAULT_MAX_RANK,
};
pub use regions::{region_p3_intro, region_p3_intro_t, region_p3_lemma, region_p3_theorem,
    region_quadric, region_quadric_t};
pub use window::{wall_intersects_window, wall_window_witness, Window};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numlattice::NumClass;
use crate::rational::{qi, serde_q, Q};

/// The locus `(u0 + u1 beta) t + (q0 + q1 beta + q2 beta^2) = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WallConic {
    #[serde(with = "serde_q")]
    pub u0: Q,
    #[serde(with = "serde_q")]
    pub u1: Q,
    #[serde(with = "serde_q")]
    pub q0: Q,
    #[serde(with = "serde_q")]
    pub q1: Q,
    #[serde(with = "serde_q")]
    pub q2: Q,
}

impl WallConic {
    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_zero())
    }

    fn coefficients(&self) -> [&Q; 5] {
        [&self.u0, &self.u1, &self.q0, &self.q1, &self.q2]
    }

    /// Coefficient of `t` at `beta`.
    pub fn t_coefficient(&self, beta: &Q) -> Q {
        &self.u0 + &self.u1 * beta
    }

    /// `t`-free part at `beta`.
    pub fn constant_part(&self, beta: &Q) -> Q {
        (&self.q2 * beta + &self.q1) * beta + &self.q0
    }

    pub fn eval(&self, beta: &Q, t: &Q) -> Q {
        self.t_coefficient(beta) * t + self.constant_part(beta)
    }

    /// Representative of the proportionality class: the first nonzero
    /// coefficient is scaled to 1.
    pub fn normalized(&self) -> WallConic {
        let Some(lead) = self.coefficients().into_iter().find(|c| !c.is_zero()).cloned() else {
            return self.clone();
        };
        WallConic {
            u0: &self.u0 / &lead,
            u1: &self.u1 / &lead,
            q0: &self.q0 / &lead,
            q1: &self.q1 / &lead,
            q2: &self.q2 / &lead,
        }
    }

    pub fn is_proportional_to(&self, other: &WallConic) -> bool {
        self.normalized() == other.normalized()
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect()
}

/// `ch^B_1` and `ch^B_2` of a class as polynomials in `beta`.
fn twisted_in_beta(v: &NumClass) -> (Vec<Q>, Vec<Q>) {
    let c = vec![v.c.clone(), -&v.r];
    let d2 = vec![v.d2.clone(), -&v.c, &v.r / qi(2)];
    (c, d2)
}

/// The wall `nu(v) = nu(w)`; `ch_3` plays no role.
pub fn wall_curve(v: &NumClass, w: &NumClass) -> WallConic {
    let (cv, d2v) = twisted_in_beta(v);
    let (cw, d2w) = twisted_in_beta(w);
    let constant = poly_sub(&poly_mul(&d2v, &cw), &poly_mul(&d2w, &cv));
    assert!(constant[3].is_zero(), "beta^3 terms must cancel");
    let rv = [-&v.r / qi(6)];
    let rw = [-&w.r / qi(6)];
    let linear = poly_sub(&poly_mul(&rv, &cw), &poly_mul(&rw, &cv));
    WallConic {
        u0: linear[0].clone(),
        u1: linear[1].clone(),
        q0: constant[0].clone(),
        q1: constant[1].clone(),
        q2: constant[2].clone(),
    }
}

pub fn on_wall(v: &NumClass, w: &NumClass, beta: &Q, t: &Q) -> Result<bool> {
    if !t.is_positive() {
        return Err(Error::NonpositiveT(t.to_string()));
    }
    Ok(wall_curve(v, w).eval(beta, t).is_zero())
}

/// Outcome of solving a wall for `t` at fixed `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TSolution {
    /// The unique `t`; not filtered for positivity.
    Value(Q),
    /// No `t` solves the equation at this `beta`.
    NoSolution,
    /// Every `t` solves it.
    IdenticallySatisfied,
}

pub fn solve_t(wc: &WallConic, beta: &Q) -> TSolution {
    let u = wc.t_coefficient(beta);
    let k = wc.constant_part(beta);
    match (u.is_zero(), k.is_zero()) {
        (false, _) => TSolution::Value(-k / u),
        (true, false) => TSolution::NoSolution,
        (true, true) => TSolution::IdenticallySatisfied,
    }
}

/// `samples` evenly spaced `beta` values on `[beta_lo, beta_hi]` paired with
/// the solved `t`, keeping only points with `t > 0`.
pub fn sample_wall(wc: &WallConic, beta_lo: &Q, beta_hi: &Q, samples: usize) -> Vec<(Q, Q)> {
    let steps = samples.saturating_sub(1).max(1);
    let width = beta_hi - beta_lo;
    (0..samples)
        .filter_map(|i| {
            let beta = beta_lo + &width * Q::new((i as i64).into(), (steps as i64).into());
            match solve_t(wc, &beta) {
                TSolution::Value(t) if t.is_positive() => Some((beta, t)),
                _ => None,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charges::{nu, SlopeValue};
    use crate::numlattice::{line_bundle_int, VarietyModel};
    use crate::rational::q;

    /// `t = 3 beta (1 - beta)`, written as the closed-form oracle `t/6 - beta/2 + beta^2/2`.
    #[test]
    fn line_bundle_wall_closed_form() {
        let wc = wall_curve(&line_bundle_int(1), &line_bundle_int(0));
        let oracle = WallConic { u0: q(1, 6), u1: qi(0), q0: qi(0), q1: q(-1, 2), q2: q(1, 2) };
        assert!(wc.is_proportional_to(&oracle));
        for b in [q(1, 2), q(1, 3), q(-2, 7), qi(2)] {
            let expected = qi(3) * &b * (qi(1) - &b);
            assert_eq!(solve_t(&wc, &b), TSolution::Value(expected));
        }
    }

    #[test]
    fn self_wall_is_zero() {
        let v = NumClass::new(qi(2), qi(-1), q(3, 4), qi(5));
        let wc = wall_curve(&v, &v);
        assert!(wc.is_zero());
        assert_eq!(solve_t(&wc, &q(1, 3)), TSolution::IdenticallySatisfied);
        assert!(on_wall(&v, &v, &q(-7, 3), &q(1, 9)).unwrap());
    }

    #[test]
    fn antisymmetry() {
        let v = NumClass::new(qi(1), qi(0), qi(-1), qi(0));
        let w = NumClass::new(qi(0), qi(0), qi(1), qi(0));
        let a = wall_curve(&v, &w);
        let b = wall_curve(&w, &v);
        assert_eq!(a.u0, -b.u0.clone());
        assert_eq!(a.q2, -b.q2.clone());
        assert!(a.is_proportional_to(&b));
    }

    #[test]
    fn wall_against_curve_class() {
        // v = (1, 0, -1), w = (0, 0, 1): ch^B_1(w) = 0 so the t coefficient vanishes,
        // and the locus is beta = 0 (where ch^B_1(v) vanishes as well).
        let v = NumClass::new(qi(1), qi(0), qi(-1), qi(0));
        let w = NumClass::new(qi(0), qi(0), qi(1), qi(0));
        let wc = wall_curve(&v, &w);
        assert_eq!((wc.u0.clone(), wc.u1.clone()), (qi(0), qi(0)));
        assert_eq!(solve_t(&wc, &qi(0)), TSolution::IdenticallySatisfied);
        assert_eq!(solve_t(&wc, &qi(1)), TSolution::NoSolution);
        assert!(on_wall(&v, &w, &qi(0), &qi(5)).unwrap());
    }

    #[test]
    fn on_wall_examples() {
        let (o1, o) = (line_bundle_int(1), line_bundle_int(0));
        assert!(on_wall(&o1, &o, &q(1, 2), &q(3, 4)).unwrap());
        assert!(!on_wall(&o1, &o, &q(1, 2), &qi(1)).unwrap());
        assert_eq!(on_wall(&o1, &o, &q(1, 2), &qi(0)).unwrap_err().code(), "nonpositive-t");
    }

    #[test]
    fn solve_t_examples() {
        let wc = wall_curve(&line_bundle_int(1), &line_bundle_int(0));
        assert_eq!(solve_t(&wc, &q(1, 2)), TSolution::Value(q(3, 4)));
        assert_eq!(solve_t(&wc, &qi(0)), TSolution::Value(qi(0)));
        assert_eq!(solve_t(&WallConic::default(), &qi(0)), TSolution::IdenticallySatisfied);
    }

    #[test]
    fn agrees_with_nu_at_square_t() {
        let v = NumClass::new(qi(2), qi(3), q(1, 2), qi(0));
        let w = NumClass::new(qi(1), qi(1), q(-1, 2), qi(0));
        let wc = wall_curve(&v, &w);
        let p3 = VarietyModel::p3();
        for b in [q(-1, 2), q(1, 5), qi(-3)] {
            if let TSolution::Value(t) = solve_t(&wc, &b) {
                if let Some(a) = crate::rational::sqrt_exact(&t).filter(|a| a.is_positive()) {
                    let nv = nu(&v, &a, &b, &p3).unwrap();
                    let nw = nu(&w, &a, &b, &p3).unwrap();
                    assert_eq!(nv, nw);
                    assert!(matches!(nv, SlopeValue::Finite(_)));
                }
            }
        }
    }

    #[test]
    fn sampling_keeps_positive_t() {
        let wc = wall_curve(&line_bundle_int(1), &line_bundle_int(0));
        let pts = sample_wall(&wc, &qi(-1), &qi(2), 31);
        assert!(!pts.is_empty());
        for (b, t) in &pts {
            assert!(t.is_positive());
            assert!(wc.eval(b, t).is_zero());
            assert!(b > &qi(0) && b < &qi(1));
        }
    }
}
