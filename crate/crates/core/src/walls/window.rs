//! Exact intersection of a wall with a compact box in `(beta, t)`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::quad::Quad;
use super::WallConic;
use crate::error::{Error, Result};
use crate::rational::{qi, serde_q, Q};

/// `[beta_lo, beta_hi] x [t_lo, t_hi]` with `0 < t_lo`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWindow")]
pub struct Window {
    #[serde(with = "serde_q")]
    pub beta_lo: Q,
    #[serde(with = "serde_q")]
    pub beta_hi: Q,
    #[serde(with = "serde_q")]
    pub t_lo: Q,
    #[serde(with = "serde_q")]
    pub t_hi: Q,
}

#[derive(Deserialize)]
struct RawWindow {
    #[serde(with = "serde_q")]
    beta_lo: Q,
    #[serde(with = "serde_q")]
    beta_hi: Q,
    #[serde(with = "serde_q")]
    t_lo: Q,
    #[serde(with = "serde_q")]
    t_hi: Q,
}

impl TryFrom<RawWindow> for Window {
    type Error = Error;

    fn try_from(raw: RawWindow) -> Result<Self> {
        Window::new(raw.beta_lo, raw.beta_hi, raw.t_lo, raw.t_hi)
    }
}

impl Window {
    pub fn new(beta_lo: Q, beta_hi: Q, t_lo: Q, t_hi: Q) -> Result<Self> {
        if beta_lo > beta_hi {
            return Err(Error::EmptyWindow(format!("beta range [{beta_lo}, {beta_hi}]")));
        }
        if t_lo > t_hi {
            return Err(Error::EmptyWindow(format!("t range [{t_lo}, {t_hi}]")));
        }
        if !t_lo.is_positive() {
            return Err(Error::NonpositiveT(t_lo.to_string()));
        }
        Ok(Self { beta_lo, beta_hi, t_lo, t_hi })
    }

    pub fn contains(&self, beta: &Q, t: &Q) -> bool {
        beta >= &self.beta_lo && beta <= &self.beta_hi && t >= &self.t_lo && t <= &self.t_hi
    }

    /// Whether `self` lies inside `other`.
    pub fn is_within(&self, other: &Window) -> bool {
        self.beta_lo >= other.beta_lo
            && self.beta_hi <= other.beta_hi
            && self.t_lo >= other.t_lo
            && self.t_hi <= other.t_hi
    }
}

/// The conic restricted to `t = bound`, as a quadratic in `beta`.
fn at_t(wc: &WallConic, bound: &Q) -> Quad {
    Quad::new(&wc.q0 + &wc.u0 * bound, &wc.q1 + &wc.u1 * bound, wc.q2.clone())
}

/// For fixed `beta` the conic is affine in `t`, so it vanishes somewhere on
/// `[t_lo, t_hi]` iff `g_lo(beta) g_hi(beta) <= 0`. If neither `g_lo` nor
/// `g_hi` has a root on the beta range, that product has constant sign there.
pub fn wall_intersects_window(wc: &WallConic, win: &Window) -> Result<bool> {
    if wc.is_zero() {
        return Err(Error::DegenerateConic);
    }
    let (lo, hi) = (&win.beta_lo, &win.beta_hi);
    let g_lo = at_t(wc, &win.t_lo);
    let g_hi = at_t(wc, &win.t_hi);
    Ok(g_lo.has_root_in(lo, hi)
        || g_hi.has_root_in(lo, hi)
        || !(g_lo.eval(lo) * g_hi.eval(lo)).is_positive())
}

/// A rational point `(beta, t)` of the window on the wall, if one exists.
///
/// Whenever `t_lo < t_hi` and the wall meets the window a rational point
/// exists: the product `g_lo g_hi` then changes sign across every simple
/// root, and double roots are rational. With `t_lo = t_hi` the wall may
/// cross the segment only at irrational `beta`, and `None` is returned.
pub fn wall_window_witness(wc: &WallConic, win: &Window) -> Result<Option<(Q, Q)>> {
    if !wall_intersects_window(wc, win)? {
        return Ok(None);
    }
    let (lo, hi) = (&win.beta_lo, &win.beta_hi);
    let g_lo = at_t(wc, &win.t_lo);
    let g_hi = at_t(wc, &win.t_hi);
    let mut quads = vec![g_lo.clone()];
    if g_hi != g_lo {
        quads.push(g_hi.clone());
    }

    for beta in candidates(&quads, lo, hi) {
        if (g_lo.eval(&beta) * g_hi.eval(&beta)).is_positive() {
            continue;
        }
        let u = wc.t_coefficient(&beta);
        let t = if u.is_zero() { win.t_lo.clone() } else { -wc.constant_part(&beta) / u };
        debug_assert!(win.contains(&beta, &t));
        return Ok(Some((beta, t)));
    }
    Ok(None)
}

/// Rational test points: the endpoints, every rational root, and one point
/// strictly inside each gap between consecutive roots. Irrational roots are
/// held as brackets refined until all root intervals are strictly separated.
fn candidates(quads: &[Quad], lo: &Q, hi: &Q) -> Vec<Q> {
    // (interval, owning quadratic if irrational)
    let mut roots: Vec<((Q, Q), Option<usize>)> = Vec::new();
    for (k, g) in quads.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        for x in g.rational_roots_in(lo, hi) {
            roots.push(((x.clone(), x), None));
        }
        for b in g.irrational_brackets_in(lo, hi) {
            roots.push((b, Some(k)));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots.dedup_by(|a, b| a.1.is_none() && b.1.is_none() && a.0 == b.0);

    loop {
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        let clash = roots
            .windows(2)
            .position(|w| w[0].0 .1 >= w[1].0 .0);
        let Some(i) = clash else { break };
        // At least one of the clashing intervals is an irrational bracket.
        for j in [i, i + 1] {
            if let Some(k) = roots[j].1 {
                roots[j].0 = quads[k].bisect(&roots[j].0);
            }
        }
    }

    let mut out = vec![lo.clone(), hi.clone()];
    let mut prev_end = lo.clone();
    for ((a, b), owner) in &roots {
        if owner.is_none() {
            out.push(a.clone());
        }
        if &prev_end < a {
            out.push((&prev_end + a) / qi(2));
        }
        prev_end = b.clone();
    }
    if &prev_end < hi {
        out.push((&prev_end + hi) / qi(2));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlattice::line_bundle_int;
    use crate::rational::q;
    use crate::walls::wall_curve;

    fn win(bl: Q, bh: Q, tl: Q, th: Q) -> Window {
        Window::new(bl, bh, tl, th).unwrap()
    }

    fn o1_o() -> WallConic {
        wall_curve(&line_bundle_int(1), &line_bundle_int(0))
    }

    #[test]
    fn intersection_examples() {
        let wc = o1_o();
        assert!(wall_intersects_window(&wc, &win(qi(0), qi(1), q(1, 2), qi(1))).unwrap());
        assert!(!wall_intersects_window(&wc, &win(qi(0), qi(1), q(4, 5), qi(1))).unwrap());
        assert!(!wall_intersects_window(&wc, &win(qi(2), qi(3), q(1, 100), qi(10))).unwrap());
        assert_eq!(
            wall_intersects_window(&WallConic::default(), &win(qi(0), qi(1), qi(1), qi(2)))
                .unwrap_err()
                .code(),
            "degenerate-conic"
        );
    }

    #[test]
    fn tangent_touch_counts() {
        // max of 3 beta (1 - beta) is exactly 3/4.
        let w = win(qi(0), qi(1), q(3, 4), qi(1));
        assert!(wall_intersects_window(&o1_o(), &w).unwrap());
        assert_eq!(wall_window_witness(&o1_o(), &w).unwrap(), Some((q(1, 2), q(3, 4))));
    }

    #[test]
    fn witness_lies_on_wall() {
        let wc = o1_o();
        let w = win(qi(0), q(9, 10), q(1, 100), qi(2));
        let (b, t) = wall_window_witness(&wc, &w).unwrap().unwrap();
        assert!(w.contains(&b, &t));
        assert!(wc.eval(&b, &t).is_zero());
    }

    #[test]
    fn degenerate_segment_with_irrational_crossing() {
        // t = 1/2 meets 3 beta (1 - beta) at beta = (3 - sqrt 3)/6.
        let w = win(qi(0), q(1, 2), q(1, 2), q(1, 2));
        assert!(wall_intersects_window(&o1_o(), &w).unwrap());
        assert_eq!(wall_window_witness(&o1_o(), &w).unwrap(), None);
        // A thin box around it does have a rational witness.
        let w = win(qi(0), q(1, 2), q(1, 2), q(500001, 1000000));
        let (b, t) = wall_window_witness(&o1_o(), &w).unwrap().unwrap();
        assert!(w.contains(&b, &t) && o1_o().eval(&b, &t).is_zero());
    }

    #[test]
    fn window_validation() {
        assert_eq!(Window::new(qi(1), qi(0), qi(1), qi(2)).unwrap_err().code(), "empty-window");
        assert_eq!(Window::new(qi(0), qi(1), qi(2), qi(1)).unwrap_err().code(), "empty-window");
        assert_eq!(Window::new(qi(0), qi(1), qi(0), qi(1)).unwrap_err().code(), "nonpositive-t");
        let json = r#"{"beta_lo":"0","beta_hi":"9/10","t_lo":"1/100","t_hi":"2"}"#;
        let w: Window = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), json);
        assert!(serde_json::from_str::<Window>(
            r#"{"beta_lo":"1","beta_hi":"0","t_lo":"1","t_hi":"2"}"#
        )
        .is_err());
    }
}
