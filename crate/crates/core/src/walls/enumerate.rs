//! Finite search for lattice classes whose wall with `vE` meets a window.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::window::{wall_intersects_window, Window};
use super::{wall_curve, WallConic};
use crate::error::{Error, Result};
use crate::inequalities::delta;
use crate::numlattice::{is_lattice_point, NumClass, VarietyModel};
use crate::rational::{qi, serde_q, Q};

pub const DEFAULT_MAX_RANK: u32 = 5;

/// Pieces used to enclose the range of `d2` compatible with the window.
const ENCLOSURE_PIECES: i64 = 32;

/// `(ch_0, ch_1, ch_2)`; walls do not see `ch_3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassTriple {
    #[serde(with = "serde_q")]
    pub r: Q,
    #[serde(with = "serde_q")]
    pub c: Q,
    #[serde(with = "serde_q")]
    pub d2: Q,
}

impl ClassTriple {
    pub fn to_class(&self) -> NumClass {
        NumClass::new(self.r.clone(), self.c.clone(), self.d2.clone(), Q::zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoWall {
    pub w: ClassTriple,
    pub conic: WallConic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallEnumeration {
    pub max_rank: u32,
    pub window: Window,
    pub walls: Vec<PseudoWall>,
}

/// Closed rational interval.
#[derive(Clone, Debug)]
struct Iv {
    lo: Q,
    hi: Q,
}

impl Iv {
    fn point(x: Q) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    fn new(a: Q, b: Q) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    fn add(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn mul(&self, o: &Iv) -> Iv {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Iv { lo, hi }
    }

    fn scale(&self, k: &Q) -> Iv {
        Iv::new(&self.lo * k, &self.hi * k)
    }

    /// Division by an interval of strictly positive numbers.
    fn div_pos(&self, o: &Iv) -> Iv {
        let p = [&self.lo / &o.lo, &self.lo / &o.hi, &self.hi / &o.lo, &self.hi / &o.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Iv { lo, hi }
    }

    fn hull(&self, o: &Iv) -> Iv {
        Iv { lo: (&self.lo).min(&o.lo).clone(), hi: (&self.hi).max(&o.hi).clone() }
    }
}

/// Solving the wall through `(beta, t)` for `d2(w)`:
/// `D = beta c - beta^2 r/2 + t r/6 + (ch^B_2(vE) - t rE/6) ch^B_1(w) / ch^B_1(vE)`.
/// Any `w` whose wall meets the window has `d2` inside the returned hull.
fn d2_enclosure(ve: &NumClass, r: &Q, c: &Q, win: &Window) -> Iv {
    let width = &win.beta_hi - &win.beta_lo;
    let pieces = if width.is_zero() { 1 } else { ENCLOSURE_PIECES };
    let mut hull: Option<Iv> = None;
    for k in 0..pieces {
        let a = &win.beta_lo + &width * Q::new(k.into(), pieces.into());
        let b = &win.beta_lo + &width * Q::new((k + 1).into(), pieces.into());
        let beta = Iv::new(a.clone(), b.clone());
        let beta2 = if a.is_negative() && b.is_positive() {
            Iv::new(Q::zero(), (&a * &a).max(&b * &b))
        } else {
            Iv::new(&a * &a, &b * &b)
        };
        let c_w = Iv::point(c.clone()).add(&beta.scale(&-r));
        let c_e = Iv::point(ve.c.clone()).add(&beta.scale(&-&ve.r));
        let d2_e = Iv::point(ve.d2.clone())
            .add(&beta.scale(&-&ve.c))
            .add(&beta2.scale(&(&ve.r / qi(2))));
        let fixed = beta.scale(c).add(&beta2.scale(&(-r / qi(2))));
        for t in [&win.t_lo, &win.t_hi] {
            let num = d2_e.add(&Iv::point(-(t * &ve.r) / qi(6)));
            let piece = fixed
                .add(&Iv::point(t * r / qi(6)))
                .add(&num.mul(&c_w).div_pos(&c_e));
            hull = Some(match hull {
                None => piece,
                Some(h) => h.hull(&piece),
            });
        }
    }
    hull.expect("at least one piece")
}

/// `0 <= ch^B_1(w) < ch^B_1(vE)` somewhere on the beta range. Both sides are
/// affine in beta, so the set is an interval whose ends are among the range
/// ends and the two roots; testing those and the midpoints between them is exact.
fn between_somewhere(ve: &NumClass, r: &Q, c: &Q, win: &Window) -> bool {
    let f1 = |b: &Q| c - r * b;
    let f2 = |b: &Q| (&ve.c - c) - (&ve.r - r) * b;
    let mut pts = vec![win.beta_lo.clone(), win.beta_hi.clone()];
    if !r.is_zero() {
        pts.push(c / r);
    }
    let dr = &ve.r - r;
    if !dr.is_zero() {
        pts.push((&ve.c - c) / &dr);
    }
    pts.retain(|b| b >= &win.beta_lo && b <= &win.beta_hi);
    pts.sort();
    let mids: Vec<Q> = pts.windows(2).map(|w| (&w[0] + &w[1]) / qi(2)).collect();
    pts.iter()
        .chain(mids.iter())
        .any(|b| !f1(b).is_negative() && f2(b).is_positive())
}

fn ceil_int(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

fn floor_int(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Candidate lattice `d2` values for the cell `(r, c)`, as multiples of `1/lam2`.
fn d2_range(ve: &NumClass, r: &Q, c: &Q, win: &Window, lam2: &Q) -> Option<(BigInt, BigInt)> {
    let enc = d2_enclosure(ve, r, c, win);
    let (mut lo, mut hi) = (enc.lo, enc.hi);
    // Delta(w) >= 0
    if r.is_positive() {
        hi = hi.min(c * c / (qi(2) * r));
    } else if r.is_negative() {
        lo = lo.max(c * c / (qi(2) * r));
    }
    // Delta(vE - w) >= 0
    let (rr, cc) = (&ve.r - r, &ve.c - c);
    if rr.is_positive() {
        lo = lo.max(&ve.d2 - &cc * &cc / (qi(2) * &rr));
    } else if rr.is_negative() {
        hi = hi.min(&ve.d2 - &cc * &cc / (qi(2) * &rr));
    }
    if lo > hi {
        return None;
    }
    Some((ceil_int(&(lo * lam2)), floor_int(&(hi * lam2))))
}

fn scan_cell(ve: &NumClass, r: i64, c: &BigInt, win: &Window, lam2: &Q) -> Vec<PseudoWall> {
    let (rq, cq) = (qi(r), Q::from_integer(c.clone()));
    if !between_somewhere(ve, &rq, &cq, win) {
        return Vec::new();
    }
    let Some((k_lo, k_hi)) = d2_range(ve, &rq, &cq, win, lam2) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut k = k_lo;
    while k <= k_hi {
        let d2 = Q::from_integer(k.clone()) / lam2;
        k += 1;
        let w = NumClass::new(rq.clone(), cq.clone(), d2.clone(), Q::zero());
        if delta(&w).is_negative() || delta(&(ve - &w)).is_negative() {
            continue;
        }
        let conic = wall_curve(ve, &w);
        if conic.is_zero() || !wall_intersects_window(&conic, win).unwrap_or(false) {
            continue;
        }
        out.push(PseudoWall { w: ClassTriple { r: rq.clone(), c: cq.clone(), d2 }, conic });
    }
    out
}

fn validate(ve: &NumClass, win: &Window, max_rank: u32, model: &VarietyModel) -> Result<()> {
    if max_rank == 0 {
        return Err(Error::InvalidArgument("max_rank must be at least 1".into()));
    }
    if !is_lattice_point(ve, model) {
        return Err(Error::NotLatticePoint(model.name.clone()));
    }
    for b in [&win.beta_lo, &win.beta_hi] {
        let c = &ve.c - b * &ve.r;
        if !c.is_positive() {
            return Err(Error::Ch1SignChange(format!("ch1 = {c} at beta = {b}")));
        }
    }
    Ok(())
}

/// `(r, c)` cells with `|r| <= max_rank` and `c` in the integer range
/// implied by `0 <= c - r beta < ch^B_1(vE)` for some beta in the window.
fn cells(ve: &NumClass, win: &Window, max_rank: u32) -> Vec<(i64, BigInt)> {
    let mr = i64::from(max_rank);
    let mut out = Vec::new();
    for r in -mr..=mr {
        let rq = qi(r);
        let c_lo = (&rq * &win.beta_lo).min(&rq * &win.beta_hi);
        let top = |b: &Q| &ve.c - (&ve.r - &rq) * b;
        let c_hi = top(&win.beta_lo).max(top(&win.beta_hi));
        let (a, b) = (ceil_int(&c_lo), ceil_int(&c_hi));
        let mut c = a;
        while c < b {
            out.push((r, c.clone()));
            c += 1;
        }
    }
    out
}

/// Keep one class per wall: the one minimal in `(|r|, r, c, d2)`. Ranking by
/// `|r|` first makes the choice stable when `max_rank` grows.
fn dedup(found: Vec<PseudoWall>) -> Vec<PseudoWall> {
    let mut best: BTreeMap<WallConic, PseudoWall> = BTreeMap::new();
    let key = |p: &PseudoWall| (p.w.r.abs(), p.w.clone());
    for p in found {
        let norm = p.conic.normalized();
        match best.get(&norm) {
            Some(cur) if key(cur) <= key(&p) => {}
            _ => {
                best.insert(norm, p);
            }
        }
    }
    let mut walls: Vec<PseudoWall> = best.into_values().collect();
    walls.sort_by(|a, b| a.w.cmp(&b.w));
    walls
}

fn run(ve: &NumClass, win: &Window, max_rank: u32, model: &VarietyModel) -> WallEnumeration {
    let lam2 = Q::from_integer(model.lam2.into());
    let found: Vec<PseudoWall> = cells(ve, win, max_rank)
        .par_iter()
        .flat_map_iter(|(r, c)| scan_cell(ve, *r, c, win, &lam2))
        .collect();
    WallEnumeration { max_rank, window: win.clone(), walls: dedup(found) }
}

/// All pseudo-walls for `vE` meeting `win`, using rayon's global pool.
pub fn enumerate_pseudo_walls(
    ve: &NumClass,
    win: &Window,
    max_rank: u32,
    model: &VarietyModel,
) -> Result<WallEnumeration> {
    validate(ve, win, max_rank, model)?;
    Ok(run(ve, win, max_rank, model))
}

/// As [`enumerate_pseudo_walls`] on a dedicated pool of `threads` workers.
pub fn enumerate_pseudo_walls_with_threads(
    ve: &NumClass,
    win: &Window,
    max_rank: u32,
    model: &VarietyModel,
    threads: usize,
) -> Result<WallEnumeration> {
    validate(ve, win, max_rank, model)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(|| run(ve, win, max_rank, model)))
}
