//! Real root location for rational polynomials of degree at most two.

use num_traits::{Signed, Zero};

use crate::rational::{qi, sqrt_exact, Q};

/// `c0 + c1 x + c2 x^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Quad {
    pub c0: Q,
    pub c1: Q,
    pub c2: Q,
}

impl Quad {
    pub fn new(c0: Q, c1: Q, c2: Q) -> Self {
        Self { c0, c1, c2 }
    }

    pub fn eval(&self, x: &Q) -> Q {
        (&self.c2 * x + &self.c1) * x + &self.c0
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    /// Extremum of a genuine quadratic.
    pub fn vertex(&self) -> Option<Q> {
        if self.c2.is_zero() {
            None
        } else {
            Some(-&self.c1 / (qi(2) * &self.c2))
        }
    }

    /// Whether the polynomial vanishes somewhere on `[lo, hi]`.
    pub fn has_root_in(&self, lo: &Q, hi: &Q) -> bool {
        if self.is_zero() {
            return true;
        }
        let (glo, ghi) = (self.eval(lo), self.eval(hi));
        if !(&glo * &ghi).is_positive() {
            return true;
        }
        // Same strict sign at both ends: only a quadratic can dip across.
        match self.vertex() {
            Some(v) if &v > lo && &v < hi => !(self.eval(&v) * glo).is_positive(),
            _ => false,
        }
    }

    fn discriminant(&self) -> Q {
        &self.c1 * &self.c1 - qi(4) * &self.c2 * &self.c0
    }

    /// Rational roots inside `[lo, hi]`, sorted. A zero polynomial has none.
    pub fn rational_roots_in(&self, lo: &Q, hi: &Q) -> Vec<Q> {
        let mut roots = Vec::new();
        if self.c2.is_zero() {
            if !self.c1.is_zero() {
                roots.push(-&self.c0 / &self.c1);
            }
        } else {
            let disc = self.discriminant();
            if let Some(s) = sqrt_exact(&disc) {
                let two_a = qi(2) * &self.c2;
                roots.push((-&self.c1 - &s) / &two_a);
                roots.push((-&self.c1 + &s) / &two_a);
            }
        }
        roots.retain(|x| x >= lo && x <= hi);
        roots.sort();
        roots.dedup();
        roots
    }

    /// Brackets `(a, b)` with `a < root < b` around each irrational root
    /// inside `(lo, hi)`. The polynomial changes sign strictly across each.
    pub fn irrational_brackets_in(&self, lo: &Q, hi: &Q) -> Vec<(Q, Q)> {
        if self.c2.is_zero() {
            return Vec::new();
        }
        let disc = self.discriminant();
        if disc.is_negative() || sqrt_exact(&disc).is_some() {
            return Vec::new();
        }
        let mut pieces = vec![(lo.clone(), hi.clone())];
        if let Some(v) = self.vertex() {
            if &v > lo && &v < hi {
                pieces = vec![(lo.clone(), v.clone()), (v, hi.clone())];
            }
        }
        pieces
            .into_iter()
            .filter(|(a, b)| (self.eval(a) * self.eval(b)).is_negative())
            .collect()
    }

    /// Halve a sign-change bracket around an irrational root.
    pub fn bisect(&self, bracket: &(Q, Q)) -> (Q, Q) {
        let (a, b) = bracket;
        let mid = (a + b) / qi(2);
        if (self.eval(a) * self.eval(&mid)).is_negative() {
            (a.clone(), mid)
        } else {
            (mid, b.clone())
        }
    }
}
