//! Explicit regions of `(s, t)` or `alpha` known to give stability conditions.

use crate::error::Result;
use crate::numlattice::{check_alpha, check_t};
use crate::rational::{q, qi, Q};

fn p3_lower(t: &Q) -> Q {
    (qi(7) * t - qi(2)) / (qi(6) * (t + qi(1)))
}

fn t_admissible(t: &Q) -> bool {
    t > &qi(0) && t < &q(1, 2)
}

/// `0 < t < 1/2` and `s > (7t - 2)/(6(t + 1))`.
pub fn region_p3_theorem(s: &Q, t: &Q) -> bool {
    t_admissible(t) && s > &p3_lower(t)
}

/// `0 < t < 1/2` and `(7t - 2)/(6(t + 1)) < s <= 1/6`.
pub fn region_p3_lemma(s: &Q, t: &Q) -> bool {
    t_admissible(t) && s > &p3_lower(t) && s <= &q(1, 6)
}

/// `omega^3 < 1/(12 sqrt 3)` on the quadric, squared: `1728 alpha^6 < 1`.
/// Equality would need `alpha^6 = 1/1728`, impossible for rational `alpha`.
pub fn region_quadric(alpha: &Q) -> Result<bool> {
    check_alpha(alpha)?;
    region_quadric_t(&(alpha * alpha))
}

pub fn region_quadric_t(t: &Q) -> Result<bool> {
    check_t(t)?;
    Ok(qi(1728) * t * t * t < qi(1))
}

/// `omega^3 < 3 sqrt 3` on P3 with `B = 0`, squared: `alpha^6 < 27`.
pub fn region_p3_intro(alpha: &Q) -> Result<bool> {
    check_alpha(alpha)?;
    region_p3_intro_t(&(alpha * alpha))
}

pub fn region_p3_intro_t(t: &Q) -> Result<bool> {
    check_t(t)?;
    Ok(t * t * t < qi(27))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_fixtures() {
        for t in [q(1, 10), q(1, 4), q(49, 100)] {
            assert!(region_p3_theorem(&(qi(3) * &t), &t));
        }
        assert!(region_p3_theorem(&q(3, 4), &q(1, 4)));
        assert!(!region_p3_theorem(&q(1, 6), &q(1, 2)));
        assert!(!region_p3_theorem(&q(-1, 30), &q(1, 4)));
        assert!(region_p3_theorem(&q(-1, 31), &q(1, 4)));
        assert!(!region_p3_theorem(&qi(5), &qi(0)));
    }

    #[test]
    fn lemma_fixtures() {
        assert!(region_p3_lemma(&q(1, 6), &q(1, 4)));
        assert!(!region_p3_lemma(&q(1, 5), &q(1, 4)));
        assert!(!region_p3_lemma(&qi(0), &q(1, 3)));
        assert!(region_p3_lemma(&q(1, 23), &q(1, 3)));
    }

    #[test]
    fn lemma_is_inside_theorem() {
        for tn in 1..50 {
            let t = q(tn, 100);
            for sn in -20..20 {
                let s = q(sn, 60);
                if region_p3_lemma(&s, &t) {
                    assert!(region_p3_theorem(&s, &t));
                }
            }
        }
    }

    #[test]
    fn quadric_fixtures() {
        assert!(region_quadric(&q(1, 4)).unwrap());
        assert!(!region_quadric(&q(1, 3)).unwrap());
        assert_eq!(region_quadric(&qi(0)).unwrap_err().code(), "invalid-ample-class");
    }

    #[test]
    fn intro_fixtures_and_consistency() {
        assert!(region_p3_intro(&qi(1)).unwrap());
        assert!(!region_p3_intro(&qi(2)).unwrap());
        assert!(region_p3_intro_t(&q(29, 10)).unwrap());
        assert!(!region_p3_intro_t(&qi(3)).unwrap());
        assert_eq!(region_p3_intro(&q(-1, 2)).unwrap_err().code(), "invalid-ample-class");
        for n in 1..60 {
            let a = q(n, 20);
            let t = &a * &a / qi(6);
            let s = qi(3) * &t;
            let theorem_t_clause = region_p3_theorem(&s, &t) || !(t < q(1, 2));
            assert_eq!(region_p3_intro(&a).unwrap(), t < q(1, 2));
            assert!(theorem_t_clause);
        }
    }
}
