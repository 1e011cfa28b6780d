//! The built-in acceptance suite behind `tiltwall verify`.
//!
//! Hermetic: no files, no network, fixed seeds.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiltwall_core::charges::{mu, nu, z, z_st, SlopeValue};
use tiltwall_core::inequalities::{delta, discriminants_t, identity_7_4_sides_t, support_smin};
use tiltwall_core::numlattice::{dualize, grr_pushforward, line_bundle, line_bundle_int, twist};
use tiltwall_core::polycharge::{compare_limit_phase, z_inf};
use tiltwall_core::rational::{q, qi};
use tiltwall_core::scenarios::{
    bog1_bound, bog2_bound, castelnuovo_verify, prop61_verify, ActiveCase, DivisorScenario,
};
use tiltwall_core::walls::{
    enumerate_pseudo_walls, enumerate_pseudo_walls_with_threads, region_p3_lemma,
    region_p3_theorem, region_quadric, solve_t, wall_curve, TSolution, WallConic, Window,
};
use tiltwall_core::{NumClass, VarietyModel, Q};

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<String, String>;

const CHECKS: [(u32, &str, Check); 11] = [
    (1, "degenerate charge vanishes exactly", zst_zero),
    (2, "pushforward matches Koszul resolution", grr_koszul),
    (3, "wall of O(1) against O is t = 3 beta (1 - beta)", wall_closed_form),
    (4, "exact property suite", property_suite),
    (5, "identity on nu-zero classes", nu_zero_identity),
    (6, "divisor case split", divisor_case_split),
    (7, "region fixtures", region_fixtures),
    (8, "limit phase agrees with slope and numerics", phase_oracle),
    (9, "support minimum matches grid search", smin_grid),
    (10, "enumeration determinism, monotonicity and runtime", enumeration),
    (11, "genus sweep over hypersurfaces", castelnuovo),
];

/// Run every criterion, catching panics as failures.
pub fn run_all() -> Vec<Criterion> {
    CHECKS
        .iter()
        .map(|&(id, name, f)| {
            let (passed, detail) = match panic::catch_unwind(AssertUnwindSafe(f)) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(p) => {
                    let msg = p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".into());
                    (false, format!("panicked: {msg}"))
                }
            };
            Criterion { id, name, passed, detail }
        })
        .collect()
}

/// One `PASS`/`FAIL` line per criterion.
pub fn render(results: &[Criterion]) -> String {
    let mut out = String::new();
    for c in results {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{tag} criterion {:>2}: {} ({})", c.id, c.name, c.detail);
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: tiltwall_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn zst_zero() -> Result<String, String> {
    let got = e2s(z_st(&line_bundle_int(1), &q(1, 6), &q(1, 2), &VarietyModel::p3()))?;
    ensure(got.is_zero(), || format!("got {got:?}"))?;
    Ok("Z(O(1)) = 0 at (1/6, 1/2)".into())
}

fn grr_koszul() -> Result<String, String> {
    let p3 = VarietyModel::p3();
    for m in 1..=4i64 {
        for k in -2..=3i64 {
            let (mq, kq) = (qi(m), qi(k));
            let got = e2s(grr_pushforward(&qi(1), &(&kq * &mq), &(&kq * &kq * &mq / qi(2)), &mq, &p3, &Q::zero()))?;
            let want = &line_bundle(&kq) - &line_bundle(&(&kq - &mq));
            ensure(got == want, || format!("m={m} k={k}: {got} != {want}"))?;
        }
    }
    Ok("24 cases".into())
}

fn wall_closed_form() -> Result<String, String> {
    let wc = wall_curve(&line_bundle_int(1), &line_bundle_int(0));
    // t/6 - beta/2 + beta^2/2 = 0, i.e. t = 3 beta (1 - beta).
    let expected = WallConic { u0: q(1, 6), u1: qi(0), q0: qi(0), q1: q(-1, 2), q2: q(1, 2) };
    ensure(wc.is_proportional_to(&expected), || format!("conic {wc:?}"))?;
    for (n, d) in [(-1i64, 3i64), (1, 5), (2, 3), (7, 4)] {
        let b = q(n, d);
        let want = qi(3) * &b * (qi(1) - &b);
        ensure(solve_t(&wc, &b) == TSolution::Value(want.clone()), || format!("beta {b}"))?;
    }
    match solve_t(&wc, &q(1, 2)) {
        TSolution::Value(t) if t == q(3, 4) => Ok("solve_t(1/2) = 3/4".into()),
        other => Err(format!("solve_t(1/2) = {other:?}")),
    }
}

fn rat(rng: &mut ChaCha8Rng, range: i64, den: i64) -> Q {
    q(rng.gen_range(-range..=range), rng.gen_range(1..=den))
}

fn pos_rat(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(1..=40), rng.gen_range(1..=12))
}

fn class(rng: &mut ChaCha8Rng) -> NumClass {
    NumClass::new(rat(rng, 6, 3), rat(rng, 12, 4), rat(rng, 20, 6), rat(rng, 30, 12))
}

fn model(rng: &mut ChaCha8Rng) -> VarietyModel {
    match rng.gen_range(0..3) {
        0 => VarietyModel::p3(),
        1 => VarietyModel::quadric(),
        _ => VarietyModel::hypersurface(rng.gen_range(3..=9)).expect("degree is positive"),
    }
}

const CASES: usize = 1000;

fn property_suite() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7117);
    for i in 0..CASES {
        let v = class(&mut rng);
        let (a, b) = (rat(&mut rng, 8, 5), rat(&mut rng, 8, 5));
        let alpha = pos_rat(&mut rng);
        let md = model(&mut rng);
        let fail = |what: &str| format!("{what} failed on case {i}: v = {v}, alpha = {alpha}, beta = {a}");

        ensure(delta(&twist(&v, &a)) == delta(&v), || fail("twist invariance of delta"))?;

        let t = &alpha * &alpha;
        let rep = e2s(discriminants_t(&v, &t, &a, &md))?;
        let d = md.degree();
        ensure(rep.delta_bar == &t * &t * &d * &d * delta(&v), || fail("delta_bar scaling"))?;

        let lhs = e2s(nu(&dualize(&v), &alpha, &-a.clone(), &md))?;
        let rhs = e2s(nu(&v, &alpha, &a, &md))?;
        let dual_ok = match (&lhs, &rhs) {
            (SlopeValue::Finite(x), SlopeValue::Finite(y)) => *x == -y.clone(),
            (SlopeValue::PositiveInfinity, SlopeValue::PositiveInfinity) => true,
            _ => false,
        };
        ensure(dual_ok, || fail("nu duality"))?;

        ensure(twist(&twist(&v, &a), &b) == twist(&v, &(&a + &b)), || fail("twist composition"))?;
        ensure(twist(&v, &Q::zero()) == v, || fail("twist identity"))?;

        let m0 = pos_rat(&mut rng);
        let poly = e2s(z_inf(&v, &alpha, &a, &md))?;
        ensure(poly.eval(&m0) == e2s(z(&v, &(&m0 * &alpha), &a, &md))?, || fail("z_inf evaluation"))?;
    }
    Ok(format!("{CASES} cases x 5 properties"))
}

fn nu_zero_identity() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x74);
    let n = 500;
    for i in 0..n {
        let r = loop {
            let r = rng.gen_range(-6i64..=6);
            if r != 0 {
                break qi(r);
            }
        };
        let (c, d3) = (rat(&mut rng, 12, 4), rat(&mut rng, 30, 12));
        let (alpha, b) = (pos_rat(&mut rng), rat(&mut rng, 5, 3));
        let md = model(&mut rng);
        let t = &alpha * &alpha;
        // Im Z = 0 means ch^B_2 = t r / 6.
        let d2 = &t * &r / qi(6) + &b * &c - &b * &b * &r / qi(2);
        let v = NumClass::new(r, c, d2, d3);
        let sides = e2s(identity_7_4_sides_t(&v, &t, &b, &md))?;
        ensure(sides.lhs == sides.rhs, || format!("case {i}: {} != {}", sides.lhs, sides.rhs))?;
    }
    Ok(format!("{n} classes, exact equality"))
}

fn divisor_model(d: u64) -> VarietyModel {
    match d {
        1 => VarietyModel::p3(),
        2 => VarietyModel::quadric(),
        _ => VarietyModel::hypersurface(d).expect("degree is positive"),
    }
}

fn at_common_bound(r: Q, m: u64, alpha_sq: Q, md: VarietyModel) -> Result<DivisorScenario, String> {
    let probe = e2s(DivisorScenario::with_alpha_sq(r.clone(), m, alpha_sq.clone(), Q::zero(), md.clone()))?;
    let s = bog1_bound(&probe).min(bog2_bound(&probe));
    e2s(DivisorScenario::with_alpha_sq(r, m, alpha_sq, s, md))
}

fn divisor_case_split() -> Result<String, String> {
    let mut count = 0;
    for r in 1..=2i64 {
        for m in 1..=4u64 {
            for d in [1u64, 2, 5] {
                for a in 1..=2i64 {
                    let alpha_sq = qi(a * a);
                    let sc = at_common_bound(qi(r), m, alpha_sq.clone(), divisor_model(d))?;
                    let rep = e2s(prop61_verify(&sc))?;
                    let tag = format!("r={r} m={m} d={d} alpha={a}");
                    ensure(rep.holds, || format!("{tag}: margin {}", rep.margin))?;
                    let three_m2 = qi(3 * (m * m) as i64);
                    let want = if three_m2 <= qi(4) * &alpha_sq { ActiveCase::Bog1 } else { ActiveCase::Bog2 };
                    ensure(rep.active_case == want, || format!("{tag}: case {:?}", rep.active_case))?;
                    // No grid point sits on the crossover, so the margin is strict.
                    ensure(rep.margin.is_positive(), || format!("{tag}: margin {}", rep.margin))?;
                    count += 1;
                }
            }
        }
    }
    // The crossover 3 m^2 = 4 alpha^2 at m = 2 sits at alpha^2 = 3.
    for d in [1u64, 2, 5] {
        for r in 1..=2i64 {
            let sc = at_common_bound(qi(r), 2, qi(3), divisor_model(d))?;
            ensure(bog1_bound(&sc) == bog2_bound(&sc), || format!("bounds differ at crossover, d={d}"))?;
            let rep = e2s(prop61_verify(&sc))?;
            ensure(rep.holds && rep.margin.is_zero(), || format!("crossover d={d} r={r}: margin {}", rep.margin))?;
            ensure(rep.active_case == ActiveCase::Bog1, || "crossover uses the first bound".into())?;
            let below = e2s(prop61_verify(&at_common_bound(qi(r), 2, qi(3) - q(1, 100), divisor_model(d))?))?;
            let above = e2s(prop61_verify(&at_common_bound(qi(r), 2, qi(3) + q(1, 100), divisor_model(d))?))?;
            ensure(
                below.active_case == ActiveCase::Bog2 && above.active_case == ActiveCase::Bog1,
                || format!("no flip around crossover, d={d}"),
            )?;
            ensure(below.margin.is_positive() && above.margin.is_positive(), || "margin off crossover".into())?;
        }
    }
    Ok(format!("{count} grid cases, margin zero only at the crossover"))
}

fn region_fixtures() -> Result<String, String> {
    for t in [q(1, 10), q(1, 4), q(49, 100)] {
        ensure(region_p3_theorem(&(qi(3) * &t), &t), || format!("theorem region misses (3t, t) at t = {t}"))?;
    }
    ensure(!region_p3_theorem(&q(1, 6), &q(1, 2)), || "theorem region contains (1/6, 1/2)".into())?;
    ensure(region_p3_lemma(&q(1, 6), &q(1, 4)), || "lemma region misses (1/6, 1/4)".into())?;
    ensure(e2s(region_quadric(&q(1, 4)))?, || "quadric region misses 1/4".into())?;
    ensure(!e2s(region_quadric(&q(1, 3)))?, || "quadric region contains 1/3".into())?;
    Ok("7 fixtures".into())
}

fn phase(c: &tiltwall_core::charges::ComplexQ) -> f64 {
    let (re, im) = (c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN));
    im.atan2(re)
}

fn phase_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    let p3 = VarietyModel::p3();
    let big_m = qi(1_000_000);
    let mut found = 0;
    let mut tries = 0;
    while found < 200 {
        tries += 1;
        ensure(tries < 100_000, || "could not draw enough pairs".into())?;
        let draw = |rng: &mut ChaCha8Rng| {
            NumClass::new(qi(rng.gen_range(1..=5)), qi(rng.gen_range(-10..=10)), rat(rng, 10, 2), rat(rng, 10, 6))
        };
        let (v, w) = (draw(&mut rng), draw(&mut rng));
        let (alpha, b) = (pos_rat(&mut rng), rat(&mut rng, 3, 2));
        let (mv, mw) = (e2s(mu(&v, &alpha, &b, &p3))?, e2s(mu(&w, &alpha, &b, &p3))?);
        let (Some(x), Some(y)) = (mv.finite(), mw.finite()) else { continue };
        if x <= y {
            continue;
        }
        found += 1;
        let p = e2s(z_inf(&v, &alpha, &b, &p3))?.neg();
        let pw = e2s(z_inf(&w, &alpha, &b, &p3))?.neg();
        let exact = e2s(compare_limit_phase(&p, &pw))?;
        ensure(exact == Ordering::Greater, || format!("v = {v}, w = {w}: {exact:?}"))?;
        let (fv, fw) = (phase(&p.eval(&big_m)), phase(&pw.eval(&big_m)));
        ensure(fv > fw, || format!("numeric phases {fv} <= {fw} for v = {v}, w = {w}"))?;
    }
    Ok(format!("{found} pairs"))
}

fn smin_grid() -> Result<String, String> {
    const N: i128 = 100_000;
    // With x = omega^3 k / N and k = 6i - 3N, both x^2 and f(x)^2 carry a
    // factor omega^6, and 36 N^4 g / omega^6 = 36 k^2 N^2 + (12 k^2 - N^2)^2
    // is an integer. The grid minimum is exact.
    let scaled_min = (0..=N)
        .map(|i| {
            let k = 6 * i - 3 * N;
            let f = 12 * k * k - N * N;
            36 * k * k * N * N + f * f
        })
        .min()
        .expect("nonempty grid");
    let tol = q(1, 1_000_000);
    for a in 1..=2i64 {
        for d in 1..=2u64 {
            let md = divisor_model(d);
            let alpha = qi(a);
            let smin = e2s(support_smin(&alpha, &md))?;
            let w3 = &alpha * &alpha * &alpha * md.degree();
            let n4 = Q::from_integer(N.pow(4).into());
            let best = Q::from_integer(scaled_min.into()) * &w3 * &w3 / (qi(36) * n4);
            let lo = &smin * &smin * (qi(1) - &tol) * (qi(1) - &tol);
            let hi = &smin * &smin * (qi(1) + &tol) * (qi(1) + &tol);
            ensure(lo <= best && best <= hi, || format!("alpha={a} d={d}: grid {best} vs smin^2 {}", &smin * &smin))?;
        }
    }
    Ok(format!("{} samples per case, 4 cases", N + 1))
}

fn enumeration() -> Result<String, String> {
    let p3 = VarietyModel::p3();
    let ve = line_bundle_int(1);
    let win = e2s(Window::new(qi(0), q(9, 10), q(1, 100), qi(2)))?;
    let bytes: Vec<String> = [1usize, 2, 8]
        .iter()
        .map(|&n| {
            let out = e2s(enumerate_pseudo_walls_with_threads(&ve, &win, 3, &p3, n))?;
            serde_json::to_string(&out).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    ensure(bytes[0] == bytes[1] && bytes[0] == bytes[2], || "thread count changed the output".into())?;
    let small = e2s(enumerate_pseudo_walls(&ve, &win, 1, &p3))?;
    let mid = e2s(enumerate_pseudo_walls(&ve, &win, 3, &p3))?;
    for p in &small.walls {
        ensure(mid.walls.contains(p), || format!("{:?} lost at max_rank 3", p.w))?;
    }
    let start = Instant::now();
    let big = e2s(enumerate_pseudo_walls(&ve, &win, 5, &p3))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("max_rank 5 took {took:?}"))?;
    Ok(format!(
        "{} / {} / {} walls at max_rank 1 / 3 / 5, {:.2}s",
        small.walls.len(),
        mid.walls.len(),
        big.walls.len(),
        took.as_secs_f64()
    ))
}

fn castelnuovo() -> Result<String, String> {
    let report = e2s(castelnuovo_verify(4, 12))?;
    ensure(report.all_hold, || "library sweep reports a failure".into())?;
    // Recheck the inequality directly from the formula.
    let mut n = 0;
    for big_d in 4..=12i64 {
        for d in (1..).take_while(|d| 2 * d < big_d) {
            let lhs = q((d - 1) * (d - 2), 2);
            let rhs = q(d * big_d, 2) - q(4 * d, 3) + qi(1);
            ensure(lhs <= rhs, || format!("D={big_d} d={d}: {lhs} > {rhs}"))?;
            n += 1;
        }
    }
    ensure(n == report.cases.len(), || format!("{n} cases vs {}", report.cases.len()))?;
    Ok(format!("{n} (D, d) pairs"))
}
