use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use tiltwall_core::charges::{self, minimal_ch1_t};
use tiltwall_core::inequalities::{
    self, check_bg_general_t, con14_verdict_t, discriminants_t, identity_7_4_sides_t,
    strong_bg_verdict_t, support_smin, valid_ab,
};
use tiltwall_core::numlattice::{degrees, dualize, grr_pushforward, is_lattice_point, tensor_line, twist};
use tiltwall_core::polycharge::{self, compare_limit_phase, PolyCharge};
use tiltwall_core::rational::to_decimal;
use tiltwall_core::scenarios::{
    bog1_bound, bog2_bound, castelnuovo_verify, curve_ideal_class, curve_strong_margin,
    prop61_verify, rez_lower_bound, CurveScenario, DivisorScenario,
};
use tiltwall_core::walls::{
    self, enumerate_pseudo_walls, enumerate_pseudo_walls_with_threads, sample_wall, solve_t,
    wall_intersects_window, wall_window_witness, TSolution,
};
use tiltwall_core::{format_q, parse_q, Error, Result, Q};

use crate::inputs::{self, Scale};
use crate::{
    verify, ChargeArgs, ChargeKind, CheckArgs, ClassCommand, Command, Output, PolyCompareArgs,
    PolyKind, RegionArgs, RegionKind, ScenarioCommand, SlopeArgs, SlopeKind, WallsCommand,
};

fn to_json<T: Serialize>(v: &T) -> Output {
    Output::Json(serde_json::to_value(v).expect("serialisable"))
}

fn s(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub(crate) fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Charge(a) => charge(a),
        Command::Slope(a) => slope(a),
        Command::PolyCompare(a) => poly_compare(a),
        Command::Check(a) => check(a),
        Command::Walls { command } => walls_cmd(command),
        Command::Region(a) => region(a),
        Command::Scenario { command } => scenario(command),
        Command::Class { command } => class_cmd(command),
        Command::Verify => Ok(run_verify()),
    }
}

fn charge(a: ChargeArgs) -> Result<Output> {
    let v = inputs::class(&a.class)?;
    let model = inputs::model(&a.model)?;
    let beta = &a.beta.beta;
    if let ChargeKind::Zst = a.kind {
        let (Some(s_), Some(t)) = (&a.s, &a.t) else {
            return Err(Error::InvalidArgument("zst needs --s and --t".into()));
        };
        return Ok(to_json(&charges::z_st(&v, s_, t, &model)?));
    }
    let alpha = Scale::from_args(&a.scale)?.alpha()?;
    let poly = match a.kind {
        ChargeKind::Z => return Ok(to_json(&charges::z(&v, &alpha, beta, &model)?)),
        ChargeKind::Zbar => return Ok(to_json(&charges::z_bar(&v, &alpha, beta, &model)?)),
        ChargeKind::Zp => polycharge::zp(&v, &alpha, beta, &model)?,
        ChargeKind::Zb => polycharge::zb_poly(&v, &alpha, beta, &model)?,
        ChargeKind::Zinf => polycharge::z_inf(&v, &alpha, beta, &model)?,
        ChargeKind::Zst => unreachable!(),
    };
    Ok(match &a.m {
        Some(m) => to_json(&poly.eval(m)),
        None => to_json(&poly),
    })
}

fn slope(a: SlopeArgs) -> Result<Output> {
    let v = inputs::class(&a.class)?;
    let model = inputs::model(&a.model)?;
    let scale = Scale::from_args(&a.scale)?;
    let beta = &a.beta.beta;
    match a.kind {
        SlopeKind::Mu => Ok(to_json(&charges::mu_t(&v, &scale.t(), beta, &model)?)),
        SlopeKind::Nu => Ok(to_json(&charges::nu(&v, &scale.alpha()?, beta, &model)?)),
        SlopeKind::Muhat => Ok(to_json(&charges::mu_hat(&v, &scale.alpha()?, beta, &model)?)),
    }
}

fn build_poly(kind: PolyKind, sel: &str, shift: i64, alpha: &Q, beta: &Q, a: &PolyCompareArgs) -> Result<PolyCharge> {
    let model = inputs::model(&a.model)?;
    let v = inputs::class_arg("class", sel)?.shift(shift);
    match kind {
        PolyKind::Zp => polycharge::zp(&v, alpha, beta, &model),
        PolyKind::Zb => polycharge::zb_poly(&v, alpha, beta, &model),
        PolyKind::Zinf => polycharge::z_inf(&v, alpha, beta, &model),
    }
}

fn poly_compare(a: PolyCompareArgs) -> Result<Output> {
    let (p, q) = match (&a.p, &a.q, a.kind) {
        (Some(p), Some(q), None) => (inputs::from_json("--p", p)?, inputs::from_json("--q", q)?),
        (None, None, Some(kind)) => {
            let (Some(l), Some(r)) = (&a.left, &a.right) else {
                return Err(Error::InvalidArgument("--kind needs --left and --right".into()));
            };
            let alpha = Scale::from_args(&a.scale)?.alpha()?;
            let beta = &a.beta.beta;
            (
                build_poly(kind, l, a.left_shift, &alpha, beta, &a)?,
                build_poly(kind, r, a.right_shift, &alpha, beta, &a)?,
            )
        }
        _ => return Err(Error::InvalidArgument("give --p and --q, or --kind with --left and --right".into())),
    };
    let order = match compare_limit_phase(&p, &q)? {
        Ordering::Greater => "greater",
        Ordering::Less => "less",
        Ordering::Equal => "equal",
    };
    Ok(Output::Json(json!({ "order": order })))
}

fn pair(kind: &str, rest: &str) -> Result<(Q, Q)> {
    let (a, b) = rest
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("{kind} expects a,b")))?;
    Ok((parse_q(a)?, parse_q(b)?))
}

fn check(a: CheckArgs) -> Result<Output> {
    if let Some(rest) = a.kind.strip_prefix("valid-ab:") {
        let (x, y) = pair("valid-ab", rest)?;
        return Ok(Output::Json(json!({ "valid": valid_ab(&x, &y) })));
    }
    let model = inputs::model(&a.model)?;
    let scale = Scale::from_args(&a.scale)?;
    let t = scale.t();
    if a.kind == "smin" {
        return Ok(Output::Json(json!({ "smin": s(&support_smin(&scale.alpha()?, &model)?) })));
    }
    let beta = &a.beta.beta;
    if a.kind == "minch1" {
        return Ok(Output::Json(json!({ "minimal_ch1": s(&minimal_ch1_t(&t, beta, &model)?) })));
    }
    let v = inputs::class(&a.class)?;
    if let Some(rest) = a.kind.strip_prefix("bg:") {
        let (x, y) = pair("bg", rest)?;
        return Ok(to_json(&check_bg_general_t(&v, &t, beta, &x, &y, &model)?));
    }
    match a.kind.as_str() {
        "strong" => Ok(to_json(&strong_bg_verdict_t(&v, &t, beta, &model)?)),
        "con14" => Ok(to_json(&con14_verdict_t(&v, &t, beta, &model)?)),
        "identity74" => {
            let sides = identity_7_4_sides_t(&v, &t, beta, &model)?;
            Ok(Output::Json(json!({
                "holds": sides.lhs == sides.rhs,
                "lhs": s(&sides.lhs),
                "rhs": s(&sides.rhs),
            })))
        }
        "discriminants" => Ok(to_json(&discriminants_t(&v, &t, beta, &model)?)),
        "delta" => Ok(Output::Json(json!({ "delta": s(&inequalities::delta(&v)) }))),
        other => Err(Error::Parse(format!(
            "unknown check kind {other:?}; expected bg:a,b | strong | con14 | identity74 | \
             discriminants | delta | smin | minch1 | valid-ab:a,b"
        ))),
    }
}

fn walls_cmd(cmd: WallsCommand) -> Result<Output> {
    match cmd {
        WallsCommand::Enumerate { class, window, max_rank, threads, model } => {
            let ve = inputs::class(&class)?;
            let win = inputs::window(&window)?;
            let model = inputs::model(&model)?;
            let out = match threads {
                Some(n) => enumerate_pseudo_walls_with_threads(&ve, &win, max_rank, &model, n)?,
                None => enumerate_pseudo_walls(&ve, &win, max_rank, &model)?,
            };
            Ok(to_json(&out))
        }
        WallsCommand::Curve { conic } => Ok(to_json(&inputs::conic(&conic)?)),
        WallsCommand::Sample { conic, beta_lo, beta_hi, samples, csv, precision } => {
            let wc = inputs::conic(&conic)?;
            if beta_lo > beta_hi {
                return Err(Error::EmptyWindow(format!("beta range [{beta_lo}, {beta_hi}]")));
            }
            let pts = sample_wall(&wc, &beta_lo, &beta_hi, samples);
            if csv {
                let mut text = String::from("beta,t\n");
                for (b, t) in &pts {
                    let _ = writeln!(text, "{},{}", to_decimal(b, precision), to_decimal(t, precision));
                }
                return Ok(Output::Text(text));
            }
            let rows: Vec<Value> = pts.iter().map(|(b, t)| json!({ "beta": s(b), "t": s(t) })).collect();
            Ok(Output::Json(Value::Array(rows)))
        }
        WallsCommand::Intersects { conic, window } => {
            let wc = inputs::conic(&conic)?;
            let win = inputs::window(&window)?;
            let meets = wall_intersects_window(&wc, &win)?;
            let witness = wall_window_witness(&wc, &win)?
                .map(|(b, t)| json!({ "beta": s(&b), "t": s(&t) }))
                .unwrap_or(Value::Null);
            Ok(Output::Json(json!({ "intersects": meets, "witness": witness })))
        }
        WallsCommand::SolveT { conic, beta } => {
            let wc = inputs::conic(&conic)?;
            Ok(Output::Json(match solve_t(&wc, &beta.beta) {
                TSolution::Value(t) => json!({ "t": s(&t) }),
                TSolution::NoSolution => json!({ "t": null }),
                TSolution::IdenticallySatisfied => json!({ "identically_satisfied": true }),
            }))
        }
        WallsCommand::OnWall { conic, beta, t } => {
            let (v, w) = inputs::classes(&conic)?;
            Ok(Output::Json(json!({ "on_wall": walls::on_wall(&v, &w, &beta.beta, &t)? })))
        }
    }
}

fn region(a: RegionArgs) -> Result<Output> {
    let holds = match a.which {
        RegionKind::P3 | RegionKind::P3Lemma => {
            let (Some(s_), Some(t)) = (&a.s, &a.t) else {
                return Err(Error::InvalidArgument("this region needs --s and --t".into()));
            };
            if let RegionKind::P3 = a.which {
                walls::region_p3_theorem(s_, t)
            } else {
                walls::region_p3_lemma(s_, t)
            }
        }
        RegionKind::Quadric => match Scale::from_args(&a.scale)? {
            Scale::Alpha(x) => walls::region_quadric(&x)?,
            Scale::Squared(t) => walls::region_quadric_t(&t)?,
        },
        RegionKind::P3Intro => match Scale::from_args(&a.scale)? {
            Scale::Alpha(x) => walls::region_p3_intro(&x)?,
            Scale::Squared(t) => walls::region_p3_intro_t(&t)?,
        },
    };
    Ok(Output::Json(json!({ "holds": holds })))
}

fn scenario(cmd: ScenarioCommand) -> Result<Output> {
    match cmd {
        ScenarioCommand::Divisor { r, m, s: s_, scale, model } => {
            let model = inputs::model(&model)?;
            let sc = match Scale::from_args(&scale)? {
                Scale::Alpha(a) => DivisorScenario::new(r, m, a, s_, model)?,
                Scale::Squared(t) => DivisorScenario::with_alpha_sq(r, m, t, s_, model)?,
            };
            let rep = prop61_verify(&sc)?;
            Ok(Output::Json(json!({
                "scenario": sc,
                "bog1_bound": s(&bog1_bound(&sc)),
                "bog2_bound": s(&bog2_bound(&sc)),
                "rez_lower_bound": s(&rez_lower_bound(&sc)?),
                "holds": rep.holds,
                "active_case": rep.active_case,
                "margin": s(&rep.margin),
                "class": rep.class,
            })))
        }
        ScenarioCommand::Curve { big_d, dcurve, g } => {
            let cs = CurveScenario::new(big_d, dcurve, g)?;
            Ok(Output::Json(json!({
                "scenario": cs,
                "ch3_structure_sheaf": s(&cs.ch3_structure_sheaf()),
                "class": curve_ideal_class(&cs)?,
                "t_scale_sq": s(&cs.t_scale_sq()),
                "strong_margin": s(&curve_strong_margin(&cs)?),
            })))
        }
        ScenarioCommand::Castelnuovo { from, to } => Ok(to_json(&castelnuovo_verify(from, to)?)),
    }
}

fn class_cmd(cmd: ClassCommand) -> Result<Output> {
    match cmd {
        ClassCommand::Twist { class, beta } => Ok(to_json(&twist(&inputs::class(&class)?, &beta.beta))),
        ClassCommand::Dual { class } => Ok(to_json(&dualize(&inputs::class(&class)?))),
        ClassCommand::Tensor { class, k } => Ok(to_json(&tensor_line(&inputs::class(&class)?, &k))),
        ClassCommand::Degrees { class, scale, model } => {
            let alpha = Scale::from_args(&scale)?.alpha()?;
            Ok(to_json(&degrees(&inputs::class(&class)?, &inputs::model(&model)?, &alpha)?))
        }
        ClassCommand::Lattice { class, model } => {
            let ok = is_lattice_point(&inputs::class(&class)?, &inputs::model(&model)?);
            Ok(Output::Json(json!({ "lattice_point": ok })))
        }
        ClassCommand::Grr { r, lambda, s: s_, m, beta, model } => {
            let model = inputs::model(&model)?;
            Ok(to_json(&grr_pushforward(&r, &lambda, &s_, &m, &model, &beta.beta)?))
        }
    }
}

fn run_verify() -> Output {
    let results = verify::run_all();
    let text = verify::render(&results);
    if results.iter().all(|c| c.passed) {
        Output::Text(text)
    } else {
        Output::Failed(text)
    }
}
