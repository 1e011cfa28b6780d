//! Turning command-line strings into core values.

use std::env;
use std::fs;
use std::path::PathBuf;

use serde::de::DeserializeOwned;

use tiltwall_core::numlattice::line_bundle;
use tiltwall_core::rational::sqrt_exact;
use tiltwall_core::walls::{wall_curve, WallConic, Window};
use tiltwall_core::{parse_q, Error, NumClass, Result, VarietyModel, Q};

use crate::{ClassArgs, ConicArgs, ModelArg, ScaleArgs, WindowArgs};

pub(crate) fn from_json<T: DeserializeOwned>(what: &str, s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn parse_u64(what: &str, s: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::Parse(format!("{what}: expected a positive integer, got {s:?}")))
}

/// `p3`, `quadric`, `hypersurface:D`, `custom:d,lam2,lam3`, or the name of a
/// `<name>.json` file in one of the `:`-separated `TILTWALL_MODEL_PATH` dirs.
pub fn resolve_model(sel: &str) -> Result<VarietyModel> {
    match sel {
        "p3" => return Ok(VarietyModel::p3()),
        "quadric" => return Ok(VarietyModel::quadric()),
        _ => {}
    }
    if let Some(deg) = sel.strip_prefix("hypersurface:") {
        return VarietyModel::hypersurface(parse_u64("hypersurface degree", deg)?);
    }
    if let Some(rest) = sel.strip_prefix("custom:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let [d, lam2, lam3] = parts.as_slice() else {
            return Err(Error::Parse(format!("custom model needs d,lam2,lam3, got {rest:?}")));
        };
        return VarietyModel::new(
            "custom",
            parse_u64("d", d)?,
            parse_u64("lam2", lam2)?,
            parse_u64("lam3", lam3)?,
        );
    }
    let path = env::var_os("TILTWALL_MODEL_PATH").unwrap_or_default();
    for dir in env::split_paths(&path) {
        let file: PathBuf = dir.join(format!("{sel}.json"));
        if let Ok(text) = fs::read_to_string(&file) {
            return from_json(&format!("model file {}", file.display()), &text);
        }
    }
    Err(Error::InvalidModel(format!(
        "unknown model {sel:?} (not built in and not found in TILTWALL_MODEL_PATH)"
    )))
}

pub(crate) fn model(arg: &ModelArg) -> Result<VarietyModel> {
    resolve_model(&arg.model)
}

/// JSON class, or a rational `k` meaning `O(kH)`.
pub(crate) fn class_arg(what: &str, s: &str) -> Result<NumClass> {
    if s.trim_start().starts_with('{') {
        from_json(what, s)
    } else {
        Ok(line_bundle(&parse_q(s)?))
    }
}

pub(crate) fn class(args: &ClassArgs) -> Result<NumClass> {
    let base = match (&args.class, &args.line_bundle) {
        (Some(json), None) => from_json("--class", json)?,
        (None, Some(k)) => line_bundle(k),
        _ => return Err(Error::InvalidArgument("give --class or --line-bundle".into())),
    };
    Ok(base.shift(args.shift))
}

/// The ample scale as given on the command line.
pub(crate) enum Scale {
    Alpha(Q),
    Squared(Q),
}

impl Scale {
    pub fn from_args(args: &ScaleArgs) -> Result<Self> {
        match (&args.alpha, &args.t_squared) {
            (Some(a), None) => Ok(Scale::Alpha(a.clone())),
            (None, Some(t)) => Ok(Scale::Squared(t.clone())),
            _ => Err(Error::InvalidArgument("give --alpha or --t-squared".into())),
        }
    }

    pub fn t(&self) -> Q {
        match self {
            Scale::Alpha(a) => a * a,
            Scale::Squared(t) => t.clone(),
        }
    }

    /// `alpha` itself; from `--t-squared` only when `t` is a rational square.
    pub fn alpha(&self) -> Result<Q> {
        match self {
            Scale::Alpha(a) => Ok(a.clone()),
            Scale::Squared(t) => match sqrt_exact(t) {
                Some(a) if a > Q::from_integer(0.into()) => Ok(a),
                _ => Err(Error::InvalidArgument(format!(
                    "this quantity needs alpha itself, and sqrt({t}) is not rational; pass --alpha"
                ))),
            },
        }
    }
}

pub(crate) fn window(args: &WindowArgs) -> Result<Window> {
    if let Some(json) = &args.window {
        return from_json("--window", json);
    }
    match (&args.beta_lo, &args.beta_hi, &args.t_lo, &args.t_hi) {
        (Some(bl), Some(bh), Some(tl), Some(th)) => {
            Window::new(bl.clone(), bh.clone(), tl.clone(), th.clone())
        }
        _ => Err(Error::InvalidArgument(
            "give --window or all of --beta-lo --beta-hi --t-lo --t-hi".into(),
        )),
    }
}

pub(crate) fn classes(args: &ConicArgs) -> Result<(NumClass, NumClass)> {
    match (&args.v, &args.w) {
        (Some(v), Some(w)) => Ok((class_arg("--v", v)?, class_arg("--w", w)?)),
        _ => Err(Error::InvalidArgument("give --v and --w".into())),
    }
}

pub(crate) fn conic(args: &ConicArgs) -> Result<WallConic> {
    if let Some(json) = &args.conic {
        return from_json("--conic", json);
    }
    let (v, w) = classes(args)?;
    Ok(wall_curve(&v, &w))
}
