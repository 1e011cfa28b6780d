//! `tiltwall` command-line front end.
//!
//! Every rational on the command line and on the wire is a canonical
//! lowest-terms string. Results go to stdout as JSON (or CSV for samples);
//! failures go to stderr as `{"error": code, "detail": ...}`.

mod commands;
mod inputs;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tiltwall_core::{Error, Q};

pub use inputs::resolve_model;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

fn rational(s: &str) -> Result<Q, String> {
    tiltwall_core::parse_q(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "tiltwall", version, about = "Exact tilt-stability numerics on Picard-rank-one threefolds")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Central charges: z, zbar, zst and the polynomial charges zp, zb, zinf.
    Charge(ChargeArgs),
    /// Slopes mu, nu and mu-hat.
    Slope(SlopeArgs),
    /// Compare limit phases of two polynomial charges.
    PolyCompare(PolyCompareArgs),
    /// Inequality checks and discriminants.
    Check(CheckArgs),
    /// Wall geometry and pseudo-wall enumeration.
    Walls {
        #[command(subcommand)]
        command: WallsCommand,
    },
    /// Explicit stability regions.
    Region(RegionArgs),
    /// Worked divisor and curve scenarios.
    Scenario {
        #[command(subcommand)]
        command: ScenarioCommand,
    },
    /// Chern character arithmetic.
    Class {
        #[command(subcommand)]
        command: ClassCommand,
    },
    /// Run the built-in acceptance suite.
    Verify,
}

#[derive(Args, Debug, Clone)]
struct ModelArg {
    /// p3 | quadric | hypersurface:D | custom:d,lam2,lam3 | a name looked up in TILTWALL_MODEL_PATH
    #[arg(long, default_value = "p3")]
    model: String,
}

#[derive(Args, Debug, Clone)]
struct ClassArgs {
    /// Class as JSON: {"r":..,"c":..,"d2":..,"d3":..}
    #[arg(long, conflicts_with = "line_bundle")]
    class: Option<String>,
    /// Use ch(O(kH)).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    line_bundle: Option<Q>,
    /// Apply the shift functor [n].
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i64,
}

#[derive(Args, Debug, Clone)]
struct ScaleArgs {
    /// Ample scale alpha (omega = alpha H).
    #[arg(long, value_parser = rational, conflicts_with = "t_squared", allow_hyphen_values = true)]
    alpha: Option<Q>,
    /// t = alpha^2, for loci where alpha is irrational.
    #[arg(long = "t-squared", value_parser = rational, allow_hyphen_values = true)]
    t_squared: Option<Q>,
}

#[derive(Args, Debug, Clone)]
struct BetaArg {
    #[arg(long, value_parser = rational, default_value = "0", allow_hyphen_values = true)]
    beta: Q,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ChargeKind {
    Z,
    Zbar,
    Zst,
    Zp,
    Zb,
    Zinf,
}

#[derive(Args, Debug)]
struct ChargeArgs {
    #[arg(long, value_enum)]
    kind: ChargeKind,
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    scale: ScaleArgs,
    #[command(flatten)]
    beta: BetaArg,
    #[command(flatten)]
    model: ModelArg,
    /// zst: coefficient of ch_1.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    s: Option<Q>,
    /// zst: coefficient of ch_0.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t: Option<Q>,
    /// Polynomial charges: evaluate at this m instead of printing coefficients.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    m: Option<Q>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SlopeKind {
    Mu,
    Nu,
    Muhat,
}

#[derive(Args, Debug)]
struct SlopeArgs {
    #[arg(long, value_enum)]
    kind: SlopeKind,
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    scale: ScaleArgs,
    #[command(flatten)]
    beta: BetaArg,
    #[command(flatten)]
    model: ModelArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PolyKind {
    Zp,
    Zb,
    Zinf,
}

#[derive(Args, Debug)]
struct PolyCompareArgs {
    /// First charge as JSON {"coeffs":[{"re":..,"im":..} x4]}.
    #[arg(long, requires = "q")]
    p: Option<String>,
    /// Second charge as JSON.
    #[arg(long)]
    q: Option<String>,
    /// Build both charges from classes instead.
    #[arg(long, value_enum, conflicts_with_all = ["p", "q"])]
    kind: Option<PolyKind>,
    /// First class: JSON or a rational k for O(kH).
    #[arg(long, allow_hyphen_values = true)]
    left: Option<String>,
    /// Second class: JSON or a rational k for O(kH).
    #[arg(long, allow_hyphen_values = true)]
    right: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    left_shift: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    right_shift: i64,
    #[command(flatten)]
    scale: ScaleArgs,
    #[command(flatten)]
    beta: BetaArg,
    #[command(flatten)]
    model: ModelArg,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// bg:a,b | strong | con14 | identity74 | discriminants | delta | smin | minch1 | valid-ab:a,b
    #[arg(long)]
    kind: String,
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    scale: ScaleArgs,
    #[command(flatten)]
    beta: BetaArg,
    #[command(flatten)]
    model: ModelArg,
}

#[derive(Args, Debug, Clone)]
struct WindowArgs {
    /// Window as JSON {"beta_lo","beta_hi","t_lo","t_hi"}; overrides the flags.
    #[arg(long)]
    window: Option<String>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    beta_lo: Option<Q>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    beta_hi: Option<Q>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t_lo: Option<Q>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t_hi: Option<Q>,
}

#[derive(Args, Debug, Clone)]
struct ConicArgs {
    /// Conic as JSON {"u0","u1","q0","q1","q2"}.
    #[arg(long, conflicts_with_all = ["v", "w"])]
    conic: Option<String>,
    /// First class: JSON or a rational k for O(kH).
    #[arg(long, allow_hyphen_values = true, requires = "w")]
    v: Option<String>,
    /// Second class.
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
}

#[derive(Subcommand, Debug)]
enum WallsCommand {
    /// Pseudo-walls of a class meeting a window.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = tiltwall_core::walls::DEFAULT_MAX_RANK)]
        max_rank: u32,
        /// Worker threads; output does not depend on it.
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        model: ModelArg,
    },
    /// The wall conic of two classes.
    Curve {
        #[command(flatten)]
        conic: ConicArgs,
    },
    /// Evenly spaced points of a wall.
    Sample {
        #[command(flatten)]
        conic: ConicArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        beta_lo: Q,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        beta_hi: Q,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        csv: bool,
        /// Decimal digits in CSV output.
        #[arg(long, default_value_t = 12)]
        precision: usize,
    },
    /// Whether a wall meets a window, with a rational witness.
    Intersects {
        #[command(flatten)]
        conic: ConicArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Solve a wall for t at fixed beta.
    SolveT {
        #[command(flatten)]
        conic: ConicArgs,
        #[command(flatten)]
        beta: BetaArg,
    },
    /// Whether (beta, t) lies on the wall of two classes.
    OnWall {
        #[command(flatten)]
        conic: ConicArgs,
        #[command(flatten)]
        beta: BetaArg,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        t: Q,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RegionKind {
    P3,
    #[value(name = "p3-lemma")]
    P3Lemma,
    Quadric,
    #[value(name = "p3-intro")]
    P3Intro,
}

#[derive(Args, Debug)]
struct RegionArgs {
    #[arg(value_enum)]
    which: RegionKind,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    s: Option<Q>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t: Option<Q>,
    #[command(flatten)]
    scale: ScaleArgs,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum ScenarioCommand {
    /// Pushforward of a sheaf on S in |mH|.
    Divisor {
        #[arg(long, value_parser = rational)]
        r: Q,
        #[arg(long)]
        m: u64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        s: Q,
        #[command(flatten)]
        scale: ScaleArgs,
        #[command(flatten)]
        model: ModelArg,
    },
    /// L (x) I_C for a curve on a degree-D hypersurface.
    Curve {
        #[arg(long = "D")]
        big_d: u64,
        #[arg(long = "d")]
        dcurve: u64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
    },
    /// Genus inequality sweep over hypersurface degrees.
    Castelnuovo {
        #[arg(long, default_value_t = 4)]
        from: u64,
        #[arg(long, default_value_t = 12)]
        to: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ClassCommand {
    /// ch . e^{-beta H}
    Twist {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        beta: BetaArg,
    },
    /// Class of the derived dual shifted by one.
    Dual {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// E (x) O(kH)
    Tensor {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        k: Q,
    },
    /// Pairings omega^{3-i} ch_i.
    Degrees {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        scale: ScaleArgs,
        #[command(flatten)]
        model: ModelArg,
    },
    /// Integrality against the model's lattice.
    Lattice {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        model: ModelArg,
    },
    /// Pushforward from a divisor in |mH|.
    Grr {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        r: Q,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        lambda: Q,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        s: Q,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        m: Q,
        #[command(flatten)]
        beta: BetaArg,
        #[command(flatten)]
        model: ModelArg,
    },
}

/// Output of a successful command.
pub(crate) enum Output {
    Json(serde_json::Value),
    Text(String),
    /// Printed, then mapped to the verify-failure exit code.
    Failed(String),
}

fn exit_code(e: &Error) -> i32 {
    if e.is_parse() {
        EXIT_PARSE
    } else {
        EXIT_PRECONDITION
    }
}

fn report(err: &mut dyn Write, code: &str, detail: &str) {
    let _ = writeln!(err, "{}", json!({ "error": code, "detail": detail }));
}

/// Run the CLI on `args` (including the program name) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            report(err, "parse-error", e.to_string().trim());
            return EXIT_PARSE;
        }
    };
    finish(commands::dispatch(cli.command), out, err)
}

fn finish(res: Result<Output, Error>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match res {
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{v}");
            EXIT_OK
        }
        Ok(Output::Text(s)) => {
            let _ = write!(out, "{s}");
            EXIT_OK
        }
        Ok(Output::Failed(s)) => {
            let _ = write!(out, "{s}");
            EXIT_VERIFY
        }
        Err(e) => {
            report(err, e.code(), &e.to_string());
            exit_code(&e)
        }
    }
}
