//! Command-line runner. Each subcommand declares a parameter schema; values
//! resolve as defaults < `--config` file < flags, and every output begins
//! with the resolved block as `# key=value` lines.

mod commands;
mod config;
mod verify;

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Arg, ArgAction, ArgMatches, Command};

pub use config::{parse_config, parse_real, CliError, CliResult, ParamSpec, Params};
pub use verify::{run_checks, CheckOutcome};

use config::param;

/// Lines produced by a subcommand: extra comments, then CSV rows.
#[derive(Debug, Default)]
pub struct Report {
    pub comments: Vec<String>,
    pub rows: Vec<String>,
    /// False when a requested check failed; the run exits 1.
    pub passed: bool,
}

impl Report {
    fn new(header: &str) -> Self {
        Report {
            comments: Vec::new(),
            rows: vec![header.to_string()],
            passed: true,
        }
    }

    fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let line: Vec<String> = fields.into_iter().map(|s| s.as_ref().to_string()).collect();
        self.rows.push(line.join(","));
    }
}

type Handler = fn(&Params, u64) -> CliResult<Report>;

pub struct Subcommand {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [ParamSpec],
    handler: Handler,
}

pub const SUBCOMMANDS: &[Subcommand] = &[
    Subcommand {
        name: "wedges",
        about: "Stokes wedges and anti-Stokes lines of the -(iz)^N oscillator",
        params: &[param("N", "4", "exponent N >= 2")],
        handler: commands::wedges,
    },
    Subcommand {
        name: "contour",
        about: "Sample a complex integration contour",
        params: &[
            param("kind", "z1", "z1|z2"),
            param("N", "4", "exponent N"),
            param("a", "1", "z1 hyperbola parameter"),
            param("samples", "101", "number of sample points"),
            param("range", "10", "samples cover x in [-range, range]"),
        ],
        handler: commands::contour,
    },
    Subcommand {
        name: "star",
        about: "Moyal product or commutator of two polynomial symbols",
        params: &[
            param("f", "1 0 1 0", "left symbol, `deg_x deg_p re im; ...`"),
            param("g", "0 1 1 0", "right symbol"),
            param("op", "product", "product|commutator"),
        ],
        handler: commands::star,
    },
    Subcommand {
        name: "kappa",
        about: "Exact kappa coefficients of the closed similarity sums",
        params: &[param("upto", "7", "largest odd index")],
        handler: commands::kappa,
    },
    Subcommand {
        name: "bch",
        about: "Conjugation e^q O e^-q by the nested-commutator series",
        params: &[
            param("q", "0 2 1 0", "exponent symbol"),
            param("o", "1 0 1 0", "conjugated symbol"),
            param("max-order", "32", "series cut-off"),
        ],
        handler: commands::bch,
    },
    Subcommand {
        name: "metric-verify",
        about: "Residual of the metric equation for eta^2 = exp(E)",
        params: &[
            param("H", "0 2 0.5 0; 2 0 0.5 0; 1 1 0 -1", "non-Hermitian symbol"),
            param("exponent", "2 0 1 0", "exponent E of eta^2"),
            param("tol", "1e-10", "acceptance threshold on the residual"),
        ],
        handler: commands::metric_verify,
    },
    Subcommand {
        name: "metric-solve",
        about: "Solve for a polynomial metric exponent by least squares",
        params: &[
            param("H", "0 2 0.5 0; 2 0 0.5 0; 1 1 0 -1", "non-Hermitian symbol"),
            param("monomials", "2,0;0,2;1,1", "exponent monomials `dx,dp;...`"),
        ],
        handler: commands::metric_solve,
    },
    Subcommand {
        name: "swanson",
        about: "Generalized Swanson pair: h, H, q, X, P",
        params: &[
            param("n", "2", "potential power"),
            param("m", "2", "generator power"),
            param("alpha", "1", "potential strength"),
            param("g", "1", "coupling"),
        ],
        handler: commands::swanson,
    },
    Subcommand {
        name: "spiked",
        about: "Spiked oscillator energies or matrix elements",
        params: &[
            param("lambda", "0.5", "frequency parameter"),
            param("alpha", "0.2", "barrier parameter, > -1"),
            param("xi", "0", "metric parameter"),
            param("variant", "p_squared", "p_squared|p_shift"),
            param("levels", "5", "number of levels"),
            param("table", "energies", "energies|elements"),
        ],
        handler: commands::spiked,
    },
    Subcommand {
        name: "x4",
        about: "Real-line image of the -x^4 oscillator: h0, H, h, q, X",
        params: &[param("alpha", "1", "positive parameter"), param("g", "1", "coupling")],
        handler: commands::x4,
    },
    Subcommand {
        name: "spectrum",
        about: "Finite-difference spectrum of a Hermitian model",
        params: &[
            param("model", "spiked", "spiked|x4h|xt4"),
            param("params", "lambda=0.5,alpha=0.2", "model parameters k=v,..."),
            param("grid", "0,12,1000", "x_min,x_max,points"),
            param("levels", "5", "number of levels"),
            param("refine", "true", "Richardson-extrapolate against a doubled grid"),
        ],
        handler: commands::spectrum,
    },
    Subcommand {
        name: "transition",
        about: "First-order transition probability sweep over omega and xi",
        params: &[
            param("model", "spiked", "spiked"),
            param("n", "2", "initial level"),
            param("m", "3", "final level"),
            param("lambda", "0.5", "frequency parameter"),
            param("alpha", "0.2", "barrier parameter"),
            param("E0", "0.005", "field amplitude"),
            param("omega", "1.5:2.5:200", "lo:hi:steps"),
            param("xi", "0,1.5,3", "metric parameters"),
            param("tau", "35pi", "pulse length"),
        ],
        handler: commands::transition,
    },
    Subcommand {
        name: "propagate",
        about: "Crank-Nicolson propagation of a spiked-oscillator level in a sine pulse",
        params: &[
            param("lambda", "0.5", "frequency parameter"),
            param("alpha", "0.2", "barrier parameter"),
            param("n", "2", "initial level"),
            param("observe", "3", "level whose population is reported"),
            param("E0", "0.005", "field amplitude"),
            param("omega", "1.8", "carrier frequency"),
            param("tau", "35pi", "pulse length"),
            param("T", "35pi", "final time"),
            param("grid", "0,14,1500", "x_min,x_max,points"),
            param("dt", "0.005", "largest time step"),
            param("every", "200", "report every k steps"),
        ],
        handler: commands::propagate,
    },
    Subcommand {
        name: "verify-all",
        about: "Run the identity suite and print PASS/FAIL per check",
        params: &[param("draws", "3", "random parameter draws per family")],
        handler: commands::verify_all,
    },
];

fn build_cli() -> Command {
    let mut cmd = Command::new("pseudoherm")
        .about("Pseudo-Hermitian quantum mechanics toolkit")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(Arg::new("config").long("config").global(true).value_name("FILE").help("key=value parameter file"))
        .arg(Arg::new("output").long("output").global(true).value_name("FILE").help("write CSV here instead of stdout"))
        .arg(
            Arg::new("seed")
                .long("seed")
                .global(true)
                .value_name("INT")
                .value_parser(clap::value_parser!(u64))
                .default_value("0")
                .help("seed for randomized checks"),
        )
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(["csv"])
                .default_value("csv")
                .help("output format"),
        );
    for sub in SUBCOMMANDS {
        let mut sc = Command::new(sub.name).about(sub.about);
        for p in sub.params {
            sc = sc.arg(
                Arg::new(p.name)
                    .long(p.name)
                    .value_name("VALUE")
                    .allow_hyphen_values(true)
                    .action(ArgAction::Set)
                    .help(format!("{} [default: {}]", p.help, p.default)),
            );
        }
        cmd = cmd.subcommand(sc);
    }
    cmd
}

fn flag_values(sub: &Subcommand, m: &ArgMatches) -> BTreeMap<String, String> {
    sub.params
        .iter()
        .filter_map(|p| m.get_one::<String>(p.name).map(|v| (p.name.to_string(), v.clone())))
        .collect()
}

/// Runs with `argv` (including the program name), writing to the process
/// streams. Returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_to<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let matches = match build_cli().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let (name, sub_m) = matches.subcommand().expect("subcommand required");
    let sub = SUBCOMMANDS.iter().find(|s| s.name == name).expect("registered subcommand");
    let seed = *sub_m.get_one::<u64>("seed").expect("defaulted");
    let format = sub_m.get_one::<String>("format").expect("defaulted").clone();

    let config = match sub_m.get_one::<String>("config") {
        Some(path) => {
            let loaded = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("--config {path}: {e}")))
                .and_then(|t| parse_config(&t));
            match loaded {
                Ok(c) => c,
                Err(e) => return report_error(e, err),
            }
        }
        None => Vec::new(),
    };
    let params = match Params::resolve(sub.params, &config, &flag_values(sub, sub_m)) {
        Ok(p) => p,
        Err(e) => return report_error(e, err),
    };
    let report = match (sub.handler)(&params, seed) {
        Ok(r) => r,
        Err(e) => return report_error(e, err),
    };

    let mut text = String::new();
    text.push_str(&format!("# subcommand={name}\n# seed={seed}\n# format={format}\n"));
    for (k, v) in params.entries() {
        text.push_str(&format!("# {k}={v}\n"));
    }
    for c in &report.comments {
        text.push_str(&format!("# {c}\n"));
    }
    for r in &report.rows {
        text.push_str(r);
        text.push('\n');
    }
    let written = match sub_m.get_one::<String>("output") {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("--output {path}: {e}")),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    if report.passed {
        0
    } else {
        let _ = writeln!(err, "error: one or more checks failed");
        1
    }
}

fn report_error(e: CliError, err: &mut dyn Write) -> i32 {
    match e {
        CliError::Usage(msg) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        CliError::Numeric(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
