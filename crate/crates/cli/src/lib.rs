//! Command-line front end. Every subcommand is a thin adapter over a
//! `riordan-core` call and prints that call's own serialization.

use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use riordan_core::delannoy::{
    self as dl, enumerate_paths, equivalence_classes, equivalence_classes_oracle, pascal_factorization_check,
    poly_rows_to_strings, q_matrix, q_matrix_symbolic, weight_by_classes, weight_closed, weight_recursive,
    wn_generating_function,
};
use riordan_core::diagonals::{bivariate_gf, diagonal_family, gk_diagonal_check, qcone_check, sprugnoli_bgf};
use riordan_core::fixtures::{self, FIXTURES};
use riordan_core::palindromic::{self as pal, InvolutionClass, KimParams, PalindromicParams};
use riordan_core::poly::WeightPoly;
use riordan_core::rational::parse_rational;
use riordan_core::riordan::{rows_to_csv, rows_to_strings, rows_to_table};
use riordan_core::{parse_series, DomainError, PowerSeries, Rational, RiordanError, RiordanMatrix};

/// Overrides the default truncation order of 16.
pub const ORDER_ENV: &str = "RIORDAN_DEFAULT_ORDER";
pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "riordan", version, about = "Exact Riordan matrices, diagonals, palindromic triangles and Delannoy paths")]
struct RiordanCli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Parser, Debug)]
#[command(name = "delannoy", version, about = "Weighted Delannoy paths modulo HV <-> VH")]
struct DelannoyCli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: DelannoyCommand,
}

#[derive(Args, Debug)]
struct Size {
    /// Number of rows (or coefficients) to compute.
    #[arg(long, alias = "order")]
    rows: Option<usize>,
}

impl Size {
    fn get(&self, default: usize) -> usize {
        self.rows.unwrap_or(default)
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("f_input").required(true).args(["expr_f", "coeffs_f"])))]
#[command(group(ArgGroup::new("g_input").required(true).args(["expr_g", "coeffs_g"])))]
struct MatrixInput {
    /// Closed form for f, e.g. "1/(1-x)^2".
    #[arg(long, allow_hyphen_values = true)]
    expr_f: Option<String>,
    /// Comma-separated coefficients of f, e.g. "1,0,3/2".
    #[arg(long, allow_hyphen_values = true)]
    coeffs_f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    expr_g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    coeffs_g: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("l_input").required(true).args(["expr_l", "coeffs_l"])))]
#[command(group(ArgGroup::new("m_input").required(true).args(["expr_m", "coeffs_m"])))]
struct SecondInput {
    /// Closed form for the right factor's f.
    #[arg(long, allow_hyphen_values = true)]
    expr_l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    coeffs_l: Option<String>,
    /// Closed form for the right factor's g.
    #[arg(long, allow_hyphen_values = true)]
    expr_m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    coeffs_m: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("gamma_input").required(true).args(["expr_gamma", "coeffs_gamma"])))]
struct GammaInput {
    #[arg(long, allow_hyphen_values = true)]
    expr_gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    coeffs_gamma: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("g_input").required(true).args(["expr_g", "coeffs_g"])))]
struct GInput {
    #[arg(long, allow_hyphen_values = true)]
    expr_g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    coeffs_g: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("params").multiple(true).args(["f0", "g0", "f1"]).conflicts_with("kim")))]
#[command(group(ArgGroup::new("kim").multiple(true).args(["d0", "h1", "h2"])))]
#[command(group(ArgGroup::new("any_params").required(true).multiple(true).args(["f0", "g0", "f1", "d0", "h1", "h2"])))]
struct ParamInput {
    #[arg(long, value_parser = rational, allow_hyphen_values = true, requires_all = ["g0", "f1"])]
    f0: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, requires_all = ["f0", "f1"])]
    g0: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, requires_all = ["f0", "g0"])]
    f1: Option<Rational>,
    /// Kim parameters d0, h1, h2 instead of f0, g0, f1.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, requires_all = ["h1", "h2"])]
    d0: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, requires_all = ["d0", "h2"])]
    h1: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, requires_all = ["d0", "h1"])]
    h2: Option<Rational>,
}

#[derive(Args, Debug)]
struct Weights {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    b: Rational,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Leading rows of T(f | g).
    Show {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        size: Size,
    },
    /// Diagonal generating functions and their bivariate forms.
    Diag {
        #[command(flatten)]
        input: MatrixInput,
        /// Number of diagonals (grid rows).
        #[command(flatten)]
        size: Size,
        /// Coefficients per diagonal; defaults to --rows.
        #[arg(long)]
        cols: Option<usize>,
        /// Grid of [z^n x^k] f(z)/(g(z)-x).
        #[arg(long, conflicts_with = "sprugnoli")]
        bivariate: bool,
        /// Grid of [z^n x^k] f(z)/(g(z)-xz).
        #[arg(long)]
        sprugnoli: bool,
    },
    /// T(f | g) T(l | m).
    Product {
        #[command(flatten)]
        left: MatrixInput,
        #[command(flatten)]
        right: SecondInput,
        #[command(flatten)]
        size: Size,
    },
    /// Inverse of T(f | g).
    Inverse {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        size: Size,
    },
    /// A-sequence of T(f | g).
    Aseq {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        size: Size,
    },
    /// (f/g) gamma(x/g).
    Apply {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        gamma: GammaInput,
        #[command(flatten)]
        size: Size,
    },
    /// Palindromic Riordan matrices.
    Palindromic {
        #[command(subcommand)]
        command: PalindromicCommand,
    },
    /// First diagonals of T(g | g) with g in 1 + x^{k-1} K[[x]].
    GkCheck {
        #[command(flatten)]
        input: GInput,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        max_j: usize,
    },
    /// Diagonal closed forms of the q-cone pair F_{m,q}, Fbar_{m,q}.
    Qcones {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        q: i64,
        #[command(flatten)]
        size: Size,
    },
    /// Weighted Delannoy paths.
    Delannoy {
        #[command(subcommand)]
        command: DelannoyCommand,
    },
    /// Reference tables.
    Fixtures {
        /// Print one fixture.
        #[arg(long)]
        name: Option<String>,
        /// Regenerate and compare every fixture (or only --name).
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand, Debug)]
enum PalindromicCommand {
    /// T(f0^2/(f0-f1 x) | f0(g0-x)/(f0-f1 x)).
    Construct {
        #[command(flatten)]
        params: ParamInput,
        #[command(flatten)]
        size: Size,
    },
    /// Decide palindromicity of T(f | g) on a prefix.
    Check {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        size: Size,
    },
    /// Involution, pseudo-involution or neither.
    Classify {
        #[command(flatten)]
        params: ParamInput,
        #[command(flatten)]
        size: Size,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Evaluator {
    Closed,
    Recursive,
    Classes,
}

#[derive(Subcommand, Debug)]
enum DelannoyCommand {
    /// Every path to (n, m), lexicographically.
    Paths {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Equivalence classes with canonical representatives.
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Also list every word of each class.
        #[arg(long)]
        list_words: bool,
    },
    /// w_{a,b}(n, m).
    Weight {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, required_unless_present = "symbolic")]
        a: Option<Rational>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, required_unless_present = "symbolic")]
        b: Option<Rational>,
        /// Polynomial in a and b.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        symbolic: bool,
        #[arg(long, value_enum, default_value_t = Evaluator::Closed)]
        evaluator: Evaluator,
    },
    /// Generating function of w_{a,b}(n, m) over m.
    Gf {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weights: Weights,
        #[command(flatten)]
        size: Size,
    },
    /// Compare the weight grid with P_a D_b P_a^T.
    Factorize {
        #[command(flatten)]
        weights: Weights,
        #[command(flatten)]
        size: Size,
    },
    /// Palindromic (a,b)-Delannoy matrix q(n,k) = w(n-k, k).
    Qmatrix {
        #[arg(long, value_parser = rational, allow_hyphen_values = true, required_unless_present = "symbolic")]
        a: Option<Rational>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, required_unless_present = "symbolic")]
        b: Option<Rational>,
        #[arg(long, conflicts_with_all = ["a", "b"])]
        symbolic: bool,
        #[command(flatten)]
        size: Size,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

type CliResult = Result<(), CliError>;

fn domain(flag: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Domain(format!("{flag}: {e}"))
}

/// Reads the default order from the environment; an unusable value is a
/// usage error rather than a silent fallback.
pub fn default_order_from_env() -> Result<usize, String> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("{ORDER_ENV} must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

struct Ctx<'a> {
    format: Format,
    default_order: usize,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: &str) {
        let _ = writeln!(self.out, "{s}");
    }

    fn raw(&mut self, s: &str) {
        let _ = write!(self.out, "{s}");
    }

    fn rows(&mut self, rows: &[Vec<String>], json: impl FnOnce() -> Value) {
        match self.format {
            Format::Table => self.raw(&rows_to_table(rows)),
            Format::Csv => self.raw(&rows_to_csv(rows)),
            Format::Json => self.line(&json().to_string()),
        }
    }

    fn matrix(&mut self, m: &RiordanMatrix, rows: usize) -> CliResult {
        let prefix = m.prefix(rows).map_err(|e| domain("--rows", e))?;
        let strs = rows_to_strings(prefix);
        let json = m.to_json_rows(rows).map_err(|e| domain("--rows", e))?;
        self.rows(&strs, || json);
        Ok(())
    }

    fn series(&mut self, s: &PowerSeries) {
        match self.format {
            Format::Table => self.line(&s.to_string()),
            Format::Csv => {
                let cells: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
                self.line(&cells.join(","));
            }
            Format::Json => self.line(&s.to_json().to_string()),
        }
    }

    fn report(&mut self, passed: bool, json: Value, summary: String, failures: &[String]) -> CliResult {
        match self.format {
            Format::Json => self.line(&json.to_string()),
            _ => {
                self.line(&summary);
                for f in failures {
                    self.line(f);
                }
            }
        }
        if passed {
            Ok(())
        } else {
            Err(CliError::Domain("check failed".into()))
        }
    }
}

fn read_series(expr: &Option<String>, coeffs: &Option<String>, name: &str, order: usize) -> Result<PowerSeries, CliError> {
    match (expr, coeffs) {
        (Some(text), _) => parse_series(text, order).map_err(|e| match e {
            riordan_core::parser::SeriesInputError::Parse(p) => CliError::Usage(format!("--expr-{name}: {p}")),
            riordan_core::parser::SeriesInputError::Eval(ev) => domain(&format!("--expr-{name}"), ev),
        }),
        (None, Some(text)) => {
            let flag = format!("--coeffs-{name}");
            let s = PowerSeries::parse_coeffs(text).map_err(|e| CliError::Usage(format!("{flag}: {e}")))?;
            if s.order() < order {
                return Err(domain(
                    &flag,
                    format!("{} coefficients given but {order} are needed", s.order()),
                ));
            }
            Ok(s.truncate(order))
        }
        (None, None) => Err(CliError::Usage(format!("one of --expr-{name} or --coeffs-{name} is required"))),
    }
}

fn riordan_error(e: RiordanError, f: &str, g: &str) -> CliError {
    match &e {
        RiordanError::ZeroConstant { which } if *which == "f" => domain(&format!("--expr-{f}/--coeffs-{f}"), e),
        RiordanError::ZeroConstant { .. } | RiordanError::BadH => domain(&format!("--expr-{g}/--coeffs-{g}"), e),
        RiordanError::Budget { .. } | RiordanError::AboveDiagonal { .. } => domain("--rows", e),
        RiordanError::Series(_) => domain(&format!("--expr-{g}/--coeffs-{g}"), e),
    }
}

impl MatrixInput {
    fn build(&self, order: usize) -> Result<RiordanMatrix, CliError> {
        let f = read_series(&self.expr_f, &self.coeffs_f, "f", order)?;
        let g = read_series(&self.expr_g, &self.coeffs_g, "g", order)?;
        RiordanMatrix::from_t(f, g, order).map_err(|e| riordan_error(e, "f", "g"))
    }
}

impl SecondInput {
    fn build(&self, order: usize) -> Result<RiordanMatrix, CliError> {
        let l = read_series(&self.expr_l, &self.coeffs_l, "l", order)?;
        let m = read_series(&self.expr_m, &self.coeffs_m, "m", order)?;
        RiordanMatrix::from_t(l, m, order).map_err(|e| riordan_error(e, "l", "m"))
    }
}

fn param_error(e: DomainError) -> CliError {
    let msg = e.to_string();
    let flag = ["f0", "g0", "d0", "h1"]
        .into_iter()
        .find(|p| msg.starts_with(p))
        .map_or("--rows".to_string(), |p| format!("--{p}"));
    domain(&flag, msg)
}

impl ParamInput {
    fn params(&self) -> Result<PalindromicParams, CliError> {
        match (&self.f0, &self.g0, &self.f1, &self.d0, &self.h1, &self.h2) {
            (Some(f0), Some(g0), Some(f1), ..) => {
                PalindromicParams::new(f0.clone(), g0.clone(), f1.clone()).map_err(param_error)
            }
            (.., Some(d0), Some(h1), Some(h2)) => {
                let k = KimParams::new(d0.clone(), h1.clone(), h2.clone()).map_err(param_error)?;
                Ok(pal::kim_to_params(&k))
            }
            _ => Err(CliError::Usage("give either --f0 --g0 --f1 or --d0 --h1 --h2".into())),
        }
    }
}

fn class_name(c: InvolutionClass) -> &'static str {
    match c {
        InvolutionClass::Involution => "involution",
        InvolutionClass::PseudoInvolution => "pseudo-involution",
        InvolutionClass::Neither => "neither",
    }
}

fn run_command(cmd: Command, ctx: &mut Ctx) -> CliResult {
    let dn = ctx.default_order;
    match cmd {
        Command::Show { input, size } => {
            let n = size.get(dn);
            let m = input.build(n)?;
            ctx.matrix(&m, n)
        }
        Command::Diag { input, size, cols, bivariate, sprugnoli } => {
            let rows = size.get(dn);
            let cols = cols.unwrap_or(rows);
            let m = input.build(rows.max(cols))?;
            let err = |e| domain("--rows/--cols", e);
            let (grid, kind) = if bivariate {
                (bivariate_gf(&m, rows, cols).map_err(err)?, "bivariate")
            } else if sprugnoli {
                (sprugnoli_bgf(&m, rows, cols).map_err(err)?, "sprugnoli")
            } else {
                (diagonal_family(&m, rows, cols).map_err(err)?.to_grid(), "diagonals")
            };
            let strs = rows_to_strings(grid.rows());
            ctx.rows(&strs, || grid.to_json(kind));
            Ok(())
        }
        Command::Product { left, right, size } => {
            let n = size.get(dn);
            let p = left.build(n)?.product(&right.build(n)?).map_err(|e| riordan_error(e, "l", "m"))?;
            ctx.matrix(&p, n)
        }
        Command::Inverse { input, size } => {
            let n = size.get(dn);
            let inv = input.build(n)?.inverse().map_err(|e| riordan_error(e, "f", "g"))?;
            ctx.matrix(&inv, n)
        }
        Command::Aseq { input, size } => {
            let n = size.get(dn);
            let a = input.build(n)?.a_sequence(n).map_err(|e| riordan_error(e, "f", "g"))?;
            ctx.series(&a);
            Ok(())
        }
        Command::Apply { input, gamma, size } => {
            let n = size.get(dn);
            let m = input.build(n)?;
            let gamma = read_series(&gamma.expr_gamma, &gamma.coeffs_gamma, "gamma", n)?;
            let out = m.apply(&gamma).map_err(|e| domain("--expr-gamma/--coeffs-gamma", e))?;
            ctx.series(&out);
            Ok(())
        }
        Command::Palindromic { command } => run_palindromic(command, ctx),
        Command::GkCheck { input, k, max_j } => {
            let order = (max_j + 2 * k).saturating_sub(2).max(1);
            let g = read_series(&input.expr_g, &input.coeffs_g, "g", order)?;
            let r = gk_diagonal_check(&g, k, max_j).map_err(|e| match e {
                DomainError::Parameter(ref msg) if msg.starts_with('k') => domain("--k", e),
                other => domain("--expr-g/--coeffs-g", other),
            })?;
            let summary = format!("G_{k} diagonals: {} identities checked, {} failed", r.checked, r.failures.len());
            ctx.report(r.passed(), r.to_json("gk-check"), summary, &r.failures)
        }
        Command::Qcones { m, q, size } => {
            let n = size.get(dn);
            let r = qcone_check(m, q, n, n).map_err(|e| domain("--m/--q", e))?;
            let summary = format!("q-cones (m={m}, q={q}): {} identities checked, {} failed", r.checked, r.failures.len());
            ctx.report(r.passed(), r.to_json("qcones"), summary, &r.failures)
        }
        Command::Delannoy { command } => run_delannoy(command, ctx),
        Command::Fixtures { name, verify } => run_fixtures(name, verify, ctx),
    }
}

fn run_palindromic(cmd: PalindromicCommand, ctx: &mut Ctx) -> CliResult {
    let dn = ctx.default_order;
    match cmd {
        PalindromicCommand::Construct { params, size } => {
            let n = size.get(dn);
            let m = pal::construct(&params.params()?, n).map_err(|e| domain("--rows", e))?;
            ctx.matrix(&m, n)
        }
        PalindromicCommand::Check { input, size } => {
            let n = size.get(dn);
            let m = input.build(n)?;
            let json = pal::check_report(&m, n).map_err(|e| domain("--expr-f/--coeffs-f", e))?;
            match ctx.format {
                Format::Json => ctx.line(&json.to_string()),
                _ => {
                    let chk = pal::is_palindromic(&m, n).map_err(|e| domain("--rows", e))?;
                    match chk.counterexample {
                        None => ctx.line(&format!("palindromic on rows 0..{n}")),
                        Some((r, k)) => ctx.line(&format!("not palindromic: d[{r}][{k}] != d[{r}][{}]", r - k)),
                    }
                }
            }
            Ok(())
        }
        PalindromicCommand::Classify { params, size } => {
            let n = size.get(dn);
            let p = params.params()?;
            let c = pal::classify_involution(&p, n).map_err(|e| domain("--rows", e))?;
            match ctx.format {
                Format::Json => ctx.line(
                    &json!({ "kind": "involution-class", "rows": n, "params": p.to_json(), "class": class_name(c) })
                        .to_string(),
                ),
                _ => ctx.line(class_name(c)),
            }
            Ok(())
        }
    }
}

fn budget(e: DomainError) -> CliError {
    domain("--n/--m", e)
}

fn rows_from_rationals(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows_to_strings(rows)
}

fn run_delannoy(cmd: DelannoyCommand, ctx: &mut Ctx) -> CliResult {
    let dn = ctx.default_order;
    match cmd {
        DelannoyCommand::Paths { n, m } => {
            let paths = enumerate_paths(n, m).map_err(budget)?;
            let words: Vec<String> = paths.iter().map(ToString::to_string).collect();
            match ctx.format {
                Format::Json => ctx.line(
                    &json!({ "kind": "delannoy-paths", "n": n, "m": m, "count": words.len(), "paths": words })
                        .to_string(),
                ),
                _ => {
                    for w in &words {
                        ctx.line(w);
                    }
                }
            }
            Ok(())
        }
        DelannoyCommand::Classes { n, m, list_words } => {
            let classes = equivalence_classes(n, m);
            let members = if list_words {
                let oracle = equivalence_classes_oracle(n, m).map_err(budget)?;
                let paths = enumerate_paths(n, m).map_err(budget)?;
                debug_assert_eq!(oracle.len(), classes.len());
                Some(
                    classes
                        .iter()
                        .map(|c| {
                            paths
                                .iter()
                                .filter(|w| &dl::canonicalize(w) == c)
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>(),
                )
            } else {
                None
            };
            match ctx.format {
                Format::Json => {
                    let list: Vec<Value> = classes
                        .iter()
                        .enumerate()
                        .map(|(i, c)| {
                            let mut v = c.to_json();
                            if let Some(ws) = &members {
                                v["words"] = json!(ws[i]);
                            }
                            v
                        })
                        .collect();
                    ctx.line(
                        &json!({ "kind": "delannoy-classes", "n": n, "m": m, "count": classes.len(), "classes": list })
                            .to_string(),
                    );
                }
                Format::Csv => {
                    ctx.line("k,word,size,words");
                    for (i, c) in classes.iter().enumerate() {
                        let ws = members.as_ref().map(|m| m[i].join(" ")).unwrap_or_default();
                        ctx.line(&format!("{},{},{},{}", c.k(), c.word(), c.class_size(), ws));
                    }
                }
                Format::Table => {
                    let mut rows = vec![vec!["k".to_string(), "representative".into(), "size".into()]];
                    if members.is_some() {
                        rows[0].push("words".into());
                    }
                    for (i, c) in classes.iter().enumerate() {
                        let word = c.word().to_string();
                        let mut row = vec![c.k().to_string(), if word.is_empty() { "-".into() } else { word }, c.class_size().to_string()];
                        if let Some(ws) = &members {
                            row.push(ws[i].join(" "));
                        }
                        rows.push(row);
                    }
                    for r in rows {
                        ctx.line(&r.join("\t"));
                    }
                }
            }
            Ok(())
        }
        DelannoyCommand::Weight { n, m, a, b, symbolic, evaluator } => {
            let value = if symbolic {
                let (a, b) = (WeightPoly::a(), WeightPoly::b());
                match evaluator {
                    Evaluator::Closed => weight_closed(n, m, &a, &b),
                    Evaluator::Recursive => weight_recursive(n, m, &a, &b),
                    Evaluator::Classes => weight_by_classes(n, m, &a, &b).map_err(budget)?,
                }
                .to_string()
            } else {
                let (a, b) = (a.expect("required by clap"), b.expect("required by clap"));
                match evaluator {
                    Evaluator::Closed => weight_closed(n, m, &a, &b),
                    Evaluator::Recursive => weight_recursive(n, m, &a, &b),
                    Evaluator::Classes => weight_by_classes(n, m, &a, &b).map_err(budget)?,
                }
                .to_string()
            };
            match ctx.format {
                Format::Json => {
                    ctx.line(&json!({ "kind": "delannoy-weight", "n": n, "m": m, "value": value }).to_string())
                }
                _ => ctx.line(&value),
            }
            Ok(())
        }
        DelannoyCommand::Gf { n, weights, size } => {
            let s = wn_generating_function(n, &weights.a, &weights.b, size.get(dn));
            ctx.series(&s);
            Ok(())
        }
        DelannoyCommand::Factorize { weights, size } => {
            let r = pascal_factorization_check(&weights.a, &weights.b, size.get(dn));
            match ctx.format {
                Format::Json => ctx.line(&r.to_json().to_string()),
                _ => {
                    let strs = rows_from_rationals(r.product.rows());
                    ctx.rows(&strs, Value::default);
                    ctx.line(&format!("W = P_a D_b P_a^T: {}", r.holds()));
                }
            }
            if r.holds() {
                Ok(())
            } else {
                Err(CliError::Domain("factorization check failed".into()))
            }
        }
        DelannoyCommand::Qmatrix { a, b, symbolic, size } => {
            let n = size.get(dn);
            if symbolic {
                let strs = poly_rows_to_strings(&q_matrix_symbolic(n));
                let json = json!({ "kind": "q-matrix", "a": "a", "b": "b", "rows": strs });
                ctx.rows(&strs, || json);
            } else {
                let (a, b) = (a.expect("required by clap"), b.expect("required by clap"));
                let q = q_matrix(&a, &b, n).map_err(|e| domain("--a", e))?;
                let strs = rows_to_strings(&q);
                let json = json!({ "kind": "q-matrix", "a": a.to_string(), "b": b.to_string(), "rows": strs });
                ctx.rows(&strs, || json);
            }
            Ok(())
        }
    }
}

fn run_fixtures(name: Option<String>, verify: bool, ctx: &mut Ctx) -> CliResult {
    let selected: Vec<&fixtures::Fixture> = match &name {
        Some(n) => vec![fixtures::find(n).ok_or_else(|| {
            CliError::Usage(format!("--name: unknown fixture {n:?}; known: {}", fixtures::names().join(", ")))
        })?],
        None => FIXTURES.iter().collect(),
    };
    if verify {
        let reports: Vec<_> = selected.iter().map(|f| f.verify()).collect();
        match ctx.format {
            Format::Json => ctx.line(&Value::Array(reports.iter().map(|r| r.to_json()).collect()).to_string()),
            _ => {
                for r in &reports {
                    ctx.line(&format!("{} {}", if r.passed() { "pass" } else { "FAIL" }, r.name));
                    for m in &r.mismatches {
                        ctx.line(&format!("  ({}, {}): expected {}, got {}", m.row, m.col, m.expected, m.got));
                    }
                    for f in &r.failures {
                        ctx.line(&format!("  {f}"));
                    }
                }
            }
        }
        return if reports.iter().all(|r| r.passed()) {
            Ok(())
        } else {
            Err(CliError::Domain("fixture regeneration differs from the stored tables".into()))
        };
    }
    match name {
        Some(_) => {
            let fx = selected[0];
            let rows = fx.regenerate();
            let json = json!({ "kind": "fixture", "name": fx.name, "rows": rows });
            ctx.rows(&rows, || json);
        }
        None => match ctx.format {
            Format::Json => ctx.line(
                &json!(FIXTURES.iter().map(|f| json!({"name": f.name, "description": f.description})).collect::<Vec<_>>())
                    .to_string(),
            ),
            _ => {
                for f in FIXTURES {
                    ctx.line(&format!("{}\t{}", f.name, f.description));
                }
            }
        },
    }
    Ok(())
}

enum Program {
    Riordan,
    Delannoy,
}

fn dispatch<I, T>(program: Program, argv: I, default_order: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let parsed = match program {
        Program::Riordan => RiordanCli::try_parse_from(argv).map(|c| (c.format, Ok(c.command))),
        Program::Delannoy => DelannoyCli::try_parse_from(argv).map(|c| (c.format, Err(c.command))),
    };
    let (format, command) = match parsed {
        Ok(p) => p,
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
    let mut ctx = Ctx { format, default_order, out };
    let result = match command {
        Ok(cmd) => run_command(cmd, &mut ctx),
        Err(cmd) => run_delannoy(cmd, &mut ctx),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// Runs the `riordan` program with an explicit default order.
pub fn run_with<I, T>(argv: I, default_order: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    dispatch(Program::Riordan, argv, default_order, out, err)
}

/// Runs the `delannoy` program, whose subcommands are `riordan delannoy`'s.
pub fn run_delannoy_with<I, T>(argv: I, default_order: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    dispatch(Program::Delannoy, argv, default_order, out, err)
}

/// Entry point shared by both binaries: reads the environment once.
pub fn main_for(delannoy: bool) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let order = match default_order_from_env() {
        Ok(n) => n,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let argv = std::env::args_os();
    if delannoy {
        run_delannoy_with(argv, order, &mut out, &mut err)
    } else {
        run_with(argv, order, &mut out, &mut err)
    }
}
