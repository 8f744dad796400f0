//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage and input errors, 2 for domain and
//! budget errors. JSON and CSV output is stable; text output is for people.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::Arith;
use crate::carriers::{Carrier, ExactRing, Family, ModElem, ModRing, Ring};
use crate::error::{Error, Result};
use crate::linalg::{closure_check, eigen_search, ClosureFlags, ClosureViolation};
use crate::matrices::{check_matrix_ideal, Matrix, MatrixCounterexample, MatrixJson};
use crate::polynomials::{Poly, PolyJson};
use crate::scan::{self, ScanConfig, ScanReport, Side};

/// Largest carrier whose operation table is emitted.
pub const MAX_TABLE_ORDER: u128 = 256;

#[derive(Parser, Debug)]
#[command(name = "ncalg", version, about = "Finite and exact neutrosophic complex arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; defaults to csv for `table`, text for `classify`, json otherwise
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Seed for commands that draw random inputs
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for exhaustive scans; never changes output
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Add,
    Mul,
}

#[derive(Args, Debug, Clone, Copy)]
struct CarrierArgs {
    /// exact, mod-plain, mod-complex, mod-neutro or mod-neutro-complex
    #[arg(long)]
    family: Family,

    /// Modulus for the modular families
    #[arg(long)]
    modulus: Option<u64>,
}

impl CarrierArgs {
    fn carrier(&self) -> Result<Carrier> {
        Carrier::new(self.family, self.modulus)
    }

    fn finite(&self) -> Result<ModRing> {
        self.carrier()?.finite()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Addition or multiplication table of a finite carrier
    Table {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long, value_enum)]
        op: Op,
    },
    /// Zero divisors, units, idempotents and nilpotents of a finite carrier
    Scan {
        #[command(flatten)]
        carrier: CarrierArgs,
    },
    /// One-line verdict: field, integral-domain or ring-with-zero-divisors
    Classify {
        #[command(flatten)]
        carrier: CarrierArgs,
    },
    /// Matrix operations; matrices are `a,b;c,d` or `@file.json`
    Mat {
        #[arg(value_enum)]
        action: MatAction,
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Shape for `random`
        #[arg(long, default_value_t = 2)]
        rows: usize,
        #[arg(long, default_value_t = 2)]
        cols: usize,
        /// Support pattern for `ideal`, e.g. `*,0;*,0`
        #[arg(long)]
        mask: Option<String>,
        #[arg(long, value_enum, default_value_t = SideArg::TwoSided)]
        side: SideArg,
    },
    /// Polynomial operations; polynomials are `c0 + c1*x + ...` or `@file.json`
    Poly {
        #[arg(value_enum)]
        action: PolyAction,
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        /// Point for `eval`
        #[arg(long)]
        x: Option<String>,
        /// Coordinate bound for roots over the exact carrier
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Eigenvalues and eigenspaces by exhaustive search
    Eigen {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long)]
        matrix: String,
        /// Family searched for eigenvalues (same modulus); defaults to the matrix family
        #[arg(long)]
        search_family: Option<Family>,
    },
    /// Scalar, additive and multiplicative closure of a finite set
    Closure {
        #[command(flatten)]
        carrier: CarrierArgs,
        /// Elements `x,y,...` or `@file.json` holding a list of matrices
        #[arg(long)]
        v: String,
        /// Scalars `s,t,...`
        #[arg(long)]
        s: String,
        /// Closures to check, any of scalar, add, mul
        #[arg(long, value_delimiter = ',', default_value = "scalar,add,mul")]
        check: Vec<ClosureArg>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatAction {
    Add,
    Sub,
    Mul,
    Neg,
    Transpose,
    Det,
    DetIsUnit,
    Inverse,
    Random,
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyAction {
    Add,
    Sub,
    Mul,
    Divmod,
    Eval,
    Roots,
    Irreducible,
    Gcd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
    TwoSided,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
            SideArg::TwoSided => Side::TwoSided,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosureArg {
    Scalar,
    Add,
    Mul,
}

/// A result in all three output formats.
struct Output {
    json: Value,
    csv: Vec<Vec<String>>,
    text: String,
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .flexible(true)
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidCarrier(_)
        | Error::NotInCarrier { .. }
        | Error::Shape(_)
        | Error::ShapeMismatch(_)
        | Error::MixedCarrier { .. }
        | Error::Range(_) => 1,
        _ => 2,
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let cfg = ScanConfig::with_jobs(cli.jobs.max(1));
    let (output, default) = match &cli.command {
        Command::Table { carrier, op } => (cmd_table(&carrier.finite()?, *op)?, Format::Csv),
        Command::Scan { carrier } => (cmd_scan(&carrier.finite()?, &cfg)?, Format::Json),
        Command::Classify { carrier } => (cmd_classify(&carrier.finite()?, &cfg)?, Format::Text),
        Command::Mat {
            action,
            carrier,
            a,
            b,
            rows,
            cols,
            mask,
            side,
        } => {
            let args = MatArgs {
                action: *action,
                a: a.as_deref(),
                b: b.as_deref(),
                rows: *rows,
                cols: *cols,
                mask: mask.as_deref(),
                side: (*side).into(),
                seed: cli.seed,
                cfg,
            };
            let out = match carrier.carrier()? {
                Carrier::Exact => cmd_mat(ExactRing, &args)?,
                Carrier::Modular(r) => cmd_mat(r, &args)?,
            };
            (out, Format::Json)
        }
        Command::Poly {
            action,
            carrier,
            p,
            q,
            x,
            bound,
        } => {
            let args = PolyArgs {
                action: *action,
                p: p.as_deref(),
                q: q.as_deref(),
                x: x.as_deref(),
                bound: *bound,
                cfg,
            };
            let out = match carrier.carrier()? {
                Carrier::Exact => cmd_poly(ExactRing, &args)?,
                Carrier::Modular(r) => cmd_poly(r, &args)?,
            };
            (out, Format::Json)
        }
        Command::Eigen {
            carrier,
            matrix,
            search_family,
        } => {
            let ring = carrier.finite()?;
            let search = Carrier::new(search_family.unwrap_or(carrier.family), carrier.modulus)?.finite()?;
            (cmd_eigen(ring, matrix, &search, &cfg)?, Format::Json)
        }
        Command::Closure { carrier, v, s, check } => {
            let flags = ClosureFlags {
                scalar: check.contains(&ClosureArg::Scalar),
                add: check.contains(&ClosureArg::Add),
                mul: check.contains(&ClosureArg::Mul),
            };
            (cmd_closure(carrier.finite()?, v, s, flags)?, Format::Json)
        }
    };
    Ok(output.render(cli.format.unwrap_or(default)))
}

fn cmd_table(ring: &ModRing, op: Op) -> Result<Output> {
    let order = ring.order();
    if order > MAX_TABLE_ORDER {
        return Err(Error::Budget {
            what: "table order",
            needed: order,
            limit: MAX_TABLE_ORDER,
        });
    }
    let elems: Vec<ModElem> = ring.elements().collect();
    let names: Vec<String> = elems.iter().map(|x| ring.render(x)).collect();
    let cells: Vec<Vec<String>> = elems
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|y| {
                    ring.render(&match op {
                        Op::Add => ring.add(x, y),
                        Op::Mul => ring.mul(x, y),
                    })
                })
                .collect()
        })
        .collect();
    let mut grid = vec![std::iter::once("*".to_string()).chain(names.iter().cloned()).collect::<Vec<_>>()];
    for (name, row) in names.iter().zip(&cells) {
        grid.push(std::iter::once(name.clone()).chain(row.iter().cloned()).collect());
    }
    let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
    let text = grid
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n");
    let op_name = match op {
        Op::Add => "add",
        Op::Mul => "mul",
    };
    Ok(Output {
        json: json!({ "carrier": ring.carrier(), "op": op_name, "elements": names, "cells": cells }),
        csv: grid,
        text,
    })
}

fn cmd_scan(ring: &ModRing, cfg: &ScanConfig) -> Result<Output> {
    let report = scan::scan(ring, cfg)?;
    Ok(Output {
        json: report.to_json(),
        csv: scan_csv(&report),
        text: scan_text(&report),
    })
}

fn scan_csv(r: &ScanReport) -> Vec<Vec<String>> {
    let s = |x: &ModElem| x.to_string();
    let mut rows = vec![
        vec!["kind".into(), "element".into(), "detail".into()],
        vec!["carrier".into(), r.carrier.to_string()],
        vec!["order".into(), r.order.to_string()],
        vec!["is_field".into(), r.is_field.to_string()],
        vec!["is_integral_domain".into(), r.is_integral_domain.to_string()],
    ];
    rows.extend(r.zero_divisor_pairs.iter().map(|(x, y)| vec!["zero_divisor".into(), s(x), s(y)]));
    rows.extend(r.units.iter().map(|x| vec!["unit".into(), s(x)]));
    rows.extend(r.idempotents.iter().map(|x| vec!["idempotent".into(), s(x)]));
    rows.extend(r.nilpotents.iter().map(|(x, k)| vec!["nilpotent".into(), s(x), k.to_string()]));
    rows
}

fn scan_text(r: &ScanReport) -> String {
    let list = |xs: &[ModElem]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let mut lines = vec![
        format!("carrier: {}", r.carrier),
        format!("order: {}", r.order),
        format!("field: {}", r.is_field),
        format!("integral domain: {}", r.is_integral_domain),
        format!("zero-divisor pairs: {}", r.zero_divisor_pairs.len()),
        format!("units ({}): {}", r.units.len(), list(&r.units)),
        format!("idempotents ({}): {}", r.idempotents.len(), list(&r.idempotents)),
        format!(
            "nilpotents ({}): {}",
            r.nilpotents.len(),
            r.nilpotents
                .iter()
                .map(|(x, k)| format!("{x} (index {k})"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    ];
    for w in &r.witnesses {
        lines.push(format!("witness {}: {}", w.name, list(&w.elements)));
    }
    lines.join("\n")
}

fn cmd_classify(ring: &ModRing, cfg: &ScanConfig) -> Result<Output> {
    let verdict = scan::is_field(ring, cfg)?;
    let (name, witness) = match verdict.witness {
        None => ("field", None),
        Some((x, y)) => ("ring-with-zero-divisors", Some([x.to_string(), y.to_string()])),
    };
    let text = match &witness {
        None => name.to_string(),
        Some([x, y]) => format!("{name} ({x})*({y})=0"),
    };
    let mut csv = vec![vec!["carrier".into(), ring.carrier().to_string()], vec!["verdict".into(), name.into()]];
    if let Some([x, y]) = &witness {
        csv.push(vec!["witness".into(), x.clone(), y.clone()]);
    }
    Ok(Output {
        json: json!({ "carrier": ring.carrier(), "verdict": name, "witness": witness }),
        csv,
        text,
    })
}

fn read_input(s: &str) -> Result<Option<String>> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(Some)
            .map_err(|e| Error::Parse { position: 0, message: format!("cannot read {path}: {e}") }),
        None => Ok(None),
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        position: e.column(),
        message: format!("invalid JSON: {e}"),
    }
}

fn parse_matrix<R: Ring>(ring: &R, s: &str) -> Result<Matrix<R>> {
    match read_input(s)? {
        Some(text) => {
            let repr: MatrixJson = serde_json::from_str(&text).map_err(json_error)?;
            Matrix::from_json(ring.clone(), &repr)
        }
        None => Matrix::parse_inline(ring.clone(), s),
    }
}

fn parse_poly<R: Ring>(ring: &R, s: &str) -> Result<Poly<R>> {
    match read_input(s)? {
        Some(text) => {
            let repr: PolyJson = serde_json::from_str(&text).map_err(json_error)?;
            Poly::from_json(ring.clone(), &repr)
        }
        None => Poly::parse(ring.clone(), s),
    }
}

fn required<'a>(value: Option<&'a str>, flag: &str, action: &str) -> Result<&'a str> {
    value.ok_or_else(|| Error::parse(0, format!("`{action}` needs --{flag}")))
}

fn modular<R: Ring>(ring: &R) -> Result<ModRing> {
    ring.carrier().finite()
}

fn matrix_output<R: Ring>(m: &Matrix<R>) -> Output {
    Output {
        json: serde_json::to_value(m.to_json()).expect("matrix json"),
        csv: csv_grid(&m.to_csv()),
        text: m.to_csv(),
    }
}

fn csv_grid(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn element_output<R: Ring>(ring: &R, key: &str, x: &R::Elem) -> Output {
    let s = ring.render(x);
    Output {
        json: json!({ "carrier": ring.carrier(), key: s }),
        csv: vec![vec![s.clone()]],
        text: s,
    }
}

struct MatArgs<'a> {
    action: MatAction,
    a: Option<&'a str>,
    b: Option<&'a str>,
    rows: usize,
    cols: usize,
    mask: Option<&'a str>,
    side: Side,
    seed: u64,
    cfg: ScanConfig,
}

fn cmd_mat<R: Ring>(ring: R, args: &MatArgs) -> Result<Output> {
    let name = format!("{:?}", args.action).to_lowercase();
    let a = || parse_matrix(&ring, required(args.a, "a", &name)?);
    let b = || parse_matrix(&ring, required(args.b, "b", &name)?);
    match args.action {
        MatAction::Add => Ok(matrix_output(&a()?.add(&b()?)?)),
        MatAction::Sub => Ok(matrix_output(&a()?.sub(&b()?)?)),
        MatAction::Mul => Ok(matrix_output(&a()?.mul(&b()?)?)),
        MatAction::Neg => Ok(matrix_output(&a()?.neg())),
        MatAction::Transpose => Ok(matrix_output(&a()?.transpose())),
        MatAction::Det => Ok(element_output(&ring, "det", &a()?.det()?)),
        MatAction::DetIsUnit => {
            let a = a()?;
            let det = a.det()?;
            let unit = ring.is_unit(&det);
            Ok(Output {
                json: json!({ "carrier": ring.carrier(), "det": ring.render(&det), "is_unit": unit }),
                csv: vec![vec![ring.render(&det), unit.to_string()]],
                text: format!("det {} is {}a unit", ring.render(&det), if unit { "" } else { "not " }),
            })
        }
        MatAction::Inverse => {
            let r = modular(&ring)?;
            let a = parse_matrix(&r, required(args.a, "a", &name)?)?;
            match a.inverse()? {
                Some(inv) => Ok(matrix_output(&inv)),
                None => Ok(Output {
                    json: json!({ "carrier": r.carrier(), "inverse": null }),
                    csv: vec![vec!["singular".into()]],
                    text: "singular".into(),
                }),
            }
        }
        MatAction::Random => {
            let r = modular(&ring)?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            Ok(matrix_output(&Matrix::random(r, args.rows, args.cols, &mut rng)?))
        }
        MatAction::Ideal => {
            let r = modular(&ring)?;
            let mask = parse_mask(required(args.mask, "mask", &name)?)?;
            let k = (mask.len() as f64).sqrt() as usize;
            let verdict = check_matrix_ideal(&mask, &r, k, args.side, &args.cfg)?;
            Ok(ideal_output(verdict.holds, verdict.counterexample.as_ref()))
        }
    }
}

fn parse_mask(s: &str) -> Result<Vec<bool>> {
    let rows: Vec<&str> = s.split(';').collect();
    let mut out = Vec::new();
    let mut pos = 0;
    for row in &rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != rows.len() {
            return Err(Error::ShapeMismatch(format!("mask `{s}` is not square")));
        }
        for c in cells {
            match c.trim() {
                "*" => out.push(true),
                "0" => out.push(false),
                other => return Err(Error::parse(pos, format!("mask cells are `*` or `0`, not `{other}`"))),
            }
            pos += c.len() + 1;
        }
    }
    Ok(out)
}

fn ideal_output(holds: bool, cx: Option<&MatrixCounterexample>) -> Output {
    let side = |s: Side| match s {
        Side::Left => "left",
        Side::Right => "right",
        Side::TwoSided => "two-sided",
    };
    let json_cx = cx.map(|c| {
        json!({
            "side": side(c.side),
            "ring_element": c.ring_elem.to_inline(),
            "member": c.member.to_inline(),
            "product": c.product.to_inline(),
        })
    });
    let mut csv = vec![vec!["holds".into(), holds.to_string()]];
    let mut text = format!("ideal: {holds}");
    if let Some(c) = cx {
        csv.push(vec![
            side(c.side).into(),
            c.ring_elem.to_inline(),
            c.member.to_inline(),
            c.product.to_inline(),
        ]);
        let (l, r) = match c.side {
            Side::Left => (c.ring_elem.to_inline(), c.member.to_inline()),
            _ => (c.member.to_inline(), c.ring_elem.to_inline()),
        };
        text.push_str(&format!("\ncounterexample ({}): [{l}]·[{r}] = [{}]", side(c.side), c.product.to_inline()));
    }
    Output {
        json: json!({ "holds": holds, "counterexample": json_cx }),
        csv,
        text,
    }
}

struct PolyArgs<'a> {
    action: PolyAction,
    p: Option<&'a str>,
    q: Option<&'a str>,
    x: Option<&'a str>,
    bound: Option<u64>,
    cfg: ScanConfig,
}

fn poly_output<R: Ring>(p: &Poly<R>) -> Output {
    Output {
        json: serde_json::to_value(p.to_json()).expect("poly json"),
        csv: vec![p.to_json().coeffs],
        text: p.render(),
    }
}

fn elements_output(carrier: Carrier, key: &str, xs: Vec<String>) -> Output {
    Output {
        json: json!({ "carrier": carrier, key: xs }),
        csv: vec![xs.clone()],
        text: xs.join("\n"),
    }
}

fn cmd_poly<R: Ring>(ring: R, args: &PolyArgs) -> Result<Output> {
    let name = format!("{:?}", args.action).to_lowercase();
    let p = || parse_poly(&ring, required(args.p, "p", &name)?);
    let q = || parse_poly(&ring, required(args.q, "q", &name)?);
    match args.action {
        PolyAction::Add => Ok(poly_output(&p()?.add(&q()?)?)),
        PolyAction::Sub => Ok(poly_output(&p()?.sub(&q()?)?)),
        PolyAction::Mul => Ok(poly_output(&p()?.mul(&q()?)?)),
        PolyAction::Divmod => {
            let (quot, rem) = p()?.divmod(&q()?)?;
            Ok(Output {
                json: json!({ "quotient": quot.to_json(), "remainder": rem.to_json() }),
                csv: vec![vec!["quotient".into(), quot.render()], vec!["remainder".into(), rem.render()]],
                text: format!("quotient: {quot}\nremainder: {rem}"),
            })
        }
        PolyAction::Eval => {
            let x = ring.parse(required(args.x, "x", &name)?)?;
            Ok(element_output(&ring, "value", &p()?.eval(&x)?))
        }
        PolyAction::Roots => match ring.carrier() {
            Carrier::Exact => {
                let bound = args
                    .bound
                    .ok_or_else(|| Error::Domain("roots over the exact carrier need --bound".into()))?;
                let f = parse_poly(&ExactRing, required(args.p, "p", &name)?)?;
                let roots = f.roots_within(bound)?.iter().map(ToString::to_string).collect();
                Ok(elements_output(Carrier::Exact, "roots", roots))
            }
            Carrier::Modular(r) => {
                let f = parse_poly(&r, required(args.p, "p", &name)?)?;
                let roots = f.roots(&args.cfg)?.iter().map(ToString::to_string).collect();
                Ok(elements_output(r.carrier(), "roots", roots))
            }
        },
        PolyAction::Irreducible => {
            let r = modular(&ring)?;
            let f = parse_poly(&r, required(args.p, "p", &name)?)?;
            let v = f.is_irreducible(&args.cfg)?;
            let factor = v.factor.as_ref().map(|(a, b)| [a.render(), b.render()]);
            let mut csv = vec![vec!["irreducible".into(), v.irreducible.to_string()]];
            if let Some([a, b]) = &factor {
                csv.push(vec!["factor".into(), a.clone(), b.clone()]);
            }
            let text = match &factor {
                None => "irreducible".to_string(),
                Some([a, b]) => format!("reducible: ({a})·({b})"),
            };
            Ok(Output {
                json: json!({ "carrier": r.carrier(), "irreducible": v.irreducible, "factor": factor }),
                csv,
                text,
            })
        }
        PolyAction::Gcd => {
            let r = modular(&ring)?;
            let a = parse_poly(&r, required(args.p, "p", &name)?)?;
            let b = parse_poly(&r, required(args.q, "q", &name)?)?;
            Ok(poly_output(&a.gcd(&b)?))
        }
    }
}

fn cmd_eigen(ring: ModRing, matrix: &str, search: &ModRing, cfg: &ScanConfig) -> Result<Output> {
    let a = parse_matrix(&ring, matrix)?;
    let found = eigen_search(&a, search, cfg)?;
    let vector = |v: &Vec<ModElem>| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let values: Vec<Value> = found
        .iter()
        .map(|e| json!({ "value": e.value.to_string(), "eigenbasis": e.basis.iter().map(vector).collect::<Vec<_>>() }))
        .collect();
    let csv = found
        .iter()
        .flat_map(|e| {
            e.basis
                .iter()
                .map(|v| std::iter::once(e.value.to_string()).chain(vector(v)).collect::<Vec<_>>())
        })
        .collect();
    let text = found
        .iter()
        .map(|e| {
            let basis = e.basis.iter().map(|v| format!("({})", vector(v).join(", "))).collect::<Vec<_>>();
            format!("{}: {}", e.value, basis.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        json: json!({ "values": values }),
        csv,
        text,
    })
}

fn cmd_closure(ring: ModRing, v: &str, s: &str, flags: ClosureFlags) -> Result<Output> {
    let items: Vec<Matrix<ModRing>> = match read_input(v)? {
        Some(text) => {
            let reprs: Vec<MatrixJson> = serde_json::from_str(&text).map_err(json_error)?;
            reprs.iter().map(|m| Matrix::from_json(ring, m)).collect::<Result<_>>()?
        }
        None => v
            .split(',')
            .map(|x| Matrix::new(ring, 1, 1, vec![ring.parse(x.trim())?]))
            .collect::<Result<_>>()?,
    };
    let scalars: Vec<ModElem> = s.split(',').map(|x| ring.parse(x.trim())).collect::<Result<_>>()?;
    let verdict = closure_check(&items, &scalars, flags)?;
    let show = |m: &Matrix<ModRing>| m.to_inline();
    let violation = verdict.first_violation.as_ref().map(|v| match v {
        ClosureViolation::Scalar { scalar, element, product } => {
            json!({ "kind": "scalar", "scalar": scalar.to_string(), "element": show(element), "result": show(product) })
        }
        ClosureViolation::Add { a, b, sum } => json!({ "kind": "add", "a": show(a), "b": show(b), "result": show(sum) }),
        ClosureViolation::Mul { a, b, product } => {
            json!({ "kind": "mul", "a": show(a), "b": show(b), "result": show(product) })
        }
    });
    let class = verdict.classify().map(|c| serde_json::to_value(c).expect("class"));
    let flag = |b: Option<bool>| b.map_or("unchecked".to_string(), |b| b.to_string());
    let mut csv = vec![
        vec!["scalar".into(), flag(verdict.is_scalar_closed)],
        vec!["add".into(), flag(verdict.is_add_closed)],
        vec!["mul".into(), flag(verdict.is_mul_closed)],
    ];
    let mut text = format!(
        "scalar-closed: {}\nadd-closed: {}\nmul-closed: {}",
        flag(verdict.is_scalar_closed),
        flag(verdict.is_add_closed),
        flag(verdict.is_mul_closed)
    );
    if let Some(Value::Object(v)) = &violation {
        let fields: Vec<String> = v.iter().map(|(k, x)| format!("{k}={}", x.as_str().unwrap_or_default())).collect();
        csv.push(std::iter::once("violation".to_string()).chain(v.values().map(|x| x.as_str().unwrap_or_default().to_string())).collect());
        text.push_str(&format!("\nviolation: {}", fields.join(" ")));
    }
    Ok(Output {
        json: json!({
            "is_scalar_closed": verdict.is_scalar_closed,
            "is_add_closed": verdict.is_add_closed,
            "is_mul_closed": verdict.is_mul_closed,
            "classification": class,
            "first_violation": violation,
        }),
        csv,
        text,
    })
}
