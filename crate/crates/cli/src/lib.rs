//! The `frieze` command line: argument parsing, dispatch and text rendering.
//!
//! [`run`] is the whole program minus process exit so tests can call it directly.

use clap::{Parser, Subcommand, ValueEnum};
use frieze_core::cartan::{
    check_root_system, dihedral_order, graph_from_quiddity, quiddity_of_graph, real_roots, reflect,
    roots_from_frieze, validate_graph, CartanGraph, CartanMatrix2, R4Status, Root,
};
use frieze_core::chebyshev::{v_eval, v_polynomial};
use frieze_core::dissection::{all_entries, enumerate_p_angulations, quiddity as dissection_quiddity};
use frieze_core::frieze::{FriezePattern, RowStructure};
use frieze_core::io;
use frieze_core::render::render;
use frieze_core::strip::{
    default_height, from_strip, theta_arcs, to_strip, vertex_report, InfiniteFriezeView, PeriodicQuiddity,
    StripAngulation,
};
use frieze_core::{minimal_polynomial, Error, FieldContext, FieldElement};
use serde_json::json;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "frieze", version, about = "Exact frieze patterns of type Λ_p")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "ascii")]
    format: Format,
    /// Restrict output to ASCII (r2 for √2, l for λ).
    #[arg(long, global = true)]
    ascii_only: bool,
    /// Bracket the entries f_{i,j} with i in the fundamental domain.
    #[arg(long, global = true)]
    brackets: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal polynomial of λ_L.
    Minpoly { l: u32 },
    /// The polynomial V_N, or its value at λ_Q.
    Cheb {
        n: i64,
        #[arg(long)]
        at: Option<u32>,
    },
    /// Operations on a polygon dissection file.
    Dissect {
        #[command(subcommand)]
        op: DissectOp,
    },
    /// All p-angulations of the n-gon.
    Enumerate { n: usize, p: usize },
    /// Operations on finite frieze patterns.
    Frieze {
        #[command(subcommand)]
        op: FriezeOp,
    },
    /// Periodic infinite friezes and strip p-angulations.
    Strip {
        #[command(subcommand)]
        op: StripOp,
    },
    /// Rank-2 Cartan graphs and their roots.
    Cartan {
        #[command(subcommand)]
        op: CartanOp,
    },
    /// Regenerate a named worked example.
    Examples { name: String },
}

#[derive(Debug, Subcommand)]
enum DissectOp {
    Quiddity { file: String },
    Entries { file: String },
    Frieze { file: String },
}

#[derive(Debug, Subcommand)]
enum FriezeOp {
    FromQuiddity { file: String },
    Verify { file: String },
    Type { file: String },
    ToDissection { file: String },
    Char46 { file: String },
}

#[derive(Debug, Subcommand)]
enum StripOp {
    FromQuiddity {
        file: String,
        #[arg(long)]
        height: Option<usize>,
    },
    ToFrieze {
        file: String,
        #[arg(long)]
        height: Option<usize>,
    },
    Theta {
        file: String,
        #[arg(long)]
        span: Option<usize>,
    },
    Report {
        file: String,
        #[arg(long)]
        span: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum CartanOp {
    Validate { file: String },
    FromQuiddity { file: String },
    Quiddity {
        file: String,
        #[arg(long, default_value_t = 0)]
        object: i64,
    },
    Roots {
        file: String,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        object: i64,
    },
    CheckRootsystem {
        file: String,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    RootsFromFrieze {
        file: String,
        #[arg(long, default_value_t = 0)]
        anchor: i64,
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Names accepted by `examples`; `dihedral-P` takes any P ≥ 3.
pub const EXAMPLES: [&str; 11] = [
    "ex2.3a",
    "ex2.3b",
    "ex2.7",
    "hexagon-lambda4",
    "ex6.7",
    "strip-ladder",
    "strip-fan",
    "ex8.3",
    "dihedral-5",
    "diag-graph",
    "lambda4-graph",
];

enum Failure {
    /// Malformed input (exit 2).
    Input(String),
    /// Mathematical validation failure (exit 1).
    Math(String),
    /// Validation failure that still produced a report on stdout (exit 1).
    Report(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidArgument(_) | Error::ContextMismatch { .. } | Error::InvalidGraph(_) | Error::Crossing { .. } => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Res = std::result::Result<String, Failure>;

struct Ctx {
    format: Format,
    ascii: bool,
    brackets: bool,
}

impl Ctx {
    fn r(&self, x: &FieldElement) -> String {
        render(x, self.ascii)
    }

    fn root(&self, r: &Root) -> String {
        format!("({}, {})", self.r(&r.x1), self.r(&r.x2))
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }
}

/// Parse `args` (without the program name) and execute.
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("frieze")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let ctx = Ctx { format: cli.format, ascii: cli.ascii_only, brackets: cli.brackets };
    let result = dispatch(&ctx, cli.command);
    let fix = |s: String| if ctx.ascii { asciify(&s) } else { s };
    match result {
        Ok(out) => Output { code: 0, stdout: fix(out), stderr: String::new() },
        Err(Failure::Math(m)) => Output { code: 1, stdout: String::new(), stderr: fix(format!("error: {m}\n")) },
        Err(Failure::Report(out, m)) => Output { code: 1, stdout: fix(out), stderr: fix(format!("error: {m}\n")) },
        Err(Failure::Input(m)) => Output { code: 2, stdout: String::new(), stderr: fix(format!("error: {m}\n")) },
    }
}

/// Transliterate the non-ASCII symbols used in messages.
pub fn asciify(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            'λ' => out.push_str("lambda"),
            'Λ' => out.push_str("Lambda"),
            'ρ' => out.push_str("rho"),
            'σ' => out.push_str("sigma"),
            'α' => out.push_str("alpha"),
            '√' => out.push('r'),
            '≠' => out.push_str("!="),
            '≥' => out.push_str(">="),
            '≤' => out.push_str("<="),
            '·' => out.push('*'),
            '→' => out.push_str("->"),
            '×' => out.push('x'),
            '⇔' => out.push_str("<=>"),
            c if c.is_ascii() => out.push(c),
            _ => out.push('?'),
        }
    }
    out
}

fn read(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))
}

fn dispatch(c: &Ctx, cmd: Command) -> Res {
    match cmd {
        Command::Minpoly { l } => {
            let m = minimal_polynomial(l)?;
            if c.json() {
                let coeffs: Vec<String> = m.coeffs().iter().map(|x| x.to_string()).collect();
                Ok(format!("{}\n", json!({"L": l, "minpoly": coeffs.iter().map(|s| raw_number(s)).collect::<Vec<_>>()})))
            } else {
                Ok(format!("{m}\n"))
            }
        }
        Command::Cheb { n, at } => match at {
            None => {
                let v = v_polynomial(n)?;
                Ok(format!("{}\n", v.poly))
            }
            Some(q) => {
                let ctx = FieldContext::new(q)?;
                let x = v_eval(n, &FieldElement::lambda(&ctx))?;
                if c.json() {
                    Ok(format!("{}\n", io::to_json(&io::element_to_file(&x))))
                } else {
                    Ok(format!("{}\n", c.r(&x)))
                }
            }
        },
        Command::Dissect { op } => dissect(c, op),
        Command::Enumerate { n, p } => enumerate(c, n, p),
        Command::Frieze { op } => frieze(c, op),
        Command::Strip { op } => strip(c, op),
        Command::Cartan { op } => cartan(c, op),
        Command::Examples { name } => examples(c, &name),
    }
}

fn raw_number(s: &str) -> serde_json::Value {
    serde_json::Value::Number(s.parse().expect("integer literal"))
}

fn dissect(c: &Ctx, op: DissectOp) -> Res {
    match op {
        DissectOp::Quiddity { file } => {
            let d = io::read_dissection(&read(&file)?)?;
            let q = dissection_quiddity(&d);
            if c.json() {
                let files: Vec<io::FieldElementFile> = q.iter().map(io::element_to_file).collect();
                Ok(format!("{}\n", io::to_json(&files)))
            } else {
                Ok(format!("{}\n", list(c, &q)))
            }
        }
        DissectOp::Entries { file } => {
            let d = io::read_dissection(&read(&file)?)?;
            let t = all_entries(&d)?;
            if c.json() {
                Ok(format!("{}\n", io::to_json(&io::entry_table_to_file(&t))))
            } else {
                Ok(grid(t.rows().iter().map(|r| r.iter().map(|x| c.r(x)).collect()).collect()))
            }
        }
        DissectOp::Frieze { file } => {
            let d = io::read_dissection(&read(&file)?)?;
            let f = FriezePattern::from_entry_table(&all_entries(&d)?);
            if let Err(v) = f.verify() {
                return Err(Failure::Math(format!("labels do not form a frieze: {v}")));
            }
            emit_frieze(c, &f)
        }
    }
}

fn list(c: &Ctx, xs: &[FieldElement]) -> String {
    xs.iter().map(|x| c.r(x)).collect::<Vec<_>>().join(", ")
}

/// Left-aligned table with columns separated by two spaces.
fn grid(rows: Vec<Vec<String>>) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|k| rows.iter().filter_map(|r| r.get(k)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &rows {
        let mut line = String::new();
        for (k, s) in r.iter().enumerate() {
            if k > 0 {
                line.push_str("  ");
            }
            line.push_str(s);
            line.extend(std::iter::repeat(' ').take(widths[k] - s.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Offset band layout: each line is a list of (half-column, text); entries are centred in
/// slots of equal width.
pub fn band(lines: &[Vec<(usize, String)>]) -> String {
    let w = lines
        .iter()
        .flatten()
        .map(|(_, t)| t.chars().count())
        .max()
        .unwrap_or(1)
        + 1;
    let mut out = String::new();
    for line in lines {
        let mut buf: Vec<char> = Vec::new();
        for (s, t) in line {
            let len = t.chars().count();
            let start = s * w + (w - len) / 2;
            if buf.len() < start + len {
                buf.resize(start + len, ' ');
            }
            for (k, ch) in t.chars().enumerate() {
                buf[start + k] = ch;
            }
        }
        let text: String = buf.into_iter().collect();
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

fn entry_text(x: &FieldElement, ascii: bool, bracket: bool) -> String {
    if bracket {
        format!("[{}]", render(x, ascii))
    } else {
        render(x, ascii)
    }
}

/// Rows n-1 down to 1 over half-columns 0..=2n.
pub fn render_frieze(f: &FriezePattern, ascii: bool, brackets: bool) -> String {
    let n = f.n();
    let lines: Vec<Vec<(usize, String)>> = (1..n)
        .rev()
        .map(|r| {
            (0..=2 * n)
                .filter(|s| (s + r) % 2 == 0)
                .map(|s| {
                    let i = (s as i64 - r as i64).div_euclid(2);
                    let inside = brackets && (0..n as i64).contains(&i);
                    (s, entry_text(f.get(i, i + r as i64), ascii, inside))
                })
                .collect()
        })
        .collect();
    band(&lines)
}

/// Rows h down to 1 of an infinite frieze over a whole number of periods (at least 6 vertices).
pub fn render_window(v: &InfiniteFriezeView, h: usize, ascii: bool, brackets: bool) -> String {
    let t = v.period();
    let width = t * 6usize.div_ceil(t);
    let lines: Vec<Vec<(usize, String)>> = (1..=h)
        .rev()
        .map(|r| {
            (0..=2 * width)
                .filter(|s| (s + r) % 2 == 0)
                .map(|s| {
                    let i = (s as i64 - r as i64).div_euclid(2);
                    let inside = brackets && (0..t as i64).contains(&i);
                    (s, entry_text(&v.entry(i, i + r as i64), ascii, inside))
                })
                .collect()
        })
        .collect();
    band(&lines)
}

fn emit_frieze(c: &Ctx, f: &FriezePattern) -> Res {
    if c.json() {
        Ok(format!("{}\n", io::to_json(&io::frieze_to_file(f))))
    } else {
        Ok(render_frieze(f, c.ascii, c.brackets))
    }
}

fn enumerate(c: &Ctx, n: usize, p: usize) -> Res {
    if n < 3 || p < 3 {
        return Err(Failure::Input("n and p must be at least 3".into()));
    }
    let all = enumerate_p_angulations(n, p)?;
    if c.json() {
        let files: Vec<io::DissectionFile> = all.iter().map(io::dissection_to_file).collect();
        return Ok(format!("{}\n", io::to_json(&files)));
    }
    let mut out = format!("{} {p}-angulations of the {n}-gon\n", all.len());
    for d in &all {
        let diags = d.diagonal_list();
        if diags.is_empty() {
            out.push_str("(no diagonals)\n");
        } else {
            let parts: Vec<String> = diags.iter().map(|(a, b)| format!("({a},{b})")).collect();
            let _ = writeln!(out, "{}", parts.join(" "));
        }
    }
    Ok(out)
}

fn frieze(c: &Ctx, op: FriezeOp) -> Res {
    match op {
        FriezeOp::FromQuiddity { file } => {
            let q = io::read_finite_quiddity(&read(&file)?)?;
            let f = FriezePattern::from_quiddity(&q)?;
            emit_frieze(c, &f)
        }
        FriezeOp::Verify { file } => {
            let f = io::read_frieze(&read(&file)?)?;
            match f.verify() {
                Ok(()) => Ok(if c.json() { format!("{}\n", json!({"valid": true})) } else { "valid frieze pattern\n".into() }),
                Err(v) => Err(Failure::Math(format!("not a frieze pattern: {v}"))),
            }
        }
        FriezeOp::Type { file } => {
            let f = io::read_frieze(&read(&file)?)?;
            let types = f.type_of(None);
            if c.json() {
                return Ok(format!("{}\n", json!({"types": types})));
            }
            if types.is_empty() {
                Ok("type: none\n".into())
            } else {
                let names: Vec<String> = types.iter().map(|p| format!("Λ_{p}")).collect();
                Ok(format!("type: {}\n", names.join(", ")))
            }
        }
        FriezeOp::ToDissection { file } => {
            let f = io::read_frieze(&read(&file)?)?;
            let d = f.to_dissection()?;
            if c.json() {
                return Ok(format!("{}\n", io::to_json(&io::dissection_to_file(&d))));
            }
            let parts: Vec<String> = d.diagonal_list().iter().map(|(a, b)| format!("({a},{b})")).collect();
            let sizes: Vec<String> = d.cells().iter().map(|cell| cell.len().to_string()).collect();
            Ok(format!(
                "n = {}\ndiagonals: {}\ncell sizes: {}\n",
                d.n(),
                if parts.is_empty() { "none".into() } else { parts.join(" ") },
                sizes.join(" ")
            ))
        }
        FriezeOp::Char46 { file } => {
            let f = io::read_frieze(&read(&file)?)?;
            let types = f.type_of(None);
            let rep = f.characterize_46();
            if c.json() {
                let js = |p: u32, s: &RowStructure| {
                    json!({
                        "type_contains": types.contains(&p),
                        "odd_rows_integral": s.odd_rows_integral,
                        "even_rows_multiples": s.even_rows_multiples,
                        "congruence": s.congruence,
                        "row_structure": s.holds(),
                    })
                };
                return Ok(format!("{}\n", json!({"p4": js(4, &rep.p4), "p6": js(6, &rep.p6)})));
            }
            let mut out = String::new();
            for (p, s) in [(4u32, &rep.p4), (6, &rep.p6)] {
                let _ = writeln!(
                    out,
                    "Λ_{p}: type {}; odd rows integral {}; even rows in Z·λ_{p} {}; congruence {}; row structure {}",
                    yes(types.contains(&p)),
                    yes(s.odd_rows_integral),
                    yes(s.even_rows_multiples),
                    yes(s.congruence),
                    yes(s.holds())
                );
            }
            Ok(out)
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn window_json(q: &PeriodicQuiddity, v: &InfiniteFriezeView, h: usize) -> serde_json::Value {
    let t = v.period() as i64;
    let rows: Vec<Vec<io::Coeffs>> = (2..=h as i64)
        .map(|d| (0..t).map(|i| io::Coeffs::from(&v.entry(i, i + d))).collect())
        .collect();
    json!({
        "p": q.p(),
        "period": q.period(),
        "multiples": q.multiples(),
        "height": h,
        "window": rows,
    })
}

fn strip(c: &Ctx, op: StripOp) -> Res {
    match op {
        StripOp::FromQuiddity { file, height } => {
            let q = io::read_quiddity(&read(&file)?, false)?;
            let h = height.unwrap_or_else(|| default_height(&q));
            let v = InfiniteFriezeView::new(q.clone());
            v.positivity_check(h)?;
            if c.json() {
                Ok(format!("{}\n", serde_json::to_string_pretty(&window_json(&q, &v, h)).unwrap()))
            } else {
                Ok(render_window(&v, h, c.ascii, c.brackets))
            }
        }
        StripOp::ToFrieze { file, height } => {
            let s = io::read_strip(&read(&file)?)?;
            let back = from_strip(&s, height)?;
            let v = InfiniteFriezeView::new(back.quiddity.clone());
            if c.json() {
                return Ok(format!(
                    "{}\n",
                    serde_json::to_string_pretty(&window_json(&back.quiddity, &v, back.height)).unwrap()
                ));
            }
            let mults: Vec<String> = back.quiddity.multiples().iter().map(|m| m.to_string()).collect();
            let shown = back.height.min(8);
            Ok(format!(
                "quiddity multiples of λ_{}: ({})\n{}",
                s.p,
                mults.join(", "),
                render_window(&v, shown, c.ascii, c.brackets)
            ))
        }
        StripOp::Theta { file, span } => {
            let q = io::read_quiddity(&read(&file)?, false)?;
            let span = span.unwrap_or_else(|| default_height(&q));
            let v = InfiniteFriezeView::new(q);
            let th = theta_arcs(&v, span)?;
            if c.json() {
                return Ok(format!("{}\n", json!({"max_span": span, "arcs": th.classes()})));
            }
            if th.classes().is_empty() {
                return Ok(format!("no peripheral arcs up to span {span}\n"));
            }
            let parts: Vec<String> = th.classes().iter().map(|(i, j)| format!("({i},{j})")).collect();
            Ok(format!("peripheral arc classes: {}\n", parts.join(" ")))
        }
        StripOp::Report { file, span } => {
            let q = io::read_quiddity(&read(&file)?, false)?;
            let span = span.unwrap_or_else(|| default_height(&q));
            let v = InfiniteFriezeView::new(q.clone());
            let s = to_strip(&v, Some(span))?;
            if c.json() {
                return Ok(format!("{}\n", io::to_json(&io::strip_to_file(&s))));
            }
            let th = theta_arcs(&v, span)?;
            let mut out = strip_text(&s);
            for b in 0..q.period() as i64 {
                let rep = vertex_report(&v, &th, b)?;
                let _ = writeln!(
                    out,
                    "vertex {b}: multiple {}, arcs {}, {}, bridging arcs {}",
                    q.multiple(b),
                    rep.arcs_attached,
                    if rep.saturated { "saturated" } else { "not saturated" },
                    rep.defect
                );
            }
            Ok(out)
        }
    }
}

fn strip_text(s: &StripAngulation) -> String {
    let pairs = |v: &[(i64, i64)]| -> String {
        if v.is_empty() {
            "none".into()
        } else {
            v.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ")
        }
    };
    format!(
        "p = {}, period = {}\nperipheral: {}\nbridging: {}\nupper advance: {}\n",
        s.p,
        s.period,
        pairs(&s.peripheral),
        pairs(&s.bridging),
        s.upper_advance
    )
}

fn matrix_text(c: &Ctx, g: &CartanGraph, m: &CartanMatrix2) -> String {
    let lam = FieldElement::lambda(g.ctx());
    format!(
        "[[2, {}], [{}, 2]]",
        c.r(&lam.scale_i64(m.c12_mult)),
        c.r(&lam.scale_i64(m.c21_mult))
    )
}

fn graph_text(c: &Ctx, g: &CartanGraph) -> String {
    let mut out = String::new();
    let periodic = g.is_periodic();
    for a in 0..g.size() as i64 {
        let _ = writeln!(
            out,
            "{} {a}: ρ_1 → {}, ρ_2 → {}, C = {}",
            if periodic { "residue" } else { "object" },
            g.rho(1, a),
            g.rho(2, a),
            matrix_text(c, g, &g.matrix(a))
        );
    }
    out
}

fn report_text(rep: &frieze_core::cartan::RootSystemReport) -> String {
    let r4 = match &rep.r4 {
        R4Status::Holds => "holds".to_string(),
        R4Status::Fails { object, m, reached } => format!("fails: m = {m}, (ρ_1ρ_2)^{m}({object}) = {reached}"),
        R4Status::Vacuous => format!("vacuous (roots not closed at cap {})", rep.cap),
    };
    format!(
        "R1 {}\nR2 {}\nR3 {}\nR4 {}\nverdict: {} up to cap {}\n",
        if rep.r1 { "holds" } else { "fails" },
        if rep.r2 { "holds" } else { "fails" },
        if rep.r3 { "holds" } else { "fails" },
        r4,
        if rep.holds_up_to_cap() { "root system" } else { "not a root system" },
        rep.cap
    )
}

fn cartan(c: &Ctx, op: CartanOp) -> Res {
    match op {
        CartanOp::Validate { file } => {
            let g = io::read_graph(&read(&file)?)?;
            let rep = validate_graph(&g);
            if !rep.is_valid() {
                return Err(Failure::Math(rep.violations.join("\n")));
            }
            let shape = rep.shape.map_or("disconnected".to_string(), |s| s.to_string());
            if c.json() {
                return Ok(format!("{}\n", json!({"valid": true, "shape": shape})));
            }
            Ok(format!("valid Cartan graph of type Λ_{} ({shape})\n", g.p()))
        }
        CartanOp::FromQuiddity { file } => {
            let q = io::read_quiddity(&read(&file)?, true)?;
            let g = graph_from_quiddity(&q);
            if c.json() {
                Ok(format!("{}\n", io::to_json(&io::graph_to_file(&g))))
            } else {
                Ok(graph_text(c, &g))
            }
        }
        CartanOp::Quiddity { file, object } => {
            let g = io::read_graph(&read(&file)?)?;
            let q = quiddity_of_graph(&g, object)?;
            if c.json() {
                return Ok(format!("{}\n", io::to_json(&io::quiddity_to_file(&q))));
            }
            let m: Vec<String> = q.multiples().iter().map(|x| x.to_string()).collect();
            Ok(format!("quiddity at {object}: ({})·λ_{}\n", m.join(", "), q.p()))
        }
        CartanOp::Roots { file, cap, object } => {
            let g = io::read_graph(&read(&file)?)?;
            valid_or_fail(&g)?;
            let rs = real_roots(&g, object, cap);
            if c.json() {
                let all: Vec<Root> = rs.all().cloned().collect();
                return Ok(format!("{}\n", io::roots_to_json(&all)));
            }
            Ok(roots_text(c, &rs, object))
        }
        CartanOp::CheckRootsystem { file, cap } => {
            let g = io::read_graph(&read(&file)?)?;
            valid_or_fail(&g)?;
            let rep = check_root_system(&g, cap);
            if c.json() {
                let text = format!(
                    "{}\n",
                    json!({"r1": rep.r1, "r2": rep.r2, "r3": rep.r3, "r4": format!("{:?}", rep.r4), "closed": rep.closed, "holds_up_to_cap": rep.holds_up_to_cap(), "cap": cap})
                );
                return if rep.holds_up_to_cap() { Ok(text) } else { Err(Failure::Report(text, rep.findings.join("; "))) };
            }
            if rep.holds_up_to_cap() {
                Ok(report_text(&rep))
            } else {
                Err(Failure::Report(report_text(&rep), rep.findings.join("; ")))
            }
        }
        CartanOp::RootsFromFrieze { file, anchor, count } => {
            let q = io::read_quiddity(&read(&file)?, true)?;
            let v = InfiniteFriezeView::new(q);
            let fr = roots_from_frieze(&v, anchor, count);
            if c.json() {
                return Ok(format!("{}\n", io::roots_to_json(&fr.all())));
            }
            let line = |rs: &[Root]| rs.iter().map(|r| c.root(r)).collect::<Vec<_>>().join(" ");
            Ok(format!("rightward: {}\nleftward: {}\n", line(&fr.rightward), line(&fr.leftward)))
        }
    }
}

fn valid_or_fail(g: &CartanGraph) -> std::result::Result<(), Failure> {
    let rep = validate_graph(g);
    if rep.is_valid() {
        Ok(())
    } else {
        Err(Failure::Math(rep.violations.join("\n")))
    }
}

fn roots_text(c: &Ctx, rs: &frieze_core::cartan::RootSet, object: i64) -> String {
    let pos = rs.positive();
    let mut out = format!(
        "object {object}: {} real roots, {} positive, {}\n",
        rs.roots.len(),
        pos.len(),
        if rs.closed { "closed".to_string() } else { format!("not closed at cap {}", rs.cap) }
    );
    for r in &pos {
        let _ = writeln!(out, "{}", c.root(r));
    }
    out
}

fn examples(c: &Ctx, name: &str) -> Res {
    let q4 = |m: &[i64]| PeriodicQuiddity::new(4, m.to_vec()).expect("valid quiddity");
    match name {
        "ex2.3a" => {
            let ctx = FieldContext::new(3)?;
            let q: Vec<FieldElement> = [2, 1, 3, 1, 2].iter().map(|&k| FieldElement::from_int(&ctx, k)).collect();
            emit_frieze(c, &FriezePattern::from_quiddity(&q)?)
        }
        "ex2.3b" => {
            let ctx = FieldContext::new(4)?;
            let q: Vec<FieldElement> = [[0, 1], [0, 1], [1, 1], [1, 0], [1, 1]]
                .iter()
                .map(|k| FieldElement::from_i64_coeffs(&ctx, k))
                .collect();
            emit_frieze(c, &FriezePattern::from_quiddity(&q)?)
        }
        "ex2.7" => {
            let d = frieze_core::dissection::build_dissection(8, &[(0, 3)])?;
            emit_frieze(c, &FriezePattern::from_entry_table(&all_entries(&d)?))
        }
        "hexagon-lambda4" => {
            let d = frieze_core::dissection::build_dissection(6, &[(0, 3)])?;
            emit_frieze(c, &FriezePattern::from_entry_table(&all_entries(&d)?))
        }
        "ex6.7" => {
            let v = InfiniteFriezeView::new(q4(&[2]));
            v.positivity_check(7)?;
            Ok(render_window(&v, 7, c.ascii, c.brackets))
        }
        "strip-ladder" | "strip-fan" => {
            let (q, h) = if name == "strip-ladder" { (q4(&[2]), 7) } else { (q4(&[2, 1]), 8) };
            let v = InfiniteFriezeView::new(q);
            let s = to_strip(&v, None)?;
            if c.json() {
                return Ok(format!("{}\n", io::to_json(&io::strip_to_file(&s))));
            }
            Ok(format!("{}\n{}", strip_text(&s), render_window(&v, h, c.ascii, c.brackets)))
        }
        "ex8.3" => {
            let g = CartanGraph::finite(
                3,
                vec![1, 0, 3, 2, 4],
                vec![0, 2, 1, 4, 3],
                vec![
                    CartanMatrix2::new(-1, -3),
                    CartanMatrix2::new(-1, -2),
                    CartanMatrix2::new(-2, -2),
                    CartanMatrix2::new(-2, -1),
                    CartanMatrix2::new(-3, -1),
                ],
            )?;
            cartan_example(c, &g, &(0..5).collect::<Vec<_>>(), 64)
        }
        "diag-graph" => {
            let g = CartanGraph::periodic(4, vec![-1, 1], vec![1, -1], vec![CartanMatrix2::new(0, 0); 2])?;
            cartan_example(c, &g, &[0], 64)
        }
        "lambda4-graph" => {
            let g = CartanGraph::periodic(4, vec![1, -1], vec![-1, 1], vec![CartanMatrix2::new(-2, -1); 2])?;
            let mut out = String::new();
            let s = reflect(&g, 0, 1, &Root::alpha(g.ctx(), 2));
            let t = reflect(&g, 0, 2, &Root::alpha(g.ctx(), 1));
            let _ = writeln!(out, "σ_1(α_2) = {}\nσ_2(α_1) = {}", c.root(&s), c.root(&t));
            out.push_str(&cartan_example(c, &g, &[0], 8)?);
            Ok(out)
        }
        _ => match name.strip_prefix("dihedral-").and_then(|p| p.parse::<u32>().ok()) {
            Some(p) if p >= 3 => {
                let g = CartanGraph::dihedral(p)?;
                let order = dihedral_order(&g, 0, 4 * p as usize);
                let mut out = format!(
                    "order of σ_1σ_2: {}\n",
                    order.map_or("not found".to_string(), |k| k.to_string())
                );
                out.push_str(&cartan_example(c, &g, &[0], 64)?);
                Ok(out)
            }
            _ => Err(Failure::Input(format!(
                "unknown example {name:?}; known: {}, dihedral-P",
                EXAMPLES.join(", ")
            ))),
        },
    }
}

fn cartan_example(c: &Ctx, g: &CartanGraph, objects: &[i64], cap: usize) -> Res {
    let rep = validate_graph(g);
    let mut out = graph_text(c, g);
    let _ = writeln!(
        out,
        "shape: {}",
        rep.shape.map_or("disconnected".to_string(), |s| s.to_string())
    );
    let q = quiddity_of_graph(g, 0)?;
    let m: Vec<String> = q.multiples().iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "quiddity at 0: ({})·λ_{}", m.join(", "), g.p());
    for &a in objects {
        out.push_str(&roots_text(c, &real_roots(g, a, cap), a));
    }
    out.push_str(&report_text(&check_root_system(g, cap)));
    Ok(out)
}
