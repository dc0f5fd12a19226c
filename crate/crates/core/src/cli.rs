//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::austere::{is_austere, root_vector, shape_spectrum, is_negation_symmetric, BasePoint, MultiplicityMap, Witness};
use crate::catalog::{eval_formula, fmt_bindings, parse_bindings, parse_formula, Bindings, Catalog};
use crate::classify::{
    emit_table, imaginary_roots, real_roots, root_set_latex, root_set_text, table_rows, RootSet, TableFormat,
};
use crate::error::{Error, Result};
use crate::involutions::{induced_involution, render_ascii, standard_diagram, sweep, SatakeDiagram, SatakeLabel};
use crate::rational::{fmt_rational, parse_rational_list};
use crate::recipe::{builtin_input, run_recipe, verify_against_catalog, AmbientData, RestrictionResult};
use crate::rootcore::{Root, RootSystem};
use crate::verify::{run_all, Options};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "austere", version, about = "Restricted roots, Satake diagrams and austere orbits, in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root systems.
    Roots {
        #[command(subcommand)]
        cmd: RootsCmd,
    },
    /// Satake diagrams.
    Satake {
        #[command(subcommand)]
        cmd: SatakeCmd,
    },
    /// Real and imaginary roots.
    Classify {
        #[command(subcommand)]
        cmd: ClassifyCmd,
    },
    /// The austere criterion at a point.
    Austere {
        #[command(subcommand)]
        cmd: AustereCmd,
    },
    /// Shape spectrum of the orbit through X in direction xi.
    Spectrum(SpectrumArgs),
    /// The restriction recipe.
    Recipe {
        #[command(subcommand)]
        cmd: RecipeCmd,
    },
    /// The catalog of symmetric pairs.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// The acceptance suite.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum RootsCmd {
    /// List all roots of a system such as `A2`, `E6` or `B2+G2`.
    Gen {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args, Debug)]
pub struct DiagramArgs {
    /// Diagram type such as `AIII`, `EIII` or `B+B`.
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub split: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum SatakeCmd {
    Show {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCmd {
    /// Roots with `θ̃α = α`.
    Real {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Roots with `θ̃α = -α`.
    Imaginary {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The real-root table over the standard sweep.
    Table1 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        /// Only rows of this type.
        #[arg(long = "type")]
        ty: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct PointArgs {
    /// A diagram type (`EII`) or a root system (`A2`).
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub split: Option<usize>,
    /// Multiplicities as a JSON object such as `{"a1+a2": 2}`.
    #[arg(long)]
    pub mult: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum AustereCmd {
    Check {
        #[command(flatten)]
        point: PointArgs,
        /// X = A_α for a root such as `a2` or `a1+2a2`.
        #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
        root: Option<String>,
        /// X in simple-root coordinates, e.g. `3,1` or `1/2,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub xi: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum RecipeCmd {
    Run {
        /// A JSON input file, or the name of a shipped input.
        #[arg(long)]
        input: String,
        /// Catalog pair the result should match.
        #[arg(long)]
        expect: Option<String>,
        /// Catalog parameters, e.g. `n=4,p=1`.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// Rows whose pair contains the pattern (case and spaces ignored).
    Lookup {
        #[arg(default_value = "")]
        pattern: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a formula or condition.
    Eval {
        formula: String,
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Evaluate the (type, rank, split rank) of a pair.
    Instantiate {
        pattern: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Run all acceptance criteria.
    All {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Parses `args` (program name first), runs, writes to `out`/`err` and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_FAILED
            }
        }
    }
}

fn unsupported(format: Format, what: &str) -> Error {
    Error::input(format!("format {format:?} is not supported for {what}").to_lowercase())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cmd: &Command) -> Result<(String, i32)> {
    let ok = |s: String| Ok((s, EXIT_OK));
    match cmd {
        Command::Roots { cmd: RootsCmd::Gen { ty, format } } => ok(roots_gen(ty, *format)?),
        Command::Satake { cmd: SatakeCmd::Show { diagram, format } } => ok(satake_show(diagram, *format)?),
        Command::Classify { cmd } => match cmd {
            ClassifyCmd::Real { diagram, format } => ok(classify_set(diagram, *format, true)?),
            ClassifyCmd::Imaginary { diagram, format } => ok(classify_set(diagram, *format, false)?),
            ClassifyCmd::Table1 { format, max_rank, ty } => ok(table1(*format, *max_rank, ty.as_deref())?),
        },
        Command::Austere { cmd: AustereCmd::Check { point, root, coeffs, format } } => {
            ok(austere_check(point, root.as_deref(), coeffs.as_deref(), *format)?)
        }
        Command::Spectrum(a) => ok(spectrum(a)?),
        Command::Recipe { cmd: RecipeCmd::Run { input, expect, params, format } } => {
            recipe_run(input, expect.as_deref(), params.as_deref(), *format)
        }
        Command::Catalog { cmd } => match cmd {
            CatalogCmd::Lookup { pattern, format } => ok(catalog_lookup(pattern, *format)?),
            CatalogCmd::Eval { formula, params } => {
                let f = parse_formula(formula)?;
                ok(format!("{}\n", eval_formula(&f, &parse_bindings(params)?)?))
            }
            CatalogCmd::Instantiate { pattern, params, format } => {
                ok(catalog_instantiate(pattern, params, *format)?)
            }
        },
        Command::Verify { cmd: VerifyCmd::All { max_rank, samples, seed } } => {
            let mut opts = Options {
                max_rank: *max_rank,
                samples: *samples,
                ..Options::default()
            };
            if let Some(s) = seed {
                opts.seed = *s;
            }
            let outcomes = run_all(&opts)?;
            let mut s = String::new();
            for o in &outcomes {
                let _ = writeln!(s, "{o}");
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let _ = writeln!(s, "{passed} of {} criteria pass", outcomes.len());
            let code = if passed == outcomes.len() { EXIT_OK } else { EXIT_FAILED };
            Ok((s, code))
        }
    }
}

fn roots_gen(ty: &str, format: Format) -> Result<String> {
    let rs = RootSystem::from_str_descriptor(ty)?;
    match format {
        Format::Text => {
            let mut s = format!("{}: rank {}, {} roots\n", rs.descriptor(), rs.rank(), rs.roots().len());
            for r in rs.roots() {
                let _ = writeln!(s, "{}", r.pretty());
            }
            Ok(s)
        }
        Format::Json => Ok(to_json(&rs.to_json())),
        Format::Latex => Err(unsupported(format, "roots gen")),
    }
}

/// Standard diagram for `--type/--rank/--split`; the exceptional types
/// need no rank.
pub fn diagram_from_args(a: &DiagramArgs) -> Result<SatakeDiagram> {
    let label: SatakeLabel = a.ty.parse()?;
    let (r, l) = match (a.rank, a.split, label.fixed_params()) {
        (Some(r), Some(l), _) => (r, l),
        (None, None, Some(p)) => p,
        (Some(r), None, Some((fr, fl))) if r == fr => (fr, fl),
        _ => {
            return Err(Error::input(format!(
                "--rank and --split are required for {label}"
            )))
        }
    };
    standard_diagram(label, r, l)
}

fn satake_show(a: &DiagramArgs, format: Format) -> Result<String> {
    let d = diagram_from_args(a)?;
    match format {
        Format::Text => {
            let inv = induced_involution(&d)?;
            let mut s = render_ascii(&d);
            s.push_str("theta~ on simple roots:\n");
            for i in 0..d.r() {
                let img = Root(inv.matrix().column(i));
                let _ = writeln!(s, "  a{} -> {}", i + 1, img.pretty());
            }
            Ok(s)
        }
        Format::Json => Ok(to_json(&d.to_json())),
        Format::Latex => Err(unsupported(format, "satake show")),
    }
}

#[derive(Serialize)]
struct RootSetJson {
    #[serde(rename = "type")]
    label: String,
    r: usize,
    l: usize,
    kind: &'static str,
    roots: Vec<Vec<i64>>,
}

fn classify_set(a: &DiagramArgs, format: Format, real: bool) -> Result<String> {
    let d = diagram_from_args(a)?;
    let inv = induced_involution(&d)?;
    let set: RootSet = if real {
        real_roots(d.rs(), &inv)?
    } else {
        imaginary_roots(d.rs(), &inv)?
    };
    Ok(match format {
        Format::Text => format!("{}\n", root_set_text(&set)),
        Format::Latex => format!("{}\n", root_set_latex(&set)),
        Format::Json => to_json(&RootSetJson {
            label: d.label.clone(),
            r: d.r(),
            l: d.l(),
            kind: if real { "real" } else { "imaginary" },
            roots: set.ordered().into_iter().map(|r| r.0).collect(),
        }),
    })
}

fn table1(format: Format, max_rank: usize, ty: Option<&str>) -> Result<String> {
    let only: Option<SatakeLabel> = ty.map(str::parse).transpose()?;
    let selection: Vec<_> = sweep(max_rank)
        .into_iter()
        .filter(|(l, _, _)| only.map_or(true, |o| o == *l))
        .collect();
    let rows = table_rows(&selection)?;
    let f = match format {
        Format::Text => TableFormat::Text,
        Format::Json => TableFormat::Json,
        Format::Latex => TableFormat::Latex,
    };
    let mut s = emit_table(&rows, f);
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(s)
}

// A point needs a root system: either a diagram's or a plain descriptor.
fn system_from_args(p: &PointArgs) -> Result<RootSystem> {
    match p.ty.parse::<SatakeLabel>() {
        Ok(_) => {
            let d = diagram_from_args(&DiagramArgs {
                ty: p.ty.clone(),
                rank: p.rank,
                split: p.split,
            })?;
            Ok(d.rs().clone())
        }
        Err(_) => RootSystem::from_str_descriptor(&p.ty),
    }
}

fn mult_from_args(rs: &RootSystem, p: &PointArgs) -> Result<MultiplicityMap> {
    match &p.mult {
        None => Ok(MultiplicityMap::unit()),
        Some(path) => {
            let s = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
            MultiplicityMap::from_json(rs, &s)
        }
    }
}

fn austere_check(p: &PointArgs, root: Option<&str>, coeffs: Option<&str>, format: Format) -> Result<String> {
    let rs = system_from_args(p)?;
    let m = mult_from_args(&rs, p)?;
    let x = match (root, coeffs) {
        (Some(r), _) => root_vector(&rs, &Root::parse(r, rs.rank())?)?,
        (None, Some(c)) => BasePoint::new(&rs, parse_rational_list(c)?)?,
        (None, None) => return Err(Error::input("give --root or --coeffs")),
    };
    let rep = is_austere(&rs, &x, &m);
    match format {
        Format::Json => Ok(to_json(&rep.to_json())),
        Format::Latex => Err(unsupported(format, "austere check")),
        Format::Text => {
            let v = |xs: &[crate::rational::Rational]| {
                xs.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
            };
            let mut s = format!("X = ({}) in {}\n", v(&rep.x), rs.descriptor());
            let _ = writeln!(s, "verdict: {}", if rep.verdict { "austere" } else { "not austere" });
            let _ = writeln!(s, "multiset ({} distinct vectors):", rep.multiset.len());
            for (i, (vec, c)) in rep.multiset.iter().enumerate() {
                let _ = writeln!(s, "  [{i}] ({}) x{c}", v(vec));
            }
            match &rep.witness {
                Witness::Pairing(p) => {
                    let parts: Vec<String> = p.iter().map(|(i, j)| format!("{i}<->{j}")).collect();
                    let _ = writeln!(s, "pairing: {}", parts.join(" "));
                }
                Witness::Unmatched(i) => {
                    let _ = writeln!(s, "entry [{i}] has no negative partner");
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct SpectrumJson {
    #[serde(rename = "X")]
    x: Vec<String>,
    xi: Vec<String>,
    spectrum: Vec<SpectrumEntryJson>,
    symmetric: bool,
}

#[derive(Serialize)]
struct SpectrumEntryJson {
    value: String,
    count: u64,
}

fn spectrum(a: &SpectrumArgs) -> Result<String> {
    let rs = system_from_args(&a.point)?;
    let m = mult_from_args(&rs, &a.point)?;
    let x = BasePoint::new(&rs, parse_rational_list(&a.x)?)?;
    let xi = parse_rational_list(&a.xi)?;
    let spec = shape_spectrum(&rs, &x, &xi, &m)?;
    let symmetric = is_negation_symmetric(&spec);
    match a.format {
        Format::Json => Ok(to_json(&SpectrumJson {
            x: x.coords().iter().map(fmt_rational).collect(),
            xi: xi.iter().map(fmt_rational).collect(),
            spectrum: spec
                .iter()
                .map(|(v, c)| SpectrumEntryJson {
                    value: fmt_rational(v),
                    count: *c,
                })
                .collect(),
            symmetric,
        })),
        Format::Latex => Err(unsupported(a.format, "spectrum")),
        Format::Text => {
            let mut s = String::new();
            for (v, c) in &spec {
                let _ = writeln!(s, "{} x{c}", fmt_rational(v));
            }
            let _ = writeln!(s, "symmetric under negation: {symmetric}");
            Ok(s)
        }
    }
}

fn load_input(input: &str) -> Result<(String, AmbientData)> {
    let src = match builtin_input(input) {
        Some(s) => s.to_string(),
        None => std::fs::read_to_string(input)
            .map_err(|e| Error::input(format!("cannot read {input}: {e}")))?,
    };
    let amb = AmbientData::from_json(&src)?;
    let name = amb.name.clone().unwrap_or_else(|| input.to_string());
    Ok((name, amb))
}

fn recipe_text(name: &str, out: &RestrictionResult) -> String {
    let mut s = format!("input: {name}\n");
    let types: Vec<String> = out.labels.iter().map(|l| l.to_string()).collect();
    let _ = writeln!(
        s,
        "restricted system: {} ({} roots; {} ambient roots restrict to 0)",
        out.restricted().descriptor(),
        out.restricted().roots().len(),
        out.fixed.len()
    );
    let _ = writeln!(
        s,
        "type: {}",
        if types.is_empty() { "unrecognized".to_string() } else { types.join(", ") }
    );
    let _ = writeln!(s, "rank: {}\nsplit rank: {}", out.rank, out.split_rank);
    s.push_str(&render_ascii(&out.diagram));
    s.push_str("fiber multiplicities:\n");
    for r in out.restricted().positives() {
        let _ = writeln!(s, "  {} {}", r.pretty(), out.multiplicity(r));
    }
    s
}

fn recipe_run(input: &str, expect: Option<&str>, params: Option<&str>, format: Format) -> Result<(String, i32)> {
    let (name, amb) = load_input(input)?;
    let out = run_recipe(&amb)?;
    let mut s = match format {
        Format::Text => recipe_text(&name, &out),
        Format::Json => to_json(&out.to_json()),
        Format::Latex => return Err(unsupported(format, "recipe run")),
    };
    let target = match (expect, &amb.expect) {
        (Some(p), _) => Some((
            p.to_string(),
            params.map(parse_bindings).transpose()?.unwrap_or_default(),
        )),
        (None, Some(e)) => Some((e.pair.clone(), e.params.clone())),
        (None, None) => None,
    };
    let mut code = EXIT_OK;
    if let Some((pair, b)) = target {
        let cat = Catalog::builtin();
        let hits = cat.lookup(&pair);
        let entry = match hits.as_slice() {
            [] => return Err(Error::input(format!("no catalog row matches {pair}"))),
            [first, rest @ ..] => {
                if rest.iter().any(|e| e.pair != first.pair || e.section != first.section) {
                    return Err(Error::input(format!("{pair} matches several catalog pairs")));
                }
                *first
            }
        };
        let cmp = verify_against_catalog(&out, cat, entry, &b)?;
        if format == Format::Text {
            let _ = writeln!(s, "catalog {} at {}: {cmp}", entry.pair_name(), fmt_bindings(&b));
        }
        if !cmp.matches() {
            code = EXIT_FAILED;
            if format == Format::Json {
                return Err(Error::structural(format!("catalog {}: {cmp}", entry.pair_name())));
            }
        }
    }
    Ok((s, code))
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|x| x.chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, x)| format!("{x:<w$}", w = widths[c]))
            .collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
    s
}

fn catalog_lookup(pattern: &str, format: Format) -> Result<String> {
    let hits = Catalog::builtin().lookup(pattern);
    match format {
        Format::Json => Ok(to_json(&hits.iter().map(|e| e.to_json()).collect::<Vec<_>>())),
        Format::Latex => Err(unsupported(format, "catalog lookup")),
        Format::Text => {
            if hits.is_empty() {
                return Ok("(none)\n".into());
            }
            let mut rows = vec![vec![
                "pair".to_string(),
                "type".into(),
                "rank".into(),
                "s-rank".into(),
                "condition".into(),
                "note".into(),
            ]];
            for e in hits {
                rows.push(vec![
                    e.pair_name(),
                    e.label.to_string(),
                    e.rank.to_string(),
                    e.srank.to_string(),
                    e.cond.to_string(),
                    e.flag.clone().unwrap_or_default(),
                ]);
            }
            Ok(align(&rows))
        }
    }
}

fn catalog_instantiate(pattern: &str, params: &str, format: Format) -> Result<String> {
    let cat = Catalog::builtin();
    let hits = cat.lookup(pattern);
    let Some(first) = hits.first() else {
        return Err(Error::input(format!("no catalog row matches {pattern}")));
    };
    if hits.iter().any(|e| e.pair != first.pair || e.section != first.section) {
        return Err(Error::input(format!("{pattern} matches several catalog pairs")));
    }
    let b: Bindings = parse_bindings(params)?;
    let inst = cat.instantiate(first, &b)?;
    match format {
        Format::Text => Ok(format!("{} at {}: {inst}\n", first.pair_name(), fmt_bindings(&b))),
        Format::Json => Ok(to_json(&inst)),
        Format::Latex => Err(unsupported(format, "catalog instantiate")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["austere"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn real_roots_of_eiii() {
        let (code, out, _) = call(&["classify", "real", "--type", "EIII"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim().matches('±').count(), 2, "{out}");
    }

    #[test]
    fn austere_eii_a2() {
        let (code, out, _) = call(&["austere", "check", "--type", "EII", "--root", "a2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], serde_json::Value::Bool(true));
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["satake", "show", "--type", "AI", "--rank", "3", "--split", "2"]).0, 2);
        assert_eq!(call(&["satake", "show", "--type", "AIII"]).0, 2);
        assert_eq!(call(&["roots", "gen", "--type", "A2", "--format", "latex"]).0, 2);
        assert_eq!(call(&["catalog", "eval", "min("]).0, 2);
        assert_eq!(call(&["catalog", "eval", "n+1"]).0, 2);
    }

    #[test]
    fn empty_set_text() {
        let (code, out, _) = call(&["classify", "real", "--type", "AII", "--rank", "3", "--split", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "(none)\n");
    }
}
