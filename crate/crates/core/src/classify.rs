//! Real and imaginary restricted roots, by brute force and by closed form.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::involutions::{
    induced_involution, standard_diagram, standard_diagram_admissible, LatticeInvolution,
    SatakeLabel,
};
use crate::rootcore::{canonical_sort, Root, RootSystem, RootSystemDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Imaginary,
}

/// A negation-closed set of roots of one system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub descriptor: RootSystemDescriptor,
    pub members: BTreeSet<Root>,
    pub kind: RootKind,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.members.contains(r)
    }

    /// Members in canonical order.
    pub fn ordered(&self) -> Vec<Root> {
        let mut v: Vec<Root> = self.members.iter().cloned().collect();
        canonical_sort(&mut v);
        v
    }

    pub fn positives(&self) -> Vec<Root> {
        self.ordered().into_iter().filter(Root::is_positive).collect()
    }

    pub fn is_negation_closed(&self) -> bool {
        self.members.iter().all(|r| self.members.contains(&r.neg()))
    }
}

fn fixed_by(rs: &RootSystem, inv: &LatticeInvolution, sign: i64, kind: RootKind) -> Result<RootSet> {
    if inv.matrix().dim() != rs.rank() {
        return Err(Error::Dimension {
            expected: rs.rank(),
            got: inv.matrix().dim(),
        });
    }
    if !inv.is_validated() {
        let failed: Vec<&str> = inv.report().failures().iter().map(|c| c.name).collect();
        return Err(Error::Unvalidated(failed.join(", ")));
    }
    let members = rs
        .roots()
        .iter()
        .filter(|r| {
            inv.apply(r.coeffs())
                .iter()
                .zip(r.coeffs())
                .all(|(a, b)| *a == sign * b)
        })
        .cloned()
        .collect();
    Ok(RootSet {
        descriptor: rs.descriptor().clone(),
        members,
        kind,
    })
}

/// Roots fixed by `θ̃`.
pub fn real_roots(rs: &RootSystem, inv: &LatticeInvolution) -> Result<RootSet> {
    fixed_by(rs, inv, 1, RootKind::Real)
}

/// Roots negated by `θ̃`.
pub fn imaginary_roots(rs: &RootSystem, inv: &LatticeInvolution) -> Result<RootSet> {
    fixed_by(rs, inv, -1, RootKind::Imaginary)
}

// Indicator of a_a + ... + a_b (1-based, empty when a > b).
fn seg(n: usize, a: usize, b: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    for k in a..=b.min(n) {
        if k >= 1 {
            v[k - 1] = 1;
        }
    }
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(k: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| k * x).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    seg(n, i, i)
}

const EII_REAL: [[i64; 6]; 12] = [
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 1, 1, 1, 0],
    [0, 1, 0, 1, 0, 0],
    [0, 1, 1, 1, 1, 0],
    [0, 1, 1, 2, 1, 0],
    [1, 0, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 2, 1, 1],
    [1, 1, 2, 2, 2, 1],
    [1, 1, 2, 3, 2, 1],
    [1, 2, 2, 3, 2, 1],
];

const EIII_REAL: [[i64; 6]; 2] = [[1, 0, 1, 1, 1, 1], [1, 2, 2, 3, 2, 1]];

const EVI_REAL: [[i64; 7]; 12] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0],
    [0, 1, 1, 2, 1, 0, 0],
    [1, 1, 1, 2, 1, 0, 0],
    [1, 1, 2, 2, 1, 0, 0],
    [1, 1, 2, 2, 2, 2, 1],
    [1, 1, 1, 2, 2, 2, 1],
    [2, 2, 3, 4, 3, 2, 1],
    [1, 2, 2, 4, 3, 2, 1],
    [1, 2, 3, 4, 3, 2, 1],
    [0, 1, 1, 2, 2, 2, 1],
];

const EVII_REAL: [[i64; 7]; 3] = [
    [0, 0, 0, 0, 0, 0, 1],
    [0, 1, 1, 2, 2, 2, 1],
    [2, 2, 3, 4, 3, 2, 1],
];

const EIX_REAL: [[i64; 8]; 12] = [
    [0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [0, 1, 1, 2, 2, 2, 1, 0],
    [0, 1, 1, 2, 2, 2, 1, 1],
    [0, 1, 1, 2, 2, 2, 2, 1],
    [2, 2, 3, 4, 3, 2, 1, 0],
    [2, 2, 3, 4, 3, 2, 2, 1],
    [2, 2, 3, 4, 3, 2, 1, 1],
    [2, 3, 4, 6, 5, 4, 2, 1],
    [2, 3, 4, 6, 5, 4, 3, 1],
    [2, 3, 4, 6, 5, 4, 3, 2],
];

const FII_REAL: [[i64; 4]; 1] = [[1, 2, 3, 2]];

const FIII_REAL: [[i64; 4]; 4] = [[1, 1, 1, 0], [0, 1, 2, 2], [1, 2, 3, 2], [2, 3, 4, 2]];

/// Expands the closed-form families of the real-root table for
/// `(label, r, l)`. All-real types return every root of the system.
pub fn closed_form_real_roots(label: SatakeLabel, r: usize, l: usize) -> Result<RootSet> {
    use SatakeLabel::*;
    if !standard_diagram_admissible(label, r, l) {
        // delegate for the error message
        standard_diagram(label, r, l)?;
        return Err(Error::Inadmissible {
            label: label.to_string(),
            r,
            l,
            reason: "inadmissible parameters".into(),
        });
    }
    let descriptor = label.descriptor(r)?;
    let n = r;
    let mut pos: Vec<Vec<i64>> = Vec::new();
    let all_real = match label {
        AI | EI | EV | EVIII | FI | G => true,
        DI | DII => r == l,
        _ => false,
    };
    if all_real {
        let rs = RootSystem::build(&descriptor)?;
        pos = rs.positives().iter().map(|x| x.0.clone()).collect();
    } else {
        match label {
            AII | EIV | Doubled(_) => {}
            AIII => {
                for i in 1..=l {
                    pos.push(seg(n, i, r + 1 - i));
                }
            }
            BI | BCI | BCII => {
                for j in 1..=l {
                    for i in 1..j {
                        pos.push(seg(n, i, j - 1));
                        pos.push(add(&seg(n, i, r), &seg(n, j, r)));
                    }
                }
                for i in 1..=l {
                    pos.push(seg(n, i, r));
                    if label != BI {
                        pos.push(scale(2, &seg(n, i, r)));
                    }
                }
            }
            CI | CII => {
                for j in 1..=l {
                    for i in 1..j {
                        pos.push(seg(n, i, j - 1));
                        let tail = add(&scale(2, &seg(n, j, r - 1)), &unit(n, r));
                        pos.push(add(&seg(n, i, j - 1), &tail));
                    }
                }
                for i in 1..=l {
                    pos.push(add(&scale(2, &seg(n, i, r - 1)), &unit(n, r)));
                }
            }
            BCIII => {
                for i in 1..=l {
                    pos.push(add(&unit(n, 2 * i - 1), &scale(2, &seg(n, 2 * i, r))));
                }
            }
            CIII => {
                for i in 1..=l {
                    let mid = scale(2, &seg(n, 2 * i, r - 1));
                    pos.push(add(&add(&unit(n, 2 * i - 1), &mid), &unit(n, r)));
                }
            }
            DI | DII => {
                for j in 1..=l {
                    for i in 1..j {
                        pos.push(seg(n, i, j - 1));
                        pos.push(add(&seg(n, i, r - 2), &seg(n, j, r)));
                    }
                }
            }
            DIII => {
                for i in 1..=l {
                    pos.push(add(&seg(n, 2 * i - 1, r - 2), &seg(n, 2 * i, r)));
                }
            }
            EII => pos.extend(EII_REAL.iter().map(|x| x.to_vec())),
            EIII => pos.extend(EIII_REAL.iter().map(|x| x.to_vec())),
            EVI => pos.extend(EVI_REAL.iter().map(|x| x.to_vec())),
            EVII => pos.extend(EVII_REAL.iter().map(|x| x.to_vec())),
            EIX => pos.extend(EIX_REAL.iter().map(|x| x.to_vec())),
            FII => pos.extend(FII_REAL.iter().map(|x| x.to_vec())),
            FIII => pos.extend(FIII_REAL.iter().map(|x| x.to_vec())),
            AI | EI | EV | EVIII | FI | G => unreachable!("all-real types handled above"),
        }
    }
    let mut members = BTreeSet::new();
    for v in pos {
        let root = Root(v);
        members.insert(root.neg());
        members.insert(root);
    }
    Ok(RootSet {
        descriptor,
        members,
        kind: RootKind::Real,
    })
}

/// Output formats of [`emit_table`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Json,
    Latex,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(TableFormat::Text),
            "json" => Ok(TableFormat::Json),
            "latex" => Ok(TableFormat::Latex),
            _ => Err(Error::input(format!(
                "unknown format `{s}` (expected text, json or latex)"
            ))),
        }
    }
}

impl fmt::Display for TableFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableFormat::Text => "text",
            TableFormat::Json => "json",
            TableFormat::Latex => "latex",
        })
    }
}

/// One row of the real-root table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: SatakeLabel,
    pub r: usize,
    pub l: usize,
    pub real: RootSet,
    pub total_roots: usize,
}

impl TableRow {
    pub fn all_real(&self) -> bool {
        self.real.len() == self.total_roots
    }
}

/// Computes table rows by brute force from the standard diagrams.
pub fn table_rows(selection: &[(SatakeLabel, usize, usize)]) -> Result<Vec<TableRow>> {
    selection
        .iter()
        .map(|&(label, r, l)| {
            let d = standard_diagram(label, r, l)?;
            let inv = induced_involution(&d)?;
            let real = real_roots(d.rs(), &inv)?;
            Ok(TableRow {
                label,
                r,
                l,
                real,
                total_roots: d.rs().roots().len(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowJson {
    #[serde(rename = "type")]
    pub label: String,
    pub r: usize,
    pub l: usize,
    pub real_roots: Vec<Vec<i64>>,
}

/// `±(a1+a3)` or `±a2`.
pub fn pm_text(root: &Root) -> String {
    let body = root.pretty();
    if root.coeffs().iter().filter(|&&c| c != 0).count() == 1 && root.height() == 1 {
        format!("±{body}")
    } else {
        format!("±({body})")
    }
}

/// `\pm(\alpha_{1}+\alpha_{3})` or `\pm\alpha_{2}`.
pub fn pm_latex(root: &Root) -> String {
    let body = root.latex_body();
    if root.coeffs().iter().filter(|&&c| c != 0).count() == 1 && root.height() == 1 {
        format!("\\pm{body}")
    } else {
        format!("\\pm({body})")
    }
}

/// Text rendering of a root set as `±` pairs, or `(none)`.
pub fn root_set_text(set: &RootSet) -> String {
    if set.is_empty() {
        return "(none)".into();
    }
    set.positives().iter().map(pm_text).collect::<Vec<_>>().join(", ")
}

pub fn root_set_latex(set: &RootSet) -> String {
    if set.is_empty() {
        return "$\\emptyset$".into();
    }
    let parts: Vec<String> = set
        .positives()
        .iter()
        .map(|r| format!("${}$", pm_latex(r)))
        .collect();
    parts.join(", ")
}

/// Renders table rows deterministically; an empty selection yields an
/// empty document (`[]` in JSON).
pub fn emit_table(rows: &[TableRow], format: TableFormat) -> String {
    match format {
        TableFormat::Json => {
            let j: Vec<TableRowJson> = rows
                .iter()
                .map(|row| TableRowJson {
                    label: row.label.to_string(),
                    r: row.r,
                    l: row.l,
                    real_roots: row.real.ordered().into_iter().map(|x| x.0).collect(),
                })
                .collect();
            serde_json::to_string_pretty(&j).expect("serializable")
        }
        TableFormat::Text => {
            if rows.is_empty() {
                return String::new();
            }
            let cells: Vec<[String; 4]> = rows
                .iter()
                .map(|row| {
                    let roots = if row.all_real() {
                        format!("all restricted roots ({} roots)", row.total_roots)
                    } else {
                        root_set_text(&row.real)
                    };
                    [row.label.to_string(), row.r.to_string(), row.l.to_string(), roots]
                })
                .collect();
            let header = ["type".to_string(), "r".into(), "l".into(), "real roots".into()];
            let w: Vec<usize> = (0..3)
                .map(|k| {
                    cells
                        .iter()
                        .map(|c| c[k].chars().count())
                        .chain([header[k].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |c: &[String; 4]| {
                format!(
                    "{:<w0$}  {:>w1$}  {:>w2$}  {}\n",
                    c[0],
                    c[1],
                    c[2],
                    c[3],
                    w0 = w[0],
                    w1 = w[1],
                    w2 = w[2]
                )
            };
            let mut out = line(&header);
            for c in &cells {
                out.push_str(&line(c));
            }
            out
        }
        TableFormat::Latex => {
            if rows.is_empty() {
                return String::new();
            }
            let mut out = String::from(
                "\\begin{tabular}{lll}\n\\hline\nType of $(R,\\theta)$ & $(r,l)$ & real restricted roots \\\\\n\\hline\n",
            );
            for row in rows {
                let roots = if row.all_real() {
                    "all restricted roots".to_string()
                } else {
                    root_set_latex(&row.real)
                };
                out.push_str(&format!(
                    "{} & $({},{})$ & {} \\\\\n",
                    row.label, row.r, row.l, roots
                ));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
    }
}

/// Parses the JSON form produced by [`emit_table`].
pub fn parse_table_json(s: &str) -> Result<Vec<TableRowJson>> {
    serde_json::from_str(s).map_err(|e| Error::input(format!("bad table JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(s: &str) -> SatakeLabel {
        s.parse().unwrap()
    }

    fn brute(label: &str, r: usize, l: usize) -> (RootSet, RootSet) {
        let d = standard_diagram(lab(label), r, l).unwrap();
        let inv = induced_involution(&d).unwrap();
        (
            real_roots(d.rs(), &inv).unwrap(),
            imaginary_roots(d.rs(), &inv).unwrap(),
        )
    }

    #[test]
    fn eiii_real_roots() {
        let (real, _) = brute("EIII", 6, 2);
        let want: BTreeSet<Root> = [[1, 0, 1, 1, 1, 1], [1, 2, 2, 3, 2, 1]]
            .iter()
            .flat_map(|v| [Root(v.to_vec()), Root(v.to_vec()).neg()])
            .collect();
        assert_eq!(real.members, want);
    }

    #[test]
    fn empty_and_small_sets() {
        assert!(brute("AII", 3, 1).0.is_empty());
        let (real, _) = brute("FII", 4, 1);
        assert_eq!(real.positives(), vec![Root(vec![1, 2, 3, 2])]);
        let (_, imag) = brute("AII", 3, 1);
        let want: BTreeSet<Root> = [
            Root(vec![1, 0, 0]),
            Root(vec![-1, 0, 0]),
            Root(vec![0, 0, 1]),
            Root(vec![0, 0, -1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(imag.members, want);
        assert!(brute("AI", 3, 3).1.is_empty());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_real_roots(SatakeLabel::BI, 4, 2).unwrap().len(), 8);
        let c = closed_form_real_roots(SatakeLabel::CIII, 4, 2).unwrap();
        assert_eq!(
            c.positives(),
            vec![Root(vec![0, 0, 1, 1]), Root(vec![1, 2, 2, 1])]
        );
        assert!(closed_form_real_roots(SatakeLabel::BI, 4, 0).is_err());
        assert!(closed_form_real_roots(SatakeLabel::AI, 3, 2).is_err());
        for (label, r, l) in [("BI", 4, 2), ("CI", 5, 3), ("DIII", 5, 2), ("EIX", 8, 4)] {
            assert_eq!(
                closed_form_real_roots(lab(label), r, l).unwrap().members,
                brute(label, r, l).0.members,
                "{label}"
            );
        }
    }

    #[test]
    fn unvalidated_refused() {
        let d = standard_diagram(SatakeLabel::BI, 3, 1).unwrap();
        let inv = LatticeInvolution::for_diagram(&d, crate::lattice::LatticeMatrix::identity(3));
        assert!(matches!(real_roots(d.rs(), &inv), Err(Error::Unvalidated(_))));
    }

    #[test]
    fn table_formats() {
        let rows = table_rows(&[(SatakeLabel::EIII, 6, 2), (SatakeLabel::G, 2, 2)]).unwrap();
        let latex = emit_table(&rows, TableFormat::Latex);
        assert!(latex.contains("\\pm(\\alpha_{1}+\\alpha_{3}+\\alpha_{4}+\\alpha_{5}+\\alpha_{6})"));
        let text = emit_table(&rows, TableFormat::Text);
        assert!(text.contains("all restricted roots (12 roots)"), "{text}");
        let json = emit_table(&rows, TableFormat::Json);
        let parsed = parse_table_json(&json).unwrap();
        assert_eq!(parsed[0].real_roots.len(), 4);
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), json);
        assert_eq!(emit_table(&[], TableFormat::Text), "");
        assert_eq!(emit_table(&[], TableFormat::Latex), "");
        assert!("html".parse::<TableFormat>().is_err());
    }

    #[test]
    fn latex_single_and_multi_terms() {
        assert_eq!(pm_latex(&Root(vec![1, 2, 3, 2])), "\\pm(\\alpha_{1}+2\\alpha_{2}+3\\alpha_{3}+2\\alpha_{4})");
        assert_eq!(pm_latex(&Root(vec![0, 1])), "\\pm\\alpha_{2}");
        assert_eq!(pm_text(&Root(vec![0, 1])), "±a2");
    }
}
