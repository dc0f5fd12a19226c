//! Berger's catalog of semisimple symmetric pairs with the type, rank and
//! split rank of each restricted root system.

pub mod formula;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::involutions::{standard_diagram, standard_diagram_admissible, SatakeLabel};

pub use formula::{
    eval_formula, parse_bindings, parse_cond, parse_expr, parse_formula, Bindings, CmpOp, Cond, Expr,
    Formula, Parity, Value,
};

/// Parameter names a catalog formula may mention.
pub const PARAMETERS: [&str; 5] = ["n", "m", "p", "i", "j"];

const BUILTIN: &str = include_str!("../../data/catalog.json");

/// One row as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    #[serde(default)]
    pub section: String,
    pub pair: [String; 2],
    pub label: String,
    pub rank: String,
    pub srank: String,
    #[serde(default = "default_cond")]
    pub cond: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

fn default_cond() -> String {
    "true".into()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub section: String,
    pub pair: (String, String),
    pub label: SatakeLabel,
    pub rank: Expr,
    pub srank: Expr,
    pub cond: Cond,
    /// Transcription note for rows that look irregular.
    pub flag: Option<String>,
}

impl CatalogEntry {
    fn from_json(j: &EntryJson) -> Result<Self> {
        let ctx = |e: Error| Error::Data(format!("catalog row ({}, {}): {e}", j.pair[0], j.pair[1]));
        let label: SatakeLabel = j.label.parse().map_err(ctx)?;
        let rank = parse_expr(&j.rank).map_err(ctx)?;
        let srank = parse_expr(&j.srank).map_err(ctx)?;
        let cond = parse_cond(&j.cond).map_err(ctx)?;
        let e = CatalogEntry {
            section: j.section.clone(),
            pair: (j.pair[0].clone(), j.pair[1].clone()),
            label,
            rank,
            srank,
            cond,
            flag: j.flag.clone(),
        };
        if let Some(bad) = e.parameters().into_iter().find(|v| !PARAMETERS.contains(&v.as_str())) {
            return Err(ctx(Error::Data(format!("unknown parameter `{bad}`"))));
        }
        Ok(e)
    }

    pub fn to_json(&self) -> EntryJson {
        EntryJson {
            section: self.section.clone(),
            pair: [self.pair.0.clone(), self.pair.1.clone()],
            label: self.label.to_string(),
            rank: self.rank.to_string(),
            srank: self.srank.to_string(),
            cond: self.cond.to_string(),
            flag: self.flag.clone(),
        }
    }

    /// `(g, h)` as printed.
    pub fn pair_name(&self) -> String {
        format!("({}, {})", self.pair.0, self.pair.1)
    }

    fn key(&self) -> String {
        normalize(&format!("({},{})", self.pair.0, self.pair.1))
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.rank.collect_vars(&mut out);
        self.srank.collect_vars(&mut out);
        self.cond.collect_vars(&mut out);
        out
    }

    pub fn formulas(&self) -> [Formula; 3] {
        [
            Formula::Expr(self.rank.clone()),
            Formula::Expr(self.srank.clone()),
            Formula::Cond(self.cond.clone()),
        ]
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} rank={} srank={} if {}",
            self.pair_name(),
            self.label,
            self.rank,
            self.srank,
            self.cond
        )
    }
}

/// Lowercase with whitespace removed and Unicode minus folded to `-`.
fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .flat_map(char::to_lowercase)
        .collect()
}

/// An entry evaluated at concrete parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub label: SatakeLabel,
    pub r: usize,
    pub l: usize,
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} r={} l={}", self.label, self.r, self.l)
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| Catalog::from_json(BUILTIN).expect("shipped catalog is well formed"))
    }

    pub fn from_json(src: &str) -> Result<Catalog> {
        let rows: Vec<EntryJson> =
            serde_json::from_str(src).map_err(|e| Error::Data(format!("catalog json: {e}")))?;
        let entries = rows.iter().map(CatalogEntry::from_json).collect::<Result<_>>()?;
        Ok(Catalog { entries })
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<EntryJson> = self.entries.iter().map(CatalogEntry::to_json).collect();
        serde_json::to_string_pretty(&rows).expect("catalog serializes")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Rows whose `(g,h)` key contains the pattern, ignoring case and spaces.
    pub fn lookup(&self, pattern: &str) -> Vec<&CatalogEntry> {
        let pat = normalize(pattern);
        self.entries.iter().filter(|e| e.key().contains(&pat)).collect()
    }

    /// Rows of the same block describing the same pair, `e` included.
    pub fn siblings(&self, e: &CatalogEntry) -> Vec<&CatalogEntry> {
        self.entries
            .iter()
            .filter(|o| o.section == e.section && o.pair == e.pair)
            .collect()
    }

    /// Groups of sibling rows in file order.
    pub fn groups(&self) -> Vec<Vec<&CatalogEntry>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.entries {
            if seen.insert((e.section.clone(), e.pair.clone())) {
                out.push(self.siblings(e));
            }
        }
        out
    }

    /// Evaluates the one sibling of `e` whose condition holds at `b`.
    pub fn instantiate(&self, e: &CatalogEntry, b: &Bindings) -> Result<Instance> {
        let sibs = self.siblings(e);
        let mut holding = Vec::new();
        for s in &sibs {
            if s.cond.eval(b)? {
                holding.push(*s);
            }
        }
        let row = match holding.as_slice() {
            [one] => *one,
            [] => {
                return Err(Error::Data(format!(
                    "no condition of {} holds at {}",
                    e.pair_name(),
                    fmt_bindings(b)
                )))
            }
            _ => {
                return Err(Error::Data(format!(
                    "{} conditions of {} hold at {}",
                    holding.len(),
                    e.pair_name(),
                    fmt_bindings(b)
                )))
            }
        };
        let r = row.rank.eval(b)?;
        let l = row.srank.eval(b)?;
        if r < 0 || l < 0 {
            return Err(Error::Data(format!(
                "{} evaluates to negative rank ({r}, {l}) at {}",
                row.pair_name(),
                fmt_bindings(b)
            )));
        }
        Ok(Instance {
            label: row.label,
            r: r as usize,
            l: l as usize,
        })
    }

    /// Evaluates every sibling group on the sampling grid and checks that
    /// the instantiated triples are admissible diagrams.
    pub fn admissibility_closure(&self) -> ClosureReport {
        let mut rep = ClosureReport::default();
        for group in self.groups() {
            let mut params = BTreeSet::new();
            for e in &group {
                params.extend(e.parameters());
            }
            for b in sample_grid(&params) {
                let inst = match self.instantiate(group[0], &b) {
                    Ok(i) => i,
                    Err(_) => continue,
                };
                let row = group
                    .iter()
                    .find(|e| e.label == inst.label && e.cond.eval(&b).unwrap_or(false))
                    .copied()
                    .unwrap_or(group[0]);
                if is_degenerate(&inst) {
                    rep.skipped += 1;
                    continue;
                }
                rep.checked += 1;
                if !standard_diagram_admissible(inst.label, inst.r, inst.l) {
                    let reason = standard_diagram(inst.label, inst.r, inst.l)
                        .err()
                        .map(|e| e.to_string())
                        .unwrap_or_default();
                    rep.failures.push(ClosureFailure {
                        pair: row.pair_name(),
                        bindings: fmt_bindings(&b),
                        instance: inst,
                        reason,
                        flagged: row.flag.is_some(),
                    });
                }
            }
        }
        rep
    }

    /// Sampled points where sibling conditions are not mutually exclusive,
    /// or where none holds although `2p <= n`.
    pub fn exclusivity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for group in self.groups() {
            let mut params = BTreeSet::new();
            for e in &group {
                params.extend(e.parameters());
            }
            for b in sample_grid(&params) {
                let holding = group
                    .iter()
                    .filter(|e| e.cond.eval(&b).unwrap_or(false))
                    .count();
                let canonical = match (b.get("n"), b.get("p")) {
                    (Some(n), Some(p)) => 2 * p <= *n,
                    _ => true,
                };
                if holding > 1 || (holding == 0 && canonical) {
                    out.push(format!(
                        "{}: {holding} conditions hold at {}",
                        group[0].pair_name(),
                        fmt_bindings(&b)
                    ));
                }
            }
        }
        out
    }
}

/// Instances below the smallest rank of their family, or with split rank 0
/// (compact parameter points such as `p = 0`), describe no diagram and are
/// left out of the closure check.
fn is_degenerate(inst: &Instance) -> bool {
    if inst.l == 0 {
        return true;
    }
    let f = inst.label.family();
    let min = if inst.label.is_doubled() {
        2 * f.min_rank()
    } else {
        f.min_rank()
    };
    f.fixed_rank().is_none() && inst.r < min
}

#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<ClosureFailure>,
}

impl ClosureReport {
    /// Distinct failing pairs, in order of first failure.
    pub fn failing_pairs(&self) -> Vec<(String, bool)> {
        let mut seen = BTreeSet::new();
        self.failures
            .iter()
            .filter(|f| seen.insert(f.pair.clone()))
            .map(|f| (f.pair.clone(), f.flagged))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ClosureFailure {
    pub pair: String,
    pub bindings: String,
    pub instance: Instance,
    pub reason: String,
    /// Whether the row carries a transcription flag.
    pub flagged: bool,
}

impl fmt::Display for ClosureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {} -> {}: {}", self.pair, self.bindings, self.instance, self.reason)
    }
}

/// The sampling grid: `n, m` in `1..=8`, `p, i` in `0..=n`, `j` in `0..=m`,
/// restricted to the parameters actually used.
pub fn sample_grid(params: &BTreeSet<String>) -> Vec<Bindings> {
    let has = |v: &str| params.contains(v);
    let one = |x: bool, hi: i64| if x { 1..=hi } else { 0..=0 };
    let mut out = Vec::new();
    for n in one(has("n"), 8) {
        for m in one(has("m"), 8) {
            let pr = if has("p") { 0..=n } else { 0..=0 };
            for p in pr {
                let ir = if has("i") { 0..=n } else { 0..=0 };
                for i in ir {
                    let jr = if has("j") { 0..=m } else { 0..=0 };
                    for j in jr {
                        let mut b = BTreeMap::new();
                        for (k, v) in [("n", n), ("m", m), ("p", p), ("i", i), ("j", j)] {
                            if has(k) {
                                b.insert(k.to_string(), v);
                            }
                        }
                        out.push(b);
                    }
                }
            }
        }
    }
    out
}

pub fn fmt_bindings(b: &Bindings) -> String {
    if b.is_empty() {
        return "(no parameters)".into();
    }
    b.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(cat: &Catalog, pat: &str) -> CatalogEntry {
        let hits = cat.lookup(pat);
        assert_eq!(hits.len(), 1, "{pat}: {hits:?}");
        hits[0].clone()
    }

    #[test]
    fn builtin_loads() {
        let cat = Catalog::builtin();
        assert_eq!(cat.entries().len(), 176);
    }

    #[test]
    fn quoted_rows() {
        let cat = Catalog::builtin();
        let e = single(cat, "(sl(n,R), so(p,n-p))");
        assert_eq!(e.label, SatakeLabel::AI);
        assert_eq!(e.rank.to_string(), "n-1");
        assert_eq!(e.srank.to_string(), "n-1");
        let e = single(cat, "(e6(6), sp(4))");
        assert_eq!(cat.instantiate(&e, &Bindings::new()).unwrap(), Instance {
            label: SatakeLabel::EI,
            r: 6,
            l: 6
        });
        let e = single(cat, "(F4(-20), so(9))");
        assert_eq!(cat.instantiate(&e, &Bindings::new()).unwrap(), Instance {
            label: SatakeLabel::BCI,
            r: 1,
            l: 1
        });
    }

    #[test]
    fn conditional_rows() {
        let cat = Catalog::builtin();
        let hits = cat.lookup("(sp(n,R), sp(p,R)+sp(n-p,R))");
        assert_eq!(hits.len(), 2);
        let at = |n, p| cat.instantiate(hits[0], &parse_bindings(&format!("n={n},p={p}")).unwrap());
        assert_eq!(at(6, 3).unwrap(), Instance { label: SatakeLabel::CI, r: 3, l: 3 });
        assert_eq!(at(7, 3).unwrap(), Instance { label: SatakeLabel::BI, r: 3, l: 3 });
        assert!(matches!(at(5, 3), Err(Error::Data(_))));
    }

    #[test]
    fn no_match_is_empty() {
        assert!(Catalog::builtin().lookup("(g2(2), nothing)").is_empty());
    }

    #[test]
    fn rejects_unknown_parameters() {
        let src = r#"[{"pair":["x","y"],"label":"AI","rank":"k","srank":"k","cond":"true"}]"#;
        assert!(matches!(Catalog::from_json(src), Err(Error::Data(_))));
    }

    #[test]
    fn json_round_trip() {
        let cat = Catalog::builtin();
        let again = Catalog::from_json(&cat.to_json()).unwrap();
        assert_eq!(again.entries(), cat.entries());
    }

    #[test]
    fn conditions_are_exclusive() {
        assert_eq!(Catalog::builtin().exclusivity_violations(), Vec::<String>::new());
    }
}
