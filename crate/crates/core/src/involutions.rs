//! Satake diagrams and the induced lattice involution `θ̃ = -θ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeMatrix;
use crate::rootcore::{Component, Family, RootSystem, RootSystemDescriptor};

/// Diagram labels, including the doubled types `X+X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SatakeLabel {
    AI,
    AII,
    AIII,
    BI,
    BCI,
    BCII,
    BCIII,
    CI,
    CII,
    CIII,
    DI,
    DII,
    DIII,
    EI,
    EII,
    EIII,
    EIV,
    EV,
    EVI,
    EVII,
    EVIII,
    EIX,
    FI,
    FII,
    FIII,
    G,
    /// Two copies of the given family exchanged by the arrows.
    Doubled(Family),
}

const SIMPLE_LABELS: [(SatakeLabel, &str); 26] = [
    (SatakeLabel::AI, "AI"),
    (SatakeLabel::AII, "AII"),
    (SatakeLabel::AIII, "AIII"),
    (SatakeLabel::BI, "BI"),
    (SatakeLabel::BCI, "BCI"),
    (SatakeLabel::BCII, "BCII"),
    (SatakeLabel::BCIII, "BCIII"),
    (SatakeLabel::CI, "CI"),
    (SatakeLabel::CII, "CII"),
    (SatakeLabel::CIII, "CIII"),
    (SatakeLabel::DI, "DI"),
    (SatakeLabel::DII, "DII"),
    (SatakeLabel::DIII, "DIII"),
    (SatakeLabel::EI, "EI"),
    (SatakeLabel::EII, "EII"),
    (SatakeLabel::EIII, "EIII"),
    (SatakeLabel::EIV, "EIV"),
    (SatakeLabel::EV, "EV"),
    (SatakeLabel::EVI, "EVI"),
    (SatakeLabel::EVII, "EVII"),
    (SatakeLabel::EVIII, "EVIII"),
    (SatakeLabel::EIX, "EIX"),
    (SatakeLabel::FI, "FI"),
    (SatakeLabel::FII, "FII"),
    (SatakeLabel::FIII, "FIII"),
    (SatakeLabel::G, "G"),
];

fn doubled_name(f: Family) -> &'static str {
    match f {
        Family::A => "A",
        Family::B => "B",
        Family::C => "C",
        Family::D => "D",
        Family::BC => "BC",
        Family::E6 => "EI",
        Family::E7 => "EV",
        Family::E8 => "EVIII",
        Family::F4 => "FI",
        Family::G2 => "G",
    }
}

impl SatakeLabel {
    pub const DOUBLED: [Family; 10] = Family::ALL;

    /// Family of the underlying root system.
    pub fn family(self) -> Family {
        use SatakeLabel::*;
        match self {
            AI | AII | AIII => Family::A,
            BI => Family::B,
            BCI | BCII | BCIII => Family::BC,
            CI | CII | CIII => Family::C,
            DI | DII | DIII => Family::D,
            EI | EII | EIII | EIV => Family::E6,
            EV | EVI | EVII => Family::E7,
            EVIII | EIX => Family::E8,
            FI | FII | FIII => Family::F4,
            G => Family::G2,
            Doubled(f) => f,
        }
    }

    pub fn is_doubled(self) -> bool {
        matches!(self, SatakeLabel::Doubled(_))
    }

    /// Fixed `(r, l)` of exceptional labels.
    pub fn fixed_params(self) -> Option<(usize, usize)> {
        use SatakeLabel::*;
        Some(match self {
            EI => (6, 6),
            EII => (6, 4),
            EIII => (6, 2),
            EIV => (6, 2),
            EV => (7, 7),
            EVI => (7, 4),
            EVII => (7, 3),
            EVIII => (8, 8),
            EIX => (8, 4),
            FI => (4, 4),
            FII => (4, 1),
            FIII => (4, 2),
            G => (2, 2),
            Doubled(f) => {
                let n = f.fixed_rank()?;
                (2 * n, n)
            }
            _ => return None,
        })
    }

    /// Root-system descriptor for a diagram of total rank `r`.
    pub fn descriptor(self, r: usize) -> Result<RootSystemDescriptor> {
        let f = self.family();
        if let SatakeLabel::Doubled(_) = self {
            if r % 2 != 0 {
                return Err(inadmissible(self, r, r / 2, "doubled types need even rank"));
            }
            let c = Component::new(f, r / 2)?;
            return RootSystemDescriptor::new(vec![c, c]);
        }
        RootSystemDescriptor::single(f, r)
    }

    /// Labels with a single irreducible component, in table order.
    pub fn simple_labels() -> impl Iterator<Item = SatakeLabel> {
        SIMPLE_LABELS.iter().map(|(l, _)| *l)
    }
}

impl fmt::Display for SatakeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatakeLabel::Doubled(fam) => {
                let n = doubled_name(*fam);
                write!(f, "{n}+{n}")
            }
            l => {
                let name = SIMPLE_LABELS
                    .iter()
                    .find(|(x, _)| x == l)
                    .map(|(_, s)| *s)
                    .unwrap_or("?");
                f.write_str(name)
            }
        }
    }
}

impl Serialize for SatakeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for SatakeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let up: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_uppercase();
        if let Some((a, b)) = up.split_once('+') {
            if a == b {
                if let Some(f) = Family::ALL.into_iter().find(|&f| doubled_name(f) == a) {
                    return Ok(SatakeLabel::Doubled(f));
                }
            }
            return Err(Error::input(format!("unknown doubled type `{s}`")));
        }
        SIMPLE_LABELS
            .iter()
            .find(|(_, n)| *n == up)
            .map(|(l, _)| *l)
            .ok_or_else(|| Error::input(format!("unknown Satake type `{s}`")))
    }
}

fn inadmissible(label: SatakeLabel, r: usize, l: usize, reason: &str) -> Error {
    Error::Inadmissible {
        label: label.to_string(),
        r,
        l,
        reason: reason.to_string(),
    }
}

/// Black nodes plus the Satake involution `p` on a root system.
#[derive(Clone, Debug)]
pub struct SatakeDiagram {
    pub label: String,
    rs: RootSystem,
    black: BTreeSet<usize>,
    // p as a full permutation of the nodes, identity on black nodes
    p: Vec<usize>,
}

impl SatakeDiagram {
    /// Builds a diagram from explicit data (0-based indices).
    pub fn new(
        label: impl Into<String>,
        rs: RootSystem,
        black: impl IntoIterator<Item = usize>,
        arrows: &[(usize, usize)],
    ) -> Result<Self> {
        let n = rs.rank();
        let black: BTreeSet<usize> = black.into_iter().collect();
        if let Some(&b) = black.iter().find(|&&b| b >= n) {
            return Err(Error::input(format!("black node {} out of range", b + 1)));
        }
        let mut p: Vec<usize> = (0..n).collect();
        for &(a, b) in arrows {
            if a >= n || b >= n || a == b {
                return Err(Error::input(format!("bad arrow {}<->{}", a + 1, b + 1)));
            }
            if black.contains(&a) || black.contains(&b) {
                return Err(Error::input(format!(
                    "arrow {}<->{} touches a black node",
                    a + 1,
                    b + 1
                )));
            }
            if p[a] != a || p[b] != b {
                return Err(Error::input(format!(
                    "node in arrow {}<->{} is already paired",
                    a + 1,
                    b + 1
                )));
            }
            p[a] = b;
            p[b] = a;
        }
        Ok(SatakeDiagram {
            label: label.into(),
            rs,
            black,
            p,
        })
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn r(&self) -> usize {
        self.rs.rank()
    }

    /// Number of `p`-orbits on white nodes.
    pub fn l(&self) -> usize {
        self.whites().filter(|&i| self.p[i] >= i).count()
    }

    pub fn black(&self) -> &BTreeSet<usize> {
        &self.black
    }

    pub fn black_vec(&self) -> Vec<usize> {
        self.black.iter().copied().collect()
    }

    pub fn is_black(&self, i: usize) -> bool {
        self.black.contains(&i)
    }

    pub fn whites(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.r()).filter(|i| !self.black.contains(i))
    }

    pub fn p(&self, i: usize) -> usize {
        self.p[i]
    }

    /// Arrow pairs `(i, p(i))` with `i < p(i)`.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        (0..self.r())
            .filter(|&i| self.p[i] > i)
            .map(|i| (i, self.p[i]))
            .collect()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            label: self.label.clone(),
            r: self.r(),
            l: self.l(),
            components: self.rs.descriptor().components.clone(),
            black: self.black.iter().map(|b| b + 1).collect(),
            arrows: self.arrows().iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        }
    }

    /// Rebuilds a diagram from its JSON form.
    pub fn from_json(j: &DiagramJson) -> Result<Self> {
        let desc = RootSystemDescriptor::new(j.components.clone())?;
        let rs = RootSystem::build(&desc)?;
        let to0 = |i: usize| {
            if i == 0 || i > rs.rank() {
                Err(Error::input(format!("node index {i} out of range")))
            } else {
                Ok(i - 1)
            }
        };
        let black = j.black.iter().map(|&b| to0(b)).collect::<Result<Vec<_>>>()?;
        let arrows = j
            .arrows
            .iter()
            .map(|[a, b]| Ok((to0(*a)?, to0(*b)?)))
            .collect::<Result<Vec<_>>>()?;
        let d = SatakeDiagram::new(j.label.clone(), rs, black, &arrows)?;
        if d.r() != j.r || d.l() != j.l {
            return Err(Error::input(format!(
                "declared (r, l) = ({}, {}) but the diagram has ({}, {})",
                j.r,
                j.l,
                d.r(),
                d.l()
            )));
        }
        Ok(d)
    }

    /// Same black set and arrows (labels are ignored).
    pub fn same_shape(&self, other: &SatakeDiagram) -> bool {
        self.rs.descriptor() == other.rs.descriptor()
            && self.black == other.black
            && self.p == other.p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub label: String,
    pub r: usize,
    pub l: usize,
    pub components: Vec<Component>,
    pub black: Vec<usize>,
    pub arrows: Vec<[usize; 2]>,
}

/// The diagram of `label` at rank `r` and split rank `l`. Indices below are
/// 1-based as drawn; the stored diagram is 0-based.
pub fn standard_diagram(label: SatakeLabel, r: usize, l: usize) -> Result<SatakeDiagram> {
    use SatakeLabel::*;
    let bad = |reason: &str| inadmissible(label, r, l, reason);
    if let Some((fr, fl)) = label.fixed_params() {
        if (r, l) != (fr, fl) {
            return Err(bad(&format!("this type has fixed (r, l) = ({fr}, {fl})")));
        }
    }
    if l == 0 {
        return Err(bad("split rank must be at least 1"));
    }
    let fam = label.family();
    if !label.is_doubled() && fam.fixed_rank().is_none() && r < fam.min_rank() {
        return Err(bad(&format!("{fam} needs rank >= {}", fam.min_rank())));
    }
    let mut black: Vec<usize> = Vec::new();
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let range = |a: usize, b: usize| (a..=b).collect::<Vec<usize>>();
    match label {
        AI => {
            if l != r {
                return Err(bad("AI requires l = r"));
            }
        }
        AII => {
            if r % 2 == 0 {
                return Err(bad("AII requires odd r"));
            }
            if l != (r - 1) / 2 {
                return Err(bad("AII requires l = (r-1)/2"));
            }
            black = (1..=r).filter(|i| i % 2 == 1).collect();
        }
        AIII => {
            if r + 1 < 2 * l {
                return Err(bad("AIII requires r >= 2l-1"));
            }
            black = range(l + 1, r.saturating_sub(l));
            for i in 1..=l {
                if i < r + 1 - i {
                    arrows.push((i, r + 1 - i));
                }
            }
        }
        BI | BCI | CI | BCII | CII => {
            if matches!(label, BCII | CII) && l != 1 {
                return Err(bad("this type requires l = 1"));
            }
            if l > r {
                return Err(bad("requires l <= r"));
            }
            black = range(l + 1, r);
        }
        BCIII | CIII => {
            if 2 * l > r {
                return Err(bad("requires r >= 2l"));
            }
            black = (1..=r).filter(|&i| i > 2 * l || i % 2 == 1).collect();
        }
        DI | DII => {
            if label == DII && l != 1 {
                return Err(bad("DII requires l = 1"));
            }
            if l > r {
                return Err(bad("requires l <= r"));
            }
            if r == l + 1 {
                arrows.push((r - 1, r));
            } else if r > l + 1 {
                black = range(l + 1, r);
            }
        }
        DIII => {
            if l != r / 2 {
                return Err(bad("DIII requires l = [r/2]"));
            }
            if r % 2 == 0 {
                black = (1..r).filter(|i| i % 2 == 1).collect();
            } else {
                black = (1..=r - 2).filter(|i| i % 2 == 1).collect();
                arrows.push((r - 1, r));
            }
        }
        EI | EV | EVIII | FI | G => {}
        EII => arrows = vec![(1, 6), (3, 5)],
        EIII => {
            black = vec![3, 4, 5];
            arrows = vec![(1, 6)];
        }
        EIV => black = vec![2, 3, 4, 5],
        EVI => black = vec![2, 5, 7],
        EVII => black = vec![2, 3, 4, 5],
        EIX => black = vec![2, 3, 4, 5],
        FII => black = vec![1, 2, 3],
        FIII => black = vec![2, 3],
        Doubled(f) => {
            if r % 2 != 0 || l * 2 != r {
                return Err(bad("doubled types need r = 2l"));
            }
            if f.fixed_rank().is_none() && l < f.min_rank() {
                return Err(bad(&format!("{f} needs rank >= {}", f.min_rank())));
            }
            arrows = (1..=l).map(|i| (i, i + l)).collect();
        }
    }
    let rs = RootSystem::build(&label.descriptor(r)?)?;
    let d = SatakeDiagram::new(
        label.to_string(),
        rs,
        black.into_iter().map(|b| b - 1),
        &arrows.into_iter().map(|(a, b)| (a - 1, b - 1)).collect::<Vec<_>>(),
    )?;
    debug_assert_eq!(d.l(), l, "orbit count for {label}({r},{l})");
    if d.l() != l {
        return Err(bad("white orbit count differs from l"));
    }
    Ok(d)
}

/// Every admissible `(label, r, l)` with `1 <= l <= r <= max_rank` for the
/// classical families (aliases excluded), plus the exceptional types and all
/// doubled exceptional types regardless of `max_rank`.
pub fn sweep(max_rank: usize) -> Vec<(SatakeLabel, usize, usize)> {
    use SatakeLabel::*;
    let mut out = Vec::new();
    for r in 1..=max_rank {
        for l in 1..=r {
            for label in [AI, AII, AIII, BI, BCI, BCIII, CI, CIII, DI, DIII] {
                if standard_diagram_admissible(label, r, l) {
                    out.push((label, r, l));
                }
            }
            for f in [Family::A, Family::B, Family::BC, Family::C, Family::D] {
                if standard_diagram_admissible(Doubled(f), r, l) {
                    out.push((Doubled(f), r, l));
                }
            }
        }
    }
    for label in [EI, EII, EIII, EIV, EV, EVI, EVII, EVIII, EIX, FI, FII, FIII, G] {
        let (r, l) = label.fixed_params().expect("exceptional");
        out.push((label, r, l));
    }
    for f in [Family::E6, Family::E7, Family::E8, Family::F4, Family::G2] {
        let (r, l) = Doubled(f).fixed_params().expect("exceptional");
        out.push((Doubled(f), r, l));
    }
    out
}

/// Admissibility without building the root system.
pub fn standard_diagram_admissible(label: SatakeLabel, r: usize, l: usize) -> bool {
    use SatakeLabel::*;
    if let Some(p) = label.fixed_params() {
        return p == (r, l);
    }
    let fam = label.family();
    match label {
        _ if l == 0 => false,
        Doubled(_) => r % 2 == 0 && 2 * l == r && l >= fam.min_rank(),
        _ if r < fam.min_rank() => false,
        AI => l == r,
        AII => r % 2 == 1 && l == (r - 1) / 2,
        AIII => 2 * l <= r + 1,
        BI | BCI | CI | DI => l <= r,
        BCII | CII | DII => l == 1 && l <= r,
        BCIII | CIII => 2 * l <= r,
        DIII => l == r / 2,
        _ => false,
    }
}

/// Outcome of a single validation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{mark}  {}", c.name)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub const CHECK_INVOLUTIVE: &str = "involutive";
pub const CHECK_ISOMETRY: &str = "gram isometry";
pub const CHECK_PERMUTES: &str = "root permutation";
pub const CHECK_BLACK: &str = "-id on black";
pub const CHECK_CONGRUENCE: &str = "white congruence mod black span";

fn system_checks(rs: &RootSystem, m: &LatticeMatrix) -> Vec<Check> {
    let inv = m.compose(m).is_identity();
    let iso = rs.is_isometry(m);
    let perm = rs.permutes_roots(m);
    vec![
        Check {
            name: CHECK_INVOLUTIVE,
            passed: inv,
            detail: String::new(),
        },
        Check {
            name: CHECK_ISOMETRY,
            passed: iso,
            detail: String::new(),
        },
        Check {
            name: CHECK_PERMUTES,
            passed: perm,
            detail: String::new(),
        },
    ]
}

/// Runs the five involution checks of `m` against diagram `d`.
pub fn validate(d: &SatakeDiagram, m: &LatticeMatrix) -> ValidationReport {
    let n = d.r();
    if m.dim() != n {
        let detail = format!("matrix has dimension {}, diagram rank {n}", m.dim());
        let checks = [
            CHECK_INVOLUTIVE,
            CHECK_ISOMETRY,
            CHECK_PERMUTES,
            CHECK_BLACK,
            CHECK_CONGRUENCE,
        ]
        .into_iter()
        .map(|name| Check {
            name,
            passed: false,
            detail: detail.clone(),
        })
        .collect();
        return ValidationReport { checks };
    }
    let mut checks = system_checks(d.rs(), m);
    let bad_black: Vec<usize> = d
        .black
        .iter()
        .copied()
        .filter(|&b| {
            let col = m.column(b);
            (0..n).any(|i| col[i] != if i == b { -1 } else { 0 })
        })
        .collect();
    checks.push(Check {
        name: CHECK_BLACK,
        passed: bad_black.is_empty(),
        detail: node_list("fails at", &bad_black),
    });
    let bad_white: Vec<usize> = d
        .whites()
        .filter(|&w| {
            let col = m.column(w);
            (0..n)
                .filter(|i| !d.is_black(*i))
                .any(|i| col[i] != i64::from(i == d.p(w)))
        })
        .collect();
    checks.push(Check {
        name: CHECK_CONGRUENCE,
        passed: bad_white.is_empty(),
        detail: node_list("fails at", &bad_white),
    });
    ValidationReport { checks }
}

fn node_list(prefix: &str, nodes: &[usize]) -> String {
    if nodes.is_empty() {
        return String::new();
    }
    let s: Vec<String> = nodes.iter().map(|i| format!("a{}", i + 1)).collect();
    format!("{prefix} {}", s.join(", "))
}

/// A lattice map together with the report of the checks it was put through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvolution {
    matrix: LatticeMatrix,
    report: ValidationReport,
}

impl LatticeInvolution {
    /// Validates `matrix` as the `θ̃` of diagram `d`.
    pub fn for_diagram(d: &SatakeDiagram, matrix: LatticeMatrix) -> Self {
        let report = validate(d, &matrix);
        LatticeInvolution { matrix, report }
    }

    /// Validates `matrix` as an involutive root-permuting isometry of `rs`,
    /// with no diagram attached.
    pub fn for_system(rs: &RootSystem, matrix: LatticeMatrix) -> Result<Self> {
        if matrix.dim() != rs.rank() {
            return Err(Error::Dimension {
                expected: rs.rank(),
                got: matrix.dim(),
            });
        }
        let report = ValidationReport {
            checks: system_checks(rs, &matrix),
        };
        Ok(LatticeInvolution { matrix, report })
    }

    pub fn matrix(&self) -> &LatticeMatrix {
        &self.matrix
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn is_validated(&self) -> bool {
        self.report.all_passed()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.apply(v)
    }
}

// All automorphisms of the Dynkin subdiagram on `nodes` (one component),
// as maps node -> node.
fn subdiagram_automorphisms(rs: &RootSystem, nodes: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        rs: &RootSystem,
        nodes: &[usize],
        k: usize,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if k == nodes.len() {
            out.push(nodes.iter().copied().zip(img.iter().copied()).collect());
            return;
        }
        for (t, &cand) in nodes.iter().enumerate() {
            if used[t] {
                continue;
            }
            let ok = rs.gram()[nodes[k]][nodes[k]] == rs.gram()[cand][cand]
                && (0..k).all(|q| rs.gram()[nodes[q]][nodes[k]] == rs.gram()[img[q]][cand]);
            if ok {
                used[t] = true;
                img.push(cand);
                go(rs, nodes, k + 1, img, used, out);
                img.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(rs, nodes, 0, &mut Vec::new(), &mut vec![false; nodes.len()], &mut out);
    out
}

/// `θ̃ = w₀(black) ∘ p̃` where `p̃` extends `p` by an automorphism of each
/// black component. Falls back to [`involution_by_search`] when the
/// extension is missing or ambiguous.
pub fn induced_involution(d: &SatakeDiagram) -> Result<LatticeInvolution> {
    let rs = d.rs();
    let n = d.r();
    let w0 = rs.longest_weyl_element(&d.black_vec())?;
    let comps = rs.subdiagram_components(&d.black_vec());
    let autos: Vec<Vec<Vec<(usize, usize)>>> = comps
        .iter()
        .map(|c| subdiagram_automorphisms(rs, c))
        .collect();
    let mut found: Vec<LatticeInvolution> = Vec::new();
    let mut choice = vec![0usize; autos.len()];
    loop {
        let mut perm: Vec<usize> = (0..n).map(|i| d.p(i)).collect();
        for (k, &c) in choice.iter().enumerate() {
            for &(from, to) in &autos[k][c] {
                perm[from] = to;
            }
        }
        let cols: Vec<Vec<i64>> = (0..n).map(|j| w0.column(perm[j])).collect();
        let m = LatticeMatrix::from_columns(&cols)?;
        let inv = LatticeInvolution::for_diagram(d, m);
        if inv.is_validated() && !found.iter().any(|f| f.matrix == inv.matrix) {
            found.push(inv);
        }
        // odometer over automorphism choices
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < autos[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    if found.len() == 1 {
        return Ok(found.pop().expect("one element"));
    }
    involution_by_search(d).map_err(|e| {
        Error::structural(format!(
            "diagram {} is inconsistent: closed form gave {} candidates; search: {e}",
            d.label,
            found.len()
        ))
    })
}

/// Determines `θ̃` column by column: black columns are `-α`, each white
/// column is a root `α_{p(i)} + Σ c_β β` with `c_β >= 0` over black `β`,
/// chosen so that the whole map is an involutive root-permuting isometry.
pub fn involution_by_search(d: &SatakeDiagram) -> Result<LatticeInvolution> {
    let rs = d.rs();
    let n = d.r();
    let whites: Vec<usize> = d.whites().collect();
    let mut cols: Vec<Option<Vec<i64>>> = vec![None; n];
    for &b in d.black() {
        let mut v = vec![0; n];
        v[b] = -1;
        cols[b] = Some(v);
    }
    let candidates: Vec<Vec<Vec<i64>>> = whites
        .iter()
        .map(|&w| {
            rs.roots()
                .iter()
                .map(|r| r.coeffs())
                .filter(|c| {
                    (0..n).all(|i| {
                        if d.is_black(i) {
                            c[i] >= 0
                        } else {
                            c[i] == i64::from(i == d.p(w))
                        }
                    })
                })
                .filter(|c| {
                    // isometry against the fixed black columns and itself
                    rs.inner_int(c, c) == rs.gram()[w][w]
                        && d.black().iter().all(|&b| {
                            -rs.inner_int(c, &unit(n, b)) == rs.gram()[w][b]
                        })
                })
                .map(|c| c.to_vec())
                .collect()
        })
        .collect();

    let mut solutions: Vec<LatticeMatrix> = Vec::new();
    search(d, &whites, &candidates, 0, &mut cols, &mut solutions);
    match solutions.len() {
        1 => Ok(LatticeInvolution::for_diagram(
            d,
            solutions.pop().expect("one element"),
        )),
        0 => {
            let detail: Vec<String> = whites
                .iter()
                .zip(&candidates)
                .map(|(w, c)| format!("a{}: {} candidates", w + 1, c.len()))
                .collect();
            Err(Error::structural(format!(
                "no involution fits diagram {} ({})",
                d.label,
                detail.join("; ")
            )))
        }
        k => {
            let shown: Vec<String> = solutions
                .iter()
                .take(4)
                .map(|m| format!("{:?}", m.rows()))
                .collect();
            Err(Error::structural(format!(
                "{k} involutions fit diagram {}: {}",
                d.label,
                shown.join(" | ")
            )))
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn search(
    d: &SatakeDiagram,
    whites: &[usize],
    candidates: &[Vec<Vec<i64>>],
    k: usize,
    cols: &mut Vec<Option<Vec<i64>>>,
    out: &mut Vec<LatticeMatrix>,
) {
    let rs = d.rs();
    if k == whites.len() {
        let full: Vec<Vec<i64>> = cols.iter().map(|c| c.clone().expect("filled")).collect();
        let m = LatticeMatrix::from_columns(&full).expect("square");
        if m.compose(&m).is_identity() && rs.permutes_roots(&m) {
            out.push(m);
        }
        return;
    }
    let w = whites[k];
    for cand in &candidates[k] {
        let consistent = whites[..k].iter().all(|&u| {
            let cu = cols[u].as_ref().expect("assigned");
            rs.inner_int(cand, cu) == rs.gram()[w][u]
        });
        if consistent {
            cols[w] = Some(cand.clone());
            search(d, whites, candidates, k + 1, cols, out);
            cols[w] = None;
        }
    }
}

/// Plain-text drawing of a diagram: one block per irreducible component.
pub fn render_ascii(d: &SatakeDiagram) -> String {
    let rs = d.rs();
    let mut out = format!(
        "{} (r={}, l={}) on {}\n",
        d.label,
        d.r(),
        d.l(),
        rs.descriptor()
    );
    let all: Vec<usize> = (0..d.r()).collect();
    for comp in rs.subdiagram_components(&all) {
        let spine = longest_path(rs, &comp);
        let token = |i: usize| {
            let mark = if d.is_black(i) { '●' } else { '○' };
            format!("{mark}{}", i + 1)
        };
        let mut line = String::new();
        let mut cols: Vec<(usize, usize)> = Vec::new();
        for (k, &v) in spine.iter().enumerate() {
            if k > 0 {
                line.push_str(&bond(rs, spine[k - 1], v));
            }
            cols.push((v, line.chars().count()));
            line.push_str(&token(v));
        }
        out.push_str(line.trim_end());
        out.push('\n');
        for &v in comp.iter().filter(|v| !spine.contains(v)) {
            if let Some(&(_, col)) = cols.iter().find(|(s, _)| rs.adjacent(*s, v)) {
                out.push_str(&format!("{}|\n", " ".repeat(col)));
                out.push_str(&format!("{}{}\n", " ".repeat(col), token(v)));
            }
        }
    }
    let arrows = d.arrows();
    if arrows.is_empty() {
        out.push_str("arrows: none\n");
    } else {
        let s: Vec<String> = arrows
            .iter()
            .map(|(a, b)| format!("{}<->{}", a + 1, b + 1))
            .collect();
        out.push_str(&format!("arrows: {}\n", s.join(", ")));
    }
    out
}

fn bond(rs: &RootSystem, u: usize, v: usize) -> String {
    let m = rs.cartan(u, v) * rs.cartan(v, u);
    let long_u = rs.gram()[u][u] > rs.gram()[v][v];
    match (m, long_u) {
        (1, _) => "---".into(),
        (2, true) => "=>=".into(),
        (2, false) => "=<=".into(),
        (3, true) => "≡>≡".into(),
        (3, false) => "≡<≡".into(),
        _ => " ? ".into(),
    }
}

fn longest_path(rs: &RootSystem, comp: &[usize]) -> Vec<usize> {
    let far = |start: usize| -> (usize, Vec<usize>) {
        // BFS recording parents; ties resolved toward smaller indices
        let mut parent = vec![usize::MAX; rs.rank()];
        let mut dist = vec![usize::MAX; rs.rank()];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut last = start;
        while let Some(u) = queue.pop_front() {
            if dist[u] > dist[last] || (dist[u] == dist[last] && u < last) {
                last = u;
            }
            for &v in comp {
                if rs.adjacent(u, v) && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut path = vec![last];
        while path.last() != Some(&start) {
            path.push(parent[*path.last().expect("nonempty")]);
        }
        (last, path)
    };
    let (end, _) = far(comp[0]);
    let (_, mut path) = far(end);
    if path.first() > path.last() {
        path.reverse();
    }
    path
}
