//! From an ambient root system with two commuting involutions `σ`, `θ` to
//! the Satake diagram of the restricted system.
//!
//! Restriction to the `(-1)`-eigenspace of `σ` is `λ = (α - σα)/2`. A
//! restricted simple root is black when `λ - θλ = 0`, and two white ones are
//! joined when their values of `λ - θλ` agree. The value is computed per
//! ambient representative as `(α - σα - θα + σθα)/4`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::catalog::{Bindings, Catalog, CatalogEntry, Instance};
use crate::error::{Error, Result};
use crate::involutions::{
    induced_involution, standard_diagram, standard_diagram_admissible, validate, DiagramJson,
    LatticeInvolution, SatakeDiagram, SatakeLabel, ValidationReport,
};
use crate::lattice::LatticeMatrix;
use crate::rational::{dot, fmt_rational, invert, parse_rational, rank_of, rat, to_integers, Rational};
use crate::rootcore::{Component, Family, Root, RootSystem, RootSystemDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Sigma,
    Theta,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Sigma => "sigma",
            Role::Theta => "theta",
        })
    }
}

/// Where an input involution comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionSource {
    Matrix(LatticeMatrix),
    /// `+1` or `-1` times the identity.
    Scalar(i64),
    /// The `θ̃` of a standard diagram on the ambient system.
    Diagram {
        label: SatakeLabel,
        r: usize,
        l: usize,
    },
}

/// Catalog row a run is expected to reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub pair: String,
    #[serde(default)]
    pub params: Bindings,
}

#[derive(Clone, Debug)]
pub struct AmbientData {
    pub name: Option<String>,
    sigma_system: RootSystem,
    sigma: LatticeInvolution,
    theta: LatticeInvolution,
    pub expect: Option<Expectation>,
}

impl AmbientData {
    /// Checks both maps are involutive root-permuting isometries that commute.
    pub fn new(rs: RootSystem, sigma: LatticeMatrix, theta: LatticeMatrix) -> Result<Self> {
        let sigma = LatticeInvolution::for_system(&rs, sigma)?;
        let theta = LatticeInvolution::for_system(&rs, theta)?;
        for (role, inv) in [(Role::Sigma, &sigma), (Role::Theta, &theta)] {
            if !inv.is_validated() {
                return Err(Error::input(format!(
                    "{role} is not an involution of {}: {}",
                    rs.descriptor(),
                    inv.report()
                )));
            }
        }
        if sigma.matrix().compose(theta.matrix()) != theta.matrix().compose(sigma.matrix()) {
            return Err(Error::input("sigma and theta do not commute"));
        }
        Ok(AmbientData {
            name: None,
            sigma_system: rs,
            sigma,
            theta,
            expect: None,
        })
    }

    pub fn from_sources(
        rs: RootSystem,
        sigma: (&InvolutionSource, bool),
        theta: (&InvolutionSource, bool),
    ) -> Result<Self> {
        let s = resolve(&rs, sigma.0, sigma.1, Role::Sigma)?;
        let t = resolve(&rs, theta.0, theta.1, Role::Theta)?;
        Self::new(rs, s, t)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let raw: AmbientJson =
            serde_json::from_str(src).map_err(|e| Error::input(format!("recipe input: {e}")))?;
        let rs = RootSystem::build(&raw.sigma_system.descriptor()?)?;
        let mut slots: BTreeMap<Role, LatticeMatrix> = BTreeMap::new();
        let mut put = |role: Role, m: LatticeMatrix| {
            if slots.insert(role, m).is_some() {
                return Err(Error::input(format!("{role} is given more than once")));
            }
            Ok(())
        };
        if let Some(m) = &raw.sigma_matrix {
            put(Role::Sigma, json_matrix(m)?)?;
        }
        if let Some(m) = &raw.theta_matrix {
            put(Role::Theta, json_matrix(m)?)?;
        }
        for inv in &raw.involutions {
            let src = inv.source()?;
            put(inv.role, resolve(&rs, &src, inv.negate, inv.role)?)?;
        }
        let sigma = slots
            .remove(&Role::Sigma)
            .ok_or_else(|| Error::input("sigma is missing"))?;
        let theta = slots
            .remove(&Role::Theta)
            .ok_or_else(|| Error::input("theta is missing"))?;
        let mut amb = Self::new(rs, sigma, theta)?;
        amb.name = raw.name;
        amb.expect = raw.expect;
        Ok(amb)
    }

    pub fn sigma_system(&self) -> &RootSystem {
        &self.sigma_system
    }

    pub fn sigma(&self) -> &LatticeMatrix {
        self.sigma.matrix()
    }

    pub fn theta(&self) -> &LatticeMatrix {
        self.theta.matrix()
    }
}

fn resolve(rs: &RootSystem, src: &InvolutionSource, negate: bool, role: Role) -> Result<LatticeMatrix> {
    let n = rs.rank();
    let m = match src {
        InvolutionSource::Matrix(m) => {
            if m.dim() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: m.dim(),
                });
            }
            m.clone()
        }
        InvolutionSource::Scalar(1) => LatticeMatrix::identity(n),
        InvolutionSource::Scalar(-1) => LatticeMatrix::identity(n).negate(),
        InvolutionSource::Scalar(s) => {
            return Err(Error::input(format!("{role}: scalar must be 1 or -1, got {s}")))
        }
        InvolutionSource::Diagram { label, r, l } => {
            let d = standard_diagram(*label, *r, *l)?;
            if d.rs().descriptor() != rs.descriptor() {
                return Err(Error::input(format!(
                    "{role}: diagram {label} lives on {}, not on {}",
                    d.rs().descriptor(),
                    rs.descriptor()
                )));
            }
            let inv = induced_involution(&d)?;
            if !inv.is_validated() {
                return Err(Error::structural(format!("{role}: {}", inv.report())));
            }
            inv.matrix().clone()
        }
    };
    Ok(if negate { m.negate() } else { m })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AmbientJson {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
    sigma_system: SystemJson,
    #[serde(default)]
    sigma_matrix: Option<Vec<Vec<Json>>>,
    #[serde(default)]
    theta_matrix: Option<Vec<Vec<Json>>>,
    #[serde(default)]
    involutions: Vec<InvolutionJson>,
    #[serde(default)]
    expect: Option<Expectation>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SystemJson {
    Text(String),
    Full(RootSystemDescriptor),
}

impl SystemJson {
    fn descriptor(&self) -> Result<RootSystemDescriptor> {
        match self {
            SystemJson::Text(s) => s.parse(),
            SystemJson::Full(d) => Ok(d.clone()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvolutionJson {
    role: Role,
    #[serde(default)]
    matrix: Option<Vec<Vec<Json>>>,
    #[serde(default)]
    diagram: Option<DiagramRef>,
    #[serde(default)]
    scalar: Option<i64>,
    #[serde(default)]
    negate: bool,
}

#[derive(Deserialize)]
struct DiagramRef {
    label: String,
    r: usize,
    l: usize,
}

impl InvolutionJson {
    fn source(&self) -> Result<InvolutionSource> {
        match (&self.matrix, &self.diagram, self.scalar) {
            (Some(m), None, None) => Ok(InvolutionSource::Matrix(json_matrix(m)?)),
            (None, Some(d), None) => Ok(InvolutionSource::Diagram {
                label: d.label.parse()?,
                r: d.r,
                l: d.l,
            }),
            (None, None, Some(s)) => Ok(InvolutionSource::Scalar(s)),
            _ => Err(Error::input(format!(
                "{}: give exactly one of matrix, diagram, scalar",
                self.role
            ))),
        }
    }
}

fn json_rational(v: &Json) -> Result<Rational> {
    match v {
        Json::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| Error::input(format!("matrix entry {n} is not an integer or p/q string"))),
        Json::String(s) => parse_rational(s),
        other => Err(Error::input(format!("bad matrix entry {other}"))),
    }
}

fn json_matrix(rows: &[Vec<Json>]) -> Result<LatticeMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(json_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LatticeMatrix::from_rational_rows(&rows)
}

/// Restrictions of all ambient roots.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// Nonzero restrictions, each with the ambient roots restricting to it.
    pub fibers: BTreeMap<Vec<Rational>, Vec<Root>>,
    /// Ambient roots with `σα = α`.
    pub fixed: Vec<Root>,
    pub rank: usize,
}

fn restriction_of(amb: &AmbientData, a: &Root) -> Vec<Rational> {
    let s = amb.sigma().apply(a.coeffs());
    a.coeffs()
        .iter()
        .zip(&s)
        .map(|(x, y)| Rational::new((x - y).into(), 2.into()))
        .collect()
}

fn gram_apply(rs: &RootSystem, v: &[Rational]) -> Vec<Rational> {
    rs.gram().iter().map(|row| dot(row, v)).collect()
}

/// Computes `λ_α = (α - σα)/2` for every ambient root and checks the
/// nonzero ones are closed under their own reflections.
pub fn restrict(amb: &AmbientData) -> Result<Restriction> {
    let rs = amb.sigma_system();
    let mut fibers: BTreeMap<Vec<Rational>, Vec<Root>> = BTreeMap::new();
    let mut fixed = Vec::new();
    for a in rs.roots() {
        let lam = restriction_of(amb, a);
        if lam.iter().all(Zero::is_zero) {
            fixed.push(a.clone());
        } else {
            fibers.entry(lam).or_default().push(a.clone());
        }
    }
    let keys: Vec<&Vec<Rational>> = fibers.keys().collect();
    let dual: Vec<Vec<Rational>> = keys.iter().map(|k| gram_apply(rs, k)).collect();
    for (i, l) in keys.iter().enumerate() {
        let ll = dot(&dual[i], l);
        for m in &keys {
            let c = dot(&dual[i], m) * rat(2) / &ll;
            if !c.is_integer() {
                return Err(Error::structural(format!(
                    "restricted set is not crystallographic: 2<l,m>/<l,l> = {}",
                    fmt_rational(&c)
                )));
            }
            let image: Vec<Rational> = m.iter().zip(l.iter()).map(|(x, y)| x - &c * y).collect();
            if !fibers.contains_key(&image) {
                return Err(Error::structural(
                    "restricted set is not closed under its reflections; check the input involutions",
                ));
            }
        }
    }
    let rank = rank_of(&fibers.keys().cloned().collect::<Vec<_>>());
    Ok(Restriction {
        fibers,
        fixed,
        rank,
    })
}

/// Full output of the recipe.
#[derive(Clone, Debug)]
pub struct RestrictionResult {
    /// Ambient roots over each restricted root, keyed in the coordinates of
    /// the restricted simple roots.
    pub fibers: BTreeMap<Root, Vec<Root>>,
    pub fixed: Vec<Root>,
    pub rank: usize,
    pub split_rank: usize,
    pub diagram: SatakeDiagram,
    /// Every diagram type whose standard shape matches.
    pub labels: Vec<SatakeLabel>,
    /// `-θ` on the restricted lattice.
    pub theta_tilde: LatticeMatrix,
    pub report: ValidationReport,
}

impl RestrictionResult {
    pub fn restricted(&self) -> &RootSystem {
        self.diagram.rs()
    }

    /// Fiber multiplicity of a restricted root (0 for non-roots).
    pub fn multiplicity(&self, root: &Root) -> u64 {
        self.fibers.get(root).map_or(0, |f| f.len() as u64)
    }

    pub fn multiplicities(&self) -> BTreeMap<Root, u64> {
        self.fibers
            .iter()
            .map(|(k, v)| (k.clone(), v.len() as u64))
            .collect()
    }

    /// Black set and arrows in words, for diagnostics.
    pub fn shape_description(&self) -> String {
        let d = &self.diagram;
        let black: Vec<String> = d.black().iter().map(|b| format!("a{}", b + 1)).collect();
        let arrows: Vec<String> = d
            .arrows()
            .iter()
            .map(|(a, b)| format!("a{}<->a{}", a + 1, b + 1))
            .collect();
        format!(
            "{} with black {{{}}}, arrows {{{}}}, rank {}, split rank {}",
            d.rs().descriptor(),
            black.join(", "),
            arrows.join(", "),
            self.rank,
            self.split_rank
        )
    }

    pub fn to_json(&self) -> RecipeJson {
        RecipeJson {
            diagram: self.diagram.to_json(),
            types: self.labels.iter().map(|l| l.to_string()).collect(),
            rank: self.rank,
            split_rank: self.split_rank,
            multiplicities: self
                .multiplicities()
                .into_iter()
                .map(|(k, v)| (k.pretty(), v))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeJson {
    #[serde(flatten)]
    pub diagram: DiagramJson,
    pub types: Vec<String>,
    pub rank: usize,
    pub split_rank: usize,
    pub multiplicities: BTreeMap<String, u64>,
}

fn lex_sign(v: &[Rational]) -> i32 {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_positive() => 1,
        Some(_) => -1,
        None => 0,
    }
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

// Candidate standard families for one connected piece of the restricted
// Dynkin diagram, each with every node bijection std -> ours preserving
// the Cartan matrix.
fn component_matches(
    cartan: &[Vec<i64>],
    comp: &[usize],
    non_reduced: bool,
) -> Result<Vec<(Family, Vec<Vec<usize>>)>> {
    let k = comp.len();
    let mut out = Vec::new();
    for f in Family::ALL {
        if (f == Family::BC) != non_reduced {
            continue;
        }
        let fits = match f.fixed_rank() {
            Some(n) => n == k,
            None => k >= f.min_rank(),
        };
        if !fits {
            continue;
        }
        let std = RootSystem::build(&RootSystemDescriptor::single(f, k)?)?;
        let mut isos = Vec::new();
        let mut img = Vec::new();
        let mut used = vec![false; k];
        cartan_isos(&std, cartan, comp, &mut img, &mut used, &mut isos);
        if !isos.is_empty() {
            out.push((f, isos));
        }
    }
    Ok(out)
}

fn cartan_isos(
    std: &RootSystem,
    cartan: &[Vec<i64>],
    comp: &[usize],
    img: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let t = img.len();
    if t == comp.len() {
        out.push(img.clone());
        return;
    }
    for (q, &cand) in comp.iter().enumerate() {
        if used[q] {
            continue;
        }
        let ok = (0..t).all(|u| {
            std.cartan(t, u) == cartan[cand][img[u]] && std.cartan(u, t) == cartan[img[u]][cand]
        });
        if ok {
            used[q] = true;
            img.push(cand);
            cartan_isos(std, cartan, comp, img, used, out);
            img.pop();
            used[q] = false;
        }
    }
}

// Does the standard diagram, read through `map` (std node -> ours), show the
// computed black set and pairing?
fn shape_matches(std: &SatakeDiagram, map: &[usize], black: &BTreeSet<usize>, partner: &[usize]) -> bool {
    (0..map.len()).all(|t| {
        std.is_black(t) == black.contains(&map[t]) && map[std.p(t)] == partner[map[t]]
    })
}

/// Runs the whole recipe and assembles the Satake diagram.
pub fn run_recipe(amb: &AmbientData) -> Result<RestrictionResult> {
    let res = restrict(amb)?;
    if res.rank == 0 {
        return Err(Error::Precondition(
            "every ambient root restricts to zero; sigma is the identity".into(),
        ));
    }
    let rs = amb.sigma_system();
    let theta = amb.theta();
    let sigma = amb.sigma();
    let keys: Vec<Vec<Rational>> = res.fibers.keys().cloned().collect();
    let key_set: BTreeSet<&Vec<Rational>> = keys.iter().collect();

    // Representative independence of (α - σα - θα + σθα)/4 on each fiber.
    let mut step_value: BTreeMap<&Vec<Rational>, Vec<Rational>> = BTreeMap::new();
    for (lam, fiber) in &res.fibers {
        let mut seen: Option<Vec<Rational>> = None;
        for a in fiber {
            let ta = theta.apply(a.coeffs());
            let sa = sigma.apply(a.coeffs());
            let sta = sigma.apply(&ta);
            let q: Vec<Rational> = (0..a.coeffs().len())
                .map(|i| Rational::new((a.coeffs()[i] - sa[i] - ta[i] + sta[i]).into(), 4.into()))
                .collect();
            match &seen {
                None => seen = Some(q),
                Some(s) if *s == q => {}
                Some(_) => {
                    return Err(Error::structural(format!(
                        "ambient roots over one restricted root disagree on the black/arrow value (at {})",
                        a.pretty()
                    )))
                }
            }
        }
        step_value.insert(lam, seen.expect("fibers are nonempty"));
    }

    // An order in which -θ preserves positivity off the black part.
    let positive = |l: &[Rational]| -> bool {
        let tl = theta.apply_rational(l);
        match lex_sign(&sub(l, &tl)) {
            0 => lex_sign(&add(l, &tl)) > 0,
            s => s > 0,
        }
    };
    let pos: Vec<&Vec<Rational>> = keys.iter().filter(|l| positive(l)).collect();
    let pos_set: BTreeSet<&Vec<Rational>> = pos.iter().copied().collect();
    let simple: Vec<&Vec<Rational>> = pos
        .iter()
        .copied()
        .filter(|l| !pos.iter().any(|m| pos_set.contains(&sub(l, m))))
        .collect();
    if simple.len() != res.rank {
        return Err(Error::structural(format!(
            "found {} simple restricted roots for rank {}",
            simple.len(),
            res.rank
        )));
    }
    let n = simple.len();
    let dual: Vec<Vec<Rational>> = simple.iter().map(|l| gram_apply(rs, l)).collect();
    let gram: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| dot(&dual[i], simple[j])).collect())
        .collect();
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = &gram[i][j] * rat(2) / &gram[j][j];
            cartan[i][j] = to_integers(&[c])
                .ok_or_else(|| Error::structural("restricted Cartan matrix is not integral"))?[0];
        }
    }

    // Step 3 and Step 4 on the simple roots.
    let values: Vec<&Vec<Rational>> = simple.iter().map(|l| &step_value[l]).collect();
    let black: BTreeSet<usize> = (0..n).filter(|&k| values[k].iter().all(Zero::is_zero)).collect();
    let mut partner: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in 0..n {
            if a != b && !black.contains(&a) && !black.contains(&b) && values[a] == values[b] {
                if partner[a] != a && partner[a] != b {
                    return Err(Error::structural(format!(
                        "restricted simple root {} is joined to more than one other",
                        a + 1
                    )));
                }
                partner[a] = b;
            }
        }
    }
    let split_rank = values
        .iter()
        .filter(|v| !v.iter().all(Zero::is_zero))
        .collect::<BTreeSet<_>>()
        .len();

    // Connected pieces of the restricted Dynkin diagram.
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut q = 0;
        while q < comp.len() {
            let a = comp[q];
            for b in 0..n {
                if !seen[b] && cartan[a][b] != 0 {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            q += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    let mut matches = Vec::new();
    for comp in &comps {
        let non_reduced = comp.iter().any(|&k| key_set.contains(&scale(simple[k], &rat(2))));
        let m = component_matches(&cartan, comp, non_reduced)?;
        if m.is_empty() {
            return Err(Error::structural(format!(
                "restricted component on {} simple roots matches no root system",
                comp.len()
            )));
        }
        matches.push(m);
    }

    // Recognize the diagram type.
    let mut found: Vec<(SatakeLabel, Vec<usize>)> = Vec::new();
    let mut try_label = |label: SatakeLabel, maps: Vec<Vec<usize>>| -> Result<()> {
        if found.iter().any(|(l, _)| *l == label)
            || !standard_diagram_admissible(label, n, split_rank)
        {
            return Ok(());
        }
        let std = standard_diagram(label, n, split_rank)?;
        if let Some(m) = maps.into_iter().find(|m| shape_matches(&std, m, &black, &partner)) {
            found.push((label, m));
        }
        Ok(())
    };
    match matches.as_slice() {
        [single] => {
            for (f, isos) in single {
                for label in SatakeLabel::simple_labels().filter(|l| l.family() == *f) {
                    try_label(label, isos.clone())?;
                }
            }
        }
        [first, second] => {
            for (f, ia) in first {
                for (g, ib) in second {
                    if f != g {
                        continue;
                    }
                    let mut both = Vec::new();
                    for a in ia {
                        for b in ib {
                            both.push([a.clone(), b.clone()].concat());
                            both.push([b.clone(), a.clone()].concat());
                        }
                    }
                    try_label(SatakeLabel::Doubled(*f), both)?;
                }
            }
        }
        _ => {}
    }
    let labels: Vec<SatakeLabel> = found.iter().map(|(l, _)| *l).collect();

    let (diagram, map) = match found.first() {
        Some((label, map)) => (standard_diagram(*label, n, split_rank)?, map.clone()),
        None => {
            let mut comps_std = Vec::new();
            let mut map = Vec::new();
            for m in &matches {
                let (f, isos) = &m[0];
                comps_std.push(Component::new(*f, isos[0].len())?);
                map.extend(isos[0].iter().copied());
            }
            let rsr = RootSystem::build(&RootSystemDescriptor::new(comps_std)?)?;
            let mut pos_of = vec![0; n];
            for (t, &k) in map.iter().enumerate() {
                pos_of[k] = t;
            }
            let arrows: Vec<(usize, usize)> = (0..n)
                .filter(|&k| partner[k] > k)
                .map(|k| (pos_of[k], pos_of[partner[k]]))
                .collect();
            let d = SatakeDiagram::new(
                "unrecognized",
                rsr,
                black.iter().map(|&k| pos_of[k]),
                &arrows,
            )?;
            (d, map)
        }
    };

    // Coordinates of restricted roots in the simple basis, std numbering.
    let ginv = invert(&gram).ok_or_else(|| Error::structural("restricted simple roots are dependent"))?;
    let coords = |l: &[Rational]| -> Result<Root> {
        let g = gram_apply(rs, l);
        let b: Vec<Rational> = simple.iter().map(|s| dot(&g, s)).collect();
        let c: Vec<Rational> = ginv.iter().map(|row| dot(row, &b)).collect();
        let v: Vec<Rational> = map.iter().map(|&k| c[k].clone()).collect();
        to_integers(&v)
            .map(Root)
            .ok_or_else(|| Error::structural("restricted root has non-integral coordinates"))
    };
    let restricted = diagram.rs();
    let mut fibers = BTreeMap::new();
    for (lam, fiber) in &res.fibers {
        let r = coords(lam)?;
        if !restricted.contains(r.coeffs()) {
            return Err(Error::structural(format!(
                "restriction {} is not a root of {}",
                r.pretty(),
                restricted.descriptor()
            )));
        }
        fibers.insert(r, fiber.clone());
    }
    if fibers.len() != restricted.roots().len() {
        return Err(Error::structural(format!(
            "restrictions give {} roots, {} has {}",
            fibers.len(),
            restricted.descriptor(),
            restricted.roots().len()
        )));
    }

    let cols = map
        .iter()
        .map(|&k| {
            let t = theta.apply_rational(simple[k]);
            coords(&scale(&t, &rat(-1))).map(|r| r.0)
        })
        .collect::<Result<Vec<_>>>()?;
    let theta_tilde = LatticeMatrix::from_columns(&cols)?;
    let report = validate(&diagram, &theta_tilde);
    if !report.all_passed() {
        return Err(Error::structural(format!(
            "assembled diagram does not validate: {report}"
        )));
    }
    Ok(RestrictionResult {
        fibers,
        fixed: res.fixed,
        rank: n,
        split_rank,
        diagram,
        labels,
        theta_tilde,
        report,
    })
}

/// Field-level comparison of a run with a catalog row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogComparison {
    pub expected: Instance,
    pub diffs: Vec<String>,
}

impl CatalogComparison {
    pub fn matches(&self) -> bool {
        self.diffs.is_empty()
    }
}

impl fmt::Display for CatalogComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.matches() {
            write!(f, "matches {}", self.expected)
        } else {
            write!(f, "differs from {}: {}", self.expected, self.diffs.join("; "))
        }
    }
}

pub fn verify_against_catalog(
    result: &RestrictionResult,
    catalog: &Catalog,
    entry: &CatalogEntry,
    params: &Bindings,
) -> Result<CatalogComparison> {
    let expected = catalog.instantiate(entry, params)?;
    if result.labels.is_empty() {
        return Err(Error::structural(format!(
            "unrecognized diagram shape: {}",
            result.shape_description()
        )));
    }
    let mut diffs = Vec::new();
    if !result.labels.contains(&expected.label) {
        let got: Vec<String> = result.labels.iter().map(|l| l.to_string()).collect();
        diffs.push(format!("type {} vs expected {}", got.join("/"), expected.label));
    }
    if result.rank != expected.r {
        diffs.push(format!("rank {} vs expected {}", result.rank, expected.r));
    }
    if result.split_rank != expected.l {
        diffs.push(format!(
            "split rank {} vs expected {}",
            result.split_rank, expected.l
        ));
    }
    Ok(CatalogComparison { expected, diffs })
}

/// Curated inputs shipped with the crate, by name.
pub const BUILTIN_INPUTS: [(&str, &str); 5] = [
    ("a3-aiii", include_str!("../data/recipes/a3_aiii.json")),
    ("a3-riemannian", include_str!("../data/recipes/a3_riemannian.json")),
    ("a3-split", include_str!("../data/recipes/a3_split.json")),
    ("a3-sigma-aiii", include_str!("../data/recipes/a3_sigma_aiii.json")),
    ("d4-di", include_str!("../data/recipes/d4_di.json")),
];

pub fn builtin_input(name: &str) -> Option<&'static str> {
    BUILTIN_INPUTS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_bindings;

    fn a3() -> RootSystem {
        RootSystem::from_str_descriptor("A3").unwrap()
    }

    fn aiii31() -> InvolutionSource {
        InvolutionSource::Diagram {
            label: SatakeLabel::AIII,
            r: 3,
            l: 1,
        }
    }

    #[test]
    fn minus_identity_restricts_to_itself() {
        let rs = a3();
        let amb = AmbientData::from_sources(
            rs.clone(),
            (&InvolutionSource::Scalar(-1), false),
            (&InvolutionSource::Scalar(-1), false),
        )
        .unwrap();
        let res = restrict(&amb).unwrap();
        assert_eq!(res.fibers.len(), 12);
        assert!(res.fibers.values().all(|f| f.len() == 1));
        assert_eq!(res.rank, 3);
    }

    #[test]
    fn identity_sigma_is_degenerate() {
        let amb = AmbientData::from_sources(
            a3(),
            (&InvolutionSource::Scalar(1), false),
            (&InvolutionSource::Scalar(1), false),
        )
        .unwrap();
        let res = restrict(&amb).unwrap();
        assert!(res.fibers.is_empty());
        assert_eq!(res.rank, 0);
        assert!(matches!(run_recipe(&amb), Err(Error::Precondition(_))));
    }

    #[test]
    fn aiii_theta_reproduces_diagram() {
        let amb =
            AmbientData::from_sources(a3(), (&InvolutionSource::Scalar(-1), false), (&aiii31(), true))
                .unwrap();
        let out = run_recipe(&amb).unwrap();
        assert_eq!((out.rank, out.split_rank), (3, 1));
        assert!(out.labels.contains(&SatakeLabel::AIII));
        assert!(out.diagram.same_shape(&standard_diagram(SatakeLabel::AIII, 3, 1).unwrap()));
        assert!(out.fibers.values().all(|f| f.len() == 1));
    }

    #[test]
    fn riemannian_case_is_all_white() {
        let amb = AmbientData::from_sources(a3(), (&aiii31(), true), (&aiii31(), true)).unwrap();
        let out = run_recipe(&amb).unwrap();
        assert!(out.diagram.black().is_empty());
        assert!(out.diagram.arrows().is_empty());
        assert_eq!(out.split_rank, out.rank);
        // su(1,3): BC1 with multiplicities 4 and 1
        assert_eq!(out.restricted().descriptor().to_string(), "BC1");
        assert_eq!(out.multiplicity(&Root(vec![1])), 4);
        assert_eq!(out.multiplicity(&Root(vec![2])), 1);
        let total: u64 = out.multiplicities().values().sum();
        assert_eq!(total as usize + out.fixed.len(), 12);
    }

    #[test]
    fn multiplicities_are_symmetric() {
        for (name, src) in BUILTIN_INPUTS {
            let out = run_recipe(&AmbientData::from_json(src).unwrap()).unwrap();
            for (r, m) in out.multiplicities() {
                assert_eq!(out.multiplicity(&r.neg()), m, "{name} {}", r.pretty());
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let sym = InvolutionSource::Matrix(LatticeMatrix::from_rows(vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap());
        assert!(AmbientData::from_sources(a3(), (&sym, false), (&InvolutionSource::Scalar(1), false)).is_err());
        assert!(AmbientData::from_sources(a3(), (&InvolutionSource::Scalar(3), false), (&InvolutionSource::Scalar(1), false)).is_err());
        let wrong = InvolutionSource::Diagram {
            label: SatakeLabel::BI,
            r: 3,
            l: 1,
        };
        assert!(AmbientData::from_sources(a3(), (&wrong, false), (&InvolutionSource::Scalar(1), false)).is_err());
        assert!(AmbientData::from_json(r#"{"sigma_system":"A3","sigma_matrix":[[-1,0,0],[0,-1,0],[0,0,-1]]}"#).is_err());
    }

    #[test]
    fn catalog_comparison() {
        let amb =
            AmbientData::from_sources(a3(), (&InvolutionSource::Scalar(-1), false), (&aiii31(), true))
                .unwrap();
        let out = run_recipe(&amb).unwrap();
        let cat = Catalog::builtin();
        let e = cat.lookup("(su(p,n-p), so(p,n-p))")[0];
        let cmp = verify_against_catalog(&out, cat, e, &parse_bindings("n=4,p=1").unwrap()).unwrap();
        assert!(cmp.matches(), "{cmp}");
        // rank agrees, split rank does not
        let cmp = verify_against_catalog(&out, cat, e, &parse_bindings("n=4,p=2").unwrap()).unwrap();
        assert_eq!(cmp.diffs, vec!["split rank 1 vs expected 2".to_string()]);
        let e = cat.lookup("(sl(n,C), sl(n,R))")[0];
        let cmp = verify_against_catalog(&out, cat, e, &parse_bindings("n=4").unwrap()).unwrap();
        assert!(!cmp.matches());
    }

    #[test]
    fn riemannian_run_against_black_expectation() {
        let amb = AmbientData::from_sources(a3(), (&aiii31(), true), (&aiii31(), true)).unwrap();
        let out = run_recipe(&amb).unwrap();
        let cat = Catalog::builtin();
        let e = cat.lookup("(su(p,n-p), so(p,n-p))")[0];
        let cmp = verify_against_catalog(&out, cat, e, &parse_bindings("n=4,p=1").unwrap()).unwrap();
        assert!(!cmp.matches());
    }
}
