//! The austere-orbit criterion and the shape-operator spectrum.
//!
//! Points of the Cartan subspace are written in simple-root coordinates and
//! identified with covectors through the Gram matrix, so the root vector of
//! `α` has the same coordinates as `α`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::classify::{imaginary_roots, real_roots};
use crate::error::{Error, Result};
use crate::involutions::{induced_involution, SatakeDiagram};
use crate::rational::{dot, fmt_rational, neg_vec, parse_rational, to_rationals, Rational};
use crate::rootcore::{Root, RootSystem};

/// A nonzero point `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    coords: Vec<Rational>,
}

impl BasePoint {
    pub fn new(rs: &RootSystem, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != rs.rank() {
            return Err(Error::Dimension {
                expected: rs.rank(),
                got: coords.len(),
            });
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::input("base point must be nonzero"));
        }
        Ok(BasePoint { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn scaled(&self, c: &Rational) -> Result<BasePoint> {
        if c.is_zero() {
            return Err(Error::input("scale factor must be nonzero"));
        }
        Ok(BasePoint {
            coords: self.coords.iter().map(|x| x * c).collect(),
        })
    }
}

/// Root multiplicities; unlisted positive roots have multiplicity one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityMap {
    overrides: BTreeMap<Root, u64>,
}

impl MultiplicityMap {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Sets `m(α)`; `α` may be given with either sign.
    pub fn set(&mut self, rs: &RootSystem, alpha: &Root, m: u64) -> Result<()> {
        if !rs.is_root(alpha.coeffs())? {
            return Err(Error::NotARoot(alpha.pretty()));
        }
        if m == 0 {
            return Err(Error::input("multiplicities must be positive"));
        }
        self.overrides.insert(alpha.abs(), m);
        Ok(())
    }

    pub fn get(&self, alpha: &Root) -> u64 {
        self.overrides.get(&alpha.abs()).copied().unwrap_or(1)
    }

    /// Reads `{"a1+a2": 2, ...}`.
    pub fn from_json(rs: &RootSystem, s: &str) -> Result<Self> {
        let raw: BTreeMap<String, u64> = serde_json::from_str(s)
            .map_err(|e| Error::input(format!("bad multiplicity file: {e}")))?;
        let mut m = Self::unit();
        for (k, v) in raw {
            m.set(rs, &Root::parse(&k, rs.rank())?, v)?;
        }
        Ok(m)
    }
}

/// Root vector `A_α`.
pub fn root_vector(rs: &RootSystem, alpha: &Root) -> Result<BasePoint> {
    if !rs.is_root(alpha.coeffs())? {
        return Err(Error::NotARoot(alpha.pretty()));
    }
    BasePoint::new(rs, to_rationals(alpha.coeffs()))
}

fn gram_times(rs: &RootSystem, x: &[Rational]) -> Vec<Rational> {
    rs.gram().iter().map(|row| dot(row, x)).collect()
}

/// `α(X)` for an integer vector.
fn value(alpha: &[i64], gx: &[Rational]) -> Rational {
    alpha
        .iter()
        .zip(gx)
        .filter(|(a, _)| **a != 0)
        .map(|(&a, g)| Rational::from_integer(a.into()) * g)
        .sum()
}

/// Rational vectors with counts, in canonical (sorted) order.
pub type VectorMultiset = BTreeMap<Vec<Rational>, u64>;

/// `{(-1/α(X)) p_X(α) : α ∈ R₊, α(X) ≠ 0}` with counts `m(α)`, where
/// `p_X(α) = α - (α(X)/B(X,X)) X`.
pub fn austere_multiset(rs: &RootSystem, x: &BasePoint, m: &MultiplicityMap) -> VectorMultiset {
    let gx = gram_times(rs, x.coords());
    let bxx = dot(x.coords(), &gx);
    let x_over: Vec<Rational> = x.coords().iter().map(|c| c / &bxx).collect();
    let mut out = VectorMultiset::new();
    for alpha in rs.positives() {
        let ax = value(alpha.coeffs(), &gx);
        if ax.is_zero() {
            continue;
        }
        // (-1/α(X))(α - (α(X)/B(X,X)) X) = X/B(X,X) - α/α(X)
        let v: Vec<Rational> = alpha
            .coeffs()
            .iter()
            .zip(&x_over)
            .map(|(&a, xo)| xo - Rational::from_integer(a.into()) / &ax)
            .collect();
        *out.entry(v).or_insert(0) += m.get(alpha);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Index pairs `(i, j)` with entry `j` the negation of entry `i`.
    Pairing(Vec<(usize, usize)>),
    /// First entry whose negation is missing or has a different count.
    Unmatched(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AustereReport {
    pub x: Vec<Rational>,
    pub multiset: Vec<(Vec<Rational>, u64)>,
    pub verdict: bool,
    pub witness: Witness,
}

/// Greedy negation pairing over the sorted entries.
fn pair_entries(entries: &[(Vec<Rational>, u64)]) -> Witness {
    let pos: BTreeMap<&Vec<Rational>, usize> =
        entries.iter().enumerate().map(|(i, (v, _))| (v, i)).collect();
    let mut paired = vec![false; entries.len()];
    let mut pairs = Vec::new();
    for (i, (v, c)) in entries.iter().enumerate() {
        if paired[i] {
            continue;
        }
        match pos.get(&neg_vec(v)) {
            Some(&j) if entries[j].1 == *c => {
                paired[i] = true;
                paired[j] = true;
                pairs.push((i, j));
            }
            _ => return Witness::Unmatched(i),
        }
    }
    Witness::Pairing(pairs)
}

pub fn is_austere(rs: &RootSystem, x: &BasePoint, m: &MultiplicityMap) -> AustereReport {
    let multiset: Vec<(Vec<Rational>, u64)> = austere_multiset(rs, x, m).into_iter().collect();
    let witness = pair_entries(&multiset);
    AustereReport {
        x: x.coords().to_vec(),
        verdict: matches!(witness, Witness::Pairing(_)),
        multiset,
        witness,
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct MultisetEntryJson {
    pub v: Vec<String>,
    pub count: u64,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct AustereReportJson {
    #[serde(rename = "X")]
    pub x: Vec<String>,
    pub verdict: bool,
    pub multiset: Vec<MultisetEntryJson>,
    pub pairing: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unmatched: Option<usize>,
}

impl AustereReport {
    pub fn to_json(&self) -> AustereReportJson {
        let (pairing, unmatched) = match &self.witness {
            Witness::Pairing(p) => (p.iter().map(|&(i, j)| [i, j]).collect(), None),
            Witness::Unmatched(i) => (Vec::new(), Some(*i)),
        };
        AustereReportJson {
            x: self.x.iter().map(fmt_rational).collect(),
            verdict: self.verdict,
            multiset: self
                .multiset
                .iter()
                .map(|(v, c)| MultisetEntryJson {
                    v: v.iter().map(fmt_rational).collect(),
                    count: *c,
                })
                .collect(),
            pairing,
            unmatched,
        }
    }

    pub fn from_json(j: &AustereReportJson) -> Result<Self> {
        let parse = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>();
        let multiset = j
            .multiset
            .iter()
            .map(|e| Ok((parse(&e.v)?, e.count)))
            .collect::<Result<Vec<_>>>()?;
        let witness = match j.unmatched {
            Some(i) => Witness::Unmatched(i),
            None => Witness::Pairing(j.pairing.iter().map(|p| (p[0], p[1])).collect()),
        };
        Ok(AustereReport {
            x: parse(&j.x)?,
            multiset,
            verdict: j.verdict,
            witness,
        })
    }
}

/// `{-α(ξ)/α(X) : α ∈ R₊, α(X) ≠ 0}` with counts `m(α)`; requires
/// `B(ξ, X) = 0`.
pub fn shape_spectrum(
    rs: &RootSystem,
    x: &BasePoint,
    xi: &[Rational],
    m: &MultiplicityMap,
) -> Result<BTreeMap<Rational, u64>> {
    if xi.len() != rs.rank() {
        return Err(Error::Dimension {
            expected: rs.rank(),
            got: xi.len(),
        });
    }
    let gx = gram_times(rs, x.coords());
    let bxi = dot(xi, &gx);
    if !bxi.is_zero() {
        return Err(Error::Precondition(format!(
            "xi is not orthogonal to X (B(xi, X) = {})",
            fmt_rational(&bxi)
        )));
    }
    let gxi = gram_times(rs, xi);
    let mut out = BTreeMap::new();
    for alpha in rs.positives() {
        let ax = value(alpha.coeffs(), &gx);
        if ax.is_zero() {
            continue;
        }
        let s = -value(alpha.coeffs(), &gxi) / ax;
        *out.entry(s).or_insert(0) += m.get(alpha);
    }
    Ok(out)
}

/// Whether a scalar multiset equals its negation, counts included.
pub fn is_negation_symmetric(spec: &BTreeMap<Rational, u64>) -> bool {
    spec.iter().all(|(s, c)| spec.get(&-s) == Some(c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereEntry {
    pub root: String,
    pub coeffs: Vec<i64>,
    pub austere: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub label: String,
    pub r: usize,
    pub l: usize,
    /// Real roots `α`: the orbit through `A_α`, with its verdict.
    pub sphere: Vec<SphereEntry>,
    /// Imaginary roots `α`: candidate orbits through `√-1·A_α`.
    pub hyperbolic: Vec<String>,
}

impl SurveyReport {
    pub fn all_sphere_austere(&self) -> bool {
        self.sphere.iter().all(|e| e.austere)
    }
}

pub fn austere_orbit_survey(d: &SatakeDiagram) -> Result<SurveyReport> {
    let inv = induced_involution(d)?;
    let rs = d.rs();
    let m = MultiplicityMap::unit();
    let sphere = real_roots(rs, &inv)?
        .ordered()
        .into_iter()
        .map(|alpha| {
            let x = root_vector(rs, &alpha)?;
            Ok(SphereEntry {
                root: alpha.pretty(),
                austere: is_austere(rs, &x, &m).verdict,
                coeffs: alpha.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hyperbolic = imaginary_roots(rs, &inv)?
        .ordered()
        .iter()
        .map(Root::pretty)
        .collect();
    Ok(SurveyReport {
        label: d.label.clone(),
        r: d.r(),
        l: d.l(),
        sphere,
        hyperbolic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involutions::{standard_diagram, SatakeLabel};
    use crate::rational::{rat, ratio};

    fn a2() -> RootSystem {
        RootSystem::from_str_descriptor("A2").unwrap()
    }

    fn pt(rs: &RootSystem, v: &[i64]) -> BasePoint {
        BasePoint::new(rs, to_rationals(v)).unwrap()
    }

    #[test]
    fn root_vectors() {
        let rs = a2();
        let x = root_vector(&rs, &Root(vec![1, 0])).unwrap();
        assert_eq!(rs.inner(x.coords(), x.coords()).unwrap(), rat(2));
        assert!(root_vector(&rs, &Root(vec![2, 0])).is_err());
        let bc = RootSystem::from_str_descriptor("BC2").unwrap();
        assert_eq!(root_vector(&bc, &Root(vec![2, 2])).unwrap().coords(), to_rationals(&[2, 2]));
        assert!(BasePoint::new(&rs, to_rationals(&[0, 0])).is_err());
    }

    #[test]
    fn a2_at_simple_root() {
        let rs = a2();
        let x = pt(&rs, &[1, 0]);
        let ms = austere_multiset(&rs, &x, &MultiplicityMap::unit());
        // v = a2 + a1/2 and its negation, plus zero from a1 itself
        let v = vec![ratio(1, 2), rat(1)];
        let keys: Vec<Vec<Rational>> = ms.keys().cloned().collect();
        assert_eq!(keys.len(), 3);
        assert!(ms.contains_key(&v));
        assert!(ms.contains_key(&neg_vec(&v)));
        assert!(ms.contains_key(&vec![rat(0), rat(0)]));
        assert!(is_austere(&rs, &x, &MultiplicityMap::unit()).verdict);
    }

    #[test]
    fn a2_negative_control() {
        let rs = a2();
        let x = pt(&rs, &[3, 1]);
        let rep = is_austere(&rs, &x, &MultiplicityMap::unit());
        assert!(!rep.verdict);
        assert!(matches!(rep.witness, Witness::Unmatched(_)));
        let spec = shape_spectrum(&rs, &x, &to_rationals(&[1, 5]), &MultiplicityMap::unit()).unwrap();
        let want: BTreeMap<Rational, u64> =
            [(ratio(3, 5), 1), (rat(9), 1), (ratio(-3, 2), 1)].into_iter().collect();
        assert_eq!(spec, want);
        assert!(!is_negation_symmetric(&spec));
        assert!(is_austere(&rs, &pt(&rs, &[2, 1]), &MultiplicityMap::unit()).verdict);
    }

    #[test]
    fn spectrum_examples() {
        let rs = a2();
        let x = pt(&rs, &[1, 0]);
        let spec = shape_spectrum(&rs, &x, &to_rationals(&[1, 2]), &MultiplicityMap::unit()).unwrap();
        let want: BTreeMap<Rational, u64> =
            [(rat(0), 1), (rat(3), 1), (rat(-3), 1)].into_iter().collect();
        assert_eq!(spec, want);
        let zero = shape_spectrum(&rs, &x, &to_rationals(&[0, 0]), &MultiplicityMap::unit()).unwrap();
        assert_eq!(zero, [(rat(0), 3)].into_iter().collect());
        let err = shape_spectrum(&rs, &x, &to_rationals(&[1, 0]), &MultiplicityMap::unit());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn multiplicities_enter_counts() {
        let rs = a2();
        let x = pt(&rs, &[1, 0]);
        let mut m = MultiplicityMap::unit();
        m.set(&rs, &Root(vec![0, 1]), 2).unwrap();
        assert!(!is_austere(&rs, &x, &m).verdict);
        m.set(&rs, &Root(vec![-1, -1]), 2).unwrap();
        assert!(is_austere(&rs, &x, &m).verdict);
        assert!(m.set(&rs, &Root(vec![1, 0]), 0).is_err());
        let parsed = MultiplicityMap::from_json(&rs, r#"{"a2": 2, "a1+a2": 2}"#).unwrap();
        assert_eq!(parsed, m);
    }

    #[test]
    fn report_json_round_trip() {
        let rs = a2();
        for v in [[1, 0], [3, 1]] {
            let rep = is_austere(&rs, &pt(&rs, &v), &MultiplicityMap::unit());
            let j = serde_json::to_string(&rep.to_json()).unwrap();
            let back: AustereReportJson = serde_json::from_str(&j).unwrap();
            assert_eq!(AustereReport::from_json(&back).unwrap(), rep);
        }
    }

    #[test]
    fn surveys() {
        let d = standard_diagram(SatakeLabel::EIII, 6, 2).unwrap();
        let s = austere_orbit_survey(&d).unwrap();
        assert_eq!(s.sphere.len(), 4);
        assert!(s.all_sphere_austere());
        // roots of the black A3 span
        assert_eq!(s.hyperbolic.len(), 12);
        let s = austere_orbit_survey(&standard_diagram(SatakeLabel::AI, 2, 2).unwrap()).unwrap();
        assert_eq!((s.sphere.len(), s.hyperbolic.len()), (6, 0));
        let s = austere_orbit_survey(&standard_diagram(SatakeLabel::AII, 3, 1).unwrap()).unwrap();
        assert!(s.sphere.is_empty());
    }
}
