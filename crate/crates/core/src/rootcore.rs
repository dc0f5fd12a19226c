//! Root systems in simple-root coordinates.
//!
//! Simple roots follow Bourbaki numbering. The Gram matrix is normalised so
//! that long roots of every reduced irreducible component have squared length
//! two. `BC_r` is the `B_r` system with the doubles of its short roots added.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeMatrix;
use crate::rational::{dot, ratio, Rational};

/// Irreducible root-system families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::BC,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
    ];

    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::D => 3,
            f => f.fixed_rank().unwrap_or(1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        }
    }

    pub fn is_exceptional(self) -> bool {
        self.fixed_rank().is_some()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == up)
            .ok_or_else(|| Error::input(format!("unknown root-system family `{s}`")))
    }
}

impl TryFrom<String> for Family {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.name().to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if let Some(fixed) = family.fixed_rank() {
            if rank != fixed {
                return Err(Error::input(format!(
                    "{family} has fixed rank {fixed}, got {rank}"
                )));
            }
        }
        if rank < family.min_rank() {
            return Err(Error::input(format!(
                "{family} requires rank >= {}, got {rank}",
                family.min_rank()
            )));
        }
        Ok(Component { family, rank })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_exceptional() {
            write!(f, "{}", self.family)
        } else {
            write!(f, "{}{}", self.family, self.rank)
        }
    }
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::input(format!("missing rank in `{s}`")))?;
        let (head, digits) = s.split_at(split);
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::input(format!("bad rank in `{s}`")))?;
        // exceptional names carry their rank inside the family name
        if let Ok(f) = s.parse::<Family>() {
            if f.is_exceptional() {
                return Component::new(f, rank);
            }
        }
        Component::new(head.parse()?, rank)
    }
}

/// A list of irreducible components; the simple roots of later components
/// follow those of earlier ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor")]
pub struct RootSystemDescriptor {
    pub components: Vec<Component>,
}

#[derive(Deserialize)]
struct RawDescriptor {
    components: Vec<Component>,
}

impl TryFrom<RawDescriptor> for RootSystemDescriptor {
    type Error = Error;
    fn try_from(raw: RawDescriptor) -> Result<Self> {
        RootSystemDescriptor::new(raw.components)
    }
}

impl RootSystemDescriptor {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::input("a root system needs at least one component"));
        }
        for c in &components {
            Component::new(c.family, c.rank)?;
        }
        Ok(RootSystemDescriptor { components })
    }

    pub fn single(family: Family, rank: usize) -> Result<Self> {
        Self::new(vec![Component::new(family, rank)?])
    }

    pub fn total_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.components
            .iter()
            .map(|c| {
                let r = start..start + c.rank;
                start += c.rank;
                r
            })
            .collect()
    }
}

impl fmt::Display for RootSystemDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for RootSystemDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .split('+')
            .map(str::parse)
            .collect::<Result<Vec<Component>>>()?;
        Self::new(comps)
    }
}

/// Integer coefficient vector over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn is_positive(&self) -> bool {
        is_positive(&self.0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x).collect())
    }

    /// The positive member of `{self, -self}`.
    pub fn abs(&self) -> Root {
        if self.is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `a1+2a2`-style rendering; the sign of a negative root is kept per term.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("a{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Body of a LaTeX `\pm(...)` term for a positive root.
    pub fn latex_body(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = if c.abs() == 1 {
                String::new()
            } else {
                c.abs().to_string()
            };
            let sign = if c < 0 { "-" } else { "" };
            terms.push(format!("{sign}{k}\\alpha_{{{}}}", i + 1));
        }
        terms.join("+").replace("+-", "-")
    }

    /// Parses `a1+2a2`, `-a3`, `2a1-a2` for a system of the given rank.
    pub fn parse(s: &str, rank: usize) -> Result<Root> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::input("empty root expression"));
        }
        let bad = |msg: &str| Error::input(format!("bad root `{s}`: {msg}"));
        let mut v = vec![0i64; rank];
        let bytes: Vec<char> = compact.chars().collect();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1;
            if bytes[pos] == '+' || bytes[pos] == '-' {
                if bytes[pos] == '-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad("expected `+` or `-`"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: i64 = if start == pos {
                1
            } else {
                bytes[start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad("coefficient"))?
            };
            if pos >= bytes.len() || !matches!(bytes[pos], 'a' | 'A') {
                return Err(bad("expected `a<index>`"));
            }
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let idx: usize = bytes[start..pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| bad("index"))?;
            if idx == 0 || idx > rank {
                return Err(bad(&format!("index out of range 1..={rank}")));
            }
            v[idx - 1] += sign * coeff;
        }
        Ok(Root(v))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

pub fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

/// Canonical order for root lists: positive roots lexicographically, each
/// followed by its negative.
pub fn canonical_sort(roots: &mut [Root]) {
    roots.sort_by_key(|a| (a.abs(), !a.is_positive()));
}

// Simple-root data of one irreducible component: squared lengths scaled by 6
// and the Dynkin edges (0-based, within the component).
fn component_data(c: Component) -> (Vec<i64>, Vec<(usize, usize)>) {
    let r = c.rank;
    let chain: Vec<(usize, usize)> = (1..r).map(|i| (i - 1, i)).collect();
    match c.family {
        Family::A => (vec![12; r], chain),
        Family::B | Family::BC => {
            let mut n = vec![12; r];
            n[r - 1] = 6;
            (n, chain)
        }
        Family::C => {
            let mut n = vec![6; r];
            n[r - 1] = 12;
            if r == 1 {
                n[0] = 12;
            }
            (n, chain)
        }
        Family::D => {
            let mut e: Vec<(usize, usize)> = (1..r - 1).map(|i| (i - 1, i)).collect();
            e.push((r - 3, r - 1));
            (vec![12; r], e)
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let mut e = vec![(0, 2), (1, 3), (2, 3)];
            e.extend((3..r - 1).map(|i| (i, i + 1)));
            (vec![12; r], e)
        }
        Family::F4 => (vec![12, 12, 6, 6], chain),
        Family::G2 => (vec![4, 12], chain),
    }
}

/// An immutable root system together with its Gram matrix.
#[derive(Clone, Debug)]
pub struct RootSystem {
    descriptor: RootSystemDescriptor,
    gram: Vec<Vec<Rational>>,
    // Gram matrix times `scale`, kept integral for fast root arithmetic.
    gram_int: Vec<Vec<i64>>,
    scale: i64,
    roots: Vec<Root>,
    positives: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    component_of: Vec<usize>,
}

impl RootSystem {
    pub fn build(descriptor: &RootSystemDescriptor) -> Result<RootSystem> {
        let descriptor = RootSystemDescriptor::new(descriptor.components.clone())?;
        let n = descriptor.total_rank();
        let mut gram_int = vec![vec![0i64; n]; n];
        let mut component_of = vec![0; n];
        for (ci, (c, range)) in descriptor
            .components
            .iter()
            .zip(descriptor.ranges())
            .enumerate()
        {
            let (norms, edges) = component_data(*c);
            let o = range.start;
            for (i, &d) in norms.iter().enumerate() {
                gram_int[o + i][o + i] = d;
                component_of[o + i] = ci;
            }
            for (i, j) in edges {
                let v = -norms[i].max(norms[j]) / 2;
                gram_int[o + i][o + j] = v;
                gram_int[o + j][o + i] = v;
            }
        }
        let scale = 6;
        let gram = gram_int
            .iter()
            .map(|r| r.iter().map(|&x| ratio(x, scale)).collect())
            .collect();
        let mut rs = RootSystem {
            descriptor,
            gram,
            gram_int,
            scale,
            roots: Vec::new(),
            positives: Vec::new(),
            index: HashMap::new(),
            component_of,
        };
        rs.generate();
        Ok(rs)
    }

    pub fn from_str_descriptor(s: &str) -> Result<RootSystem> {
        Self::build(&s.parse()?)
    }

    fn generate(&mut self) {
        let n = self.rank();
        let mut all: Vec<Root> = Vec::new();
        for (c, range) in self
            .descriptor
            .components
            .clone()
            .iter()
            .zip(self.descriptor.ranges())
        {
            let mut seen: HashSet<Vec<i64>> = HashSet::new();
            let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
            for i in range.clone() {
                let v = Root::simple(n, i).0;
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
            while let Some(v) = queue.pop_front() {
                for i in range.clone() {
                    let w = self.reflect_int(&Root::simple(n, i).0, &v);
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
            if c.family == Family::BC {
                let shorts: Vec<Vec<i64>> = seen
                    .iter()
                    .filter(|v| self.norm_int(v) == self.scale)
                    .cloned()
                    .collect();
                for v in shorts {
                    seen.insert(v.iter().map(|x| 2 * x).collect());
                }
            }
            all.extend(seen.into_iter().map(Root));
        }
        canonical_sort(&mut all);
        self.index = all
            .iter()
            .enumerate()
            .map(|(i, r)| (r.0.clone(), i))
            .collect();
        self.positives = all.iter().filter(|r| r.is_positive()).cloned().collect();
        self.roots = all;
    }

    pub fn descriptor(&self) -> &RootSystemDescriptor {
        &self.descriptor
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// Roots in canonical order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positives(&self) -> &[Root] {
        &self.positives
    }

    /// Index of the irreducible component containing simple root `i`.
    pub fn component_of(&self, i: usize) -> usize {
        self.component_of[i]
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> Result<bool> {
        self.check_dim(v.len())?;
        Ok(self.contains(v))
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got,
            });
        }
        Ok(())
    }

    fn inner_scaled(&self, v: &[i64], w: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in w.iter().enumerate() {
                s += a * self.gram_int[i][j] * b;
            }
        }
        s
    }

    fn norm_int(&self, v: &[i64]) -> i64 {
        self.inner_scaled(v, v)
    }

    /// `⟨v, w⟩` for integer vectors.
    pub fn inner_int(&self, v: &[i64], w: &[i64]) -> Rational {
        ratio(self.inner_scaled(v, w), self.scale)
    }

    pub fn inner(&self, v: &[Rational], w: &[Rational]) -> Result<Rational> {
        self.check_dim(v.len())?;
        self.check_dim(w.len())?;
        Ok(self.inner_unchecked(v, w))
    }

    pub(crate) fn inner_unchecked(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let gw: Vec<Rational> = self.gram.iter().map(|row| dot(row, w)).collect();
        dot(v, &gw)
    }

    /// `s_β(v)` for integer vectors whose image is integral, which holds
    /// whenever both are roots.
    pub fn reflect_int(&self, beta: &[i64], v: &[i64]) -> Vec<i64> {
        let num = 2 * self.inner_scaled(v, beta);
        let den = self.norm_int(beta);
        v.iter()
            .zip(beta)
            .map(|(&x, &b)| {
                let t = num * b;
                debug_assert_eq!(t % den, 0, "non-integral reflection");
                x - t / den
            })
            .collect()
    }

    pub fn reflect(&self, beta: &Root, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_dim(v.len())?;
        if !self.contains(&beta.0) {
            return Err(Error::NotARoot(beta.pretty()));
        }
        let b: Vec<Rational> = beta.0.iter().map(|&x| crate::rational::rat(x)).collect();
        let c = Rational::from_integer(2.into()) * self.inner_unchecked(v, &b)
            / self.inner_unchecked(&b, &b);
        Ok(v.iter().zip(&b).map(|(x, y)| x - &c * y).collect())
    }

    pub fn simple_reflection(&self, i: usize) -> LatticeMatrix {
        let n = self.rank();
        let ai = Root::simple(n, i).0;
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|j| self.reflect_int(&ai, &Root::simple(n, j).0))
            .collect();
        LatticeMatrix::from_columns(&cols).expect("square by construction")
    }

    /// Longest element of the parabolic subgroup generated by `subset`, by
    /// greedy descent: keep multiplying on the right by a simple reflection
    /// whose root is still sent to a positive root.
    pub fn longest_weyl_element(&self, subset: &[usize]) -> Result<LatticeMatrix> {
        let n = self.rank();
        if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
            return Err(Error::input(format!(
                "simple root index {} out of range 1..={n}",
                bad + 1
            )));
        }
        let refl: Vec<LatticeMatrix> = subset.iter().map(|&i| self.simple_reflection(i)).collect();
        let mut w = LatticeMatrix::identity(n);
        loop {
            let step = subset
                .iter()
                .position(|&i| is_positive(&w.column(i)));
            match step {
                Some(k) => w = w.compose(&refl[k]),
                None => return Ok(w),
            }
        }
    }

    /// `MᵀGM = G`.
    pub fn is_isometry(&self, m: &LatticeMatrix) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            let ci = m.column(i);
            (0..n).all(|j| self.inner_scaled(&ci, &m.column(j)) == self.gram_int[i][j])
        })
    }

    pub fn permutes_roots(&self, m: &LatticeMatrix) -> bool {
        self.roots.iter().all(|r| self.contains(&m.apply(&r.0)))
    }

    /// Copy with the Gram matrix of component `k` multiplied by `scales[k]`.
    /// Roots and reflections are unchanged.
    pub fn rescaled(&self, scales: &[Rational]) -> Result<RootSystem> {
        if scales.len() != self.descriptor.components.len() {
            return Err(Error::Dimension {
                expected: self.descriptor.components.len(),
                got: scales.len(),
            });
        }
        if scales.iter().any(|s| *s <= Rational::from_integer(0.into())) {
            return Err(Error::input("rescaling factors must be positive"));
        }
        let mut out = self.clone();
        for (i, row) in out.gram.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                if self.component_of[i] == self.component_of[j] {
                    *x = &*x * &scales[self.component_of[i]];
                }
            }
        }
        Ok(out)
    }

    /// Roots whose support lies inside `subset`.
    pub fn roots_in_span(&self, subset: &[usize]) -> Vec<Root> {
        self.roots
            .iter()
            .filter(|r| {
                r.0.iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || subset.contains(&i))
            })
            .cloned()
            .collect()
    }

    /// Connected components of the Dynkin subdiagram on `nodes`.
    pub fn subdiagram_components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut left: Vec<usize> = nodes.to_vec();
        left.sort_unstable();
        let mut out = Vec::new();
        while let Some(start) = left.first().copied() {
            let mut comp = vec![start];
            let mut k = 0;
            left.retain(|&x| x != start);
            while k < comp.len() {
                let u = comp[k];
                let nbrs: Vec<usize> = left
                    .iter()
                    .copied()
                    .filter(|&v| self.gram_int[u][v] != 0)
                    .collect();
                left.retain(|x| !nbrs.contains(x));
                comp.extend(nbrs);
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Cartan integer `2⟨α_i, α_j⟩ / ⟨α_j, α_j⟩`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        2 * self.gram_int[i][j] / self.gram_int[j][j]
    }

    pub fn is_simple_root_long(&self, i: usize) -> bool {
        let c = self.component_of[i];
        let max = (0..self.rank())
            .filter(|&j| self.component_of[j] == c)
            .map(|j| self.gram_int[j][j])
            .max()
            .unwrap_or(0);
        self.gram_int[i][i] == max
    }

    /// Whether simple roots `i` and `j` are joined in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.gram_int[i][j] != 0
    }
}

#[derive(Serialize)]
struct RootSystemJson<'a> {
    descriptor: &'a RootSystemDescriptor,
    rank: usize,
    count: usize,
    gram: Vec<Vec<String>>,
    positive_roots: Vec<&'a [i64]>,
}

impl RootSystem {
    pub fn to_json(&self) -> serde_json::Value {
        let j = RootSystemJson {
            descriptor: &self.descriptor,
            rank: self.rank(),
            count: self.roots.len(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(crate::rational::fmt_rational).collect())
                .collect(),
            positive_roots: self.positives.iter().map(|r| r.coeffs()).collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, to_rationals};

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_str_descriptor(s).unwrap()
    }

    #[test]
    fn counts() {
        for r in 1..=6 {
            let r64 = r as i64;
            assert_eq!(rs(&format!("A{r}")).roots().len() as i64, r64 * (r64 + 1));
            assert_eq!(rs(&format!("B{r}")).roots().len() as i64, 2 * r64 * r64);
            assert_eq!(rs(&format!("C{r}")).roots().len() as i64, 2 * r64 * r64);
            assert_eq!(rs(&format!("BC{r}")).roots().len() as i64, 2 * r64 * (r64 + 1));
            if r >= 3 {
                assert_eq!(rs(&format!("D{r}")).roots().len() as i64, 2 * r64 * (r64 - 1));
            }
        }
        assert_eq!(rs("E6").roots().len(), 72);
        assert_eq!(rs("E7").roots().len(), 126);
        assert_eq!(rs("E8").roots().len(), 240);
        assert_eq!(rs("F4").roots().len(), 48);
        assert_eq!(rs("G2").roots().len(), 12);
        assert_eq!(rs("A2+G2").roots().len(), 18);
    }

    #[test]
    fn highest_root_fingerprints() {
        assert!(rs("E8").contains(&[2, 3, 4, 6, 5, 4, 3, 2]));
        assert!(rs("F4").contains(&[2, 3, 4, 2]));
        assert!(rs("E7").contains(&[2, 2, 3, 4, 3, 2, 1]));
        assert!(rs("E6").contains(&[1, 2, 2, 3, 2, 1]));
        assert!(rs("G2").contains(&[3, 2]));
    }

    #[test]
    fn membership() {
        let a2 = rs("A2");
        assert!(a2.is_root(&[1, 1]).unwrap());
        assert!(!a2.is_root(&[2, 0]).unwrap());
        assert!(a2.is_root(&[1]).is_err());
        assert!(rs("BC2").is_root(&[2, 2]).unwrap());
    }

    #[test]
    fn inner_products() {
        let a2 = rs("A2");
        let a1 = to_rationals(&[1, 0]);
        let a2v = to_rationals(&[0, 1]);
        assert_eq!(a2.inner(&a1, &a1).unwrap(), rat(2));
        assert_eq!(a2.inner(&a1, &a2v).unwrap(), rat(-1));
        let g2 = rs("G2");
        assert_eq!(g2.gram()[0][0], ratio(2, 3));
        assert_eq!(g2.cartan(1, 0), -3);
        assert_eq!(g2.cartan(0, 1), -1);
    }

    #[test]
    fn reflections() {
        let a2 = rs("A2");
        let b = Root(vec![1, 0]);
        assert_eq!(a2.reflect(&b, &to_rationals(&[1, 0])).unwrap(), to_rationals(&[-1, 0]));
        assert_eq!(a2.reflect(&b, &to_rationals(&[0, 1])).unwrap(), to_rationals(&[1, 1]));
        assert!(a2.reflect(&Root(vec![2, 0]), &to_rationals(&[0, 1])).is_err());
    }

    #[test]
    fn longest_elements() {
        let a2 = rs("A2");
        assert!(a2.longest_weyl_element(&[]).unwrap().is_identity());
        assert_eq!(a2.longest_weyl_element(&[0]).unwrap(), a2.simple_reflection(0));
        let w0 = a2.longest_weyl_element(&[0, 1]).unwrap();
        assert_eq!(w0.column(0), vec![0, -1]);
        assert_eq!(w0.column(1), vec![-1, 0]);
        let e8 = rs("E8");
        let w = e8.longest_weyl_element(&(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(w, LatticeMatrix::identity(8).negate());
        assert!(a2.longest_weyl_element(&[5]).is_err());
    }

    #[test]
    fn descriptor_parse_and_json() {
        let d: RootSystemDescriptor = "B5".parse().unwrap();
        let j = serde_json::to_string(&d).unwrap();
        assert_eq!(j, r#"{"components":[{"family":"B","rank":5}]}"#);
        let back: RootSystemDescriptor = serde_json::from_str(&j).unwrap();
        assert_eq!(back, d);
        assert!("D2".parse::<RootSystemDescriptor>().is_err());
        assert!("E5".parse::<RootSystemDescriptor>().is_err());
        assert!(serde_json::from_str::<RootSystemDescriptor>(
            r#"{"components":[{"family":"D","rank":2}]}"#
        )
        .is_err());
        assert_eq!("E6+E6".parse::<RootSystemDescriptor>().unwrap().to_string(), "E6+E6");
    }

    #[test]
    fn pretty_roots() {
        let r = Root(vec![1, 2, 0, 3]);
        assert_eq!(r.pretty(), "a1+2a2+3a4");
        assert_eq!(r.neg().pretty(), "-a1-2a2-3a4");
        assert_eq!(Root::parse("a1+2a2+3a4", 4).unwrap(), r);
        assert_eq!(Root::parse("-a1 - 2a2-3a4", 4).unwrap(), r.neg());
        assert!(Root::parse("a5", 4).is_err());
        assert!(Root::parse("a1a2", 4).is_err());
        assert_eq!(r.latex_body(), "\\alpha_{1}+2\\alpha_{2}+3\\alpha_{4}");
    }
}
