//! The acceptance suite: nine exact checks, shared by `austere verify all`
//! and the integration tests.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::austere::{austere_multiset, is_austere, root_vector, shape_spectrum, BasePoint, MultiplicityMap, VectorMultiset};
use crate::catalog::{Bindings, Catalog, Instance};
use crate::classify::{closed_form_real_roots, imaginary_roots, real_roots};
use crate::error::Result;
use crate::involutions::{
    induced_involution, involution_by_search, standard_diagram, sweep, LatticeInvolution, SatakeDiagram, SatakeLabel,
    CHECK_BLACK, CHECK_CONGRUENCE, CHECK_INVOLUTIVE, CHECK_ISOMETRY, CHECK_PERMUTES,
};
use crate::rational::{fmt_rational, rat, ratio, Rational};
use crate::recipe::{run_recipe, AmbientData, InvolutionSource, BUILTIN_INPUTS};
use crate::rootcore::{Root, RootSystem};

#[derive(Clone, Debug)]
pub struct Options {
    /// Largest classical rank in the diagram sweep.
    pub max_rank: usize,
    /// Random points per sampled system in the invariance checks.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_rank: 8,
            samples: 100,
            seed: 20_241_016,
        }
    }
}

/// Result of one acceptance criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "AC{} {verdict} {}: {}", self.id, self.title, self.detail)
    }
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn outcome(self, id: usize, title: &'static str, what: &str) -> Outcome {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{} {what}, 0 failures", self.checked)
        } else {
            let shown: Vec<&str> = self.failures.iter().take(5).map(String::as_str).collect();
            format!(
                "{} of {} {what} failed: {}",
                self.failures.len(),
                self.checked,
                shown.join("; ")
            )
        };
        Outcome {
            id,
            title,
            passed,
            detail,
        }
    }
}

/// One diagram of the sweep with its closed-form involution.
pub struct SweepItem {
    pub label: SatakeLabel,
    pub r: usize,
    pub l: usize,
    pub diagram: SatakeDiagram,
    pub involution: LatticeInvolution,
}

impl SweepItem {
    fn name(&self) -> String {
        format!("{}({},{})", self.label, self.r, self.l)
    }
}

pub struct Sweep {
    pub items: Vec<SweepItem>,
}

impl Sweep {
    pub fn new(max_rank: usize) -> Result<Sweep> {
        let items = sweep(max_rank)
            .into_iter()
            .map(|(label, r, l)| {
                let diagram = standard_diagram(label, r, l)?;
                let involution = induced_involution(&diagram)?;
                Ok(SweepItem {
                    label,
                    r,
                    l,
                    diagram,
                    involution,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sweep { items })
    }
}

/// Closed-form real roots equal the brute-force fixed points of `-θ̃`.
pub fn ac1(sw: &Sweep) -> Outcome {
    let mut t = Tally::new();
    for it in &sw.items {
        let brute = real_roots(it.diagram.rs(), &it.involution);
        let closed = closed_form_real_roots(it.label, it.r, it.l);
        let ok = matches!((&brute, &closed), (Ok(b), Ok(c)) if b.members == c.members);
        t.check(ok, || format!("{} brute {:?} vs closed {:?}", it.name(),
            brute.map(|b| b.len()), closed.map(|c| c.len())));
    }
    t.outcome(1, "real-root table", "diagrams compared")
}

/// Cardinalities of the exceptional lists, and no real roots for AII and
/// the doubled types.
pub fn ac2(sw: &Sweep) -> Outcome {
    use SatakeLabel::*;
    let mut t = Tally::new();
    let want = [(EII, 24), (EIII, 4), (EVI, 24), (EVII, 6), (EIX, 24), (FII, 2), (FIII, 8)];
    for it in &sw.items {
        let expected = match it.label {
            AII | Doubled(_) => Some(0),
            l => want.iter().find(|(w, _)| *w == l).map(|(_, n)| *n),
        };
        let Some(n) = expected else { continue };
        let brute = real_roots(it.diagram.rs(), &it.involution).map(|s| s.len());
        let closed = closed_form_real_roots(it.label, it.r, it.l).map(|s| s.len());
        let ok = brute.as_ref().ok() == Some(&n) && closed.as_ref().ok() == Some(&n);
        t.check(ok, || format!("{}: expected {n}, brute {brute:?}, closed {closed:?}", it.name()));
    }
    t.outcome(2, "real-root counts", "diagrams counted")
}

/// Every real root vector is austere with unit multiplicities.
pub fn ac3(sw: &Sweep) -> Outcome {
    let mut t = Tally::new();
    let m = MultiplicityMap::unit();
    for it in &sw.items {
        let rs = it.diagram.rs();
        let real = match real_roots(rs, &it.involution) {
            Ok(r) => r,
            Err(e) => {
                t.check(false, || format!("{}: {e}", it.name()));
                continue;
            }
        };
        for alpha in real.ordered() {
            let ok = root_vector(rs, &alpha).map(|x| is_austere(rs, &x, &m).verdict);
            t.check(ok == Ok(true), || format!("{} at {}", it.name(), alpha.pretty()));
        }
    }
    t.outcome(3, "austere real root vectors", "root vectors checked")
}

/// A2 at X = (3, 1): not austere, spectrum {3/5, 9, -3/2} along ξ = (1, 5).
pub fn ac4() -> Outcome {
    let run = || -> Result<(bool, BTreeMap<Rational, u64>)> {
        let rs = RootSystem::from_str_descriptor("A2")?;
        let x = BasePoint::new(&rs, vec![rat(3), rat(1)])?;
        let m = MultiplicityMap::unit();
        let verdict = is_austere(&rs, &x, &m).verdict;
        let spec = shape_spectrum(&rs, &x, &[rat(1), rat(5)], &m)?;
        Ok((verdict, spec))
    };
    let want: BTreeMap<Rational, u64> = [(ratio(3, 5), 1), (rat(9), 1), (ratio(-3, 2), 1)].into_iter().collect();
    let (passed, detail) = match run() {
        Ok((verdict, spec)) => {
            let shown: Vec<String> = spec.keys().map(fmt_rational).collect();
            (
                !verdict && spec == want,
                format!("austere = {verdict}, spectrum {{{}}}", shown.join(", ")),
            )
        }
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        id: 4,
        title: "negative control",
        passed,
        detail,
    }
}

/// The five involution laws, plus agreement with the search construction.
pub fn ac5(sw: &Sweep) -> Outcome {
    let mut t = Tally::new();
    for it in &sw.items {
        let rep = it.involution.report();
        for name in [CHECK_INVOLUTIVE, CHECK_ISOMETRY, CHECK_PERMUTES, CHECK_BLACK, CHECK_CONGRUENCE] {
            let ok = rep.check(name).is_some_and(|c| c.passed);
            t.check(ok, || format!("{}: {name}", it.name()));
        }
        let search = involution_by_search(&it.diagram);
        let ok = matches!(&search, Ok(s) if s.matrix() == it.involution.matrix());
        t.check(ok, || format!("{}: closed form differs from search", it.name()));
    }
    t.outcome(5, "involution laws", "checks")
}

/// Imaginary roots are exactly the roots in the span of the black nodes.
pub fn ac6(sw: &Sweep) -> Outcome {
    let mut t = Tally::new();
    for it in &sw.items {
        let rs = it.diagram.rs();
        let span: BTreeSet<Root> = rs.roots_in_span(&it.diagram.black_vec()).into_iter().collect();
        let ok = matches!(imaginary_roots(rs, &it.involution), Ok(s) if s.members == span);
        t.check(ok, || it.name());
    }
    t.outcome(6, "imaginary roots", "diagrams compared")
}

/// Recipe: Riemannian inputs, the A3 reconstruction, fiber constancy.
pub fn ac7(sw: &Sweep) -> Outcome {
    let mut t = Tally::new();
    // (a) σ = θ
    for it in &sw.items {
        let src = InvolutionSource::Matrix(it.involution.matrix().clone());
        let run = AmbientData::from_sources(it.diagram.rs().clone(), (&src, true), (&src, true))
            .and_then(|amb| run_recipe(&amb));
        let ok = matches!(&run, Ok(out) if out.diagram.black().is_empty()
            && out.diagram.arrows().is_empty()
            && out.split_rank == out.rank);
        t.check(ok, || format!("sigma = theta on {}: {}", it.name(), match &run {
            Ok(out) => out.shape_description(),
            Err(e) => e.to_string(),
        }));
    }
    // (b) A3, σ = -id, θ from AIII(3,1)
    let b = || -> Result<bool> {
        let rs = RootSystem::from_str_descriptor("A3")?;
        let theta = InvolutionSource::Diagram {
            label: SatakeLabel::AIII,
            r: 3,
            l: 1,
        };
        let amb = AmbientData::from_sources(rs, (&InvolutionSource::Scalar(-1), false), (&theta, true))?;
        let out = run_recipe(&amb)?;
        let want = standard_diagram(SatakeLabel::AIII, 3, 1)?;
        Ok(out.diagram.same_shape(&want) && out.rank == 3 && out.split_rank == 1)
    };
    let rb = b();
    t.check(rb == Ok(true), || format!("A3 with AIII(3,1): {rb:?}"));
    // (c) representative independence on shipped inputs
    for (name, src) in BUILTIN_INPUTS {
        let run = AmbientData::from_json(src).and_then(|amb| run_recipe(&amb));
        t.check(run.is_ok(), || format!("{name}: {}", run.err().map(|e| e.to_string()).unwrap_or_default()));
    }
    t.outcome(7, "recipe", "runs")
}

fn map_keys(m: &VectorMultiset, f: impl Fn(&[Rational]) -> Vec<Rational>) -> VectorMultiset {
    let mut out = VectorMultiset::new();
    for (k, c) in m {
        *out.entry(f(k)).or_insert(0) += c;
    }
    out
}

fn scale_vec(v: &[Rational], c: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * c).collect()
}

/// Systems used by the invariance checks.
pub const INVARIANCE_SYSTEMS: [&str; 8] = ["A2", "B3", "C3", "BC2", "D4", "G2", "F4", "A1+B2"];

/// Sample points: `samples` random rational vectors, then every positive
/// root vector so austere points are covered too.
pub fn sample_points(rs: &RootSystem, samples: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    let n = rs.rank();
    let mut out = Vec::new();
    while out.len() < samples {
        let v: Vec<Rational> = (0..n)
            .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            .collect();
        if v.iter().any(|x| *x != rat(0)) {
            out.push(v);
        }
    }
    for a in rs.positives() {
        let c = ratio(rng.gen_range(1..=7), rng.gen_range(1..=4));
        out.push(a.coeffs().iter().map(|&x| rat(x) * &c).collect());
    }
    out
}

/// Scale, simple-reflection and Gram-rescaling behaviour of the multiset.
pub fn ac8(opts: &Options) -> Outcome {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let m = MultiplicityMap::unit();
    let scales = [rat(-1), rat(2), ratio(1, 3)];
    let mut points = 0;
    for name in INVARIANCE_SYSTEMS {
        let rs = RootSystem::from_str_descriptor(name).expect("fixed system list");
        let comps = rs.descriptor().components.len();
        // one factor for all components keeps the criterion unchanged on
        // reducible systems
        let factor = [rat(2), ratio(1, 3), ratio(5, 7)][points % 3].clone();
        let rescaled = rs.rescaled(&vec![factor.clone(); comps]).expect("positive factors");
        for v in sample_points(&rs, opts.samples, &mut rng) {
            points += 1;
            let x = BasePoint::new(&rs, v.clone()).expect("nonzero sample");
            let base = austere_multiset(&rs, &x, &m);
            let verdict = is_austere(&rs, &x, &m).verdict;
            let at = || format!("{name} at ({})", v.iter().map(fmt_rational).collect::<Vec<_>>().join(","));
            for c in &scales {
                let y = x.scaled(c).expect("nonzero factor");
                let inv = rat(1) / c;
                let want = map_keys(&base, |k| scale_vec(k, &inv));
                let ok = austere_multiset(&rs, &y, &m) == want && is_austere(&rs, &y, &m).verdict == verdict;
                t.check(ok, || format!("scale {} {}", fmt_rational(c), at()));
            }
            for i in 0..rs.rank() {
                let s = Root::simple(rs.rank(), i);
                let y = BasePoint::new(&rs, rs.reflect(&s, &v).expect("dimensions")).expect("nonzero");
                let want = map_keys(&base, |k| rs.reflect(&s, k).expect("dimensions"));
                let ok = austere_multiset(&rs, &y, &m) == want && is_austere(&rs, &y, &m).verdict == verdict;
                t.check(ok, || format!("reflection s{} {}", i + 1, at()));
            }
            let xr = BasePoint::new(&rescaled, v.clone()).expect("nonzero");
            let inv = rat(1) / &factor;
            let want = map_keys(&base, |k| scale_vec(k, &inv));
            let ok = austere_multiset(&rescaled, &xr, &m) == want && is_austere(&rescaled, &xr, &m).verdict == verdict;
            t.check(ok, || format!("gram x{} {}", fmt_rational(&factor), at()));
        }
    }
    t.outcome(8, "invariance", &format!("comparisons over {points} points"))
}

/// Catalog lookups, admissibility closure, formula round trip.
pub fn ac9() -> Outcome {
    let cat = Catalog::builtin();
    let mut problems: Vec<String> = Vec::new();
    let none = Bindings::new();
    let expect_one = |pat: &str| -> Option<&crate::catalog::CatalogEntry> {
        match cat.lookup(pat).as_slice() {
            [e] => Some(*e),
            _ => None,
        }
    };
    match expect_one("(sl(n,R), so(p,n-p))") {
        Some(e)
            if e.label == SatakeLabel::AI
                && e.rank.to_string() == "n-1"
                && e.srank.to_string() == "n-1" => {}
        other => problems.push(format!("AI lookup gave {other:?}")),
    }
    for (pat, want) in [
        ("(e6(6), sp(4))", Instance { label: SatakeLabel::EI, r: 6, l: 6 }),
        ("(f4(-20), so(9))", Instance { label: SatakeLabel::BCI, r: 1, l: 1 }),
    ] {
        let got = expect_one(pat).map(|e| cat.instantiate(e, &none));
        if !matches!(&got, Some(Ok(i)) if *i == want) {
            problems.push(format!("{pat} gave {got:?}"));
        }
    }
    let mut formulas = 0;
    for e in cat.entries() {
        for f in e.formulas() {
            formulas += 1;
            let again = crate::catalog::parse_formula(&f.to_string());
            if again.as_ref() != Ok(&f) {
                problems.push(format!("round trip of `{f}` in {}", e.pair_name()));
            }
        }
    }
    let closure = cat.admissibility_closure();
    let failing = closure.failing_pairs();
    if !failing.is_empty() {
        let rows: Vec<String> = failing
            .iter()
            .map(|(p, flagged)| format!("{p}{}", if *flagged { " [flagged]" } else { "" }))
            .collect();
        problems.push(format!(
            "admissibility closure fails for {} rows ({} instances): {}",
            failing.len(),
            closure.failures.len(),
            rows.join(", ")
        ));
    }
    let passed = problems.is_empty();
    let detail = if passed {
        format!(
            "3 lookups, {} closure instances ({} degenerate skipped), {formulas} formulas round-trip",
            closure.checked, closure.skipped
        )
    } else {
        problems.join("; ")
    };
    Outcome {
        id: 9,
        title: "catalog",
        passed,
        detail,
    }
}

/// Runs all nine criteria.
pub fn run_all(opts: &Options) -> Result<Vec<Outcome>> {
    let sw = Sweep::new(opts.max_rank)?;
    Ok(vec![
        ac1(&sw),
        ac2(&sw),
        ac3(&sw),
        ac4(),
        ac5(&sw),
        ac6(&sw),
        ac7(&sw),
        ac8(opts),
        ac9(),
    ])
}
