use std::collections::BTreeMap;

use austere_core::austere::{austere_multiset, is_austere, is_negation_symmetric, shape_spectrum, BasePoint, MultiplicityMap, VectorMultiset};
use austere_core::catalog::{parse_expr, parse_formula, Bindings, Cond, CmpOp, Expr, Formula, Parity};
use austere_core::involutions::{sweep, SatakeLabel};
use austere_core::rational::{rat, ratio, Rational};
use austere_core::recipe::{run_recipe, AmbientData, InvolutionSource};
use austere_core::rootcore::{Root, RootSystem};
use proptest::prelude::*;

const SYSTEMS: [&str; 8] = ["A2", "A3", "B2", "C3", "BC2", "G2", "D4", "A1+B2"];

fn system_and_point() -> impl Strategy<Value = (RootSystem, Vec<Rational>)> {
    (0..SYSTEMS.len())
        .prop_flat_map(|k| {
            let rs = RootSystem::from_str_descriptor(SYSTEMS[k]).unwrap();
            let r = rs.rank();
            (Just(rs), prop::collection::vec(-6i64..=6, r))
        })
        .prop_filter("nonzero point", |(_, v)| v.iter().any(|c| *c != 0))
        .prop_map(|(rs, v)| (rs, v.into_iter().map(rat).collect()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| ratio(n, d))
}

fn transform(ms: &VectorMultiset, f: impl Fn(&[Rational]) -> Vec<Rational>) -> VectorMultiset {
    let mut out = VectorMultiset::new();
    for (k, c) in ms {
        *out.entry(f(k)).or_insert(0) += c;
    }
    out
}

/// Test-side check: a multiset is austere iff it equals its negation.
fn symmetric(ms: &VectorMultiset) -> bool {
    transform(ms, |v| v.iter().map(|x| -x).collect()) == *ms
}

fn bilinear(rs: &RootSystem, a: &[Rational], b: &[Rational]) -> Rational {
    let g = rs.gram();
    let mut s = rat(0);
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += &a[i] * &g[i][j] * &b[j];
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdict_matches_negation_symmetry((rs, v) in system_and_point()) {
        let x = BasePoint::new(&rs, v).unwrap();
        let m = MultiplicityMap::unit();
        let ms = austere_multiset(&rs, &x, &m);
        prop_assert_eq!(is_austere(&rs, &x, &m).verdict, symmetric(&ms));
    }

    #[test]
    fn scaling_maps_multiset((rs, v) in system_and_point(), c in nonzero_rational()) {
        let m = MultiplicityMap::unit();
        let x = BasePoint::new(&rs, v.clone()).unwrap();
        let y = BasePoint::new(&rs, v.iter().map(|a| a * &c).collect()).unwrap();
        let want = transform(&austere_multiset(&rs, &x, &m), |k| k.iter().map(|a| a / &c).collect());
        prop_assert_eq!(austere_multiset(&rs, &y, &m), want);
        prop_assert_eq!(is_austere(&rs, &x, &m).verdict, is_austere(&rs, &y, &m).verdict);
    }

    #[test]
    fn weyl_reflection_maps_multiset((rs, v) in system_and_point(), i in 0usize..4) {
        let i = i % rs.rank();
        let m = MultiplicityMap::unit();
        let s = Root::simple(rs.rank(), i);
        // s_i(v) = v - 2 B(v, a_i)/B(a_i, a_i) a_i, computed here from the Gram matrix
        let e: Vec<Rational> = (0..rs.rank()).map(|k| rat(i64::from(k == i))).collect();
        let reflect = |w: &[Rational]| -> Vec<Rational> {
            let f = rat(2) * bilinear(&rs, w, &e) / bilinear(&rs, &e, &e);
            w.iter().zip(&e).map(|(a, b)| a - &f * b).collect()
        };
        prop_assert_eq!(rs.reflect(&s, &v).unwrap(), reflect(&v));
        let x = BasePoint::new(&rs, v.clone()).unwrap();
        let y = BasePoint::new(&rs, reflect(&v)).unwrap();
        let want = transform(&austere_multiset(&rs, &x, &m), reflect);
        prop_assert_eq!(austere_multiset(&rs, &y, &m), want);
        prop_assert_eq!(is_austere(&rs, &x, &m).verdict, is_austere(&rs, &y, &m).verdict);
    }

    #[test]
    fn uniform_gram_rescaling((rs, v) in system_and_point(), n in 1i64..=7, d in 1i64..=7) {
        let c = ratio(n, d);
        let m = MultiplicityMap::unit();
        let scaled = rs.rescaled(&vec![c.clone(); rs.descriptor().components.len()]).unwrap();
        let x = BasePoint::new(&rs, v.clone()).unwrap();
        let xs = BasePoint::new(&scaled, v).unwrap();
        let want = transform(&austere_multiset(&rs, &x, &m), |k| k.iter().map(|a| a / &c).collect());
        prop_assert_eq!(austere_multiset(&scaled, &xs, &m), want);
    }

    #[test]
    fn austere_spectra_are_symmetric((rs, v) in system_and_point(), w in prop::collection::vec(-5i64..=5, 4)) {
        let m = MultiplicityMap::unit();
        let x = BasePoint::new(&rs, v.clone()).unwrap();
        prop_assume!(is_austere(&rs, &x, &m).verdict);
        let w: Vec<Rational> = w.into_iter().take(rs.rank()).map(rat).chain(std::iter::repeat(rat(0))).take(rs.rank()).collect();
        // project w onto the orthogonal complement of X
        let f = bilinear(&rs, &w, &v) / bilinear(&rs, &v, &v);
        let xi: Vec<Rational> = w.iter().zip(&v).map(|(a, b)| a - &f * b).collect();
        let spec = shape_spectrum(&rs, &x, &xi, &m).unwrap();
        prop_assert!(is_negation_symmetric(&spec));
    }
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..50).prop_map(Expr::Int),
        prop::sample::select(vec!["n", "m", "p", "i", "j"]).prop_map(|s| Expr::Var(s.into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Min(b(x), b(y))),
            inner.prop_map(move |x| Expr::Half(b(x))),
        ]
    })
}

fn cond() -> impl Strategy<Value = Cond> {
    prop_oneof![
        Just(Cond::True),
        (expr(), prop::sample::select(vec![CmpOp::Eq, CmpOp::Ne, CmpOp::Gt, CmpOp::Lt]), expr())
            .prop_map(|(a, op, b)| Cond::Cmp(a, op, b)),
        (prop::sample::select(vec!["n", "p"]), prop::bool::ANY)
            .prop_map(|(v, e)| Cond::Parity(v.into(), if e { Parity::Even } else { Parity::Odd })),
    ]
}

fn bindings() -> impl Strategy<Value = Bindings> {
    prop::collection::vec(-20i64..=20, 5).prop_map(|v| {
        ["n", "m", "p", "i", "j"].iter().map(|s| s.to_string()).zip(v).collect()
    })
}

/// Independent evaluator; `None` on overflow.
fn oracle(e: &Expr, b: &BTreeMap<String, i64>) -> Option<i64> {
    Some(match e {
        Expr::Int(n) => *n,
        Expr::Var(v) => b[v],
        Expr::Add(x, y) => oracle(x, b)?.checked_add(oracle(y, b)?)?,
        Expr::Sub(x, y) => oracle(x, b)?.checked_sub(oracle(y, b)?)?,
        Expr::Mul(x, y) => oracle(x, b)?.checked_mul(oracle(y, b)?)?,
        Expr::Min(x, y) => oracle(x, b)?.min(oracle(y, b)?),
        Expr::Half(x) => (oracle(x, b)? as f64 / 2.0).floor() as i64,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn expr_print_parse_round_trip(e in expr()) {
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn formula_print_parse_round_trip(c in cond(), e in expr(), pick in prop::bool::ANY) {
        let f = if pick { Formula::Cond(c) } else { Formula::Expr(e) };
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn eval_matches_oracle(e in expr(), b in bindings()) {
        match oracle(&e, &b) {
            Some(v) => prop_assert_eq!(e.eval(&b).unwrap(), v),
            None => prop_assert!(e.eval(&b).is_err()),
        }
    }
}

fn small_diagrams() -> Vec<(SatakeLabel, usize, usize)> {
    sweep(5).into_iter().filter(|&(label, _, _)| !label.is_doubled()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicity_is_symmetric(k in 0usize..1000) {
        let all = small_diagrams();
        let (label, r, l) = all[k % all.len()];
        let rs = RootSystem::build(&label.descriptor(r).unwrap()).unwrap();
        let src = InvolutionSource::Diagram { label, r, l };
        // sigma = -theta~ of the diagram, theta = -id
        let amb = AmbientData::from_sources(rs, (&src, true), (&InvolutionSource::Scalar(-1), false)).unwrap();
        let res = run_recipe(&amb).unwrap();
        prop_assert_eq!(res.split_rank, l);
        for (root, fiber) in &res.fibers {
            prop_assert_eq!(fiber.len() as u64, res.multiplicity(&root.neg()));
        }
    }
}
