use num_bigint::BigInt;
use numinv::domains::{AbstractElement, Domain};
use numinv::frontend::{parse_formula, print_smt2};
use numinv::model::{Formula, LinearConstraint, Rel, State};
use proptest::prelude::*;

fn points(n: usize) -> impl Strategy<Value = Vec<State>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, n), 1..5)
        .prop_map(|ps| ps.iter().map(|p| State::from_i64(p)).collect())
}

fn hull(ps: &[State], d: Domain) -> AbstractElement {
    let mut e = AbstractElement::singleton(&ps[0], d);
    for p in &ps[1..] {
        e = e.join(&AbstractElement::singleton(p, d)).unwrap();
    }
    e
}

fn domain() -> impl Strategy<Value = Domain> {
    prop::sample::select(Domain::ALL.to_vec())
}

fn formula(n: usize) -> impl Strategy<Value = Formula> {
    let atom = (prop::collection::vec(-3i64..=3, n), -5i64..=5, any::<bool>()).prop_map(|(a, b, eq)| {
        let rel = if eq { Rel::Eq } else { Rel::Le };
        LinearConstraint::new(a.into_iter().map(BigInt::from).collect(), rel, BigInt::from(b)).into_formula()
    });
    atom.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(Formula::and),
            prop::collection::vec(inner.clone(), 1..3).prop_map(Formula::or),
            inner.prop_map(Formula::negate),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn join_is_an_upper_bound(d in domain(), a in points(3), b in points(3)) {
        let (x, y) = (hull(&a, d), hull(&b, d));
        let j = x.join(&y).unwrap();
        prop_assert!(x.leq(&j).unwrap() && y.leq(&j).unwrap());
        prop_assert_eq!(&j, &y.join(&x).unwrap());
        for p in a.iter().chain(&b) {
            prop_assert!(j.member(p).unwrap());
            prop_assert!(j.contains(p.values()));
        }
    }

    #[test]
    fn constraints_describe_the_element(d in domain(), a in points(2), q in prop::collection::vec(-8i64..=8, 2)) {
        let e = hull(&a, d);
        let q = State::from_i64(&q);
        let by_constraints = e.constraints().iter().all(|c| c.holds(q.values()));
        prop_assert_eq!(by_constraints, e.member(&q).unwrap());
        let f = Formula::and(e.constraints().into_iter().map(Formula::atom).collect());
        prop_assert_eq!(AbstractElement::from_conjunction(&f, 2, d), Some(e));
    }

    #[test]
    fn printed_formulas_parse_back(f in formula(2), x in -6i64..=6, y in -6i64..=6) {
        let names = vec!["x".to_string(), "y".to_string()];
        let g = parse_formula(&print_smt2(&f, &names), &names).unwrap();
        let v = [BigInt::from(x), BigInt::from(y)];
        prop_assert_eq!(f.eval(&v).unwrap(), g.eval(&v).unwrap());
        prop_assert_eq!(Formula::negate(f.clone()).eval(&v).unwrap(), !f.eval(&v).unwrap());
    }
}
