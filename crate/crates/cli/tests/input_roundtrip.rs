use std::collections::BTreeMap;

use proptest::prelude::*;

use schouten_cli::input::{InputDocument, MetricSpec};
use schouten_core::scalar::FieldScalar;

fn value(field: u64) -> impl Strategy<Value = FieldScalar> {
    (-20i64..=20, 1i64..=7, -5i64..=5, 1i64..=3).prop_map(move |(p, q, r, s)| {
        let rational = FieldScalar::from_ratio(p, q);
        if field == 1 {
            return rational;
        }
        let radical = &FieldScalar::from_ratio(r, s) * &FieldScalar::sqrt_of(field).unwrap();
        &rational + &radical
    })
}

fn document() -> impl Strategy<Value = InputDocument> {
    (3usize..=5, prop_oneof![Just(1u64), Just(2), Just(3), Just(5)]).prop_flat_map(|(dim, field)| {
        let pairs: Vec<(usize, usize, usize)> = (1..=dim)
            .flat_map(|i| (i + 1..=dim).flat_map(move |j| (1..=dim).map(move |k| (i, j, k))))
            .collect();
        let constants = proptest::collection::btree_map(proptest::sample::select(pairs), value(field), 0..6);
        let diag = proptest::collection::vec(value(field), dim);
        let rows = proptest::collection::vec(proptest::collection::vec(value(field), dim), dim);
        let metric = prop_oneof![diag.prop_map(MetricSpec::Diagonal), rows.prop_map(MetricSpec::Rows)];
        let bindings = proptest::collection::btree_map(
            proptest::sample::select(vec!["a", "delta", "eps1", "eps2", "eps3", "eps4"]),
            value(1),
            0..3,
        )
        .prop_map(|m| m.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>());
        (Just(dim), Just(field), metric, constants, bindings).prop_map(|(dim, field_sqrt, metric, constants, bindings)| {
            InputDocument { dim, field_sqrt, metric, constants, bindings }
        })
    })
}

proptest! {
    #[test]
    fn parse_inverts_render(doc in document()) {
        let text = doc.render();
        prop_assert_eq!(InputDocument::parse(&text).unwrap(), doc);
    }

    #[test]
    fn repeated_constant_is_rejected(doc in document(), extra in value(1)) {
        prop_assume!(!doc.constants.is_empty());
        let (&(i, j, k), _) = doc.constants.iter().next().unwrap();
        let text = format!("{}C {i} {j} {k} = {extra}\n", doc.render());
        let e = InputDocument::parse(&text).unwrap_err();
        prop_assert!(e.message.contains("duplicate assignment"));
    }
}
