//! Randomized law checks: ordinal arithmetic over arbitrary small CNF
//! values and serialization round-trips over generated set shapes.

use proptest::prelude::*;

use tuniv_core::ordinal::Ordinal;
use tuniv_core::system::{NodeId, SetSystem};

fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
    // up to three CNF terms with exponents below 4
    prop::collection::vec((0u32..4, 1u32..5), 0..=3).prop_map(|mut raw| {
        raw.sort_by(|a, b| b.0.cmp(&a.0));
        raw.dedup_by_key(|t| t.0);
        Ordinal::from_terms(raw).unwrap()
    })
}

proptest! {
    #[test]
    fn ordinal_addition_is_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn ordinal_addition_right_monotone(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        if b < c {
            prop_assert!(a.add(&b) < a.add(&c));
        }
    }

    #[test]
    fn ordinal_text_round_trips(a in arb_ordinal()) {
        prop_assert_eq!(Ordinal::parse(&a.to_string()).unwrap(), a);
    }
}

/// Shape of a set to build: plain braces, or a constructor over
/// well-founded arguments.
#[derive(Debug, Clone)]
enum Shape {
    Empty,
    Brace(Vec<Shape>),
    Inf(Box<Shape>),
    Semi(Box<Shape>, Box<Shape>),
}

fn arb_wf_shape() -> impl Strategy<Value = Shape> {
    let leaf = Just(Shape::Empty);
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop::collection::vec(inner, 0..3).prop_map(Shape::Brace)
    })
}

fn arb_shape() -> impl Strategy<Value = Shape> {
    prop_oneof![
        arb_wf_shape(),
        arb_wf_shape().prop_map(|b| Shape::Inf(Box::new(b))),
        (arb_wf_shape(), arb_wf_shape())
            .prop_map(|(g, b)| Shape::Semi(Box::new(g), Box::new(b))),
        (arb_wf_shape(), prop::collection::vec(arb_shape_wf_or_cyclic(), 1..3))
            .prop_map(|(b, ms)| {
                let mut items = ms;
                items.push(Shape::Inf(Box::new(b)));
                Shape::Brace(items)
            }),
    ]
}

fn arb_shape_wf_or_cyclic() -> impl Strategy<Value = Shape> {
    prop_oneof![
        arb_wf_shape(),
        arb_wf_shape().prop_map(|b| Shape::Inf(Box::new(b))),
    ]
}

fn build(sys: &mut SetSystem, shape: &Shape) -> NodeId {
    match shape {
        Shape::Empty => sys.empty_set(),
        Shape::Brace(items) => {
            let ids: Vec<NodeId> = items.iter().map(|s| build(sys, s)).collect();
            sys.mk_from_ids(ids)
        }
        Shape::Inf(b) => {
            let base = build(sys, b);
            sys.infiniton(base).unwrap()
        }
        Shape::Semi(g, b) => {
            let gen = build(sys, g);
            let base = build(sys, b);
            sys.semi_infiniton(gen, base).unwrap()
        }
    }
}

proptest! {
    #[test]
    fn serialization_round_trips(shape in arb_shape()) {
        let mut sys = SetSystem::new();
        let id = build(&mut sys, &shape);
        let text = sys.serialize(id);
        let back = sys.deserialize(&text).unwrap();
        prop_assert_eq!(back, id);
        // and in a fresh system the text parses to the same canonical text
        let mut fresh = SetSystem::new();
        let re = fresh.deserialize(&text).unwrap();
        prop_assert_eq!(fresh.serialize(re), text);
    }

    #[test]
    fn rank_and_dimension_never_panic(shape in arb_shape()) {
        let mut sys = SetSystem::new();
        let id = build(&mut sys, &shape);
        let _ = sys.rank_t(id);
        let _ = sys.dimension(id);
        let _ = sys.classify(id);
        prop_assert_eq!(sys.validate_canonical(), Ok(()));
    }
}
