use ncdisc::{CommPoly, Cyclotomic, Rational, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn element() -> impl Strategy<Value = Cyclotomic> {
    (1u32..=24, prop::collection::vec((-6i64..=6, 1i64..=4), 1..8)).prop_map(|(m, cs)| {
        let poly = cs.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect();
        Cyclotomic::from_poly(m, poly)
    })
}

fn parse(text: &str) -> Cyclotomic {
    let no_vars: [&str; 0] = [];
    CommPoly::<Cyclotomic>::parse(text, &no_vars).unwrap().as_constant().unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert_eq!(a.clone() - &a, Cyclotomic::zero());
    }

    #[test]
    fn inverses(a in element()) {
        match a.inv() {
            Some(x) => prop_assert_eq!(a * &x, Cyclotomic::one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn display_parses_back(a in element()) {
        prop_assert_eq!(parse(&a.to_string()), a);
    }

    #[test]
    fn roots_of_unity_have_their_order(m in 1u32..=24, k in -30i64..30) {
        let z = Cyclotomic::zeta(m, k);
        let mut p = Cyclotomic::one();
        for _ in 0..m {
            p = p * &z;
        }
        prop_assert_eq!(p, Cyclotomic::one());
    }
}

#[test]
fn mixed_orders_embed() {
    let i = Cyclotomic::zeta(4, 1);
    let w = Cyclotomic::zeta(3, 1);
    assert_eq!(i.clone() * &i, Cyclotomic::integer(-1));
    assert_eq!((i * &w).order(), 12);
    assert_eq!(parse("i^2"), Cyclotomic::integer(-1));
    assert_eq!(Cyclotomic::zeta(4, 1).to_string(), "i");
}

#[test]
fn rationals_have_no_roots() {
    assert!(Rational::root_of_unity(4, 1).is_none());
    assert_eq!(Rational::root_of_unity(2, 1), Some(-Rational::one()));
}
