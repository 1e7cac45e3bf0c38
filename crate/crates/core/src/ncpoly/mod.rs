//! Noncommutative polynomials with normal forms under a degree-graded
//! rewriting system.

mod algebra;
mod poly;
mod word;

pub use algebra::{Algebra, CriticalPair, DegreeBasis, HilbertReport, HilbertSeries, Rule, REWRITE_BUDGET};
pub use poly::NcPoly;
pub use word::Word;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Cyclotomic, Error, Rational, Scalar};
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn quantum_plane(rel: &str) -> Algebra<Cyclotomic> {
        Algebra::parse_relations(
            names(&["x", "y"]),
            vec![1, 1],
            &[rel],
            Some(HilbertSeries::polynomial_ring(&[1, 1])),
        )
        .unwrap()
    }

    fn cubic() -> Algebra<Rational> {
        Algebra::parse_relations(
            names(&["x", "y"]),
            vec![1, 1],
            &["y^2*x - x*y^2", "y*x^2 + x^2*y"],
            Some(HilbertSeries { numerator: vec![1], denominator: vec![1, 1, 2] }),
        )
        .unwrap()
    }

    fn commutative(n: usize) -> Algebra<Rational> {
        let ns: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let mut rels = Vec::new();
        for j in 0..n {
            for i in 0..j {
                rels.push(format!("{}*{} = {}*{}", ns[j], ns[i], ns[i], ns[j]));
            }
        }
        Algebra::parse_relations(ns, vec![1; n], &rels, Some(HilbertSeries::polynomial_ring(&vec![1; n]))).unwrap()
    }

    #[test]
    fn quantum_plane_normal_form_of_yx() {
        let a = quantum_plane("y*x = zeta(4,1)*x*y");
        let p = a.parse("y*x").unwrap();
        assert_eq!(a.render(&p), "i*x*y");
        let q = a.parse("x*y").unwrap();
        assert_eq!(a.render(&q), "x*y");
    }

    #[test]
    fn empty_power_is_one() {
        let a = quantum_plane("y*x = -x*y");
        assert_eq!(a.parse("x^0").unwrap(), NcPoly::one());
    }

    #[test]
    fn binomial_in_commutative_ring() {
        let a = commutative(2);
        assert_eq!(a.render(&a.parse("(x1+x2)^2").unwrap()), "x1^2 + 2*x1*x2 + x2^2");
        assert_eq!(a.render(&a.parse("(x1+x2)*(x1-x2)").unwrap()), "x1^2 - x2^2");
    }

    #[test]
    fn literal_rewriter_on_paper_examples() {
        let a = quantum_plane("y*x = -x*y");
        let yx = NcPoly::word(Word(vec![1, 0]));
        assert_eq!(a.render(&a.normal_form(&yx).unwrap()), "-x*y");
        let c = cubic();
        let yyx = NcPoly::word(Word(vec![1, 1, 0]));
        assert_eq!(c.render(&c.normal_form(&yyx).unwrap()), "x*y^2");
        let xyy = NcPoly::word(Word(vec![0, 1, 1]));
        assert_eq!(c.normal_form(&xyy).unwrap(), xyy);
    }

    #[test]
    fn relation_soundness() {
        for alg in [cubic()] {
            for r in alg.rules() {
                let lhs = NcPoly::word(r.lhs.clone());
                assert_eq!(alg.normal_form(&lhs).unwrap(), r.rhs);
                assert_eq!(alg.reduce(&lhs), r.rhs);
            }
        }
    }

    #[test]
    fn skew_products_use_the_relation_scalar() {
        let a = quantum_plane("y*x = zeta(4,1)*x*y");
        let x = a.generator(0);
        let y = a.generator(1);
        assert_eq!(a.render(&a.mul(&x, &y)), "x*y");
        assert_eq!(a.render(&a.mul(&y, &x)), "i*x*y");
        assert_eq!(a.parse("i*x*y").unwrap(), a.mul(&y, &x));
        let p = NcPoly::constant(Cyclotomic::zeta(4, 1));
        assert_eq!(a.mul(&p, &NcPoly::one()), p);
    }

    #[test]
    fn confluence_reports() {
        assert!(quantum_plane("y*x = -x*y").check_local_confluence(8).is_empty());
        assert!(cubic().check_local_confluence(6).is_empty());
        assert!(cubic().check_local_confluence(8).is_empty());
        let yx = Word(vec![1, 0]);
        let xy = Word(vec![0, 1]);
        let broken = Algebra::<Rational>::from_rules(
            names(&["x", "y"]),
            vec![1, 1],
            vec![
                Rule { lhs: yx.clone(), rhs: NcPoly::word(xy.clone()) },
                Rule { lhs: yx, rhs: NcPoly::term(xy, Rational::from_i64(2)) },
            ],
            None,
        )
        .unwrap();
        assert_eq!(broken.check_local_confluence(4).len(), 1);
    }

    #[test]
    fn monomial_bases() {
        let a = quantum_plane("y*x = -x*y");
        assert_eq!(a.render_words(2), vec!["x^2", "x*y", "y^2"]);
        assert_eq!(a.monomial_basis(0), vec![Word::empty()]);
        // 1/((1-t)^2 (1-t^2)) has t^3 coefficient 6
        assert_eq!(cubic().monomial_basis(3).len(), 6);
    }

    #[test]
    fn hilbert_series_checks() {
        let q = quantum_plane("y*x = -x*y").hilbert_check(8).unwrap();
        assert_eq!(q.first_mismatch, None);
        let c = cubic().hilbert_check(10).unwrap();
        assert_eq!(c.first_mismatch, None);
        assert_eq!(c.rows[3], (3, 6, 6));
        assert_eq!(commutative(3).hilbert_check(6).unwrap().first_mismatch, None);
    }

    #[test]
    fn hilbert_series_division() {
        let a = HilbertSeries { numerator: vec![1], denominator: vec![1, 1, 2] };
        let r = HilbertSeries::polynomial_ring(&[4, 2, 4]);
        // (1-t^4)^2 (1-t^2) / ((1-t)^2 (1-t^2)) = (1+t+t^2+t^3)^2
        assert_eq!(a.divide(&r).unwrap(), vec![1, 2, 3, 4, 3, 2, 1]);
        assert!(a.divide(&HilbertSeries::polynomial_ring(&[1, 3])).is_none());
        assert_eq!(a.to_string(), "1/((1-t)^2*(1-t^2))");
    }

    #[test]
    fn parse_errors() {
        let a = cubic();
        assert_eq!(a.parse("z"), Err(Error::UnknownIdentifier("z".into())));
        assert_eq!(a.parse("xy"), Err(Error::UnknownIdentifier("xy".into())));
        assert_eq!(a.parse("x^-1"), Err(Error::NegativeExponent(2)));
        assert!(matches!(a.parse("x*"), Err(Error::Syntax { pos: 2, .. })));
        assert!(a.parse("zeta(4,1)*x").is_err(), "ℚ has no fourth root of unity");
    }

    #[test]
    fn rejects_increasing_rules() {
        let r = Algebra::<Rational>::from_rules(
            names(&["x", "y"]),
            vec![1, 1],
            vec![Rule { lhs: Word(vec![0, 1]), rhs: NcPoly::word(Word(vec![1, 0])) }],
            None,
        );
        assert!(matches!(r, Err(Error::InvalidPresentation(_))));
        let inhom = Algebra::<Rational>::parse_relations(names(&["x", "y"]), vec![1, 1], &["y*x = x"], None);
        assert!(matches!(inhom, Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn budget_guard_names_the_word() {
        let c = cubic();
        let w = NcPoly::word(Word(vec![1, 1, 0, 0]));
        assert!(matches!(c.normal_form_with_budget(&w, 1), Err(Error::RewriteBudget { .. })));
    }

    fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..2, 0..=max_len).prop_map(Word)
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<(Word, i64)>> {
        prop::collection::vec((word_strategy(4), -3i64..4), 1..4)
    }

    fn build(alg: &Algebra<Rational>, terms: &[(Word, i64)]) -> NcPoly<Rational> {
        alg.reduce(&NcPoly::from_terms(terms.iter().map(|(w, c)| (w.clone(), Rational::from_i64(*c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cubic_multiplication_is_associative(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
            let a = cubic();
            let (p, q, r) = (build(&a, &p), build(&a, &q), build(&a, &r));
            prop_assert_eq!(a.mul(&a.mul(&p, &q), &r), a.mul(&p, &a.mul(&q, &r)));
        }

        #[test]
        fn reduction_agrees_with_leftmost_rewriting(w in word_strategy(8)) {
            let a = cubic();
            let p = NcPoly::word(w);
            prop_assert_eq!(a.reduce(&p), a.normal_form(&p).unwrap());
        }

        #[test]
        fn normal_form_is_idempotent_and_graded(w in word_strategy(7)) {
            let a = cubic();
            let n = a.normal_form(&NcPoly::word(w.clone())).unwrap();
            prop_assert_eq!(a.normal_form(&n).unwrap(), n.clone());
            for (v, _) in n.terms() {
                prop_assert_eq!(v.len(), w.len());
                prop_assert!(a.is_normal_word(v));
            }
        }

        #[test]
        fn fast_path_matches_rewriting(u in 0usize..28, v in 0usize..28) {
            let a = quantum_plane("y*x = zeta(6,1)*x*y");
            let words: Vec<Word> = (0..=6).flat_map(|d| a.monomial_basis(d)).collect();
            let (u, v) = (&words[u], &words[v]);
            let fast = a.mul_words(u, v);
            a.set_fast_path(false);
            let slow = a.mul_words(u, v);
            a.set_fast_path(true);
            prop_assert_eq!(fast, slow.clone());
            prop_assert_eq!(slow, a.normal_form(&NcPoly::word(u.concat(v))).unwrap());
        }
    }
}
