use proptest::prelude::*;

use homcob::catalog::lookup;
use homcob::cobordism::{formal_group_law, multi_bracket, power_system, BasisMap, Direction};
use homcob::exactalg::divdiff::{divided_difference_l, perm_sign, permute_vars};
use homcob::exactalg::{q, MultiPoly, Ring};
use homcob::hirzebruch::{chi_y, generic_ordering};
use homcob::rootdata::Ordering;
use homcob::structures::{enumerate_structures, Structure};

fn poly(ring: &Ring, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let n = ring.len();
    let ring = ring.clone();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -9i64..=9), 0..=max_terms)
        .prop_map(move |t| MultiPoly::from_terms(&ring, t.into_iter().map(|(e, c)| (e, q(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn log_turns_brackets_into_multiples(n in -5i64..=5) {
        let fgl = formal_group_law(4).unwrap();
        let lhs = fgl.log_of(&power_system(n, &fgl));
        prop_assert_eq!(lhs.body(), &fgl.log.body().scale(&q(n)));
    }

    #[test]
    fn bracket_is_additive(m in -3i64..=3, n in -3i64..=3) {
        let fgl = formal_group_law(4).unwrap();
        let sum = fgl.add(&power_system(m, &fgl), &power_system(n, &fgl));
        let direct = power_system(m + n, &fgl);
        prop_assert_eq!(sum.body(), direct.body());
        let two = multi_bracket(&[m, n], &fgl).unwrap();
        let back = multi_bracket(&[n, m], &fgl).unwrap();
        let swap: Vec<Option<MultiPoly>> = (0..fgl.ring.len())
            .map(|i| match i {
                0 => Some(MultiPoly::var(&fgl.ring, 1)),
                1 => Some(MultiPoly::var(&fgl.ring, 0)),
                _ => None,
            })
            .collect();
        prop_assert_eq!(two.body().substitute(&swap), back.body().clone());
    }

    #[test]
    fn basis_round_trip(p in poly(&Ring::from_names(&Ring::block("a", 4)), 2, 5)) {
        let m = BasisMap::new(4).unwrap();
        let p = MultiPoly::from_terms(p.ring(), p.terms().filter(|(e, _)| p.weighted_degree_of(e) <= 4).map(|(e, c)| (e.clone(), c.clone())));
        let b = m.convert(&p, Direction::AToB).unwrap();
        prop_assert_eq!(m.convert(&b, Direction::BToA).unwrap(), p);
    }

    #[test]
    fn exact_divide_round_trip(
        p in poly(&Ring::from_names(&Ring::block("x", 3)), 3, 6),
        d in poly(&Ring::from_names(&Ring::block("x", 3)), 2, 3),
    ) {
        prop_assume!(!d.is_zero());
        let prod = &p * &d;
        prop_assert_eq!(prod.exact_divide(&d).unwrap(), p);
    }

    #[test]
    fn l_is_antisymmetric(p in poly(&Ring::from_names(&Ring::block("x", 3)), 4, 5), t in 0usize..3) {
        let vars = [0, 1, 2];
        let sigma: Vec<usize> = match t {
            0 => vec![1, 0, 2],
            1 => vec![0, 2, 1],
            _ => vec![2, 0, 1],
        };
        let lp = divided_difference_l(&p, &vars).unwrap();
        let ls = divided_difference_l(&permute_vars(&p, &vars, &sigma), &vars).unwrap();
        prop_assert_eq!(ls, lp.scale(&q(perm_sign(&sigma) as i64)));
    }

    #[test]
    fn chi_y_ignores_the_ordering(k in 0usize..64, v in prop::collection::vec(-50i64..=50, 4)) {
        let s = lookup("U4-flag").unwrap().space().unwrap();
        let ord = Ordering::new(v.iter().map(|&x| q(x)).collect());
        prop_assume!(ord.check_generic(&s.g.roots).is_ok());
        let st = Structure::Invariant(enumerate_structures(&s).unwrap()[k].clone());
        let a = chi_y(&s, &st, &ord).unwrap();
        prop_assert_eq!(&a, &chi_y(&s, &st, &generic_ordering(&s)).unwrap());
        prop_assert_eq!(a.eval(&q(-1)), q(s.euler as i64));
    }
}
