use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codesign::dp::{compose, leq, tensor};
use codesign::learning::{bayes_update, Observation};
use codesign::param::cell_compose_with;
use codesign::poset::iso_classes_up_to;
use codesign::queries::{decide_with, fix_fun_min_res, fix_res_max_fun, query_cell_with, CostFn, Objective, Penalty};
use codesign::rational::{self, int, ratio};
use codesign::wiring::WiringExpr;
use codesign::{DesignProblem, Dist, Execution, FinitePoset, MonadKind, ParamCell, ParamSpace, PosetRef, Uncertain};

fn posets() -> Vec<PosetRef> {
    iso_classes_up_to(4).into_iter().filter(|p| !p.is_empty()).map(Arc::new).collect()
}

fn dp(r: &mut ChaCha8Rng, a: &PosetRef, b: &PosetRef) -> DesignProblem {
    let seeds: Vec<(usize, usize)> =
        (0..r.gen_range(0..4)).map(|_| (r.gen_range(0..a.len()), r.gen_range(0..b.len()))).collect();
    DesignProblem::from_fn(a.clone(), b.clone(), |f, q| seeds.iter().any(|&(x, y)| a.leq(f, x) && b.leq(y, q))).unwrap()
}

fn pick(r: &mut ChaCha8Rng, ps: &[PosetRef]) -> PosetRef {
    ps[r.gen_range(0..ps.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_elements_form_a_covering_antichain(seed: u64, mask: u16) {
        let r = &mut ChaCha8Rng::seed_from_u64(seed);
        let p = pick(r, &posets());
        let subset: Vec<usize> = (0..p.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mins = p.minimal_elements(&subset);
        for &a in mins.members() {
            prop_assert!(subset.contains(&a));
            for &b in mins.members() {
                prop_assert!(a == b || !p.leq(a, b));
            }
        }
        for &s in &subset {
            prop_assert!(mins.members().iter().any(|&m| p.leq(m, s)));
        }
    }

    #[test]
    fn min_res_is_the_front_of_feasible_resources(seed: u64) {
        let r = &mut ChaCha8Rng::seed_from_u64(seed);
        let ps = posets();
        let (a, b) = (pick(r, &ps), pick(r, &ps));
        let d = dp(r, &a, &b);
        for f in 0..a.len() {
            let front = fix_fun_min_res(&d, f).unwrap();
            for q in 0..b.len() {
                let dominated = front.members().iter().any(|&m| b.leq(m, q));
                prop_assert_eq!(d.get(f, q), dominated);
            }
        }
        for q in 0..b.len() {
            let front = fix_res_max_fun(&d, q).unwrap();
            for f in 0..a.len() {
                prop_assert_eq!(d.get(f, q), front.members().iter().any(|&m| a.leq(f, m)));
            }
        }
    }

    #[test]
    fn composition_and_tensor_are_monotone_in_the_hom_order(seed: u64) {
        let r = &mut ChaCha8Rng::seed_from_u64(seed);
        let ps = posets();
        let (a, b, c) = (pick(r, &ps), pick(r, &ps), pick(r, &ps));
        let d1 = dp(r, &a, &b);
        let d2 = dp(r, &b, &c);
        let extra = dp(r, &a, &b);
        let bigger = DesignProblem::from_fn(a.clone(), b.clone(), |f, q| d1.get(f, q) || extra.get(f, q)).unwrap();
        prop_assert!(leq(&d1, &bigger).unwrap());
        prop_assert!(leq(&compose(&d1, &d2).unwrap(), &compose(&bigger, &d2).unwrap()).unwrap());
        prop_assert!(leq(&tensor(&d1, &d2), &tensor(&bigger, &d2)).unwrap());
    }

    #[test]
    fn execution_strategy_does_not_change_results(seed: u64) {
        let r = &mut ChaCha8Rng::seed_from_u64(seed);
        let ps = posets();
        let (a, b, c) = (pick(r, &ps), pick(r, &ps), pick(r, &ps));
        let space = ParamSpace::new([Arc::new(FinitePoset::chain(3))]);
        let cell = |r: &mut ChaCha8Rng, x: &PosetRef, y: &PosetRef| {
            let entries = (0..3)
                .map(|_| Uncertain::Dist(Dist::normalized([(dp(r, x, y), int(1)), (dp(r, x, y), int(2))]).unwrap()))
                .collect();
            ParamCell::new(x.clone(), y.clone(), space.clone(), MonadKind::Dist, entries).unwrap()
        };
        let (c1, c2) = (cell(r, &a, &b), cell(r, &b, &c));
        let seq = cell_compose_with(Execution::Sequential, &c1, &c2).unwrap();
        prop_assert_eq!(&seq, &cell_compose_with(Execution::default(), &c1, &c2).unwrap());
        prop_assert_eq!(
            query_cell_with(Execution::Sequential, &seq, 0).unwrap(),
            query_cell_with(Execution::default(), &seq, 0).unwrap()
        );
        let cost = CostFn::new(c.clone(), (0..c.len()).map(|i| int(i as i64)).collect());
        if let Ok(cost) = cost {
            let pen = Penalty::Finite(int(100));
            prop_assert_eq!(
                decide_with(Execution::Sequential, &seq, 0, Objective::Expected, &cost, &pen).unwrap(),
                decide_with(Execution::default(), &seq, 0, Objective::Expected, &cost, &pen).unwrap()
            );
        }
    }

    #[test]
    fn posterior_ignores_observation_order(seed: u64) {
        let r = &mut ChaCha8Rng::seed_from_u64(seed);
        let a = Arc::new(FinitePoset::chain(2));
        let b = Arc::new(FinitePoset::chain(3));
        let kernels: Vec<Dist<DesignProblem>> = (0..3)
            .map(|_| Dist::normalized([(dp(r, &a, &b), int(1)), (dp(r, &a, &b), int(3))]).unwrap())
            .collect();
        let mut obs: Vec<Observation> = (0..4)
            .map(|_| Observation::new(r.gen_range(0..2), r.gen_range(0..3), r.gen_bool(0.5)))
            .collect();
        let prior = Dist::uniform(0..3usize).unwrap();
        let kernel = |h: &usize| Ok(kernels[*h].clone());
        let forward = bayes_update(&prior, kernel, &obs);
        obs.reverse();
        let backward = bayes_update(&prior, kernel, &obs);
        prop_assert_eq!(forward.ok(), backward.ok());
    }

    #[test]
    fn rationals_round_trip_through_json(n in -1000i64..1000, d in 1i64..1000) {
        let q = ratio(n, d);
        prop_assert_eq!(rational::from_json(&rational::to_json(&q)).unwrap(), q);
    }

    #[test]
    fn wiring_expressions_round_trip_through_json(seed: u64) {
        fn gen(r: &mut ChaCha8Rng, depth: usize) -> WiringExpr {
            let name = |r: &mut ChaCha8Rng| format!("n{}", r.gen_range(0..5));
            match if depth == 0 { r.gen_range(0..3) } else { r.gen_range(0..7) } {
                0 => WiringExpr::Prim(name(r)),
                1 => WiringExpr::Id(name(r)),
                2 => WiringExpr::Lift(name(r)),
                3 => WiringExpr::Compose(Box::new(gen(r, depth - 1)), Box::new(gen(r, depth - 1))),
                4 => WiringExpr::Tensor(Box::new(gen(r, depth - 1)), Box::new(gen(r, depth - 1))),
                5 => WiringExpr::Loop(Box::new(gen(r, depth - 1)), name(r)),
                _ => WiringExpr::Reparam(name(r), Box::new(gen(r, depth - 1))),
            }
        }
        let e = gen(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        prop_assert_eq!(WiringExpr::from_json(&e.to_json()).unwrap(), e);
    }
}
