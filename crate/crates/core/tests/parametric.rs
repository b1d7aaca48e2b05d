mod common;

use hubpaths::oracle::{min_ratio_brute, min_ratio_brute_exact};
use hubpaths::parametric::{
    evaluate_lambda, evaluate_lambda_exact, min_mean_cycle, min_mean_cycle_karp, min_ratio_binary_search,
    min_ratio_parametric, min_ratio_parametric_with, Arithmetic, Evaluation, ExactEvaluation, Rational,
    TimedDigraph,
};
use hubpaths::Digraph;
use proptest::prelude::*;

fn int_times(tg: &TimedDigraph) -> Vec<i64> {
    tg.times.iter().map(|&t| t as i64).collect()
}

fn check_prices(tg: &TimedDigraph, lambda: f64, p: &[f64]) -> Result<(), TestCaseError> {
    for (e, edge) in tg.base.edges().iter().enumerate() {
        let r = edge.weight - lambda * tg.times[e] + p[edge.from] - p[edge.to];
        prop_assert!(r >= -1e-9, "edge {} reduced {}", e, r);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn exact_path_matches_enumeration(tg in common::timed_digraph(10)) {
        let brute = min_ratio_brute_exact(&tg.base, &int_times(&tg)).unwrap().unwrap();
        let ans = min_ratio_parametric(&tg).unwrap();
        prop_assert_eq!(ans.exact, Some(brute));
        prop_assert_eq!(tg.exact_ratio(&ans.witness).unwrap(), brute);
        prop_assert!(ans.witness.is_closed() && ans.witness.is_simple());
        let cert = ans.exact_certificate.unwrap();
        for (e, edge) in tg.base.edges().iter().enumerate() {
            let w = Rational::from_integer(edge.weight as i128);
            let t = Rational::from_integer(tg.times[e] as i128);
            prop_assert!(w - brute * t + cert[edge.from] - cert[edge.to] >= Rational::from_integer(0));
        }
    }

    #[test]
    fn float_path_matches_enumeration(tg in common::timed_digraph(10)) {
        let brute = min_ratio_brute(&tg.base, &tg.times).unwrap().unwrap();
        let ans = min_ratio_parametric_with(&tg, Arithmetic::Float).unwrap();
        prop_assert!(ans.exact.is_none());
        prop_assert!((ans.lambda_star - brute).abs() <= 1e-9, "{} vs {}", ans.lambda_star, brute);
        prop_assert!((tg.ratio(&ans.witness) - ans.lambda_star).abs() <= 1e-9);
        check_prices(&tg, ans.lambda_star, &ans.certificate)?;
    }

    #[test]
    fn karp_agrees_under_unit_times(tg in common::timed_digraph(10)) {
        let g = &tg.base;
        let unit = TimedDigraph::unit(g.clone());
        let brute = min_ratio_brute_exact(g, &int_times(&unit)).unwrap().unwrap();
        let (mu, cycle) = min_mean_cycle_karp(g).unwrap();
        let ans = min_mean_cycle(g).unwrap();
        prop_assert_eq!(ans.exact, Some(brute));
        prop_assert!((mu - ans.lambda_star).abs() <= 1e-9);
        prop_assert!((cycle.length / cycle.hops() as f64 - mu).abs() <= 1e-9);
    }

    #[test]
    fn bisection_brackets_contain_the_optimum(tg in common::timed_digraph(10), iters in 1usize..40) {
        let brute = min_ratio_brute_exact(&tg.base, &int_times(&tg)).unwrap().unwrap();
        let iv = min_ratio_binary_search(&tg, iters).unwrap();
        let exact = iv.exact_history.unwrap();
        prop_assert_eq!(exact.len(), iters + 1);
        for w in exact.windows(2) {
            prop_assert!(w[0].0 <= w[1].0 && w[1].1 <= w[0].1);
        }
        for (lo, hi) in &exact {
            prop_assert!(*lo <= brute && brute <= *hi);
        }
        let ans = min_ratio_parametric(&tg).unwrap();
        prop_assert!(iv.lo <= ans.lambda_star && ans.lambda_star <= iv.hi);
    }

    #[test]
    fn feasibility_is_monotone_in_lambda(tg in common::timed_digraph(9), k in -12i64..30) {
        let brute = min_ratio_brute_exact(&tg.base, &int_times(&tg)).unwrap().unwrap();
        let lambda = Rational::new(k as i128, 3);
        match evaluate_lambda_exact(&tg, lambda).unwrap() {
            ExactEvaluation::Feasible(p) => {
                prop_assert!(lambda <= brute);
                for (e, edge) in tg.base.edges().iter().enumerate() {
                    let r = Rational::from_integer(edge.weight as i128)
                        - lambda * Rational::from_integer(tg.times[e] as i128)
                        + p[edge.from] - p[edge.to];
                    prop_assert!(r >= Rational::from_integer(0));
                }
            }
            ExactEvaluation::Infeasible { edges, reduced_weight } => {
                prop_assert!(lambda > brute);
                prop_assert!(reduced_weight < Rational::from_integer(0));
                prop_assert!(!edges.is_empty());
            }
        }
        match evaluate_lambda(&tg, k as f64 / 3.0) {
            Evaluation::Feasible(p) => check_prices(&tg, k as f64 / 3.0, &p)?,
            Evaluation::Infeasible(c) => prop_assert!(c.weight() < 0.0),
        }
    }

    #[test]
    fn ratio_scales_with_weights(tg in common::timed_digraph(8), a in 1i64..5, b in -4i64..5) {
        // w -> a w + b t maps every cycle ratio r to a r + b
        let base = tg.base.edges().iter().zip(&tg.times)
            .map(|(e, &t)| (e.from, e.to, a as f64 * e.weight + b as f64 * t))
            .collect::<Vec<_>>();
        let scaled = TimedDigraph::new(Digraph::new(tg.base.n(), &base).unwrap(), tg.times.clone()).unwrap();
        let r = min_ratio_parametric(&tg).unwrap().exact.unwrap();
        let s = min_ratio_parametric(&scaled).unwrap().exact.unwrap();
        prop_assert_eq!(s, r * Rational::from_integer(a as i128) + Rational::from_integer(b as i128));
    }
}

#[test]
fn triangle_example() {
    let g = Digraph::new(3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 0, 3.0)]).unwrap();
    let ans = min_mean_cycle(&g).unwrap();
    assert_eq!(ans.exact, Some(Rational::from_integer(2)));
    assert_eq!(ans.witness.hops(), 3);
}

#[test]
fn acyclic_input_has_no_ratio() {
    let g = Digraph::new(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
    assert!(min_mean_cycle(&g).is_err());
    assert!(min_mean_cycle_karp(&g).is_err());
    assert!(min_ratio_binary_search(&TimedDigraph::unit(g), 10).is_err());
}
