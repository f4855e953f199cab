//! Randomized invariants of the public selection API.

use proptest::prelude::*;

use srake::channel::gen_scenario;
use srake::selectors::binomial;
use srake::{
    build_signature, conventional_select, exhaustive_select, ga_select, Assignment, GaParams,
    Objective, SystemConfig,
};

fn config(users: usize, paths: usize, fingers: usize) -> SystemConfig {
    SystemConfig {
        users,
        paths,
        fingers,
        chips_per_frame: paths + 8,
        th_alphabet: 8,
        energies: vec![1.0; users],
        noise_var: 0.1,
        decay: 0.1,
        log_var: 0.5,
    }
}

/// (users, paths, fingers, master_seed, realization) with fingers < paths so
/// every selector has real choices to make.
fn geometry() -> impl Strategy<Value = (usize, usize, usize, u64, u64)> {
    (1usize..5, 5usize..=10).prop_flat_map(|(users, paths)| {
        (Just(users), Just(paths), 1usize..paths, any::<u64>(), 0u64..1000)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn selectors_return_valid_assignments((users, paths, fingers, seed, real) in geometry()) {
        let cfg = config(users, paths, fingers);
        let scen = gen_scenario(&cfg, seed, real);
        let sig = build_signature(&cfg, &scen);
        let obj = Objective::new(&sig, &cfg.energies, cfg.noise_var);

        let conv = conventional_select(&obj, fingers);
        let exh = exhaustive_select(&obj, fingers, 1_000_000).unwrap();
        let ga_params = GaParams {
            initial_population: 4,
            population: 4,
            parents: 2,
            mutations: 2,
            iterations: 2,
            seed,
            inject_baseline: true,
        };
        let ga = ga_select(&obj, fingers, &ga_params).unwrap();

        for indices in [conv.assignment.indices(), exh.assignment.indices(), ga.assignment.indices()] {
            prop_assert_eq!(indices.len(), fingers);
            prop_assert!(indices.windows(2).all(|w| w[0] < w[1]), "sorted and distinct");
            prop_assert!(indices.iter().all(|&i| i < paths), "in range");
        }

        // The exhaustive optimum tops both heuristics, and the injected
        // baseline floors the genetic search at the conventional pick.
        prop_assert!(exh.sinr_linear >= conv.sinr_linear);
        prop_assert!(exh.sinr_linear >= ga.sinr_linear);
        prop_assert!(ga.sinr_linear >= conv.sinr_linear);
        prop_assert!(ga.eval_count <= ga_params.eval_budget());
        prop_assert_eq!(exh.eval_count as u128, binomial(paths as u64, fingers as u64));
    }

    #[test]
    fn polarity_flips_never_move_the_objective(
        (users, paths, fingers, seed, real) in geometry(),
        flipped_user in 0usize..5,
    ) {
        let cfg = config(users, paths, fingers);
        let mut scen = gen_scenario(&cfg, seed, real);
        let sig = build_signature(&cfg, &scen);
        let obj = Objective::new(&sig, &cfg.energies, cfg.noise_var);
        let asn = Assignment::new((0..fingers).collect());
        let before = obj.overall_sinr(&asn);

        let user = flipped_user % users;
        scen.polarities[user] = -scen.polarities[user];
        let sig = build_signature(&cfg, &scen);
        let obj = Objective::new(&sig, &cfg.energies, cfg.noise_var);
        let after = obj.overall_sinr(&asn);

        prop_assert!((before - after).abs() <= 1e-11 * before.abs(),
            "user {}: {} vs {}", user, before, after);
    }

    #[test]
    fn assignments_normalize_any_permutation(perm in proptest::sample::subsequence((0usize..20).collect::<Vec<_>>(), 1..10).prop_shuffle()) {
        let asn = Assignment::new(perm.clone());
        prop_assert!(asn.indices().windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(asn.len(), perm.len());
        for i in &perm {
            prop_assert!(asn.contains(*i));
        }
    }

    #[test]
    fn binomial_is_symmetric((n, k) in (0u64..60).prop_flat_map(|n| (Just(n), 0..=n))) {
        prop_assert_eq!(binomial(n, k), binomial(n, n - k));
    }
}
