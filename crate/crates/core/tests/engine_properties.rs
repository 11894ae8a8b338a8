use devolab::benchmarks::{BenchmarkFn, FnId};
use devolab::de::{self, distinct_indices, Genome, Individual, Population, RunState};
use devolab::params::ControlParams;
use devolab::seed::rng_from_seed;
use devolab::variant::{Mutation, VariantSpec};
use proptest::prelude::*;

fn small(np: usize, max_gen: usize, cr: f64) -> ControlParams {
    ControlParams {
        np,
        max_gen,
        max_fe: (np * max_gen) as u64,
        cr,
        ..ControlParams::default()
    }
}

#[test]
fn sampled_indices_never_repeat_or_hit_the_target() {
    let mut rng = rng_from_seed(21);
    let mut events = 0;
    while events < 100_000 {
        for m in Mutation::ALL {
            let np = 6 + events % 55;
            let target = events % np;
            let idx = distinct_indices(&mut rng, &[target], m.random_members(), np).unwrap();
            assert!(!idx.contains(&target));
            for (a, x) in idx.iter().enumerate() {
                assert!(*x < np);
                assert!(!idx[a + 1..].contains(x));
            }
            events += 1;
        }
    }
}

#[test]
fn fe_accounting_matches_generations() {
    for id in [FnId::F1, FnId::F7, FnId::F9] {
        for v in VariantSpec::all() {
            let p = small(10, 40, 0.7);
            let mut state = RunState::new(v, BenchmarkFn::new(id), p, 8).unwrap();
            state.run_to_end();
            assert_eq!(state.fe_count(), 10 + 10 * state.generation() as u64, "{v} {id}");
            assert!(state.fe_count() <= p.max_fe);
        }
    }
}

#[test]
fn all_equal_population_cannot_move() {
    // Every member at c: the strategies without a "current" term produce c
    // and the population stays put for a whole run.
    let c = vec![0.25; 30];
    let f = BenchmarkFn::new(FnId::F9);
    for m in [Mutation::Rand1, Mutation::Rand2, Mutation::Best1, Mutation::Best2, Mutation::RandToBest1] {
        let members: Vec<Individual> = (0..8)
            .map(|_| Individual {
                genome: Genome(c.clone()),
                fitness: f.evaluate_deterministic(&c).unwrap(),
            })
            .collect();
        let pop = Population::from_members(members, 0).unwrap();
        let mut rng = rng_from_seed(4);
        for i in 0..8 {
            let mutant = de::mutate(m, &pop, i, 0.9, 0.9, &mut rng);
            let trial = de::crossover_binomial(&pop.get(i).genome, &mutant, 0.5, &mut rng);
            assert_eq!(trial.0, c);
        }
    }
}

#[test]
fn runs_do_not_depend_on_thread() {
    let f = BenchmarkFn::new(FnId::F11);
    let p = small(16, 60, 0.5);
    let v: VariantSpec = "rand-to-best/1/exp".parse().unwrap();
    let here = de::run(v, &f, &p, 77).unwrap();
    let there = std::thread::spawn(move || de::run(v, &f, &p, 77).unwrap()).join().unwrap();
    assert_eq!(here, there);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn best_ever_is_nonincreasing(
        variant in 0usize..14,
        function in 0usize..14,
        seed in any::<u64>(),
        cr in 0.0f64..=1.0,
    ) {
        let v = VariantSpec::all()[variant];
        let f = BenchmarkFn::new(FnId::ALL[function]);
        let (rec, trace) = de::run_traced(v, &f, &small(8, 25, cr), seed).unwrap();
        prop_assert!(trace.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(rec.final_best, *trace.last().unwrap());
        prop_assert_eq!(rec.success, rec.final_best <= 1e-12);
    }

    #[test]
    fn trials_stay_finite_and_in_bounds(
        variant in 0usize..14,
        function in 0usize..14,
        seed in any::<u64>(),
    ) {
        let v = VariantSpec::all()[variant];
        let f = BenchmarkFn::new(FnId::ALL[function]);
        let mut state = RunState::new(v, f.clone(), small(8, 15, 0.9), seed).unwrap();
        state.run_to_end();
        for m in state.population().members() {
            for (x, b) in m.genome.iter().zip(&f.bounds) {
                prop_assert!(x.is_finite() && b.contains(*x));
            }
            prop_assert!(m.fitness >= state.best_ever().fitness);
        }
    }

    #[test]
    fn selection_keeps_the_better(target_fit in -1e6f64..1e6, trial_fit in -1e6f64..1e6) {
        let target = Individual { genome: Genome(vec![1.0]), fitness: target_fit };
        let out = de::select(&target, Genome(vec![2.0]), trial_fit);
        prop_assert_eq!(out.fitness, target_fit.min(trial_fit));
        prop_assert_eq!(out.genome.0[0] == 2.0, trial_fit <= target_fit);
    }
}
