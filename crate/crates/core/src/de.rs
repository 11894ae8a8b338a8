//! The differential evolution engine: population, mutation strategies,
//! crossover schemes, one-to-one selection and the generational loop.
//!
//! A generation draws one scale factor F (K = F), then for every target
//! `i` builds a mutant from the frozen generation-G population, crosses it
//! with the target, clamps the trial into the bounds, evaluates it and keeps
//! it when it is not worse than the target. Selections are synchronous: all
//! of them compare against generation-G parents.

use std::ops::{Deref, DerefMut};

use rand::Rng;

use crate::benchmarks::BenchmarkFn;
use crate::error::{Error, Result};
use crate::metrics::RunRecord;
use crate::params::ControlParams;
use crate::seed::{rng_from_seed, RunRng};
use crate::variant::{Crossover, Mutation, VariantSpec};

/// Largest number of distinct members any strategy draws.
pub const MAX_DRAWN: usize = 5;

/// A point in the search space.
#[derive(Debug, Clone, PartialEq)]
pub struct Genome(pub Vec<f64>);

impl Genome {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Genome {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Genome {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for Genome {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    members: Vec<Individual>,
    generation: usize,
    best_index: usize,
}

impl Population {
    /// Build a population from evaluated members; the best index is the
    /// lowest index among the minimal fitnesses.
    pub fn from_members(members: Vec<Individual>, generation: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::config("population must not be empty"));
        }
        let best_index = best_of(&members);
        Ok(Self {
            members,
            generation,
            best_index,
        })
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn best_index(&self) -> usize {
        self.best_index
    }

    pub fn best(&self) -> &Individual {
        &self.members[self.best_index]
    }

    pub fn get(&self, i: usize) -> &Individual {
        &self.members[i]
    }
}

fn best_of(members: &[Individual]) -> usize {
    let mut best = 0;
    for (i, m) in members.iter().enumerate().skip(1) {
        if m.fitness < members[best].fitness {
            best = i;
        }
    }
    best
}

/// Sample NP genomes uniformly inside the bounds and evaluate them.
///
/// The caller charges `params.np` evaluations.
pub fn init_population<R: Rng + ?Sized>(
    rng: &mut R,
    function: &BenchmarkFn,
    params: &ControlParams,
) -> Result<Population> {
    function.validate()?;
    if params.np == 0 {
        return Err(Error::config("population size must be positive"));
    }
    let mut members = Vec::with_capacity(params.np);
    for _ in 0..params.np {
        let genome: Vec<f64> = function
            .bounds
            .iter()
            .map(|b| if b.low == b.high { b.low } else { rng.random_range(b.low..=b.high) })
            .collect();
        let fitness = function.value(&genome, rng);
        members.push(Individual {
            genome: Genome(genome),
            fitness,
        });
    }
    Population::from_members(members, 0)
}

/// This generation's scale factor, uniform in the configured range.
pub fn sample_f<R: Rng + ?Sized>(rng: &mut R, params: &ControlParams) -> f64 {
    let r = params.f_range;
    if r.low == r.high {
        r.low
    } else {
        rng.random_range(r.low..=r.high)
    }
}

/// `count` pairwise distinct indices in `[0, np)`, none of them in `exclude`.
pub fn distinct_indices<R: Rng + ?Sized>(
    rng: &mut R,
    exclude: &[usize],
    count: usize,
    np: usize,
) -> Result<Vec<usize>> {
    let excluded_in_range = {
        let mut e: Vec<usize> = exclude.iter().copied().filter(|&x| x < np).collect();
        e.sort_unstable();
        e.dedup();
        e.len()
    };
    if np < excluded_in_range + count {
        return Err(Error::config(format!(
            "cannot draw {count} distinct indices from a population of {np} excluding {excluded_in_range}"
        )));
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.random_range(0..np);
        if !exclude.contains(&r) && !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Rejection sampling into a fixed buffer; the caller has already checked
/// that the population is large enough.
fn draw_into<R: Rng + ?Sized>(rng: &mut R, target: usize, np: usize, out: &mut [usize]) {
    for k in 0..out.len() {
        loop {
            let r = rng.random_range(0..np);
            if r != target && !out[..k].contains(&r) {
                out[k] = r;
                break;
            }
        }
    }
}

/// Write the mutant for `strategy` into `out`.
///
/// `drawn` holds the randomly chosen members r1, r2, ... in order; it must
/// contain at least `strategy.random_members()` vectors.
pub fn mutation_formula(
    strategy: Mutation,
    current: &[f64],
    best: &[f64],
    drawn: &[&[f64]],
    f: f64,
    k: f64,
    out: &mut [f64],
) {
    let need = strategy.random_members();
    assert!(drawn.len() >= need, "{} needs {need} drawn members", strategy.name());
    for j in 0..out.len() {
        let r = |n: usize| drawn[n][j];
        out[j] = match strategy {
            Mutation::Rand1 => r(0) + f * (r(1) - r(2)),
            Mutation::Best1 => best[j] + f * (r(0) - r(1)),
            Mutation::Rand2 => r(0) + f * (r(1) - r(2) + r(3) - r(4)),
            Mutation::Best2 => best[j] + f * (r(0) - r(1) + r(2) - r(3)),
            Mutation::CurrentToRand1 => current[j] + k * (r(2) - current[j]) + f * (r(0) - r(1)),
            Mutation::CurrentToBest1 => current[j] + k * (best[j] - current[j]) + f * (r(0) - r(1)),
            Mutation::RandToBest1 => r(0) + f * (best[j] - r(0)) + f * (r(1) - r(2)),
        };
    }
}

/// Build the mutant V for target `i`. Random members are drawn distinct from
/// each other and from `i`; the best member may be drawn.
pub fn mutate<R: Rng + ?Sized>(
    strategy: Mutation,
    pop: &Population,
    i: usize,
    f: f64,
    k: f64,
    rng: &mut R,
) -> Genome {
    let mut idx = [0usize; MAX_DRAWN];
    let n = strategy.random_members();
    draw_into(rng, i, pop.len(), &mut idx[..n]);
    let drawn: Vec<&[f64]> = idx[..n].iter().map(|&r| &pop.members[r].genome[..]).collect();
    let current = &pop.members[i].genome;
    let mut out = vec![0.0; current.len()];
    mutation_formula(strategy, current, &pop.best().genome, &drawn, f, k, &mut out);
    Genome(out)
}

/// Binomial crossover mask: `(mask, j_rand)` where `mask[j]` is true when
/// component `j` comes from the mutant.
pub fn binomial_mask<R: Rng + ?Sized>(dim: usize, cr: f64, rng: &mut R) -> (Vec<bool>, usize) {
    let j_rand = rng.random_range(0..dim);
    let mask = (0..dim)
        .map(|j| {
            let u: f64 = rng.random();
            u < cr || j == j_rand
        })
        .collect();
    (mask, j_rand)
}

/// Exponential crossover block: `(start, len)` with `1 <= len <= dim`. The
/// mutant supplies components `start, start+1, ... (mod dim)`.
pub fn exponential_block<R: Rng + ?Sized>(dim: usize, cr: f64, rng: &mut R) -> (usize, usize) {
    let start = rng.random_range(0..dim);
    let mut len = 1;
    while len < dim && rng.random::<f64>() < cr {
        len += 1;
    }
    (start, len)
}

pub fn crossover_binomial<R: Rng + ?Sized>(target: &Genome, mutant: &Genome, cr: f64, rng: &mut R) -> Genome {
    let (mask, _) = binomial_mask(target.len(), cr, rng);
    Genome(
        mask.iter()
            .zip(target.iter().zip(mutant.iter()))
            .map(|(&m, (&t, &v))| if m { v } else { t })
            .collect(),
    )
}

pub fn crossover_exponential<R: Rng + ?Sized>(target: &Genome, mutant: &Genome, cr: f64, rng: &mut R) -> Genome {
    let dim = target.len();
    let (start, len) = exponential_block(dim, cr, rng);
    let mut trial = target.clone();
    for step in 0..len {
        let j = (start + step) % dim;
        trial[j] = mutant[j];
    }
    trial
}

pub fn crossover<R: Rng + ?Sized>(
    scheme: Crossover,
    target: &Genome,
    mutant: &Genome,
    cr: f64,
    rng: &mut R,
) -> Genome {
    match scheme {
        Crossover::Binomial => crossover_binomial(target, mutant, cr, rng),
        Crossover::Exponential => crossover_exponential(target, mutant, cr, rng),
    }
}

/// One-to-one selection; ties go to the trial.
pub fn select(target: &Individual, trial_genome: Genome, trial_fitness: f64) -> Individual {
    if trial_fitness <= target.fitness {
        Individual {
            genome: trial_genome,
            fitness: trial_fitness,
        }
    } else {
        target.clone()
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Best-ever fitness reached the tolerance.
    Solved,
    /// Generation or evaluation budget exhausted.
    Budget,
}

/// State of one seeded run.
#[derive(Debug, Clone)]
pub struct RunState {
    variant: VariantSpec,
    function: BenchmarkFn,
    params: ControlParams,
    seed: u64,
    population: Population,
    fe_count: u64,
    best_ever: Individual,
    rng: RunRng,
    f_current: f64,
    finished: Option<Termination>,
}

impl RunState {
    /// Validate the configuration, seed the stream and evaluate the initial
    /// population (charging NP evaluations).
    pub fn new(variant: VariantSpec, function: BenchmarkFn, params: ControlParams, seed: u64) -> Result<Self> {
        params.validate_for(variant)?;
        function.validate()?;
        let mut rng = rng_from_seed(seed);
        let population = init_population(&mut rng, &function, &params)?;
        let best_ever = population.best().clone();
        let mut state = Self {
            variant,
            function,
            params,
            seed,
            population,
            fe_count: params.np as u64,
            best_ever,
            rng,
            f_current: params.f_range.low,
            finished: None,
        };
        state.check_termination();
        Ok(state)
    }

    pub fn variant(&self) -> VariantSpec {
        self.variant
    }

    pub fn function(&self) -> &BenchmarkFn {
        &self.function
    }

    pub fn params(&self) -> &ControlParams {
        &self.params
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn fe_count(&self) -> u64 {
        self.fe_count
    }

    pub fn best_ever(&self) -> &Individual {
        &self.best_ever
    }

    /// Scale factor of the most recent generation (K aliases it).
    pub fn f_current(&self) -> f64 {
        self.f_current
    }

    pub fn generation(&self) -> usize {
        self.population.generation
    }

    pub fn termination(&self) -> Option<Termination> {
        self.finished
    }

    pub fn is_finished(&self) -> bool {
        self.finished.is_some()
    }

    fn check_termination(&mut self) {
        if self.best_ever.fitness <= self.params.tolerance {
            self.finished = Some(Termination::Solved);
        } else if self.population.generation >= self.params.max_gen || self.fe_count >= self.params.max_fe {
            self.finished = Some(Termination::Budget);
        }
    }

    /// Advance one full generation. Returns `false` without doing anything
    /// once the run has terminated.
    pub fn step(&mut self) -> bool {
        if self.is_finished() {
            return false;
        }
        let f = sample_f(&mut self.rng, &self.params);
        let k = if self.params.k_equals_f {
            f
        } else {
            sample_f(&mut self.rng, &self.params)
        };
        self.f_current = f;

        let np = self.population.len();
        let mut next = Vec::with_capacity(np);
        for i in 0..np {
            let mutant = mutate(self.variant.mutation, &self.population, i, f, k, &mut self.rng);
            let target = &self.population.members[i];
            let mut trial = crossover(
                self.variant.crossover,
                &target.genome,
                &mutant,
                self.params.cr,
                &mut self.rng,
            );
            for (x, b) in trial.iter_mut().zip(&self.function.bounds) {
                *x = b.clamp(*x);
            }
            let fitness = self.function.value(&trial, &mut self.rng);
            next.push(select(target, trial, fitness));
        }
        self.fe_count += np as u64;
        self.population.members = next;
        self.population.generation += 1;
        self.population.best_index = best_of(&self.population.members);
        let best = self.population.best();
        if best.fitness < self.best_ever.fitness {
            self.best_ever = best.clone();
        }
        self.check_termination();
        true
    }

    pub fn run_to_end(&mut self) {
        while self.step() {}
    }

    pub fn record(&self) -> RunRecord {
        RunRecord {
            variant: self.variant,
            function: self.function.id,
            seed: self.seed,
            cr: self.params.cr,
            final_best: self.best_ever.fitness,
            fe_used: self.fe_count,
            success: self.best_ever.fitness <= self.params.tolerance,
        }
    }
}

/// Evolve one seeded run to termination.
pub fn run(variant: VariantSpec, function: &BenchmarkFn, params: &ControlParams, seed: u64) -> Result<RunRecord> {
    let mut state = RunState::new(variant, function.clone(), *params, seed)?;
    state.run_to_end();
    Ok(state.record())
}

/// Like [`run`], also returning the best-ever fitness after initialisation
/// and after every generation.
pub fn run_traced(
    variant: VariantSpec,
    function: &BenchmarkFn,
    params: &ControlParams,
    seed: u64,
) -> Result<(RunRecord, Vec<f64>)> {
    let mut state = RunState::new(variant, function.clone(), *params, seed)?;
    let mut trace = vec![state.best_ever().fitness];
    while state.step() {
        trace.push(state.best_ever().fitness);
    }
    Ok((state.record(), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::FnId;
    use crate::params::FRange;
    use rand::SeedableRng;

    fn rng(seed: u64) -> RunRng {
        RunRng::seed_from_u64(seed)
    }

    fn small(np: usize, max_gen: usize) -> ControlParams {
        ControlParams {
            np,
            max_gen,
            max_fe: (np * max_gen) as u64,
            ..ControlParams::default()
        }
    }

    #[test]
    fn init_respects_bounds_and_is_deterministic() {
        let f = BenchmarkFn::new(FnId::F1);
        let p = ControlParams::default();
        let a = init_population(&mut rng(42), &f, &p).unwrap();
        let b = init_population(&mut rng(42), &f, &p).unwrap();
        assert_eq!(a.len(), 60);
        assert!(a.members().iter().all(|m| m.genome.len() == 30));
        assert!(a
            .members()
            .iter()
            .flat_map(|m| m.genome.iter())
            .all(|&x| (-100.0..=100.0).contains(&x)));
        for (x, y) in a.members().iter().zip(b.members()) {
            assert_eq!(x.fitness.to_bits(), y.fitness.to_bits());
            assert!(x.genome.iter().zip(y.genome.iter()).all(|(u, v)| u.to_bits() == v.to_bits()));
        }
        let best = a.best().fitness;
        assert!(a.members().iter().all(|m| best <= m.fitness));
    }

    #[test]
    fn init_rejects_bad_bounds() {
        let mut f = BenchmarkFn::new(FnId::F1);
        f.bounds.pop();
        assert!(matches!(
            init_population(&mut rng(1), &f, &ControlParams::default()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn best_index_breaks_ties_low() {
        let m = |v: f64| Individual {
            genome: Genome(vec![v]),
            fitness: v.abs(),
        };
        let pop = Population::from_members(vec![m(3.0), m(-1.0), m(1.0), m(2.0)], 0).unwrap();
        assert_eq!(pop.best_index(), 1);
    }

    #[test]
    fn sample_f_in_range() {
        let p = ControlParams::default();
        let mut r = rng(5);
        for _ in 0..10_000 {
            let v = sample_f(&mut r, &p);
            assert!((0.3..=0.9).contains(&v));
        }
        let fixed = ControlParams {
            f_range: FRange::new(0.5, 0.5),
            ..p
        };
        assert_eq!(sample_f(&mut r, &fixed), 0.5);
    }

    #[test]
    fn sample_f_mean() {
        let p = ControlParams::default();
        let mut r = rng(6);
        let n = 100_000;
        let mean = (0..n).map(|_| sample_f(&mut r, &p)).sum::<f64>() / n as f64;
        // Exact mean of U[0.3, 0.9].
        let expected = (0.3 + 0.9) / 2.0;
        assert!((mean - expected).abs() < 0.01, "{mean}");
    }

    #[test]
    fn distinct_indices_contract() {
        let mut r = rng(7);
        for i in 0..60 {
            let idx = distinct_indices(&mut r, &[i], 3, 60).unwrap();
            assert_eq!(idx.len(), 3);
            assert!(idx.iter().all(|&x| x != i && x < 60));
            assert!(idx[0] != idx[1] && idx[1] != idx[2] && idx[0] != idx[2]);
        }
        let mut only = distinct_indices(&mut r, &[0], 5, 6).unwrap();
        only.sort_unstable();
        assert_eq!(only, vec![1, 2, 3, 4, 5]);
        assert!(matches!(distinct_indices(&mut r, &[0], 5, 5), Err(Error::Config(_))));
    }

    #[test]
    fn distinct_indices_uniform_per_slot() {
        let mut r = rng(8);
        let draws = 10_000;
        let mut counts = [[0usize; 10]; 3];
        for _ in 0..draws {
            let idx = distinct_indices(&mut r, &[4], 3, 10).unwrap();
            for (slot, &x) in idx.iter().enumerate() {
                counts[slot][x] += 1;
            }
        }
        for slot in counts {
            assert_eq!(slot[4], 0);
            for (x, &c) in slot.iter().enumerate() {
                if x != 4 {
                    let freq = c as f64 / draws as f64;
                    assert!((freq - 1.0 / 9.0).abs() < 0.02, "index {x}: {freq}");
                }
            }
        }
    }

    #[test]
    fn mutation_formulas_by_hand() {
        let zero = [0.0; 3];
        let two = [2.0; 3];
        let mut out = [0.0; 3];
        mutation_formula(Mutation::Best1, &zero, &zero, &[&two, &zero], 0.5, 0.5, &mut out);
        assert_eq!(out, [1.0; 3]);

        let x = [1.0, 2.0, 3.0];
        mutation_formula(Mutation::CurrentToBest1, &x, &two, &[&two, &zero], 0.0, 0.0, &mut out);
        assert_eq!(out, x);

        // rand-to-best/1: r1 + F(best - r1) + F(r2 - r3)
        let r1 = [1.0; 3];
        let r2 = [3.0; 3];
        let r3 = [2.0; 3];
        let best = [5.0; 3];
        mutation_formula(Mutation::RandToBest1, &zero, &best, &[&r1, &r2, &r3], 0.5, 0.5, &mut out);
        assert_eq!(out, [1.0 + 0.5 * 4.0 + 0.5 * 1.0; 3]);

        // current-to-rand/1: x + K(r3 - x) + F(r1 - r2), K != F
        mutation_formula(Mutation::CurrentToRand1, &r1, &best, &[&r2, &r3, &best], 0.5, 0.25, &mut out);
        assert_eq!(out, [1.0 + 0.25 * 4.0 + 0.5 * 1.0; 3]);

        // rand/2 and best/2
        let four = [4.0; 3];
        mutation_formula(Mutation::Rand2, &zero, &zero, &[&r1, &four, &r2, &r3, &r1], 0.5, 0.5, &mut out);
        assert_eq!(out, [1.0 + 0.5 * (4.0 - 3.0 + 2.0 - 1.0); 3]);
        mutation_formula(Mutation::Best2, &zero, &best, &[&four, &r2, &r3, &r1], 0.5, 0.5, &mut out);
        assert_eq!(out, [5.0 + 0.5 * (4.0 - 3.0 + 2.0 - 1.0); 3]);
    }

    #[test]
    fn all_equal_population_is_a_fixed_point() {
        let c = vec![1.5; 30];
        let members = (0..10)
            .map(|_| Individual {
                genome: Genome(c.clone()),
                fitness: 1.0,
            })
            .collect();
        let pop = Population::from_members(members, 0).unwrap();
        let mut r = rng(9);
        for m in Mutation::ALL {
            for i in 0..10 {
                let v = mutate(m, &pop, i, 0.7, 0.7, &mut r);
                assert_eq!(v.0, c, "{}", m.name());
            }
        }
    }

    #[test]
    fn binomial_edge_rates() {
        let t = Genome(vec![0.0; 30]);
        let m = Genome(vec![1.0; 30]);
        let mut r = rng(10);
        for _ in 0..100 {
            let u = crossover_binomial(&t, &m, 0.0, &mut r);
            assert_eq!(u.iter().filter(|&&x| x == 1.0).count(), 1);
            assert_eq!(crossover_binomial(&t, &m, 1.0, &mut r), m);
        }
    }

    #[test]
    fn binomial_expected_count() {
        let mut r = rng(11);
        let trials = 10_000;
        let total: usize = (0..trials)
            .map(|_| binomial_mask(30, 0.5, &mut r).0.iter().filter(|&&b| b).count())
            .sum();
        let mean = total as f64 / trials as f64;
        // j_rand always, each of the other 29 with probability 0.5.
        let expected = 1.0 + 29.0 * 0.5;
        assert!((mean - expected).abs() < 0.5, "{mean}");
    }

    #[test]
    fn exponential_edge_rates() {
        let t = Genome(vec![0.0; 30]);
        let m = Genome(vec![1.0; 30]);
        let mut r = rng(12);
        for _ in 0..100 {
            let u = crossover_exponential(&t, &m, 0.0, &mut r);
            assert_eq!(u.iter().filter(|&&x| x == 1.0).count(), 1);
            assert_eq!(crossover_exponential(&t, &m, 1.0, &mut r), m);
        }
    }

    #[test]
    fn selection_ties_favor_trial() {
        let target = Individual {
            genome: Genome(vec![1.0]),
            fitness: 2.0,
        };
        let won = select(&target, Genome(vec![3.0]), 2.0);
        assert_eq!(won.genome.0, vec![3.0]);
        let kept = select(&target, Genome(vec![3.0]), 2.5);
        assert_eq!(kept, target);
    }

    #[test]
    fn generation_never_worsens_best() {
        let f = BenchmarkFn::new(FnId::F9);
        for v in VariantSpec::all() {
            let p = small(20, 50).with_cr(0.5);
            let (rec, trace) = run_traced(v, &f, &p, 3).unwrap();
            assert!(trace.windows(2).all(|w| w[1] <= w[0]), "{v}");
            assert_eq!(rec.fe_used, 20 * trace.len() as u64);
        }
    }

    #[test]
    fn budget_exhaustion_accounting() {
        let f = BenchmarkFn::new(FnId::F5);
        let p = small(10, 25);
        let (rec, trace) = run_traced(VariantSpec::all()[0], &f, &p, 1).unwrap();
        assert!(!rec.success);
        assert_eq!(rec.fe_used, p.max_fe);
        // init + 24 generations fill 250 evaluations
        assert_eq!(trace.len(), 25);
    }

    #[test]
    fn max_gen_binds_when_budget_is_larger() {
        let f = BenchmarkFn::new(FnId::F5);
        let p = ControlParams {
            np: 10,
            max_gen: 5,
            max_fe: 10_000,
            ..ControlParams::default()
        };
        let rec = run(VariantSpec::all()[0], &f, &p, 1).unwrap();
        assert_eq!(rec.fe_used, 10 + 5 * 10);
    }

    #[test]
    fn early_success_accounting() {
        // Sphere on a tiny box: everything is within tolerance quickly.
        let mut f = BenchmarkFn::new(FnId::F1);
        for b in f.bounds.iter_mut() {
            *b = crate::benchmarks::Bounds { low: -1e-4, high: 1e-4 };
        }
        let p = ControlParams::default();
        let (rec, trace) = run_traced(VariantSpec::all()[0], &f, &p, 2).unwrap();
        assert!(rec.success);
        let g = trace.len() as u64 - 1;
        assert_eq!(rec.fe_used, 60 * (g + 1));
        assert!(rec.fe_used < p.max_fe);

        // A degenerate box puts the optimum in the initial population.
        for b in f.bounds.iter_mut() {
            *b = crate::benchmarks::Bounds { low: 0.0, high: 0.0 };
        }
        let rec = run(VariantSpec::all()[0], &f, &p, 2).unwrap();
        assert!(rec.success);
        assert_eq!(rec.fe_used, 60);
    }

    #[test]
    fn runs_are_deterministic() {
        let f = BenchmarkFn::new(FnId::F7);
        let p = small(12, 40);
        for v in VariantSpec::all() {
            let a = run(v, &f, &p, 99).unwrap();
            let b = run(v, &f, &p, 99).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn trial_vectors_stay_in_bounds() {
        let f = BenchmarkFn::new(FnId::F9);
        let mut state = RunState::new(VariantSpec::all()[8], f, small(10, 30), 4).unwrap();
        state.run_to_end();
        for m in state.population().members() {
            assert!(m.genome.iter().all(|x| x.is_finite() && (-5.12..=5.12).contains(x)));
        }
    }
}
