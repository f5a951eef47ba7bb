"""Fixed-size subset minimization: GA, NSGA-II, and the random baseline.

Individuals are characteristic bit-vectors over the matrix roster.  All
operators preserve the subset size n by construction.  Randomness comes from
PCG64 generators derived from the run seed by a fixed stream-splitting rule:
spawn key (0,) seeds initialization, spawn key (1, g) seeds generation g.
That makes every run bit-reproducible across platforms and job counts.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, FitnessUndefinedError, InternalError

FITNESS_FORMS = ("max_squared", "max", "sum_squared", "exp_max")

# Objective pairs accepted by NSGA-II unless explicitly overridden.
DEFAULT_OBJECTIVE_PAIRS = (
    frozenset({"topdown", "bottomup"}),
    frozenset({"combined", "ted"}),
)


@dataclass(eq=False)
class Candidate:
    """One subset under evolution: bit-vector plus search bookkeeping."""

    selection: np.ndarray
    fitness: tuple = ()
    rank: int = -1
    crowding: float = 0.0

    @property
    def budget_size(self) -> int:
        return int(self.selection.sum())

    def indices(self) -> tuple:
        return tuple(int(i) for i in np.flatnonzero(self.selection))


@dataclass(frozen=True)
class SearchConfig:
    budget_fraction: float = 0.5
    population_size: int = 100
    crossover_rate: float = 0.90
    mutation_rate: float = 0.01
    min_generations: int = 30
    improvement_epsilon: float = 0.0025
    seed: int = 1
    fitness_form: str = "max_squared"
    allow_any_objectives: bool = False

    def __post_init__(self):
        if not 0.0 < self.budget_fraction < 1.0:
            raise ConfigError(
                f"budget fraction must be in (0, 1), got {self.budget_fraction}"
            )
        if self.population_size < 2:
            raise ConfigError("population size must be at least 2")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ConfigError("crossover rate must be in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ConfigError("mutation rate must be in [0, 1]")
        if self.min_generations < 1:
            raise ConfigError("minimum generations must be at least 1")
        if self.improvement_epsilon < 0.0:
            raise ConfigError("improvement epsilon must be non-negative")
        if self.fitness_form not in FITNESS_FORMS:
            raise ConfigError(f"unknown fitness form {self.fitness_form!r}")


class FrontMember(NamedTuple):
    indices: tuple
    objectives: tuple


@dataclass(frozen=True)
class MinimizationResult:
    algorithm: str
    measures: tuple
    seed: int
    budget_fraction: float
    budget_size: int
    roster_size: int
    selected: tuple
    fitness: tuple
    trace: tuple
    generations: int
    evaluations: int
    seconds: float
    front: tuple = ()
    designated: FrontMember | None = None


def resolve_budget(roster_size: int, fraction: float, *, minimum: int = 2) -> int:
    """Subset size for a budget fraction: round half up, then range-check."""
    if not 0.0 < fraction < 1.0:
        raise ConfigError(f"budget fraction must be in (0, 1), got {fraction}")
    n = int(math.floor(fraction * roster_size + 0.5))
    if n < minimum:
        raise ConfigError(
            f"budget {fraction} keeps only {n} of {roster_size} tests; "
            f"need at least {minimum}"
        )
    if n >= roster_size:
        raise ConfigError(
            f"budget {fraction} keeps all {roster_size} tests; nothing to minimize"
        )
    return n


def _stream(seed: int, *key: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=key)
    return np.random.Generator(np.random.PCG64(seq))


class FitnessEvaluator:
    """Similarity-based fitness over a fixed matrix; lower is better.

    The default form averages, over the subset, the squared maximum
    similarity of each member to any other member.  Alternative forms keep
    the same [0, 1] range and orientation.
    """

    def __init__(self, matrix, form: str = "max_squared"):
        if form not in FITNESS_FORMS:
            raise ConfigError(f"unknown fitness form {form!r}")
        self._sim = np.asarray(matrix.dense(), dtype=np.float64)
        self._form = form

    def of_indices(self, indices) -> float:
        members = np.asarray(sorted(int(i) for i in indices), dtype=np.intp)
        n = len(members)
        if n < 2:
            raise FitnessUndefinedError(
                f"fitness needs at least 2 selected tests, got {n}"
            )
        sub = self._sim[np.ix_(members, members)].copy()
        if self._form == "sum_squared":
            np.fill_diagonal(sub, 0.0)
            return float((sub**2).sum() / (n * (n - 1)))
        np.fill_diagonal(sub, -1.0)  # a real sim is >= 0, so never the max
        best = sub.max(axis=1)
        if self._form == "max_squared":
            return float(np.mean(best**2))
        if self._form == "max":
            return float(np.mean(best))
        return float(np.mean(np.expm1(best) / (math.e - 1.0)))

    def of_vector(self, selection: np.ndarray) -> float:
        return self.of_indices(np.flatnonzero(selection))


def random_subset(roster_size: int, size: int, rng: np.random.Generator) -> np.ndarray:
    selection = np.zeros(roster_size, dtype=np.uint8)
    picks = rng.choice(roster_size, size=size, replace=False)
    selection[picks] = 1
    return selection


def _check_size(selection: np.ndarray, n: int, op: str) -> np.ndarray:
    if int(selection.sum()) != n:
        raise InternalError(f"{op} broke the fixed-size invariant")
    return selection


def tournament_select(population, rng: np.random.Generator, *, crowded: bool = False):
    """Binary tournament; ties keep the first of the two drawn."""
    a, b = rng.integers(0, len(population), size=2)
    first, second = population[a], population[b]
    if crowded:
        if second.rank < first.rank:
            return second
        if second.rank == first.rank and second.crowding > first.crowding:
            return second
        return first
    return second if second.fitness[0] < first.fitness[0] else first


def crossover(parent_a: Candidate, parent_b: Candidate, rng, crossover_rate: float):
    """Intersection-preserving crossover; children drawn independently."""
    sel_a, sel_b = parent_a.selection, parent_b.selection
    n = int(sel_a.sum())
    if rng.random() >= crossover_rate:
        return Candidate(sel_a.copy()), Candidate(sel_b.copy())
    core = sel_a & sel_b
    pool = np.flatnonzero(sel_a ^ sel_b)
    need = n - int(core.sum())
    children = []
    for _ in range(2):
        child = core.copy()
        if need:
            child[rng.choice(pool, size=need, replace=False)] = 1
        children.append(Candidate(_check_size(child, n, "crossover")))
    return tuple(children)


def reverse_segment(selection: np.ndarray, i: int, j: int) -> np.ndarray:
    out = selection.copy()
    out[i : j + 1] = out[i : j + 1][::-1]
    return out


def mutate(candidate: Candidate, rng, mutation_rate: float) -> Candidate:
    """With probability mutation_rate, reverse a uniformly chosen segment."""
    if rng.random() >= mutation_rate:
        return candidate
    n = candidate.budget_size
    i, j = sorted(int(k) for k in rng.choice(len(candidate.selection), size=2, replace=False))
    flipped = reverse_segment(candidate.selection, i, j)
    return Candidate(_check_size(flipped, n, "mutation"))


def _make_offspring(population, rng, config: SearchConfig, *, crowded: bool):
    offspring = []
    while len(offspring) < config.population_size:
        pa = tournament_select(population, rng, crowded=crowded)
        pb = tournament_select(population, rng, crowded=crowded)
        ca, cb = crossover(pa, pb, rng, config.crossover_rate)
        offspring.append(mutate(ca, rng, config.mutation_rate))
        offspring.append(mutate(cb, rng, config.mutation_rate))
    return offspring[: config.population_size]


def run_ga(matrix, config: SearchConfig) -> MinimizationResult:
    """Single-objective GA with elitist (mu + lambda) truncation survival."""
    start = time.perf_counter()
    roster_size = matrix.size
    n = resolve_budget(roster_size, config.budget_fraction)
    evaluate = FitnessEvaluator(matrix, config.fitness_form)

    rng = _stream(config.seed, 0)
    population = [
        Candidate(random_subset(roster_size, n, rng))
        for _ in range(config.population_size)
    ]
    for cand in population:
        cand.fitness = (evaluate.of_vector(cand.selection),)
    evaluations = len(population)
    population.sort(key=lambda c: c.fitness[0])
    trace = [population[0].fitness[0]]

    generation = 0
    while True:
        generation += 1
        rng_g = _stream(config.seed, 1, generation)
        offspring = _make_offspring(population, rng_g, config, crowded=False)
        for cand in offspring:
            cand.fitness = (evaluate.of_vector(cand.selection),)
        evaluations += len(offspring)
        merged = population + offspring
        merged.sort(key=lambda c: c.fitness[0])  # stable: parents win ties
        population = merged[: config.population_size]
        best = population[0].fitness[0]
        improvement = trace[-1] - best
        trace.append(best)
        if generation >= config.min_generations and improvement < config.improvement_epsilon:
            break

    winner = population[0]
    return MinimizationResult(
        algorithm="ga",
        measures=(matrix.measure,),
        seed=config.seed,
        budget_fraction=config.budget_fraction,
        budget_size=n,
        roster_size=roster_size,
        selected=winner.indices(),
        fitness=winner.fitness,
        trace=tuple(trace),
        generations=generation,
        evaluations=evaluations,
        seconds=time.perf_counter() - start,
    )


def dominates(fit_a, fit_b) -> bool:
    """Pareto dominance for minimization."""
    return all(a <= b for a, b in zip(fit_a, fit_b)) and any(
        a < b for a, b in zip(fit_a, fit_b)
    )


def fast_non_dominated_sort(population):
    """Assigns ranks in place and returns the fronts as index lists."""
    size = len(population)
    dominated = [[] for _ in range(size)]
    counts = [0] * size
    fronts = [[]]
    for p in range(size):
        for q in range(size):
            if p == q:
                continue
            if dominates(population[p].fitness, population[q].fitness):
                dominated[p].append(q)
            elif dominates(population[q].fitness, population[p].fitness):
                counts[p] += 1
        if counts[p] == 0:
            population[p].rank = 0
            fronts[0].append(p)
    current = 0
    while fronts[current]:
        nxt = []
        for p in fronts[current]:
            for q in dominated[p]:
                counts[q] -= 1
                if counts[q] == 0:
                    population[q].rank = current + 1
                    nxt.append(q)
        fronts.append(nxt)
        current += 1
    fronts.pop()
    return fronts


def assign_crowding(population, front) -> None:
    """Crowding distance within one front; boundaries get infinity."""
    for idx in front:
        population[idx].crowding = 0.0
    n_objectives = len(population[front[0]].fitness)
    for dim in range(n_objectives):
        ordered = sorted(front, key=lambda i: population[i].fitness[dim])
        lo = population[ordered[0]].fitness[dim]
        hi = population[ordered[-1]].fitness[dim]
        population[ordered[0]].crowding = math.inf
        population[ordered[-1]].crowding = math.inf
        if hi == lo:
            continue
        for pos in range(1, len(ordered) - 1):
            gap = (
                population[ordered[pos + 1]].fitness[dim]
                - population[ordered[pos - 1]].fitness[dim]
            )
            population[ordered[pos]].crowding += gap / (hi - lo)


def knee_point(front_members) -> FrontMember:
    """Designated solution: minimal sum of min-max normalized objectives.

    Ties fall back to the first objective, then to the lexicographically
    smallest index tuple (so the lowest roster index wins).
    """
    n_objectives = len(front_members[0].objectives)
    lows = [min(m.objectives[d] for m in front_members) for d in range(n_objectives)]
    highs = [max(m.objectives[d] for m in front_members) for d in range(n_objectives)]

    def norm_sum(member):
        total = 0.0
        for d in range(n_objectives):
            span = highs[d] - lows[d]
            if span > 0.0:
                total += (member.objectives[d] - lows[d]) / span
        return total

    return min(front_members, key=lambda m: (norm_sum(m), m.objectives[0], m.indices))


def run_nsga2(matrix_pair, config: SearchConfig) -> MinimizationResult:
    """NSGA-II over two similarity objectives, same operators as the GA."""
    start = time.perf_counter()
    first, second = matrix_pair
    if first.ids != second.ids or first.digests != second.digests:
        raise ConfigError("objective matrices were built over different rosters")
    pair = frozenset({first.measure, second.measure})
    if not config.allow_any_objectives and pair not in DEFAULT_OBJECTIVE_PAIRS:
        raise ConfigError(
            f"unsupported objective pair ({first.measure}, {second.measure}); "
            f"allowed pairs are (topdown, bottomup) and (combined, ted)"
        )
    roster_size = first.size
    n = resolve_budget(roster_size, config.budget_fraction)
    evaluators = (
        FitnessEvaluator(first, config.fitness_form),
        FitnessEvaluator(second, config.fitness_form),
    )

    def score(cand):
        cand.fitness = tuple(e.of_vector(cand.selection) for e in evaluators)

    rng = _stream(config.seed, 0)
    population = [
        Candidate(random_subset(roster_size, n, rng))
        for _ in range(config.population_size)
    ]
    for cand in population:
        score(cand)
    evaluations = len(population)
    for front in fast_non_dominated_sort(population):
        assign_crowding(population, front)
    trace = [min(c.fitness[0] for c in population)]

    generation = 0
    while True:
        generation += 1
        rng_g = _stream(config.seed, 1, generation)
        offspring = _make_offspring(population, rng_g, config, crowded=True)
        for cand in offspring:
            score(cand)
        evaluations += len(offspring)
        merged = population + offspring
        fronts = fast_non_dominated_sort(merged)
        survivors = []
        for front in fronts:
            assign_crowding(merged, front)
            if len(survivors) + len(front) <= config.population_size:
                survivors.extend(front)
            else:
                room = config.population_size - len(survivors)
                # Stable sort keeps earlier candidates on equal crowding.
                by_spread = sorted(front, key=lambda i: -merged[i].crowding)
                survivors.extend(by_spread[:room])
            if len(survivors) == config.population_size:
                break
        population = [merged[i] for i in survivors]
        best = min(c.fitness[0] for c in population)
        improvement = trace[-1] - best
        trace.append(best)
        if generation >= config.min_generations and improvement < config.improvement_epsilon:
            break

    seen = set()
    members = []
    for cand in population:
        if cand.rank != 0:
            continue
        key = cand.selection.tobytes()
        if key in seen:
            continue
        seen.add(key)
        members.append(FrontMember(cand.indices(), cand.fitness))
    members.sort(key=lambda m: (m.objectives, m.indices))
    designated = knee_point(members)

    return MinimizationResult(
        algorithm="nsga2",
        measures=(first.measure, second.measure),
        seed=config.seed,
        budget_fraction=config.budget_fraction,
        budget_size=n,
        roster_size=roster_size,
        selected=designated.indices,
        fitness=designated.objectives,
        trace=tuple(trace),
        generations=generation,
        evaluations=evaluations,
        seconds=time.perf_counter() - start,
        front=tuple(members),
        designated=designated,
    )


def run_random(roster_size: int, config: SearchConfig) -> MinimizationResult:
    """Baseline: one uniformly drawn n-subset per seed."""
    start = time.perf_counter()
    n = resolve_budget(roster_size, config.budget_fraction, minimum=1)
    rng = _stream(config.seed, 0)
    selection = random_subset(roster_size, n, rng)
    return MinimizationResult(
        algorithm="random",
        measures=(),
        seed=config.seed,
        budget_fraction=config.budget_fraction,
        budget_size=n,
        roster_size=roster_size,
        selected=tuple(int(i) for i in np.flatnonzero(selection)),
        fitness=(),
        trace=(),
        generations=0,
        evaluations=0,
        seconds=time.perf_counter() - start,
    )
