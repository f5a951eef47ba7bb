"""Run configuration: defaults, optional config file, then flag overrides.

The effective configuration is echoed into every output artifact so a run
can be reproduced from any of its files.  Operational knobs that cannot
change results (worker count, filesystem paths) are kept out of the echo.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields

from .errors import ConfigError
from .frontend import PreprocessConfig
from .search import SearchConfig
from .similarity import MEASURES

ALGORITHMS = ("ga", "nsga2", "random")


@dataclass(frozen=True)
class RunConfig:
    budget: float = 0.5
    measures: tuple = ("combined",)
    algorithm: str = "ga"
    seed: int = 1
    jobs: int = 1
    population_size: int = 100
    crossover_rate: float = 0.90
    mutation_rate: float = 0.01
    min_generations: int = 30
    improvement_epsilon: float = 0.0025
    fitness_form: str = "max_squared"
    allow_any_objectives: bool = False
    keep_assertion_args: bool = False
    rename_target: str = "test_case"

    def __post_init__(self):
        if isinstance(self.measures, (list, str)):
            measures = (
                (self.measures,) if isinstance(self.measures, str) else tuple(self.measures)
            )
            object.__setattr__(self, "measures", measures)
        if not self.measures:
            raise ConfigError("at least one measure is required")
        for measure in self.measures:
            if measure not in MEASURES:
                raise ConfigError(
                    f"unknown measure {measure!r}; choose from {', '.join(MEASURES)}"
                )
        if len(set(self.measures)) != len(self.measures):
            raise ConfigError("duplicate measure requested")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(
                f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}"
            )
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        if not isinstance(self.jobs, int) or isinstance(self.jobs, bool) or self.jobs < 1:
            raise ConfigError(f"jobs must be a positive integer, got {self.jobs!r}")
        # Search and preprocessing knobs validate themselves.
        self.to_search_config(self.seed)
        self.to_preprocess_config()

    def to_search_config(self, seed: int) -> SearchConfig:
        try:
            return SearchConfig(
                budget_fraction=self.budget,
                population_size=self.population_size,
                crossover_rate=self.crossover_rate,
                mutation_rate=self.mutation_rate,
                min_generations=self.min_generations,
                improvement_epsilon=self.improvement_epsilon,
                seed=seed,
                fitness_form=self.fitness_form,
                allow_any_objectives=self.allow_any_objectives,
            )
        except TypeError as exc:
            raise ConfigError(f"bad search configuration: {exc}") from exc

    def to_preprocess_config(self) -> PreprocessConfig:
        if not isinstance(self.rename_target, str) or not self.rename_target:
            raise ConfigError("rename_target must be a non-empty string")
        return PreprocessConfig(
            rename_target=self.rename_target,
            keep_assertion_args=bool(self.keep_assertion_args),
        )

    def echo(self, seed=None) -> dict:
        """Provenance record embedded in output artifacts.

        Excludes jobs and paths: they cannot affect any result.
        """
        return {
            "budget": self.budget,
            "measures": list(self.measures),
            "algorithm": self.algorithm,
            "seed": self.seed if seed is None else seed,
            "population_size": self.population_size,
            "crossover_rate": self.crossover_rate,
            "mutation_rate": self.mutation_rate,
            "min_generations": self.min_generations,
            "improvement_epsilon": self.improvement_epsilon,
            "fitness_form": self.fitness_form,
            "allow_any_objectives": self.allow_any_objectives,
            "keep_assertion_args": self.keep_assertion_args,
            "rename_target": self.rename_target,
        }


_CONFIG_KEYS = tuple(f.name for f in fields(RunConfig))


def load_config_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    unknown = sorted(set(doc) - set(_CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"{path}: unknown config key {unknown[0]!r}")
    return doc


def resolve_config(config_path=None, overrides=None) -> RunConfig:
    """Defaults, then the config file, then explicitly set flags."""
    data = {}
    if config_path:
        data.update(load_config_file(config_path))
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    try:
        return RunConfig(**data)
    except TypeError as exc:
        raise ConfigError(f"bad configuration: {exc}") from exc
