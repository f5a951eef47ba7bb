"""Fault-detection evaluation: FDR, Fisher's exact test, odds ratios.

The fault map records, per faulty version, which tests fail.  It is used
only here; the minimizer never sees it.  FDR for a suite is the fraction of
versions whose failing set intersects the suite.  Group comparisons use an
exact two-sided Fisher test computed with rational arithmetic.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ConfigError, DataError

FAULTMAP_FORMAT = "tsmin-faultmap"
FAULTMAP_VERSION = 1


@dataclass(frozen=True)
class FaultVersion:
    id: str
    failing: frozenset


@dataclass(frozen=True)
class FaultMap:
    versions: tuple

    def __post_init__(self):
        if not self.versions:
            raise DataError("fault map has no versions")
        ids = [v.id for v in self.versions]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})[0]
            raise DataError(f"duplicate version id {dup!r} in fault map")
        for version in self.versions:
            if not version.failing:
                raise DataError(f"version {version.id!r} has no failing tests")

    @property
    def m(self) -> int:
        return len(self.versions)


def load_fault_map(path) -> FaultMap:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read fault map {path}: {exc}") from exc
    except ValueError as exc:
        raise DataError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != FAULTMAP_FORMAT:
        raise DataError(f"{path}: format is not {FAULTMAP_FORMAT!r}")
    if doc.get("version") != FAULTMAP_VERSION:
        raise DataError(f"{path}: unsupported version {doc.get('version')!r}")
    raw = doc.get("versions")
    if not isinstance(raw, list):
        raise DataError(f"{path}: versions must be a list")
    versions = []
    for pos, item in enumerate(raw):
        ok = (
            isinstance(item, dict)
            and isinstance(item.get("id"), str)
            and isinstance(item.get("failing"), list)
            and all(isinstance(t, str) for t in item["failing"])
        )
        if not ok:
            raise DataError(
                f"{path}: versions[{pos}] needs a string id and a list of failing test ids"
            )
        versions.append(FaultVersion(item["id"], frozenset(item["failing"])))
    return FaultMap(tuple(versions))


def save_fault_map(fault_map: FaultMap, path) -> None:
    doc = {
        "format": FAULTMAP_FORMAT,
        "version": FAULTMAP_VERSION,
        "versions": [
            {"id": v.id, "failing": sorted(v.failing)} for v in fault_map.versions
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


@dataclass(frozen=True)
class FdrResult:
    """Per-version detection flags (fault-map order) and their mean."""

    flags: tuple
    fdr: float

    @property
    def detected(self) -> int:
        return sum(flag for _, flag in self.flags)


def compute_fdr(fault_map: FaultMap, suites, roster_ids) -> FdrResult:
    """Fault detection rate of per-version suites against a fault map.

    `suites` maps version id to the selected test ids for that version;
    passing the same suite for every version is the common case.  Every
    failing id must resolve within `roster_ids`.
    """
    roster = set(roster_ids)
    flags = []
    for version in fault_map.versions:
        for test_id in sorted(version.failing):
            if test_id not in roster:
                raise DataError(
                    f"version {version.id!r} lists unknown failing test {test_id!r}"
                )
        if version.id not in suites:
            raise DataError(f"no minimized suite for version {version.id!r}")
        suite = set(suites[version.id])
        stray = suite - roster
        if stray:
            raise DataError(
                f"suite for version {version.id!r} contains unknown test "
                f"{sorted(stray)[0]!r}"
            )
        flags.append((version.id, int(bool(suite & version.failing))))
    detected = sum(flag for _, flag in flags)
    return FdrResult(tuple(flags), detected / fault_map.m)


def aggregate_stats(values) -> dict:
    """Descriptive statistics: min, quartiles, mean, median, max.

    Quartiles use the inclusive method (linear interpolation between order
    statistics, endpoints included), so results are deterministic.
    """
    vals = sorted(float(v) for v in values)
    if not vals:
        raise ConfigError("cannot aggregate an empty value list")
    if len(vals) == 1:
        q25 = median = q75 = vals[0]
    else:
        q25, median, q75 = statistics.quantiles(vals, n=4, method="inclusive")
    return {
        "min": vals[0],
        "q25": q25,
        "median": median,
        "mean": statistics.fmean(vals),
        "q75": q75,
        "max": vals[-1],
    }


def _check_counts(*counts):
    for value in counts:
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ConfigError(f"counts must be non-negative integers, got {value!r}")


def fisher_exact(detected_a, missed_a, detected_b, missed_b) -> float:
    """Two-sided Fisher's exact p for a 2x2 detected/missed table.

    Conditions on the observed margins and sums the hypergeometric
    probabilities of every table whose probability does not exceed the
    observed table's.  Exact rational arithmetic throughout.
    """
    _check_counts(detected_a, missed_a, detected_b, missed_b)
    row_a = detected_a + missed_a
    row_b = detected_b + missed_b
    if row_a == 0 or row_b == 0:
        raise DataError("Fisher test undefined: a group has no observations")
    col = detected_a + detected_b
    total = row_a + row_b
    denominator = comb(total, col)
    lo = max(0, col - row_b)
    hi = min(row_a, col)

    def pmf(k):
        return Fraction(comb(row_a, k) * comb(row_b, col - k), denominator)

    observed = pmf(detected_a)
    p = Fraction(0)
    for k in range(lo, hi + 1):
        prob = pmf(k)
        if prob <= observed:
            p += prob
    return float(p)


def odds_ratio(detected_a, missed_a, detected_b, missed_b) -> float:
    """Odds ratio of detection between two groups.

    Any zero cell switches to the Haldane-Anscombe form: 0.5 is added to
    every cell, which keeps the ratio finite.
    """
    _check_counts(detected_a, missed_a, detected_b, missed_b)
    cells = (detected_a, missed_a, detected_b, missed_b)
    if min(cells) == 0:
        a, b, c, d = (v + 0.5 for v in cells)
    else:
        a, b, c, d = cells
    return (a * d) / (b * c)


def odds_ratio_corrected(detected_a, missed_a, detected_b, missed_b) -> bool:
    """True when odds_ratio applied the zero-cell correction."""
    _check_counts(detected_a, missed_a, detected_b, missed_b)
    return min(detected_a, missed_a, detected_b, missed_b) == 0


def compare_groups(flags_a, flags_b) -> dict:
    """Fisher p and odds ratio between two groups of detection flags.

    Each argument is an iterable of 0/1 flags pooled over (suite, version)
    pairs.  Returns a JSON-ready record with the raw counts.
    """
    list_a = [int(f) for f in flags_a]
    list_b = [int(f) for f in flags_b]
    detected_a, missed_a = sum(list_a), len(list_a) - sum(list_a)
    detected_b, missed_b = sum(list_b), len(list_b) - sum(list_b)
    return {
        "detected_a": detected_a,
        "missed_a": missed_a,
        "detected_b": detected_b,
        "missed_b": missed_b,
        "fisher_p": fisher_exact(detected_a, missed_a, detected_b, missed_b),
        "odds_ratio": odds_ratio(detected_a, missed_a, detected_b, missed_b),
        "odds_ratio_corrected": odds_ratio_corrected(
            detected_a, missed_a, detected_b, missed_b
        ),
    }
