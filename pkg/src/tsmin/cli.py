"""Command-line pipeline: prepare, similarity, minimize, evaluate, all.

Stages communicate through versioned JSON artifacts in one output directory,
so any stage can be rerun or inspected in isolation:

    tests.json                      roster of preprocessed test cases
    asts/**/<Stem>#<method>.ast.json   one tree per test case
    simmatrix-<measure>.json        pairwise similarity per measure
    minimized-*.json                one selected subset per run/seed
    eval-report.json                fault-detection evaluation

Exit codes: 0 success, 1 configuration or data problem, 2 internal error.
Errors and warnings go to stderr as JSON records, one per line.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import re
import sys
import time
from pathlib import Path

from . import __version__
from . import evaluation
from . import matrix as matrix_mod
from . import search
from . import tree as tree_model
from .config import ALGORITHMS, resolve_config
from .errors import ConfigError, DataError, StalenessError, TsminError
from .frontend import PreprocessConfig, extract_test_methods, preprocess, to_ast
from .similarity import MEASURES

TESTS_FORMAT = "tsmin-tests"
TESTS_VERSION = 1
MINIMIZED_FORMAT = "tsmin-minimized"
MINIMIZED_VERSION = 1
REPORT_FORMAT = "tsmin-evalreport"
REPORT_VERSION = 1


def _emit(level: str, kind: str, message: str, **extra) -> None:
    record = {"level": level, "kind": kind, "message": message}
    record.update({k: v for k, v in extra.items() if v is not None})
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def _write_json(path, doc) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def _read_json(path, what: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read {what} {path}: {exc}") from exc
    except ValueError as exc:
        raise DataError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DataError(f"{path}: top level must be an object")
    return doc


def _meta(no_timing: bool, timing: dict) -> dict:
    meta = {"tool_version": __version__}
    if not no_timing:
        meta["timing"] = timing
    return meta


# -- prepare ------------------------------------------------------------------


def _prepare_file(task):
    """Worker: extract and normalize every test method of one source file."""
    corpus, rel, rename_target, keep_assertion_args = task
    config = PreprocessConfig(
        rename_target=rename_target, keep_assertion_args=keep_assertion_args
    )
    path = Path(corpus) / rel
    results = []
    for method in extract_test_methods(path):
        normalized = preprocess(method.source, config, file=str(path))
        tree = to_ast(normalized, file=str(path))
        results.append(
            {
                "method": method.name,
                "line": method.line,
                "preprocessed_source": normalized,
                "ast_bytes": tree_model.serialize(tree),
                "digest": tree.digest,
            }
        )
    return results


def do_prepare(corpus, out, cfg, no_timing: bool) -> int:
    corpus = Path(corpus)
    out = Path(out)
    if not corpus.is_dir():
        raise ConfigError(f"corpus directory {corpus} does not exist")
    rels = sorted(
        p.relative_to(corpus).as_posix() for p in corpus.rglob("*.java") if p.is_file()
    )
    tasks = [
        (str(corpus), rel, cfg.rename_target, cfg.keep_assertion_args) for rel in rels
    ]
    started = time.perf_counter()
    if cfg.jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=cfg.jobs) as pool:
            per_file = pool.map(_prepare_file, tasks)
    else:
        per_file = [_prepare_file(task) for task in tasks]
    seconds = time.perf_counter() - started

    out.mkdir(parents=True, exist_ok=True)
    entries = []
    seen = {}
    for rel, methods in zip(rels, per_file):
        stem = Path(rel).stem
        rel_dir = Path(rel).parent.as_posix()
        for item in methods:
            test_id = f"{stem}#{item['method']}"
            if test_id in seen:
                raise DataError(
                    f"duplicate test id {test_id!r} from {rel} and {seen[test_id]}"
                )
            seen[test_id] = rel
            name = f"{test_id}.ast.json"
            ast_rel = f"asts/{name}" if rel_dir == "." else f"asts/{rel_dir}/{name}"
            ast_path = out / ast_rel
            ast_path.parent.mkdir(parents=True, exist_ok=True)
            ast_path.write_bytes(item["ast_bytes"])
            entries.append(
                {
                    "id": test_id,
                    "file": rel,
                    "method": item["method"],
                    "line": item["line"],
                    "digest": item["digest"],
                    "ast_path": ast_rel,
                    "preprocessed_source": item["preprocessed_source"],
                }
            )
    doc = {
        "format": TESTS_FORMAT,
        "version": TESTS_VERSION,
        "config": cfg.echo(),
        "tests": entries,
        "meta": _meta(no_timing, {"ast_seconds": seconds}),
    }
    _write_json(out / "tests.json", doc)
    if not entries:
        _emit("warning", "empty-corpus", f"no test cases found under {corpus}")
    print(
        f"prepared {len(entries)} test cases from {len(rels)} files "
        f"-> {out / 'tests.json'}"
    )
    if not no_timing:
        print(f"ast time: {seconds:.3f}s")
    return len(entries)


def load_roster(path):
    """tests.json -> validated entry list."""
    doc = _read_json(path, "roster")
    if doc.get("format") != TESTS_FORMAT:
        raise DataError(f"{path}: format is not {TESTS_FORMAT!r}; run prepare first")
    if doc.get("version") != TESTS_VERSION:
        raise DataError(f"{path}: unsupported version {doc.get('version')!r}")
    tests = doc.get("tests")
    if not isinstance(tests, list):
        raise DataError(f"{path}: tests must be a list")
    seen = set()
    for pos, entry in enumerate(tests):
        ok = isinstance(entry, dict) and all(
            isinstance(entry.get(key), str) for key in ("id", "digest", "ast_path")
        )
        if not ok:
            raise DataError(
                f"{path}: tests[{pos}] needs string id, digest, and ast_path"
            )
        if entry["id"] in seen:
            raise DataError(f"{path}: duplicate test id {entry['id']!r}")
        seen.add(entry["id"])
    return tests


def _load_trees(out, tests):
    roster_trees = []
    for entry in tests:
        path = Path(out) / entry["ast_path"]
        if not path.is_file():
            raise DataError(
                f"missing AST artifact for test {entry['id']!r}: {path}; "
                f"re-run prepare"
            )
        tree = tree_model.deserialize(path.read_bytes())
        if tree.digest != entry["digest"]:
            raise StalenessError(
                f"AST artifact for test {entry['id']!r} does not match the roster "
                f"digest; re-run prepare"
            )
        roster_trees.append((entry["id"], tree))
    return roster_trees


# -- similarity ---------------------------------------------------------------


def _load_cache(cache, measure):
    if not cache:
        return None
    path = Path(cache)
    candidate = path / f"simmatrix-{measure}.json" if path.is_dir() else path
    if not candidate.is_file():
        _emit(
            "warning",
            "cache",
            f"cache file {candidate} not found; computing from scratch",
        )
        return None
    return matrix_mod.load(candidate)


def do_similarity(out, cfg, cache, no_timing: bool) -> None:
    out = Path(out)
    tests = load_roster(out / "tests.json")
    roster_trees = _load_trees(out, tests)
    for measure in cfg.measures:
        prior = _load_cache(cache, measure)
        mat, stats = matrix_mod.build(
            roster_trees,
            measure,
            prior=prior,
            jobs=cfg.jobs,
            on_warning=lambda msg: _emit("warning", "cache", msg),
        )
        # Counts are reported, never persisted: a cached rebuild must produce
        # exactly the same file as a fresh one.
        mat.meta = {"tool_version": __version__}
        if not no_timing:
            mat.meta["timing"] = {"scoring_seconds": stats.seconds}
        target = out / f"simmatrix-{measure}.json"
        matrix_mod.save(mat, target)
        print(
            f"{measure}: computed {stats.recomputed} pairs, reused {stats.reused} "
            f"-> {target}"
        )
        if not no_timing:
            print(f"scoring time: {stats.seconds:.3f}s")


# -- minimize -----------------------------------------------------------------

_SEEDS_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def _parse_seeds(text: str):
    match = _SEEDS_RE.match(text)
    if not match:
        raise ConfigError(f"--seeds must look like A..B, got {text!r}")
    first, last = int(match.group(1)), int(match.group(2))
    if first > last:
        raise ConfigError(f"--seeds range {text!r} is empty")
    return list(range(first, last + 1))


def _load_matrix(out, measure):
    path = Path(out) / f"simmatrix-{measure}.json"
    if not path.is_file():
        raise DataError(f"no similarity matrix for {measure!r} at {path}; run similarity")
    return matrix_mod.load(path)


def _minimized_name(result) -> str:
    parts = [f"minimized-{result.algorithm}"]
    if result.measures:
        parts.append("+".join(result.measures))
    parts.append(f"b{result.budget_fraction:g}")
    parts.append(f"s{result.seed}")
    return "-".join(parts) + ".json"


def _minimized_doc(result, ids, cfg, no_timing: bool) -> dict:
    doc = {
        "format": MINIMIZED_FORMAT,
        "version": MINIMIZED_VERSION,
        "algorithm": result.algorithm,
        "measures": list(result.measures),
        "seed": result.seed,
        "budget_fraction": result.budget_fraction,
        "budget_size": result.budget_size,
        "roster_size": result.roster_size,
        "selected_indices": list(result.selected),
        "selected_ids": [ids[i] for i in result.selected],
        "fitness": list(result.fitness),
        "trace": list(result.trace),
        "generations": result.generations,
        "evaluations": result.evaluations,
        "config": cfg.echo(seed=result.seed),
        "meta": _meta(no_timing, {"seconds": result.seconds}),
    }
    if result.front:
        doc["front"] = [
            {
                "indices": list(member.indices),
                "ids": [ids[i] for i in member.indices],
                "objectives": list(member.objectives),
            }
            for member in result.front
        ]
        doc["designated"] = {
            "indices": list(result.designated.indices),
            "ids": [ids[i] for i in result.designated.indices],
            "objectives": list(result.designated.objectives),
        }
    return doc


def do_minimize(out, cfg, seeds, no_timing: bool):
    out = Path(out)
    tests = load_roster(out / "tests.json")
    ids = [entry["id"] for entry in tests]
    roster_pairs = [(entry["id"], entry["digest"]) for entry in tests]

    if cfg.algorithm == "ga":
        if len(cfg.measures) != 1:
            raise ConfigError(
                f"ga needs exactly one measure, got {len(cfg.measures)}"
            )
        matrices = (_load_matrix(out, cfg.measures[0]),)
    elif cfg.algorithm == "nsga2":
        if len(cfg.measures) != 2:
            raise ConfigError(
                f"nsga2 needs exactly two measures, got {len(cfg.measures)}"
            )
        matrices = tuple(_load_matrix(out, m) for m in cfg.measures)
    else:
        matrices = ()
    for mat in matrices:
        mat.ensure_matches(roster_pairs)

    written = []
    for seed in seeds:
        search_config = cfg.to_search_config(seed)
        if cfg.algorithm == "ga":
            result = search.run_ga(matrices[0], search_config)
        elif cfg.algorithm == "nsga2":
            result = search.run_nsga2(matrices, search_config)
        else:
            result = search.run_random(len(ids), search_config)
        target = out / _minimized_name(result)
        _write_json(target, _minimized_doc(result, ids, cfg, no_timing))
        written.append(target)
        print(
            f"seed {seed}: selected {result.budget_size} of {result.roster_size} "
            f"tests -> {target}"
        )
    return written


# -- evaluate -----------------------------------------------------------------


def _load_minimized(path) -> dict:
    doc = _read_json(path, "minimized suite")
    if doc.get("format") != MINIMIZED_FORMAT:
        raise DataError(f"{path}: format is not {MINIMIZED_FORMAT!r}")
    if doc.get("version") != MINIMIZED_VERSION:
        raise DataError(f"{path}: unsupported version {doc.get('version')!r}")
    ids = doc.get("selected_ids")
    if not isinstance(ids, list) or not all(isinstance(t, str) for t in ids):
        raise DataError(f"{path}: selected_ids must be a list of test ids")
    return doc


def _suite_records(fault_map, suite_paths, roster_ids):
    records = []
    flags = []
    for path in suite_paths:
        doc = _load_minimized(path)
        suite_ids = doc["selected_ids"]
        result = evaluation.compute_fdr(
            fault_map,
            {version.id: suite_ids for version in fault_map.versions},
            roster_ids,
        )
        records.append(
            {
                "label": Path(path).stem,
                "algorithm": doc.get("algorithm"),
                "seed": doc.get("seed"),
                "size": len(suite_ids),
                "fdr": result.fdr,
                "detected": [[vid, flag] for vid, flag in result.flags],
            }
        )
        flags.extend(flag for _, flag in result.flags)
    return records, flags


def do_evaluate(
    out, roster_path, faultmap, suite_paths, compare_paths, report_path, cfg, no_timing
):
    out = Path(out)
    if not suite_paths:
        raise ConfigError("at least one --suite file is required")
    tests = load_roster(roster_path if roster_path else out / "tests.json")
    roster_ids = [entry["id"] for entry in tests]
    fault_map = evaluation.load_fault_map(faultmap)

    started = time.perf_counter()
    records, flags = _suite_records(fault_map, suite_paths, roster_ids)
    report = {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "fault_versions": [version.id for version in fault_map.versions],
        "suites": records,
        "aggregate": {"fdr": evaluation.aggregate_stats([r["fdr"] for r in records])},
        "config": cfg.echo(),
    }
    if compare_paths:
        baseline_records, baseline_flags = _suite_records(
            fault_map, compare_paths, roster_ids
        )
        report["comparison"] = dict(
            evaluation.compare_groups(flags, baseline_flags),
            baseline_labels=[r["label"] for r in baseline_records],
            baseline_fdr=evaluation.aggregate_stats(
                [r["fdr"] for r in baseline_records]
            ),
        )
    report["meta"] = _meta(no_timing, {"seconds": time.perf_counter() - started})

    target = Path(report_path) if report_path else out / "eval-report.json"
    _write_json(target, report)

    width = max([len(r["label"]) for r in records] + [len("suite")])
    print(f"{'suite':<{width}}  {'seed':>6}  {'size':>4}  {'FDR':>6}")
    for record in records:
        seed = record["seed"] if record["seed"] is not None else "-"
        print(
            f"{record['label']:<{width}}  {seed!s:>6}  {record['size']:>4}  "
            f"{record['fdr']:>6.3f}"
        )
    stats = report["aggregate"]["fdr"]
    print(
        f"aggregate FDR over {len(records)} suites: mean {stats['mean']:.3f}, "
        f"median {stats['median']:.3f}, min {stats['min']:.3f}, max {stats['max']:.3f}"
    )
    if "comparison" in report:
        comp = report["comparison"]
        corrected = " (zero-cell corrected)" if comp["odds_ratio_corrected"] else ""
        print(
            f"vs baseline: Fisher p = {comp['fisher_p']:.6g}, "
            f"odds ratio = {comp['odds_ratio']:.6g}{corrected}"
        )
    print(f"report -> {target}")
    return report


# -- argument plumbing ---------------------------------------------------------


def _common_flags(parser, *, out_required=True):
    parser.add_argument(
        "--config", help="JSON config file; the TSMIN_CONFIG env var is the fallback"
    )
    parser.add_argument(
        "--out", required=out_required, help="artifact directory for this pipeline"
    )
    parser.add_argument(
        "--jobs", type=int, help="worker processes for prepare and similarity"
    )
    parser.add_argument(
        "--no-timing",
        action="store_true",
        help="omit timing fields from output artifacts",
    )


def _search_flags(parser):
    parser.add_argument("--measure", action="append", choices=MEASURES)
    parser.add_argument("--algorithm", choices=ALGORITHMS)
    parser.add_argument("--budget", type=float, help="fraction of the suite to keep")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--seeds", help="inclusive seed range A..B, one run per seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsmin",
        description="Black-box test suite minimization via AST similarity search.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_prepare = sub.add_parser(
        "prepare", help="extract test methods, normalize them, and persist ASTs"
    )
    _common_flags(p_prepare)
    p_prepare.add_argument("--corpus", required=True, help="directory of .java files")
    p_prepare.set_defaults(func=cmd_prepare)

    p_similarity = sub.add_parser(
        "similarity", help="score every test pair for the requested measures"
    )
    _common_flags(p_similarity)
    p_similarity.add_argument("--measure", action="append", choices=MEASURES)
    p_similarity.add_argument(
        "--cache", help="prior matrix file or directory to reuse scores from"
    )
    p_similarity.set_defaults(func=cmd_similarity)

    p_minimize = sub.add_parser("minimize", help="search for a diverse fixed-size subset")
    _common_flags(p_minimize)
    _search_flags(p_minimize)
    p_minimize.set_defaults(func=cmd_minimize)

    p_evaluate = sub.add_parser(
        "evaluate", help="compute fault detection rates for minimized suites"
    )
    _common_flags(p_evaluate)
    p_evaluate.add_argument("--faultmap", required=True, help="faultmap.json path")
    p_evaluate.add_argument(
        "--suite", action="append", help="minimized suite file (repeatable)"
    )
    p_evaluate.add_argument(
        "--compare",
        action="append",
        help="baseline minimized suite file for Fisher/odds-ratio comparison",
    )
    p_evaluate.add_argument("--roster", help="roster path; default <out>/tests.json")
    p_evaluate.add_argument("--report", help="report path; default <out>/eval-report.json")
    p_evaluate.set_defaults(func=cmd_evaluate)

    p_all = sub.add_parser("all", help="run the whole pipeline in one call")
    _common_flags(p_all)
    _search_flags(p_all)
    p_all.add_argument("--corpus", required=True, help="directory of .java files")
    p_all.add_argument("--cache", help="prior matrix file or directory")
    p_all.add_argument("--faultmap", help="optional faultmap.json for evaluation")
    p_all.set_defaults(func=cmd_all)

    return parser


def _resolve_seeds(args, cfg):
    if getattr(args, "seeds", None):
        if getattr(args, "seed", None) is not None:
            raise ConfigError("--seed and --seeds are mutually exclusive")
        return _parse_seeds(args.seeds)
    return [cfg.seed]


def cmd_prepare(args, cfg) -> int:
    do_prepare(args.corpus, args.out, cfg, args.no_timing)
    return 0


def cmd_similarity(args, cfg) -> int:
    do_similarity(args.out, cfg, args.cache, args.no_timing)
    return 0


def cmd_minimize(args, cfg) -> int:
    do_minimize(args.out, cfg, _resolve_seeds(args, cfg), args.no_timing)
    return 0


def cmd_evaluate(args, cfg) -> int:
    do_evaluate(
        args.out,
        args.roster,
        args.faultmap,
        args.suite or [],
        args.compare or [],
        args.report,
        cfg,
        args.no_timing,
    )
    return 0


def cmd_all(args, cfg) -> int:
    do_prepare(args.corpus, args.out, cfg, args.no_timing)
    do_similarity(args.out, cfg, args.cache, args.no_timing)
    written = do_minimize(args.out, cfg, _resolve_seeds(args, cfg), args.no_timing)
    if args.faultmap:
        do_evaluate(
            args.out, None, args.faultmap, written, [], None, cfg, args.no_timing
        )
    return 0


def _config_from_args(args):
    overrides = {
        "budget": getattr(args, "budget", None),
        "measures": getattr(args, "measure", None),
        "algorithm": getattr(args, "algorithm", None),
        "seed": getattr(args, "seed", None),
        "jobs": getattr(args, "jobs", None),
    }
    path = getattr(args, "config", None) or os.environ.get("TSMIN_CONFIG")
    return resolve_config(path, overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return args.func(args, cfg)
    except TsminError as exc:
        _emit(
            "error",
            exc.kind,
            str(exc),
            file=getattr(exc, "file", None),
            line=getattr(exc, "line", None),
            col=getattr(exc, "col", None),
        )
        return exc.exit_code
    except Exception as exc:  # last-resort boundary; anything here is a bug
        _emit("error", "internal", f"{type(exc).__name__}: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
