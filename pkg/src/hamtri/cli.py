"""Command-line interface: validation, censuses, witness pipeline, exact
counts and the three canned experiments (conjecture, lemma7, scaling).

Machine-readable CSV/JSON goes to standard output or --out files; progress
chatter goes to standard error.  Exit codes: 0 success, 1 a verdict or
assertion failed (invalid triangulation, counter disagreement, a found
counterexample), 2 usage or IO errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import generators
from .connectivity import (ConnectivityError, enumerate_4_separators,
                           enumerate_separating_cycles)
from .embedding import (ParseError, SignedEmbedding, parse_planar_code,
                        parse_signed_rotation, serialize_signed_rotation,
                        validate_triangulation)
from .hamilton import CountOverflowError, count_hc_backtrack, count_hc_dp
from .witness import PipelineError, run_pipeline

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def load_embeddings(path: str, fmt: str = "auto") -> list[SignedEmbedding]:
    data = Path(path).read_bytes()
    if fmt == "auto":
        if data.startswith(b">>planar_code<<"):
            fmt = "planar_code"
        else:
            try:
                data.decode("ascii")
                fmt = "rot"
            except UnicodeDecodeError:
                fmt = "planar_code"
    if fmt == "planar_code":
        return parse_planar_code(data)
    if fmt == "rot":
        return [parse_signed_rotation(data.decode("ascii"))]
    raise ParseError(f"unknown format {fmt!r}")


def _parse_edge_list(text: str) -> list[tuple[int, int]]:
    edges = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        a, _, b = tok.partition("-")
        edges.append((int(a), int(b)))
    return edges


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    embeddings = load_embeddings(args.input, args.format)
    all_ok = True
    for i, emb in enumerate(embeddings):
        rep = validate_triangulation(emb)
        verdict = "yes" if rep.ok else "no"
        print(f"graph {i}: n={emb.n} m={emb.m} genus={rep.genus} triangulation: {verdict}")
        for v in rep.violations:
            print(f"  violation: {v}")
        all_ok &= rep.ok
    return EXIT_OK if all_ok else EXIT_VERDICT


CENSUS_COLUMNS = ["index", "n", "m", "genus", "four_separators_all",
                  "four_separators_minimal", "separating_3cycles",
                  "separating_4cycles", "c", "cn", "threshold_ok"]


def cmd_census(args) -> int:
    embeddings = load_embeddings(args.input, args.format)
    c = _parse_fraction(args.c)
    writer = csv.DictWriter(sys.stdout, fieldnames=CENSUS_COLUMNS)
    writer.writeheader()
    cycle_ks = sorted(int(k) for k in args.cycles.split(",")) if args.cycles else []
    exit_code = EXIT_OK
    for i, emb in enumerate(embeddings):
        rep = validate_triangulation(emb)
        if not rep.ok:
            _progress(f"graph {i}: not a triangulation, skipped ({rep.violations})")
            exit_code = EXIT_VERDICT
            continue
        row = {"index": i, "n": emb.n, "m": emb.m, "genus": rep.genus,
               "c": str(c), "four_separators_all": "",
               "four_separators_minimal": "", "separating_3cycles": "",
               "separating_4cycles": "", "cn": "", "threshold_ok": ""}
        if args.separators:
            try:
                seps = enumerate_4_separators(emb.graph, budget=args.budget)
            except ConnectivityError as exc:
                _progress(f"graph {i}: {exc}")
                exit_code = EXIT_VERDICT
                writer.writerow(row)
                continue
            row["four_separators_all"] = seps.total
            row["four_separators_minimal"] = seps.minimal_total
            cn = c * emb.n
            row["cn"] = float(cn)
            row["threshold_ok"] = seps.total <= cn
        for k in cycle_ks:
            row[f"separating_{k}cycles"] = len(enumerate_separating_cycles(emb, k))
        writer.writerow(row)
    return exit_code


COUNT_COLUMNS = ["index", "n", "m", "avoided", "count_backtrack", "count_dp",
                 "agree", "elapsed_backtrack", "elapsed_dp"]


def cmd_count(args) -> int:
    embeddings = load_embeddings(args.input, args.format)
    avoid = _parse_edge_list(args.avoid) if args.avoid else []
    writer = csv.DictWriter(sys.stdout, fieldnames=COUNT_COLUMNS)
    writer.writeheader()
    exit_code = EXIT_OK
    for i, emb in enumerate(embeddings):
        g = emb.graph.delete_edges(avoid) if avoid else emb.graph
        row = {"index": i, "n": emb.n, "m": emb.m,
               "avoided": ";".join(f"{u}-{v}" for u, v in avoid),
               "count_backtrack": "", "count_dp": "", "agree": "",
               "elapsed_backtrack": "", "elapsed_dp": ""}
        try:
            if args.method in ("both", "bt"):
                res = count_hc_backtrack(g)
                row["count_backtrack"] = res.value
                row["elapsed_backtrack"] = f"{res.elapsed:.3f}"
            if args.method in ("both", "dp"):
                res = count_hc_dp(g, limit=args.dp_limit)
                row["count_dp"] = res.value
                row["elapsed_dp"] = f"{res.elapsed:.3f}"
        except (CountOverflowError, ValueError) as exc:
            _progress(f"graph {i}: {exc}")
            exit_code = EXIT_VERDICT
            writer.writerow(row)
            continue
        if args.method == "both":
            agree = row["count_backtrack"] == row["count_dp"]
            row["agree"] = agree
            if not agree:
                _progress(f"graph {i}: counter disagreement! "
                          f"bt={row['count_backtrack']} dp={row['count_dp']}")
                exit_code = EXIT_VERDICT
        writer.writerow(row)
    return exit_code


def cmd_witness(args) -> int:
    embeddings = load_embeddings(args.input, args.format)
    c = _parse_fraction(args.c)
    reports = []
    exit_code = EXIT_OK
    for i, emb in enumerate(embeddings):
        try:
            rep = run_pipeline(emb, c=c, check_f_budget=args.check_f, seed=args.seed)
        except PipelineError as exc:
            _progress(f"graph {i}: {exc}")
            exit_code = EXIT_VERDICT
            reports.append({"schema": 1, "error": str(exc)})
            continue
        d = rep.to_json_dict()
        d["index"] = i
        if not rep.conditions.all_ok or (rep.lemma7 and not rep.lemma7.ok):
            exit_code = EXIT_VERDICT
        reports.append(d)
    payload = reports[0] if len(reports) == 1 else {"schema": 1, "reports": reports}
    text = json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return exit_code


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

def _write_csv(path: Path, columns: list[str], rows: list[dict]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)


def _conjecture_instance(task) -> dict:
    kind, n, seed = task
    if kind == "double_wheel":
        emb = generators.double_wheel(n)
    else:
        emb = generators.random_triangulation_4c(n, seed=seed)
    count = count_hc_backtrack(emb.graph).value
    bound = 2 * (n - 2) * (n - 4)
    return {"kind": kind, "n": n, "seed": seed, "count": count, "bound": bound,
            "equality": count == bound, "violation": count < bound}


def _pmap(fn, tasks, jobs: int):
    if jobs <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _experiment_conjecture(args, outdir: Path) -> int:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else list(range(6, 12))
    if max(sizes) > 11:
        _progress("warning: conjecture experiment is intended for n <= 11")
    tasks = [("double_wheel", n, 0) for n in sizes]
    for n in sizes:
        for j in range(args.samples):
            tasks.append(("random", n, args.seed + j))
    _progress(f"conjecture: {len(tasks)} instances")
    rows = _pmap(_conjecture_instance, tasks, args.jobs)
    rows.sort(key=lambda r: (r["n"], r["kind"], r["seed"]))
    _write_csv(outdir / "conjecture.csv",
               ["kind", "n", "seed", "count", "bound", "equality", "violation"], rows)
    violations = [r for r in rows if r["violation"]]
    equalities = [r for r in rows if r["equality"]]
    summary = {"schema": 1, "experiment": "conjecture", "instances": len(rows),
               "violations": len(violations),
               "equality_cases": [{"kind": r["kind"], "n": r["n"], "seed": r["seed"]}
                                  for r in equalities]}
    (outdir / "conjecture_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    if any(r["kind"] == "double_wheel" and not r["equality"] for r in rows):
        _progress("double wheel failed the equality case!")
        return EXIT_VERDICT
    return EXIT_VERDICT if violations else EXIT_OK


def _lemma7_instance(task) -> dict:
    label, text, budget, seed = task
    emb = parse_signed_rotation(text)
    rep = run_pipeline(emb, check_f_budget=budget, seed=seed)
    s = rep.witness_set
    out = {"label": label, "n": emb.n, "genus": rep.genus, "S_size": len(s),
           "choices_checked": 0, "exhaustive": True,
           "connectivity_failures": 0, "hamiltonicity_failures": 0,
           "conditions_ok": rep.conditions.all_ok}
    if rep.lemma7 is not None:
        out["choices_checked"] = rep.lemma7.checked
        out["exhaustive"] = rep.lemma7.exhaustive
        out["connectivity_failures"] = len(rep.lemma7.connectivity_failures)
        out["hamiltonicity_failures"] = len(rep.lemma7.hamiltonicity_failures)
    return out


def lemma7_corpus(instances: int, seed: int, max_n: int = 14) -> list[tuple[str, SignedEmbedding]]:
    """Seeded 4-connected corpus for the deletion-lemma experiment.

    Random flip walks over a size sweep, with every fifth instance driven
    toward few separating 4-cycles so nonempty witness sets occur, plus
    the K6 projective-plane fixture.
    """
    corpus = []
    sizes = list(range(8, max_n + 1))
    for i in range(instances):
        n = sizes[i % len(sizes)]
        s = seed + i
        if i % 5 == 4 and n >= 12:
            emb = generators.low_separator_family(n, seed=s)
            corpus.append((f"lowsep-n{n}-s{s}", emb))
        else:
            emb = generators.random_triangulation_4c(n, seed=s)
            corpus.append((f"random-n{n}-s{s}", emb))
    corpus.append(("k6-projective", generators.k6_projective()))
    return corpus


def _experiment_lemma7(args, outdir: Path) -> int:
    corpus = lemma7_corpus(args.instances, args.seed)
    tasks = [(label, serialize_signed_rotation(emb), args.budget, args.seed)
             for label, emb in corpus]
    _progress(f"lemma7: {len(tasks)} instances")
    rows = _pmap(_lemma7_instance, tasks, args.jobs)
    rows.sort(key=lambda r: r["label"])
    _write_csv(outdir / "lemma7.csv",
               ["label", "n", "genus", "S_size", "choices_checked", "exhaustive",
                "connectivity_failures", "hamiltonicity_failures", "conditions_ok"], rows)
    bad = [r for r in rows
           if r["connectivity_failures"] or r["hamiltonicity_failures"]
           or not r["conditions_ok"]]
    summary = {"schema": 1, "experiment": "lemma7", "instances": len(rows),
               "checked_choice_sets": sum(r["choices_checked"] for r in rows),
               "nonempty_witness_instances": sum(1 for r in rows if r["S_size"] > 0),
               "counterexamples": len(bad)}
    (outdir / "lemma7_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return EXIT_VERDICT if bad else EXIT_OK


def _scaling_instance(task) -> dict:
    n, seed, dp_limit = task
    emb = generators.low_separator_family(n, seed=seed)
    g = emb.graph
    seps = enumerate_4_separators(g)
    sep4 = len(enumerate_separating_cycles(emb, 4))
    rep = run_pipeline(emb)
    count = (count_hc_dp(g, limit=dp_limit) if g.n <= dp_limit
             else count_hc_backtrack(g)).value
    if n <= 14:  # cheap cross-check range
        assert count == count_hc_backtrack(g).value
    return {"n": n, "seed": seed, "separating_4cycles": sep4,
            "four_separators": seps.total, "S_size": len(rep.witness_set),
            "count": count, "log2_count": math.log2(count) if count else float("-inf")}


def _experiment_scaling(args, outdir: Path) -> int:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else [12, 14, 16, 18, 20]
    tasks = [(n, args.seed, args.dp_limit) for n in sizes]
    _progress(f"scaling: sizes {sizes}")
    rows = _pmap(_scaling_instance, tasks, args.jobs)
    rows.sort(key=lambda r: r["n"])
    _write_csv(outdir / "scaling.csv",
               ["n", "seed", "separating_4cycles", "four_separators", "S_size",
                "count", "log2_count"], rows)
    increasing = all(a["log2_count"] < b["log2_count"] for a, b in zip(rows, rows[1:]))
    floor_ok = all(r["count"] >= 2 for r in rows if r["S_size"] > 0)
    summary = {"schema": 1, "experiment": "scaling", "sizes": sizes,
               "log2_strictly_increasing": increasing,
               "nonempty_S_count_floor_ok": floor_ok}
    (outdir / "scaling_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK if increasing and floor_ok else EXIT_VERDICT


def cmd_experiment(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    if args.name == "conjecture":
        return _experiment_conjecture(args, outdir)
    if args.name == "lemma7":
        return _experiment_lemma7(args, outdir)
    if args.name == "scaling":
        return _experiment_scaling(args, outdir)
    raise ValueError(f"unknown experiment {args.name!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamtri",
        description="Triangulation validation, separator censuses, witness "
                    "pipeline and exact hamiltonian cycle counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="input file (planar code or signed rotation text)")
        p.add_argument("--format", choices=["auto", "planar_code", "rot"], default="auto")

    p = sub.add_parser("validate", help="validate triangulations")
    add_input(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("census", help="separator and separating-cycle census (CSV)")
    add_input(p)
    p.add_argument("--c", default="1/400", help="rational threshold constant (default 1/400)")
    p.add_argument("--separators", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--cycles", default="3,4", help="separating cycle lengths, e.g. '3,4'")
    p.add_argument("--budget", type=int, default=50,
                   help="max n for brute-force separator sweep")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("count", help="exact hamiltonian cycle counts (CSV)")
    add_input(p)
    p.add_argument("--method", choices=["both", "bt", "dp"], default="both")
    p.add_argument("--avoid", default="", help="edges to delete, e.g. '0-1,2-3'")
    p.add_argument("--dp-limit", type=int, default=24)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("witness", help="run the witness pipeline (JSON report)")
    add_input(p)
    p.add_argument("--c", default="1/400", help="rational constant below 1/324")
    p.add_argument("--check-f", type=int, default=None, metavar="BUDGET",
                   help="also check G - F over all/sampled edge choices")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("experiment", help="canned experiments (CSV + JSON summary)")
    p.add_argument("name", choices=["conjecture", "lemma7", "scaling"])
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sizes", default=None, help="comma-separated vertex counts")
    p.add_argument("--samples", type=int, default=3,
                   help="random instances per size (conjecture)")
    p.add_argument("--instances", type=int, default=50,
                   help="instance count (lemma7)")
    p.add_argument("--budget", type=int, default=100_000,
                   help="edge-choice enumeration budget (lemma7)")
    p.add_argument("--dp-limit", type=int, default=24)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ParseError) as exc:
        _progress(f"error: {exc}")
        return EXIT_USAGE
    except (ConnectivityError, PipelineError, ValueError) as exc:
        _progress(f"error: {exc}")
        return EXIT_VERDICT


if __name__ == "__main__":
    sys.exit(main())
