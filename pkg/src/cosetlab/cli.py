"""Command-line entry point: ``cosetlab {analyze,structure,rep,synth,sweep}``.

Exit codes: 0 success, 1 an enabled check or assertion failed, 2 bad
configuration or arguments, 3 an instance could not be resolved.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .exceptions import CosetLabError
from .generators import InstanceSpec
from .report import DEFAULT_CHECKS, SCHEMA_VERSION, analyze, dumps
from .sets import parse_set_literal
from .structure import as_fraction, largest_coset_intersection, theorem_a_search, theorem_b_search, wn_representation_verify
from .synthesis import boolean_synthesis

log = logging.getLogger("cosetlab")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_RESOLVE = 0, 1, 2, 3
CSV_COLUMNS = ("instance_id", "check", "passed", "detail")

DEFAULT_OPTIONS = {
    "max_ladder": 6,
    "eps": "1",
    "checks": list(DEFAULT_CHECKS),
    "structure": True,
    "theorem_b": True,
    "max_complexity": 3,
    "pareto": True,
    "record_timings": False,
}


class ConfigError(CosetLabError):
    pass


class ResolveError(CosetLabError):
    pass


def _fmt(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, (list, tuple)):
        return "[" + " ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _detail(values):
    return ";".join(f"{k}={_fmt(v)}" for k, v in values.items())


# --- assertions --------------------------------------------------------------

def _get(report, *path):
    cur = report
    for key in path:
        if cur is None:
            return None
        cur = cur.get(key)
    return cur


ASSERTIONS = {
    # name: (report path, comparison kind)
    "sidon": (("stability", "sidon"), "eq"),
    "max_ladder": (("stability", "max_ladder"), "eq"),
    "wn_degree": (("stability", "wn_degree"), "eq"),
    "wn_degree_at_least": (("stability", "wn_degree"), "ge"),
    "doubling": (("growth", "doubling"), "eq_frac"),
    "tripling": (("growth", "tripling"), "eq_frac"),
    "two_stable": (("dichotomy", "two_stable"), "eq"),
    "coset_or_empty": (("dichotomy", "coset_or_empty"), "eq"),
    "empirical_n": (("structures", "empirical_n"), "eq"),
    "theorem_b_n": (("theorem_b", "n"), "eq"),
}


def evaluate_assertions(report, expected):
    rows = []
    for name, want in expected.items():
        path, kind = ASSERTIONS[name]
        got = _get(report, *path)
        if kind == "eq_frac":
            want_v = as_fraction(want)
            ok = got is not None and got == want_v
        elif kind == "ge":
            want_v = want
            ok = got is not None and got >= want
        else:
            want_v = want
            ok = got == want
        rows.append((f"assert_{name}", ok, _detail({"expected": want_v, "actual": got})))
    return rows


# --- configuration -----------------------------------------------------------

def load_config(path):
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict) or not isinstance(cfg.get("instances"), list):
        raise ConfigError("config must be an object with an 'instances' list")
    if cfg.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {cfg.get('schema_version')}")
    defaults = dict(DEFAULT_OPTIONS)
    unknown = set(cfg.get("defaults", {})) - set(DEFAULT_OPTIONS)
    if unknown:
        raise ConfigError(f"unknown default options {sorted(unknown)}")
    defaults.update(cfg.get("defaults", {}))
    instances, ids = [], set()
    for k, inst in enumerate(cfg["instances"]):
        if not isinstance(inst, dict) or "group" not in inst or "set" not in inst:
            raise ConfigError(f"instance #{k} needs 'group' and 'set'")
        iid = str(inst.get("id", f"instance{k:03d}"))
        if iid in ids:
            raise ConfigError(f"duplicate instance id {iid!r}")
        ids.add(iid)
        expected = inst.get("assert", {})
        bad = set(expected) - set(ASSERTIONS)
        if bad:
            raise ConfigError(f"instance {iid!r}: unknown assertions {sorted(bad)}")
        opts = dict(defaults)
        extra = set(inst) - {"id", "group", "set", "seed", "assert", "representation"} - set(DEFAULT_OPTIONS)
        if extra:
            raise ConfigError(f"instance {iid!r}: unknown keys {sorted(extra)}")
        opts.update({k: v for k, v in inst.items() if k in DEFAULT_OPTIONS})
        seed = inst.get("seed", 0)
        if not isinstance(seed, int) or not 0 <= seed < 1 << 64:
            raise ConfigError(f"instance {iid!r}: seed must be a 64-bit unsigned integer")
        instances.append({
            "id": iid,
            "spec": InstanceSpec(str(inst["group"]), str(inst["set"]), seed),
            "assert": expected,
            "representation": inst.get("representation"),
            "options": opts,
        })
    return instances


def _resolve(spec):
    try:
        G, A = spec.resolve()
    except (CosetLabError, ValueError, OSError) as exc:
        raise ResolveError(f"cannot resolve {spec}: {exc}") from None
    if not A:
        raise ResolveError(f"{spec} resolves to the empty set")
    return G, A


def _parse_set_list(G, text):
    return [parse_set_literal(G, part) for part in text.split(";")] if text else []


def _analyze_options(opts):
    return dict(
        max_ladder=int(opts["max_ladder"]),
        eps=as_fraction(opts["eps"]),
        checks=tuple(opts["checks"]),
        structure=bool(opts["structure"]),
        theorem_b=bool(opts["theorem_b"]),
        max_complexity=int(opts["max_complexity"]),
        pareto=bool(opts["pareto"]),
        record_timings=bool(opts["record_timings"]),
    )


def run_sweep(config_path, out_dir):
    """Run every configured instance; returns the exit code.

    Reports go to ``<out_dir>/<id>.json``; ``summary.csv`` lists one row per
    (instance, check), sorted by instance id.
    """
    instances = load_config(config_path)
    resolved = []
    for inst in instances:
        G, A = _resolve(inst["spec"])
        resolved.append((inst, G, A))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for inst, G, A in resolved:
        spec = inst["spec"]
        rep = None
        if inst["representation"]:
            r = inst["representation"]
            rep = (int(r["r"]), [parse_set_literal(G, s) for s in r.get("B", [])],
                   [parse_set_literal(G, s) for s in r.get("C", [])])
        report = analyze(
            A,
            instance={"id": inst["id"], "group": spec.group, "set": spec.set, "seed": spec.seed},
            representation=rep,
            **_analyze_options(inst["options"]),
        )
        (out / f"{inst['id']}.json").write_text(dumps(report))
        for chk in report["checks"]:
            rows.append((inst["id"], chk["name"], chk["passed"], _detail(chk["values"])))
        if "representation" in report:
            rows.append((inst["id"], "representation", report["representation"]["valid"],
                         _detail({"degrees": report["representation"]["degrees"]})))
        rows.extend((inst["id"], *row) for row in evaluate_assertions(report, inst["assert"]))

    rows.sort(key=lambda row: row[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for iid, name, passed, detail in rows:
        writer.writerow((iid, name, "pass" if passed else "fail", detail))
    (out / "summary.csv").write_text(buf.getvalue())
    failed = [row for row in rows if not row[2]]
    for iid, name, _, detail in failed:
        log.error("%s: check %s failed (%s)", iid, name, detail)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# --- subcommands -------------------------------------------------------------

def _emit(obj, out):
    text = dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    G, A = _resolve(InstanceSpec(args.group, args.set, args.seed))
    report = analyze(
        A,
        instance={"id": "cli", "group": args.group, "set": args.set, "seed": args.seed},
        max_ladder=args.max_ladder,
        eps=as_fraction(args.eps),
        max_complexity=args.max_complexity,
    )
    _emit(report, args.out)
    return EXIT_OK if all(c["passed"] for c in report["checks"]) else EXIT_CHECK_FAILED


def cmd_structure(args):
    G, A = _resolve(InstanceSpec(args.group, args.set, args.seed))
    res = theorem_a_search(A, eps=as_fraction(args.eps))
    inter = {c.H.bits: c for c in largest_coset_intersection(A, subgroups=[s.H for s in res.structures])}
    out = {
        "schema_version": SCHEMA_VERSION,
        "elements": A.to_list(),
        "eps": res.eps,
        "empirical_n": res.empirical_n,
        "structures": [
            {
                "H": s.H, "cover_size": s.cover_size, "C": list(s.C), "C_prime": list(s.C_prime),
                "symdiff": s.symdiff, "ratio_H": s.ratio_H, "ratio_A": s.ratio_A,
                "meets_eps": s.ratio_H < res.eps,
                "pareto": s in res.pareto,
                "largest_coset": {"g": inter[s.H.bits].g, "size": inter[s.H.bits].size},
            }
            for s in res.structures
        ],
    }
    if G.is_abelian:
        tb = theorem_b_search(A, max_complexity=args.max_complexity)
        out["theorem_b"] = [
            {"g": g, "H": H, "expr": str(e) if e else None} for (g, H), e in zip(tb.cover, tb.expressions)
        ]
    _emit(out, args.out)
    return EXIT_OK


def cmd_rep(args):
    G, A = _resolve(InstanceSpec(args.group, args.set, args.seed))
    cert = wn_representation_verify(A, args.r, _parse_set_list(G, args.b), _parse_set_list(G, args.c))
    _emit({
        "schema_version": SCHEMA_VERSION,
        "r": cert.r, "k": cert.k, "l": cert.l,
        "B": list(cert.B_list), "C": list(cert.C_list),
        "denotes_A": cert.denotes_A, "degrees": list(cert.degrees), "valid": cert.valid,
    }, args.out)
    return EXIT_OK if cert.valid else EXIT_CHECK_FAILED


def cmd_synth(args):
    G, A = _resolve(InstanceSpec(args.group, args.set, args.seed))
    target = parse_set_literal(G, args.target)
    res = boolean_synthesis(target, A, args.max_complexity)
    _emit({
        "schema_version": SCHEMA_VERSION,
        "target": target,
        "found": not res.exhausted,
        "expr": str(res.expr) if res.expr else None,
        "tree": res.expr.to_dict() if res.expr else None,
        "complexity": res.expr.complexity if res.expr else None,
        "distinct_sets_reached": res.reached,
        "max_complexity": res.max_complexity,
    }, args.out)
    return EXIT_OK if res.expr else EXIT_CHECK_FAILED


def cmd_sweep(args):
    return run_sweep(args.config, args.out_dir)


def build_parser():
    parser = argparse.ArgumentParser(prog="cosetlab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_args(p):
        p.add_argument("--group", required=True, help="e.g. cyclic:12, vector:3,2, symmetric:3")
        p.add_argument("--set", required=True, help="literal '0,1,6,7' or 'gen:cross(3)'")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("analyze", help="growth, stability and structure report for one set")
    instance_args(p)
    p.add_argument("--max-ladder", type=int, default=DEFAULT_OPTIONS["max_ladder"])
    p.add_argument("--eps", default="1")
    p.add_argument("--max-complexity", type=int, default=DEFAULT_OPTIONS["max_complexity"])
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("structure", help="coset structures over subgroups inside A*A^-1")
    instance_args(p)
    p.add_argument("--eps", default="1", help="rational threshold p/q")
    p.add_argument("--max-complexity", type=int, default=DEFAULT_OPTIONS["max_complexity"])
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("rep", help="verify an (r,k,l) weakly normal representation")
    instance_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--b", required=True, help="sets separated by ';'")
    p.add_argument("--c", default="", help="sets separated by ';' (empty: l = 0)")
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("synth", help="smallest boolean combination of translates denoting a target")
    instance_args(p)
    p.add_argument("--target", required=True)
    p.add_argument("--max-complexity", type=int, default=6)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sweep", help="run a configured batch of instances")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except ResolveError as exc:
        log.error("%s", exc)
        return EXIT_RESOLVE
    except (CosetLabError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
