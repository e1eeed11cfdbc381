"""Command-line front end.

Exit codes: 0 success, 1 a check failed or a precondition does not hold,
2 usage or parse error, 3 a search/oracle bound was exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from typing import Callable

from . import canonical, drelation, ebasis, instances, kbasis, optsearch, oracle
from .core import ImplicationSet, metrics, parse, to_jsonable, to_text
from .errors import (
    BoundExceededError, ClosureBasesError, DCycleError, NotStandardError, ParseError,
    PreconditionError,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class Report:
    def __init__(self, argv: list[str], digest: str | None):
        self.data: dict = {"command": argv, "input_sha256": digest}
        self.bases: list[tuple[str, ImplicationSet]] = []
        self.checks: list[tuple[str, bool, str]] = []
        self.lines: list[str] = []

    def basis(self, label: str, sigma: ImplicationSet) -> None:
        self.bases.append((label, sigma))

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_json(self) -> str:
        out = dict(self.data)
        if self.bases:
            # the first basis sits at top level so the output parses back
            out.update(to_jsonable(self.bases[0][1]))
            out["metrics"] = metrics(self.bases[0][1]).as_dict()
            out["bases"] = [
                {"label": label, **to_jsonable(b), "metrics": metrics(b).as_dict()}
                for label, b in self.bases
            ]
        if self.checks:
            out["checks"] = [{"name": n, "ok": o, "detail": d} for n, o, d in self.checks]
            out["ok"] = self.ok
        if self.lines:
            out["lines"] = self.lines
        return json.dumps(out, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        parts = []
        for label, b in self.bases:
            m = metrics(b)
            parts.append(f"# {label}: count={m.count} s={m.s} sL={m.sL} sR={m.sR}")
            parts.append(to_text(b).rstrip("\n"))
        for name, ok, detail in self.checks:
            parts.append(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
        parts.extend(self.lines)
        return "\n".join(parts)


def _read(path: str) -> tuple[str, str]:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return text, hashlib.sha256(text.encode("utf-8")).hexdigest()


def _tiebreak(value: str):
    if value in ("first", "last"):
        return value
    return [v for v in value.split(",") if v]


# command handlers ---------------------------------------------------------

def cmd_canonical(args, sigma, rep):
    if args.oracle:
        rep.basis("canonical (oracle)", oracle.canonical_oracle(sigma, args.oracle_bound))
    else:
        rep.basis("canonical", canonical.canonical_basis(sigma))


def cmd_kbasis(args, sigma, rep):
    if args.all:
        for k, b in enumerate(kbasis.all_k_bases(sigma)):
            rep.basis(f"K-basis {k + 1}", b)
    else:
        rep.basis("K-basis", kbasis.k_basis(sigma, args.tiebreak))


def cmd_ebasis(args, sigma, rep):
    if args.optimized:
        rep.basis("optimized E-basis", ebasis.optimized_e_basis(sigma))
    elif args.f:
        rep.basis("F-basis", ebasis.f_basis(sigma, args.tiebreak, force=args.force,
                                             bound=args.oracle_bound))
    elif args.foe:
        rep.basis("FOE-basis", ebasis.foe_basis(sigma, args.tiebreak))
    elif args.aggregated:
        rep.basis("aggregated E-basis", ebasis.aggregated_e_basis(sigma))
    else:
        e = ebasis.e_basis(sigma, bound=args.oracle_bound)
        if args.ordered:
            e = e.with_implications(ebasis.ordered_sequence(e))
            rep.basis("E-basis (ordered sequence)", e)
        else:
            rep.basis("E-basis", e)


def cmd_optimum(args, sigma, rep):
    res = optsearch.optimum_bases(sigma, all_bases=args.all)
    bases = res.bases if args.all else res.bases[:1]
    for k, b in enumerate(bases):
        rep.basis(f"optimum basis {k + 1}", b)
    if args.report_hierarchy:
        for name, ok, detail in optsearch.verify_hierarchy(sigma).checks:
            rep.check(name, ok, detail)


def cmd_regularize(args, sigma, rep):
    rep.basis("regular basis", canonical.regularize(sigma))


def cmd_metrics(args, sigma, rep):
    rep.basis("input", sigma)


def cmd_check(args, sigma, rep):
    what = args.what
    if what == "standard":
        r = oracle.is_standard(sigma)
        rep.check("standard", r.standard, ", ".join(r.violations))
    elif what == "uc":
        rep.check("uc", canonical.is_uc_system(sigma))
    elif what == "d-cycle-free":
        cycle = drelation.find_d_cycle(sigma, args.tiebreak)
        rep.check("d-cycle-free", cycle is None,
                  "" if cycle is None else "D-cycle: " + "→".join(cycle))
    elif what == "sd-join":
        fam = oracle.enumerate_closed(sigma, args.oracle_bound)
        bad = next(oracle.sd_join_failures(fam), None)
        detail = "" if bad is None else "fails at " + ", ".join(sigma.ground.fmt(m) for m in bad)
        rep.check("sd-join", bad is None, detail)


def cmd_relation(args, sigma, rep):
    if args.which == "delta":
        base = canonical.canonical_basis(sigma) if args.of == "canonical" \
            else drelation.sigma_star(sigma, args.tiebreak)
        rel = drelation.delta(base)
    else:
        rel = oracle.d_relation(sigma, args.oracle_bound)
    if args.transitive:
        rel = rel.transitive_closure()
    pairs = rel.named_pairs()
    rep.data["pairs"] = pairs
    rep.lines.extend(f"{a} {b}" for a, b in pairs)


def cmd_oracle(args, sigma, rep):
    g = sigma.ground
    if args.what == "closed":
        sets = oracle.enumerate_closed(sigma, args.oracle_bound).closed
        rep.data["closed"] = [g.names_of(m) for m in sets]
        rep.lines.extend(g.fmt(m) for m in sets)
    elif args.what == "critical":
        cat = oracle.quasi_critical(sigma, args.oracle_bound)
        rep.data["critical"] = [g.names_of(m) for m in cat.critical]
        rep.data["essential"] = [g.names_of(m) for m in cat.essential]
        rep.lines.extend("critical " + g.fmt(m) for m in cat.critical)
        rep.lines.extend("essential " + g.fmt(m) for m in cat.essential)
    else:
        targets = [args.attr] if args.attr else list(g.names)
        covers = {}
        for x in targets:
            covers[x] = [g.names_of(m) for m in oracle.minimal_covers(sigma, x, bound=args.oracle_bound)]
            rep.lines.extend(f"{x}: {' '.join(c)}" for c in covers[x])
        rep.data["covers"] = covers


def cmd_verify(args, sigma, rep):
    if args.what == "tr":
        checks = drelation.verify_tr(sigma, args.oracle_bound)
    elif args.what == "mainE":
        checks = ebasis.verify_main_e(sigma)
    elif args.what == "rs-min":
        checks = optsearch.verify_rs_min(sigma)
    else:
        report = optsearch.verify_hierarchy(sigma)
        checks = report.checks
        rep.data["conjecture"] = report.conjecture
    for name, ok, detail in checks:
        rep.check(name, ok, detail)


def cmd_gen(args, rep):
    if args.kind == "fixture":
        rep.basis(args.name, instances.paper_fixture(args.name))
    elif args.kind == "random":
        rep.basis("random", instances.random_system(args.n, args.density, args.seed))
    else:
        text, digest = _read(args.infile)
        rep.data["input_sha256"] = digest
        inst = instances.SetCoverInstance.parse(text)
        if args.mode == "nb":
            red = instances.setcover_nonbinary(inst, args.pivot)
        else:
            red = instances.setcover_binary(inst)
        rep.basis(f"set-cover system ({args.mode})", red.sigma)
        rep.data["target"] = red.sigma.ground.names_of(red.target)


HANDLERS: dict[str, Callable] = {
    "canonical": cmd_canonical, "kbasis": cmd_kbasis, "ebasis": cmd_ebasis,
    "optimum": cmd_optimum, "regularize": cmd_regularize, "metrics": cmd_metrics,
    "check": cmd_check, "relation": cmd_relation, "oracle": cmd_oracle, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--oracle-bound", type=int, default=None,
                        help="largest ground set for brute-force routines")
    common.add_argument("--tiebreak", type=_tiebreak, default="first",
                        help="first, last, or a comma list of attribute names to remove first")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="closurebases",
                                description="Implicational bases of finite closure systems.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def with_input(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    sp = with_input("canonical", "canonical basis")
    sp.add_argument("--oracle", action="store_true", help="build from enumerated critical sets")
    sp.add_argument("input")
    sp = with_input("kbasis", "K-basis")
    sp.add_argument("--all", action="store_true", help="every K-basis")
    sp.add_argument("input")
    sp = with_input("ebasis", "E-basis family")
    grp = sp.add_mutually_exclusive_group()
    for flag in ("--aggregated", "--optimized", "--f", "--foe", "--ordered"):
        grp.add_argument(flag, action="store_true")
    sp.add_argument("--force", action="store_true",
                    help="skip the join-semidistributivity check for --f (unverified)")
    sp.add_argument("input")
    sp = with_input("optimum", "optimum bases by exhaustive search")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--report-hierarchy", action="store_true")
    sp.add_argument("input")
    with_input("regularize", "equivalent regular basis").add_argument("input")
    with_input("metrics", "size measures").add_argument("input")
    sp = with_input("check", "yes/no properties")
    sp.add_argument("what", choices=["standard", "uc", "d-cycle-free", "sd-join"])
    sp.add_argument("input")
    sp = with_input("relation", "Δ or D relation")
    sp.add_argument("which", choices=["delta", "d"])
    sp.add_argument("--of", choices=["star", "canonical"], default="star",
                    help="basis whose Δ is taken")
    sp.add_argument("--transitive", action="store_true")
    sp.add_argument("input")
    sp = with_input("oracle", "brute-force enumerations")
    sp.add_argument("what", choices=["closed", "critical", "covers"])
    sp.add_argument("--attr", help="only covers of this attribute")
    sp.add_argument("input")
    sp = with_input("verify", "cross-checks between routes")
    sp.add_argument("what", choices=["tr", "mainE", "rs-min", "hierarchy"])
    sp.add_argument("input")

    gp = sub.add_parser("gen", help="generate systems")
    gsub = gp.add_subparsers(dest="kind", required=True)
    fx = gsub.add_parser("fixture", parents=[common])
    fx.add_argument("name", choices=instances.FIXTURE_NAMES)
    sc = gsub.add_parser("setcover", parents=[common])
    sc.add_argument("--mode", choices=["nb", "b"], default="nb")
    sc.add_argument("--infile", required=True, help="first line Q, then one subset per line")
    sc.add_argument("--pivot", help="q whose coatom Q∖{q} is doubled (nb mode)")
    rd = gsub.add_parser("random", parents=[common])
    rd.add_argument("-n", type=int, required=True)
    rd.add_argument("-d", "--density", type=float, default=0.5)
    return p


def run(argv: list[str] | None = None) -> tuple[int, Report | None]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), None
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    rep = Report(argv, None)
    try:
        if args.cmd == "gen":
            cmd_gen(args, rep)
        else:
            text, digest = _read(args.input)
            rep.data["input_sha256"] = digest
            HANDLERS[args.cmd](args, parse(text), rep)
    except (ParseError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE, rep
    except BoundExceededError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND, rep
    except (DCycleError, NotStandardError, PreconditionError, ClosureBasesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        rep.check(args.cmd, False, str(exc))
        print(rep.to_json() if args.json else rep.to_text())
        return EXIT_FAIL, rep
    print(rep.to_json() if args.json else rep.to_text())
    return (EXIT_OK if rep.ok else EXIT_FAIL), rep


def main(argv: list[str] | None = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
