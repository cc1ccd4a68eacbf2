"""Command line front end: ``trilie <command> <definitions-file> [options]``.

Reports are deterministic for a given input, command and seed.  Wall-clock
time is only added with ``--timing`` so that plain reports stay
byte-identical between runs.

Exit codes: 0 when every verdict is valid, 1 when some verdict is invalid,
2 for usage, parse and precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import fileformat
from .algebra import (
    Action,
    LinearMap,
    TriLieAlgebra,
    check_action,
    check_crossed,
    check_fundamental_identity,
    check_representation,
    check_rota_baxter,
    semidirect_product,
)
from .cochains import cohomology_dims, cohomology_dims_bareiss, crossed_complex
from .deformations import DeformationCandidate, SecondCohomology, check_equivalence, check_infinitesimal
from .errors import TriLieError
from .fileformat import ParseError, format_combo, format_coef
from .linf import VData, TwistedBrackets, mc_residual, twisted_mc_residual
from .properties import run_suite

EXIT_VALID, EXIT_INVALID, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# -- reports ------------------------------------------------------------------------

def _plain(x):
    """JSON-ready copy with exact rationals written as strings."""
    if isinstance(x, Fraction):
        return format_coef(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


class Report:
    def __init__(self, command: str, argv: list[str], seed: int):
        self.data: dict = {"command": command, "argv": list(argv), "seed": seed, "verdicts": []}

    def verdict(self, name: str, valid: bool, violations: list | None = None) -> None:
        entry = {"name": name, "valid": bool(valid)}
        if violations is not None:
            entry["violations"] = violations
        self.data["verdicts"].append(entry)

    def __setitem__(self, key, value):
        self.data[key] = value

    @property
    def valid(self) -> bool:
        return all(v["valid"] for v in self.data["verdicts"])

    def to_json(self) -> str:
        return json.dumps(_plain(self.data), indent=2)

    def to_text(self) -> str:
        out = [f"command: {' '.join(self.data['argv'])}", f"seed: {self.data['seed']}"]
        for key, value in self.data.items():
            if key in ("command", "argv", "seed", "verdicts"):
                continue
            out.extend(_text_block(key, value))
        for v in self.data["verdicts"]:
            out.append(f"{v['name']}: {'valid' if v['valid'] else 'INVALID'}")
            for item in v.get("violations") or []:
                out.append(f"  {_text_item(item)}")
        return "\n".join(out) + "\n"


def _text_item(x) -> str:
    if isinstance(x, dict):
        return ", ".join(f"{k}={_text_item(v)}" for k, v in x.items())
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_text_item(v) for v in x) + ")"
    if isinstance(x, Fraction):
        return format_coef(x)
    return str(x)


def _text_block(key: str, value) -> list[str]:
    if isinstance(value, list) and value and isinstance(value[0], dict):
        lines = [f"{key}:"]
        cols = list(value[0])
        rows = [[_text_item(r[c]) for c in cols] for r in value]
        widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
        lines.append("  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)))
        for r in rows:
            lines.append("  " + "  ".join(x.rjust(w) for x, w in zip(r, widths)))
        return lines
    if isinstance(value, dict):
        return [f"{key}:"] + [f"  {k}: {_text_item(v)}" for k, v in value.items()]
    return [f"{key}: {_text_item(value)}"]


def _vec(v) -> str:
    return format_combo(v) if v else "0"


def _one_based(t) -> list[int]:
    return [i + 1 for i in t]


def _residual_rows(table: dict) -> list[dict]:
    return [{"args": _one_based(t), "value": _vec(v)} for t, v in sorted(table.items())]


# -- resolving names -------------------------------------------------------------------

def _algebra(df: fileformat.DefinitionFile, name: str | None) -> TriLieAlgebra:
    if name is None:
        if len(df.algebras) != 1:
            raise UsageError("--algebra is required when the file defines several algebras")
        return next(iter(df.algebras.values()))
    if name not in df.algebras:
        raise UsageError(f"unknown algebra {name!r}")
    return df.algebras[name]


def _map(df: fileformat.DefinitionFile, name: str | None, flag: str = "--map") -> LinearMap:
    if name is None:
        raise UsageError(f"{flag} is required")
    if name not in df.maps:
        raise UsageError(f"unknown map {name!r}")
    return df.maps[name].map


def _action(df: fileformat.DefinitionFile, name: str | None, default_source: TriLieAlgebra | None = None,
            algebra: str | None = None) -> Action:
    """A named action, or the adjoint action of the relevant algebra for ``adjoint``."""
    if name is None:
        raise UsageError("--action is required")
    if name in df.actions:
        return df.actions[name].action
    if name == "adjoint":
        if algebra is not None or default_source is None:
            return Action.adjoint(_algebra(df, algebra))
        return Action.adjoint(default_source)
    raise UsageError(f"unknown action {name!r}")


def _bivector(df: fileformat.DefinitionFile, name: str):
    if name not in df.bivectors:
        raise UsageError(f"unknown bivector {name!r}")
    return df.bivectors[name].bivector


def _map_and_action(df, args) -> tuple[LinearMap, Action]:
    H = _map(df, args.map)
    return H, _action(df, args.action, H.source, args.algebra)


# -- commands ------------------------------------------------------------------------------

def cmd_check_algebra(df, args, rep: Report) -> None:
    names = [args.algebra] if args.algebra else list(df.algebras)
    if not names:
        raise UsageError("the file defines no algebra")
    for name in names:
        a = _algebra(df, name)
        bad = check_fundamental_identity(a)
        rep.verdict(f"fundamental-identity[{name}]", not bad, [_one_based(t) for t in bad[: args.limit]])


def cmd_check_representation(df, args, rep: Report) -> None:
    act = _action(df, args.action, algebra=args.algebra)
    bad = check_representation(act.rep)
    rep.verdict("representation", not bad, [[k, _one_based(t)] for k, t in bad[: args.limit]])


def cmd_check_action(df, args, rep: Report) -> None:
    act = _action(df, args.action, algebra=args.algebra)
    bad = check_action(act)
    rep.verdict("action", not bad, [[k, _one_based(t)] for k, t in bad[: args.limit]])


def cmd_check_crossed(df, args, rep: Report) -> None:
    H, act = _map_and_action(df, args)
    bad = check_crossed(H, act)
    rep.verdict("crossed-homomorphism", not bad,
                [{"args": _one_based(t), "residual": _vec(v)} for t, v in bad[: args.limit]])


def cmd_check_rb(df, args, rep: Report) -> None:
    T = _map(df, args.map)
    act = _action(df, args.action, T.target, args.algebra)
    weight = Fraction(args.weight)
    rep["weight"] = weight
    bad = check_rota_baxter(T, act, weight)
    rep.verdict("rota-baxter", not bad,
                [{"args": _one_based(t), "residual": _vec(v)} for t, v in bad[: args.limit]])


def cmd_semidirect(df, args, rep: Report) -> None:
    act = _action(df, args.action, algebra=args.algebra)
    bad_action = check_action(act)
    rep.verdict("action", not bad_action, [[k, _one_based(t)] for k, t in bad_action[: args.limit]])
    if bad_action:
        return
    s = semidirect_product(act.source, act, check=False)
    rep["dim"] = s.dim
    rep["brackets"] = [{"triple": _one_based(t), "value": _vec(v)}
                       for t, v in sorted(s.structure_constants().items())]
    bad = check_fundamental_identity(s)
    rep.verdict("fundamental-identity[semidirect]", not bad, [_one_based(t) for t in bad[: args.limit]])


def cmd_cohomology(df, args, rep: Report) -> None:
    H, act = _map_and_action(df, args)
    cx = crossed_complex(H, act, args.max_degree)
    rows = []
    agree = True
    for n in range(1, args.max_degree + 1):
        a = cohomology_dims(cx, n)
        b = cohomology_dims_bareiss(cx, n)
        agree = agree and a == b
        rows.append({"n": n, "cochains": a.cochains, "cocycles": a.cocycles,
                     "coboundaries": a.coboundaries, "cohomology": a.cohomology})
    rep["table"] = rows
    for n, ok in sorted(cx.square_zero.items()):
        rep.verdict(f"square-zero[{n}]", ok)
    rep.verdict("elimination-orders-agree", agree)


def cmd_mc_check(df, args, rep: Report) -> None:
    H, act = _map_and_action(df, args)
    res = mc_residual(VData.from_action(act), H)
    rep["residual"] = _residual_rows(res.table())
    crossed = not check_crossed(H, act)
    rep["crossed"] = crossed
    rep.verdict("maurer-cartan", res.is_zero())
    rep.verdict("agrees-with-crossed", res.is_zero() == crossed)


def cmd_twisted_mc_check(df, args, rep: Report) -> None:
    H, act = _map_and_action(df, args)
    H2 = _map(df, args.perturbation, "--perturbation")
    vd = VData.from_action(act)
    res = twisted_mc_residual(vd, H, H2, TwistedBrackets(vd, H))
    rep["residual"] = _residual_rows(res.table())
    crossed = not check_crossed(H + H2, act)
    rep["sum_crossed"] = crossed
    rep.verdict("twisted-maurer-cartan", res.is_zero())
    rep.verdict("agrees-with-crossed", res.is_zero() == crossed)


def cmd_deform_check(df, args, rep: Report) -> None:
    H, act = _map_and_action(df, args)
    K = _map(df, args.direction, "--direction")
    v = check_infinitesimal(DeformationCandidate(H, K), act)
    rep["routes"] = {"direct": v.details["direct"], "coboundary": v.details["coboundary"]}
    rep.verdict("infinitesimal-deformation", v.valid,
                [{"args": _one_based(t), "residual": _vec(r)} for t, r in v.violations[: args.limit]])
    rep.verdict("routes-agree", v.details["agree"])


def cmd_deform_class(df, args, rep: Report) -> None:
    H, act = _map_and_action(df, args)
    K = _map(df, args.direction, "--direction")
    space = SecondCohomology(H, act)
    rep["cohomology_dim"] = space.dim
    if not space.is_cocycle(K):
        rep.verdict("cocycle", False)
        return
    rep.verdict("cocycle", True)
    normal, coords = space.class_of(K)
    rep["class"] = list(coords)
    rep["normal_form"] = [{"basis": i + 1, "value": _vec(normal.at((i,)))} for i in range(H.source.dim)]


def cmd_equivalence(df, args, rep: Report) -> None:
    H, act = _map_and_action(df, args)
    K1 = _map(df, args.direction, "--direction")
    K2 = _map(df, args.other, "--other")
    if args.witness:
        X = _bivector(df, args.witness)
    else:
        X = SecondCohomology(H, act).witness(K1, K2)
        rep["witness_found"] = X is not None
        if X is None:
            rep.verdict("equivalent", False)
            return
    rep["witness"] = {f"e{i + 1}^e{j + 1}": c for (i, j), c in X.terms()}
    v = check_equivalence(K1, K2, X, H, act)
    rep["delta_route"] = v.details["delta_route"]
    rep["condition_two_t1"] = v.details["condition_two_t1"]
    rep["derivations_t1"] = v.details["derivations_t1"]
    rep.verdict("equivalent", v.valid,
                [{"basis": z + 1, "residual": _vec(r)} for z, r in v.violations[: args.limit]])
    rep.verdict("routes-agree", v.details["agree"])


def cmd_verify_theorems(df, args, rep: Report) -> None:
    rep["trials"] = args.trials
    for r in run_suite(args.seed, args.trials):
        rep.verdict(r.name, r.passed, [f"samples={r.samples}"] + ([r.detail] if r.detail else []))


COMMANDS = {
    "check-algebra": (cmd_check_algebra, "fundamental identity of every (or one) algebra"),
    "check-representation": (cmd_check_representation, "representation axioms of an action's rho"),
    "check-action": (cmd_check_action, "representation axioms plus the action conditions"),
    "check-crossed": (cmd_check_crossed, "crossed homomorphism identity for a map"),
    "check-rb": (cmd_check_rb, "relative Rota-Baxter identity of a given weight"),
    "semidirect": (cmd_semidirect, "structure constants of the semidirect product"),
    "cohomology": (cmd_cohomology, "dimensions of the cohomology of a crossed homomorphism"),
    "mc-check": (cmd_mc_check, "Maurer-Cartan residual of a degree-0 map"),
    "twisted-mc-check": (cmd_twisted_mc_check, "twisted Maurer-Cartan residual of a perturbation"),
    "deform-check": (cmd_deform_check, "whether H + t K is an infinitesimal deformation"),
    "deform-class": (cmd_deform_class, "cohomology class coordinates of a 2-cocycle"),
    "equivalence": (cmd_equivalence, "equivalence of two infinitesimal deformations"),
    "verify-theorems": (cmd_verify_theorems, "randomised invariant suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    common.add_argument("--limit", type=int, default=20, help="violations listed per verdict")
    common.add_argument("--algebra")
    common.add_argument("--action")
    common.add_argument("--map")

    parser = argparse.ArgumentParser(prog="trilie", description="Exact checks for 3-Lie algebra structures.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        nargs = "?" if name == "verify-theorems" else None
        p.add_argument("file", nargs=nargs, help="definition file, '-' for stdin")
        if name == "check-rb":
            p.add_argument("--weight", default="1")
        if name == "cohomology":
            p.add_argument("--max-degree", type=int, default=3)
        if name == "twisted-mc-check":
            p.add_argument("--perturbation")
        if name in ("deform-check", "deform-class", "equivalence"):
            p.add_argument("--direction")
        if name == "equivalence":
            p.add_argument("--other")
            p.add_argument("--witness")
    return parser


def _read(path: str | None) -> fileformat.DefinitionFile:
    if path is None:
        return fileformat.DefinitionFile()
    if path == "-":
        return fileformat.parse(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return fileformat.parse(fh.read())


def run(df: fileformat.DefinitionFile, args: argparse.Namespace, argv: list[str]) -> Report:
    rep = Report(args.command, argv, args.seed)
    start = time.perf_counter()
    COMMANDS[args.command][0](df, args, rep)
    if args.timing:
        rep["wall_clock_s"] = round(time.perf_counter() - start, 3)
    return rep


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_VALID
    try:
        if args.command == "check-rb":
            Fraction(args.weight)
        df = _read(args.file)
        rep = run(df, args, argv)
    except ParseError as e:
        print(f"trilie: parse error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (UsageError, TriLieError, OSError, ValueError, ZeroDivisionError) as e:
        print(f"trilie: {e}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(rep.to_json() + "\n" if args.format == "json" else rep.to_text())
    return EXIT_VALID if rep.valid else EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
