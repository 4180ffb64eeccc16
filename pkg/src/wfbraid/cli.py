"""Command line interface: ``wfbraid <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .automorphisms import HeisAut, NotSymplectic, aut_apply, aut_compose, aut_inverse
from .braid_presentation import (
    IndexOutOfBounds,
    WordSyntaxError,
    build_presentation,
    parse_word,
)
from .exact_linalg import smith_normal_form
from .fox_homology import (
    boundary_matrices,
    homology_from_complex,
    integral_homology_trivial,
)
from .heisenberg import HeisElem, HeisParams, kernel_witnesses, phi, random_word, verify_presentation
from .representations import (
    CoefficientSystem,
    character_system,
    intertwiner,
    rho_L,
    rho_l_system,
    trivial_system,
)
from .selftest import run_selftest


class UsageError(Exception):
    pass


def _params(args) -> HeisParams:
    try:
        return HeisParams(args.g, args.n)
    except ValueError as exc:
        raise UsageError(f"--g/--n: {exc}") from exc


def _read_stdin_json(stdin):
    try:
        return json.load(stdin)
    except json.JSONDecodeError as exc:
        raise UsageError(f"standard input is not valid JSON: {exc}") from exc


def _emit(obj, fmt: str, out) -> None:
    if fmt == "plain":
        _emit_plain(obj, out)
    else:
        out.write(json.dumps(obj) + "\n")


def _emit_plain(obj, out, prefix="") -> None:
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, dict):
                _emit_plain(val, out, f"{prefix}{key}.")
            else:
                out.write(f"{prefix}{key}: {json.dumps(val)}\n")
    else:
        out.write(f"{json.dumps(obj)}\n")


def _parse_element(text: str, P: HeisParams) -> HeisElem:
    try:
        m_part, _, x_part = text.partition(";")
        x = [int(v) for v in x_part.split(",")] if x_part.strip() else []
        return HeisElem(P, int(m_part), tuple(x))
    except ValueError as exc:
        raise UsageError(f"--element: {exc}") from exc


def _aut(data, P: HeisParams) -> HeisAut:
    try:
        return HeisAut.from_json(P, data)
    except NotSymplectic as exc:
        raise UsageError(f"automorphism: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"automorphism JSON: {exc}") from exc


def coefficient_system(coeff: str, P: HeisParams) -> CoefficientSystem | None:
    """Parse ``--coeff``; returns None for ``trivial-z``."""
    if coeff == "trivial-z":
        return None
    if coeff == "trivial-q":
        return trivial_system(P)
    if coeff == "rho-l":
        return rho_l_system(P)
    if coeff.startswith("char:"):
        values = [v for v in coeff[5:].split(",") if v]
        sign = 1
        if len(values) == P.rank + 1:
            sign = int(values.pop())
        try:
            return character_system(P, [Fraction(v) for v in values], sign)
        except ValueError as exc:
            raise UsageError(f"--coeff {coeff}: {exc}") from exc
    if coeff.startswith("file:"):
        try:
            with open(coeff[5:]) as fh:
                data = json.load(fh)
            return CoefficientSystem.from_json(P, data)
        except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
            raise UsageError(f"--coeff {coeff}: {exc}") from exc
    raise UsageError(f"--coeff: unknown coefficient system {coeff!r}")


# --------------------------------------------------------------------------
# subcommands; each returns (payload, exit_code)


def cmd_presentation(args, stdin):
    pres = build_presentation(_params(args).surface)
    if args.text:
        return pres.to_text(), 0
    return pres.to_json(), 0


def cmd_phi(args, stdin):
    P = _params(args)
    try:
        w = parse_word(args.word, P.surface)
    except (WordSyntaxError, IndexOutOfBounds) as exc:
        raise UsageError(f"word: {exc}") from exc
    return phi(w).to_json(), 0


def cmd_verify(args, stdin):
    P = _params(args)
    report = verify_presentation(P)
    out = {
        "relators": report.extra["relators"],
        "failures": [c.detail for c in report.failures],
        "families": report.extra["families"],
    }
    return out, 0 if report.passed else 1


def cmd_kernel(args, stdin):
    P = _params(args)
    try:
        words = [parse_word(w, P.surface) for w in args.word or []]
    except (WordSyntaxError, IndexOutOfBounds) as exc:
        raise UsageError(f"--word: {exc}") from exc
    rng = random.Random(args.seed)
    words += [random_word(P, rng) for _ in range(args.random)]
    report = kernel_witnesses(P, words)
    return {"checks": len(report.checks), "failures": [c.to_json() for c in report.failures]}, (
        0 if report.passed else 1
    )


def cmd_aut(args, stdin):
    P = _params(args)
    data = _read_stdin_json(stdin)
    if args.action == "apply":
        t = _aut(data["aut"], P)
        try:
            h = HeisElem.from_json(P, data["element"])
        except (KeyError, ValueError) as exc:
            raise UsageError(f"element JSON: {exc}") from exc
        return aut_apply(t, h).to_json(), 0
    if args.action == "compose":
        return aut_compose(_aut(data["t2"], P), _aut(data["t1"], P)).to_json(), 0
    return aut_inverse(_aut(data, P)).to_json(), 0


def cmd_rho_l(args, stdin):
    P = _params(args)
    return rho_L(_parse_element(args.element, P)).to_json(), 0


def cmd_intertwiner(args, stdin):
    P = _params(args)
    return intertwiner(_aut(_read_stdin_json(stdin), P)).to_json(), 0


def cmd_homology(args, stdin):
    P = _params(args)
    rep = coefficient_system(args.coeff, P)
    if rep is None:
        return integral_homology_trivial(P).to_json(), 0
    cx = boundary_matrices(build_presentation(P.surface), rep)
    if not cx.is_complex():
        return {"error": "d1 @ d2 != 0", "failing": cx.failing_blocks()}, 1
    out = homology_from_complex(cx, rep.label).to_json()
    if args.emit_matrices:
        out["matrices"] = cx.to_json()
    return out, 0 if out["euler_check"]["ok"] else 1


def cmd_snf(args, stdin):
    data = _read_stdin_json(stdin)
    try:
        m = [[int(v) for v in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"snf input must be an integer matrix: {exc}") from exc
    U, D, W = smith_normal_form(m)
    factors = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]
    return {"U": U, "D": D, "W": W, "invariant_factors": factors}, 0


def cmd_selftest(args, stdin):
    reports = run_selftest(seed=args.seed, samples=args.samples)
    out = {r.title: {"checks": len(r.checks), "failures": [c.to_json() for c in r.failures]} for r in reports}
    return out, 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wfbraid", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "plain"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    # the same options after the subcommand name; SUPPRESS keeps the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "plain"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def with_params(p):
        p.add_argument("--g", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        return p

    p = with_params(add_parser("presentation", help="export the presentation"))
    p.add_argument("--text", action="store_true", help="plain relator-per-line format")
    p.set_defaults(func=cmd_presentation)

    p = with_params(add_parser("phi", help="image of a word in H_g"))
    p.add_argument("word")
    p.set_defaults(func=cmd_phi)

    p = with_params(add_parser("verify-presentation", help="check phi kills every relator"))
    p.set_defaults(func=cmd_verify)

    p = with_params(add_parser("kernel-check", help="check kernel witnesses of phi"))
    p.add_argument("--word", action="append")
    p.add_argument("--random", type=int, default=0, help="also test this many random words")
    p.set_defaults(func=cmd_kernel)

    p = with_params(add_parser("aut", help="oriented automorphisms (JSON on stdin)"))
    p.add_argument("action", choices=("apply", "compose", "inverse"))
    p.set_defaults(func=cmd_aut)

    p = with_params(add_parser("rho-l", help="linearised regular representation"))
    p.add_argument("--element", required=True, help='"m;x1,...,x2g"')
    p.set_defaults(func=cmd_rho_l)

    p = with_params(add_parser("intertwiner", help="intertwiner of an automorphism (JSON on stdin)"))
    p.set_defaults(func=cmd_intertwiner)

    p = with_params(add_parser("homology", help="H_0, H_1 with local coefficients"))
    p.add_argument("--coeff", default="trivial-q", help="trivial-q|trivial-z|rho-l|char:<c1,...>|file:<path>")
    p.add_argument("--emit-matrices", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = add_parser("snf", help="Smith normal form of an integer matrix (JSON on stdin)")
    p.set_defaults(func=cmd_snf)

    p = add_parser("selftest", help="run the randomised invariant suite")
    p.add_argument("--samples", type=int, default=30)
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = args.func(args, stdin)
    except UsageError as exc:
        stderr.write(f"wfbraid {args.command}: error: {exc}\n")
        return 2
    if isinstance(payload, str):
        stdout.write(payload)
    else:
        _emit(payload, args.format, stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
