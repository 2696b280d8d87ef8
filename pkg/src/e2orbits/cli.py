"""Command-line front end.

Exit codes: 0 success/PASS, 1 a verified FAIL, 2 usage or parse error,
3 inconclusive (budget ran out where a definite answer was asked for).
"""

from __future__ import annotations

import argparse
import json
import sys
from math import isqrt

from .errors import E2Error
from .explorer import (
    DEFAULT_PARAMS,
    Outcome,
    SearchParams,
    matrix_in_E2,
    orbit_bfs,
    pairs_equivalent,
    reduce_pair,
)
from .linalg2 import parse_matrix, parse_pair
from .ring import Form, RingDesc, gaussian_order, parse_ring, pell_fundamental
from .unimodular import enumerate_special
from .verify import Status, check_lemma1, lemma2_params, lemma2_scan, verify_corrigendum

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _ring_arg(text: str) -> RingDesc:
    try:
        return parse_ring(text)
    except E2Error as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", type=_ring_arg, help="sqrt:D or half:D")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--state-cap", type=_positive, help="max norm of a pair entry during search")
    common.add_argument("--gen-cap", type=_positive, help="max norm of a move parameter t")
    common.add_argument("--max-states", type=_positive)
    common.add_argument("--max-depth", type=_positive)
    common.add_argument("--seed", type=int, default=1)

    parser = argparse.ArgumentParser(prog="e2orbits", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run certificate suites")
    v.add_argument("--d", type=_positive, help="Z[di] parameter for the family identities")
    v.add_argument("--n", help="n values: 'a..b' (multiples of d) or comma list")
    v.add_argument("--lemma1", action="store_true", help="random checks of the top-row bijection")
    v.add_argument("--samples", type=_positive, default=500)
    v.add_argument("--lemma2", action="store_true", help="special-pair rigidity scan")
    v.add_argument("--cap", type=_positive, default=200, help="norm cap for the special-pair scan")
    v.add_argument("--strict", action="store_true",
                   help="exit 3 when a non-equivalence claim is only budget-bounded")

    o = sub.add_parser("orbit", parents=[common], help="bounded orbit of a pair")
    o.add_argument("pair")
    e = sub.add_parser("equiv", parents=[common], help="search a word taking p to q")
    e.add_argument("p")
    e.add_argument("q")
    m = sub.add_parser("member", parents=[common], help="search an elementary word for a matrix")
    m.add_argument("matrix")
    r = sub.add_parser("reduce", parents=[common], help="greedy reduction of a pair")
    r.add_argument("pair")
    s = sub.add_parser("special", parents=[common], help="enumerate special pairs")
    s.add_argument("--cap", type=_positive, required=True)
    p = sub.add_parser("pell", help="fundamental solution of x^2 - D y^2 = 1")
    p.add_argument("D", type=_positive)
    p.add_argument("--json", action="store_true")
    return parser


def _params(args, base: SearchParams = DEFAULT_PARAMS) -> SearchParams:
    return SearchParams(
        args.state_cap or base.state_norm_cap,
        args.gen_cap or base.gen_norm_cap,
        args.max_states or base.max_states,
        args.max_depth or base.max_depth,
    )


def _need_ring(args) -> RingDesc:
    if args.ring is None:
        raise UsageError("--ring is required")
    return args.ring


def _header(ring: RingDesc) -> str:
    return f"# ring {ring}, w = {ring.describe_w()}"


def _emit(args, obj, lines) -> None:
    if args.json:
        print(json.dumps(obj, indent=1))
    else:
        for line in lines:
            print(line)


def _n_values(spec: str | None, d: int) -> list[int]:
    if spec is None:
        return [d * k for k in range(1, 21)]
    try:
        if ".." in spec:
            lo, hi = (int(x, 10) for x in spec.split(".."))
            values = [n for n in range(lo, hi + 1) if n % d == 0]
        else:
            values = [int(x, 10) for x in spec.split(",")]
    except ValueError:
        raise UsageError(f"bad --n {spec!r}") from None
    if not values:
        raise UsageError(f"--n {spec!r} contains no multiple of d={d}")
    return values


def _corrigendum_d(args) -> int:
    ring = args.ring
    if args.d is not None:
        if ring is not None and ring != gaussian_order(args.d):
            raise UsageError(f"--ring {ring} does not match --d {args.d} (expected sqrt:{args.d ** 2})")
        return args.d
    if ring is not None and ring.form is Form.SQRT:
        d = isqrt(ring.D)
        if d * d == ring.D:
            return d
    raise UsageError("give --d, or --ring sqrt:D with D = d^2")


def cmd_verify(args) -> int:
    certs = []
    if args.lemma1:
        certs.append(("lemma1", check_lemma1(_need_ring(args), args.samples, args.seed)))
    if args.lemma2:
        ring = _need_ring(args)
        params = _params(args, lemma2_params(args.cap))
        certs.append(("lemma2", lemma2_scan(ring, args.cap, params)))
    if args.d is not None or not (args.lemma1 or args.lemma2):
        d = _corrigendum_d(args)
        certs.append(("corrigendum", verify_corrigendum(d, _n_values(args.n, d))))

    failed = any(c.overall is Status.FAIL for _, c in certs)
    inconclusive = sum(c.inconclusive_count for _, c in certs)
    if args.json:
        print(json.dumps([c.to_json() for _, c in certs], indent=1))
    else:
        for suite, c in certs:
            print(_header(c.ring))
            print(f"{suite}: {c.overall.value} ({len(c.checks)} checks, {len(c.failures)} failed, "
                  f"{c.inconclusive_count} inconclusive)")
            for chk in c.failures:
                print(f"  FAIL {chk.name}: {chk.claim}\n       {chk.witness}")
    if failed:
        return EXIT_FAIL
    if args.strict and inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_orbit(args) -> int:
    ring = _need_ring(args)
    rep = orbit_bfs(parse_pair(ring, args.pair), _params(args))
    lines = [_header(ring), f"# states {len(rep.order)}, exhausted {str(rep.frontier_exhausted).lower()}"]
    lines += [f"{p}\t{w}" for p, w in rep.witnesses.items()]
    _emit(args, rep.to_json(), lines)
    return EXIT_OK


def _search_output(args, res, what: str) -> int:
    if res.found:
        _emit(args, {"outcome": res.outcome.value, "word": str(res.word), "inconclusive": False},
              [f"{res.outcome.value}", str(res.word)])
        return EXIT_OK
    _emit(args, {"outcome": Outcome.NOT_FOUND.value, "word": None, "inconclusive": True},
          [f"NOT_FOUND (inconclusive: no {what} within budget; this is not a proof)"])
    return EXIT_INCONCLUSIVE


def cmd_equiv(args) -> int:
    ring = _need_ring(args)
    res = pairs_equivalent(parse_pair(ring, args.p), parse_pair(ring, args.q), _params(args))
    return _search_output(args, res, "connecting word")


def cmd_member(args) -> int:
    ring = _need_ring(args)
    res = matrix_in_E2(parse_matrix(ring, args.matrix), _params(args))
    return _search_output(args, res, "elementary word")


def cmd_reduce(args) -> int:
    ring = _need_ring(args)
    res = reduce_pair(parse_pair(ring, args.pair))
    _emit(args, {"outcome": res.outcome.value, "final": str(res.final), "word": str(res.word)},
          [_header(ring), res.outcome.value, str(res.final), str(res.word)])
    return EXIT_OK


def cmd_special(args) -> int:
    ring = _need_ring(args)
    pairs = [str(p) for p in enumerate_special(ring, args.cap)]
    _emit(args, pairs, [_header(ring)] + pairs)
    return EXIT_OK


def cmd_pell(args) -> int:
    sol = pell_fundamental(args.D)
    obj = None if sol is None else {"x": sol.x, "y": sol.y}
    _emit(args, {"D": args.D, "solution": obj}, ["none" if sol is None else f"{sol.x} {sol.y}"])
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "orbit": cmd_orbit,
    "equiv": cmd_equiv,
    "member": cmd_member,
    "reduce": cmd_reduce,
    "special": cmd_special,
    "pell": cmd_pell,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, E2Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
