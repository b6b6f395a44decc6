"""``qbps`` command line.

Exit codes: 0 success, 2 input error, 3 convention-violation diagnostic.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .arith import LaurentPoly, RationalFunction
from .arith import LaurentParseError
from .bps import BpsTable, ConventionViolation, NotSymmetricError, bps_trivial, bps_xi
from .cache import ResultCache, cache_key
from .gamma import (
    INF,
    GammaClass,
    GammaError,
    blowup_pullback,
    flop_transform,
    generic_delta,
    gv_extract,
    pairing_compatible,
    wall_membership,
)
from .io import (
    InputError,
    cone_from_json,
    cycle_from_json,
    gamma_from_json,
    kahler_from_json,
    load_json,
    parse_matrix,
    parse_vector,
    quiver_from_json,
    quiver_to_json,
    stability_from_json,
)
from .oracle import OracleGuardError, brute_force_ss_count
from .quiver import dim_vector, stack_count
from .stability import hn_strata, semistable_count, stratum_contribution

EXIT_OK, EXIT_INPUT, EXIT_CONVENTION = 0, 2, 3


class CliError(Exception):
    def __init__(self, msg: str, code: int = EXIT_INPUT):
        super().__init__(msg)
        self.code = code


def _records(items: list, indent: str) -> str:
    inner = ",\n".join(indent + "  " + json.dumps(x) for x in items)
    return "[\n" + inner + "\n" + indent + "]"


def _dumps(obj) -> str:
    """JSON with one record per line: readable, diffable and still valid JSON."""
    def is_records(x):
        return isinstance(x, list) and x and all(isinstance(y, dict) for y in x)

    if is_records(obj):
        return _records(obj, "") + "\n"
    if not isinstance(obj, dict):
        return json.dumps(obj) + "\n"
    parts = []
    for k, val in obj.items():
        body = _records(val, "  ") if is_records(val) else json.dumps(val)
        parts.append(f"  {json.dumps(k)}: {body}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def _tsv(header: list[str], rows: list[list]) -> str:
    return "\n".join("\t".join(str(x) for x in r) for r in [header] + rows) + "\n"


def _cached(args, command: str, payload, compute) -> str:
    if args.no_cache:
        return compute()
    cache = ResultCache(args.cache_dir)
    key = cache_key(command, payload)
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = compute()
    cache.put(key, out)
    return out


def _load_quiver(path):
    return quiver_from_json(load_json(path, "quiver"), str(path))


def _load_stability(path, Q):
    xi = stability_from_json(load_json(path, "stability"), str(path))
    if len(xi) != Q.n:
        raise InputError(f"stability has {len(xi)} entries, quiver has {Q.n} vertices", str(path))
    return xi


def _dim(text: str, Q):
    m = parse_vector(text, "dim")
    try:
        m = dim_vector(Q, m)
    except ValueError as exc:
        raise InputError(str(exc), "<dim>") from None
    if not any(m):
        raise InputError("dimension vector must be nonzero", "<dim>")
    return m


def render_table(table: BpsTable, fmt: str) -> str:
    if fmt == "tsv":
        rows = [[",".join(map(str, e["dim"])), e["omega"]] for e in table.to_json()["entries"]]
        return _tsv(["dim", "omega"], rows)
    return _dumps(table.to_json())


def cmd_dt(args) -> str:
    Q = _load_quiver(args.quiver)
    xi = _load_stability(args.stability, Q) if args.stability else None
    if args.max_dim < 1:
        raise InputError("--max-dim must be >= 1", "<max-dim>")
    payload = {"quiver": quiver_to_json(Q), "stability": xi.to_json() if xi else None,
               "N": args.max_dim, "format": args.format}

    def compute():
        t = bps_trivial(Q, args.max_dim) if xi is None else bps_xi(Q, xi, args.max_dim)
        return render_table(t, args.format)

    return _cached(args, "dt", payload, compute)


def cmd_hn(args) -> str:
    Q = _load_quiver(args.quiver)
    xi = _load_stability(args.stability, Q)
    m = _dim(args.dim, Q)
    payload = {"quiver": quiver_to_json(Q), "stability": xi.to_json(), "dim": list(m), "format": args.format}

    def compute():
        strata = hn_strata(xi, m)
        contribs = [stratum_contribution(Q, xi, s) for s in strata]
        total = sum(contribs, RationalFunction(LaurentPoly({}, "q")))
        sc = stack_count(Q, m)
        ok = total == sc
        ss = semistable_count(Q, xi, m)
        if args.format == "tsv":
            rows = [[";".join(",".join(map(str, p)) for p in s), str(c)] for s, c in zip(strata, contribs)]
            return _tsv(["stratum", "contribution"], rows) + f"# semistable\t{ss}\n# stack_count\t{sc}\n# identity\t{'OK' if ok else 'FAIL'}\n"
        return _dumps({
            "dim": list(m),
            "stack_count": str(sc),
            "semistable": str(ss),
            "strata": [{"parts": [list(p) for p in s], "contribution": str(c)} for s, c in zip(strata, contribs)],
            "identity": ok,
        })

    return _cached(args, "hn", payload, compute)


def cmd_gv(args) -> str:
    try:
        phi = LaurentPoly.parse(args.phi)
    except LaurentParseError as exc:
        raise InputError(str(exc), "<phi>", 1, exc.column) from None
    ns = gv_extract(phi)
    if args.format == "tsv":
        return _tsv(["g", "n_g"], [[g, n] for g, n in enumerate(ns)])
    return _dumps([{"g": g, "n": n} for g, n in enumerate(ns)])


def _gamma_arg(args) -> GammaClass:
    if args.gamma:
        return gamma_from_json(load_json(args.gamma, "gamma"), args.gamma)
    if args.beta is None or args.m is None:
        raise InputError("need --gamma FILE or both --beta and --m", "<gamma>")
    return GammaClass(parse_vector(args.beta, "beta"), args.m)


def cmd_gamma(args) -> str:
    sub = args.gamma_cmd
    if sub == "walls":
        v = _gamma_arg(args)
        sigma = kahler_from_json(load_json(args.kahler, "kahler"), args.kahler)
        cone = cone_from_json(load_json(args.cone, "cone"), args.cone)
        walls = wall_membership(sigma, v, cone, args.m_bound)
        if args.format == "json":
            return _dumps({"gamma": str(v), "walls": [[str(a), str(b)] for a, b in walls]})
        lines = [f"{len(walls)} wall decomposition(s) for {v}"]
        lines += [f"{a} + {b}" for a, b in walls]
        return "\n".join(lines) + "\n"
    if sub == "delta":
        if args.gamma:
            beta = gamma_from_json(load_json(args.gamma, "gamma"), args.gamma).beta
        elif args.beta:
            beta = parse_vector(args.beta, "beta")
        else:
            raise InputError("need --gamma FILE or --beta", "<beta>")
        if args.kahler:
            omega = kahler_from_json(load_json(args.kahler, "kahler"), args.kahler).omega
        elif args.omega:
            omega = parse_vector(args.omega, "omega", rational=True)
        else:
            raise InputError("need --kahler FILE or --omega", "<omega>")
        H = parse_vector(args.H, "H", rational=True)
        cone = cone_from_json(load_json(args.cone, "cone"), args.cone)
        d = generic_delta(beta, H, omega, cone)
        text = "inf" if d == INF else str(d)
        return _dumps({"delta0": text}) if args.format == "json" else f"delta0 = {text}\n"
    if sub == "flop":
        M = parse_matrix(args.matrix, "matrix")
        v = _gamma_arg(args)
        w = flop_transform(M, v)
        out = {"image": str(w)}
        if args.divisor_matrix:
            out["pairing_compatible"] = pairing_compatible(M, parse_matrix(args.divisor_matrix, "divisor-matrix"))
        if args.format == "json":
            return _dumps(out)
        s = str(w) + "\n"
        if "pairing_compatible" in out:
            s += f"pairing compatible: {'yes' if out['pairing_compatible'] else 'no'}\n"
        return s
    if sub == "blowup":
        P = parse_matrix(args.matrix, "matrix")
        gamma = cycle_from_json(load_json(args.cycle, "cycle"), args.cycle)
        out = blowup_pullback(P, gamma)
        comps = [{"mult": a, "class": list(c)} for a, c in out.components]
        if args.format == "json":
            return _dumps({"components": comps})
        return " + ".join(f"{a}[({','.join(map(str, c))})]" for a, c in out.components) + "\n" if comps else "0\n"
    raise CliError(f"unknown gamma subcommand {sub!r}")


def cmd_oracle(args) -> str:
    Q = _load_quiver(args.quiver)
    xi = _load_stability(args.stability, Q)
    m = _dim(args.dim, Q)
    payload = {"quiver": quiver_to_json(Q), "stability": xi.to_json(), "dim": list(m), "field": args.field}

    def compute():
        n = brute_force_ss_count(Q, xi, m, args.field)
        return _dumps({"dim": list(m), "field": args.field, "ss_points": n})

    return _cached(args, "oracle-ss-count", payload, compute)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qbps", description="BPS/DT invariants of symmetric quivers and GV arithmetic")
    p.add_argument("--version", action="version", version=f"qbps {__version__}")
    p.add_argument("--cache-dir", default=None, help="cache directory (default: $QBPS_CACHE or ~/.cache/qbps)")
    p.add_argument("--no-cache", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    dt = sub.add_parser("dt", help="BPS invariants via plethystic inversion")
    dt.add_argument("--quiver", required=True)
    dt.add_argument("--stability")
    dt.add_argument("--max-dim", type=int, required=True)
    dt.add_argument("--format", choices=["json", "tsv"], default="json")
    dt.set_defaults(func=cmd_dt)

    hn = sub.add_parser("hn", help="HN strata and semistable stack count")
    hn.add_argument("--quiver", required=True)
    hn.add_argument("--stability", required=True)
    hn.add_argument("--dim", required=True)
    hn.add_argument("--format", choices=["json", "tsv"], default="json")
    hn.set_defaults(func=cmd_hn)

    gv = sub.add_parser("gv", help="GV invariants from a symmetric Laurent polynomial")
    gv.add_argument("--phi", required=True)
    gv.add_argument("--format", choices=["json", "tsv"], default="json")
    gv.set_defaults(func=cmd_gv)

    ga = sub.add_parser("gamma", help="lattice computations on N_1(X) + Z")
    gsub = ga.add_subparsers(dest="gamma_cmd", required=True)
    for name in ("walls", "delta", "flop", "blowup"):
        s = gsub.add_parser(name)
        s.add_argument("--format", choices=["text", "json"], default="text")
        if name in ("walls", "delta", "flop"):
            s.add_argument("--gamma", help="Gamma JSON file")
            s.add_argument("--beta", help="curve class, e.g. '1,1'")
        if name in ("walls", "flop"):
            s.add_argument("--m", type=int)
        if name in ("walls", "delta"):
            s.add_argument("--cone", required=True)
            s.add_argument("--kahler", required=(name == "walls"))
        if name == "walls":
            s.add_argument("--m-bound", type=int, default=5)
        if name == "delta":
            s.add_argument("--H", required=True)
            s.add_argument("--omega")
        if name in ("flop", "blowup"):
            s.add_argument("--matrix", required=True)
        if name == "flop":
            s.add_argument("--divisor-matrix")
        if name == "blowup":
            s.add_argument("--cycle", required=True)
    ga.set_defaults(func=cmd_gamma)

    orc = sub.add_parser("oracle", help="brute-force finite-field checks")
    osub = orc.add_subparsers(dest="oracle_cmd", required=True)
    ss = osub.add_parser("ss-count")
    ss.add_argument("--quiver", required=True)
    ss.add_argument("--stability", required=True)
    ss.add_argument("--dim", required=True)
    ss.add_argument("--field", type=int, choices=[2, 3, 4], required=True)
    ss.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except ConventionViolation as exc:
        print(f"qbps: convention violation: {exc}", file=sys.stderr)
        return EXIT_CONVENTION
    except CliError as exc:
        print(f"qbps: {exc}", file=sys.stderr)
        return exc.code
    except (InputError, NotSymmetricError, GammaError, OracleGuardError, ValueError, ArithmeticError) as exc:
        print(f"qbps: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
