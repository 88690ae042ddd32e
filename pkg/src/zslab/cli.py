"""Command-line surface.

Every subcommand prints its principal value in text mode, a schema-stable
JSON document with ``--format json`` and flat key/value rows with
``--format csv``.  Sets are always emitted sorted and witnesses in
canonical serialization, so identical inputs give byte-identical output.

Exit codes: 0 success, 1 failed checks, 2 usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .abelian import GroupParseError, parse_group, parse_subset, d_star
from .cache import Cache, CacheIOError, default_cache_dir
from .invariants import daleth, delta_observed, u_M, u_k
from .lengths import LengthEngine, LengthSet, delta_of
from .structure import (
    classify_aamp,
    delta_star_observed,
    min_bound,
    min_delta_two_element,
)
from .verify import FAIL, REGISTRY, run_check, run_suite
from .zerosum import AtomSet, Sequence, enumerate_atoms


class CliError(Exception):
    """Usage-level error: reported on stderr, exit code 2."""


def _emit(data: dict, fmt: str, principal: str) -> None:
    if fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    elif fmt == "csv":
        rows = []
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (list, tuple)):
                value = ";".join(str(v) for v in value)
            rows.append(f"{key},{value}")
        print("\n".join(rows))
    else:
        print(principal)


def _group(args):
    try:
        return parse_group(args.group)
    except GroupParseError as exc:
        raise CliError(str(exc)) from exc


def _subset(group, args):
    spec = getattr(args, "subset", None)
    if not spec:
        return None
    try:
        return parse_subset(group, spec)
    except GroupParseError as exc:
        raise CliError(str(exc)) from exc


def _cache(args) -> Optional[Cache]:
    if getattr(args, "no_cache", False):
        return None
    root = getattr(args, "cache_dir", None)
    return Cache(Path(root) if root else default_cache_dir())


def _atoms_for(group, subset, args) -> AtomSet:
    cache = _cache(args)
    sub = tuple(subset) if subset is not None else tuple(group.elements())
    if cache is not None:
        try:
            hit = cache.load_atoms(group, sub)
            if hit is not None:
                return hit
        except CacheIOError as exc:
            print(f"warning: cache unavailable ({exc})", file=sys.stderr)
            cache = None
    atoms = enumerate_atoms(group, sub)
    if cache is not None:
        try:
            cache.store_atoms(atoms, __version__)
        except CacheIOError as exc:
            print(f"warning: cache not written ({exc})", file=sys.stderr)
    return atoms


def _parse_int_set(text: str, what: str) -> tuple[int, ...]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if not token.lstrip("-").isdigit():
            raise CliError(f"bad {what} token {token!r}")
        out.append(int(token))
    if not out:
        raise CliError(f"empty {what}")
    return tuple(sorted(set(out)))


# --------------------------------------------------------------------------
# subcommand handlers


def _cmd_group_info(args) -> int:
    G = _group(args)
    data = {
        "group": str(G),
        "invariant_factors": list(G.invariant_factors),
        "order": G.order,
        "rank": G.rank,
        "exponent": G.exponent,
        "d_star": d_star(G),
    }
    _emit(data, args.format, str(G) + f" order={G.order} rank={G.rank} "
          f"exponent={G.exponent} D*={d_star(G)}")
    return 0


def _cmd_atoms(args) -> int:
    G = _group(args)
    atoms = _atoms_for(G, _subset(G, args), args)
    data = {
        "group": str(G),
        "subset": [str(g) for g in atoms.subset],
        "atoms": [a.to_text() for a in atoms.atoms],
        "count": len(atoms.atoms),
        "davenport": atoms.davenport,
    }
    _emit(data, args.format, "\n".join(a.to_text() for a in atoms.atoms))
    return 0


def _cmd_davenport(args) -> int:
    G = _group(args)
    atoms = _atoms_for(G, _subset(G, args), args)
    data = {
        "group": str(G),
        "subset_size": len(atoms.subset),
        "davenport": atoms.davenport,
        "d_star": d_star(G),
    }
    _emit(data, args.format, str(atoms.davenport))
    return 0


def _cmd_lengths(args) -> int:
    G = _group(args)
    atoms = _atoms_for(G, None, args)
    try:
        B = Sequence.from_text(G, args.seq)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    engine = LengthEngine(atoms)
    cache = _cache(args)
    if cache is not None:
        try:
            memo = cache.load_memo(G, atoms.subset)
            if memo:
                engine.preload_memo(memo)
        except CacheIOError:
            cache = None
    try:
        L = engine.length_set(B)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if cache is not None:
        try:
            cache.store_memo(G, atoms.subset, engine.export_memo(), __version__)
        except CacheIOError:
            pass
    data = {"B": B.to_text(), "L": list(L.values), "delta": list(delta_of(L)) if len(L) else []}
    _emit(data, args.format, "L=" + str(L) + " delta=" + str(list(delta_of(L)) if len(L) else []))
    return 0


def _cmd_uk(args) -> int:
    G = _group(args)
    sub = _subset(G, args)
    atoms = _atoms_for(G, sub, args)
    rep = u_k(G, args.k, atom_set=atoms)
    data = {
        "group": str(G),
        "k": args.k,
        "U": list(rep.value.values),
        "rho": rep.value.max if len(rep.value) else None,
        "lambda": rep.value.min if len(rep.value) else None,
        "witnesses": [w.to_text() for w in rep.witnesses],
        "exact": rep.exact,
    }
    _emit(data, args.format, str(rep.value))
    return 0


def _cmd_um(args) -> int:
    G = _group(args)
    sub = _subset(G, args)
    atoms = _atoms_for(G, sub, args)
    M = _parse_int_set(args.m, "M")
    rep = u_M(G, M, atom_set=atoms)
    data = {
        "group": str(G),
        "M": list(M),
        "U": list(rep.value.values),
        "witnesses": [w.to_text() for w in rep.witnesses],
        "exact": rep.exact,
    }
    _emit(data, args.format, str(rep.value))
    return 0


def _cmd_rho(args) -> int:
    G = _group(args)
    atoms = _atoms_for(G, _subset(G, args), args)
    rep = u_k(G, args.k, atom_set=atoms)
    value = rep.value.max if len(rep.value) else None
    data = {"group": str(G), "k": args.k, "rho": value, "exact": True}
    _emit(data, args.format, str(value))
    return 0


def _cmd_lambda(args) -> int:
    G = _group(args)
    atoms = _atoms_for(G, _subset(G, args), args)
    rep = u_k(G, args.k, atom_set=atoms)
    value = rep.value.min if len(rep.value) else None
    data = {"group": str(G), "k": args.k, "lambda": value, "exact": True}
    _emit(data, args.format, str(value))
    return 0


def _cmd_daleth(args) -> int:
    G = _group(args)
    atoms = _atoms_for(G, _subset(G, args), args)
    rep = daleth(G, atom_set=atoms)
    data = {
        "group": str(G),
        "subset_size": len(atoms.subset),
        "daleth": rep.value,
        "witnesses": [w.to_text() for w in rep.witnesses],
        "exact": rep.exact,
    }
    _emit(data, args.format, str(rep.value))
    return 0


def _cmd_delta(args) -> int:
    G = _group(args)
    sub = _subset(G, args)
    atoms = _atoms_for(G, sub, args)
    rep = delta_observed(G, size_bound=args.bound, atom_set=atoms)
    data = {
        "group": str(G),
        "bound": args.bound,
        "delta_observed": list(rep.value),
        "witnesses": [w.to_text() for w in rep.witnesses],
        "exact": rep.exact,
    }
    _emit(data, args.format, str(list(rep.value)))
    return 0


def _cmd_delta_star(args) -> int:
    G = _group(args)
    try:
        rep = delta_star_observed(G, args.bound)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    data = {
        "group": str(G),
        "bound": args.bound,
        "delta_star_observed": list(rep.observed),
        "subsets": [
            {
                "subset": [str(g) for g in e.subset],
                "min": e.minimum,
                "method": e.method,
                "observed": list(e.observed),
            }
            for e in rep.entries
        ],
    }
    _emit(data, args.format, str(list(rep.observed)))
    return 0


def _cmd_mindelta_cf(args) -> int:
    try:
        value = min_delta_two_element(args.n, args.a)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    data = {"n": args.n, "a": args.a, "min_delta": value, "exact": True}
    _emit(data, args.format, str(value))
    return 0


def _cmd_aamp_classify(args) -> int:
    values = _parse_int_set(args.set, "set")
    try:
        L = LengthSet(values)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    desc = classify_aamp(L, args.d, args.bound)
    data = {
        "set": list(values),
        "d": args.d,
        "bound": args.bound,
        "is_aamp": desc is not None,
        "min_bound": min_bound(L, args.d),
    }
    if desc is not None:
        data["descriptor"] = {
            "y": desc.y,
            "d": desc.d,
            "period": list(desc.period),
            "bound": desc.bound,
            "l_prime": list(desc.l_prime),
            "l_star": list(desc.l_star),
            "l_dprime": list(desc.l_dprime),
        }
    principal = (
        f"AAMP y={desc.y} period={list(desc.period)}" if desc else "not an AAMP at this bound"
    )
    _emit(data, args.format, principal)
    return 0


def _cmd_verify(args) -> int:
    if getattr(args, "json_shortcut", False):
        args.format = "json"
    if args.check == "all":
        reports = run_suite(jobs=args.jobs)
    else:
        if args.check not in REGISTRY:
            raise CliError(
                f"unknown check {args.check!r}; known: all, {', '.join(sorted(REGISTRY))}"
            )
        reports = [run_check(args.check)]
    data = {
        "checks": [
            {k: v for k, v in r.as_dict().items() if k != "elapsed"} for r in reports
        ],
        "failed": sum(1 for r in reports if r.status == FAIL),
    }
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        for r in reports:
            print(f"{r.name:20s} {r.status:18s} {r.detail}")
            if r.status == FAIL:
                for w in r.witnesses:
                    print(f"    witness: {w}")
                for c in r.repro:
                    print(f"    repro:   {c}")
    return 1 if data["failed"] else 0


def _cmd_cache_purge(args) -> int:
    cache = _cache(args)
    if cache is None:
        raise CliError("--no-cache makes no sense with cache purge")
    removed = cache.purge()
    _emit({"purged": removed, "dir": str(cache.root)}, args.format, f"purged {removed} files")
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text",
                        help="output format (default text)")
    common.add_argument("--jobs", type=int, default=1, help="parallelism degree")
    common.add_argument("--cache-dir", default=None,
                        help=f"cache directory (default ${'{'}ZSLAB_CACHE{'}'} or ~/.cache/zslab)")
    common.add_argument("--no-cache", action="store_true", help="disable the cache")

    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", required=True, help='group spec: "C6", "C2^2xC12" or "2,2,12"')
    sub_opt = argparse.ArgumentParser(add_help=False)
    sub_opt.add_argument("--subset", default=None,
                         help='subset spec: elements separated by ";", e.g. "(1,0);(0,1)" or "1;4"')

    p = argparse.ArgumentParser(
        prog="zslab",
        description="arithmetic invariants of zero-sum sequences over finite abelian groups",
    )
    p.add_argument("--version", action="version", version=f"zslab {__version__}")
    sp = p.add_subparsers(dest="command", required=True)

    g = sp.add_parser("group", help="group utilities")
    gsp = g.add_subparsers(dest="subcommand", required=True)
    gi = gsp.add_parser("info", parents=[common, grp], help="invariant factors and constants")
    gi.set_defaults(func=_cmd_group_info)

    a = sp.add_parser("atoms", parents=[common, grp, sub_opt],
                      help="enumerate the minimal zero-sum sequences")
    a.set_defaults(func=_cmd_atoms)

    d = sp.add_parser("davenport", parents=[common, grp, sub_opt], help="Davenport constant")
    d.set_defaults(func=_cmd_davenport)

    l = sp.add_parser("lengths", parents=[common, grp], help="set of lengths of a sequence")
    l.add_argument("--seq", required=True, help='sequence text, e.g. "[(1)*2,(2)*1]"')
    l.set_defaults(func=_cmd_lengths)

    for name, handler, k_help in (("uk", _cmd_uk, "U_k"), ("rho", _cmd_rho, "rho_k"),
                                  ("lambda", _cmd_lambda, "lambda_k")):
        q = sp.add_parser(name, parents=[common, grp, sub_opt], help=k_help)
        q.add_argument("--k", type=int, required=True)
        q.set_defaults(func=handler)

    um = sp.add_parser("um", parents=[common, grp, sub_opt], help="U_M for a set M")
    um.add_argument("--m", required=True, help='comma list, e.g. "2,5"')
    um.set_defaults(func=_cmd_um)

    dl = sp.add_parser("daleth", parents=[common, grp, sub_opt], help="the daleth invariant")
    dl.set_defaults(func=_cmd_daleth)

    de = sp.add_parser("delta", parents=[common, grp, sub_opt], help="observed distance set")
    de.add_argument("--bound", type=int, required=True)
    de.set_defaults(func=_cmd_delta)

    ds = sp.add_parser("delta-star", parents=[common, grp], help="observed Delta*")
    ds.add_argument("--bound", type=int, required=True)
    ds.set_defaults(func=_cmd_delta_star)

    mc = sp.add_parser("mindelta-cf", parents=[common],
                       help="min Delta({e,ae}) via continued fractions")
    mc.add_argument("--n", type=int, required=True)
    mc.add_argument("--a", type=int, required=True)
    mc.set_defaults(func=_cmd_mindelta_cf)

    am = sp.add_parser("aamp", help="AAMP machinery")
    asp = am.add_subparsers(dest="subcommand", required=True)
    ac = asp.add_parser("classify", parents=[common], help="classify a set as an AAMP")
    ac.add_argument("--set", required=True, help='comma list, e.g. "2,4,5,7"')
    ac.add_argument("--d", type=int, required=True)
    ac.add_argument("--bound", type=int, required=True)
    ac.set_defaults(func=_cmd_aamp_classify)

    v = sp.add_parser("verify", parents=[common], help="run registered theorem checks")
    v.add_argument("check", nargs="?", default="all",
                   help='check name or "all" (default)')
    v.add_argument("--json", dest="json_shortcut", action="store_true",
                   help="shortcut for --format json")
    v.set_defaults(func=_cmd_verify)

    c = sp.add_parser("cache", help="cache maintenance")
    csp = c.add_subparsers(dest="subcommand", required=True)
    cp = csp.add_parser("purge", parents=[common], help="remove all cache entries")
    cp.set_defaults(func=_cmd_cache_purge)

    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
