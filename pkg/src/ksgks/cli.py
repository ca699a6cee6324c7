"""Command-line surface: construction, verification, search, criticality,
CNF export, and spin-j generation as reproducible plain-text reports.

Reports are byte-stable for identical inputs in serial mode: fixed field
order, no timestamps.  Exit status: 0 when every requested check passes,
1 on verification/search-input failures, 2 on bad arguments or unreadable
input.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import algebra, catalog, cnf, coloring, covers, rays, spin


class CliError(Exception):
    def __init__(self, message: str, exit_code: int = 2):
        super().__init__(message)
        self.exit_code = exit_code


def _resolve_rayset(name_or_path: str) -> rays.RaySet:
    if name_or_path in catalog.RAYSET_BUILDERS:
        return catalog.builtin_rayset(name_or_path)
    if os.path.exists(name_or_path):
        try:
            return rays.load_rayset(name_or_path)
        except (OSError, rays.RayFormatError) as e:
            raise CliError(f"cannot read ray set {name_or_path!r}: {e}") from None
    raise CliError(
        f"unknown ray set {name_or_path!r} (not a built-in name or readable file); "
        f"built-ins: {', '.join(sorted(catalog.RAYSET_BUILDERS))}"
    )


def _resolve_cover(name_or_path: str, rays_arg: str | None) -> covers.CoverStructure:
    if name_or_path in catalog.COVER_BUILDERS:
        return catalog.builtin_cover(name_or_path)
    if os.path.exists(name_or_path):
        rayset = _resolve_rayset(rays_arg) if rays_arg else None
        try:
            return covers.load_cover(name_or_path, rayset=rayset)
        except (OSError, covers.CoverFormatError) as e:
            raise CliError(f"cannot read cover {name_or_path!r}: {e}") from None
    raise CliError(
        f"unknown cover {name_or_path!r} (not a built-in name or readable file); "
        f"built-ins: {', '.join(sorted(catalog.COVER_BUILDERS))}"
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_rayset(args) -> int:
    rs = _resolve_rayset(args.name)
    _emit(rays.format_rayset(rs), args.out)
    return 0


def cmd_bases(args) -> int:
    rs = _resolve_rayset(args.rays)
    contexts = covers.enumerate_bases(rs, tol=args.tolerance)
    lines = [f"{c.name} " + " ".join(str(e) for e in c.element_ids) for c in contexts]
    _emit("\n".join(lines) + ("\n" if lines else ""), args.out)
    return 0


def _certificate_lines(cert: covers.ParityCertificate) -> list[str]:
    lines = [f"parity contexts={cert.context_count}"]
    for e in sorted(cert.incidence_counts):
        lines.append(f"inc {e} {cert.incidence_counts[e]}")
    lines.append(f"certificate {'VALID' if cert.valid else 'INVALID'}")
    return lines


def cmd_verify(args) -> int:
    cover = _resolve_cover(args.cover, args.rays)
    lines = [f"kind {cover.kind}", f"contexts {len(cover.contexts)}"]
    problems = covers.verify_cover(cover, tol=args.tolerance)
    bad_contexts = {p.split(":", 1)[0] for p in problems}
    for c in cover.contexts:
        tag = "FAIL" if f"context {c.name}" in bad_contexts else "ok"
        lines.append(f"ctx {c.name} {tag} elements={len(c)} weight={c.weight}")
    for p in problems:
        lines.append(f"problem {p}")
    lines.extend(_certificate_lines(covers.parity_certificate(cover)))
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if problems else 0


def _format_search(result: coloring.SearchResult) -> str:
    lines = [f"status {result.status}"]
    if result.witness is not None:
        ones = sorted(e for e, v in result.witness.items() if v == 1)
        lines.append("witness " + " ".join(str(e) for e in ones))
    lines.append(f"nodes {result.nodes_visited}")
    if result.solutions is not None:
        lines.append(f"solutions {result.solutions}")
    return "\n".join(lines) + "\n"


def cmd_search(args) -> int:
    cover = _resolve_cover(args.cover, args.rays)
    if not cover.contexts:
        raise CliError("cover has no contexts; nothing to search", exit_code=1)
    result = coloring.search_assignment(cover, jobs=args.jobs)
    _emit(_format_search(result), args.out)
    return 0


def cmd_critical(args) -> int:
    cover = _resolve_cover(args.cover, args.rays)
    if not cover.contexts:
        raise CliError("cover has no contexts; nothing to analyze", exit_code=1)
    report = coloring.criticality_report(cover, semantics=args.semantics, jobs=args.jobs)
    text = coloring.format_criticality(report)
    verdict = "CRITICAL" if report.critical else "NOT CRITICAL"
    _emit(text + f"verdict {verdict}\n", args.out)
    return 0


def cmd_cnf(args) -> int:
    cover = _resolve_cover(args.cover, args.rays)
    _emit(cnf.export_cnf(cover), args.out)
    return 0


def cmd_spin(args) -> int:
    try:
        j = Fraction(args.j)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad j value {args.j!r}") from None
    if args.dirs:
        try:
            directions = spin.load_directions(args.dirs)
        except (OSError, spin.DirectionFormatError) as e:
            raise CliError(f"cannot read directions {args.dirs!r}: {e}") from None
    else:
        directions = spin.random_directions(args.random, seed=args.seed)
    try:
        cover = spin.generate_gks(j, directions, args.r, tol=args.tolerance)
        params = spin.construction_params(j, len(directions), args.r)
    except (ValueError, covers.CoverError) as e:
        raise CliError(str(e), exit_code=1) from None
    rays.save_rayset(cover.rayset, args.out + ".rays")
    covers.save_cover(cover, args.out + ".cover")
    sys.stdout.write(
        f"j={params.j} d={params.d} n={params.n} r={params.r} "
        f"N={params.N} M={params.M} parity_ok={'yes' if params.parity_ok else 'no'}\n"
        f"wrote {args.out}.rays and {args.out}.cover\n"
    )
    return 0


def cmd_params(args) -> int:
    rows = spin.find_parity_params(args.n_max)
    lines = [f"{n} {r} {big_n} {big_m}" for n, r, big_n, big_m in rows]
    _emit("\n".join(lines) + ("\n" if lines else ""), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksgks",
        description="Kochen-Specker / generalized Kochen-Specker construction and verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, cover=False, rayset=False, jobs=False, semantics=False):
        if cover:
            p.add_argument("--cover", required=True, help="built-in cover name or cover file")
        if rayset or cover:
            p.add_argument("--rays", help="built-in ray set name or ray file")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument(
            "--tolerance",
            type=float,
            default=algebra.TOL_ID,
            help="floating-backend comparison tolerance",
        )
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="search parallelism (default serial)")
        if semantics:
            p.add_argument(
                "--semantics",
                choices=[coloring.DROP_CONTEXT, coloring.SHRINK_CONTEXT],
                default=coloring.DROP_CONTEXT,
                help="deletion semantics for criticality",
            )

    p = sub.add_parser("rayset", help="emit a ray set in the ray file format")
    p.add_argument("name", help="built-in ray set name or ray file")
    add_common(p)
    p.set_defaults(func=cmd_rayset)

    p = sub.add_parser("bases", help="enumerate all complete orthogonal bases")
    p.add_argument("--rays", required=True, help="built-in ray set name or ray file")
    add_common(p)
    p.set_defaults(func=cmd_bases)

    p = sub.add_parser("verify", help="re-verify a cover and print its parity certificate")
    add_common(p, cover=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="decide exactly-one satisfiability of a cover")
    add_common(p, cover=True, jobs=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("critical", help="single-deletion criticality analysis")
    add_common(p, cover=True, jobs=True, semantics=True)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("cnf", help="export a cover as DIMACS CNF")
    add_common(p, cover=True)
    p.set_defaults(func=cmd_cnf)

    p = sub.add_parser("spin", help="generate a spin-j n-direction POVM cover")
    p.add_argument("--j", required=True, help="spin (half-integer, e.g. 1/2, 1, 3/2)")
    p.add_argument("--r", required=True, type=int, help="POVM weight denominator")
    p.add_argument("--dirs", help="direction list file (dir <theta> <phi> lines)")
    p.add_argument("--random", type=int, help="draw this many random directions instead")
    p.add_argument("--seed", type=int, default=None, help="seed for --random")
    p.add_argument("--out", required=True, help="output basename (.rays and .cover)")
    p.add_argument("--tolerance", type=float, default=algebra.TOL_ID)
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("params", help="list (n, r, N, M) with N odd and M even")
    p.add_argument("n_max", type=int)
    add_common(p)
    p.set_defaults(func=cmd_params)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "spin" and bool(args.dirs) == bool(args.random):
        parser.error("spin requires exactly one of --dirs or --random")
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except covers.CompletenessError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
