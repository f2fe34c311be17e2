"""Command-line front end.

Exit codes: 0 success / positive verdict, 1 negative verdict (not a perfect
prismatoid, invalid certificate), 2 malformed input or arguments, 3 input not
full-dimensional, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .delaunay import DelaunayCertificate, box_scan, delaunay_embedding, verify_certificate
from .errors import (
    DimensionMismatch,
    EmptinessViolation,
    MalformedInput,
    NotFullDimensional,
    NotPerfectPrismatoid,
    VerificationFailure,
)
from .exact_linalg import format_rational
from .generators import (
    hanner_polytope,
    kalai_check,
    make_crosspolytope,
    make_cube,
    make_simplex,
    parse_hanner,
)
from .normalize import normalizing_map
from .polytope import HPolytope, VPolytope, central_symmetry_center, f_vector, h_to_v, load_polytope_json, v_to_h
from .two_level import is_perfect_prismatoid, is_prismatoid

EXIT_OK, EXIT_NEGATIVE, EXIT_MALFORMED, EXIT_DIMENSION, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Exit(EXIT_MALFORMED, f"cannot read {path}: {exc.strerror}") from exc


def _write(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_vpolytope(path: str) -> VPolytope:
    P = load_polytope_json(_read(path))
    if isinstance(P, HPolytope):
        P = h_to_v(P)
    return P


def _fmt_vec(v) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


def _info(msg: str, output: str | None) -> None:
    # keep stdout clean when it carries the JSON payload
    stream = sys.stderr if output in (None, "-") else sys.stdout
    print(msg, file=stream)


# -- commands ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.kind == "hanner":
        P = hanner_polytope(parse_hanner(args.param))
    else:
        try:
            d = int(args.param)
        except ValueError:
            raise _Exit(EXIT_MALFORMED, f"dimension must be an integer, got {args.param!r}")
        if d < 1:
            raise _Exit(EXIT_MALFORMED, "dimension must be at least 1")
        P = {"cube": make_cube, "cross": make_crosspolytope, "simplex": make_simplex}[args.kind](d)
    _write(_dumps(P.to_json()), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    P = _load_vpolytope(args.input)
    if P.affine_dim != P.dim:
        raise NotFullDimensional(f"affine hull has dimension {P.affine_dim} < {P.dim}")
    H = v_to_h(P)
    center = central_symmetry_center(P)
    prism = is_prismatoid(P)
    report = is_perfect_prismatoid(P)
    lines = [
        f"dimension: {P.dim}",
        f"vertices: {len(P.vertices)}",
        f"facets: {len(H.facets)}",
        "centrally symmetric: " + (f"yes, center {_fmt_vec(center)}" if center is not None else "no"),
        "prismatoid: " + (f"yes, direction {_fmt_vec(prism.direction)}" if prism else "no"),
        "perfect prismatoid: " + ("yes" if report else "no"),
    ]
    for v in report.violations:
        values = " ".join(format_rational(x) for x in v.values)
        lines.append(f"  facet {v.facet_index} normal {_fmt_vec(v.normal)} takes values {values}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK if report else EXIT_NEGATIVE


def cmd_normalize(args) -> int:
    P = _load_vpolytope(args.input)
    n = normalizing_map(P)
    _write(_dumps(n.image.to_json()), args.output)
    map_text = _dumps(n.map.to_json())
    if args.map_output:
        Path(args.map_output).write_text(map_text)
    else:
        sys.stderr.write(map_text)
    return EXIT_OK


def cmd_embed(args) -> int:
    P = _load_vpolytope(args.input)
    emb = delaunay_embedding(P)
    if args.oracle:
        if P.dim > 4:
            raise _Exit(EXIT_MALFORMED, "--oracle is limited to dimension 4")
        oracle = box_scan(emb.lattice, emb.ellipsoid, emb.normalization.image.vertices)
        if oracle != emb.lattice_points:
            raise EmptinessViolation("enumeration disagrees with the box-scan oracle")
    cert = emb.certificate
    _write(cert.dumps(), args.output)
    _info(f"lattice index: {emb.lattice.index}", args.output)
    _info(f"sphere points: {len(cert.vertices)}", args.output)
    if args.oracle:
        _info("oracle: agrees", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = DelaunayCertificate.loads(_read(args.input))
    report = verify_certificate(cert)
    if report:
        lines = ["valid"]
    else:
        lines = ["invalid"] + [f"  {p}" for p in report.problems]
        lines += [f"  interior point {list(z)}" for z in report.interior_points]
        lines += [f"  unlisted sphere point {list(z)}" for z in report.unlisted_points]
        lines += [f"  off-sphere vertex {list(z)}" for z in report.off_sphere_vertices]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK if report else EXIT_NEGATIVE


def cmd_fvector(args) -> int:
    P = _load_vpolytope(args.input)
    if P.affine_dim != P.dim:
        raise NotFullDimensional(f"affine hull has dimension {P.affine_dim} < {P.dim}")
    fv = f_vector(P)
    parts = [" ".join(str(c) for c in fv.counts), f"total {fv.total_with_self}"]
    if central_symmetry_center(P) is not None:
        k = kalai_check(P)
        parts.append(f"3^{P.dim} = {k.bound}")
        parts.append("equality" if k.equality else ("satisfied" if k.satisfied else "VIOLATED"))
    _write(" | ".join(parts) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prismatoid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a test polytope")
    p.add_argument("kind", choices=["cube", "cross", "simplex", "hanner"])
    p.add_argument("param", help="dimension, or a Hanner expression such as '(S I I)'")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="report prismatoid predicates")
    p.add_argument("input")
    p.add_argument("--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normalize", help="map a perfect prismatoid onto a 0/1-polytope")
    p.add_argument("input")
    p.add_argument("--output")
    p.add_argument("--map-output", help="where to write the affine map (default: stderr)")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("embed", help="emit a lattice Delaunay certificate")
    p.add_argument("input")
    p.add_argument("--output")
    p.add_argument("--oracle", action="store_true", help="cross-check with a brute-force box scan (d <= 4)")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="re-check a Delaunay certificate")
    p.add_argument("input")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fvector", help="print the f-vector and the 3^d comparison")
    p.add_argument("input")
    p.add_argument("--output")
    p.set_defaults(func=cmd_fvector)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except NotFullDimensional as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except NotPerfectPrismatoid as exc:
        print(f"not a perfect prismatoid: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (EmptinessViolation, VerificationFailure) as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (MalformedInput, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
