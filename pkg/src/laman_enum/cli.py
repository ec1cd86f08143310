"""Command-line front end.

Instance format (``#`` starts a comment line)::

    n
    x1 y1
    ...
    xn yn
    m
    u1 v1
    ...
    um vm

Exit codes: 0 success, 2 parse/usage error, 3 collinear points,
4 invalid constraints, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import Optional, TextIO
from xml.sax.saxutils import escape

from .cdt import ConstraintError, underlying_triangulation
from .enumeration import Emission, EnumerationError, Framework, LamanEnumerator
from .geometry import Edge, GenericityError, GeometryError, PointSet
from .oracle import OracleGuardError, brute_frameworks, laman_by_counting
from .rigidity import is_independent

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GENERICITY = 3
EXIT_CONSTRAINTS = 4
EXIT_MISMATCH = 5

VERIFY_MAX_N = 8

log = logging.getLogger("laman_enum")


class InstanceError(ValueError):
    pass


def _number(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(Decimal(token))
    except (InvalidOperation, ValueError):
        raise InstanceError(f"line {lineno}: bad coordinate {token!r}") from None


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceError(f"line {lineno}: expected integer, got {token!r}") from None


def parse_text(text: str) -> tuple[PointSet, list[Edge]]:
    lines = [
        (k, ln.split())
        for k, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    pos = 0

    def take(width: int) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise InstanceError("unexpected end of file")
        k, toks = lines[pos]
        pos += 1
        if len(toks) != width:
            raise InstanceError(f"line {k}: expected {width} fields, got {len(toks)}")
        return k, toks

    k, (tok,) = take(1)
    n = _int(tok, k)
    if n < 3:
        raise InstanceError(f"line {k}: need at least 3 points")
    coords = []
    for _ in range(n):
        k, (xs, ys) = take(2)
        coords.append((_number(xs, k), _number(ys, k)))
    m = 0
    if pos < len(lines):
        k, (tok,) = take(1)
        m = _int(tok, k)
    raw = []
    for _ in range(m):
        k, (us, vs) = take(2)
        u, v = _int(us, k), _int(vs, k)
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise ConstraintError(f"line {k}: invalid constraint {u} {v}")
        raw.append(Edge.of(u, v))
    if pos != len(lines):
        raise InstanceError(f"line {lines[pos][0]}: trailing content")
    if len(set(raw)) != len(raw):
        raise ConstraintError("duplicate constraint edge")
    try:
        ps = PointSet(coords)
    except GeometryError as exc:
        raise InstanceError(str(exc)) from None
    return ps, raw


def parse_instance(path) -> tuple[PointSet, list[Edge]]:
    """Read and validate an instance file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(str(exc)) from None
    ps, F = parse_text(text)
    report = ps.genericity()
    if not report.ok:
        raise GenericityError(report)
    if report.cocircular:
        log.info("%d co-circular quadruples (handled by tie-breaking)", len(report.cocircular))
    for i, e in enumerate(F):
        for f in F[i + 1:]:
            if ps.crosses(e, f):
                raise ConstraintError(f"constraints {e} and {f} cross")
    if not is_independent(F, ps.n):
        raise ConstraintError("constraints are dependent in the Laman matroid")
    return ps, F


# -- output --------------------------------------------------------------------


def format_record(em: Emission, as_json: bool = False, meta: bool = False) -> str:
    if as_json:
        rec = {"index": em.index, "edges": [[u, v] for u, v in em.framework.edges]}
        if meta:
            rec["depth"] = em.depth
            rec["swap"] = None if em.swap is None else [list(em.swap[0]), list(em.swap[1])]
        return json.dumps(rec, separators=(",", ":"))
    line = f"L {em.index}: {em.framework.format()}"
    if meta:
        swap = "-" if em.swap is None else f"-({em.swap[0].u},{em.swap[0].v})+({em.swap[1].u},{em.swap[1].v})"
        line += f" depth={em.depth} swap={swap}"
    return line


def render_svg(ps: PointSet, framework: Framework, constraints, fill_edges, size: int = 400) -> str:
    """Framework edges solid (constraints thicker), triangulation fill dotted."""
    xs = [float(x) for x, _ in ps.coords]
    ys = [float(y) for _, y in ps.coords]
    w = max(xs) - min(xs) or 1.0
    h = max(ys) - min(ys) or 1.0
    mx, my = 0.05 * w, 0.05 * h
    x0, y1 = min(xs) - mx, max(ys) + my
    span = max(w + 2 * mx, h + 2 * my)
    k = size / span

    def at(i: int) -> tuple[float, float]:
        return (xs[i - 1] - x0) * k, (y1 - ys[i - 1]) * k

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{escape(framework.format())}</title>",
    ]
    for u, v in sorted(fill_edges):
        (ax, ay), (bx, by) = at(u), at(v)
        out.append(
            f'<line class="fill" x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
            'stroke="#888" stroke-width="1" stroke-dasharray="3,3"/>'
        )
    for e in framework.edges:
        (ax, ay), (bx, by) = at(e.u), at(e.v)
        width = 3.5 if e in constraints else 1.5
        out.append(
            f'<line class="edge" x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
            f'stroke="black" stroke-width="{width}"/>'
        )
    for i in ps.ids():
        x, y = at(i)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="white" stroke="black"/>')
        out.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="12">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def verify(ps: PointSet, F, enumerator: LamanEnumerator, stream: TextIO) -> bool:
    if ps.n > VERIFY_MAX_N:
        raise OracleGuardError(f"--verify supports n <= {VERIFY_MAX_N}, got {ps.n}")
    seen: list[tuple] = []
    for em in enumerator.run():
        seen.append(tuple(tuple(e) for e in em.framework.edges))
    keys = set(seen)
    expected = brute_frameworks(ps, F).frameworks
    bad = [k for k in keys if not laman_by_counting(k, ps.n) or not set(F) <= set(k)]
    ok = keys == expected and len(keys) == len(seen) and not bad
    print(
        f"verify: emitted={len(seen)} distinct={len(keys)} oracle={len(expected)} "
        f"missing={len(expected - keys)} extra={len(keys - expected)} invalid={len(bad)} "
        f"{'OK' if ok else 'MISMATCH'}",
        file=stream,
    )
    return ok


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="laman-enum",
        description="Enumerate constrained non-crossing Laman frameworks on a point set.",
    )
    p.add_argument("instance", help="instance file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count-only", action="store_true", help="print only the number of frameworks")
    mode.add_argument("--root-only", action="store_true", help="print only the search-tree root")
    mode.add_argument("--verify", action="store_true", help="compare against brute force (n <= 8)")
    p.add_argument("--json", action="store_true", help="one JSON object per line")
    p.add_argument("--meta", action="store_true", help="include depth and exchanged edges")
    p.add_argument("--svg-dir", type=Path, help="write one SVG drawing per framework")
    p.add_argument("--slow-parent-check", action="store_true",
                   help="test children by computing their parent directly")
    p.add_argument("--max-outputs", type=int, metavar="K", help="stop after K frameworks")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run(args: argparse.Namespace, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if args.max_outputs is not None and args.max_outputs < 1:
        print("--max-outputs must be positive", file=stderr)
        return EXIT_PARSE
    if args.verify and (args.svg_dir or args.max_outputs):
        print("--verify cannot be combined with --svg-dir or --max-outputs", file=stderr)
        return EXIT_PARSE
    try:
        ps, F = parse_instance(args.instance)
        enumerator = LamanEnumerator(ps, F, fast=not args.slow_parent_check, validate=False)
    except InstanceError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except GenericityError as exc:
        print(f"genericity violation: {exc}", file=stderr)
        return EXIT_GENERICITY
    except (ConstraintError, EnumerationError) as exc:
        print(f"invalid constraints: {exc}", file=stderr)
        return EXIT_CONSTRAINTS

    if args.root_only:
        root = Emission(1, enumerator.root, 0, None)
        print(format_record(root, args.json, args.meta), file=stdout)
        return EXIT_OK
    if args.verify:
        try:
            ok = verify(ps, F, enumerator, stdout)
        except OracleGuardError as exc:
            print(f"oracle guard: {exc}", file=stderr)
            return EXIT_PARSE
        return EXIT_OK if ok else EXIT_MISMATCH

    if args.svg_dir:
        args.svg_dir.mkdir(parents=True, exist_ok=True)
    fset = frozenset(F)
    count = 0
    for em in enumerator.run(args.max_outputs):
        count += 1
        if not args.count_only:
            print(format_record(em, args.json, args.meta), file=stdout, flush=True)
        if args.svg_dir:
            t = underlying_triangulation(ps, em.framework.edge_set, base=enumerator.cdt)
            fill = t.edges() - em.framework.edge_set
            path = args.svg_dir / f"framework_{em.index:06d}.svg"
            path.write_text(render_svg(ps, em.framework, fset, fill))
    if args.count_only:
        print(count, file=stdout)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
