"""Problem files and SVG rendering of loops.

Problem file format (version 1), line oriented, ``#`` starts a comment::

    format 1
    lattice <n>
    row <i> <n integers>          # i = 1..n, in order
    sphere <n integers>           # zero or more, in sequence order
    repeat <k>                    # optional, default 1
    frame a <n rationals>         # optional pair; rationals as p/q or ints
    frame b <n rationals>

A frame may be omitted only when the lattice is one of the catalog
Gabrielov lattices (which carry a standard frame) or has ``b+ < 2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dynkin_catalog import (
    CatalogEntry,
    Frame,
    FrameError,
    GabrielovDiagram,
    check_frame,
    find_by_lattice,
    frame_vectors,
)
from .exact_lattice import Lattice, LatticeError
from .picard_lefschetz import SphereClass, SphereError, SphereSeq
from .spin_number import LoopPolyline, winding_number

FORMAT_VERSION = 1


class ProblemFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ProblemFile:
    lattice: Lattice
    spheres: SphereSeq
    frame: Frame | None = None

    @property
    def repeat(self) -> int:
        return self.spheres.repeat


def resolve_frame(problem: ProblemFile) -> Frame:
    """Explicit frame, or the standard one for a catalog lattice."""
    if problem.frame is not None:
        return problem.frame
    entry = find_by_lattice(problem.lattice)
    if entry is None:
        raise FrameError("frame required for custom lattice")
    return frame_vectors(entry.diagram)


_INT = re.compile(r"[+-]?\d+\Z")
_RAT = re.compile(r"[+-]?\d+(/\d+)?\Z")


def _tokens(line: str):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _int(tok, lineno):
    text, col = tok
    if not _INT.match(text):
        raise ProblemFileError(f"expected integer, got {text!r}", lineno, col)
    return int(text)


def _rat(tok, lineno):
    text, col = tok
    if not _RAT.match(text):
        raise ProblemFileError(f"expected rational p/q, got {text!r}", lineno, col)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ProblemFileError(f"zero denominator in {text!r}", lineno, col) from None


def parse_problem(text) -> ProblemFile:
    """Parse a version-1 problem file (``str`` or UTF-8 ``bytes``)."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProblemFileError(f"input is not UTF-8: {exc.reason}", 1) from None

    seen_format = False
    n = None
    lattice_line = 0
    rows: list = []
    row_lines: list = []
    spheres: list = []
    repeat = None
    frame: dict = {}
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        key, kcol = toks[0]
        args = toks[1:]

        if not seen_format:
            if key != "format":
                raise ProblemFileError("file must start with a 'format 1' header", lineno, kcol)
            if len(args) != 1 or args[0][0] != str(FORMAT_VERSION):
                col = args[0][1] if args else kcol
                raise ProblemFileError(f"unsupported format version (expected {FORMAT_VERSION})", lineno, col)
            seen_format = True
            continue

        if key == "lattice":
            if n is not None:
                raise ProblemFileError("duplicate 'lattice' line", lineno, kcol)
            if len(args) != 1:
                raise ProblemFileError("'lattice' takes exactly one argument", lineno, kcol)
            n = _int(args[0], lineno)
            if n < 1:
                raise ProblemFileError("lattice rank must be positive", lineno, args[0][1])
            lattice_line = lineno
        elif key == "row":
            if n is None:
                raise ProblemFileError("'row' before 'lattice'", lineno, kcol)
            if len(args) != n + 1:
                raise ProblemFileError(f"'row' needs an index and {n} integers, got {len(args)} fields", lineno, kcol)
            i = _int(args[0], lineno)
            if i != len(rows) + 1:
                raise ProblemFileError(f"expected row {len(rows) + 1}, got row {i}", lineno, args[0][1])
            rows.append([_int(t, lineno) for t in args[1:]])
            row_lines.append(lineno)
        elif key == "sphere":
            if n is None or len(rows) != n:
                raise ProblemFileError("'sphere' before the lattice is complete", lineno, kcol)
            if len(args) != n:
                raise ProblemFileError(f"'sphere' needs {n} integers, got {len(args)}", lineno, kcol)
            spheres.append(([_int(t, lineno) for t in args], lineno))
        elif key == "repeat":
            if repeat is not None:
                raise ProblemFileError("duplicate 'repeat' line", lineno, kcol)
            if len(args) != 1:
                raise ProblemFileError("'repeat' takes exactly one argument", lineno, kcol)
            repeat = _int(args[0], lineno)
            if repeat < 1:
                raise ProblemFileError("repeat must be positive", lineno, args[0][1])
        elif key == "frame":
            if n is None:
                raise ProblemFileError("'frame' before 'lattice'", lineno, kcol)
            if not args or args[0][0] not in ("a", "b"):
                raise ProblemFileError("expected 'frame a ...' or 'frame b ...'", lineno, kcol)
            which = args[0][0]
            if which in frame:
                raise ProblemFileError(f"duplicate 'frame {which}' line", lineno, kcol)
            if len(args) != n + 1:
                raise ProblemFileError(f"'frame {which}' needs {n} rationals, got {len(args) - 1}", lineno, kcol)
            frame[which] = (tuple(_rat(t, lineno) for t in args[1:]), lineno)
        else:
            raise ProblemFileError(f"unknown keyword {key!r}", lineno, kcol)

    if not seen_format:
        raise ProblemFileError("file must start with a 'format 1' header", max(last_line, 1))
    if n is None:
        raise ProblemFileError("missing 'lattice' line", max(last_line, 1))
    if len(rows) != n:
        raise ProblemFileError(f"lattice declares {n} rows but {len(rows)} given", lattice_line)

    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ProblemFileError(
                    f"asymmetric matrix: entry ({i + 1},{j + 1}) = {rows[i][j]} "
                    f"but ({j + 1},{i + 1}) = {rows[j][i]}",
                    row_lines[i],
                    _tokens(text.splitlines()[row_lines[i] - 1])[j + 2][1],
                )
    lattice = Lattice(rows)

    classes = []
    for vec, lineno in spheres:
        try:
            classes.append(SphereClass(lattice, vec))
        except (SphereError, LatticeError) as exc:
            raise ProblemFileError(str(exc), lineno) from None
    seq = SphereSeq(lattice, tuple(classes), repeat or 1)

    parsed_frame = None
    if frame:
        if set(frame) != {"a", "b"}:
            missing = "b" if "a" in frame else "a"
            raise ProblemFileError(f"'frame {missing}' missing", next(iter(frame.values()))[1])
        parsed_frame = Frame(frame["a"][0], frame["b"][0])
        try:
            check_frame(lattice, parsed_frame)
        except FrameError as exc:
            raise ProblemFileError(f"bad frame: {exc}", frame["b"][1]) from None
    elif lattice.b_plus >= 2 and find_by_lattice(lattice) is None:
        raise ProblemFileError("frame required for custom lattice", lattice_line)

    return ProblemFile(lattice, seq, parsed_frame)


def serialize_problem(problem: ProblemFile) -> str:
    """Canonical text form; ``parse_problem`` inverts it exactly."""
    L = problem.lattice
    out = [f"format {FORMAT_VERSION}", f"lattice {L.rank}"]
    for i, row in enumerate(L.gram, start=1):
        out.append(f"row {i} " + " ".join(str(x) for x in row))
    for s in problem.spheres.classes:
        out.append("sphere " + " ".join(str(x) for x in s.vec))
    out.append(f"repeat {problem.repeat}")
    if problem.frame is not None:
        out.append("frame a " + " ".join(str(Fraction(x)) for x in problem.frame.a))
        out.append("frame b " + " ".join(str(Fraction(x)) for x in problem.frame.b))
    return "\n".join(out) + "\n"


def read_problem(path) -> ProblemFile:
    return parse_problem(Path(path).read_bytes())


# ---------------------------------------------------------------- SVG

_CANVAS = 600
_MARGIN = 40
_ARROW_LEN = 9.0
_ARROW_HALF = 3.5


def _num(x) -> str:
    s = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _gray(m: int, count: int) -> str:
    # light gray for the first segment down to black for the last
    level = 0 if count <= 1 else round(200 * (count - 1 - m) / (count - 1))
    return f"#{level:02x}{level:02x}{level:02x}"


def emit_svg(loop: LoopPolyline, path=None, title: str | None = None) -> str:
    """Render ``loop`` as a standalone SVG 1.1 document.

    The plot area maps the bounding box of the loop (and the origin),
    padded by 10% on each side, onto a square, like an aspect-ratio-1
    plot.  Segments shade from light to dark in traversal order and carry
    an arrowhead at their midpoint.  Output is byte-deterministic.
    """
    pts = [(Fraction(p.x), -Fraction(p.y)) for p in loop.vertices]  # SVG y axis points down
    xs = [u for u, _ in pts] + [Fraction(0)]
    ys = [w for _, w in pts] + [Fraction(0)]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    dx = (x1 - x0) or Fraction(1)
    dy = (y1 - y0) or Fraction(1)
    vx, vy = x0 - dx / 10, y0 - dy / 10
    vw, vh = dx * Fraction(12, 10), dy * Fraction(12, 10)
    sx, sy = _CANVAS / float(vw), _CANVAS / float(vh)  # screen pixels per unit

    segments = loop.segments
    w = winding_number(loop)
    total_h = _CANVAS + 2 * _MARGIN
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_CANVAS + 2 * _MARGIN}" '
        f'height="{total_h}" viewBox="0 0 {_CANVAS + 2 * _MARGIN} {total_h}">',
        f'<rect x="0" y="0" width="{_CANVAS + 2 * _MARGIN}" height="{total_h}" fill="#ffffff"/>',
    ]
    if title:
        lines.append(
            f'<text x="{_MARGIN + _CANVAS // 2}" y="{_MARGIN // 2 + 6}" font-family="sans-serif" '
            f'font-size="16" text-anchor="middle">{_escape(title)}</text>'
        )
    lines.append(
        f'<svg x="{_MARGIN}" y="{_MARGIN}" width="{_CANVAS}" height="{_CANVAS}" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}" preserveAspectRatio="none">'
    )
    axis = 'stroke="#888888" stroke-width="1" vector-effect="non-scaling-stroke"'
    lines.append(f'<line class="axis" x1="{_num(vx)}" y1="0" x2="{_num(vx + vw)}" y2="0" {axis}/>')
    lines.append(f'<line class="axis" x1="0" y1="{_num(vy)}" x2="0" y2="{_num(vy + vh)}" {axis}/>')

    if segments:
        pts_attr = " ".join(f"{_num(u)},{_num(v)}" for u, v in pts)
        lines.append(
            f'<polyline id="loop" points="{pts_attr}" fill="none" stroke="#dddddd" '
            f'stroke-width="3" vector-effect="non-scaling-stroke"/>'
        )
        lines.append('<g id="segments">')
        for m, ((ux, uy), (qx, qy)) in enumerate(zip(pts, pts[1:])):
            color = _gray(m, len(segments))
            lines.append(
                f'<line class="segment" x1="{_num(ux)}" y1="{_num(uy)}" x2="{_num(qx)}" y2="{_num(qy)}" '
                f'stroke="{color}" stroke-width="1.5" vector-effect="non-scaling-stroke"/>'
            )
            lines.append(_arrowhead((ux, uy), (qx, qy), sx, sy, color))
        lines.append("</g>")

    bx, by = pts[0]
    lines.append(
        f'<ellipse class="basepoint" cx="{_num(bx)}" cy="{_num(by)}" rx="{_num(4 / sx)}" '
        f'ry="{_num(4 / sy)}" fill="#c00000"/>'
    )
    lines.append("</svg>")
    lines.append(
        f'<text class="winding" x="{_MARGIN + _CANVAS // 2}" y="{total_h - _MARGIN // 2 + 6}" '
        f'font-family="sans-serif" font-size="16" text-anchor="middle">W = {w}</text>'
    )
    lines.append("</svg>")
    doc = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(doc, encoding="utf-8")
    return doc


def _arrowhead(P, Q, sx, sy, color) -> str:
    """Triangle at the midpoint of P->Q, shaped in screen space then mapped back."""
    mx, my = (float(P[0]) + float(Q[0])) / 2, (float(P[1]) + float(Q[1])) / 2
    ex, ey = (float(Q[0]) - float(P[0])) * sx, (float(Q[1]) - float(P[1])) * sy
    norm = (ex * ex + ey * ey) ** 0.5
    ex, ey = ex / norm, ey / norm
    nx, ny = -ey, ex
    half = _ARROW_LEN / 2
    corners = [
        (half * ex, half * ey),
        (-half * ex + _ARROW_HALF * nx, -half * ey + _ARROW_HALF * ny),
        (-half * ex - _ARROW_HALF * nx, -half * ey - _ARROW_HALF * ny),
    ]
    attr = " ".join(f"{_num(mx + cx / sx)},{_num(my + cy / sy)}" for cx, cy in corners)
    return f'<polygon class="arrowhead" points="{attr}" fill="{color}"/>'


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def parse_catalog_table(text: str) -> list:
    """Read ``name p q r h`` rows (whitespace separated, ``#`` comments).

    Used to run the verifier against an alternative table, e.g. a
    deliberately corrupted one.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        if len(toks) != 5:
            raise ProblemFileError("catalog rows need 'name p q r h'", lineno, toks[0][1])
        p, q, r, h = (_int(t, lineno) for t in toks[1:])
        entries.append(CatalogEntry(toks[0][0], GabrielovDiagram(p, q, r), h))
    return entries
