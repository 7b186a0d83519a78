"""Command line front end: ``spin-twist <command>``.

Exit codes: 0 success, 1 computation error, 2 usage error, 3 verification
failure.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .dynkin_catalog import (
    CATALOG,
    CatalogEntry,
    FrameError,
    GabrielovDiagram,
    build_gabrielov,
    find_by_triple,
    frame_vectors,
    lookup,
)
from .exact_lattice import LatticeError
from .io_format import (
    ProblemFile,
    ProblemFileError,
    emit_svg,
    parse_catalog_table,
    read_problem,
    resolve_frame,
    serialize_problem,
)
from .mutation import BraidWordError, apply_braid_word, parse_braid_word
from .obstruction import (
    CharNumbers4,
    CharNumbers6,
    InconsistentCharacteristicNumbers,
    Verdict,
    check_theorem_1_4,
    check_theorem_1_6,
    d_invariant,
    dirac_index6,
    hypothesis_checklist,
)
from .picard_lefschetz import DEFAULT_ORDER_CAP, SphereSeq, coxeter_element, monodromy_order
from .spin_number import loop_vertices, spin_number
from .verification import run_verification

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3
SEED_ENV = "SPIN_TWIST_SEED"


class UsageError(Exception):
    pass


class ComputeError(Exception):
    pass


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _err(line: str) -> None:
    sys.stderr.write(line + "\n")


def _parse_triple(text: str) -> GabrielovDiagram:
    try:
        p, q, r = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--pqr expects three comma-separated integers, got {text!r}") from None
    return GabrielovDiagram(p, q, r)


def _load_source(args) -> tuple[str, ProblemFile, CatalogEntry | None]:
    """Resolve ``--entry`` / ``--pqr`` / ``--file`` into a problem.

    Catalog and exploratory sources use the basis spheres repeated by the
    monodromy order (computed for non-catalog triples, up to ``--cap``).
    """
    given = [x for x in (args.entry, args.pqr, args.file) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --entry, --pqr, --file")
    if args.file is not None:
        try:
            problem = read_problem(args.file)
        except OSError as exc:
            raise ComputeError(f"cannot read {args.file}: {exc.strerror}") from None
        if args.repeat is not None:
            problem = ProblemFile(problem.lattice, SphereSeq(problem.lattice, problem.spheres.classes, args.repeat), problem.frame)
        return str(args.file), problem, None

    if args.entry is not None:
        try:
            entry = lookup(args.entry)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        diagram, label = entry.diagram, f"{entry.name} {entry.diagram}"
    else:
        diagram = _parse_triple(args.pqr)
        entry = find_by_triple(diagram)
        label = f"{entry.name} {diagram}" if entry else f"{diagram} (exploratory)"
    try:
        L = build_gabrielov(diagram)
    except LatticeError as exc:
        raise UsageError(str(exc)) from None
    if args.repeat is not None:
        h = args.repeat
    elif entry is not None:
        h = entry.monodromy_order
    else:
        h = monodromy_order(coxeter_element(L), args.cap)
        if h is None:
            raise ComputeError(f"monodromy order exceeds cap {args.cap}")
    try:
        frame = frame_vectors(diagram)
    except FrameError as exc:
        raise ComputeError(str(exc)) from None
    return label, ProblemFile(L, SphereSeq.basis(L, h), frame), entry


def _spin_line(res) -> str:
    note = "" if res.b_plus == 2 else " (only parity meaningful for b+ > 2)"
    return f"winding = {res.winding}{note}, Δ mod 2 = {res.delta_mod2} ({res.verdict})"


# ---------------------------------------------------------------- commands


def cmd_catalog(args) -> int:
    entries = list(CATALOG)
    if args.entry:
        try:
            entries = [lookup(args.entry)]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    header = ["name", "(p,q,r)", "mu", "h", "b+", "order", "winding"]
    rows = []
    for e in entries:
        L = build_gabrielov(e.diagram)
        order = monodromy_order(coxeter_element(L))
        res = spin_number(SphereSeq.basis(L, e.monodromy_order), frame_vectors(e.diagram))
        rows.append([e.name, str(e.diagram), str(e.milnor_number), str(e.monodromy_order),
                     str(L.b_plus), str(order), str(res.winding)])
    if args.format == "tsv":
        for r in [header] + rows:
            _out("\t".join(r))
    else:
        widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
        for r in [header] + rows:
            _out("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return EXIT_OK


def cmd_spin(args) -> int:
    label, problem, _ = _load_source(args)
    try:
        frame = resolve_frame(problem)
        loop = loop_vertices(problem.spheres, frame)
    except ValueError as exc:
        raise ComputeError(str(exc)) from None
    res = spin_number(problem.spheres, frame)
    _out(f"source: {label}")
    _out(f"spheres: {len(problem.spheres.classes)} x {problem.repeat} = {len(problem.spheres)}")
    _out(f"b+ = {res.b_plus}")
    _out(_spin_line(res))
    if args.svg:
        try:
            emit_svg(loop, args.svg, title=label)
        except OSError as exc:
            raise ComputeError(f"cannot write {args.svg}: {exc.strerror}") from None
        _out(f"svg: {args.svg} ({len(loop.segments)} segments)")
    return EXIT_OK


def cmd_export(args) -> int:
    _, problem, _ = _load_source(args)
    sys.stdout.write(serialize_problem(problem))
    return EXIT_OK


def _resolve_seed(seed) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    entries = list(CATALOG)
    if args.catalog:
        try:
            entries = parse_catalog_table(Path(args.catalog).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ComputeError(f"cannot read {args.catalog}: {exc.strerror}") from None
        except ProblemFileError as exc:
            raise UsageError(f"{args.catalog}: {exc}") from None
    if args.entry:
        try:
            entries = [lookup(name, entries) for name in args.entry]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    results, verified = run_verification(
        entries, braid_fuzz=args.braid_fuzz, seed=seed, jobs=args.jobs, global_checks=not args.entries_only
    )
    for r in results:
        _out(r.line())
    _out(f"{verified}/{len(entries)} entries verified")
    failed = [r for r in results if not r.ok]
    if failed:
        _err(f"verification failed: {failed[0].name}" + (f" ({failed[0].detail})" if failed[0].detail else ""))
        return EXIT_VERIFY
    return EXIT_OK


def cmd_mutate(args) -> int:
    if args.source is not None:
        if args.file is not None:
            raise UsageError("give the problem file either positionally or with --file")
        args.file = args.source
    _, problem, _ = _load_source(args)
    try:
        word = parse_braid_word(args.word)
    except BraidWordError as exc:
        raise UsageError(str(exc)) from None
    flat = problem.spheres.expanded()
    try:
        mutated = apply_braid_word(flat, word)
    except BraidWordError as exc:
        raise UsageError(str(exc)) from None
    result = ProblemFile(problem.lattice, mutated, problem.frame)
    sys.stdout.write(serialize_problem(result))
    if args.check_delta:
        try:
            frame = resolve_frame(problem)
            before = spin_number(flat, frame).winding
            after = spin_number(mutated, frame).winding
        except ValueError as exc:
            raise ComputeError(str(exc)) from None
        if before != after:
            _err(f"Δ CHANGED: {before} → {after}")
            return EXIT_VERIFY
        _err(f"Δ preserved: {before} → {after}")
    return EXIT_OK


def cmd_obstruct(args) -> int:
    four = [args.c1sq, args.chi, args.sigma, args.c1_div, args.sw, args.delta]
    did_something = False
    if any(x is not None for x in four):
        if any(x is None for x in four):
            raise UsageError("the 4-manifold check needs --c1sq, --chi, --sigma, --c1-div, --sw and --delta")
        c = CharNumbers4(
            c1_sq=args.c1sq, chi=args.chi, sigma=args.sigma, c1_divisibility=args.c1_div,
            sw_parity=1 if args.sw == "odd" else 0, c1_pairs_trivially=args.c1_pairing == "yes",
        )
        d, integral = d_invariant(c)
        _out(f"d = {d}" + ("" if integral else " (not an integer)"))
        checks = hypothesis_checklist(c)
        for name, ok in checks.items():
            _out(f"[{'x' if ok else ' '}] {name}")
        verdict = check_theorem_1_4(c, args.delta)
        if verdict is Verdict.OBSTRUCTED:
            _out("OBSTRUCTED: not smoothly isotopic to identity")
        elif verdict is Verdict.CONSISTENT:
            _out("consistent with isotopy (Δ even: no obstruction)")
        else:
            missing = ", ".join(_short(n) for n, ok in checks.items() if not ok)
            _out(f"hypotheses not met ({missing})")
        did_something = True

    ind = args.ind
    if args.p1c1 is not None or args.c1cubed is not None:
        if args.p1c1 is None or args.c1cubed is None:
            raise UsageError("--p1c1 and --c1cubed go together")
        try:
            computed = dirac_index6(CharNumbers6(args.p1c1, args.c1cubed))
        except InconsistentCharacteristicNumbers as exc:
            raise ComputeError(str(exc)) from None
        _out(f"Dirac index = {computed}")
        if ind is not None and ind != computed:
            raise UsageError(f"--ind {ind} disagrees with the index formula ({computed})")
        ind = computed
        did_something = True
    if args.w2 is not None:
        if ind is None:
            raise UsageError("--w2 needs --ind or --p1c1/--c1cubed")
        ok = check_theorem_1_6(ind, args.w2)
        _out(f"index congruence {'holds' if ok else 'VIOLATED'}: ind = {ind}, w2.[Sigma] = {args.w2} (mod 2)")
        did_something = True
    if not did_something:
        raise UsageError("nothing to check; see --help")
    return EXIT_OK


_SHORT = {
    "c1 divisible by 32": "c1 divisibility",
    "sigma divisible by 32": "signature divisibility",
    "d = 0": "d != 0",
    "SW parity odd": "SW parity",
    "spheres pair trivially with c1": "c1 pairing",
}


def _short(name: str) -> str:
    return _SHORT.get(name, name)


# ---------------------------------------------------------------- parser


def _add_source(p, file_flag=True):
    p.add_argument("--entry", help="catalog name, e.g. E12")
    p.add_argument("--pqr", help="Gabrielov numbers, e.g. 2,3,7")
    if file_flag:
        p.add_argument("--file", help="problem file")
    p.add_argument("--repeat", type=int, help="override the number of traversals")
    p.add_argument("--cap", type=int, default=DEFAULT_ORDER_CAP, help="monodromy order search cap")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spin-twist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="table of the exceptional unimodal singularities")
    p.add_argument("--format", choices=("table", "tsv"), default="table")
    p.add_argument("--entry")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("spin", help="winding number / spin number of a configuration")
    _add_source(p)
    p.add_argument("--svg", help="write the loop as SVG to this path")
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("export", help="write a configuration as a problem file")
    _add_source(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="run the reproducibility checklist")
    p.add_argument("--entry", action="append", help="restrict to this entry (repeatable)")
    p.add_argument("--braid-fuzz", type=int, default=25, metavar="N", help="random braid words per entry")
    p.add_argument("--seed", type=int, help=f"random seed (default ${SEED_ENV} or 0)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for per-entry checks")
    p.add_argument("--catalog", help="alternative 'name p q r h' table to verify")
    p.add_argument("--entries-only", action="store_true", help="skip the catalog-independent checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mutate", help="apply a braid word to a configuration")
    p.add_argument("source", nargs="?", help="problem file")
    p.add_argument("word", help='braid word such as "a3 b1 a2"')
    _add_source(p)
    p.add_argument("--check-delta", action="store_true", help="report the winding before and after")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("obstruct", help="arithmetic of the isotopy obstructions")
    p.add_argument("--c1sq", type=int, help="c1(s)^2")
    p.add_argument("--chi", type=int, help="Euler characteristic")
    p.add_argument("--sigma", type=int, help="signature")
    p.add_argument("--c1-div", type=int, help="a known divisor of c1(s) (0 if c1 = 0)")
    p.add_argument("--sw", choices=("odd", "even"), help="parity of the Seiberg-Witten invariant")
    p.add_argument("--c1-pairing", choices=("yes", "no"), default="yes",
                   help="do all spheres pair trivially with c1(s)")
    p.add_argument("--delta", type=int, choices=(0, 1), help="spin number mod 2")
    p.add_argument("--ind", type=int, help="index of the 6-dimensional Dirac operator")
    p.add_argument("--p1c1", type=int, help="p1(E).c1[E]")
    p.add_argument("--c1cubed", type=int, help="c1^3[E]")
    p.add_argument("--w2", type=int, choices=(0, 1), help="w2(H+).[Sigma] mod 2")
    p.set_defaults(func=cmd_obstruct)
    return parser


def main(argv=None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(f"spin-twist: error: {exc}")
        return EXIT_USAGE
    except (ComputeError, ValueError) as exc:
        _err(f"spin-twist: error: {exc}")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
