"""Reproducibility checklist run by ``spin-twist verify``.

Per-entry checks depend only on the entry and the seed, so they may run in
parallel; results are always reported in catalog order.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .dynkin_catalog import CatalogEntry, Frame, build_gabrielov, catalog, frame_vectors
from .exact_lattice import Lattice, inner_product
from .io_format import ProblemFile, emit_svg, parse_problem, serialize_problem
from .mutation import apply_braid_word, random_braid_word
from .obstruction import (
    CharNumbers4,
    CharNumbers6,
    InconsistentCharacteristicNumbers,
    Verdict,
    check_theorem_1_4,
    check_theorem_1_6,
    d_invariant,
    dirac_index6,
)
from .picard_lefschetz import (
    LatticeMap,
    SphereClass,
    SphereSeq,
    coxeter_element,
    monodromy_order,
    reflect,
    reflection_matrix,
)
from .spin_number import (
    BASEPOINT,
    LoopPolyline,
    PlanePoint,
    loop_vertices,
    rotate_basepoint,
    scale_frame,
    spin_number,
    winding_number,
    winding_number_float,
)

# d = (0 - 2*48 - 3*(-32)) / 4 = 0: the numbers of E(4) with a basic class of square 0.
OBSTRUCTED_EXAMPLE = CharNumbers4(c1_sq=0, chi=48, sigma=-32, c1_divisibility=32, sw_parity=1)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def proper_divisors(h: int) -> list[int]:
    return [k for k in range(1, h) if h % k == 0]


def entry_rng(seed: int, tag: str) -> random.Random:
    return random.Random(f"{seed}:{tag}")


def catalog_configuration(entry: CatalogEntry) -> tuple[SphereSeq, Frame]:
    L = build_gabrielov(entry.diagram)
    return SphereSeq.basis(L, entry.monodromy_order), frame_vectors(entry.diagram)


def check_entry(entry: CatalogEntry, braid_fuzz: int = 25, seed: int = 0, max_word: int = 20) -> list[CheckResult]:
    name = entry.name
    out = []
    L = build_gabrielov(entry.diagram)
    cox = coxeter_element(L)
    order = monodromy_order(cox)
    h = entry.monodromy_order
    out.append(CheckResult(
        f"{name} order" if order == h else f"{name} order mismatch",
        order == h,
        "" if order == h else f"computed {order}, table {h}",
    ))
    out.append(CheckResult(
        f"{name} milnor number",
        entry.milnor_number == L.rank == sum((entry.diagram.p, entry.diagram.q, entry.diagram.r)),
        f"mu = {entry.milnor_number}, rank = {L.rank}",
    ))
    sig = tuple(L.signature)
    expected_sig = (2, L.rank - 2, 0)
    out.append(CheckResult(f"{name} signature", sig == expected_sig, f"{sig}"))
    bad = [k for k in proper_divisors(h) if (cox ** k).is_identity()]
    out.append(CheckResult(f"{name} minimality", not bad, f"identity at k = {bad}" if bad else ""))

    seq, frame = catalog_configuration(entry)
    try:
        base = spin_number(seq, frame)
    except ValueError as exc:
        out.append(CheckResult(f"{name} winding", False, str(exc)))
        return out
    out.append(CheckResult(
        f"{name} winding",
        base.winding == -1 and base.delta_mod2 == 1,
        f"winding = {base.winding}, delta mod 2 = {base.delta_mod2}",
    ))

    loop = loop_vertices(seq, frame)
    fw = winding_number_float(loop)
    out.append(CheckResult(f"{name} float oracle", abs(fw - base.winding) < 0.25, f"turning/2pi = {fw:.6f}"))

    rng = entry_rng(seed, name)
    scaled = spin_number(seq, scale_frame(frame, Fraction(rng.randint(1, 50), rng.randint(1, 50)),
                                          Fraction(rng.randint(1, 50), rng.randint(1, 50)))).winding
    swapped = spin_number(seq, frame.swapped()).winding
    shifts = [rng.randrange(1, len(seq)) for _ in range(3)]
    rotated = [spin_number(*rotate_basepoint(seq, frame, k)).winding for k in shifts]
    out.append(CheckResult(f"{name} frame scaling", scaled == base.winding, f"{scaled}"))
    out.append(CheckResult(f"{name} frame swap", swapped == -base.winding, f"{swapped}"))
    out.append(CheckResult(
        f"{name} basepoint rotation",
        all(r == base.winding for r in rotated),
        f"shifts {shifts} -> {rotated}",
    ))

    flat = seq.expanded()
    failures = []
    for _ in range(braid_fuzz):
        word = random_braid_word(rng, len(flat.classes), max_word)
        try:
            w = spin_number(apply_braid_word(flat, word), frame).winding
        except ValueError as exc:
            failures.append(f"[{word}] {exc}")
            continue
        if w != base.winding:
            failures.append(f"[{word}] winding {w}")
    out.append(CheckResult(
        f"{name} mutation invariance ({braid_fuzz} words)",
        not failures,
        failures[0] if failures else "",
    ))
    return out


# ---------------------------------------------------------------- random data


def random_sphere_class(rng: random.Random, L: Lattice, max_len: int = 8) -> SphereClass:
    """A basis vector pushed through a random word of basis reflections."""
    n = L.rank
    basis = [SphereClass(L, [int(i == k) for k in range(n)]) for i in range(n)]
    v = basis[rng.randrange(n)].vec
    for _ in range(rng.randint(0, max_len)):
        v = reflect(L, basis[rng.randrange(n)], v)
    return SphereClass(L, v)


def random_vector(rng: random.Random, n: int, bound: int = 5) -> tuple:
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n))


def random_loop(rng: random.Random, max_vertices: int = 8, bound: int = 4) -> LoopPolyline:
    """Random closed polyline through (1, 0) avoiding the origin."""
    while True:
        pts = [BASEPOINT]
        for _ in range(rng.randint(2, max_vertices)):
            pts.append(PlanePoint(Fraction(rng.randint(-bound, bound)), Fraction(rng.randint(-bound, bound))))
        pts.append(BASEPOINT)
        if any(p.x == 0 and p.y == 0 for p in pts):
            continue
        collapsed = [pts[0]] + [q for p, q in zip(pts, pts[1:]) if q != p]
        loop = LoopPolyline(tuple(collapsed))
        if any(_through_origin(p, q) for p, q in loop.segments):
            continue
        return loop


def _through_origin(p, q) -> bool:
    return p.x * q.y - p.y * q.x == 0 and p.x * q.x + p.y * q.y < 0


def random_problem(rng: random.Random) -> ProblemFile:
    """A random valid problem: catalog lattice, mutated spheres, transported frame."""
    entry = rng.choice(catalog())
    L = build_gabrielov(entry.diagram)
    n = L.rank
    classes = tuple(random_sphere_class(rng, L, 4) for _ in range(rng.randint(0, 6)))
    seq = SphereSeq(L, classes, rng.randint(1, 5))
    frame = None
    if rng.random() < 0.8:
        base = frame_vectors(entry.diagram)
        g = LatticeMap.identity(n)
        for _ in range(rng.randint(0, 3)):
            g = reflection_matrix(L, random_sphere_class(rng, L, 2)) @ g
        la = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        mu = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        frame = Frame(tuple(la * x for x in g(base.a)), tuple(mu * x for x in g(base.b)))
    if rng.random() < 0.3:
        # custom lattice: append an orthogonal (-2) summand, which requires an explicit frame
        gram = [list(row) + [0] for row in L.gram] + [[0] * n + [-2]]
        L2 = Lattice(gram)
        if frame is None:
            frame = frame_vectors(entry.diagram)
        extra = SphereClass(L2, [0] * n + [1])
        classes = tuple(SphereClass(L2, c.vec + (0,)) for c in classes) + (extra,) * rng.randint(0, 2)
        seq = SphereSeq(L2, classes, seq.repeat)
        return ProblemFile(L2, seq, Frame(tuple(frame.a) + (0,), tuple(frame.b) + (0,)))
    return ProblemFile(L, seq, frame)


# ---------------------------------------------------------------- global checks


def check_reflections(count: int = 200, seed: int = 0) -> list[CheckResult]:
    rng = entry_rng(seed, "reflections")
    entries = catalog()
    lattices = {e.name: build_gabrielov(e.diagram) for e in entries}
    involution_fail = isometry_fail = 0
    for _ in range(count):
        L = lattices[rng.choice(entries).name]
        s = random_sphere_class(rng, L)
        R = reflection_matrix(L, s)
        if not (R @ R).is_identity():
            involution_fail += 1
        v, w = random_vector(rng, L.rank), random_vector(rng, L.rank)
        if inner_product(L, R(v), R(w)) != inner_product(L, v, w):
            isometry_fail += 1
    return [
        CheckResult(f"reflection involution ({count} classes)", involution_fail == 0, f"{involution_fail} failures"),
        CheckResult(f"reflection isometry ({count} classes)", isometry_fail == 0, f"{isometry_fail} failures"),
    ]


def check_random_loops(count: int = 50, seed: int = 0) -> CheckResult:
    rng = entry_rng(seed, "loops")
    worst = 0.0
    for _ in range(count):
        loop = random_loop(rng)
        worst = max(worst, abs(winding_number_float(loop) - winding_number(loop)))
    return CheckResult(f"winding float oracle ({count} random loops)", worst < 0.25, f"max deviation {worst:.3g}")


def check_obstruction_examples() -> CheckResult:
    problems = []

    def expect(label, got, want):
        if got != want:
            problems.append(f"{label}: got {got}, want {want}")

    expect("d(0,24,-16)", d_invariant(CharNumbers4(0, 24, -16, 1, 1)), (Fraction(0), True))
    expect("d(0,4,0)", d_invariant(CharNumbers4(0, 4, 0, 1, 1)), (Fraction(-2), True))
    expect("d(2,0,0)", d_invariant(CharNumbers4(2, 0, 0, 1, 1)), (Fraction(1, 2), False))
    expect("ind(48,0)", dirac_index6(CharNumbers6(48, 0)), 1)
    expect("ind(0,0)", dirac_index6(CharNumbers6(0, 0)), 0)
    try:
        dirac_index6(CharNumbers6(50, 0))
        problems.append("ind(50,0) did not raise")
    except InconsistentCharacteristicNumbers:
        pass
    expect("thm1.6(1,1)", check_theorem_1_6(1, 1), True)
    expect("thm1.6(2,1)", check_theorem_1_6(2, 1), False)
    expect("thm1.6(0,0)", check_theorem_1_6(0, 0), True)
    ex = OBSTRUCTED_EXAMPLE
    expect("thm1.4 example", check_theorem_1_4(ex, 1), Verdict.OBSTRUCTED)
    expect("thm1.4 delta 0", check_theorem_1_4(ex, 0), Verdict.CONSISTENT)
    for label, flipped in flipped_hypotheses(ex).items():
        expect(f"thm1.4 flip {label}", check_theorem_1_4(flipped, 1), Verdict.HYPOTHESES_NOT_MET)
    return CheckResult("obstruction arithmetic", not problems, "; ".join(problems))


def flipped_hypotheses(c: CharNumbers4) -> dict[str, CharNumbers4]:
    """One variant of ``c`` per hypothesis, with exactly that hypothesis broken.

    Each variant keeps ``chi + sigma`` divisible by 4 and changes nothing else
    that the checker looks at.
    """
    return {
        "c1 divisibility": replace(c, c1_divisibility=16),
        # sigma + 16 together with chi - 24 keeps d = 0 but breaks 32 | sigma
        "sigma divisibility": replace(c, sigma=c.sigma + 16, chi=c.chi - 24),
        "d = 0": replace(c, c1_sq=c.c1_sq + 8),
        "SW parity": replace(c, sw_parity=1 - c.sw_parity),
        "c1 pairing": replace(c, c1_pairs_trivially=False),
    }


def check_io(count: int = 100, seed: int = 0) -> list[CheckResult]:
    rng = entry_rng(seed, "io")
    failures = []
    for k in range(count):
        p = random_problem(rng)
        text = serialize_problem(p)
        q = parse_problem(text.encode("utf-8"))
        if q != p or serialize_problem(q) != text:
            failures.append(k)
    seq, frame = catalog_configuration(catalog()[0])
    loop = loop_vertices(seq, frame)
    svg_ok = emit_svg(loop, title="E12") == emit_svg(loop, title="E12")
    return [
        CheckResult(f"problem file round trip ({count} files)", not failures, f"failed at {failures[:5]}" if failures else ""),
        CheckResult("svg determinism", svg_ok),
    ]


def run_verification(
    entries=None,
    braid_fuzz: int = 25,
    seed: int = 0,
    jobs: int = 1,
    global_checks: bool = True,
) -> tuple[list[CheckResult], int]:
    """Run the checklist; return all results and the count of fully verified entries."""
    entries = list(catalog() if entries is None else entries)
    args = [(e, braid_fuzz, seed) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_entry = list(pool.map(_check_entry_star, args))
    else:
        per_entry = [_check_entry_star(a) for a in args]
    results = [r for rs in per_entry for r in rs]
    verified = sum(all(r.ok for r in rs) for rs in per_entry)
    if global_checks:
        results += check_reflections(seed=seed)
        results.append(check_random_loops(seed=seed))
        results.append(check_obstruction_examples())
        results += check_io(seed=seed)
    return results, verified


def _check_entry_star(args):
    return check_entry(*args)

