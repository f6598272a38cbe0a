"""HN-models (Σ, g) of fibered knots and the crossing-change analysis on them.

Σ is the boundary of S×I for a fiber S of genus k', so Σ has genus 2k'.
Basis of H_1(Σ): handles 1..k' are the top copy S×{1} with (a_i, b_i) =
(A_i, B_i).  Handle 2k'+1-i carries the bottom copy of fiber handle i as
(a, b) = (B_i, A_i); the swap absorbs the orientation reversal of S×{0}
and makes the surface relator come out as [a_1,b_1]…[a_{2k'},b_{2k'}].

The meridian disc over the arc dual to A_i has boundary class
t(B_i) - u(B_i); over the arc dual to B_i the class is u(A_i) - t(A_i),
with t/u the top and bottom copies.  These are the system curves
x_{2i-1}, x_{2i}.

Crossing order q corresponds to 1/(-q) surgery on the crossing circle L
and to composing the model map with T_L^{-q}.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Optional, Sequence

from . import intmat
from .errors import DimensionError, PreconditionError, AtlasError
from .homology import (
    HomologyClass,
    SpElement,
    TwistWord,
    _trusted,
    check_lagrangian,
    commutator_obstruction,
    preserves_span,
    transvection,
)
from .verdict import Verdict
from .words import (
    Alphabet,
    Atlas,
    CyclicWord,
    Curve,
    disc_bound_test,
    homotopy_status,
    reduce,
)

DEFAULT_BUDGET = 3


def default_budget() -> int:
    raw = os.environ.get("TWISTLAB_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


# Coordinates on the doubled surface.

def bottom_handle(kp: int, i: int) -> int:
    """Handle of Σ (1-based) carrying the bottom copy of fiber handle ``i``."""
    return 2 * kp + 1 - i


def _e(genus: int, index: int) -> HomologyClass:
    return HomologyClass.unit(genus, index)


def meridian_lagrangian(kp: int) -> list[HomologyClass]:
    """Classes of the system curves x_1..x_{2k'}, which span ker(H_1(Σ) → H_1(S×I))."""
    g = 2 * kp
    out = []
    for i in range(1, kp + 1):
        j = bottom_handle(kp, i)
        out.append(_e(g, 2 * i - 1) - _e(g, 2 * j - 2))  # t(B_i) - u(B_i)
        out.append(_e(g, 2 * j - 1) - _e(g, 2 * i - 2))  # u(A_i) - t(A_i)
    return out


def involution(kp: int) -> intmat.Matrix:
    """Matrix of (x, t) ↦ (x, 1 - t) on H_1(Σ); it exchanges t(c) and u(c) and reverses the form."""
    n = 4 * kp
    rows = [[0] * n for _ in range(n)]
    for i in range(1, kp + 1):
        j = bottom_handle(kp, i)
        for src, dst in ((2 * i - 2, 2 * j - 1), (2 * i - 1, 2 * j - 2)):
            rows[dst][src] = 1
            rows[src][dst] = 1
    return intmat.as_matrix(rows)


def system_projection(kp: int) -> dict[str, str]:
    """Where each surface generator goes in π_1(S×I) = F(x_1, ..., x_{2k'})."""
    images = {}
    for i in range(1, kp + 1):
        j = bottom_handle(kp, i)
        images[f"a{i}"] = f"x{2 * i - 1}"
        images[f"b{i}"] = f"x{2 * i}"
        images[f"a{j}"] = f"x{2 * i}"
        images[f"b{j}"] = f"x{2 * i - 1}"
    return images


def project_to_system(w: CyclicWord, kp: int) -> CyclicWord:
    """The system word w(x, y) of a curve with π_1-word ``w``, in canonical form."""
    images = system_projection(kp)
    return reduce(CyclicWord(tuple((images[n], s) for n, s in w.letters)))


def double_monodromy(h: SpElement) -> SpElement:
    """Act by h on the top copy and trivially on the bottom copy."""
    kp = h.genus
    n = 2 * kp
    rows = [list(r) + [0] * n for r in h.matrix]
    rows += [[0] * n + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    return _trusted(2 * kp, intmat.as_matrix(rows))


def diagonal_double(h: SpElement) -> SpElement:
    """h × id_I restricted to Σ: h on both copies.  It extends over S×I."""
    iota = involution(h.genus)
    top = double_monodromy(h).matrix
    return _trusted(2 * h.genus, intmat.matmul(top, intmat.matmul(iota, intmat.matmul(top, iota))))


def top_block(m: SpElement) -> intmat.Matrix:
    n = m.genus
    return tuple(row[:n] for row in m.matrix[:n])


@dataclass(frozen=True)
class HNModel:
    fiber_genus: int
    model_map: SpElement
    model_word: TwistWord
    knot: Curve
    crossing_circles: tuple[tuple[Curve, int], ...] = ()
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.model_map.genus != 2 * self.fiber_genus:
            raise DimensionError("model map must act on the doubled surface")
        object.__setattr__(self, "crossing_circles", tuple((c, int(q)) for c, q in self.crossing_circles))

    @property
    def surface_genus(self) -> int:
        return 2 * self.fiber_genus

    def circle(self, name: str) -> tuple[Curve, int]:
        for c, q in self.crossing_circles:
            if c.name == name:
                return c, q
        raise AtlasError(f"{name!r} is not a crossing circle of this model")

    def is_doubled(self) -> bool:
        """True when the model map fixes the bottom copy pointwise on homology."""
        kp = self.fiber_genus
        n = 4 * kp
        m = self.model_map.matrix
        return all(m[r][c] == (1 if r == c else 0) for c in range(2 * kp, n) for r in range(n))

    @property
    def monodromy_block(self) -> intmat.Matrix:
        return top_block(self.model_map)


@dataclass(frozen=True)
class Scenario:
    name: str
    alphabet: Alphabet
    atlas: Atlas
    model: HNModel
    notes: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        for n in self.alphabet.names:
            self.atlas.curve(n)
        self.atlas.curve(self.model.knot.name)
        for c, _ in self.model.crossing_circles:
            self.atlas.curve(c.name)
        for name, _ in self.model.model_word.letters:
            self.atlas.curve(name)
        for c in self.atlas.curves:
            stray = c.system_word.names() - set(self.alphabet.names)
            if stray:
                raise AtlasError(f"curve {c.name} uses letters outside the alphabet: {sorted(stray)}")

    def preferred_position_ok(self) -> bool:
        k = self.model.knot.name
        return all(self.atlas.geom(x, k) == 2 and self.atlas.alg(x, k) == 0 for x in self.alphabet.names)


def is_crossing_circle(atlas: Atlas, knot: Curve, L: Curve) -> bool:
    return L.name in atlas and atlas.geom(L.name, knot.name) == 2 and atlas.alg(L.name, knot.name) == 0


def apply_crossing_change(m: HNModel, L: Curve, q: int, atlas: Optional[Atlas] = None) -> HNModel:
    """Generalized crossing change of order q along L: g ↦ g·T_L^{-q}."""
    if q == 0:
        raise PreconditionError("crossing order must be nonzero")
    known = any(c.name == L.name for c, _ in m.crossing_circles)
    if not known and not (atlas is not None and is_crossing_circle(atlas, m.knot, L)):
        raise PreconditionError(f"{L.name} is not a crossing circle of the model")
    if L.homology.genus != m.surface_genus:
        raise DimensionError("crossing circle lives on a different surface")
    return replace(
        m,
        model_map=m.model_map * transvection(L.homology, -q),
        model_word=m.model_word * TwistWord(((L.name, -q),), m.surface_genus),
        provenance=m.provenance + (f"order {q} change along {L.name} (1/{-q} surgery)",),
    )


def _invariants(h: SpElement) -> dict[str, Any]:
    n = 2 * h.genus
    minus_i = tuple(tuple(h.matrix[r][c] - (1 if r == c else 0) for c in range(n)) for r in range(n))
    return {
        "trace": h.trace(),
        "charpoly": list(intmat.charpoly(h.matrix)),
        "det(h-I)": intmat.det(minus_i),
    }


def monodromy_conjugacy_filter(h1: SpElement, h2: SpElement) -> Verdict:
    """Compare conjugacy invariants; never claims that h1 and h2 are conjugate."""
    if h1.genus != h2.genus:
        raise DimensionError("rank mismatch")
    inv1, inv2 = _invariants(h1), _invariants(h2)
    for key in inv1:
        if inv1[key] != inv2[key]:
            return Verdict("DistinctCertified", certificate={"invariant": key, "values": [inv1[key], inv2[key]]})
    return Verdict("PossiblyConjugate", certificate=inv1)


def _enumerate(gens: Sequence[tuple[str, SpElement]], genus: int, budget: int):
    """Yield (matrix, word) for products of length <= budget, first occurrence in length-lex order."""
    start = intmat.identity(2 * genus)
    seen = {start: ()}
    yield start, ()
    frontier = [(start, ())]
    for _ in range(budget):
        nxt = []
        for mat, word in frontier:
            for idx, (_, g) in enumerate(gens):
                prod = intmat.matmul(mat, g.matrix)
                if prod not in seen:
                    w = word + (idx,)
                    seen[prod] = w
                    nxt.append((prod, w))
                    yield prod, w
        frontier = nxt


def handlebody_generators(lagrangian: Sequence[HomologyClass]) -> list[tuple[str, SpElement]]:
    """Twists along meridian classes and their pairwise sums, both signs."""
    gens = []
    vecs = [(f"m{i + 1}", v) for i, v in enumerate(lagrangian)]
    vecs += [
        (f"m{i + 1}+m{j + 1}", u + v)
        for i, u in enumerate(lagrangian)
        for j, v in enumerate(lagrangian)
        if i < j
    ]
    for label, v in vecs:
        gens.append((f"T[{label}]", transvection(v, 1)))
        gens.append((f"T[{label}]^-1", transvection(v, -1)))
    return gens


def splitting_equivalence_filter(
    g1: SpElement,
    g2: SpElement,
    lagrangian: Sequence[HomologyClass],
    budget: int,
    generators: Optional[Sequence[tuple[str, SpElement]]] = None,
) -> Verdict:
    """Search for F1, F2 preserving the meridian span with F1·g2·F2 = g1, or the flipped form.

    The flipped form replaces g2 by ι⁻¹g2⁻¹ι.  Extra ``generators`` are used
    only if they preserve the span.  The first witness in length-lex order
    of F1 is returned, preserving pattern before flip.
    """
    if g1.genus != g2.genus:
        raise DimensionError("rank mismatch")
    if budget < 0:
        raise PreconditionError("budget must be nonnegative")
    if g1.genus % 2:
        raise PreconditionError("splitting equivalences need a doubled surface of even genus")
    check_lagrangian(lagrangian, g1.genus)
    gens = handlebody_generators(lagrangian)
    for label, el in generators or ():
        if el.genus == g1.genus and preserves_span(el.matrix, lagrangian):
            gens.append((label, el))
    table = dict(_enumerate(gens, g1.genus, budget))
    ordered = sorted(table.items(), key=lambda kv: (len(kv[1]), kv[1]))
    iota = involution(g1.genus // 2)
    flipped = intmat.matmul(iota, intmat.matmul(intmat.symplectic_inverse(g2.matrix), iota))
    for kind, x in (("PreservingWitness", g2.matrix), ("FlipWitness", flipped)):
        x_inv = intmat.symplectic_inverse(x)
        for f1, w1 in ordered:
            f2 = intmat.matmul(x_inv, intmat.matmul(intmat.symplectic_inverse(f1), g1.matrix))
            w2 = table.get(f2)
            if w2 is not None:
                return Verdict(
                    kind,
                    certificate={
                        "F1": [gens[i][0] for i in w1],
                        "F2": [gens[i][0] for i in w2],
                        "F1_matrix": [list(r) for r in f1],
                        "F2_matrix": [list(r) for r in f2],
                    },
                )
    return Verdict("NoneFound", certificate={"budget": budget, "searched": len(table)})


def atlas_generators(atlas: Atlas) -> list[tuple[str, SpElement]]:
    """Twists along atlas curves with distinct nonzero classes (up to sign), both signs, atlas order."""
    gens = []
    seen: set[tuple[int, ...]] = set()
    for c in atlas.curves:
        v = c.homology.coords
        neg = tuple(-x for x in v)
        if c.homology.is_zero() or v in seen or neg in seen:
            continue
        seen.add(v)
        gens.append((f"T[{c.name}]", transvection(c.homology, 1)))
        gens.append((f"T[{c.name}]^-1", transvection(c.homology, -1)))
    return gens


def find_conjugator(
    target: SpElement, g: SpElement, gens: Sequence[tuple[str, SpElement]], budget: int
) -> Optional[list[str]]:
    """Length-lex first word H with H·g·H⁻¹ = target, or None within the budget."""
    for mat, word in _enumerate(gens, g.genus, budget):
        if intmat.matmul(mat, g.matrix) == intmat.matmul(target.matrix, mat):
            return [gens[i][0] for i in word]
    return None


@dataclass(frozen=True)
class NugatoryReport:
    verdict: str
    witness: Optional[dict[str, Any]]
    trace: tuple[dict[str, Any], ...]
    budget: int


def image_curve_name(L_name: str) -> str:
    return f"g({L_name})"


def nugatory_analysis(s: Scenario, L_name: str, q: int, budget: Optional[int] = None) -> NugatoryReport:
    """Decide whether the order-q crossing change along L can leave the knot unchanged.

    Steps: (1) trivial circles and disc fibers are nugatory outright.
    (2) Case A would need g·T_L^{-q} = H·g·H⁻¹.  Differing conjugacy
    invariants rule it out; otherwise we search H within the budget and
    apply the commutator-length bound, since T_L^{-q} = [g⁻¹, H] would be
    one commutator.  (3) Case B holds when g(L) bounds a disc in the
    handlebody; that is checked on the system word of the scenario curve
    named ``g(L)`` and wins over any Case A conclusion.  If Case A is
    excluded and Case B certifiably fails the result is Obstructed;
    anything else is Unknown.
    """
    if q == 0:
        raise PreconditionError("crossing order must be nonzero")
    if budget is None:
        budget = default_budget()
    m = s.model
    L, _ = m.circle(L_name)
    trace: list[dict[str, Any]] = []

    def done(verdict: str, witness: Optional[dict[str, Any]]) -> NugatoryReport:
        return NugatoryReport(verdict, witness, tuple(trace), budget)

    if m.fiber_genus == 0:
        trace.append({"step": "fiber", "result": "fiber is a disc"})
        return done("Nugatory", {"kind": "disc-fiber", "fiber_genus": 0})
    status = homotopy_status(L)
    step1: dict[str, Any] = {"step": "homotopy", "curve": L.name, "result": status}
    if L.pi1_word is not None:
        from .words import dehn_reduce

        step1["reduced_word"] = str(dehn_reduce(m.surface_genus, L.pi1_word))
    trace.append(step1)
    if status == "trivial":
        return done("Nugatory", {"kind": "trivial-word", "curve": L.name, "reduced_word": step1.get("reduced_word", "")})

    g = m.model_map
    target = g * transvection(L.homology, -q)
    case_a_excluded = False
    case_a_step: dict[str, Any] = {}
    filt = monodromy_conjugacy_filter(target, g)
    if filt.kind == "DistinctCertified":
        case_a_excluded = True
        case_a_step = {"step": "caseA", "result": "excluded", "reason": "conjugacy invariants differ", **filt.certificate}
        trace.append(case_a_step)
    else:
        h = find_conjugator(target, g, atlas_generators(s.atlas), budget)
        trace.append({"step": "caseA-search", "budget": budget, "conjugator": h})
        if status == "essential":
            ob = commutator_obstruction(m.surface_genus, 1, abs(q), 1, True, True)
            case_a_step = {"step": "caseA-bound", "result": ob.kind, "bound": str(ob.bound), "detail": ob.detail}
            trace.append(case_a_step)
            case_a_excluded = ob.kind == "Contradiction"

    image = image_curve_name(L.name)
    case_b_failed = False
    case_b_step: dict[str, Any] = {"step": "caseB", "curve": image, "result": "no data"}
    if image in s.atlas:
        gl = s.atlas.curve(image)
        reduced = reduce(gl.system_word)
        bounds = disc_bound_test(s.alphabet, gl)
        case_b_step = {"step": "caseB", "curve": image, "reduced_word": str(reduced), "result": bounds}
        trace.append(case_b_step)
        if bounds:
            return done("Nugatory", {"kind": "disc-bound", "curve": image, "reduced_word": ""})
        case_b_failed = True
    else:
        trace.append(case_b_step)

    if case_a_excluded and case_b_failed:
        return done("Obstructed", {"kind": "both-cases-excluded", "caseA": case_a_step, "caseB": case_b_step})
    return done("Unknown", {"kind": "budget", "budget": budget})
