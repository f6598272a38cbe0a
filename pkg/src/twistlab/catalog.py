"""Built-in scenarios and the scenario JSON format.

Every number below was worked out by hand from band pictures of the fiber
and is re-derived independently in the test suite.  The derivations:

* Fiber S is a disc with bands; the arc dual to the core A is the cocore
  of A's band and the meridian disc over it is a vertical disc arc×I.
  Its boundary reads t(B) u(B)⁻¹ in π_1(Σ): the closed-up arc is B.
* A crossing circle L dual to a band is a parallel copy of the meridian
  over that band's cocore.  Its image g(L) is h(λ) on top and λ below,
  so its π_1-word is h(c_top)·c_bot⁻¹.
* Intersections of g(L) with top curves c: i(g(L), c) = i(L, h⁻¹(c)), and a
  vertical curve over an arc meets a closed top curve of slope s exactly
  |det(s, slope of the arc)| times.
* Intersections of g(L) with meridians: h(λ) is λ plus one pass around
  each core it is twisted along; each pass crosses that core's cocore
  once and crossings of the same sign do not cancel.
* K = ∂S×{1/2} is fixed by g and meets every vertical disc twice.
* Composite: S is a boundary sum of a trefoil fiber (handle 1) and a
  figure-eight fiber (handle 2).  The decomposing sphere meets S in an
  arc λ separating the handles; L = ∂(λ×I) reads [a1,b1][a4,b4], is
  separating but essential, and g(L) = L since h fixes [A1,B1] exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from .errors import AtlasError, ParseError
from .homology import HomologyClass, TwistWord, intersection_pairing
from .models import HNModel, Scenario
from .words import Alphabet, Atlas, CyclicWord, Curve

# name, π_1-word, system word, homology
CurveRow = tuple[str, str, str, tuple[int, ...]]


def _build(
    name: str,
    fiber_genus: int,
    rows: Sequence[CurveRow],
    geom_upper: dict[tuple[str, str], int],
    monodromy: Sequence[tuple[str, int]],
    circles: Sequence[tuple[str, int]],
    notes: str,
) -> Scenario:
    genus = 2 * fiber_genus
    curves = tuple(
        Curve(
            name=n,
            system_word=CyclicWord.parse(sw),
            homology=HomologyClass(genus, hom),
            separating=not any(hom),
            pi1_word=CyclicWord.parse(pw),
        )
        for n, pw, sw, hom in rows
    )
    names = [c.name for c in curves]
    geom = [[0] * len(names) for _ in names]
    for (u, v), value in geom_upper.items():
        i, j = names.index(u), names.index(v)
        geom[i][j] = geom[j][i] = value
    alg = [[intersection_pairing(c.homology, d.homology) for d in curves] for c in curves]
    atlas = Atlas(curves, tuple(map(tuple, geom)), tuple(map(tuple, alg)))
    alphabet = Alphabet(tuple(f"x{i}" for i in range(1, 2 * fiber_genus + 1)))
    word = TwistWord(tuple(monodromy), genus)
    model = HNModel(
        fiber_genus=fiber_genus,
        model_map=word.evaluate({c.name: c.homology for c in curves}),
        model_word=word,
        knot=atlas.curve("K"),
        crossing_circles=tuple((atlas.curve(c), q) for c, q in circles),
    )
    return Scenario(name, alphabet, atlas, model, notes)


def _pairs(table: str) -> dict[tuple[str, str], int]:
    """Parse lines ``u v n`` listing the nonzero geometric intersection numbers."""
    out = {}
    for line in table.strip().splitlines():
        u, v, n = line.split()
        out[(u, v)] = int(n)
    return out


def _unknot() -> Scenario:
    rows = [("K", "", "", ()), ("L1", "", "", ()), ("L2", "", "", ())]
    return _build(
        "unknot",
        0,
        rows,
        _pairs("K L1 2\nK L2 2"),
        (),
        (("L1", 1), ("L2", -1)),
        "Fiber is a disc, Σ is a sphere; every crossing circle bounds a disc.",
    )


def _genus_one(name: str, h_images: dict[str, str], monodromy, circles, notes) -> Scenario:
    # Σ generators: a1 = t(A), b1 = t(B), a2 = u(B), b2 = u(A).
    # Meridians: x1 over the arc dual to A (class t(B) - u(B)), x2 over the arc dual to B.
    rows: list[CurveRow] = [
        ("x1", "b1 a2'", "", (0, 1, -1, 0)),
        ("x2", "b2 a1'", "", (-1, 0, 0, 1)),
        ("K", "a1 b1 a1' b1'", "x1 x2 x1' x2'", (0, 0, 0, 0)),
        ("a", "a1", "x1", (1, 0, 0, 0)),
        ("b", "b1", "x2", (0, 1, 0, 0)),
        ("L1", "b1 a2'", "", (0, 1, -1, 0)),
        ("L2", "b2 a1'", "", (-1, 0, 0, 1)),
    ]
    rows += h_images["rows"]
    return _build(name, 1, rows, _pairs(h_images["geom"]), monodromy, circles, notes)


_GENUS_ONE_GEOM = """
x1 K 2
x2 K 2
x1 a 1
x2 b 1
K L1 2
K L2 2
a b 1
a L1 1
b L2 1
K g(L1) 2
K g(L2) 2
x1 g(L1) 1
L1 g(L1) 1
x1 g(L2) 1
x2 g(L2) 1
L1 g(L2) 1
L2 g(L2) 1
a g(L1) 1
b g(L1) 1
a g(L2) 1
"""


def _trefoil() -> Scenario:
    # h = T_a T_b on π_1(S) = F(A, B): A ↦ B⁻¹, B ↦ BA; homology matrix [[0,1],[-1,1]].
    # g(L1) = h(B)·u(B)⁻¹ = b1 a1 a2';  g(L2) = u(A)·h(A)⁻¹ = b2 b1.
    images = {
        "rows": [
            ("g(L1)", "b1 a1 a2'", "x1", (1, 1, -1, 0)),
            ("g(L2)", "b2 b1", "x1 x2", (0, 1, 0, 1)),
        ],
        "geom": _GENUS_ONE_GEOM,
    }
    return _genus_one(
        "trefoil",
        images,
        (("a", 1), ("b", 1)),
        (("L1", 1), ("L2", 1)),
        "Plumbing of two positive Hopf bands; an order-1 change along either circle unknots it.",
    )


def _figure_eight() -> Scenario:
    # h = T_a T_b⁻¹: A ↦ ABA, B ↦ BA; homology matrix [[2,1],[1,1]].
    # g(L1) = b1 a1 a2' as for the trefoil; g(L2) = b2 (a1 b1 a1)⁻¹ = b2 a1' b1' a1'.
    # i(g(L2), b) = |det(h⁻¹(b), slope A)| = |det((-1,2),(1,0))| = 2.
    images = {
        "rows": [
            ("g(L1)", "b1 a1 a2'", "x1", (1, 1, -1, 0)),
            ("g(L2)", "b2 a1' b1' a1'", "x1' x2'", (-2, -1, 0, 1)),
        ],
        "geom": _GENUS_ONE_GEOM + "b g(L2) 2\n",
    }
    return _genus_one(
        "figure8",
        images,
        (("a", 1), ("b", -1)),
        (("L1", 4), ("L2", -4)),
        "Plumbing of a positive and a negative Hopf band; L1 and L2 are dual to the two bands.",
    )


def _composite() -> Scenario:
    # Σ genus 4: a1,b1,a2,b2 top copy; a3 = u(B2), b3 = u(A2), a4 = u(B1), b4 = u(A1).
    rows: list[CurveRow] = [
        ("x1", "b1 a4'", "", (0, 1, 0, 0, 0, 0, -1, 0)),
        ("x2", "b4 a1'", "", (-1, 0, 0, 0, 0, 0, 0, 1)),
        ("x3", "b2 a3'", "", (0, 0, 0, 1, -1, 0, 0, 0)),
        ("x4", "b3 a2'", "", (0, 0, -1, 0, 0, 1, 0, 0)),
        ("K", "a1 b1 a1' b1' a2 b2 a2' b2'", "x1 x2 x1' x2' x3 x4 x3' x4'", (0,) * 8),
        ("L", "a1 b1 a1' b1' a4 b4 a4' b4'", "", (0,) * 8),
        ("g(L)", "a1 b1 a1' b1' a4 b4 a4' b4'", "", (0,) * 8),
        ("a1", "a1", "x1", (1, 0, 0, 0, 0, 0, 0, 0)),
        ("b1", "b1", "x2", (0, 1, 0, 0, 0, 0, 0, 0)),
        ("a2", "a2", "x3", (0, 0, 1, 0, 0, 0, 0, 0)),
        ("b2", "b2", "x4", (0, 0, 0, 1, 0, 0, 0, 0)),
    ]
    geom = """
x1 K 2
x2 K 2
x3 K 2
x4 K 2
K L 2
K g(L) 2
x1 a1 1
x2 b1 1
x3 a2 1
x4 b2 1
a1 b1 1
a2 b2 1
"""
    return _build(
        "composite",
        2,
        rows,
        _pairs(geom),
        (("a1", 1), ("b1", 1), ("a2", 1), ("b2", -1)),
        (("L", 1),),
        "Trefoil # figure-eight; L lies on the decomposing sphere.",
    )


_BUILDERS = {
    "unknot": _unknot,
    "trefoil": _trefoil,
    "figure8": _figure_eight,
    "composite": _composite,
}


def catalog() -> list[Scenario]:
    return [build() for build in _BUILDERS.values()]


def catalog_names() -> list[str]:
    return list(_BUILDERS)


def get_scenario(name: str) -> Scenario:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise AtlasError(f"no built-in scenario named {name!r}") from None


# JSON format

_TOP_FIELDS = {"name", "genus", "alphabet", "curves", "geom", "alg", "monodromy_word", "knot", "crossing_circles"}
_CURVE_FIELDS = {"name", "system_word", "pi1_word", "homology", "separating"}


def scenario_to_json(s: Scenario) -> dict[str, Any]:
    curves = []
    for c in s.atlas.curves:
        entry: dict[str, Any] = {"name": c.name, "system_word": str(c.system_word)}
        if c.pi1_word is not None:
            entry["pi1_word"] = str(c.pi1_word)
        entry["homology"] = list(c.homology.coords)
        entry["separating"] = c.separating
        curves.append(entry)
    return {
        "name": s.name,
        "genus": s.model.surface_genus,
        "alphabet": list(s.alphabet.names),
        "curves": curves,
        "geom": [list(r) for r in s.atlas.geom_matrix],
        "alg": [list(r) for r in s.atlas.alg_matrix],
        "monodromy_word": [{"curve": n, "exp": e} for n, e in s.model.model_word.letters],
        "knot": s.model.knot.name,
        "crossing_circles": [{"curve": c.name, "order": q} for c, q in s.model.crossing_circles],
    }


def _fields(obj: Any, allowed: set[str], required: set[str], where: str) -> dict[str, Any]:
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"unknown fields in {where}: {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"missing fields in {where}: {sorted(missing)}")
    return obj


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{where} must be an integer")
    return x


def scenario_from_json(doc: Any) -> Scenario:
    doc = _fields(doc, _TOP_FIELDS, _TOP_FIELDS, "scenario")
    genus = _int(doc["genus"], "genus")
    if genus < 0 or genus % 2:
        raise ParseError("genus of the doubled surface must be even and nonnegative")
    curves = []
    for i, raw in enumerate(doc["curves"]):
        entry = _fields(raw, _CURVE_FIELDS, _CURVE_FIELDS - {"pi1_word"}, f"curves[{i}]")
        if not isinstance(entry["separating"], bool):
            raise ParseError(f"curves[{i}].separating must be a boolean")
        curves.append(
            Curve(
                name=str(entry["name"]),
                system_word=CyclicWord.parse(entry["system_word"]),
                homology=HomologyClass(genus, tuple(_int(x, f"curves[{i}].homology") for x in entry["homology"])),
                separating=entry["separating"],
                pi1_word=CyclicWord.parse(entry["pi1_word"]) if "pi1_word" in entry else None,
            )
        )
    matrices = []
    for key in ("geom", "alg"):
        matrices.append(tuple(tuple(_int(x, key) for x in row) for row in doc[key]))
    atlas = Atlas(tuple(curves), matrices[0], matrices[1])
    letters = []
    for i, raw in enumerate(doc["monodromy_word"]):
        entry = _fields(raw, {"curve", "exp"}, {"curve", "exp"}, f"monodromy_word[{i}]")
        letters.append((str(entry["curve"]), _int(entry["exp"], "exp")))
    word = TwistWord(tuple(letters), genus)
    for name, _ in letters:
        atlas.curve(name)
    circles = []
    for i, raw in enumerate(doc["crossing_circles"]):
        entry = _fields(raw, {"curve", "order"}, {"curve", "order"}, f"crossing_circles[{i}]")
        circles.append((atlas.curve(str(entry["curve"])), _int(entry["order"], "order")))
    model = HNModel(
        fiber_genus=genus // 2,
        model_map=word.evaluate({c.name: c.homology for c in atlas.curves}),
        model_word=word,
        knot=atlas.curve(str(doc["knot"])),
        crossing_circles=tuple(circles),
    )
    return Scenario(str(doc["name"]), Alphabet(tuple(str(n) for n in doc["alphabet"])), atlas, model)


def load_scenario(ref: str) -> Scenario:
    """Resolve ``ref`` as a file path first, then as a built-in scenario name."""
    path = Path(ref)
    if path.is_file():
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{ref}: {exc}") from None
        return scenario_from_json(doc)
    return get_scenario(ref)
