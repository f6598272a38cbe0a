"""n-adjacency bookkeeping over a small table of knots.

Knots are identified by table name only; nothing here decides isotopy.
Genera in the built-in table are the classical values: the unknot bounds
a disc, and the trefoil and figure-eight are genus-one fibered knots whose
fibers are once-punctured tori.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .errors import DomainError, ParseError


@dataclass(frozen=True)
class KnotRecord:
    name: str
    genus: int
    fibered: bool
    scenario_ref: Optional[str] = None

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise DomainError("knot genus is nonnegative")


@dataclass(frozen=True)
class AdjacencyClaim:
    source: KnotRecord
    target: KnotRecord
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError("adjacency index n must be at least 1")


BUILTIN_TABLE: dict[str, KnotRecord] = {
    r.name: r
    for r in (
        KnotRecord("unknot", 0, True, "unknot"),
        KnotRecord("trefoil", 1, True, "trefoil"),
        KnotRecord("figure8", 1, True, "figure8"),
    )
}


def genus_bound(g_K: int, g_Kprime: int) -> int:
    """Value of g_n^L(K) for K n-adjacent to K' with n > 1."""
    if g_K < 0 or g_Kprime < 0:
        raise DomainError("genera are nonnegative")
    return max(g_K, g_Kprime)


def fibered_dichotomy(c: AdjacencyClaim) -> str:
    """For a fibered target and n > 1: K ≅ K' or g(K) > g(K')."""
    if not c.target.fibered or c.n <= 1:
        return "NotApplicable"
    if c.source.genus > c.target.genus:
        return "GenusGreaterHolds"
    if c.source.name == c.target.name:
        return "MustBeIsotopic"
    return "Inconsistent"


def monotonicity_closure(c: AdjacencyClaim) -> list[AdjacencyClaim]:
    """n-adjacency implies m-adjacency for every 0 < m <= n."""
    return [AdjacencyClaim(c.source, c.target, m) for m in range(1, c.n + 1)]


def table_from_json(doc: Any) -> dict[str, KnotRecord]:
    if not isinstance(doc, list):
        raise ParseError("knot table must be a JSON list")
    table = {}
    allowed = {"name", "genus", "fibered", "scenario_ref"}
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict):
            raise ParseError(f"entry {i} must be an object")
        unknown = set(entry) - allowed
        missing = {"name", "genus", "fibered"} - set(entry)
        if unknown or missing:
            raise ParseError(f"entry {i}: unknown {sorted(unknown)}, missing {sorted(missing)}")
        genus, fibered = entry["genus"], entry["fibered"]
        if isinstance(genus, bool) or not isinstance(genus, int) or not isinstance(fibered, bool):
            raise ParseError(f"entry {i}: genus must be an integer and fibered a boolean")
        ref = entry.get("scenario_ref")
        table[str(entry["name"])] = KnotRecord(str(entry["name"]), genus, fibered, None if ref is None else str(ref))
    return table


def load_table(ref: str) -> dict[str, KnotRecord]:
    """A knot table file, or the built-in table for ``builtin``."""
    path = Path(ref)
    if path.is_file():
        try:
            return table_from_json(json.loads(path.read_text(encoding="utf-8")))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{ref}: {exc}") from None
    if ref == "builtin":
        return dict(BUILTIN_TABLE)
    raise ParseError(f"no knot table at {ref!r} (use a file path or 'builtin')")
