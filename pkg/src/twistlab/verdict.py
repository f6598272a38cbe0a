from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class Verdict:
    """Tagged result used by the decision procedures.

    ``witness`` names a curve when the verdict points at one;
    ``certificate`` holds whatever data lets a caller re-check the claim.
    """

    kind: str
    witness: Optional[str] = None
    certificate: Optional[dict[str, Any]] = None
