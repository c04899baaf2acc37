"""Outcome of a membership query and its stable JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .monomial import Monomial, format_monomial

PURE = "Pure"
NOT_PURE = "NotPure"
INCONCLUSIVE = "Inconclusive"

# reasons
BELOW_LOWER_BOUND = "BelowLowerBound"
ABOVE_UPPER_BOUND = "AboveUpperBound"
EXCEEDS_TWICE_SOCLE = "ExceedsTwiceSocle"
MACAULAY_VIOLATION = "MacaulayViolation"
SEARCH_EXHAUSTED = "SearchExhausted"


@dataclass(frozen=True)
class Decision:
    query: dict[str, Any]
    verdict: str
    rule: str
    reason: str | None = None
    witness: tuple[Monomial, ...] | None = None
    nodes: int = field(default=0, compare=False)

    @property
    def is_pure(self) -> bool:
        return self.verdict == PURE

    def to_dict(self, with_witness: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {"query": self.query, "verdict": self.verdict, "rule": self.rule}
        if self.reason is not None:
            out["reason"] = self.reason
        if with_witness and self.witness is not None:
            out["witness"] = [format_monomial(m) for m in self.witness]
        return out

    def to_json(self, with_witness: bool = True) -> str:
        return dumps(self.to_dict(with_witness))


def dumps(obj: Any) -> str:
    """Compact, key-order-preserving, ASCII-only JSON."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)
