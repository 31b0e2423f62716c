"""Verification reports shared by the automatic-structure and integer-model checks."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

SCHEMA_VERSION = 1


@dataclass
class VerificationReport:
    language: str
    depth: int
    oracle_only: int
    acceptor_only: int
    agreements: int
    mismatches: list = field(default_factory=list)  # bounded sample, rendered as text
    passed: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = self.oracle_only == 0 and self.acceptor_only == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema_version"] = SCHEMA_VERSION
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def compare_sets(language: str, depth: int, oracle: set, acceptor: set,
                 render=str, sample: int = 10, extra: dict | None = None) -> VerificationReport:
    only_oracle = oracle - acceptor
    only_acceptor = acceptor - oracle
    mismatches = [f"oracle only: {render(w)}" for w in sorted(only_oracle, key=_order)[:sample]]
    mismatches += [f"acceptor only: {render(w)}" for w in sorted(only_acceptor, key=_order)[:sample]]
    return VerificationReport(
        language, depth, len(only_oracle), len(only_acceptor),
        len(oracle & acceptor), mismatches, extra=extra or {},
    )


def _order(w):
    return (len(w), repr(w))
