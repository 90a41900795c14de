"""Operation tallies for complexity measurements.

Criteria accept an optional ``counter``; when it is ``None`` (the default)
no bookkeeping happens at all.  Vectorized code tallies the number of scalar
operations each array expression performs, so the totals are the same as
those of the equivalent scalar loops.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field


@dataclass
class OpCounters:
    """Complex multiplications, complex additions and comparisons."""

    mults: int = 0
    adds: int = 0
    comparisons: int = 0
    by_phase: dict = field(default_factory=lambda: defaultdict(lambda: [0, 0, 0]))

    def tally(self, mults: int = 0, adds: int = 0, comparisons: int = 0, phase: str = "other"):
        self.mults += int(mults)
        self.adds += int(adds)
        self.comparisons += int(comparisons)
        slot = self.by_phase[phase]
        slot[0] += int(mults)
        slot[1] += int(adds)
        slot[2] += int(comparisons)

    @property
    def total(self) -> int:
        return self.mults + self.adds + self.comparisons

    def phase_total(self, phase: str) -> int:
        return sum(self.by_phase.get(phase, (0, 0, 0)))

    def as_dict(self) -> dict:
        return {
            "mults": self.mults,
            "adds": self.adds,
            "comparisons": self.comparisons,
            "total": self.total,
            "phases": {k: {"mults": v[0], "adds": v[1], "comparisons": v[2]}
                       for k, v in sorted(self.by_phase.items())},
        }
