from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..gridcore import vol


class StageError(RuntimeError):
    """A pipeline stage could not establish its postcondition.

    ``stage`` names the step (``"precondition"``, ``"prune"``,
    ``"representatives"``, ``"doubled_set"``, ``"cover"``, ``"verify"``);
    ``telemetry`` carries whatever was known when it broke.
    """

    def __init__(self, stage: str, message: str, telemetry: dict | None = None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.telemetry = dict(telemetry or {})


@dataclass(frozen=True)
class PipelineParams:
    """Knobs of the witness pipeline.

    ``d`` defaults to a desk-scale value.  ``guaranteed_d`` reports the
    frequency demand for which the existence argument is guaranteed; it is
    astronomically larger and is documentation only.
    """

    r: int = 9
    d: int = 14
    retry_budget: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.r < 9:
            raise ValueError(f"box radius r must be at least 9, got {self.r}")
        if self.d < 1:
            raise ValueError(f"frequency demand d must be positive, got {self.d}")
        if self.retry_budget < 1:
            raise ValueError(f"retry budget must be positive, got {self.retry_budget}")

    @property
    def p(self) -> int:
        """Cover radius used when splicing boxes into the snake."""
        return (self.r - 5) // 4


def lll_tau(r: int) -> int:
    """``32 vol(7r)^2 + 1``: the Local Lemma weight denominator."""
    return 32 * vol(7 * r) ** 2 + 1


def guaranteed_d(r: int, max_iter: int = 200) -> int:
    """Smallest ``d`` (by fixpoint iteration) meeting the frequency bound.

    Solves ``phi >= 32 vol(7r) (ln(32 vol(7r) + 1) + 2 vol(2r+1) ln(2 phi))``
    for ``phi = d - vol(r+1)``.
    """
    v7 = vol(7 * r)
    v2 = vol(2 * r + 1)
    phi = float(32 * v7)
    for _ in range(max_iter):
        nxt = 32 * v7 * (math.log(32 * v7 + 1) + 2 * v2 * math.log(2 * phi))
        if abs(nxt - phi) < 1:
            phi = nxt
            break
        phi = nxt
    return math.ceil(phi) + vol(r + 1)


@dataclass
class Telemetry:
    k: int = 0
    k_prime: int = 0
    q1: int = 0
    x: int = 0
    q2: int = 0
    s: int = 0
    retries: int = 0
    prune_rounds: int = 0
    splices: int = 0
    fallback_routes: int = 0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "extra"}
        out.update(self.extra)
        return out
