"""Seeded instances, the experiment runner and its CSV output."""
from __future__ import annotations

import csv
import io
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..colorings import random_colouring
from ..gridcore import Pseudogrid, build_pseudogrid, plain_pseudogrid, random_spec
from ..witness.params import PipelineParams, StageError
from ..witness.pipeline import build_witness, format_witness, parse_witness

CSV_COLUMNS = ("k", "c", "r", "d", "seed", "success", "retries", "path_length", "wall_ms", "failure_stage")
SUMMARY_COLUMNS = ("k", "c", "trials", "successes", "success_rate")


def trial_seed(master: int, k: int, trial: int) -> int:
    """Per-trial 64-bit seed derived from ``(master, k, trial)``."""
    return int(np.random.SeedSequence([master, k, trial]).generate_state(1, dtype=np.uint64)[0])


def colouring_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, 1]))


def host_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, 2]))


def make_instance(k: int, c: int, seed: int, pseudo: bool = False) -> tuple[Pseudogrid, dict[int, int]]:
    """A k x k host (plain, or random pseudogrid) and a random c-colouring, both from ``seed``."""
    pg = build_pseudogrid(random_spec(k, k, host_rng(seed))) if pseudo else plain_pseudogrid(k)
    return pg, random_colouring(pg.vertices(), c, colouring_rng(seed))


def reverify(pg: Pseudogrid, phi, path) -> bool:
    """Independent check: simple path of ``pg`` with no centre."""
    if not path or len(set(path)) != len(path):
        return False
    adj = pg.adjacency
    if any(v not in adj for v in path) or any(w not in adj[u] for u, w in zip(path, path[1:])):
        return False
    # counted here rather than through centre_of, so the check shares no code with the pipeline
    return 1 not in Counter(phi[v] for v in path).values()


@dataclass
class ExperimentConfig:
    ks: tuple[int, ...]
    trials: int
    seed: int = 0
    colours: int | None = None
    divisor: int = 32
    r: int = 9
    d: int = 14
    budget: int = 64
    host: str = "plain"  # plain | pseudo | mixed
    timing: bool = False
    out: Path | None = None

    def __post_init__(self):
        if not self.ks:
            raise ValueError("need at least one k")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if self.host not in ("plain", "pseudo", "mixed"):
            raise ValueError(f"unknown host kind {self.host!r}")

    def colours_for(self, k: int) -> int:
        return self.colours if self.colours is not None else max(1, k // self.divisor)


@dataclass
class ExperimentRow:
    k: int
    c: int
    r: int
    d: int
    seed: int
    success: bool
    retries: int
    path_length: int
    wall_ms: float | None
    failure_stage: str = ""
    witness: str | None = field(default=None, repr=False)

    def cells(self) -> list[str]:
        wall = "" if self.wall_ms is None else f"{self.wall_ms:.1f}"
        return [
            str(self.k), str(self.c), str(self.r), str(self.d), str(self.seed),
            str(int(self.success)), str(self.retries), str(self.path_length), wall, self.failure_stage,
        ]


def run_trial(cfg: ExperimentConfig, k: int, trial: int) -> ExperimentRow:
    seed = trial_seed(cfg.seed, k, trial)
    c = cfg.colours_for(k)
    pseudo = cfg.host == "pseudo" or (cfg.host == "mixed" and trial % 2 == 1)
    pg, phi = make_instance(k, c, seed, pseudo)
    params = PipelineParams(cfg.r, cfg.d, cfg.budget, seed)
    t0 = time.perf_counter()
    try:
        rep = build_witness(pg, phi, params)
    except StageError as err:
        wall = (time.perf_counter() - t0) * 1000 if cfg.timing else None
        return ExperimentRow(k, c, cfg.r, cfg.d, seed, False, int(err.telemetry.get("retries", 0)), 0, wall, err.stage)
    wall = (time.perf_counter() - t0) * 1000 if cfg.timing else None
    text = format_witness(rep)
    ok = reverify(pg, phi, parse_witness(text).path)
    return ExperimentRow(
        k, c, cfg.r, cfg.d, seed, ok, rep.retries, len(rep.path), wall, "" if ok else "reverify", text
    )


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRow]:
    """One row per (k, trial), sorted by (k, c, trial); writes CSVs if ``cfg.out`` is set."""
    rows = []
    for k in sorted(cfg.ks):
        for trial in range(cfg.trials):
            rows.append(run_trial(cfg, k, trial))
    if cfg.out is not None:
        write_outputs(cfg.out, rows)
    return rows


def rows_csv(rows: list[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(row.cells())
    return buf.getvalue()


def summary(rows: list[ExperimentRow]) -> list[tuple[int, int, int, int, float]]:
    cells: dict[tuple[int, int], list[int]] = {}
    for row in rows:
        tally = cells.setdefault((row.k, row.c), [0, 0])
        tally[0] += 1
        tally[1] += int(row.success)
    return [(k, c, n, s, s / n) for (k, c), (n, s) in sorted(cells.items())]


def summary_csv(rows: list[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for k, c, n, s, rate in summary(rows):
        w.writerow([k, c, n, s, f"{rate:.4f}"])
    return buf.getvalue()


def write_outputs(out: Path, rows: list[ExperimentRow]) -> None:
    out = Path(out)
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(rows_csv(rows))
        Path(f"{out}.summary.csv").write_text(summary_csv(rows))
        wdir = Path(f"{out}.witnesses")
        if any(row.witness for row in rows):
            wdir.mkdir(exist_ok=True)
        for row in rows:
            if row.witness:
                (wdir / f"k{row.k}_c{row.c}_{row.seed}.txt").write_text(row.witness)
    except OSError as err:
        raise OSError(f"cannot write experiment output under {out}: {err}") from err
