"""End-to-end search for a long path on which no colour is unique."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..colorings import Colouring, centre_of, colour_multiplicity
from ..gridcore import Pseudogrid
from .cover import pick_up_everything
from .params import PipelineParams, StageError, Telemetry
from .pruning import colours_present, prune_to_frequent
from .representatives import doubled_colour_set


@dataclass
class WitnessReport:
    path: tuple[int, ...]
    verified: bool
    multiplicity: dict[int, int]
    params: PipelineParams
    c: int
    telemetry: Telemetry = field(default_factory=Telemetry)

    @property
    def k(self) -> int:
        return self.telemetry.k

    @property
    def retries(self) -> int:
        return self.telemetry.retries


def verify_uncentred(pg: Pseudogrid, phi: Colouring, path) -> bool:
    """Simple path of ``pg`` in which every colour occurs zero or at least two times."""
    if len(set(path)) != len(path) or not path:
        return False
    adj = pg.adjacency
    if any(v not in adj for v in path):
        return False
    if any(w not in adj[u] for u, w in zip(path, path[1:])):
        return False
    return centre_of(phi, path) is None


def build_witness(pg: Pseudogrid, phi: Colouring, params: PipelineParams | None = None) -> WitnessReport:
    """Prune, double every colour, thread a snake through the doubled set.

    Raises ``StageError`` (with telemetry) when a stage cannot finish.
    """
    params = params or PipelineParams()
    tel = Telemetry(k=pg.a)
    c = len(colours_present(pg, phi))
    try:
        pruned = prune_to_frequent(pg, phi, params.d, params.r)
        tel.k_prime = pruned.k_prime
        tel.prune_rounds = pruned.rounds
        ds = doubled_colour_set(pruned.pg, phi, params)
        tel.q1, tel.x, tel.q2, tel.s, tel.retries = len(ds.q1), len(ds.missing), len(ds.q2), len(ds.s), ds.retries
        snake = pick_up_everything(pruned.pg, ds.s, params.r)
        tel.splices, tel.fallback_routes = snake.splices, snake.fallback_routes
    except StageError as err:
        err.telemetry = {**tel.as_dict(), **err.telemetry}
        raise
    path = tuple(snake.path)
    verified = verify_uncentred(pg, phi, path)
    if not verified:
        raise StageError("verify", "assembled path has a centre", tel.as_dict())
    return WitnessReport(path, verified, colour_multiplicity(phi, path), params, c, tel)


def format_witness(rep: WitnessReport) -> str:
    t = rep.telemetry
    p = rep.params
    lines = [
        f"witness {t.k} {rep.c} {p.r} {p.d} {p.seed} {int(rep.verified)}",
        " ".join(map(str, rep.path)),
        f"telemetry {t.k_prime} {t.q1} {t.x} {t.q2} {t.s} {t.retries}",
    ]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class WitnessFile:
    k: int
    c: int
    r: int
    d: int
    seed: int
    verified: bool
    path: tuple[int, ...]
    telemetry: tuple[int, ...]


def parse_witness(text: str) -> WitnessFile:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise ValueError("witness file needs a header and a path line")
    head = lines[0].split()
    if head[0] != "witness" or len(head) != 7:
        raise ValueError("expected 'witness k c r d seed verified' header")
    k, c, r, d, seed, ver = map(int, head[1:])
    path = tuple(int(x) for x in lines[1].split())
    tel: tuple[int, ...] = ()
    if len(lines) > 2:
        parts = lines[2].split()
        if parts[0] != "telemetry":
            raise ValueError("third line must start with 'telemetry'")
        tel = tuple(int(x) for x in parts[1:])
    return WitnessFile(k, c, r, d, seed, bool(ver), path, tel)
