"""Delete rows and columns until every colour is frequent in the interior."""
from __future__ import annotations

from dataclasses import dataclass

from ..colorings import Colouring, deficiency_set, profile
from ..gridcore import Pseudogrid, delete_lines, in_interior
from .params import StageError


@dataclass(frozen=True)
class PruneResult:
    pg: Pseudogrid
    rounds: int
    removed_colours: frozenset[int]

    @property
    def k_prime(self) -> int:
        return self.pg.a


def colours_present(pg: Pseudogrid, phi: Colouring) -> set[int]:
    return {phi[v] for v in pg.owner}


def _lines_to_delete(pg: Pseudogrid, prof, bad: frozenset[int], r: int) -> tuple[set[int], set[int]]:
    k = pg.a
    rows: set[int] = set()
    cols: set[int] = set()
    for mu, cs in prof.colours_of.items():
        if not cs & bad or not in_interior(mu, r, k, k):
            continue
        if mu.is_vertex:
            i, j = mu.coords
            rows.add(j)
            cols.add(i)
        elif mu.is_horizontal:
            rows.add(mu.y // 2)
        else:
            cols.add(mu.x // 2)
    frame = set(range(1, r + 1)) | set(range(k - r + 1, k + 1))
    rows |= frame
    cols |= frame
    # equal counts keep the result square
    pad = iter(i for i in range(1, k + 1))
    while len(rows) < len(cols):
        x = next(pad)
        rows.add(x)
    pad = iter(i for i in range(1, k + 1))
    while len(cols) < len(rows):
        cols.add(next(pad))
    return rows, cols


def prune_to_frequent(pg: Pseudogrid, phi: Colouring, d: int, r: int) -> PruneResult:
    """Sub-pseudogrid whose colours each appear on ``>= d`` interior objects.

    Colours of a Hall-deficient set are wiped out together with the frame
    of width ``r``; the loop stops once the frequency graph admits a
    ``d``-fold matching.
    """
    if pg.a != pg.b:
        raise StageError("precondition", f"pseudogrid must be square, got {pg.a}x{pg.b}")
    k = pg.a
    c = len(colours_present(pg, phi))
    if c * (d + 2 * r) > k:
        raise StageError(
            "precondition",
            f"{c} colours exceed k/(d+2r) = {k}/{d + 2 * r}",
            {"k": k, "c": c},
        )
    removed: set[int] = set()
    rounds = 0
    while True:
        present = colours_present(pg, phi)
        prof = profile(pg, phi)
        bad = deficiency_set(prof, present, d, r, pg.grid)
        if bad is None:
            return PruneResult(pg, rounds, frozenset(removed))
        rows, cols = _lines_to_delete(pg, prof, bad, r)
        if len(rows) >= pg.a:
            raise StageError("prune", "pruning would consume the whole grid", {"k": k, "rounds": rounds})
        pg = delete_lines(pg, rows, cols)
        rounds += 1
        left = colours_present(pg, phi) & bad
        if left:
            raise StageError("prune", f"colours {sorted(left)} survived their deletion round")
        removed |= bad
