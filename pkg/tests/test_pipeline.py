from collections import Counter

import numpy as np
import pytest

from linchrom.colorings import is_linear
from linchrom.exact import path_graph
from linchrom.gridcore import build_pseudogrid, plain_pseudogrid, random_spec
from linchrom.harness.experiment import make_instance, reverify
from linchrom.witness import PipelineParams, StageError, build_witness, format_witness, parse_witness
from linchrom.witness.pipeline import verify_uncentred


@pytest.fixture(scope="module")
def report_128():
    pg, phi = make_instance(128, 4, 3)
    return pg, phi, build_witness(pg, phi, PipelineParams(seed=3))


def test_witness_verifies(report_128):
    pg, phi, rep = report_128
    assert rep.verified and rep.c == 4
    assert verify_uncentred(pg, phi, rep.path)
    assert reverify(pg, phi, rep.path)
    counts = Counter(phi[v] for v in rep.path)
    assert min(counts.values()) >= 2
    assert rep.multiplicity == dict(counts)
    t = rep.telemetry
    assert t.k == 128 and t.k_prime >= 128 - (14 + 18) * 4
    assert t.s == 2 * 4 and t.q1 + t.q2 == t.s


def test_linear_check_agrees(report_128):
    # relabel the path 0..n-1 so the depth-first check walks it from one end
    pg, phi, rep = report_128
    n = len(rep.path)
    verdict = is_linear(path_graph(n), [phi[v] for v in rep.path], guard=n)
    assert not verdict


def test_round_trip(report_128):
    _, _, rep = report_128
    text = format_witness(rep)
    wf = parse_witness(text)
    assert (wf.k, wf.c, wf.r, wf.d, wf.seed, wf.verified) == (128, 4, 9, 14, 3, True)
    assert wf.path == rep.path
    assert wf.telemetry[0] == rep.telemetry.k_prime
    for bad in ("", "witness 1 2 3\n1 2\n", "witness 1 1 9 1 0 1\n1 2\nnope 1\n"):
        with pytest.raises(ValueError):
            parse_witness(bad)


def test_tampered_path_fails(report_128):
    pg, phi, rep = report_128
    path = list(rep.path)
    path[5], path[6] = path[6], path[5]
    assert not reverify(pg, phi, path)
    assert not verify_uncentred(pg, phi, path[:1])


def test_injective_colouring_is_a_precondition_error():
    pg = plain_pseudogrid(40)
    phi = {v: v for v in pg.owner}
    with pytest.raises(StageError) as err:
        build_witness(pg, phi)
    assert err.value.stage == "precondition"
    assert err.value.telemetry["k"] == 40


def test_pseudogrid_host():
    rng = np.random.default_rng(21)
    pg = build_pseudogrid(random_spec(96, 96, rng))
    phi = {v: int(rng.integers(3)) for v in pg.owner}
    rep = build_witness(pg, phi, PipelineParams(seed=1))
    assert reverify(pg, phi, rep.path)


def test_deterministic():
    pg, phi = make_instance(64, 2, 11)
    a = build_witness(pg, phi, PipelineParams(seed=11))
    b = build_witness(pg, phi, PipelineParams(seed=11))
    assert format_witness(a) == format_witness(b)
