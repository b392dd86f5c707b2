"""Shared test corpus and the acceptance summary."""

import time
from dataclasses import dataclass, field

import numpy as np
import pytest

from sball.completeness import CompletionConfig, complete, is_complete, is_constant_diameter
from sball.core import normalize
from sball.generators import (cap_body, geodesic_triangle, lens, random_cap_points,
                              reuleaux_odd_gon)
from sball.width import is_constant_width

TOL = 0.03
DELTAS = (0.5, 1.0, 1.4)


@dataclass
class Entry:
    name: str
    body: object
    delta: float
    expect_complete: bool
    seeds: np.ndarray = None
    verdicts: dict = field(default_factory=dict)


def completion_seeds(i):
    """Seed set number ``i``: 1 to 4 random points in a small cap."""
    delta = DELTAS[i % 3]
    rng = np.random.default_rng(1000 + i)
    pole = normalize(rng.normal(size=3) * [0.3, 0.3, 1.0] + [0.0, 0.0, 2.0])
    n = 1 + i % 4
    return delta, random_cap_points(n, pole, 0.15, delta, i)


def completion_entry(i):
    delta, seeds = completion_seeds(i)
    body = complete(seeds, CompletionConfig(delta, resolution=0.01))
    return Entry(f"completion-{i:02d}", body, delta, True, seeds)


@pytest.fixture(scope="session")
def completions():
    """The 20 random completions, with timing of completion plus width check."""
    t0 = time.perf_counter()
    out = [completion_entry(i) for i in range(20)]
    for e in out:
        e.verdicts["width"] = is_constant_width(e.body, e.delta, TOL)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="session")
def corpus(completions):
    """Every body used by the cross-predicate checks, with its verdicts."""
    out = list(completions[0])
    for k in (3, 5, 7):
        for d in (0.6, 1.0, 1.4):
            out.append(Entry(f"reuleaux-{k}-{d}", reuleaux_odd_gon(k, d), d, True))
    for d in DELTAS:
        out.append(Entry(f"cap-{d}", cap_body(d / 2, delta=d), d, True))
        out.append(Entry(f"lens-{d}", lens(d), d, False))
        out.append(Entry(f"triangle-{d}", geodesic_triangle(d), d, False))
    for e in out:
        e.verdicts["complete"] = is_complete(e.body, e.delta, TOL)
        if "width" not in e.verdicts:
            e.verdicts["width"] = is_constant_width(e.body, e.delta, TOL)
        e.verdicts["diameter"] = is_constant_diameter(e.body, e.delta, TOL)
    return out


@pytest.fixture(scope="session")
def complete_bodies(corpus):
    return [e for e in corpus if e.verdicts["complete"].passed]


# acceptance summary: one line per criterion, from the outcomes of the
# tests carrying @pytest.mark.criterion(n)

_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n = mark.args[0]
    ok = rep.passed if rep.when == "call" else not rep.failed
    if rep.when == "setup" and ok:
        return
    notes = [v for k, v in item.user_properties if k == "detail"]
    prev = _RESULTS.get(n, (True, []))
    _RESULTS[n] = (prev[0] and ok, prev[1] + notes)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        ok, notes = _RESULTS[n]
        line = f"ACCEPTANCE criterion {n:2d}: {'PASS' if ok else 'FAIL'}"
        if notes:
            line += "  (" + "; ".join(notes) + ")"
        terminalreporter.write_line(line)
