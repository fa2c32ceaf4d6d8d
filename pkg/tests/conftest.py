"""Shared diagrams, specs and hypothesis strategies."""

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ctgroups import amalgam as am
from ctgroups import diagram as dg
from ctgroups.twist import FieldSpec, Twist

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("default")

E6_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
CYCLE_EDGES = E6_EDGES + [(3, 6)]

SMALL_Q = [4, 5, 7, 8, 9, 11, 13, 16, 25, 27]
ODD_Q = [5, 7, 9, 11, 13, 25, 27]


def e6():
    return dg.Diagram.from_edges(E6_EDGES, range(1, 7))


def cycle_diagram():
    return dg.Diagram.from_edges(CYCLE_EDGES, range(1, 7))


def path(n):
    return dg.Diagram.from_edges([(k, k + 1) for k in range(1, n)], range(1, n + 1))


def square():
    return dg.Diagram.from_edges([(1, 2), (2, 3), (3, 4), (1, 4)])


def star_d4():
    return dg.Diagram.from_edges([(1, 4), (2, 4), (3, 4)])


def e6_spec(q):
    return am.AmalgamSpec.build(e6(), FieldSpec.from_q(q))


def cycle_spec(q):
    return am.AmalgamSpec.build(cycle_diagram(), FieldSpec.from_q(q), root=1)


def twisted_cycle_spec(q):
    f = FieldSpec.from_q(q)
    return am.AmalgamSpec.build(cycle_diagram(), f, {(4, 5): Twist.tau(f)}, root=6)


def random_diagram(rng, nmin=3, nmax=8, extra=3):
    """Random connected triangle-free diagram: a random tree plus a few chords."""
    n = rng.randint(nmin, nmax)
    edges = {tuple(sorted((rng.randrange(k), k))) for k in range(1, n)}
    adj = {v: set() for v in range(n)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    for _ in range(extra):
        i, j = rng.sample(range(n), 2)
        if j in adj[i] or adj[i] & adj[j]:
            continue
        edges.add(tuple(sorted((i, j))))
        adj[i].add(j)
        adj[j].add(i)
    return dg.Diagram.from_edges(sorted(edges), range(n))


def random_spec(rng, qs=SMALL_Q, **kw):
    d = random_diagram(rng, **kw)
    f = FieldSpec.from_q(rng.choice(qs))
    root = rng.choice(d.vertices)
    tree = dg.spanning_tree(d, root)
    omega = {c: Twist(f, rng.choice((1, -1)), rng.randrange(f.m)) for c in tree.chords}
    return am.AmalgamSpec.build(d, f, omega, root=root)


@st.composite
def diagrams(draw, nmin=3, nmax=8):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_diagram(random.Random(seed), nmin, nmax)


@st.composite
def specs(draw, qs=SMALL_Q, nmin=3, nmax=7):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_spec(random.Random(seed), qs, nmin=nmin, nmax=nmax)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
