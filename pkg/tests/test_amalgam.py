import random
from itertools import product

import pytest
from conftest import (
    ODD_Q,
    cycle_diagram,
    cycle_spec,
    e6,
    e6_spec,
    path,
    random_diagram,
    specs,
    square,
    star_d4,
    twisted_cycle_spec,
)
from hypothesis import given

from ctgroups import amalgam as am
from ctgroups import diagram as dg
from ctgroups.errors import PreconditionError, SpecError
from ctgroups.twist import FieldSpec, Twist

F7 = FieldSpec(7)
F9 = FieldSpec(3, 2)


def test_missing_chords_default_to_identity():
    spec = am.AmalgamSpec.build(square(), F9)
    assert spec.omega == {(4, 3): Twist.identity(F9)}


def test_omega_on_tree_edge_lists_chords():
    with pytest.raises(SpecError, match="chords are: 4-3"):
        am.AmalgamSpec.build(square(), F9, {(1, 2): Twist.tau(F9)})


def test_omega_accepts_either_orientation():
    a = am.AmalgamSpec.build(square(), F9, {(3, 4): Twist.tau(F9)})
    b = am.AmalgamSpec.build(square(), F9, {(4, 3): Twist.tau(F9)})
    assert a.omega == b.omega


def test_characteristic_two_forces_equality():
    with pytest.raises(SpecError, match="characteristic 2"):
        am.AmalgamSpec.build(path(3), FieldSpec(2, 2), bad_pairs=[(1, 3)])


def test_omega_edge_examples():
    spec = twisted_cycle_spec(7)
    for i, j in spec.diagram.edge_set:
        if {i, j} != {4, 5}:
            assert am.omega_edge(spec, i, j).is_identity
            assert am.omega_edge(spec, j, i).is_identity
    # BFS from 6 visits 5 before 4
    assert am.omega_edge(spec, 4, 5) == Twist.tau(FieldSpec(7))
    assert am.omega_edge(spec, 5, 4).is_identity
    spec2 = cycle_spec(7)
    assert all(am.omega_edge(spec2, i, j).is_identity for i, j in spec2.diagram.edge_set)
    with pytest.raises(SpecError):
        am.omega_edge(spec, 1, 2)


def test_rho_examples():
    spec = twisted_cycle_spec(7)
    tau = Twist.tau(FieldSpec(7))
    assert am.rho(spec, 5, 4) == am.rho(spec, 4, 5) == tau
    assert am.rho(spec, 1, 3).is_identity
    with pytest.raises(SpecError):
        am.rho(spec, 1, 2)


@pytest.mark.parametrize("s", [1, 2])
def test_rho_frobenius_chord(s):
    f = FieldSpec(3, 3)
    spec = am.AmalgamSpec.build(square(), f, {(4, 3): Twist.frobenius(f, s)})
    forward, backward = am.rho(spec, 3, 4), am.rho(spec, 4, 3)
    assert forward.multiplier == 3**s
    assert (backward.multiplier * forward.multiplier) % f.modulus == 1
    # the alternative convention negates instead of inverting
    assert am.rho(spec, 4, 3, am.REMARK).multiplier == -(3**s)
    assert am.rho(spec, 3, 4, am.REMARK) == forward


@given(specs())
def test_rho_antisymmetry(spec):
    for i, j in spec.diagram.edge_set:
        assert am.rho(spec, i, j) == am.rho(spec, j, i).invert()


def test_orientability():
    assert am.is_orientable(e6_spec(7))
    assert not am.is_orientable(twisted_cycle_spec(7))
    spec = am.AmalgamSpec.build(square(), F9, {(4, 3): Twist(F9, -1, 1)})
    assert not am.is_orientable(spec)


@pytest.mark.parametrize(
    "diagram,blocks,expected",
    [
        (e6(), [], True),
        (path(3), [(1, 3)], True),
        (path(4), [(1, 2)], False),
    ],
)
def test_has_nontrivial_completion(diagram, blocks, expected):
    spec = am.AmalgamSpec.build(diagram, F7, bad_pairs=blocks)
    assert am.has_nontrivial_completion(spec) is expected


def test_z_span_examples():
    V = [1, 2, 3, 4]
    zero = am.ZVectorSpace.zero(V)
    assert am.z_span(dg.Partition(V), zero).dim == 0
    sp = am.z_span(dg.Partition(V, [(1, 3)]), zero)
    assert sp.dim == 1 and (1, 3) in sp
    z1 = am.ZVectorSpace(V, [(1, 2, 3, 4)])
    assert am.z_span(dg.Partition(V, [(1, 3), (2, 4)]), z1).dim == 2


def test_z_span_rejects_even_characteristic():
    V = [1, 2, 3]
    with pytest.raises(PreconditionError, match="odd characteristic"):
        am.z_span(dg.Partition(V), am.ZVectorSpace.zero(V), FieldSpec(2, 3))


def _star(blocks, z1_vectors=()):
    spec = am.AmalgamSpec.build(star_d4(), F7, bad_pairs=blocks)
    return spec, am.ZVectorSpace(spec.vertices, z1_vectors)


def test_closure_examples():
    spec = e6_spec(7)
    assert am.closure(spec).is_equality()
    spec, z1 = _star([(1, 2)])
    assert am.closure(spec, z1).format() == "{1,2}|{3}|{4}"
    assert am.injects_into_completion(spec, z1)
    spec, z1 = _star([(1, 2)], [(2, 3)])
    assert am.closure(spec, z1).format() == "{1,2,3}|{4}"
    assert not am.injects_into_completion(spec, z1)


def test_injects_e6_standard():
    assert am.injects_into_completion(e6_spec(7))


def test_no_completion_is_a_distinct_error():
    spec = am.AmalgamSpec.build(path(4), F7, bad_pairs=[(1, 2)])
    with pytest.raises(PreconditionError, match="no completion"):
        am.injects_into_completion(spec)
    with pytest.raises(PreconditionError):
        am.closure(spec)


def test_characteristic_two_short_circuit():
    spec = am.AmalgamSpec.build(star_d4(), FieldSpec(2, 3))
    assert am.injects_into_completion(spec) is True
    v = am.decide(spec)
    assert v.nontrivial_completion and v.injects
    with pytest.raises(PreconditionError):
        am.closure(spec)


@pytest.mark.parametrize(
    "diagram,blocks,expected",
    [(e6(), [], 1), (e6(), [(1, 2)], 2), (star_d4(), [(1, 2, 3)], 4)],
)
def test_isogeny_bound(diagram, blocks, expected):
    # the bound only counts blocks; it does not require the pair to be twins
    spec = am.AmalgamSpec.build(diagram, F7, bad_pairs=blocks)
    assert am.isogeny_bound(spec) == expected


@pytest.mark.parametrize(
    "diagram,q,expected",
    [(e6(), 7, 1), (square(), 4, 4), (cycle_diagram(), 8, 6), (path(5), 9, 1)],
)
def test_count_omega_types(diagram, q, expected):
    assert am.count_omega_types(diagram, FieldSpec.from_q(q)) == expected


def _brute_omega_classes(d, m):
    """Edge labellings by Z/2 x Z/m counted up to re-gauging at vertices.

    These classes are the homomorphisms from the fundamental group of the
    diagram to the twist group; orbits are found by union-find over all labellings.
    """
    edges = sorted(d.edge_set)
    group = [(s, e) for s in range(2) for e in range(m)]
    index = {g: k for k, g in enumerate(group)}
    size = len(group)
    labellings = list(product(range(size), repeat=len(edges)))
    code = {lab: k for k, lab in enumerate(labellings)}
    parent = list(range(len(labellings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [(1, 0), (0, 1 % m)]
    for lab in labellings:
        for v in d.vertices:
            for gs, ge in gens:
                new = []
                for (i, j), k in zip(edges, lab):
                    s, e = group[k]
                    # gauge at v: label(i, j) -> g(i) + label - g(j)
                    sign = (i == v) - (j == v)
                    new.append(index[((s + sign * gs) % 2, (e + sign * ge) % m)])
                a, b = find(code[lab]), find(code[tuple(new)])
                parent[a] = b
    return len({find(x) for x in range(len(labellings))})


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("q", [5, 4, 8])
def test_count_omega_types_random(seed, q):
    d = random_diagram(random.Random(seed), 3, 5, extra=2)
    f = FieldSpec.from_q(q)
    if (2 * f.m) ** len(d.edge_set) > 50000:
        pytest.skip("enumeration too large")
    assert am.count_omega_types(d, f) == _brute_omega_classes(d, f.m)


def _random_relation_spec(rng):
    d = random_diagram(rng, 4, 9, extra=2)
    twins = dg.sim0(d)
    # a random sub-relation of the twin relation
    pairs = [p for p in twins.pairs() if rng.random() < 0.5]
    f = FieldSpec.from_q(rng.choice(ODD_Q))
    spec = am.AmalgamSpec.build(d, f, bad_pairs=[p for p in pairs])
    nvec = rng.randint(0, 2)
    z1 = am.ZVectorSpace(d.vertices, [rng.sample(d.vertices, rng.randint(1, 3)) for _ in range(nvec)])
    return spec, z1


@pytest.mark.parametrize("seed", range(40))
def test_closure_idempotent_and_monotone(seed):
    rng = random.Random(seed)
    spec, z1 = _random_relation_spec(rng)
    bar = am.closure(spec, z1)
    assert dg.refines(spec.bad_pairs, bar)
    assert dg.refines(bar, dg.sim0(spec.diagram))
    assert am.closure(spec.with_bad_pairs(bar), z1) == bar
    # a finer relation has a finer closure
    finer = dg.Partition(spec.vertices, [p for p in spec.bad_pairs.pairs() if rng.random() < 0.5])
    assert dg.refines(am.closure(spec.with_bad_pairs(finer), z1), bar)
    # a larger Z1 gives a coarser closure
    bigger = z1.spanned_with([rng.sample(spec.vertices, 2)])
    assert dg.refines(bar, am.closure(spec, bigger))


def test_zvectorspace():
    V = [1, 2, 3, 4]
    W = am.ZVectorSpace(V, [(1, 2), (2, 3), (1, 3)])
    assert W.dim == 2
    assert (1, 3) in W and (1, 4) not in W
    assert W == am.ZVectorSpace(V, [(1, 3), (2, 3)])
    assert am.ZVectorSpace.zero(V) <= W
    with pytest.raises(SpecError):
        am.ZVectorSpace(V, [(9,)])
