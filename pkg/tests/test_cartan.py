import random
from itertools import product
from math import gcd, prod

import pytest
import sympy
from conftest import SMALL_Q, cycle_spec, e6, e6_spec, path, random_spec, specs, twisted_cycle_spec
from hypothesis import given
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ctgroups import amalgam as am
from ctgroups import cartan
from ctgroups.twist import FieldSpec

E6_CARTAN = [
    [2, 0, -1, 0, 0, 0],
    [0, 2, 0, -1, 0, 0],
    [-1, 0, 2, -1, 0, 0],
    [0, -1, -1, 2, -1, 0],
    [0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, -1, 2],
]


def _brute_kernel(K):
    N = K.modulus
    return {a for a in product(range(N), repeat=K.n) if not any(cartan.apply(K, list(a)))}


def test_a2_matrix():
    f = FieldSpec(7)
    nbrs = lambda v: [w for w in (v - 1, v + 1) if 0 <= w < 2]
    K = cartan.cartan_from_rho([0, 1], nbrs, lambda j, i: am.Twist.identity(f), 6)
    assert K.matrix == [[4, 1], [1, 4]]
    assert cartan.apply(K, [2, 4]) == [0, 0]
    assert cartan.apply(K, [0, 0]) == [0, 0]


def test_e6_is_negative_cartan_matrix():
    K = cartan.build_cartan(e6_spec(13))
    assert [list(r) for r in K.lift] == [[-x for x in r] for r in E6_CARTAN]
    assert all(K.matrix[i][i] == 10 for i in range(6))


def test_twisted_cycle_replaces_two_entries():
    a = cartan.build_cartan(cycle_spec(7)).lift
    b = cartan.build_cartan(twisted_cycle_spec(7)).lift
    diff = {(r, c) for r in range(6) for c in range(6) if a[r][c] != b[r][c]}
    assert diff == {(3, 4), (4, 3)}
    assert b[3][4] == b[4][3] == -1


@pytest.mark.parametrize("t", [0, 1, 2, 3, 4, 5])
def test_twisted_cycle_pattern_in_kernel(t):
    K = cartan.build_cartan(twisted_cycle_spec(7))
    a = [t, 2 * t, 2 * t, t, 2 * t, 2 * t]
    assert (cartan.apply(K, a) == [0] * 6) == (3 * t % 6 == 0)


def test_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        cartan.apply(cartan.build_cartan(e6_spec(7)), [1, 2])


@pytest.mark.parametrize(
    "spec_fn,q,expected",
    [(e6_spec, 4, 3), (cycle_spec, 7, 1), (cycle_spec, 27, 13), (e6_spec, 13, 3), (twisted_cycle_spec, 7, 3)],
)
def test_kernel_orders(spec_fn, q, expected):
    assert cartan.kernel(cartan.build_cartan(spec_fn(q))).order == expected


@pytest.mark.parametrize(
    "spec_fn,expected", [(e6_spec, 3), (cycle_spec, -13), (twisted_cycle_spec, 3)]
)
def test_determinants(spec_fn, expected):
    K = cartan.build_cartan(spec_fn(7))
    assert cartan.determinant_of_lift(K) == expected
    assert sympy.Matrix([list(r) for r in K.lift]).det() == expected


def test_e6_center_report_q13():
    rep = cartan.center_report(e6_spec(13))
    assert rep.kernel_order == 3 and len(rep.kernel.generators) == 1
    keys = [k for k, _ in rep.items()]
    # stable key order
    assert keys.index("matrix") < keys.index("det_lift") < keys.index("kernel_order")
    assert keys.index("kernel_order") < keys.index("invariant_factors") < keys.index("generators")


def test_twisted_cycle_generator_pattern():
    rep = cartan.center_report(twisted_cycle_spec(7))
    (g,) = rep.kernel.generators
    t = g[0]
    assert t and list(g) == [t, 2 * t % 6, 2 * t % 6, t, 2 * t % 6, 2 * t % 6]


@pytest.mark.parametrize("q", [8, 9])
def test_order_consistency_line(q):
    rep = cartan.center_report(cycle_spec(q))
    assert rep.kernel_order * rep.image_order == (q - 1) ** 6
    assert dict(rep.items())["order_check"] == "ok"


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
@pytest.mark.parametrize("spec_fn", [e6_spec, cycle_spec, twisted_cycle_spec])
def test_kernel_matches_enumeration(spec_fn, q):
    K = cartan.build_cartan(spec_fn(q))
    if (q - 1) ** 6 > 300_000:
        pytest.skip("enumeration too large")
    assert cartan.kernel(K).elements() == _brute_kernel(K)


@given(specs(qs=SMALL_Q))
def test_kernel_invariants(spec):
    K = cartan.build_cartan(spec)
    pres = cartan.kernel(K)
    for g in pres.generators:
        assert not any(cartan.apply(K, list(g)))
    for d in pres.invariant_factors:
        assert K.modulus % d == 0
    assert pres.order == prod(pres.invariant_factors)
    # two independent routes to the same subgroup
    assert pres.subgroup() == cartan.kernel_subgroup_by_howell(K)
    assert pres.order * cartan.image_subgroup(K).order == K.modulus**K.n


def _classical_prediction(diagram, q):
    cart = [[0] * diagram.n for _ in range(diagram.n)]
    idx = {v: k for k, v in enumerate(diagram.vertices)}
    for v in diagram.vertices:
        cart[idx[v]][idx[v]] = 2
        for w in diagram.neighbors(v):
            cart[idx[v]][idx[w]] = -1
    snf = sympy_snf(sympy.Matrix(cart), domain=sympy.ZZ)
    return prod(gcd(abs(int(snf[i, i])), q - 1) for i in range(diagram.n))


@pytest.mark.parametrize("q", SMALL_Q)
@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_trivial_twist_paths(n, q):
    spec = am.AmalgamSpec.build(path(n), FieldSpec.from_q(q))
    order = cartan.kernel(cartan.build_cartan(spec)).order
    assert order == gcd(n + 1, q - 1) == _classical_prediction(path(n), q)


@pytest.mark.parametrize("q", SMALL_Q)
def test_trivial_twist_e6(q):
    order = cartan.kernel(cartan.build_cartan(e6_spec(q))).order
    assert order == gcd(3, q - 1) == _classical_prediction(e6(), q)


@pytest.mark.parametrize("q", [7, 13, 16])
def test_kernel_invariant_under_e6_flip(q):
    # the diagram automorphism exchanging the two long arms: 1<->6, 3<->5
    flip = {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
    spec = e6_spec(q)
    K = cartan.build_cartan(spec)
    sub = cartan.kernel(K).subgroup()
    idx = {v: k for k, v in enumerate(spec.vertices)}
    permuted = sub.image(lambda g: [g[idx[flip[v]]] for v in spec.vertices])
    assert permuted == sub


def test_normalize_generator():
    assert cartan.normalize_generator([4, 8, 8, 4, 8, 8], 12) == [4, 8, 8, 4, 8, 8]
    assert cartan.normalize_generator([8, 4, 4, 8, 4, 4], 12) == [4, 8, 8, 4, 8, 8]
    assert cartan.normalize_generator([0, 0], 12) == [0, 0]


@pytest.mark.parametrize("seed", range(10))
def test_remark_convention_only_changes_frobenius_chords(seed):
    rng = random.Random(seed)
    spec = random_spec(rng, qs=[4, 8, 9, 27])
    a = cartan.build_cartan(spec, am.DEFINITION).lift
    b = cartan.build_cartan(spec, am.REMARK).lift
    idx = {v: k for k, v in enumerate(spec.vertices)}
    allowed = set()
    for (i, j), tw in spec.omega.items():
        if tw.frob:
            # only the entry read off the direction opposite to the twist changes
            allowed.add((idx[j], idx[i]))
    diff = {(r, c) for r in range(K_n(a)) for c in range(K_n(a)) if a[r][c] != b[r][c]}
    assert diff <= allowed
    for r, c in diff:
        assert b[r][c] == -a[c][r] and (a[r][c] * a[c][r]) % spec.field.modulus == 1


def K_n(lift):
    return len(lift)
