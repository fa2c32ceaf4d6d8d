"""The generalized Cartan operator and the central torus elements it detects.

A torus point ``a`` is central exactly when ``K a = 0`` where, additively,
``(K a)_i = -2 a_i + sum_{j ~ i} mult(rho_{j,i}) a_j  (mod q - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from . import amalgam as am
from . import zmod
from .torus import TorusSubgroup


@dataclass(frozen=True)
class CartanOperator:
    """Integer lift of the operator together with its modulus ``q - 1``.

    ``lift[r][c]`` is -2 on the diagonal and the signed multiplier
    ``+-p^e`` of ``rho_{c,r}`` when ``c ~ r``.
    """

    vertices: tuple
    lift: tuple
    modulus: int
    convention: str = am.DEFINITION

    @property
    def n(self):
        return len(self.vertices)

    @property
    def matrix(self):
        N = self.modulus
        return [[x % N for x in row] for row in self.lift]


def cartan_from_rho(vertices, neighbors, rho_of, modulus, convention=am.DEFINITION):
    """Assemble the operator from a neighbour function and ``rho_of(j, i) -> Twist``."""
    index = {v: k for k, v in enumerate(vertices)}
    lift = [[0] * len(vertices) for _ in vertices]
    for i in vertices:
        r = index[i]
        lift[r][r] = -2
        for j in neighbors(i):
            lift[r][index[j]] = rho_of(j, i).multiplier
    return CartanOperator(tuple(vertices), tuple(tuple(row) for row in lift), modulus, convention)


def build_cartan(spec, convention=am.DEFINITION):
    d = spec.diagram
    return cartan_from_rho(
        d.vertices,
        d.neighbors,
        lambda j, i: am.rho(spec, j, i, convention),
        spec.field.modulus,
        convention,
    )


def apply(K, a):
    if len(a) != K.n:
        raise ValueError(f"vector of length {len(a)} for an operator of size {K.n}")
    N = K.modulus
    return [x % N for x in zmod.matvec(K.lift, a)]


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """A finite abelian group inside ``(Z/modulus)^n`` as a direct sum of cyclic groups."""

    generators: tuple
    invariant_factors: tuple
    modulus: int
    n: int

    @property
    def order(self):
        return prod(self.invariant_factors)

    def subgroup(self):
        return TorusSubgroup.from_generators(self.generators, self.modulus, self.n)

    def elements(self):
        return self.subgroup().elements()


def normalize_generator(g, modulus):
    """Scale by a unit so that the first nonzero entry becomes ``gcd(entry, modulus)``."""
    N = modulus
    lead = next((x for x in g if x % N), None)
    if lead is None:
        return list(g)
    h = gcd(lead, N)
    target = N // h
    # unit u with u * (lead / h) == 1 (mod N / h), lifted to a unit mod N
    u = pow(lead // h, -1, target) if target > 1 else 1
    while gcd(u, N) != 1:
        u += target
    return [(u * x) % N for x in g]


def kernel(K):
    """``ker K`` via the Smith form of the integer lift."""
    gens, orders = zmod.kernel_mod([list(r) for r in K.lift], K.modulus)
    gens = [normalize_generator(g, K.modulus) for g in gens]
    for g in gens:
        assert not any(apply(K, g)), "kernel generator not annihilated"
    return AbelianGroupPresentation(tuple(map(tuple, gens)), tuple(orders), K.modulus, K.n)


def kernel_subgroup_by_howell(K):
    """Independent route to ``ker K``: Zassenhaus on ``[K^T | I]`` in Howell form."""
    n, N = K.n, K.modulus
    kt = zmod.transpose([list(r) for r in K.lift])
    rows = [list(kt[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    h = zmod.howell_form(rows, N, 2 * n)
    gens = [list(r[n:]) for r in h if not any(r[:n])]
    return TorusSubgroup.from_generators(gens, N, n)


def image_subgroup(K):
    """Image of ``K``: the span of its columns, in Howell form."""
    return TorusSubgroup.from_generators(zmod.transpose([list(r) for r in K.lift]), K.modulus, K.n)


def determinant_of_lift(K):
    return zmod.determinant([list(r) for r in K.lift])


@dataclass
class CenterReport:
    operator: CartanOperator
    det_lift: int
    kernel: AbelianGroupPresentation
    image_order: int

    @property
    def kernel_order(self):
        return self.kernel.order

    def consistent(self):
        return self.kernel_order * self.image_order == self.operator.modulus**self.operator.n

    def items(self):
        K = self.operator
        return [
            ("convention", K.convention),
            ("modulus", K.modulus),
            ("matrix", ";".join(",".join(str(x) for x in row) for row in K.matrix)),
            ("det_lift", self.det_lift),
            ("kernel_order", self.kernel_order),
            ("invariant_factors", ",".join(map(str, self.kernel.invariant_factors)) or "-"),
            ("generators", ";".join(",".join(map(str, g)) for g in self.kernel.generators) or "-"),
            ("image_order", self.image_order),
            ("order_check", "ok" if self.consistent() else "FAILED"),
        ]


def center_report(spec, convention=am.DEFINITION):
    K = build_cartan(spec, convention)
    return CenterReport(K, determinant_of_lift(K), kernel(K), image_subgroup(K).order)
