"""Condition (D) for non-orientable amalgams.

Over the double cover, with ``K`` the kernel of the cover's Cartan
operator, ``M`` the image of ``nu(x) = x - theta(x)`` and ``theta`` the
sheet swap on exponent vectors, condition (D) holds exactly when
``(M n K) / nu(K)`` is trivial.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import amalgam as am
from . import cartan
from .covering import build_double_cover, lift_omega
from .errors import PreconditionError
from .torus import TorusSubgroup


def theta_permutation(cover):
    """``perm[k]`` is the coordinate index of ``theta(vertices[k])``."""
    verts = cover.cover.vertices
    index = {v: k for k, v in enumerate(verts)}
    return [index[cover.theta(v)] for v in verts]


def permute(vector, perm):
    """``(x_{theta(i)})_i``."""
    return [vector[perm[k]] for k in range(len(perm))]


def nu(vector, perm, modulus):
    return [(x - y) % modulus for x, y in zip(vector, permute(vector, perm))]


def nu_image(S, perm):
    if len(perm) != S.dim:
        raise ValueError(f"permutation of size {len(perm)} on ambient of dim {S.dim}")
    return S.image(lambda g: nu(g, perm, S.modulus))


def subgroup_intersect(A, B):
    if (A.modulus, A.dim) != (B.modulus, B.dim):
        raise ValueError(
            f"ambient mismatch: (Z/{A.modulus})^{A.dim} versus (Z/{B.modulus})^{B.dim}"
        )
    return A.intersect(B)


def cover_cartan(spec, cover, convention=am.DEFINITION):
    lifted = lift_omega(spec, cover, convention)
    return cartan.cartan_from_rho(
        cover.cover.vertices,
        cover.cover.neighbors,
        lifted.rho,
        spec.field.modulus,
        convention,
    )


def compute_K(spec, cover, convention=am.DEFINITION):
    if not cover.connected:
        raise PreconditionError("the cover is disconnected: omega is orientable")
    K = cover_cartan(spec, cover, convention)
    return cartan.kernel(K).subgroup()


@dataclass
class ConditionDReport:
    K_order: int
    M_order: int
    MK_order: int
    nuK_order: int
    quotient_invariants: list
    elementary_2: bool
    warnings: list

    @property
    def quotient_order(self):
        return self.MK_order // self.nuK_order

    @property
    def quotient_rank(self):
        return len(self.quotient_invariants)

    @property
    def condition_D(self):
        return self.quotient_order == 1

    def items(self):
        return [
            ("K_order", self.K_order),
            ("MK_order", self.MK_order),
            ("nuK_order", self.nuK_order),
            ("quotient_order", self.quotient_order),
            ("quotient_rank", self.quotient_rank),
            ("condition_D", str(self.condition_D).lower()),
        ]


def condition_D_quotient(spec, convention=am.DEFINITION):
    if am.is_orientable(spec):
        raise PreconditionError("condition (D) concerns non-orientable amalgams; omega is orientable")
    notes = []
    if spec.field.q < 7:
        msg = f"requires |k| >= 7 for the twisted-group conclusions; computing anyway for q={spec.field.q}"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
    cover = build_double_cover(spec)
    perm = theta_permutation(cover)
    N = spec.field.modulus
    dim = len(perm)
    K = compute_K(spec, cover, convention)
    # K must be theta-stable, otherwise nu(K) need not lie in K
    assert K.image(lambda g: permute(g, perm)) == K, "kernel is not theta-stable"
    M = nu_image(TorusSubgroup.full(N, dim), perm)
    MK = subgroup_intersect(M, K)
    nuK = nu_image(K, perm)
    assert nuK <= MK, "nu(K) is not contained in M n K"
    elementary = all([(2 * x) % N for x in g] in nuK for g in MK.generators)
    invariants = MK.quotient_invariants(nuK)
    n = len(spec.vertices)
    assert elementary and all(d == 2 for d in invariants) and len(invariants) <= n, (
        f"quotient is not an elementary abelian 2-group of rank <= {n}: {invariants}"
    )
    report = ConditionDReport(K.order, M.order, MK.order, nuK.order, invariants, elementary, notes)
    assert report.quotient_order == 2 ** report.quotient_rank
    return report
