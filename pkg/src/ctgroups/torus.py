"""Subgroups of the split torus, written additively as ``(Z/N)^dim``.

A point ``(a_1, ..., a_dim)`` of ``(F_q^*)^dim`` is stored through discrete
logarithms, so ``N = q - 1`` and multiplication of torus points becomes
addition of exponent vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from . import zmod


@dataclass(frozen=True)
class TorusSubgroup:
    """A subgroup of ``(Z/modulus)^dim`` held in Howell normal form.

    Two instances compare equal exactly when they are the same subgroup.
    """

    modulus: int
    dim: int
    rows: tuple

    @classmethod
    def from_generators(cls, generators, modulus, dim=None):
        generators = [list(g) for g in generators]
        if dim is None:
            if not generators:
                raise ValueError("dimension needed for an empty generator list")
            dim = len(generators[0])
        for g in generators:
            if len(g) != dim:
                raise ValueError(f"generator {g} does not have length {dim}")
        return cls(modulus, dim, tuple(zmod.howell_form(generators, modulus, dim)))

    @classmethod
    def zero(cls, modulus, dim):
        return cls(modulus, dim, ())

    @classmethod
    def full(cls, modulus, dim):
        return cls.from_generators(zmod.identity(dim), modulus, dim)

    @property
    def order(self):
        return prod(self.modulus // row[zmod._pivot_col(row)] for row in self.rows)

    @property
    def generators(self):
        return [list(r) for r in self.rows]

    def _check(self, other):
        if (self.modulus, self.dim) != (other.modulus, other.dim):
            raise ValueError(
                f"ambient mismatch: (Z/{self.modulus})^{self.dim} vs "
                f"(Z/{other.modulus})^{other.dim}"
            )

    def __contains__(self, vector):
        if len(vector) != self.dim:
            raise ValueError(f"vector of length {len(vector)} in ambient of dim {self.dim}")
        rem, _ = zmod.howell_reduce(vector, self.rows, self.modulus)
        return not any(rem)

    def __add__(self, other):
        self._check(other)
        return TorusSubgroup.from_generators(self.generators + other.generators, self.modulus, self.dim)

    def __le__(self, other):
        self._check(other)
        return all(row in other for row in self.rows)

    def intersect(self, other):
        """Exact intersection, by the Zassenhaus trick on ``[A A; B 0]``."""
        self._check(other)
        k = self.dim
        stacked = [list(r) + list(r) for r in self.rows]
        stacked += [list(r) + [0] * k for r in other.rows]
        if not stacked:
            return TorusSubgroup.zero(self.modulus, k)
        h = zmod.howell_form(stacked, self.modulus, 2 * k)
        gens = [list(r[k:]) for r in h if not any(r[:k])]
        return TorusSubgroup.from_generators(gens, self.modulus, k)

    def image(self, func, dim=None):
        """Image under an additive map given as a function on vectors."""
        dim = self.dim if dim is None else dim
        return TorusSubgroup.from_generators([func(g) for g in self.generators], self.modulus, dim)

    def elements(self):
        """Enumerate all elements (small groups only)."""
        N = self.modulus
        seen = {tuple([0] * self.dim)}
        for row in self.rows:
            multiples = [tuple((c * x) % N for x in row) for c in range(N)]
            seen = {tuple((a + b) % N for a, b in zip(s, m)) for s in seen for m in multiples}
        return seen

    def quotient_invariants(self, sub):
        """Invariant factors of ``self / sub``; ``sub`` must be contained in ``self``."""
        self._check(sub)
        if not sub <= self:
            raise ValueError("quotient by a subgroup that is not contained")
        relations = zmod.lattice_kernel_mod(self.generators, self.modulus)
        for g in sub.generators:
            rem, coeffs = zmod.howell_reduce(g, self.rows, self.modulus)
            assert not any(rem)
            relations.append(coeffs)
        return zmod.abelian_invariants(relations, len(self.rows))

    def invariants(self):
        return self.quotient_invariants(TorusSubgroup.zero(self.modulus, self.dim))
