"""Table-driven arithmetic in small finite fields.

An element of F_q, q = p^m, is the integer ``sum c_k p^k`` encoding its
coefficient vector over Z/p in the basis ``1, x, ..., x^(m-1)`` modulo the
lexicographically smallest monic irreducible polynomial of degree m.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from ..errors import PreconditionError
from ..twist import FieldSpec

MAX_ORDER = 1 << 12


def _poly_mod(a, f, p):
    """Remainder of ``a`` by the monic ``f``; both lists of coefficients, low degree first."""
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - df
        for k, fk in enumerate(f):
            a[shift + k] = (a[shift + k] - c * fk) % p
        a.pop()
    return a


def _is_irreducible(f, p):
    m = len(f) - 1
    for d in range(1, m // 2 + 1):
        for coeffs in product(range(p), repeat=d):
            g = list(coeffs) + [1]
            if not any(_poly_mod(f, g, p)):
                return False
    return True


def smallest_irreducible(p, m):
    """Lexicographically smallest monic irreducible of degree ``m`` (low coefficients first, most significant last)."""
    if m == 1:
        return [0, 1]
    for code in range(p**m):
        coeffs = [(code // p**k) % p for k in range(m)]
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field with ``q`` elements; ``0`` and ``1`` encode the field's zero and one."""

    def __init__(self, q):
        spec = FieldSpec.from_q(q) if q >= 4 else None
        if spec is None:
            raise PreconditionError(f"fields with fewer than 4 elements are not used, got q={q}")
        if q > MAX_ORDER:
            raise PreconditionError(f"table arithmetic is limited to q <= {MAX_ORDER}")
        self.spec = spec
        self.p, self.m, self.q = spec.p, spec.m, q
        self.modulus_poly = smallest_irreducible(self.p, self.m)
        self._build_tables()

    def _digits(self, x):
        return [(x // self.p**k) % self.p for k in range(self.m)]

    def _encode(self, coeffs):
        return sum((c % self.p) * self.p**k for k, c in enumerate(coeffs))

    def _build_tables(self):
        q, p, m = self.q, self.p, self.m
        digits = [self._digits(x) for x in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._encode([x + y for x, y in zip(digits[a], digits[b])])
                prod_ = [0] * (2 * m - 1)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod_[i + j] = (prod_[i + j] + x * y) % p
                mul[a, b] = self._encode(_poly_mod(prod_, self.modulus_poly, p))
        self.add_table = add
        self.mul_table = mul
        self.neg_table = np.array([self._encode([-x for x in digits[a]]) for a in range(q)])
        self.sub_table = add[:, self.neg_table]
        self.generator = next(g for g in range(2, q) if self._order(g) == q - 1) if q > 3 else 2
        log = {}
        x = 1
        for k in range(q - 1):
            log[x] = k
            x = int(mul[x, self.generator])
        self._exp = [0] * (q - 1)
        for x, k in log.items():
            self._exp[k] = x
        self._log = log
        self.inv_table = np.zeros(q, dtype=np.int64)
        for x, k in log.items():
            self.inv_table[x] = self._exp[(-k) % (q - 1)]

    def _order(self, g):
        x, k = g, 1
        while x != 1:
            x = int(self.mul_table[x, g])
            k += 1
            if k > self.q:
                return 0
        return k

    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.sub_table[a, b])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_table[a])

    def pow(self, a, e):
        if a == 0:
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def exp(self, k):
        """``g**k`` for the fixed primitive element ``g``."""
        return self._exp[k % (self.q - 1)]

    def log(self, a):
        if a == 0:
            raise ValueError("discrete log of 0")
        return self._log[a]

    def frobenius(self, a, e=1):
        return self.pow(a, self.p**e)

    def units(self):
        return list(range(1, self.q))

    def element_str(self, a):
        return "+".join(f"{c}x^{k}" if k else f"{c}" for k, c in enumerate(self._digits(a)) if c) or "0"


@lru_cache(maxsize=None)
def gf(q):
    return GF(q)
