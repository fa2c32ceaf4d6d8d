"""Curtis-Tits amalgams of type Gamma_omega(k): twist data and the relation calculus.

An amalgam is described by its diagram, its field, the twist ``omega`` on
each chord of the BFS spanning tree, and the relation of bad pairs (the
non-edges whose rank-2 group is the central product).  The standard
amalgam has no bad pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import diagram as dg
from .errors import PreconditionError, SpecError
from .twist import FieldSpec, Twist

DEFINITION = "definition"
REMARK = "remark"
CONVENTIONS = (DEFINITION, REMARK)


@dataclass(frozen=True)
class AmalgamSpec:
    diagram: dg.Diagram
    field: FieldSpec
    omega: dict
    bad_pairs: dg.Partition
    tree: dg.SpanningTree

    @classmethod
    def build(cls, diagram, field, omega=None, bad_pairs=None, root=None):
        """Validate the pieces and assemble a spec.

        ``omega`` maps chords (any orientation) to twists; chords left out
        carry the identity.  ``bad_pairs`` is a :class:`Partition` or an
        iterable of blocks.
        """
        dg.require_valid(diagram)
        tree = dg.spanning_tree(diagram, root)
        chords = {frozenset(c): c for c in tree.chords}
        full = {c: Twist.identity(field) for c in tree.chords}
        for key, tw in (omega or {}).items():
            c = chords.get(frozenset(key))
            if c is None:
                expected = ", ".join(f"{i}-{j}" for i, j in tree.chords) or "none"
                raise SpecError(
                    f"omega assigned to {key[0]}-{key[1]}, which is not a chord of the "
                    f"spanning tree rooted at {tree.root}; chords are: {expected}"
                )
            if tw.field != field:
                raise SpecError(f"twist {tw} on {key} is over {tw.field}, expected {field}")
            full[c] = tw
        if bad_pairs is None:
            bad_pairs = dg.Partition.singletons(diagram.vertices)
        elif not isinstance(bad_pairs, dg.Partition):
            bad_pairs = dg.Partition(diagram.vertices, bad_pairs)
        if set(bad_pairs.vertices) != set(diagram.vertices):
            raise SpecError("bad-pair relation is not on the diagram's vertex set")
        if not field.odd and not bad_pairs.is_equality():
            raise SpecError(
                "in characteristic 2 every non-edge group is a direct product, "
                "so the bad-pair relation must be equality"
            )
        return cls(diagram, field, full, bad_pairs, tree)

    def with_bad_pairs(self, bad_pairs):
        return AmalgamSpec.build(self.diagram, self.field, self.omega, bad_pairs, self.tree.root)

    @property
    def vertices(self):
        return self.diagram.vertices

    @cached_property
    def identity(self):
        return Twist.identity(self.field)


def _require_edge(spec, j, i):
    if not spec.diagram.adjacent(j, i):
        raise SpecError(f"{j}-{i} is not an edge of the diagram")


def omega_edge(spec, j, i):
    """``omega_{j,i}``: the chord twist when ``{j, i}`` is a chord and ``i`` precedes ``j``."""
    _require_edge(spec, j, i)
    tw = spec.omega.get((i, j))
    return tw if tw is not None else spec.identity


def rho(spec, j, i, convention=DEFINITION):
    """``rho_{j,i} = omega_{i,j}^{-1} omega_{j,i}``.

    With ``convention="remark"`` the direction opposite to a twist
    ``tau^e frob^s`` (``s != 0``) is represented by the negated multiplier
    ``-(+-p^s)`` instead of the inverse ``(+-p^s)^{-1}``.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown rho convention {convention!r}")
    _require_edge(spec, j, i)
    value = omega_edge(spec, i, j).invert().compose(omega_edge(spec, j, i))
    if convention == REMARK:
        forward = spec.omega.get((j, i))
        if forward is not None and forward.frob:
            value = Twist.tau(spec.field).compose(forward)
    return value


def is_orientable(spec):
    return all(tw.sign == 1 for tw in spec.omega.values())


def has_nontrivial_completion(spec):
    """The amalgam has a non-trivial universal completion iff its bad pairs refine the twin relation."""
    return dg.refines(spec.bad_pairs, dg.sim0(spec.diagram))


def isogeny_bound(spec):
    return 2 ** (len(spec.vertices) - len(spec.bad_pairs))


def count_omega_types(d, f):
    """Number of homomorphisms pi_1(Gamma) -> <tau> x Aut(F_q), i.e. ``(2m)^b1``."""
    dg.require_valid(d)
    return (2 * f.m) ** d.cycle_rank


class ZVectorSpace:
    """A subspace of ``F_2^I``.

    A vector stands for the 2-torsion torus point whose coordinates are -1
    on its support, so ``z_ij`` is ``e_i + e_j``.  Vectors are stored as
    bit masks (bit k is vertex ``vertices[k]``) in reduced echelon form.
    """

    def __init__(self, vertices, vectors=()):
        self.vertices = tuple(vertices)
        self._index = {v: k for k, v in enumerate(self.vertices)}
        self._basis = {}
        for vec in vectors:
            self._insert(self._mask(vec))

    def _mask(self, vec):
        if isinstance(vec, int):
            return vec
        mask = 0
        for v in vec:
            if v not in self._index:
                raise SpecError(f"vector uses unknown vertex {v}")
            mask ^= 1 << self._index[v]
        return mask

    def _reduce(self, mask):
        for bit in sorted(self._basis, reverse=True):
            if mask >> bit & 1:
                mask ^= self._basis[bit]
        return mask

    def _insert(self, mask):
        mask = self._reduce(mask)
        if mask:
            self._basis[mask.bit_length() - 1] = mask

    @classmethod
    def zero(cls, vertices):
        return cls(vertices)

    @property
    def dim(self):
        return len(self._basis)

    def __contains__(self, vec):
        return self._reduce(self._mask(vec)) == 0

    def spanned_with(self, vectors):
        return ZVectorSpace(self.vertices, list(self._basis.values()) + list(vectors))

    def basis(self):
        """Basis vectors as sorted vertex supports."""
        return [
            tuple(v for k, v in enumerate(self.vertices) if mask >> k & 1)
            for _, mask in sorted(self._basis.items())
        ]

    def __le__(self, other):
        return all(mask in other for mask in self._basis.values())

    def __eq__(self, other):
        if not isinstance(other, ZVectorSpace):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self <= other and other <= self


def _require_odd(f):
    if not f.odd:
        raise PreconditionError(
            "requires odd characteristic: over a field of characteristic 2 the "
            "elements z_ij are trivial"
        )


def z_span(relation, z1, f=None):
    """``<Z1, z_kl : k ~ l>`` for a relation on the vertices."""
    if f is not None:
        _require_odd(f)
    return z1.spanned_with((k, l) for k, l in relation.pairs())


def closure(spec, z1=None):
    """The relation generated by twin pairs ``(i, j)`` with ``z_ij`` in ``<Z1, z_kl : k ~ l>``."""
    _require_odd(spec.field)
    if z1 is None:
        z1 = ZVectorSpace.zero(spec.vertices)
    twins = dg.sim0(spec.diagram)
    if not dg.refines(spec.bad_pairs, twins):
        raise PreconditionError("closure needs bad pairs that refine the twin relation")
    span = z_span(spec.bad_pairs, z1)
    pairs = [(i, j) for i, j in twins.pairs() if (i, j) in span]
    return dg.Partition.generated_by(spec.vertices, pairs)


def injects_into_completion(spec, z1=None):
    """Whether the amalgam injects into its universal completion.

    Requires a non-trivial completion.  In characteristic 2 the bad-pair
    relation is forced to be equality and the answer is always yes.
    """
    if not has_nontrivial_completion(spec):
        raise PreconditionError("no completion: the bad pairs do not refine the twin relation")
    if not spec.field.odd:
        return True
    return spec.bad_pairs == closure(spec, z1)


@dataclass
class CompletionVerdict:
    nontrivial_completion: bool
    injects: bool | None
    closure: dg.Partition | None = None
    notes: list = field(default_factory=list)


def decide(spec, z1=None):
    """Both decision procedures at once, with the characteristic-2 short cut."""
    if not spec.field.odd:
        return CompletionVerdict(True, True, spec.bad_pairs, ["characteristic 2: universal amalgam"])
    ok = has_nontrivial_completion(spec)
    if not ok:
        return CompletionVerdict(False, None, None, ["bad pairs do not refine the twin relation"])
    bar = closure(spec, z1)
    return CompletionVerdict(True, bar == spec.bad_pairs, bar)
