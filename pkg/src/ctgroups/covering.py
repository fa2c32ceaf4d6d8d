"""The two-sheeted cover attached to the sign character of omega.

Cover vertices are pairs ``(i, s)`` with ``s`` in ``{0, 1}``; reports name
them ``i`` and ``i'``.  Tree edges and chords whose twist has sign +1 lift
inside each sheet, chords whose twist involves ``tau`` lift across sheets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import amalgam as am
from . import diagram as dg
from .errors import PreconditionError, SpecError


def vertex_name(v):
    i, s = v
    return f"{i}'" if s else f"{i}"


@dataclass(frozen=True)
class CoverDiagram:
    base: dg.Diagram
    cover: dg.Diagram
    warnings: tuple = ()

    @staticmethod
    def project(v):
        return v[0]

    @staticmethod
    def theta(v):
        return (v[0], 1 - v[1])

    @property
    def connected(self):
        return self.cover.is_connected()

    def edge_names(self):
        return [f"{vertex_name(a)}-{vertex_name(b)}" for a, b in sorted(self.cover.edge_set)]


def build_double_cover(spec):
    base = spec.diagram
    verts = [(v, 0) for v in base.vertices] + [(v, 1) for v in base.vertices]
    edges = []
    for i, j in sorted(base.edge_set):
        key = spec.tree.oriented(i, j)
        tw = spec.omega.get(key)
        if tw is not None and tw.sign == -1:
            edges += [((i, 0), (j, 1)), ((i, 1), (j, 0))]
        else:
            edges += [((i, 0), (j, 0)), ((i, 1), (j, 1))]
    warnings = ()
    if am.is_orientable(spec):
        warnings = ("omega is orientable: the cover is two disjoint copies of the diagram",)
    return CoverDiagram(base, dg.Diagram.from_edges(edges, verts), warnings)


@dataclass(frozen=True)
class LiftedOmega:
    """Twist data on the cover.

    ``twists[(J, I)]`` is ``omega_{p(J), p(I)}`` for every directed cover
    edge, so the rank-2 groups of the cover are copies of those of the base
    and the sheet swap is a plain relabelling.  ``aut_part`` is the same
    data with the ``tau`` component removed.
    """

    cover: CoverDiagram
    twists: dict
    base_rho: dict = field(default_factory=dict)

    @property
    def aut_part(self):
        return {e: tw.aut_part for e, tw in self.twists.items()}

    def rho(self, J, I):
        return self.base_rho[(J, I)]

    def holonomy_signs(self):
        """Sign of the twist product around each fundamental cycle of the cover."""
        tree = dg.spanning_tree(self.cover.cover, self.cover.cover.vertices[0])
        signs = []
        for gen in dg.fundamental_generators(self.cover.cover, tree):
            s = 1
            walk = gen.cycle
            for a, b in zip(walk, walk[1:]):
                s *= self.rho(b, a).sign
            signs.append(s)
        return signs


def lift_omega(spec, cover, convention=am.DEFINITION):
    if cover.base != spec.diagram:
        raise SpecError("cover was not built from this amalgam's diagram")
    twists, rhos = {}, {}
    for a, b in cover.cover.edge_set:
        for J, I in ((a, b), (b, a)):
            pj, pi = J[0], I[0]
            if not spec.diagram.adjacent(pj, pi):
                raise SpecError(f"cover edge {J}-{I} does not lie over an edge")
            twists[(J, I)] = am.omega_edge(spec, pj, pi)
            rhos[(J, I)] = am.rho(spec, pj, pi, convention)
    return LiftedOmega(cover, twists, rhos)


def theta_orbit_diagram(cover):
    """Diagram on the sheet-swap orbits; orbit ``{(i,0), (i,1)}`` is labelled ``i``."""
    if not cover.connected:
        raise PreconditionError("orbit diagram needs a connected cover (non-orientable omega)")
    edges = {dg._pair(a[0], b[0]) for a, b in cover.cover.edge_set}
    return dg.Diagram.from_edges(sorted(edges), cover.base.vertices)


def check_cover(cover):
    """Exact structural checks; returns the list of failures (empty when all hold)."""
    bad = []
    c = cover.cover
    vs = set(c.vertices)
    for v in vs:
        t = cover.theta(v)
        if t == v:
            bad.append(f"theta fixes {v}")
        if cover.theta(t) != v:
            bad.append(f"theta^2 moves {v}")
        if cover.project(t) != cover.project(v):
            bad.append(f"p(theta({v})) != p({v})")
    for a, b in c.edge_set:
        ta, tb = cover.theta(a), cover.theta(b)
        if dg._pair(ta, tb) not in c.edge_set:
            bad.append(f"theta does not map edge {a}-{b} to an edge")
        if dg._pair(ta, tb) == (a, b):
            bad.append(f"theta fixes edge {a}-{b}")
    for i, j in cover.base.edge_set:
        over = [e for e in c.edge_set if {e[0][0], e[1][0]} == {i, j}]
        if len(over) != 2:
            bad.append(f"base edge {i}-{j} has {len(over)} preimages")
    for a, b in c.edge_set:
        if not cover.base.adjacent(a[0], b[0]):
            bad.append(f"cover edge {a}-{b} lies over a non-edge")
    if c.triangles() and not cover.base.triangles():
        bad.append("cover has a triangle")
    return bad
