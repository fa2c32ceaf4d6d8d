"""Reader for the plain-text amalgam description format.

A file is a sequence of sections, each opened by a header line ending in
``:``.  Blank lines and ``#`` comments are ignored.  Example::

    field:
      p = 3
      m = 3              # or: q = 27
    diagram:
      vertices: 1 2 3 4 5 6
      edge 1 3
      edge 3 4
      root: 6            # optional BFS root
    omega:
      edge 4 5 = tau     # id | tau | frob^e | tau*frob^e
    badpairs:
      block 1 3
    z1:
      vector 1 2         # support of a vector over F_2

``field`` and ``diagram`` are required and come first, in that order; the
other sections are optional, appear at most once, and follow in the order
shown.  Every unknown key is an error carrying its line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import amalgam as am
from . import diagram as dg
from .errors import SpecError
from .twist import FieldSpec, parse_twist

SECTION_ORDER = ("field", "diagram", "omega", "badpairs", "z1")
REQUIRED = ("field", "diagram")


@dataclass
class ParsedSpec:
    spec: am.AmalgamSpec
    z1: am.ZVectorSpace
    source: str = "<string>"


@dataclass
class _Raw:
    sections: dict = field(default_factory=dict)  # name -> header line
    field_keys: dict = field(default_factory=dict)  # key -> (value, line)
    vertices: tuple | None = None
    vertices_line: int | None = None
    edges: list = field(default_factory=list)  # (i, j, line)
    root: tuple | None = None  # (root, line)
    omega: list = field(default_factory=list)  # (i, j, text, line)
    blocks: list = field(default_factory=list)  # (labels, line)
    vectors: list = field(default_factory=list)  # (labels, line)


def _ints(tokens, line, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise SpecError(f"{what} must be integer vertex labels, got {' '.join(tokens)!r}", line) from None


def _strip(raw_line):
    return raw_line.split("#", 1)[0].strip()


def _tokenize(text):
    raw = _Raw()
    current = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip(raw_line)
        if not line:
            continue
        if line.endswith(":") and " " not in line:
            name = line[:-1].lower()
            if name not in SECTION_ORDER:
                raise SpecError(f"unknown section {name!r}; expected one of {', '.join(SECTION_ORDER)}", lineno)
            if name in raw.sections:
                raise SpecError(f"section {name!r} appears twice", lineno)
            rank = SECTION_ORDER.index(name)
            for earlier in SECTION_ORDER[:rank]:
                if earlier in REQUIRED and earlier not in raw.sections:
                    raise SpecError(f"section {name!r} before required section {earlier!r}", lineno)
            if any(SECTION_ORDER.index(s) > rank for s in raw.sections):
                raise SpecError(f"section {name!r} is out of order; sections go {' -> '.join(SECTION_ORDER)}", lineno)
            raw.sections[name] = lineno
            current = name
            continue
        if current is None:
            raise SpecError("content before the first section header", lineno)
        _parse_line(raw, current, line, lineno)
    for name in REQUIRED:
        if name not in raw.sections:
            raise SpecError(f"missing required section {name!r}")
    return raw


def _parse_line(raw, section, line, lineno):
    if section == "field":
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in ("p", "m", "q"):
            raise SpecError(f"unknown field key {line!r}; expected 'p = ', 'm = ' or 'q = '", lineno)
        if key in raw.field_keys:
            raise SpecError(f"field key {key!r} given twice", lineno)
        try:
            raw.field_keys[key] = (int(value), lineno)
        except ValueError:
            raise SpecError(f"field key {key!r} needs an integer, got {value.strip()!r}", lineno) from None
    elif section == "diagram":
        head, _, rest = line.partition(" ")
        if line.startswith("vertices:"):
            if raw.vertices is not None:
                raise SpecError("vertices given twice", lineno)
            raw.vertices = tuple(_ints(line[len("vertices:"):].split(), lineno, "vertices"))
            raw.vertices_line = lineno
        elif line.startswith("root:"):
            if raw.root is not None:
                raise SpecError("root given twice", lineno)
            (r,) = _ints(line[len("root:"):].split() or ["?"], lineno, "root")
            raw.root = (r, lineno)
        elif head == "edge":
            ends = _ints(rest.split(), lineno, "edge ends")
            if len(ends) != 2:
                raise SpecError(f"edge needs two vertices, got {len(ends)}", lineno)
            raw.edges.append((ends[0], ends[1], lineno))
        else:
            raise SpecError(f"unknown diagram key {line!r}; expected 'vertices:', 'edge i j' or 'root:'", lineno)
    elif section == "omega":
        lhs, sep, rhs = line.partition("=")
        parts = lhs.split()
        if not sep or len(parts) != 3 or parts[0] != "edge":
            raise SpecError(f"omega lines read 'edge i j = <twist>', got {line!r}", lineno)
        i, j = _ints(parts[1:], lineno, "omega edge ends")
        raw.omega.append((i, j, rhs.strip(), lineno))
    elif section == "badpairs":
        head, _, rest = line.partition(" ")
        if head != "block":
            raise SpecError(f"badpairs lines read 'block v1 v2 ...', got {line!r}", lineno)
        raw.blocks.append((_ints(rest.split(), lineno, "block"), lineno))
    elif section == "z1":
        head, _, rest = line.partition(" ")
        if head != "vector":
            raise SpecError(f"z1 lines read 'vector v1 v2 ...', got {line!r}", lineno)
        raw.vectors.append((_ints(rest.split(), lineno, "vector"), lineno))


def _field(raw):
    keys = raw.field_keys
    header = raw.sections["field"]
    try:
        if "q" in keys:
            if "p" in keys or "m" in keys:
                raise SpecError("give either 'q' or 'p' (and 'm'), not both", keys["q"][1])
            return FieldSpec.from_q(keys["q"][0])
        if "p" not in keys:
            raise SpecError("field section needs 'p = ' or 'q = '", header)
        return FieldSpec(keys["p"][0], keys.get("m", (1, None))[0])
    except SpecError as exc:
        if exc.line is not None:
            raise
        line = keys.get("q", keys.get("p", (None, header)))[1]
        raise SpecError(str(exc), line) from None


def _diagram(raw):
    header = raw.sections["diagram"]
    edges = [(i, j) for i, j, _ in raw.edges]
    if raw.vertices is None:
        raise SpecError("diagram section needs a 'vertices:' line", header)
    d = dg.Diagram.from_edges(edges, raw.vertices)
    known = set(raw.vertices)
    for i, j, line in raw.edges:
        if i not in known or j not in known:
            raise SpecError(f"edge {i}-{j} uses an unknown vertex", line)
        if i == j:
            raise SpecError(f"self-loop at {i}", line)
    seen = {}
    for i, j, line in raw.edges:
        key = dg._pair(i, j)
        if key in seen:
            raise SpecError(f"repeated edge {i}-{j} (first on line {seen[key]})", line)
        seen[key] = line
    report = dg.validate(d)
    if not report.ok:
        raise SpecError("invalid diagram: " + "; ".join(report.violations), raw.vertices_line)
    return d


def parse_spec(text, source="<string>"):
    """Parse a spec file's text into an :class:`~ctgroups.amalgam.AmalgamSpec` plus ``Z1``."""
    raw = _tokenize(text)
    f = _field(raw)
    d = _diagram(raw)
    root = None
    if raw.root is not None:
        root, line = raw.root
        if root not in d.vertices:
            raise SpecError(f"root {root} is not a vertex of the diagram", line)
    tree = dg.spanning_tree(d, root)
    chord_keys = {frozenset(c) for c in tree.chords}
    omega = {}
    for i, j, text_, line in raw.omega:
        if not d.adjacent(i, j):
            raise SpecError(f"omega given on {i}-{j}, which is not an edge", line)
        if frozenset((i, j)) not in chord_keys:
            chords = ", ".join(f"{a}-{b}" for a, b in tree.chords) or "none"
            raise SpecError(
                f"omega given on tree edge {i}-{j}; with root {tree.root} the chords are: {chords}", line
            )
        if any(frozenset(k) == frozenset((i, j)) for k in omega):
            raise SpecError(f"omega on {i}-{j} given twice", line)
        try:
            omega[(i, j)] = parse_twist(text_, f)
        except SpecError as exc:
            raise SpecError(str(exc), line) from None
    known = set(d.vertices)
    for labels, line in raw.blocks + raw.vectors:
        unknown = [v for v in labels if v not in known]
        if unknown:
            raise SpecError(f"unknown vertex {unknown[0]}", line)
    blocks = [labels for labels, _ in raw.blocks]
    try:
        spec = am.AmalgamSpec.build(d, f, omega, blocks or None, root)
    except SpecError as exc:
        if exc.line is not None:
            raise
        raise SpecError(str(exc), raw.sections.get("badpairs", raw.sections["field"])) from None
    z1 = am.ZVectorSpace(d.vertices, [labels for labels, _ in raw.vectors])
    return ParsedSpec(spec, z1, source)


def load_spec(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text, str(path))


def format_spec(spec, z1=None):
    """Render a spec back into the file format (round-trips through :func:`parse_spec`)."""
    f = spec.field
    lines = ["field:", f"  p = {f.p}", f"  m = {f.m}", "diagram:"]
    lines.append("  vertices: " + " ".join(str(v) for v in spec.vertices))
    lines += [f"  edge {i} {j}" for i, j in sorted(spec.diagram.edge_set)]
    lines.append(f"  root: {spec.tree.root}")
    nontrivial = [(c, tw) for c, tw in spec.omega.items() if not tw.is_identity]
    if nontrivial:
        lines.append("omega:")
        lines += [f"  edge {i} {j} = {tw}" for (i, j), tw in sorted(nontrivial)]
    blocks = [b for b in spec.bad_pairs.blocks if len(b) > 1]
    if blocks:
        lines.append("badpairs:")
        lines += ["  block " + " ".join(map(str, b)) for b in blocks]
    if z1 is not None and z1.dim:
        lines.append("z1:")
        lines += ["  vector " + " ".join(map(str, v)) for v in z1.basis()]
    return "\n".join(lines) + "\n"
