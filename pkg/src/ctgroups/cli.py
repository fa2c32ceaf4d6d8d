"""Command line front-end: ``ctgroups <command> SPECFILE [options]``.

Exit codes: 0 success, 2 malformed input, 3 a hypothesis of the requested
computation fails.  ``--format=kv`` prints stable ``key=value`` lines.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import amalgam as am
from . import cartan, covering
from . import diagram as dg
from . import fixed_points as fp
from .errors import PreconditionError, SpecError
from .specfile import load_spec

EXIT_OK, EXIT_SPEC, EXIT_PRECONDITION = 0, 2, 3
MIN_Q_CONDITION_D = 7


def _bool(x):
    return "true" if x else "false"


def _pairs(pairs):
    return ",".join(f"{i}-{j}" for i, j in pairs) or "-"


def cmd_validate(parsed, args):
    spec = parsed.spec
    d = spec.diagram
    return [
        ("valid", "true"),
        ("field", str(spec.field)),
        ("vertices", d.n),
        ("edges", len(d.edge_set)),
        ("cycle_rank", d.cycle_rank),
        ("root", spec.tree.root),
        ("bfs_order", ",".join(map(str, spec.tree.order))),
        ("chords", _pairs(spec.tree.chords)),
    ]


def cmd_sim0(parsed, args):
    return [("blocks", dg.sim0(parsed.spec.diagram).format())]


def cmd_classify_count(parsed, args):
    spec = parsed.spec
    return [
        ("cycle_rank", spec.diagram.cycle_rank),
        ("field_degree", spec.field.m),
        ("omega_types", am.count_omega_types(spec.diagram, spec.field)),
    ]


def cmd_cartan(parsed, args):
    K = cartan.build_cartan(parsed.spec, args.rho_convention)
    return [
        ("convention", K.convention),
        ("modulus", K.modulus),
        ("vertices", ",".join(map(str, K.vertices))),
        ("matrix", ";".join(",".join(map(str, r)) for r in K.matrix)),
        ("lift", ";".join(",".join(map(str, r)) for r in K.lift)),
        ("det_lift", cartan.determinant_of_lift(K)),
    ]


def cmd_center(parsed, args):
    return cartan.center_report(parsed.spec, args.rho_convention).items()


def cmd_cover(parsed, args):
    spec = parsed.spec
    cov = covering.build_double_cover(spec)
    failures = covering.check_cover(cov)
    out = [
        ("orientable", _bool(am.is_orientable(spec))),
        ("cover_vertices", len(cov.cover.vertices)),
        ("cover_edges", ";".join(cov.edge_names())),
        ("connected", _bool(cov.connected)),
        ("cover_checks", "ok" if not failures else "; ".join(failures)),
    ]
    if cov.connected:
        orbit = covering.theta_orbit_diagram(cov)
        out.append(("orbit_diagram_matches_base", _bool(orbit.edge_set == spec.diagram.edge_set)))
    out += [("warning", w) for w in cov.warnings]
    return out


def _require_condition_d(spec):
    if am.is_orientable(spec):
        raise PreconditionError("condition (D) needs non-orientable omega (some chord twist involves tau)")
    if spec.field.q < MIN_Q_CONDITION_D:
        raise PreconditionError(f"requires |k| >= {MIN_Q_CONDITION_D}, got q={spec.field.q}")


def cmd_condition_d(parsed, args):
    _require_condition_d(parsed.spec)
    return fp.condition_D_quotient(parsed.spec, args.rho_convention).items()


def cmd_closure(parsed, args):
    spec = parsed.spec
    bar = am.closure(spec, parsed.z1)
    return [
        ("bad_pairs", spec.bad_pairs.format()),
        ("z1_dim", parsed.z1.dim),
        ("blocks", bar.format()),
        ("closed", _bool(bar == spec.bad_pairs)),
    ]


def cmd_inject(parsed, args):
    spec = parsed.spec
    verdict = am.decide(spec, parsed.z1)
    if not verdict.nontrivial_completion:
        raise PreconditionError("no completion: the bad pairs do not refine the twin relation")
    return [
        ("nontrivial_completion", "true"),
        ("injects", _bool(verdict.injects)),
        ("closure", verdict.closure.format()),
        ("isogeny_bound", am.isogeny_bound(spec)),
    ]


def cmd_oracle_check(parsed, args):
    from .oracle import checks

    spec = parsed.spec
    order = checks._require_spherical(spec)
    n, q = spec.diagram.n, spec.field.q
    brute = checks.brute_force_central_torus(n, q)
    symbolic = checks.symbolic_central_torus(n, q)
    failures = checks.random_conjugation_samples(n, q, args.samples, seed=args.seed)
    return [
        ("path_order", ",".join(map(str, order))),
        ("brute_force_order", len(brute)),
        ("symbolic_order", len(symbolic)),
        ("oracle_match", _bool(brute == symbolic)),
        ("conjugation_samples", args.samples),
        ("conjugation_failures", failures),
    ]


def cmd_report(parsed, args):
    spec = parsed.spec
    orientable = am.is_orientable(spec)
    out = [("field", str(spec.field)), ("vertices", spec.diagram.n), ("root", spec.tree.root)]
    out.append(("chords", _pairs(spec.tree.chords)))
    out.append(("omega", ",".join(f"{i}-{j}:{tw}" for (i, j), tw in sorted(spec.omega.items())) or "-"))
    out.append(("orientable", _bool(orientable)))
    out.append(("sim0", dg.sim0(spec.diagram).format()))
    out.append(("bad_pairs", spec.bad_pairs.format()))
    verdict = am.decide(spec, parsed.z1)
    out.append(("nontrivial_completion", _bool(verdict.nontrivial_completion)))
    if verdict.nontrivial_completion:
        out.append(("closure", verdict.closure.format()))
        out.append(("injects", _bool(verdict.injects)))
    else:
        out.append(("injects", "n/a"))
    out += [(f"center.{k}", v) for k, v in cartan.center_report(spec, args.rho_convention).items()]
    if not orientable:
        cov = covering.build_double_cover(spec)
        out.append(("cover.connected", _bool(cov.connected)))
        out.append(("cover.edges", ";".join(cov.edge_names())))
        if spec.field.q >= MIN_Q_CONDITION_D:
            items = fp.condition_D_quotient(spec, args.rho_convention).items()
            out += [(f"condition_d.{k}", v) for k, v in items]
        else:
            out.append(("condition_d", f"skipped (requires |k| >= {MIN_Q_CONDITION_D})"))
    return out


COMMANDS = {
    "validate": (cmd_validate, "check the spec file and diagram"),
    "sim0": (cmd_sim0, "the twin relation on the diagram"),
    "classify-count": (cmd_classify_count, "number of possible twist data on the diagram"),
    "cartan": (cmd_cartan, "the generalized Cartan operator"),
    "center": (cmd_center, "central torus elements: kernel of the Cartan operator"),
    "cover": (cmd_cover, "the double cover attached to the sign of omega"),
    "condition-d": (cmd_condition_d, "the fixed-point quotient deciding condition (D)"),
    "closure": (cmd_closure, "the closure of the bad-pair relation"),
    "inject": (cmd_inject, "does the amalgam inject into its universal completion"),
    "oracle-check": (cmd_oracle_check, "brute-force matrix cross-check (A_n paths only)"),
    "report": (cmd_report, "the full analysis pipeline"),
}


def render(items, fmt):
    items = [(k, v) for k, v in items]
    if fmt == "kv":
        return "".join(f"{k}={v}\n" for k, v in items)
    width = max((len(k) for k, _ in items), default=0)
    return "".join(f"{k.ljust(width)} : {v}\n" for k, v in items)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ctgroups",
        description="Analyse Curtis-Tits amalgams described in spec files.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("specfile", type=Path)
        p.add_argument("--format", choices=("text", "kv"), default="text")
        p.add_argument("--rho-convention", choices=am.CONVENTIONS, default=am.DEFINITION)
        p.add_argument("-o", "--output", type=Path, help="also write the report to this file")
        if name == "oracle-check":
            p.add_argument("--samples", type=int, default=100, help="random conjugation samples")
            p.add_argument("--seed", type=int, default=0)
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        parsed = load_spec(args.specfile)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            items = func(parsed, args)
        text = render(items, args.format)
    except SpecError as exc:
        print(f"error: {args.specfile}: {exc}", file=stderr)
        return EXIT_SPEC
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=stderr)
        return EXIT_PRECONDITION
    for w in caught:
        print(f"warning: {w.message}", file=stderr)
    stdout.write(text)
    if args.output is not None:
        args.output.write_text(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
