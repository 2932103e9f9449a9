"""Command-line front end.

Every subcommand builds a mapping from artifact name to a JSON-ready
payload. With ``--out`` each artifact is written to ``<out>/<name>.json``;
otherwise all artifacts are printed to stdout as one JSON document.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .correspondence import (compare_pipeline, conjecture_check,
                             framing_correspondence)
from .errors import NotEffective, OrbivertexError, SpecParseError
from .group_core import group_from_spec
from .lattice_geometry import invariant_basis, pick_audit, triangle_points
from .orbifold_side import (orbifold_disc_potential, orbifold_mirror_map,
                            torus_weights)
from .resolution_side import mirror_corrections, superpotential
from .toric_charges import brane_extension, dual_graph
from .triangulator import enumerate_triangulations, flop_graph, is_regular

log = logging.getLogger("orbivertex")

EXIT_ERROR = 1
EXIT_MISMATCH = 2


def load_group(text):
    """A group from a JSON file path or an inline label such as "Z3(1,1,1)"."""
    path = Path(text)
    if path.suffix == ".json" or path.is_file():
        try:
            spec = json.loads(path.read_text())
        except OSError as exc:
            raise SpecParseError(f"cannot read {text}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"{text} is not valid JSON: {exc}") from exc
        return group_from_spec(spec)
    return group_from_spec(text)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("degree must be at least 1")
    return value


def _segment(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError("segment must look like i1,i2")
    return tuple(parts)


def _select(tp, selector, regular_only, default):
    """Triangulations picked by index, id prefix or "all"."""
    found = enumerate_triangulations(tp)
    indexed = list(enumerate(found))
    if regular_only:
        indexed = [(k, t) for k, t in indexed if is_regular(t)]
    selector = default if selector is None else selector
    if selector == "all":
        return indexed
    if selector.isdigit():
        k = int(selector)
        if not 0 <= k < len(found):
            raise SpecParseError(f"triangulation index {k} out of range (0..{len(found) - 1})")
        return [(kk, t) for kk, t in indexed if kk == k]
    hits = [(k, t) for k, t in indexed if t.id.startswith(selector)]
    if len(hits) != 1:
        raise SpecParseError(f"triangulation id {selector!r} matches {len(hits)} triangulations")
    return hits


def _triangulation_dict(tr, index):
    tp = tr.points
    names = tp.keys
    return {
        "index": index,
        "id": tr.id,
        "regular": is_regular(tr),
        "triangles": [[names[p] for p in t] for t in tr.triangles],
        "interior_edges": [[names[a], names[b]] for a, b in tr.interior_edges],
        "boundary_edges": [[names[a], names[b]] for a, b in tr.boundary_edges],
    }


def _lattice_dict(group):
    basis = invariant_basis(group)
    tp = triangle_points(group, basis)
    interior, boundary, area = pick_audit(tp)
    return {
        "epsilon": [list(r) for r in basis.epsilon],
        "m_star": [basis.m1_star, basis.m2_star],
        "det": basis.det,
        "points": {tp.name(p): list(tp.vtilde[p]) for p in range(len(tp))},
        "interior": interior,
        "boundary": boundary,
        "area": str(area),
    }


def _brane(tr, args):
    return brane_extension(tr, segment=args.segment, framing=args.framing)


def cmd_group(args, group):
    return {"group": group.describe()}


def cmd_lattice(args, group):
    return {"lattice": _lattice_dict(group)}


def cmd_triangulate(args, group):
    tp = triangle_points(group)
    chosen = _select(tp, args.triangulation, args.regular_only, "all")
    out = {f"triangulation_{k}": _triangulation_dict(t, k) for k, t in chosen}
    if args.dot:
        out["_dot"] = {f"triangulation_{k}": t.to_dot() for k, t in chosen}
        out["_dot"]["flops"] = flop_graph(enumerate_triangulations(tp)).to_dot()
    return out


def cmd_charges(args, group):
    tp = triangle_points(group)
    out, dots = {}, {}
    for k, tr in _select(tp, args.triangulation, args.regular_only, "0"):
        out[f"charges_{k}"] = _brane(tr, args).to_dict()
        dots[f"dual_{k}"] = dual_graph(tr).to_dot(tp.keys)
    if args.dot:
        out["_dot"] = dots
    return out


def cmd_mirror_map(args, group):
    tp = triangle_points(group)
    out = {}
    for k, tr in _select(tp, args.triangulation, args.regular_only, "0"):
        cs = _brane(tr, args)
        out[f"mirror_map_{k}"] = mirror_corrections(cs, args.degree).to_dict(cs)
    out["orbifold_mirror_map"] = orbifold_mirror_map(group, args.degree).to_dict(group)
    return out


def cmd_superpotential(args, group):
    tp = triangle_points(group)
    out = {}
    for k, tr in _select(tp, args.triangulation, args.regular_only, "0"):
        cs = _brane(tr, args)
        out[f"superpotential_{k}"] = superpotential(cs, args.degree).to_dict()
    return out


def cmd_orbifold_potential(args, group):
    a = args.framing_a
    if a is None:
        tp = triangle_points(group)
        (_, tr), = _select(tp, args.triangulation, False, "0")
        a = framing_correspondence(_brane(tr, args))
    weights = torus_weights(group, a)
    return {"orbifold_potential": orbifold_disc_potential(group, weights, args.degree).to_dict()}


def _compare_all(args, group, default):
    tp = triangle_points(group)
    out = {}
    for k, tr in _select(tp, args.triangulation, args.regular_only, default):
        cs = _brane(tr, args)
        report = compare_pipeline(cs, args.degree, signs=args.signs, framing_a=args.framing_a)
        out[f"compare_{k}"] = report.to_dict(tp.keys)
    return out


def cmd_compare(args, group):
    return _compare_all(args, group, "0")


def cmd_conjecture(args, group):
    if not group.is_effective_on_z0:
        raise NotEffective("the conjecture check needs |G0| = 1")
    tp = triangle_points(group)
    out = {}
    for k, tr in _select(tp, args.triangulation, args.regular_only, "all"):
        result = conjecture_check(brane_extension(tr))
        out[f"conjecture_{k}"] = dict(result.to_dict(tp.keys), id=tr.id)
    return out


def cmd_all(args, group):
    out = {"group": group.describe(), "lattice": _lattice_dict(group)}
    tp = triangle_points(group)
    for k, tr in _select(tp, args.triangulation, args.regular_only, "all"):
        cs = _brane(tr, args)
        out[f"triangulation_{k}"] = _triangulation_dict(tr, k)
        out[f"charges_{k}"] = cs.to_dict()
        out[f"mirror_map_{k}"] = mirror_corrections(cs, args.degree).to_dict(cs)
        out[f"superpotential_{k}"] = superpotential(cs, args.degree).to_dict()
        report = compare_pipeline(cs, args.degree, signs=args.signs, framing_a=args.framing_a)
        out[f"compare_{k}"] = report.to_dict(tp.keys)
        if group.is_effective_on_z0:
            out[f"conjecture_{k}"] = conjecture_check(cs).to_dict(tp.keys)
    return out


COMMANDS = {
    "group": cmd_group,
    "lattice": cmd_lattice,
    "triangulate": cmd_triangulate,
    "charges": cmd_charges,
    "mirror-map": cmd_mirror_map,
    "superpotential": cmd_superpotential,
    "orbifold-potential": cmd_orbifold_potential,
    "compare": cmd_compare,
    "conjecture": cmd_conjecture,
    "all": cmd_all,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="orbivertex", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--group", required=True, help="JSON spec file or label like Z3(1,1,1)")
        p.add_argument("--triangulation", help="index, id prefix, or 'all'")
        p.add_argument("--segment", type=_segment, help="brane segment i1,i2 on the v1v2 side")
        p.add_argument("--framing", type=int, default=0)
        p.add_argument("--degree", type=_positive, default=6)
        p.add_argument("--out", type=Path, help="output directory (default: stdout)")
        p.add_argument("--regular-only", action="store_true")
        p.add_argument("--signs", choices=("none", "auto"), default="none")
        p.add_argument("--framing-a", type=_fraction)
        p.add_argument("--dot", action="store_true", help="also write Graphviz files")
    return parser


def dumps(payload):
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_artifacts(artifacts, out):
    """Write artifacts; DOT sources under the "_dot" key become .dot files."""
    dots = artifacts.pop("_dot", {})
    if out is None:
        sys.stdout.write(dumps(artifacts))
        return
    out.mkdir(parents=True, exist_ok=True)
    for name in sorted(artifacts):
        (out / f"{name}.json").write_text(dumps(artifacts[name]))
    for name in sorted(dots):
        (out / f"{name}.dot").write_text(dots[name])


def _has_mismatch(artifacts):
    return any(isinstance(v, dict) and v.get("status") == "mismatch" for v in artifacts.values())


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        group = load_group(args.group)
        artifacts = COMMANDS[args.command](args, group)
    except OrbivertexError as exc:
        sys.stderr.write(dumps(exc.to_dict()))
        return EXIT_ERROR
    mismatch = _has_mismatch(artifacts)
    write_artifacts(artifacts, args.out)
    return EXIT_MISMATCH if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
