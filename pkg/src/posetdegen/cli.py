"""Command line interface: JSON poset/weights files in, deterministic reports out.

Exit codes: 0 success, 2 validation failure, 3 weight outside the cone,
4 parse error.  All rationals are serialized exactly ("p/q", plain integers
without the denominator); nothing is ever rendered in floating point.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import degeneration, flag as flagmod, marked, polytopes
from .errors import (
    ConditionViolated,
    CycleDetected,
    DuplicateLabel,
    InvalidDims,
    InvalidIndex,
    InvalidStructure,
    KindMismatch,
    ModeDimsMismatch,
    NotALatticePoint,
    NotAPartition,
    NotASublattice,
    NotDominant,
    OutsideCone,
    ParseError,
    PosetDegenError,
    UnknownLabel,
)
from .posets import build_poset, mask_bits, validate_relative_structure

VALIDATION_ERRORS = (
    ConditionViolated, CycleDetected, DuplicateLabel, UnknownLabel, NotASublattice,
    NotDominant, NotAPartition, InvalidDims, InvalidIndex, InvalidStructure,
    KindMismatch, ModeDimsMismatch, NotALatticePoint,
)


def fmt_fraction(x):
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_fraction(text):
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None


def parse_poset_file(path):
    """Build the validated relative structure described by a poset file."""
    if path is None:
        raise ParseError("a poset file is required for this command")
    data = load_json(path)
    if not isinstance(data, dict) or "elements" not in data:
        raise ParseError(f"{path}: expected an object with an 'elements' list")
    poset = build_poset(data["elements"], [tuple(c) for c in data.get("covers", [])])
    weak = [tuple(c) for c in data.get("weak_covers", [])]
    marked = data.get("marked")
    return validate_relative_structure(poset, weak, marked)


def parse_weights_file(path, lattice, keys, default_zero=False):
    """Weights keyed by comma-joined sorted ideal labels ('' for the empty ideal)."""
    if path is None:
        raise ParseError("a weights file is required for this command")
    data = load_json(path)
    if not isinstance(data, dict) or "weights" not in data:
        raise ParseError(f"{path}: expected an object with a 'weights' map")
    table = data["weights"]
    values = []
    for key in keys:
        if key in table:
            values.append(parse_fraction(table[key]))
        elif default_zero:
            values.append(Fraction(0))
        else:
            raise ParseError(f"{path}: missing weight for ideal key {key!r}")
    known = set(keys)
    for key in table:
        if key not in known:
            raise ParseError(f"{path}: weight key {key!r} matches no ideal")
    return values


def structure_keys(structure):
    lat = structure.lattice
    return [lat.label_key(i) for i in range(len(lat))]


def jlambda_keys(structure):
    std = marked.standardize(structure)
    lat = structure.lattice
    return std, [lat.label_key(i) for i in std.jlambda]


def hasse_lines(elements, covers, indent="  "):
    """Indented cover list: each element followed by the elements covering it."""
    uppers = {}
    for a, b in covers:
        uppers.setdefault(a, []).append(b)
    lines = []
    for e in elements:
        lines.append(e)
        for b in sorted(uppers.get(e, [])):
            lines.append(f"{indent}< {b}")
    return lines


def render_text(report):
    out = []

    def walk(obj, depth):
        pad = "  " * depth
        if isinstance(obj, dict):
            for key in sorted(obj):
                value = obj[key]
                if isinstance(value, (dict, list)):
                    out.append(f"{pad}{key}:")
                    walk(value, depth + 1)
                else:
                    out.append(f"{pad}{key}: {value}")
        elif isinstance(obj, list):
            for value in obj:
                if isinstance(value, (dict, list)):
                    out.append(f"{pad}-")
                    walk(value, depth + 1)
                else:
                    out.append(f"{pad}- {value}")
        else:
            out.append(f"{pad}{obj}")

    if isinstance(report, dict) and "hasse" in report:
        report = dict(report)
        out.extend(report.pop("hasse"))
    walk(report, 0)
    return "\n".join(out) + "\n"


def emit_report(report, fmt="json", out=None):
    if fmt == "json":
        payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        payload = render_text(report)
    data = payload.encode("utf-8")
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


def point_list(points):
    return [list(p) for p in sorted(points)]


def part_report(structure, part, vertices, lattice_points, vanishing_keys):
    return {
        "added_covers": [list(c) for c in sorted(part.added_covers(structure.poset))],
        "order_covers": [list(c) for c in sorted(part.order.cover_labels())],
        "vertices": vertices,
        "lattice_points": lattice_points,
        "vanishing_variables": sorted(vanishing_keys),
        "affine": {
            "normal": [fmt_fraction(a) for a in part.affine[0]],
            "constant": fmt_fraction(part.affine[1]),
        },
    }


def cmd_validate(args):
    structure = parse_poset_file(args.file)
    report = {
        "valid": True,
        "elements": list(structure.poset.elements),
        "ideal_count": len(structure.lattice),
        "marked": sorted(
            structure.poset.elements[i] for i in mask_bits(structure.marked)
        ),
        "hasse": hasse_lines(structure.poset.elements, structure.poset.cover_labels()),
    }
    return report


def cmd_ideals(args):
    structure = parse_poset_file(args.file)
    return {"ideals": structure_keys(structure)}


def cmd_polytope(args):
    if args.kind in ("gt", "fflv"):
        if args.n is None or args.dims is None:
            raise ParseError(f"--kind {args.kind} requires --n and --dims")
        data = flagmod.build_flag_poset(args.n, parse_dims(args.dims))
        poly = flagmod.flag_polytope(data, args.kind)
        return {
            "kind": args.kind,
            "elements": list(data.poset.elements),
            "lattice_points": point_list(poly.points),
            "vertices": point_list(poly.vertices),
        }
    structure = parse_poset_file(args.file)
    if args.kind == "mrpp":
        poly = marked.build_mrpp(structure)
        return {
            "kind": "mrpp",
            "lattice_points": point_list(poly.points),
            "vertices": point_list(poly.vertices),
        }
    if args.kind == "mcop":
        chain_part = args.chain_set.split(",") if args.chain_set else []
        order_part = args.order_set.split(",") if args.order_set else []
        marking = {
            structure.poset.elements[i]: structure.marking[i]
            for i in mask_bits(structure.marked)
        }
        poly = marked.mcop_build(structure.poset, marking, chain_part, order_part)
        return {
            "kind": "mcop",
            "lattice_points": point_list(poly.points),
            "vertices": point_list(poly.vertices),
        }
    poly = polytopes.build_polytope(structure, args.kind)
    lat = poly.structure.lattice
    return {
        "kind": args.kind,
        "vertices": point_list(poly.vertices),
        "vertex_keys": [lat.label_key(i) for i in range(len(lat))],
    }


def cmd_ehrhart(args):
    structure = parse_poset_file(args.file)
    if structure.marked:
        counts = {
            str(m): len(marked.mrpp_points(structure, m))
            for m in range(args.max_dilation + 1)
        }
    else:
        values = polytopes.ehrhart_values(structure, args.max_dilation)
        counts = {str(m): c for m, c in enumerate(values)}
    return {"ehrhart": counts}


def cmd_normality(args):
    structure = parse_poset_file(args.file)
    ok, failure = polytopes.check_normality(structure, args.max_dilation)
    report = {"normal": ok, "max_dilation": args.max_dilation}
    if not ok:
        report["failing_dilation"] = failure[0]
        report["failing_point"] = list(failure[1])
    return report


def cmd_cone_check(args):
    structure = parse_poset_file(args.file)
    keys = structure_keys(structure)
    w = parse_weights_file(args.weights, structure.lattice, keys, args.default_zero)
    pos = degeneration.cone_position(structure, w)
    lat = structure.lattice
    pair = lambda ab: [lat.label_key(ab[0]), lat.label_key(ab[1])]
    return {
        "position": pos.position,
        "violated": [pair(p) for p in pos.violated],
        "tight": [pair(p) for p in pos.tight],
    }


def cmd_subdivide(args):
    structure = parse_poset_file(args.file)
    lat = structure.lattice
    if structure.marked:
        std, keys = jlambda_keys(structure)
        w = parse_weights_file(args.weights, lat, keys, args.default_zero)
        sub = marked.mrpp_subdivide(structure, w)
        qlat = sub.standardized.quotient.lattice
        parts = []
        for part in sub.parts:
            inside = set(part.big_sublattice)
            vanishing = [
                qlat.label_key(i) for i in range(len(qlat)) if i not in inside
            ]
            parts.append(
                part_report(sub.standardized.quotient, part, len(part.vertices),
                            len(part.points), vanishing)
            )
        return {"parts": parts, "dropped_lower_dimensional": sub.dropped}
    keys = structure_keys(structure)
    w = parse_weights_file(args.weights, lat, keys, args.default_zero)
    sub = degeneration.subdivide(structure, w)
    parts = []
    for part in sub.parts:
        inside = set(part.sublattice)
        vanishing = [lat.label_key(i) for i in range(len(lat)) if i not in inside]
        parts.append(
            part_report(structure, part, len(part.sublattice), len(part.sublattice),
                        vanishing)
        )
    return {"parts": parts}


def cmd_components(args):
    structure = parse_poset_file(args.file)
    keys = structure_keys(structure)
    w = parse_weights_file(args.weights, structure.lattice, keys, args.default_zero)
    _, comps = degeneration.zhu_components(structure, w)
    lat = structure.lattice
    out = []
    for comp in comps:
        out.append(
            {
                "vanishing": [lat.label_key(i) for i in comp.vanishing],
                "generators": [
                    [
                        [lat.label_key(a), lat.label_key(b)],
                        [lat.label_key(u), lat.label_key(s)],
                    ]
                    for (a, b), (u, s) in comp.presentation.generators
                ],
                "order_covers": [list(c) for c in sorted(comp.part.order.cover_labels())],
            }
        )
    return {"components": out}


def cmd_ideal_gens(args):
    structure = parse_poset_file(args.file)
    pres = degeneration.ideal_presentation(structure, args.kind)
    lat = structure.lattice
    gens = []
    for (a, b), rhs in pres.generators:
        entry = {"lead": [lat.label_key(a), lat.label_key(b)]}
        if rhs is not None:
            entry["trail"] = [lat.label_key(rhs[0]), lat.label_key(rhs[1])]
        gens.append(entry)
    return {"kind": args.kind, "generators": gens}


def cmd_standardize(args):
    structure = parse_poset_file(args.file)
    std = marked.standardize(structure)
    q = std.quotient
    return {
        "identity": std.is_identity,
        "classes": [
            sorted(structure.poset.elements[i] for i in mask_bits(m))
            for m in std.class_masks
        ],
        "quotient_elements": list(q.poset.elements),
        "quotient_covers": [list(c) for c in sorted(q.poset.cover_labels())],
        "mu": {
            q.poset.elements[i]: q.marking[i] for i in mask_bits(q.marked)
        },
        "hasse": hasse_lines(q.poset.elements, q.poset.cover_labels()),
    }


def cmd_mcop_recognize(args):
    structure = parse_poset_file(args.file)
    target = marked.build_mrpp(structure)
    found = marked.mcop_recognize(structure, target)
    if found is None:
        return {"found": False}
    return {"found": True, "chain": list(found[0]), "order": list(found[1])}


def parse_dims(text):
    try:
        return tuple(int(d) for d in text.split(","))
    except ValueError:
        raise ParseError(f"bad dims {text!r}") from None


def cmd_flag(args):
    data = flagmod.build_flag_poset(args.n, parse_dims(args.dims))
    if args.action == "ideals":
        structure = data.structure(args.mode)
        return {"ideals": structure_keys(structure)}
    if args.action == "polytope":
        poly = flagmod.flag_polytope(data, args.mode)
        return {
            "mode": args.mode,
            "elements": list(data.poset.elements),
            "marked": {k: data.marking[k] for k in data.marked_labels},
            "lattice_point_count": len(poly.points),
            "lattice_points": point_list(poly.points),
        }
    # degenerate
    structure = data.structure(args.mode)
    std, keys = jlambda_keys(structure)
    w = parse_weights_file(args.weights, structure.lattice, keys, args.default_zero)
    report = flagmod.flag_degeneration(data, args.mode, w)
    return {"mode": args.mode, "parts": report.parts}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="posetdegen",
        description="Relative poset polytopes, their subdivisions and flag degenerations",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--out", default=None, help="write the report to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate)
    p.add_argument("file")
    p = add("ideals", cmd_ideals)
    p.add_argument("file")
    p = add("polytope", cmd_polytope)
    p.add_argument("file", nargs="?")
    p.add_argument("--kind", required=True,
                   choices=("order", "chain", "relative", "mrpp", "gt", "fflv", "mcop"))
    p.add_argument("--chain-set", default="")
    p.add_argument("--order-set", default="")
    p.add_argument("--n", type=int)
    p.add_argument("--dims")
    p = add("ehrhart", cmd_ehrhart)
    p.add_argument("file")
    p.add_argument("--max-dilation", type=int, default=3)
    p = add("normality", cmd_normality)
    p.add_argument("file")
    p.add_argument("--max-dilation", type=int, default=3)
    for name, fn in (
        ("cone-check", cmd_cone_check),
        ("subdivide", cmd_subdivide),
        ("components", cmd_components),
    ):
        p = add(name, fn)
        p.add_argument("file")
        p.add_argument("--weights", required=True)
        p.add_argument("--default-zero", action="store_true")
    p = add("ideal-gens", cmd_ideal_gens)
    p.add_argument("file")
    p.add_argument("--kind", required=True,
                   choices=("hibi", "hibili", "relative", "monomial"))
    p = add("standardize", cmd_standardize)
    p.add_argument("file")
    p = add("mcop-recognize", cmd_mcop_recognize)
    p.add_argument("file")
    p = add("flag", cmd_flag)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dims", required=True)
    p.add_argument("--mode", choices=("gt", "fflv"), required=True)
    p.add_argument("--action", choices=("polytope", "ideals", "degenerate"),
                   default="polytope")
    p.add_argument("--weights")
    p.add_argument("--default-zero", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 4
    except OutsideCone as exc:
        print(f"outside cone: {exc}", file=sys.stderr)
        return 3
    except VALIDATION_ERRORS as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    emit_report(report, args.format, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
