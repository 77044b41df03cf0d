"""Command-line interface: JSON in, JSON out.

Exit status is 0 on success, 1 on a domain error and 2 on I/O or parse
errors. Errors are reported on stdout as ``{"error": name, "message": ...}``.
"""

import argparse
import json
import sys

from .diagram import area_constraints, crossing_signs, diagram_tb, euler_counts, faces, parse_pd
from .errors import LegprodError, ParseError
from .explore import tb_range_search
from .feasibility import system_from_dict, system_to_dict
from .model import (
    KNOT_FIXTURES,
    chord_sum_tb,
    knot_fixture,
    loads_model,
    model_to_dict,
    require_valid,
    validate_model,
)
from .product import (
    chords_to_list,
    frontspin,
    infinite_family_tb,
    maslov_product,
    perturb_product,
    product_tb,
)
from .rational import parse_rational
from .triple import triple_tb, triple_vs_iterated


class UsageError(Exception):
    """Bad command-line input that argparse cannot catch by itself."""


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _model(path):
    return loads_model(_read(path))


def _assignments(text):
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ParseError(f"expected name=value, got {item!r}")
        out[name.strip()] = parse_rational(value.strip())
    return out


def cmd_validate(args):
    report = validate_model(_model(args.model))
    return {"ok": report.ok, "violations": list(report.violations)}


def cmd_tb(args):
    m = _model(args.model)
    require_valid(m)
    return {"tb": chord_sum_tb(m)}


def cmd_product(args):
    K, L = _model(args.K), _model(args.L)
    if not (args.perturb or args.strict):
        return {"tb": product_tb(K, L), "maslov": maslov_product(K, L)}
    chords, model = perturb_product(K, L, strict=args.strict)
    return {
        "tb": chord_sum_tb(model),
        "chords": chords_to_list(chords),
        "model": model_to_dict(model),
    }


def cmd_triple(args):
    models = [_model(p) for p in (args.K1, args.K2, args.K3)]
    if args.audit:
        closed, iterated, agree = triple_vs_iterated(*models)
        return {"closed_form": closed, "iterated": iterated, "agree": agree}
    return {"tb": triple_tb(*models)}


def cmd_frontspin(args):
    model = frontspin(_model(args.L))
    return {"tb": chord_sum_tb(model), "model": model_to_dict(model)}


def cmd_family(args):
    values = infinite_family_tb(_model(args.K), _model(args.L), args.e, args.pairs,
                                args.za, args.zb, args.sign)
    return {"values": values}


def _labels(text):
    return None if text is None else [s.strip() for s in text.split(",")]


def cmd_diagram(args):
    pd = parse_pd(_read(args.pd))
    labels = _labels(args.labels)
    if labels is not None and len(labels) != len(pd):
        raise UsageError(f"need {len(pd)} labels, got {len(labels)}")
    names = labels or [f"x{i + 1}" for i in range(len(pd))]
    if args.tb:
        return {"tb": diagram_tb(pd)}
    if args.faces:
        return {"faces": [
            {"unbounded": f.unbounded,
             "corners": [{"chord": names[c.crossing - 1], "sign": c.sign} for c in f.corners]}
            for f in faces(pd)
        ]}
    if args.constraints:
        return system_to_dict(area_constraints(pd, names))
    v, e, f = euler_counts(pd)
    signs = crossing_signs(pd)
    return {
        "tb": diagram_tb(pd),
        "signs": {names[i - 1]: s for i, s in signs.items()},
        "vertices": v,
        "edges": e,
        "faces": f,
    }


def cmd_explore(args):
    names = [s.strip() for s in args.fixtures.split(",")]
    if len(names) != 3:
        raise UsageError("--fixtures needs exactly three comma-separated names")
    for name in names:
        if name not in KNOT_FIXTURES:
            raise UsageError(f"unknown fixture {name!r}; expected one of {sorted(KNOT_FIXTURES)}")
    sys_ = None
    if args.system:
        try:
            sys_ = system_from_dict(json.loads(_read(args.system)))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    report = tb_range_search(names, sys_, budget=args.budget, seed=args.seed)
    return report.to_dict()


def cmd_fixtures(args):
    if args.name not in KNOT_FIXTURES:
        raise UsageError(f"unknown fixture {args.name!r}; expected one of {sorted(KNOT_FIXTURES)}")
    try:
        model, sys_ = knot_fixture(args.name, _assignments(args.actions))
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    return {"tb": chord_sum_tb(model), "model": model_to_dict(model),
            "constraints": system_to_dict(sys_)}


def build_parser():
    p = argparse.ArgumentParser(prog="legprod", description=__doc__.splitlines()[0])
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a model's invariants")
    s.add_argument("model")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("tb", help="tb of a model as its chord sign sum")
    s.add_argument("model")
    s.set_defaults(func=cmd_tb)

    s = sub.add_parser("product", help="tb of K x L")
    s.add_argument("K")
    s.add_argument("L")
    s.add_argument("--perturb", action="store_true", help="list the perturbed chords")
    s.add_argument("--strict", action="store_true",
                   help="separate equal product actions (implies --perturb)")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("triple", help="tb of K1 x K2 x K3 for knots")
    for name in ("K1", "K2", "K3"):
        s.add_argument(name)
    s.add_argument("--audit", action="store_true", help="compare with the iterated product")
    s.set_defaults(func=cmd_triple)

    s = sub.add_parser("frontspin", help="frontspin of L")
    s.add_argument("L")
    s.set_defaults(func=cmd_frontspin)

    s = sub.add_parser("family", help="tb along the stabilized family K_i x L")
    s.add_argument("K")
    s.add_argument("L")
    s.add_argument("--e", required=True, help="label of the chord of L inside the window")
    s.add_argument("--pairs", type=int, required=True)
    s.add_argument("--za", required=True)
    s.add_argument("--zb", required=True)
    s.add_argument("--sign", type=int, required=True, choices=(-1, 1))
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("diagram", help="inspect a PD code")
    s.add_argument("pd")
    s.add_argument("--labels", help="comma-separated chord labels in crossing order")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--tb", action="store_true")
    mode.add_argument("--faces", action="store_true")
    mode.add_argument("--constraints", action="store_true")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("explore", help="search tb values of a triple of fixture knots")
    s.add_argument("--fixtures", default="stabilized_unknot,r1_unknot,trefoil")
    s.add_argument("--budget", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--system", help="JSON constraint system to search instead of the default")
    s.set_defaults(func=cmd_explore)

    s = sub.add_parser("fixtures", help="build a fixture knot from chord actions")
    s.add_argument("name")
    s.add_argument("--actions", required=True, help='e.g. "c1=10,c2=10,c3=3,c4=3,c5=3"')
    s.set_defaults(func=cmd_fixtures)
    return p


def _cell(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def render_pretty(result):
    """Aligned ``key  value`` lines; lists of records become tables."""
    lines = []
    width = max((len(k) for k in result), default=0)
    for key, value in result.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            cols = list(value[0])
            rows = [[_cell(v.get(c, "")) for c in cols] for v in value]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append(f"{key}:")
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for r in rows:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        else:
            lines.append(f"{key.ljust(width)}  {_cell(value)}")
    return "\n".join(lines) + "\n"


def _emit(result, pretty, out):
    if pretty:
        out.write(render_pretty(result))
    else:
        out.write(json.dumps(result, indent=2) + "\n")


def run(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except (ParseError, UsageError) as exc:
        name = exc.name if isinstance(exc, ParseError) else "UsageError"
        _emit({"error": name, "message": str(exc)}, args.pretty, out)
        return 2
    except OSError as exc:
        _emit({"error": "IOError", "message": str(exc)}, args.pretty, out)
        return 2
    except LegprodError as exc:
        _emit({"error": exc.name, "message": str(exc)}, args.pretty, out)
        return 1
    except ValueError as exc:
        _emit({"error": "InvalidArgument", "message": str(exc)}, args.pretty, out)
        return 1
    _emit(result, args.pretty, out)
    return 0


def main():
    sys.exit(run())
