"""Command-line front end.

Subcommands: field, plane, construct, analyze, verify, search.  All
documents are UTF-8 JSON with stable key order.  Exit codes: 0 success
or all checks passing, 1 verification failure, 2 usage or parse error,
3 budget-limited search.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions, redei, search as search_mod
from .gf import FieldError, field_arith, field_create, spec_from_doc, spec_to_doc
from .plane import PlaneError, plane_create
from .secant import PreconditionError, analysis_report
from .redei import (affine_qset, direction_bounds, verify_bisecant_theorems,
                    verify_lemma_poly, check_fg_identity)
from .secant import weight_theorem_checks

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _factor_prime_power(q):
    if q < 2:
        raise UsageError(f"q = {q} is not a prime power")
    p = 2
    n = q
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        p = n
    h = 0
    while n > 1:
        if n % p:
            raise UsageError(f"q = {q} is not a prime power")
        n //= p
        h += 1
    return p, h


def _plane_for(q):
    p, h = _factor_prime_power(q)
    try:
        return plane_create(p, h)
    except FieldError as exc:
        raise UsageError(str(exc))


def point_set_document(plane, mask, metadata=None):
    doc = {
        'field': spec_to_doc(plane.field),
        'points': [list(plane.points[pi]) for pi in plane.indices_of(mask)],
    }
    if metadata:
        doc['metadata'] = metadata
    return doc


def load_point_set(doc):
    """Validate a point-set document and return (plane, mask)."""
    try:
        spec = spec_from_doc(doc['field'])
    except (KeyError, TypeError, ValueError, FieldError) as exc:
        raise UsageError(f"bad field block: {exc}")
    plane = plane_create(spec.p, spec.h)
    pts = doc.get('points')
    if not isinstance(pts, list):
        raise UsageError("missing points array")
    mask = 0
    prev = None
    for trip in pts:
        if (not isinstance(trip, list) or len(trip) != 3
                or not all(isinstance(c, int) and 0 <= c < spec.q for c in trip)):
            raise UsageError(f"bad coordinate triple {trip!r}")
        t = tuple(trip)
        if plane.normalize(t) != t:
            raise UsageError(f"triple {trip!r} is not normalized")
        if prev is not None and t <= prev:
            raise UsageError("points not sorted ascending without duplicates")
        prev = t
        mask |= 1 << plane.point_index[t]
    return plane, mask


def _emit(doc, args):
    if args.format == 'json':
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        _emit_text(doc)


def _emit_text(doc, indent=0):
    pad = '  ' * indent
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _emit_text(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)):
                _emit_text(v, indent + 1)
            else:
                print(f"{pad}{v}")
    else:
        print(f"{pad}{doc}")


def _read_json(path):
    if not path:
        raise UsageError("need an input document")
    try:
        if path == '-':
            return json.load(sys.stdin)
        with open(path, encoding='utf-8') as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read document: {exc}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_field(args):
    p, h = _factor_prime_power(args.q)
    spec = field_create(p, h)
    if args.op:
        b = args.b if args.b is not None else 0
        value = field_arith(spec, args.op, args.a, b)
        _emit({'field': spec_to_doc(spec), 'op': args.op, 'a': args.a,
               'b': args.b, 'value': value}, args)
    else:
        _emit({'field': spec_to_doc(spec)}, args)
    return EXIT_OK


def cmd_plane(args):
    plane = _plane_for(args.q)
    _emit({'field': spec_to_doc(plane.field),
           'points': plane.n_points, 'lines': plane.n_points,
           'pointsPerLine': plane.q + 1}, args)
    return EXIT_OK


def cmd_construct(args):
    plane = _plane_for(args.q)
    params = {}
    if args.a is not None:
        params['a'] = args.a
    mask = constructions.build(plane, args.name, **params)
    meta = {'name': args.name}
    if params:
        meta['parameters'] = params
    _emit(point_set_document(plane, mask, meta), args)
    return EXIT_OK


def cmd_analyze(args):
    in_doc = _read_json(args.input)
    plane, mask = load_point_set(in_doc)
    echo = point_set_document(plane, mask,
                              in_doc.get('metadata') if isinstance(in_doc, dict)
                              else None)
    report = analysis_report(plane, mask)
    redei_section = {}
    from .secant import blocking_report
    b = blocking_report(plane, mask)
    if b.redei_lines:
        redei_section['bisecantStructure'] = [
            verify_bisecant_theorems(plane, mask, li) for li in b.redei_lines]
    if redei_section:
        report['redei'] = redei_section
    doc = {'schema': 1, 'input': echo, 'report': report}
    _emit(doc, args)
    return EXIT_OK


def _qset_from_args(args):
    if args.map and args.q is None:
        raise UsageError("--map needs --q")
    if args.map:
        plane = _plane_for(args.q)
    else:
        plane = None
    if args.map == 'power':
        U = constructions.graph_of_power(plane, args.a if args.a is not None else 1)
    elif args.map in ('frobenius', 'scalar'):
        U = constructions.linear_graph(plane, args.map,
                                       args.a if args.a is not None else 1)
    elif args.map == 'trace':
        U = constructions.linear_graph(plane, 'trace')
    elif args.input:
        plane2, mask = load_point_set(_read_json(args.input))
        pts = [plane2.affine_coords(pi) for pi in plane2.indices_of(mask)]
        if any(p is None for p in pts):
            raise UsageError("point set is not affine")
        return plane2, affine_qset(plane2, pts)
    else:
        raise UsageError("need --map or --input")
    return plane, U


def cmd_verify(args):
    name = args.theorem
    if name == 'lemma-poly':
        plane, U = _qset_from_args(args)
        base = U.points[0]
        report = {'lemma': verify_lemma_poly(U, base),
                  'fgIdentity': check_fg_identity(U, base)}
        ok = report['lemma']['pass'] and report['fgIdentity']['status'] != 'FAIL'
    elif name == 'bisecant-structure':
        if args.map:
            plane, U = _qset_from_args(args)
            mask = redei.redei_blocking_set(U)
        else:
            plane, mask = load_point_set(_read_json(args.input))
        from .secant import blocking_report
        b = blocking_report(plane, mask)
        if not b.redei_lines:
            raise UsageError("the set has no long secant line to check")
        report = [verify_bisecant_theorems(plane, mask, li)
                  for li in b.redei_lines]
        ok = all(r['pass'] for r in report)
    elif name == 'direction-bounds':
        plane, U = _qset_from_args(args)
        report = direction_bounds(U)
        ok = report['pass']
    elif name == 'weights':
        plane, mask = load_point_set(_read_json(args.input))
        report = weight_theorem_checks(plane, mask)
        ok = all(c['status'] != 'FAIL' for c in report['checks'].values())
    elif name == 'peter':
        if args.q is None:
            raise UsageError("verify peter needs --q")
        res = search_mod.verify_peter_nonexistence(
            args.q, args.node_budget, args.time_budget)
        report = _search_doc(res)
        if not res.exhaustive:
            _emit({'theorem': name, 'report': report}, args)
            return EXIT_BUDGET
        ok = not res.witnesses
    elif name == 'blokhuis-classification':
        if args.q is None:
            raise UsageError("verify blokhuis-classification needs --q")
        res = search_mod.verify_blokhuis_classification(
            args.q, args.a if args.a is not None else 4,
            node_budget=args.node_budget, time_budget=args.time_budget)
        report = _search_doc(res)
        ok = res.exhaustive
        if not res.exhaustive:
            _emit({'theorem': name, 'report': report}, args)
            return EXIT_BUDGET
    else:
        raise UsageError(f"unknown theorem id {name!r}")
    _emit({'theorem': name, 'report': report}, args)
    return EXIT_OK if ok else EXIT_FAIL


def _search_doc(res):
    doc = {'witnesses': res.witnesses_docs if hasattr(res, 'witnesses_docs')
           else res.witnesses,
           'nodesExplored': res.nodes_explored,
           'exhaustive': res.exhaustive}
    if res.optimum is not None:
        doc['optimum'] = res.optimum
    if res.details:
        doc['details'] = res.details
    return doc


def cmd_search(args):
    spec_doc = _read_json(args.spec)
    try:
        spec = search_mod.SearchSpec(
            q=int(spec_doc['q']),
            n=int(spec_doc.get('n', 0)),
            objective=spec_doc['objective'],
            predicate=spec_doc.get('predicate'),
            parameters=spec_doc.get('parameters', {}),
            reduction=spec_doc.get('reduction', 'full_canonical'),
            node_budget=int(spec_doc.get('nodeBudget', args.node_budget)),
            time_budget=float(spec_doc.get('timeBudget', args.time_budget)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad search spec: {exc}")
    if spec.reduction not in ('none', 'lexmin_stabilizer', 'full_canonical'):
        raise UsageError(f"unknown reduction {spec.reduction!r}")
    try:
        res = search_mod.search_generic(spec)
    except PreconditionError as exc:
        raise UsageError(str(exc))
    plane = _plane_for(spec.q)
    doc = _search_doc(res)
    doc['witnesses'] = [point_set_document(plane, m) for m in res.witnesses]
    _emit(doc, args)
    return EXIT_OK if res.exhaustive else EXIT_BUDGET


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    top = argparse.ArgumentParser(prog='pgplane', description=__doc__)
    top.add_argument('--format', choices=('json', 'text'), default='json')
    top.add_argument('--threads', type=int, default=1,
                     help='worker count; results never depend on it')
    top.add_argument('--node-budget', type=int, default=10 ** 9)
    top.add_argument('--time-budget', type=float, default=7200.0)
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('json', 'text'),
                        default=argparse.SUPPRESS)
    common.add_argument('--threads', type=int, default=argparse.SUPPRESS)
    common.add_argument('--node-budget', type=int, default=argparse.SUPPRESS)
    common.add_argument('--time-budget', type=float, default=argparse.SUPPRESS)
    sub = top.add_subparsers(dest='command', required=True)

    p = sub.add_parser('field', parents=[common],
                       help='field parameters and arithmetic')
    p.add_argument('q', type=int)
    p.add_argument('--op', choices=('add', 'sub', 'mul', 'div', 'pow',
                                    'neg', 'inv'))
    p.add_argument('--a', type=int, default=0)
    p.add_argument('--b', type=int)
    p.set_defaults(fn=cmd_field)

    p = sub.add_parser('plane', parents=[common], help='plane parameters')
    p.add_argument('q', type=int)
    p.set_defaults(fn=cmd_plane)

    p = sub.add_parser('construct', parents=[common], help='emit a named point set')
    p.add_argument('name', choices=sorted(constructions.CATALOG))
    p.add_argument('q', type=int)
    p.add_argument('--a', type=int, help='construction parameter')
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser('analyze', parents=[common], help='full analysis of a point-set document')
    p.add_argument('input', help='document path or - for stdin')
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser('verify', parents=[common], help='run a theorem checker')
    p.add_argument('theorem', choices=('lemma-poly', 'bisecant-structure',
                                       'direction-bounds', 'weights', 'peter',
                                       'blokhuis-classification'))
    p.add_argument('--q', type=int)
    p.add_argument('--map', choices=('frobenius', 'trace', 'scalar', 'power'))
    p.add_argument('--a', type=int)
    p.add_argument('--input')
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser('search', parents=[common], help='run a search from a JSON spec')
    p.add_argument('spec', help='spec path or - for stdin')
    p.set_defaults(fn=cmd_search)
    return top


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (UsageError, PreconditionError, PlaneError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
