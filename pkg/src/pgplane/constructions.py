"""Named point-set builders.

Builders return bitmasks over the point indices of the supplied plane
(the graph builders return an AffineQSet).  The catalog at the bottom
maps command-line names to builders plus the extra parameters each one
takes; every builder is deterministic, so a (name, parameters, order)
triple always produces the same point set.
"""

from __future__ import annotations

from .plane import Plane
from .redei import AffineQSet, affine_qset
from .secant import PreconditionError


def projective_triangle(plane: Plane) -> int:
    """Minimal blocking set of size 3(q + 1)/2 supported on a triangle.

    The points are (0, 1, a), (1, 0, a) and (-a, 1, 0) with a running
    over all squares including zero, together with (0, 0, 1).  Needs q
    odd and at least 5.
    """
    F = plane.field
    if F.q % 2 == 0 or F.q < 5:
        raise PreconditionError("needs odd order at least 5")
    mask = 1 << plane.index_of((0, 0, 1))
    for t in range(F.q):
        a = F.mul(t, t)
        mask |= 1 << plane.index_of((0, 1, a))
        mask |= 1 << plane.index_of((1, 0, a))
        mask |= 1 << plane.index_of((F.neg(a), 1, 0))
    return mask


def blokhuis_semioval(plane: Plane) -> int:
    """Semioval of size 3(q - 1)/2 on the sides of a triangle, q > 3 odd.

    The points are (0, 1, s), (s, 0, 1) and (1, s, 0) with -s running
    over the nonsquares.
    """
    F = plane.field
    if F.q % 2 == 0 or F.q <= 3:
        raise PreconditionError("needs odd order greater than 3")
    mask = 0
    for s in range(1, F.q):
        if F.is_square(F.neg(s)):
            continue
        mask |= 1 << plane.index_of((0, 1, s))
        mask |= 1 << plane.index_of((s, 0, 1))
        mask |= 1 << plane.index_of((1, s, 0))
    return mask


def symmdiff_semioval(plane: Plane) -> int:
    """Symmetric difference of two lines minus one more point per line.

    Take the lines z = 0 and x = 0, drop their common point, then drop
    the highest-index remaining point from each line.  Every remaining
    point has exactly one tangent (the line joining it to the removed
    point of the other line), giving a semioval of size 2q - 2 for
    q >= 4.
    """
    if plane.q < 4:
        raise PreconditionError("needs order at least 4")
    l1 = plane.line_index[(0, 0, 1)]          # z = 0
    l2 = plane.line_index[(1, 0, 0)]          # x = 0
    common = plane.meet(l1, l2)               # the point (0, 1, 0)
    mask = (plane.line_points[l1] | plane.line_points[l2]) & ~(1 << common)
    for li in (l1, l2):
        drop = (plane.line_points[li] & mask).bit_length() - 1
        mask &= ~(1 << drop)
    return mask


def altered_semioval(plane: Plane, bset: int, li: int, p_idx: int,
                     w_idx: int) -> int:
    """Semioval from a blocking set whose bisecants share a point.

    Given a blocking set B with a long-secant line ell meeting it in
    |B| - q points, a point P of B off ell carrying every bisecant of B
    and no trisecant, and a point W of ell outside B, the symmetric
    difference of ell and B minus {W, P} is a semioval.
    """
    q = plane.q
    size = bset.bit_count()
    on_line = plane.line_points[li] & bset
    if size - on_line.bit_count() != q or not q < size <= 2 * q:
        raise PreconditionError("the line is not a long secant of the set")
    if not bset >> p_idx & 1 or plane.incident(p_idx, li):
        raise PreconditionError("P must belong to the set and avoid the line")
    stray_bis = []
    for mi in range(plane.n_points):
        c = (plane.line_points[mi] & bset).bit_count()
        if c == 2 and not plane.incident(p_idx, mi):
            stray_bis.append(mi)
        if c == 3 and plane.incident(p_idx, mi):
            raise PreconditionError("a trisecant of the set passes through P")
    if stray_bis:
        raise PreconditionError("some bisecant of the set misses P")
    if not plane.incident(w_idx, li) or bset >> w_idx & 1:
        raise PreconditionError("W must lie on the line and outside the set")
    return (plane.line_points[li] ^ bset) & ~(1 << w_idx) & ~(1 << p_idx)


def conic_plus_external(plane: Plane) -> int:
    """A conic together with an external point, q odd.

    The conic is the parabola y = x^2 completed with its infinite point
    (0, 0, 1); the extra point (0, 1, 0) is the meet of the tangents at
    (1, 0, 0) and (0, 0, 1), hence external.
    """
    F = plane.field
    if F.q % 2 == 0:
        raise PreconditionError("needs odd order")
    mask = 1 << plane.index_of((0, 0, 1))
    for t in range(F.q):
        mask |= 1 << plane.index_of((1, t, F.mul(t, t)))
    mask |= 1 << plane.index_of((0, 1, 0))
    return mask


def linear_graph(plane: Plane, kind: str, param: int = 0) -> AffineQSet:
    """Graph of an additive map as an affine q-set.

    kind 'frobenius' gives y = x^(p^param); 'trace' gives the trace to
    the prime field; 'scalar' gives y = param * x.
    """
    F = plane.field
    if kind == 'frobenius':
        if not 0 <= param <= F.h:
            raise PreconditionError(f"frobenius power must lie in [0, {F.h}]")
        e = F.p ** param
        fn = lambda x: F.pow(x, e) if x else 0
    elif kind == 'trace':
        def fn(x):
            acc = 0
            cur = x
            for _ in range(F.h):
                acc = F.add(acc, cur)
                cur = F.pow(cur, F.p) if cur else 0
            return acc
    elif kind == 'scalar':
        F.check(param)
        fn = lambda x: F.mul(param, x)
    else:
        raise PreconditionError(f"unknown graph kind {kind!r}")
    return affine_qset(plane, [(x, fn(x)) for x in range(F.q)])


def graph_of_power(plane: Plane, e: int) -> AffineQSet:
    """Graph of y = x^e as an affine q-set."""
    F = plane.field
    if e < 1:
        raise PreconditionError("exponent must be positive")
    return affine_qset(plane,
                       [(x, F.pow(x, e) if x else 0) for x in range(F.q)])


def baer_subplane(plane: Plane) -> int:
    """Subplane coordinatized by the index-2 subfield; q must be a square.

    The subfield is the fixed set of x -> x^sqrt(q); the subplane has
    q + sqrt(q) + 1 points and meets every line in 1 or sqrt(q) + 1
    points.
    """
    F = plane.field
    if F.h % 2:
        raise PreconditionError("order is not a square")
    q0 = F.p ** (F.h // 2)
    sub = [0] + [a for a in range(1, F.q) if F.pow(a, q0) == a]
    mask = 0
    for z in sub:
        for y in sub:
            for x in sub:
                if (x, y, z) != (0, 0, 0):
                    mask |= 1 << plane.index_of((x, y, z))
    return mask


def punctured_line_pair(plane: Plane) -> int:
    """Two lines minus their common point; q must be even.

    2q points meeting every line in 0, 2 or q points, all q-secants
    concurrent at the deleted vertex.
    """
    if plane.q % 2:
        raise PreconditionError("needs even order")
    l1 = plane.line_index[(0, 0, 1)]
    l2 = plane.line_index[(1, 0, 0)]
    common = plane.meet(l1, l2)
    return (plane.line_points[l1] | plane.line_points[l2]) & ~(1 << common)


def _graph_mask(U: AffineQSet) -> int:
    return U.point_mask()


CATALOG = {
    'projective_triangle': (projective_triangle, ()),
    'blokhuis_semioval': (blokhuis_semioval, ()),
    'symmdiff_semioval': (symmdiff_semioval, ()),
    'conic_plus_external': (conic_plus_external, ()),
    'graph_frobenius': (
        lambda pl, a: _graph_mask(linear_graph(pl, 'frobenius', a)), ('a',)),
    'graph_trace': (lambda pl: _graph_mask(linear_graph(pl, 'trace')), ()),
    'graph_scalar': (
        lambda pl, a: _graph_mask(linear_graph(pl, 'scalar', a)), ('a',)),
    'graph_power': (
        lambda pl, a: _graph_mask(graph_of_power(pl, a)), ('a',)),
    'baer_subplane': (baer_subplane, ()),
    'punctured_line_pair': (punctured_line_pair, ()),
}


def build(plane: Plane, name: str, **params) -> int:
    if name not in CATALOG:
        raise PreconditionError(f"unknown construction {name!r}")
    fn, argnames = CATALOG[name]
    args = []
    for an in argnames:
        if an not in params or params[an] is None:
            raise PreconditionError(
                f"construction {name!r} needs parameter {an!r}")
        args.append(params[an])
    return fn(plane, *args)
