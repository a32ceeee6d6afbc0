"""Indexed model of PG(2, q).

Points and lines are homogeneous coordinate triples normalized so the
first nonzero coordinate is 1, indexed by lexicographic order of the
normalized triples (element codes).  With coordinates (x, y, z) and line
coefficients [a, b, c] (incidence ax + by + cz = 0), the line at
infinity is [0, 0, 1], the affine point (x, y) embeds as (x, y, 1), the
direction of slope m is (1, m, 0) and the vertical direction is
(0, 1, 0).

Incidence is stored as one bitset of point indices per line, so point
sets are plain integers used as bitmasks throughout the package.
"""

from __future__ import annotations

import functools
import itertools

from .gf import FieldSpec, FieldError, field_create

# sentinel for the vertical direction / slope of vertical lines
INF = 'inf'


class PlaneError(ValueError):
    pass


class Plane:
    """PG(2, q) with precomputed point/line tables and incidence bitsets."""

    def __init__(self, field: FieldSpec):
        self.field = field
        q = field.q
        self.q = q
        self.order = q
        self.n_points = q * q + q + 1

        triples = [(0, 0, 1)]
        triples += [(0, 1, c) for c in range(q)]
        triples += [(1, b, c) for b in range(q) for c in range(q)]
        triples.sort()
        self.points = triples
        self.point_index = {v: i for i, v in enumerate(triples)}
        # the plane is self-dual under coordinate transposition: the line
        # with coefficient triple t gets the same index as the point t
        self.lines = triples
        self.line_index = self.point_index

        F = field
        line_points = []
        line_point_list = []
        point_lines = [[] for _ in range(self.n_points)]
        for li, (a, b, c) in enumerate(self.lines):
            mask = 0
            pts = []
            for pi, (x, y, z) in enumerate(triples):
                s = F.add(F.add(F.mul(a, x), F.mul(b, y)), F.mul(c, z))
                if s == 0:
                    mask |= 1 << pi
                    pts.append(pi)
                    point_lines[pi].append(li)
            line_points.append(mask)
            line_point_list.append(tuple(pts))
        self.line_points = line_points
        self.line_point_list = line_point_list
        self.point_lines = [tuple(ls) for ls in point_lines]
        self.all_mask = (1 << self.n_points) - 1
        self.ell_inf = self.line_index[(0, 0, 1)]

    # -- coordinates --------------------------------------------------------

    def normalize(self, v):
        F = self.field
        for c in v:
            if c:
                if c == 1:
                    return tuple(F.check(x) for x in v)
                s = F.inv(c)
                return tuple(F.mul(s, x) for x in v)
        raise PlaneError("zero triple has no projective class")

    def index_of(self, v):
        return self.point_index[self.normalize(v)]

    def affine_point(self, x, y):
        """Index of the affine point (x, y)."""
        return self.index_of((x, y, 1))

    def affine_coords(self, pi):
        """Cartesian coordinates of an affine point, or None on the line at infinity."""
        x, y, z = self.points[pi]
        if z == 0:
            return None
        F = self.field
        s = F.inv(z)
        return (F.mul(x, s), F.mul(y, s))

    def direction_point(self, m):
        """Index of the infinite point (m); m is a slope code or INF."""
        if m == INF:
            return self.point_index[(0, 1, 0)]
        return self.index_of((1, self.field.check(m), 0))

    def slope_of_infinite_point(self, pi):
        x, y, z = self.points[pi]
        if z != 0:
            raise PlaneError(f"point {pi} is not on the line at infinity")
        if x == 0:
            return INF
        return self.field.div(y, x)

    def direction_of(self, pi, qi):
        """Slope of the line joining two distinct affine points (INF if vertical)."""
        if pi == qi:
            raise PlaneError("direction of a point with itself")
        a = self.affine_coords(pi)
        b = self.affine_coords(qi)
        if a is None or b is None:
            raise PlaneError("direction_of expects affine points")
        F = self.field
        if a[0] == b[0]:
            return INF
        return F.div(F.sub(a[1], b[1]), F.sub(a[0], b[0]))

    # -- incidence algebra --------------------------------------------------

    def _cross(self, u, v):
        F = self.field
        return (F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
                F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
                F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])))

    def join(self, pi, qi):
        """Index of the unique line through two distinct points."""
        if pi == qi:
            raise PlaneError("join of identical points")
        return self.line_index[self.normalize(self._cross(self.points[pi], self.points[qi]))]

    def meet(self, li, mi):
        """Index of the unique common point of two distinct lines."""
        if li == mi:
            raise PlaneError("meet of identical lines")
        return self.point_index[self.normalize(self._cross(self.lines[li], self.lines[mi]))]

    def incident(self, pi, li):
        return bool(self.line_points[li] >> pi & 1)

    def mask_of(self, indices):
        mask = 0
        for i in indices:
            mask |= 1 << i
        return mask

    def indices_of(self, mask):
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    # -- collineations ------------------------------------------------------

    def mat_vec(self, M, v):
        F = self.field
        return tuple(
            F.add(F.add(F.mul(M[r][0], v[0]), F.mul(M[r][1], v[1])), F.mul(M[r][2], v[2]))
            for r in range(3))

    def det3(self, M):
        F = self.field
        (a, b, c), (d, e, f), (g, h, i) = M
        t1 = F.mul(a, F.sub(F.mul(e, i), F.mul(f, h)))
        t2 = F.mul(b, F.sub(F.mul(d, i), F.mul(f, g)))
        t3 = F.mul(c, F.sub(F.mul(d, h), F.mul(e, g)))
        return F.add(F.sub(t1, t2), t3)

    def mat_inv(self, M):
        F = self.field
        det = self.det3(M)
        if det == 0:
            raise PlaneError("singular matrix")
        s = F.inv(det)
        (a, b, c), (d, e, f), (g, h, i) = M
        cof = (
            (F.sub(F.mul(e, i), F.mul(f, h)), F.sub(F.mul(c, h), F.mul(b, i)), F.sub(F.mul(b, f), F.mul(c, e))),
            (F.sub(F.mul(f, g), F.mul(d, i)), F.sub(F.mul(a, i), F.mul(c, g)), F.sub(F.mul(c, d), F.mul(a, f))),
            (F.sub(F.mul(d, h), F.mul(e, g)), F.sub(F.mul(b, g), F.mul(a, h)), F.sub(F.mul(a, e), F.mul(b, d))),
        )
        return tuple(tuple(F.mul(s, x) for x in row) for row in cof)

    def apply_collineation(self, M, mask):
        """Image bitmask of a point set under the projectivity induced by M."""
        if self.det3(M) == 0:
            raise PlaneError("singular matrix induces no collineation")
        out = 0
        for pi in self.indices_of(mask):
            out |= 1 << self.index_of(self.mat_vec(M, self.points[pi]))
        return out

    def image_of_line(self, M, li):
        """Index of the image line under the projectivity induced by M."""
        pts = self.line_point_list[li]
        a = self.index_of(self.mat_vec(M, self.points[pts[0]]))
        b = self.index_of(self.mat_vec(M, self.points[pts[1]]))
        return self.join(a, b)

    def frame_map(self, ai, bi, ci, di):
        """Matrix sending the frame (A,B,C,D) to (1,0,0),(0,1,0),(0,0,1),(1,1,1).

        Returns None when the four points are not in general position.
        """
        A, B, C, D = (self.points[i] for i in (ai, bi, ci, di))
        cols = ((A[0], B[0], C[0]), (A[1], B[1], C[1]), (A[2], B[2], C[2]))
        if self.det3(cols) == 0:
            return None
        inv = self.mat_inv(cols)
        coeff = self.mat_vec(inv, D)
        if 0 in coeff:
            return None
        F = self.field
        return tuple(tuple(F.mul(F.inv(coeff[r]), x) for x in inv[r]) for r in range(3))

    def standard_frame(self):
        return tuple(self.point_index[v] for v in
                     ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)))

    # -- canonical forms under PGL(3, q) ------------------------------------

    def canonical_form(self, mask):
        """Encoding constant on PGL(3,q)-orbits of point sets.

        Two sets are projectively equivalent iff their encodings are
        equal.  Sets containing a frame (four points, no three collinear)
        are minimized over all maps sending an internal frame to the
        standard frame; the remaining degenerate shapes (subsets of a
        line plus at most one extra point) are classified via the induced
        PGL(2, q) action on a line.
        """
        pts = self.indices_of(mask)
        n = len(pts)
        if n < 4:
            return self._canonical_degenerate(pts)
        F = self.field
        coords = [self.points[i] for i in pts]
        best = None
        getidx = self.point_index.get
        for ai, bi, ci in itertools.permutations(range(n), 3):
            A, B, C = coords[ai], coords[bi], coords[ci]
            cols = ((A[0], B[0], C[0]), (A[1], B[1], C[1]), (A[2], B[2], C[2]))
            if self.det3(cols) == 0:
                continue
            inv = self.mat_inv(cols)
            for di in range(n):
                if di == ai or di == bi or di == ci:
                    continue
                coeff = self.mat_vec(inv, coords[di])
                if 0 in coeff:
                    continue
                M = tuple(tuple(F.mul(F.inv(coeff[r]), x) for x in inv[r])
                          for r in range(3))
                img = sorted(getidx(self.normalize(self.mat_vec(M, v))) for v in coords)
                if best is None or img < best:
                    best = img
        if best is None:
            return self._canonical_degenerate(pts)
        return tuple(best)

    def _canonical_degenerate(self, pts):
        n = len(pts)
        if n == 0:
            return ('empty',)
        if n == 1:
            return ('point',)
        if n == 2:
            return ('pair',)
        # locate the line carrying all but at most one of the points
        carrier = None
        for i, j in itertools.combinations(range(min(n, 3)), 2):
            li = self.join(pts[i], pts[j])
            on = [p for p in pts if self.incident(p, li)]
            if len(on) >= n - 1:
                carrier = (li, on)
                break
        if carrier is None:
            # no frame and no near-collinear carrier: a triangle
            if n == 3:
                return ('triangle',)
            raise PlaneError("degenerate canonicalization fell through")
        li, on = carrier
        off = [p for p in pts if p not in on]
        if len(off) > 1:
            raise PlaneError("degenerate set with two points off its carrier line")
        if n == 3 and not off:
            return ('collinear3',)
        A, B = on[0], on[1]
        if off:
            C = off[0]
        else:
            C = next(p for p in range(self.n_points) if not self.incident(p, li))
        D = next(p for p in range(self.n_points)
                 if self.frame_map(A, B, C, p) is not None)
        M = self.frame_map(A, B, C, D)
        # A -> (1,0,0) and B -> (0,1,0), so the carrier maps onto z = 0;
        # parametrize its points by slope, with q standing for (0,1,0)
        params = []
        for p in on:
            v = self.normalize(self.mat_vec(M, self.points[p]))
            m = self.slope_of_infinite_point(self.point_index[v])
            params.append(self.q if m == INF else m)
        trace = self._min_line_trace(frozenset(params))
        tag = 'line+point' if off else 'line'
        return (tag, n, trace)

    def _min_line_trace(self, params):
        """Lexicographic minimum of a parameter set under PGL(2, q)."""
        best = None
        for img in (_apply_moebius(self.field, g, params)
                    for g in _pgl2_elements(self.field)):
            if best is None or img < best:
                best = img
        return best


def _pgl2_elements(F):
    key = (F.p, F.h)
    cached = _PGL2_CACHE.get(key)
    if cached is None:
        q = F.q
        cached = []
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    for d in range(q):
                        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
                            continue
                        # one representative per scalar class
                        lead = next(x for x in (a, b, c, d) if x)
                        if lead != 1:
                            continue
                        cached.append((a, b, c, d))
        _PGL2_CACHE[key] = cached
    return cached


_PGL2_CACHE = {}


def _apply_moebius(F, g, params):
    """Image of a parameter set on GF(q) + {q = infinity} under x -> (ax+b)/(cx+d)."""
    a, b, c, d = g
    q = F.q
    out = []
    for x in params:
        if x == q:
            out.append(q if c == 0 else F.div(a, c))
            continue
        den = F.add(F.mul(c, x), F.mul(d, 1))
        if den == 0:
            out.append(q)
        else:
            out.append(F.div(F.add(F.mul(a, x), b), den))
    out.sort()
    return tuple(out)


@functools.lru_cache(maxsize=None)
def plane_create(p: int, h: int) -> Plane:
    """Cached plane over the deterministic GF(p^h)."""
    return Plane(field_create(p, h))


def plane_for_q(q: int) -> Plane:
    """Plane of a prime-power order given as a plain integer."""
    for p in range(2, q + 1):
        if q % p == 0:
            h = 0
            t = q
            while t % p == 0:
                t //= p
                h += 1
            if t != 1:
                break
            return plane_create(p, h)
    raise FieldError(f"{q} is not a prime power")
