"""Direction sets and the polynomial machinery attached to them.

For an affine q-set U with a marked point R = (a0, b0), the associated
polynomial is

    f(Y) = prod_i ((a_i - a0) Y - (b_i - b0)),

whose root multiplicities encode the intersection sizes of the lines
through R.  The checkers in this module never assume their hypotheses:
they detect them from the data and report VACUOUS otherwise, so the same
drivers run on arbitrary inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldSpec, FieldError
from .plane import INF, Plane
from .secant import PreconditionError, blocking_report, tangents_at


# ---------------------------------------------------------------------------
# dense polynomials over GF(q): coefficient tuples, constant term first


def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(F: FieldSpec, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(out)


def poly_add(F: FieldSpec, a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = F.add(x, y)
    return poly_trim(out)


def poly_scale(F: FieldSpec, a, s):
    return poly_trim(F.mul(x, s) for x in a)


def poly_eval(F: FieldSpec, a, y):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, y), c)
    return acc


def poly_pow(F: FieldSpec, a, e):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = poly_mul(F, result, base)
        base = poly_mul(F, base, base)
        e >>= 1
    return result


def synthetic_div(F: FieldSpec, a, r):
    """Quotient and remainder of a divided by (Y - r)."""
    if not a:
        return (), 0
    quot = [0] * (len(a) - 1)
    acc = 0
    for i in range(len(a) - 1, -1, -1):
        acc = F.add(F.mul(acc, r), a[i])
        if i:
            quot[i - 1] = acc
    return poly_trim(quot), acc


def root_multiplicity(F: FieldSpec, a, r):
    """Multiplicity of r as a root, by repeated synthetic division."""
    m = 0
    cur = a
    while cur:
        quot, rem = synthetic_div(F, cur, r)
        if rem != 0:
            break
        m += 1
        cur = quot
    return m


# ---------------------------------------------------------------------------
# affine q-sets and directions


@dataclass(frozen=True)
class AffineQSet:
    plane: Plane
    points: tuple            # ((x, y), ...), q distinct affine points

    @property
    def is_graph(self):
        xs = {x for x, _ in self.points}
        return len(xs) == len(self.points)

    def function_table(self):
        if not self.is_graph:
            raise PreconditionError("set is not the graph of a function")
        return dict(self.points)

    def point_mask(self):
        mask = 0
        for x, y in self.points:
            mask |= 1 << self.plane.affine_point(x, y)
        return mask


def affine_qset(plane: Plane, points) -> AffineQSet:
    pts = tuple((plane.field.check(x), plane.field.check(y)) for x, y in points)
    if len(pts) != plane.q:
        raise PreconditionError(f"expected q = {plane.q} points, got {len(pts)}")
    if len(set(pts)) != len(pts):
        raise PreconditionError("duplicate affine points")
    return AffineQSet(plane=plane, points=pts)


@dataclass(frozen=True)
class DirectionSet:
    members: frozenset       # point indices on the line at infinity
    slopes: frozenset        # slope codes, INF for the vertical direction

    @property
    def n(self):
        return len(self.members)


def directions_of(U: AffineQSet) -> DirectionSet:
    """All directions determined by pairs of points of U."""
    F = U.plane.field
    slopes = set()
    pts = U.points
    for i in range(len(pts)):
        ax, ay = pts[i]
        for j in range(i + 1, len(pts)):
            bx, by = pts[j]
            if ax == bx:
                slopes.add(INF)
            else:
                slopes.add(F.div(F.sub(ay, by), F.sub(ax, bx)))
    members = frozenset(U.plane.direction_point(m) for m in slopes)
    return DirectionSet(members=members, slopes=frozenset(slopes))


def is_permutation_direction(U: AffineQSet, c: int) -> bool:
    """True iff x -> f(x) - c x permutes GF(q), i.e. (c) is not determined."""
    F = U.plane.field
    table = U.function_table()
    by_slopes = c not in directions_of(U).slopes
    images = {F.sub(y, F.mul(c, x)) for x, y in table.items()}
    by_permutation = len(images) == U.plane.q
    if by_slopes != by_permutation:
        raise RuntimeError("slope enumeration and permutation test disagree")
    return by_slopes


def redei_blocking_set(U: AffineQSet) -> int:
    """Bitmask of U together with its determined directions."""
    return U.point_mask() | U.plane.mask_of(directions_of(U).members)


# ---------------------------------------------------------------------------
# the associated polynomial and its lemma checker


def f_poly(U: AffineQSet, base) -> tuple:
    """Coefficients of prod((a_i - a0) Y - (b_i - b0)) for base point (a0, b0)."""
    F = U.plane.field
    a0, b0 = base
    if (a0, b0) not in U.points:
        raise PreconditionError("base point is not a member of the set")
    f = (1,)
    for ax, ay in U.points:
        if (ax, ay) == (a0, b0):
            continue
        f = poly_mul(F, f, (F.neg(F.sub(ay, b0)), F.sub(ax, a0)))
    return f


def _line_count_through(U: AffineQSet, base, m):
    """Points of U on the line through the base point with slope m (base included)."""
    F = U.plane.field
    a0, b0 = base
    if m == INF:
        return sum(1 for x, _ in U.points if x == a0)
    return sum(1 for x, y in U.points
               if F.mul(F.sub(x, a0), m) == F.sub(y, b0))


def verify_lemma_poly(U: AffineQSet, base) -> dict:
    """Check the three root/value clauses of the associated polynomial.

    Clause 1: m is a (k_m - 1)-fold root iff the slope-m line through the
    base meets U in k_m points.  Clause 2: f(m) = -1 for undetermined
    finite directions.  Clause 3: leading coefficient -1 when the
    vertical direction is undetermined.
    """
    F = U.plane.field
    q = U.plane.q
    f = f_poly(U, base)
    det = directions_of(U).slopes
    minus_one = F.neg(1)
    report = {'clauses': {}, 'degree': len(f) - 1}

    bad = []
    for m in range(q):
        km = _line_count_through(U, base, m)
        mult = root_multiplicity(F, f, m)
        if mult != km - 1:
            bad.append({'slope': m, 'expected': km - 1, 'got': mult})
    report['clauses']['root_multiplicity'] = (
        {'status': 'PASS'} if not bad else {'status': 'FAIL', 'witness': bad})

    undet = [m for m in range(q) if m not in det]
    if not undet:
        report['clauses']['undetermined_value'] = {
            'status': 'VACUOUS', 'reason': 'every finite direction is determined'}
    else:
        bad = [m for m in undet if poly_eval(F, f, m) != minus_one]
        report['clauses']['undetermined_value'] = (
            {'status': 'PASS'} if not bad else {'status': 'FAIL', 'witness': bad})

    if INF in det:
        report['clauses']['leading_coefficient'] = {
            'status': 'VACUOUS', 'reason': 'vertical direction is determined'}
    else:
        lead = f[q - 1] if len(f) == q else 0
        report['clauses']['leading_coefficient'] = (
            {'status': 'PASS'} if lead == minus_one
            else {'status': 'FAIL', 'witness': {'coefficient': lead}})
    report['pass'] = all(c['status'] != 'FAIL' for c in report['clauses'].values())
    return report


def g_poly(F: FieldSpec, missing, q):
    """sum_i (Y - m_i)^(q-1) - k for the undetermined finite slopes m_i."""
    g = (F.neg(F.scalar(len(missing))),)
    for m in missing:
        g = poly_add(F, g, poly_pow(F, (F.neg(m), 1), q - 1))
    return g


def check_fg_identity(U: AffineQSet, base) -> dict:
    """Coefficient-wise f = g when the base point lies on no bisecant.

    Applies when the vertical direction is undetermined and the base
    point of B = U + directions lies on no bisecant of B; VACUOUS
    otherwise.
    """
    plane = U.plane
    F = plane.field
    q = plane.q
    det = directions_of(U).slopes
    if INF in det:
        return {'status': 'VACUOUS', 'reason': 'vertical direction determined'}
    B = redei_blocking_set(U)
    pi = plane.affine_point(*base)
    bisecants = sum((plane.line_points[li] & B).bit_count() == 2
                    for li in plane.point_lines[pi])
    if bisecants:
        return {'status': 'VACUOUS', 'reason': 'base point lies on a bisecant'}
    missing = [m for m in range(q) if m not in det]
    g = g_poly(F, missing, q)
    f = f_poly(U, base)
    if f == g:
        return {'status': 'PASS'}
    return {'status': 'FAIL', 'witness': {'f': list(f), 'g': list(g)}}


# ---------------------------------------------------------------------------
# bisecant slope formula


def bisecant_slope(F: FieldSpec, m, missing):
    """Unique possible bisecant slope from a >= 4-secant direction m.

    missing holds the undetermined finite slopes m_1..m_k; requires
    p not dividing k + 1, m outside missing, nonzero denominator.
    """
    k = len(missing)
    if (k + 1) % F.p == 0:
        raise PreconditionError(f"p = {F.p} divides k + 1 = {k + 1}")
    if m in missing:
        raise PreconditionError("direction m is one of the missing slopes")
    num = F.scalar(k + 1)
    for mj in missing:
        num = F.mul(num, F.sub(m, mj))
    den = 0
    for i in range(k):
        term = 1
        for j in range(k):
            if j != i:
                term = F.mul(term, F.sub(m, missing[j]))
        den = F.add(den, term)
    if den == 0:
        raise PreconditionError("zero denominator in the slope formula")
    return F.sub(m, F.div(num, den))


# ---------------------------------------------------------------------------
# structure checker for Redei type blocking sets


def _spectrum(plane, B, ri, line_pts):
    return tuple((plane.line_points[plane.join(ri, mi)] & B).bit_count()
                 for mi in line_pts)


def verify_bisecant_theorems(plane: Plane, B: int, li: int) -> dict:
    """Bisecant-structure checks for a Redei type blocking set.

    Classifies the points off the Redei line by their bisecant count and
    tests: minimality and |line ∩ B| = 1 mod p when a zero-bisecant
    point exists; equal intersection spectra for zero-bisecant points;
    |line ∩ B| != 1 mod p when a unique-bisecant point exists; equal
    spectra for qualifying unique-bisecant pairs; the 1-or-(p^t + 1)
    secant pattern when no bisecants exist at all; and the closed-form
    bisecant slope against incidence wherever it applies.
    """
    q = plane.q
    p = plane.field.p
    size = B.bit_count()
    on_line = plane.line_points[li] & B
    c = on_line.bit_count()
    if size != q + c or not q < size <= 2 * q:
        raise PreconditionError(
            f"line {li} is not a Redei line of the {size}-set")

    line_pts = plane.line_point_list[li]
    off = plane.indices_of(B & ~plane.line_points[li])
    bis_count = {}
    bis_line = {}
    for ri in off:
        bs = [mi for mi in plane.point_lines[ri]
              if (plane.line_points[mi] & B).bit_count() == 2]
        bis_count[ri] = len(bs)
        if len(bs) == 1:
            bis_line[ri] = bs[0]
    zero_pts = [ri for ri in off if bis_count[ri] == 0]
    one_pts = [ri for ri in off if bis_count[ri] == 1]
    report = {'redei_line': li, 'intersection': c, 'size': size,
              'zero_bisecant_points': len(zero_pts),
              'unique_bisecant_points': len(one_pts), 'checks': {}}
    checks = report['checks']
    breport = blocking_report(plane, B)

    if not zero_pts:
        checks['minimality_mod_p'] = {'status': 'VACUOUS',
                                      'reason': 'no zero-bisecant point off the line'}
        checks['zero_bisecant_spectra'] = {'status': 'VACUOUS',
                                           'reason': 'no zero-bisecant point off the line'}
    else:
        ok = breport.is_minimal and c % p == 1
        checks['minimality_mod_p'] = (
            {'status': 'PASS'} if ok else
            {'status': 'FAIL', 'witness': {'isMinimal': breport.is_minimal,
                                           'intersection_mod_p': c % p}})
        ref = _spectrum(plane, B, zero_pts[0], line_pts)
        bad = [ri for ri in zero_pts[1:]
               if _spectrum(plane, B, ri, line_pts) != ref]
        checks['zero_bisecant_spectra'] = (
            {'status': 'PASS'} if not bad else
            {'status': 'FAIL', 'witness': {'points': bad}})

    if not one_pts:
        checks['unique_bisecant_mod_p'] = {'status': 'VACUOUS',
                                           'reason': 'no unique-bisecant point off the line'}
    else:
        checks['unique_bisecant_mod_p'] = (
            {'status': 'PASS'} if c % p != 1 else
            {'status': 'FAIL', 'witness': {'intersection_mod_p': c % p}})

    # pairs sharing a >= 4-secant point on the line
    spectra = {ri: _spectrum(plane, B, ri, line_pts) for ri in one_pts}
    pair_bad = []
    tested = 0
    for i in range(len(one_pts)):
        for j in range(i + 1, len(one_pts)):
            r1, r2 = one_pts[i], one_pts[j]
            s1, s2 = spectra[r1], spectra[r2]
            if any(s1[t] >= 4 and s2[t] >= 4 for t in range(len(line_pts))):
                tested += 1
                if s1 != s2:
                    pair_bad.append((r1, r2))
    checks['shared_4secant_spectra'] = (
        {'status': 'VACUOUS', 'reason': 'no qualifying pair'} if not tested else
        {'status': 'PASS'} if not pair_bad else
        {'status': 'FAIL', 'witness': {'pairs': pair_bad}})

    # pairs whose bisecants meet on the line
    pair_bad = []
    tested = 0
    for i in range(len(one_pts)):
        for j in range(i + 1, len(one_pts)):
            r1, r2 = one_pts[i], one_pts[j]
            b1, b2 = bis_line[r1], bis_line[r2]
            if b1 == b2:
                meets_on = plane.line_points[b1] & plane.line_points[li] != 0
            else:
                meets_on = plane.incident(plane.meet(b1, b2), li)
            if meets_on:
                tested += 1
                if spectra[r1] != spectra[r2]:
                    pair_bad.append((r1, r2))
    checks['bisecants_meet_on_line_spectra'] = (
        {'status': 'VACUOUS', 'reason': 'no qualifying pair'} if not tested else
        {'status': 'PASS'} if not pair_bad else
        {'status': 'FAIL', 'witness': {'pairs': pair_bad}})

    # no bisecants at all: 1 or p^t + 1 secants through each point on the line
    any_bisecant = any((lp & B).bit_count() == 2 for lp in plane.line_points)
    if any_bisecant:
        checks['power_secants'] = {'status': 'VACUOUS',
                                   'reason': 'the set has bisecants'}
    else:
        bad = []
        for mi in plane.indices_of(on_line):
            counts = {(plane.line_points[x] & B).bit_count()
                      for x in plane.point_lines[mi]}
            nontriv = sorted(counts - {1})
            if len(nontriv) != 1 or not _is_p_power_plus_one(nontriv[0], p):
                bad.append({'point': mi, 'counts': sorted(counts)})
        checks['power_secants'] = (
            {'status': 'PASS'} if not bad else
            {'status': 'FAIL', 'witness': bad})

    checks['slope_formula'] = _check_slope_formula(plane, B, li, one_pts,
                                                  bis_line, breport)
    report['pass'] = all(chk['status'] != 'FAIL' for chk in checks.values())
    return report


def _is_p_power_plus_one(v, p):
    v -= 1
    if v < p:
        return False
    while v % p == 0:
        v //= p
    return v == 1


def _check_slope_formula(plane, B, li, one_pts, bis_line, breport):
    """Compare the closed-form bisecant slope with incidence-found slopes.

    The derivation needs a minimal set; the check maps the Redei line to
    the line at infinity with an external point going to the vertical
    direction, then tests every (point, >= 4-secant direction) pair.
    """
    if not breport.is_minimal:
        return {'status': 'VACUOUS', 'reason': 'set is not minimal'}
    if not one_pts:
        return {'status': 'VACUOUS', 'reason': 'no unique-bisecant point'}
    q = plane.q
    gap = plane.line_points[li] & ~B
    if gap == 0:
        return {'status': 'VACUOUS', 'reason': 'line fully inside the set'}
    w = gap.bit_length() - 1
    v = next(pi for pi in plane.line_point_list[li] if pi != w)
    c_off = next(pi for pi in range(plane.n_points)
                 if not plane.incident(pi, li))
    M = None
    for d in range(plane.n_points):
        M = plane.frame_map(v, w, c_off, d)
        if M is not None:
            break
    # v -> (1,0,0) and w -> (0,1,0): the line maps to z = 0 with the
    # external point w at the vertical direction
    B2 = plane.apply_collineation(M, B)
    F = plane.field
    det_slopes = set()
    for m in range(q):
        if B2 >> plane.direction_point(m) & 1:
            det_slopes.add(m)
    missing = [m for m in range(q) if m not in det_slopes]
    k = len(missing)
    if (k + 1) % F.p == 0:
        return {'status': 'VACUOUS', 'reason': 'p divides k + 1'}
    tested = 0
    bad = []
    for ri in one_pts:
        r2 = plane.apply_collineation(M, 1 << ri).bit_length() - 1
        b2 = plane.image_of_line(M, bis_line[ri])
        t_dir = plane.meet(b2, plane.ell_inf)
        t_actual = plane.slope_of_infinite_point(t_dir)
        if t_actual == INF:
            continue
        for m in det_slopes:
            mline = plane.join(r2, plane.direction_point(m))
            if (plane.line_points[mline] & B2).bit_count() >= 4:
                tested += 1
                try:
                    t_formula = bisecant_slope(F, m, missing)
                except PreconditionError as exc:
                    bad.append({'point': ri, 'direction': m, 'error': str(exc)})
                    continue
                if t_formula != t_actual:
                    bad.append({'point': ri, 'direction': m,
                                'formula': t_formula, 'actual': t_actual})
    if not tested:
        return {'status': 'VACUOUS', 'reason': 'no applicable (point, direction) pair'}
    if bad:
        return {'status': 'FAIL', 'witness': bad, 'pairs_tested': tested}
    return {'status': 'PASS', 'pairs_tested': tested}


# ---------------------------------------------------------------------------
# direction-number bounds


def direction_bounds(U: AffineQSet) -> dict:
    """Direction count N and the two intersection moduli s for a graph.

    s_min is the least p^t over lines meeting the graph in p^t > 1
    points (defined when every determined-direction line through a graph
    point has >= 2 graph points); s_max is the largest p^e dividing
    every such intersection size.  The report records which branch of
    the s_max trichotomy holds and verifies the matching bound.
    """
    if not U.is_graph:
        raise PreconditionError("direction bounds require a graph")
    plane = U.plane
    q = plane.q
    p = plane.field.p
    D = directions_of(U)
    N = D.n
    Umask = U.point_mask()

    counts = []
    for di in D.members:
        for mi in plane.point_lines[di]:
            if mi == plane.ell_inf:
                continue
            c = (plane.line_points[mi] & Umask).bit_count()
            if c >= 1:
                counts.append(c)

    vmin = min(_p_valuation(c, p) for c in counts)
    s_max = p ** vmin

    report = {'N': N, 's_max': s_max}

    all_at_least_two = all(c >= 2 for c in counts)
    if not all_at_least_two:
        report['two_point_hypothesis'] = {
            'status': 'VACUOUS',
            'reason': 'some determined-direction line meets the graph in 1 point'}
    elif max(counts) == q:
        # the graph lies on a single line; the bound's proof needs a
        # second determined direction, so the case is out of scope
        report['two_point_hypothesis'] = {
            'status': 'VACUOUS', 'reason': 'graph is contained in a line'}
    else:
        powers = sorted(set(counts))
        non_power = [c for c in powers if not _is_p_power(c, p)]
        s_min = min(powers)
        report['s_min'] = s_min
        ok = (not non_power
              and q // s_min + 1 <= N and N * (s_min - 1) <= q - 1)
        report['two_point_hypothesis'] = (
            {'status': 'PASS', 'intersections': powers} if ok else
            {'status': 'FAIL', 'intersections': powers,
             'non_power_sizes': non_power})

    if s_max == q:
        report['branch'] = 'linear'
        ok = N == 1
    elif s_max == 1:
        report['branch'] = 'large'
        ok = 2 * N >= q + 3 and N <= q + 1
    else:
        report['branch'] = 'middle'
        ok = q // s_max + 1 <= N and N * (s_max - 1) <= q - 1
    report['branch_bound'] = {'status': 'PASS' if ok else 'FAIL'}
    report['pass'] = all(
        v.get('status') != 'FAIL' for v in report.values() if isinstance(v, dict))
    return report


def _p_valuation(c, p):
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def _is_p_power(c, p):
    if c < p:
        return False
    while c % p == 0:
        c //= p
    return c == 1
