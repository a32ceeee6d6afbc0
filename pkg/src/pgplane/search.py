"""Isomorph-reduced exhaustive searches over point sets.

The engine builds complete orbit-representative lists level by level:
the representatives of (k+1)-sets are obtained by extending every
representative k-set by every outside point and deduplicating by
canonical form.  Any (k+1)-set minus a point is equivalent to some
representative k-set, so the level is complete.  Predicate searches run
a depth-first completion from a base level, with pruning rules that are
safe because each pruned quantity moves monotonically as points are
added.  Results carry an `exhaustive` certificate that is set only when
the whole reduced tree was traversed within budget.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .plane import Plane, plane_for_q
from .secant import PreconditionError, is_semioval, odd_secant_count
from . import constructions


@dataclass
class SearchSpec:
    q: int
    n: int
    objective: str                     # min_odd_secants | enumerate_predicate
    predicate: str | None = None       # semioval | blokhuis_pattern | peter_dual
    parameters: dict = field(default_factory=dict)
    reduction: str = 'full_canonical'  # none | lexmin_stabilizer | full_canonical
    node_budget: int = 10 ** 9
    time_budget: float = 7200.0


@dataclass
class SearchResult:
    optimum: int | None
    witnesses: list               # sorted masks, pairwise inequivalent
    nodes_explored: int
    exhaustive: bool
    details: dict = field(default_factory=dict)


class _Budget:
    def __init__(self, nodes, seconds):
        self.node_limit = nodes
        self.deadline = time.monotonic() + seconds
        self.nodes = 0
        self.blown = False

    def tick(self, k=1):
        self.nodes += k
        if self.nodes > self.node_limit:
            self.blown = True
        elif self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            self.blown = True
        return not self.blown


def _canon(plane, mask):
    cache = getattr(plane, '_canon_cache', None)
    if cache is None:
        cache = {}
        plane._canon_cache = cache
    v = cache.get(mask)
    if v is None:
        v = plane.canonical_form(mask)
        cache[mask] = v
    return v


def orbit_reps(plane: Plane, k: int, budget: _Budget | None = None):
    """Representatives of every collineation orbit of k-point sets.

    Levels are cached on the plane and extended on demand; the result
    list is None if the budget ran out before the level was finished.
    """
    levels = getattr(plane, '_rep_levels', None)
    if levels is None:
        levels = [[0]]
        plane._rep_levels = levels
    while len(levels) <= k:
        prev = levels[-1]
        seen = {}
        for base in prev:
            for x in range(plane.n_points):
                if base >> x & 1:
                    continue
                cand = base | 1 << x
                if budget is not None and not budget.tick():
                    return None
                key = _canon(plane, cand)
                old = seen.get(key)
                if old is None or cand < old:
                    seen[key] = cand
        levels.append(sorted(seen.values()))
    return levels[k]


# ---------------------------------------------------------------------------
# brute-force oracles (tiny planes only)


def brute_force_sets(plane: Plane, n: int):
    for comb in itertools.combinations(range(plane.n_points), n):
        mask = 0
        for x in comb:
            mask |= 1 << x
        yield mask


def brute_min_odd_secants(plane: Plane, n: int) -> SearchResult:
    best = None
    wits = {}
    nodes = 0
    for mask in brute_force_sets(plane, n):
        nodes += 1
        d = odd_secant_count(plane, mask)
        if best is None or d < best:
            best = d
            wits = {}
        if d == best:
            key = _canon(plane, mask)
            if key not in wits or mask < wits[key]:
                wits[key] = mask
    return SearchResult(best, sorted(wits.values()), nodes, True)


def brute_enumerate_semiovals(plane: Plane, n: int) -> SearchResult:
    wits = {}
    nodes = 0
    for mask in brute_force_sets(plane, n):
        nodes += 1
        if is_semioval(plane, mask):
            key = _canon(plane, mask)
            if key not in wits or mask < wits[key]:
                wits[key] = mask
    return SearchResult(None, sorted(wits.values()), nodes, True)


# ---------------------------------------------------------------------------
# public searches


def min_odd_secants(q: int, n: int, node_budget=10 ** 9,
                    time_budget=3600.0) -> SearchResult:
    plane = plane_for_q(q)
    if not 1 <= n <= q * q:
        raise PreconditionError(f"target size {n} out of range for q = {q}")
    budget = _Budget(node_budget, time_budget)
    reps = orbit_reps(plane, n, budget)
    if reps is None:
        # budget ran out mid-level: report the best bound over what exists
        partial = plane._rep_levels[-1] if len(plane._rep_levels) > n else []
        best = min((odd_secant_count(plane, m) for m in partial), default=None)
        return SearchResult(best, [], budget.nodes, False)
    best = None
    wits = []
    for mask in reps:
        d = odd_secant_count(plane, mask)
        if best is None or d < best:
            best = d
            wits = []
        if d == best:
            wits.append(mask)
    return SearchResult(best, sorted(wits), budget.nodes, True)


_BASE_LEVEL = 6


def enumerate_semiovals(q: int, size: int, node_budget=10 ** 9,
                        time_budget=7200.0) -> SearchResult:
    """Complete orbit-representative list of the semiovals of a size.

    Builds orbit representatives up to a base level, then completes each
    by a depth-first scan with monotone-safe prunes: line intersections
    stay at most a = size - q + 1; every member keeps at least one line
    that could still end as its tangent; a member with t candidate
    tangents needs t - 1 further points to kill the surplus; a member
    on more than a - 2 lines with three or more points can never reach
    the exact tangent count.
    """
    plane = plane_for_q(q)
    if size < q + 1:
        raise PreconditionError("semiovals have at least q + 1 points")
    budget = _Budget(node_budget, time_budget)
    level = min(size, _BASE_LEVEL)
    reps = orbit_reps(plane, level, budget)
    if reps is None:
        return SearchResult(None, [], budget.nodes, False)
    a = size - q + 1
    wits = {}
    for base in reps:
        if not _semioval_dfs(plane, base, size, a, budget, wits):
            return SearchResult(None, sorted(wits.values()),
                                budget.nodes, False)
    return SearchResult(None, sorted(wits.values()), budget.nodes, True)


def _semioval_dfs(plane, base, size, a, budget, wits):
    """Complete base to every semioval of the target size; False on budget."""
    n_points = plane.n_points
    line_points = plane.line_points
    point_lines = plane.point_lines
    counts = [0] * n_points           # per line (lines share point indexing)
    members = []
    for x in plane.indices_of(base):
        members.append(x)
        for li in point_lines[x]:
            counts[li] += 1

    def feasible(remaining):
        for pper in members:
            t = 0
            multi = 0
            for li in point_lines[pper]:
                c = counts[li]
                if c == 1:
                    t += 1
                elif c >= 3:
                    multi += 1
            if t == 0 or t - 1 > remaining or multi > a - 2:
                return False
        return True

    found = []

    def rec(lo, remaining):
        if not budget.tick():
            return False
        if remaining == 0:
            if all(sum(counts[li] == 1 for li in point_lines[x]) == 1
                   for x in members):
                found.append(sum(1 << x for x in members))
            return True
        if not feasible(remaining):
            return True
        for x in range(lo, n_points - remaining + 1):
            if base >> x & 1:
                continue
            over = False
            for li in point_lines[x]:
                counts[li] += 1
                if counts[li] > a:
                    over = True
            members.append(x)
            ok = over or rec(x + 1, remaining - 1)
            members.pop()
            for li in point_lines[x]:
                counts[li] -= 1
            if not ok:
                return False
        return True

    complete = rec(0, size - len(members))
    for mask in found:
        key = _canon(plane, mask)
        if key not in wits or mask < wits[key]:
            wits[key] = mask
    return complete


def verify_blokhuis_classification(q: int, a: int, **kw) -> SearchResult:
    """Semiovals of size q - 1 + a whose lines carry 0, 1, 2 or a points.

    Every witness must be equivalent to the two-line symmetric
    difference or to the triangle-supported semioval; a witness outside
    both families is an error.
    """
    if a <= 2:
        raise PreconditionError("the secant parameter a must exceed 2")
    if q % 2 == 0:
        raise PreconditionError("needs odd order")
    plane = plane_for_q(q)
    result = enumerate_semiovals(q, q - 1 + a, **kw)
    keep = []
    for mask in result.witnesses:
        sizes = {(lp & mask).bit_count() for lp in plane.line_points}
        if sizes <= {0, 1, 2, a}:
            keep.append(mask)
    known = set()
    if q - 1 + a == 2 * q - 2:
        known.add(_canon(plane, constructions.symmdiff_semioval(plane)))
    if q % 2 and q > 3 and q - 1 + a == 3 * (q - 1) // 2:
        known.add(_canon(plane, constructions.blokhuis_semioval(plane)))
    for mask in keep:
        if _canon(plane, mask) not in known:
            raise RuntimeError(
                "a restricted-intersection semioval matches neither family")
    return SearchResult(None, keep, result.nodes_explored, result.exhaustive)


def verify_peter_nonexistence(q: int, node_budget=10 ** 9,
                              time_budget=1800.0) -> SearchResult:
    """Search for dual configurations that a counting argument forbids.

    For each odd k and each m in [4, q - 1], look for a (q + k)-set B
    with an outside point O lying on exactly m k-secants of B while
    exactly q - k odd-secants of B avoid O.  Pairs where the m k-secants
    would already need more than q + k points are settled by counting;
    the rest are settled by exhaustive orbit search.
    """
    if q % 2 == 0:
        raise PreconditionError("needs odd order")
    plane = plane_for_q(q)
    budget = _Budget(node_budget, time_budget)
    pairs = {}
    witnesses = []
    exhaustive = True
    for k in range(1, q + 1, 2):
        for m in range(4, q):
            if m * k > q + k:
                pairs[(k, m)] = 'counting'
                continue
            reps = orbit_reps(plane, q + k, budget)
            if reps is None:
                pairs[(k, m)] = 'budget'
                exhaustive = False
                continue
            hits = [mask for mask in reps
                    if _peter_witness(plane, mask, k, m)]
            witnesses.extend(hits)
            pairs[(k, m)] = 'search'
    return SearchResult(None, sorted(witnesses), budget.nodes, exhaustive,
                        details={'pairs': {f"{k},{m}": v
                                           for (k, m), v in pairs.items()}})


def _peter_witness(plane, mask, k, m):
    qk = plane.q - k
    for o in range(plane.n_points):
        if mask >> o & 1:
            continue
        ksec = sum((plane.line_points[li] & mask).bit_count() == k
                   for li in plane.point_lines[o])
        if ksec != m:
            continue
        through_o = 0
        for li in plane.point_lines[o]:
            through_o |= 1 << li
        avoid = sum((plane.line_points[li] & mask).bit_count() % 2 == 1
                    for li in range(plane.n_points)
                    if not through_o >> li & 1)
        if avoid == qk:
            return True
    return False


def search_generic(spec: SearchSpec) -> SearchResult:
    """Dispatch a search specification to the matching engine.

    The lexmin_stabilizer reduction runs the same canonical-form
    engine as full_canonical; reduction 'none' runs the unreduced
    brute-force scan and is only sensible on tiny planes.
    """
    if spec.node_budget <= 0 or spec.time_budget <= 0:
        raise PreconditionError("budget must be positive")
    plane = plane_for_q(spec.q)
    if spec.objective == 'min_odd_secants':
        if spec.reduction == 'none':
            return brute_min_odd_secants(plane, spec.n)
        return min_odd_secants(spec.q, spec.n, spec.node_budget,
                               spec.time_budget)
    if spec.objective != 'enumerate_predicate':
        raise PreconditionError(f"unknown objective {spec.objective!r}")
    if spec.predicate == 'semioval':
        if spec.reduction == 'none':
            return brute_enumerate_semiovals(plane, spec.n)
        return enumerate_semiovals(spec.q, spec.n, spec.node_budget,
                                   spec.time_budget)
    if spec.predicate == 'blokhuis_pattern':
        if 'a' not in spec.parameters:
            raise PreconditionError("blokhuis_pattern needs parameter 'a'")
        return verify_blokhuis_classification(
            spec.q, spec.parameters['a'],
            node_budget=spec.node_budget, time_budget=spec.time_budget)
    if spec.predicate == 'peter_dual':
        return verify_peter_nonexistence(spec.q, spec.node_budget,
                                         spec.time_budget)
    raise PreconditionError(f"unknown predicate {spec.predicate!r}")
