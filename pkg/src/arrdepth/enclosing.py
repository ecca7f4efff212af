"""k-enclosure certificates and exact enclosing depth, primal and dual.

A sub-arrangement k-encloses q when it splits into d+1 disjoint groups of
size k such that every transversal (one hyperplane per group) gives q
positive regression depth, which is exactly convex-hull membership of q in
the transversal's dual points. Validity of a transversal therefore depends
only on the underlying (d+1)-set, so the search memoizes per set and builds
groups so that the last group is drawn from the indices compatible with every
cross-group choice made so far.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from . import linalg, linprog
from .errors import CertificateError, ExactBudgetExceeded
from .geometry import Arrangement, evaluate, point


@dataclass(frozen=True)
class EnclosureCertificate:
    k: int
    groups: tuple  # d+1 disjoint index tuples, each of size k
    query: tuple


def _strict_interior(points, q):
    """q in the interior of the simplex spanned by d+1 affinely independent points."""
    pts = [point(p) for p in points]
    q = point(q)
    d = len(q)
    if len(pts) != d + 1:
        return False
    base = pts[0]
    diffs = [linalg.vsub(p, base) for p in pts[1:]]
    if linalg.rank(diffs) < d:
        return False
    A = [[diffs[j][i] for j in range(d)] for i in range(d)]
    sol = linalg.solve(A, list(linalg.vsub(q, base)))
    if sol is None:
        return False
    lam0 = Fraction(1) - sum(sol)
    return lam0 > 0 and all(c > 0 for c in sol)


def _transversal_test(duals, q, strict):
    if strict:
        return _strict_interior(duals, q)
    return linprog.hull_membership_small(duals, q)


def verify_enclosure(arr: Arrangement, cert: EnclosureCertificate, strict=False) -> bool:
    """Exact check of all k^(d+1) transversals of a certificate."""
    d = arr.dimension
    n = len(arr)
    groups = tuple(tuple(g) for g in cert.groups)
    if len(groups) != d + 1:
        raise CertificateError(f"expected {d + 1} groups, got {len(groups)}")
    seen = set()
    for g in groups:
        if len(g) != cert.k:
            raise CertificateError("group sizes must all equal k")
        for i in g:
            if not 0 <= i < n:
                raise CertificateError(f"index {i} out of range")
            if i in seen:
                raise CertificateError(f"index {i} appears in two groups")
            seen.add(i)
    q = point(cert.query)
    ev = evaluate(arr, q)
    for choice in product(*groups):
        duals = [ev.dual_points[i] for i in choice]
        if not _transversal_test(duals, q, strict):
            return False
    return True


def _search_max_k(n, d, valid, k_cap, node_budget=2_000_000):
    """Largest k admitting d+1 disjoint k-groups with all transversals valid.

    `valid` decides a frozenset of d+1 indices. Groups are enumerated with the
    smallest-first canonical order; the final group is any k-subset of the
    indices compatible with all transversals through the chosen groups.
    """
    nodes = 0
    best = 0

    def transversals_ok(chosen, h):
        for combo in product(*chosen):
            if not valid(frozenset(combo + (h,))):
                return False
        return True

    def extend(chosen, used, k):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ExactBudgetExceeded("enclosure search budget exhausted", bound=best)
        if len(chosen) == d:
            allowed = [h for h in range(n) if h not in used and transversals_ok(chosen, h)]
            if len(allowed) < k:
                return None
            return chosen + (tuple(allowed[:k]),)
        start = min(chosen[-1]) + 1 if chosen else 0
        for first in range(start, n):
            if first in used:
                continue
            rest = [h for h in range(n) if h > first and h not in used]
            for tail in combinations(rest, k - 1):
                group = (first,) + tail
                result = extend(chosen + (group,), used | set(group), k)
                if result is not None:
                    return result
        return None

    for k in range(k_cap, 0, -1):
        found = extend(tuple(), frozenset(), k)
        if found is not None:
            best = k
            return k, found
    return 0, None


def hyperplane_enclosing_depth(arr: Arrangement, q, strict=False, exact_threshold=12):
    """Maximum k such that a sub-arrangement k-encloses q, with a certificate.

    Exact for n <= exact_threshold and d <= 3; larger instances raise
    ExactBudgetExceeded carrying the best lower bound found.
    """
    d = arr.dimension
    n = len(arr)
    q = point(q)
    if n < d + 1:
        return 0, None
    ev = evaluate(arr, q)
    memo = {}

    def valid(subset):
        hit = memo.get(subset)
        if hit is None:
            duals = [ev.dual_points[i] for i in sorted(subset)]
            hit = _transversal_test(duals, q, strict)
            memo[subset] = hit
        return hit

    if n > exact_threshold or d > 3:
        bound = 0
        for combo in combinations(range(n), d + 1):
            if valid(frozenset(combo)):
                bound = 1
                break
        raise ExactBudgetExceeded(f"n={n}, d={d} exceeds the exact enclosing-depth budget", bound=bound)

    k, groups = _search_max_k(n, d, valid, n // (d + 1))
    if k == 0:
        return 0, None
    return k, EnclosureCertificate(k, groups, q)


def point_enclosing_depth(points, q, strict=False, exact_threshold=12):
    """Enclosing depth of q in a point set (the dual-side companion measure)."""
    pts = [point(p) for p in points]
    q = point(q)
    n = len(pts)
    if n == 0:
        return 0
    d = len(q)
    if n < d + 1:
        return 0
    if n > exact_threshold or d > 3:
        raise ExactBudgetExceeded(f"n={n}, d={d} exceeds the exact enclosing-depth budget")
    memo = {}

    def valid(subset):
        hit = memo.get(subset)
        if hit is None:
            hit = _transversal_test([pts[i] for i in sorted(subset)], q, strict)
            memo[subset] = hit
        return hit

    k, _ = _search_max_k(n, d, valid, n // (d + 1))
    return k
