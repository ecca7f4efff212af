"""Exact depth measures for weighted hyperplane arrangements.

Ray algebra used throughout: the ray {q + t u, t >= 0} meets the hyperplane
a.x = b (or is parallel to it) if and only if s * (a.u) <= 0, where
s = a.q - b. The open variant counts a hyperplane iff s * (a.u) < 0 (a proper
crossing at t > 0) or a.u = 0 (parallel, including rays inside the
hyperplane). Both counts therefore depend only on the signs of the residuals
and of a.u, which makes them constant on the cells of the central arrangement
{u : a.u = 0} and lets the minimum over all rays be taken over one exact
representative per full-dimensional cell: moving u from a cell boundary into
an adjacent cell never increases either count.
"""

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from . import linalg, linprog
from .cells import direction_cells, enumerate_faces
from .errors import DimensionError, ExactBudgetExceeded, InvalidDirection, NoDeepPoint
from .geometry import evaluate, is_general_position, point


class MeasureKind(Enum):
    RD = "rd"
    RD_OPEN = "rd-open"
    TRD = "trd"
    HTVD = "htvd"
    HED = "hed"


@dataclass(frozen=True)
class DirectionalCount:
    """Weighted ray counts for one direction under both counting rules."""

    direction: tuple
    count_closed: Fraction
    count_open: Fraction


@dataclass(frozen=True)
class DepthCertificate:
    """A witness direction achieving the reported minimizing ray count."""

    direction: tuple
    count: Fraction
    rule: str  # "closed" | "open" | "open-perturbed"


def _sign(x):
    return 1 if x > 0 else -1 if x < 0 else 0


def _residual_signs(arr, q):
    ev = evaluate(arr, q)
    return [_sign(s) for s in ev.residuals], ev


def _signs_at(arr, q):
    """Residual signs without materializing dual points."""
    q = point(q)
    if len(q) != arr.dimension:
        raise DimensionError(f"query has dimension {len(q)}, expected {arr.dimension}")
    return [_sign(h.residual(q)) for h in arr]


_DIRECTION_CACHE: dict = {}


def _candidate_directions(arr):
    """Direction-cell representatives plus the sign matrix sign(a_h . u), memoized.

    Both depend only on the normals, so queries against a fixed arrangement
    (face labeling, deepest-point scans) reuse them.
    """
    key = (arr.dimension, tuple(h.normal for h in arr))
    hit = _DIRECTION_CACHE.get(key)
    if hit is None:
        if len(_DIRECTION_CACHE) > 4096:
            _DIRECTION_CACHE.clear()
        candidates = direction_cells([h.normal for h in arr], arr.dimension)
        csigns = [tuple(_sign(linalg.dot(h.normal, u)) for h in arr) for u in candidates]
        hit = (candidates, csigns)
        _DIRECTION_CACHE[key] = hit
    return hit


def _count_signs(arr, s_signs, u, rule):
    total = Fraction(0)
    for h, ss in zip(arr, s_signs):
        cs = _sign(linalg.dot(h.normal, u))
        if rule == "closed":
            if ss * cs <= 0:
                total += h.weight
        else:
            if ss * cs < 0 or cs == 0:
                total += h.weight
    return total


def directional_count(arr, q, u, rule="closed"):
    """Exact weighted count of hyperplanes hit by (or parallel to) the ray q + t u."""
    u = point(u)
    if all(c == 0 for c in u):
        raise InvalidDirection("zero direction")
    if len(u) != arr.dimension:
        raise DimensionError(f"direction has dimension {len(u)}, expected {arr.dimension}")
    if rule not in ("closed", "open"):
        raise ValueError(f"unknown rule {rule!r}")
    s_signs = _signs_at(arr, q)
    return _count_signs(arr, s_signs, u, rule)


def count_both(arr, q, u):
    u = point(u)
    if all(c == 0 for c in u):
        raise InvalidDirection("zero direction")
    s_signs = _signs_at(arr, q)
    return DirectionalCount(
        u,
        _count_signs(arr, s_signs, u, "closed"),
        _count_signs(arr, s_signs, u, "open"),
    )


def _unit_direction(d):
    e = [Fraction(0)] * d
    e[0] = Fraction(1)
    return tuple(e)


def _min_count(arr, s_signs, rule):
    """Minimize the ray count over all directions, given fixed residual signs."""
    candidates, csigns = _candidate_directions(arr)
    weights = [h.weight for h in arr]
    best = None
    best_u = None
    closed = rule == "closed"
    for u, crow in zip(candidates, csigns):
        c = Fraction(0)
        for w, ss, cs in zip(weights, s_signs, crow):
            if (ss * cs <= 0) if closed else (ss * cs < 0 or cs == 0):
                c += w
        if best is None or c < best:
            best, best_u = c, u
    if best is None:
        best, best_u = Fraction(0), _unit_direction(arr.dimension)
    return best, best_u


def regression_depth(arr, q):
    """Exact weighted regression depth with a witness direction."""
    if len(arr) == 0:
        u = _unit_direction(arr.dimension)
        return Fraction(0), DepthCertificate(u, Fraction(0), "closed")
    s_signs = _signs_at(arr, q)
    best, u = _min_count(arr, s_signs, "closed")
    return best, DepthCertificate(u, best, "closed")


def _locally_generic(arr, on_idx):
    m = len(on_idx)
    if m == 0:
        return True
    normals = [arr[i].normal for i in on_idx]
    return linalg.rank(normals) == m


def _lambda_polytope(normals, sigma):
    d = len(normals[0])
    m = len(normals)
    A = [[Fraction(sigma[j]) * normals[j][k] for j in range(m)] for k in range(d)]
    A.append([Fraction(1)] * m)
    b = [Fraction(0)] * d + [Fraction(1)]
    return A, b


def _optimize_lambda(A, b, j, fixed, sense):
    keep = [k for k in range(len(A[0])) if k not in fixed]
    if j not in keep:
        return linprog.OPTIMAL, Fraction(0)
    colmap = {k: i for i, k in enumerate(keep)}
    A2 = [[row[k] for k in keep] for row in A]
    c = [Fraction(0)] * len(keep)
    c[colmap[j]] = Fraction(-1) if sense == "max" else Fraction(1)
    status, _, value = linprog.simplex(A2, b, c)
    if status != linprog.OPTIMAL:
        return status, None
    return status, (-value if sense == "max" else value)


def _perturbed_cell_feasible(normals, indices, sigma):
    """Does the system {sigma_j (a_j . y - eps^(i_j + 1)) > 0} have a solution
    for every sufficiently small eps > 0?

    Decided through the Motzkin transposition dual: the system is infeasible
    iff some lambda >= 0 with sum lambda_j sigma_j a_j = 0 has a
    lexicographically nonnegative offset combination. The lex sign of the
    maximal combination is resolved stage by stage with exact LPs, in order of
    increasing hyperplane index (larger eps powers dominate).
    """
    A, b = _lambda_polytope(normals, sigma)
    fixed = set()
    order = sorted(range(len(indices)), key=lambda j: indices[j])
    for j in order:
        if sigma[j] > 0:
            status, val = _optimize_lambda(A, b, j, fixed, "max")
            if status != linprog.OPTIMAL:
                return True  # dual polytope empty: no certificate, cell exists
            if val > 0:
                return False
        else:
            status, val = _optimize_lambda(A, b, j, fixed, "min")
            if status != linprog.OPTIMAL:
                return True
            if val > 0:
                return True  # all duals lex-negative: cell exists
        fixed.add(j)
    return False  # zero objective: degenerate dual certificate


def _central_cell_feasible(normals, sigma):
    rows = [linalg.vscale(s, a) for s, a in zip(sigma, normals)]
    return linprog.cone_witness(rows) is not None


def open_regression_depth(arr, q):
    """Exact open regression depth (incident hyperplanes not counted).

    On locally generic queries this is the direct minimization of the open
    ray count. When the query's incidence structure is degenerate (more than
    d incident hyperplanes, or dependent incident normals) the value is the
    maximum over the new cells created by the deterministic lexicographic
    offset perturbation b_h -> b_h + eps^(h+1); the returned certificate then
    witnesses the count inside the deepest perturbed cell.
    """
    if len(arr) == 0:
        u = _unit_direction(arr.dimension)
        return Fraction(0), DepthCertificate(u, Fraction(0), "open")
    s_signs, ev = _residual_signs(arr, q)
    on_idx = sorted(ev.on_set)
    if _locally_generic(arr, on_idx):
        best, u = _min_count(arr, s_signs, "open")
        return best, DepthCertificate(u, best, "open")

    normals = [arr[i].normal for i in on_idx]
    m = len(on_idx)
    best = None
    best_u = None
    for bits in range(2**m):
        sigma = tuple(1 if (bits >> j) & 1 else -1 for j in range(m))
        if _central_cell_feasible(normals, sigma):
            continue  # survives unperturbed: maps to a neighboring face, not to F_q
        if not _perturbed_cell_feasible(normals, on_idx, sigma):
            continue
        local = list(s_signs)
        for j, i in enumerate(on_idx):
            local[i] = sigma[j]
        val, u = _min_count(arr, local, "open")
        if best is None or val > best:
            best, best_u = val, u
    if best is None:
        best, best_u = _min_count(arr, s_signs, "open")
        return best, DepthCertificate(best_u, best, "open")
    return best, DepthCertificate(best_u, best, "open-perturbed")


def truncated_regression_depth(arr, q):
    """TRD = min(total weight / (d+1), regression depth)."""
    rd, _ = regression_depth(arr, q)
    return min(arr.total_weight / (arr.dimension + 1), rd)


def oracle_depth(arr, q, samples=32, seed=0):
    """Independent upper-bounding oracle for regression depth.

    Minimizes the closed directional count over seeded random directions plus
    every direction orthogonal to a (d-1)-subset of normals, symbolically
    nudged into each adjacent cell. Always >= the exact depth; equal to it on
    instances where the central cells are pointed (generic, n >= d), because
    every cell is then adjacent to such an orthogonal direction.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    d = arr.dimension
    if len(arr) == 0:
        return Fraction(0)
    s_signs = _signs_at(arr, q)
    best = None

    rng = random.Random(f"arrdepth-oracle:{seed}")
    for _ in range(samples):
        u = tuple(Fraction(rng.randint(-99, 99)) for _ in range(d))
        if all(c == 0 for c in u):
            continue
        c = _count_signs(arr, s_signs, u, "closed")
        if best is None or c < best:
            best = c

    normals = [h.normal for h in arr]
    for subset in combinations(range(len(arr)), d - 1):
        rows = [normals[i] for i in subset]
        u0 = linalg.kernel_vector(rows, ncols=d)
        if u0 is None:
            continue
        for u in (u0, linalg.vscale(-1, u0)):
            base = [_sign(linalg.dot(a, u)) for a in normals]
            for bits in range(2 ** len(subset)):
                c_signs = list(base)
                for j, i in enumerate(subset):
                    c_signs[i] = 1 if (bits >> j) & 1 else -1
                total = Fraction(0)
                for h, ss, cs in zip(arr, s_signs, c_signs):
                    if ss * cs <= 0:
                        total += h.weight
                if best is None or total < best:
                    best = total
    return best if best is not None else Fraction(0)


def dual_tukey_depth(points, q, weights=None):
    """Exact Tukey depth of q in a finite point set (closed half-space rule)."""
    pts = [point(p) for p in points]
    q = point(q)
    if weights is None:
        weights = [Fraction(1)] * len(pts)
    weights = [Fraction(w) for w in weights]
    base = Fraction(0)
    vecs = []
    wts = []
    for p, w in zip(pts, weights):
        v = linalg.vsub(p, q)
        if all(c == 0 for c in v):
            base += w  # coincident points lie in every closed half-space
        else:
            vecs.append(v)
            wts.append(w)
    if not vecs:
        return base
    best = None
    for u in direction_cells(vecs, len(q)):
        total = base
        for v, w in zip(vecs, wts):
            if linalg.dot(v, u) >= 0:
                total += w
        if best is None or total < best:
            best = total
    return best


def cell_unbounded(arr, q):
    """True iff q lies in an (open) unbounded cell of the arrangement."""
    if len(arr) == 0:
        return True
    s_signs, ev = _residual_signs(arr, q)
    if ev.on_set:
        return False
    rows = [linalg.vscale(s, h.normal) for s, h in zip(s_signs, arr)]
    return linprog.recession_direction(rows) is not None


def _vertices(arr):
    d = arr.dimension
    normals = [h.normal for h in arr]
    offsets = [h.offset for h in arr]
    out = []
    seen = set()
    for subset in combinations(range(len(arr)), d):
        sol = linalg.solve([normals[i] for i in subset], [offsets[i] for i in subset])
        if sol is not None and sol not in seen:
            seen.add(sol)
            out.append(sol)
    return sorted(out)


def deepest_point(arr, mode="exact"):
    """A point of maximum regression depth, with its exact depth and witness.

    Generic arrangements with n >= d only need the vertices: depth never
    decreases when walking from a face to a face of its boundary, and every
    face of such an arrangement has a vertex in its closure. Degenerate or
    tiny inputs fall back to full face enumeration (exact for d <= 3);
    higher dimensions require mode="candidates" (vertices only, flagged as a
    lower bound by construction).
    """
    if len(arr) == 0:
        raise NoDeepPoint("empty arrangement has no deepest point")
    d = arr.dimension
    candidates = []
    if len(arr) >= d and is_general_position(arr):
        candidates = _vertices(arr)
    if not candidates:
        if d > 3 and mode != "candidates":
            raise ExactBudgetExceeded("exact deepest-point mode supports d <= 3; use mode='candidates'")
        if d > 3:
            candidates = _vertices(arr)
            if not candidates:
                candidates = [tuple([Fraction(0)] * d)]
        else:
            candidates = [rep for _, rep in enumerate_faces(arr)]
    best_val = None
    best_pt = None
    best_cert = None
    for p in candidates:
        val, cert = regression_depth(arr, p)
        if best_val is None or val > best_val or (val == best_val and p < best_pt):
            best_val, best_pt, best_cert = val, p, cert
    return best_pt, best_val, best_cert
