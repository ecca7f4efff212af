"""Exact cell and face enumeration for arrangements.

Two related tasks live here:

* direction cells: one rational representative per full-dimensional cell of
  the central arrangement {u : a.u = 0} of a set of normals. Depth
  minimization over rays only ever needs these representatives, because the
  ray count is constant on each cell and never smaller on a cell boundary
  than in an adjacent cell.
* affine faces: sign-vector enumeration of the faces of an affine arrangement
  (every face gets a rational relative-interior representative).

d = 2 is handled geometrically (pair intersections + angular sweeps), d = 3
by slicing the central arrangement with the planes z = +-1, and higher
dimensions by incremental sign vectors backed by exact LP feasibility.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from . import linalg, linprog


def canonical_line(v):
    """Canonical representative of the line through a rational vector (sign/scale free)."""
    import math
    from functools import reduce

    fr = [Fraction(c) for c in v]
    scale = reduce(math.lcm, (c.denominator for c in fr), 1)
    ints = [int(c * scale) for c in fr]
    g = reduce(math.gcd, (abs(c) for c in ints))
    if g:
        ints = [c // g for c in ints]
    lead = next((c for c in ints if c != 0), 0)
    if lead < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def normalize_ray(v):
    """Scale a rational vector by a positive rational to coprime integers."""
    import math
    from functools import reduce

    fr = [Fraction(c) for c in v]
    scale = reduce(math.lcm, (c.denominator for c in fr), 1)
    ints = [int(c * scale) for c in fr]
    g = reduce(math.gcd, (abs(c) for c in ints))
    if g > 1:
        ints = [c // g for c in ints]
    return tuple(Fraction(c) for c in ints)


def _distinct_lines(normals):
    seen = {}
    for a in normals:
        key = canonical_line(a)
        if any(v != 0 for v in key) and key not in seen:
            seen[key] = key
    return list(seen.values())


def _angle_half(v):
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(u, v):
    hu, hv = _angle_half(u), _angle_half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    cross = u[0] * v[1] - u[1] * v[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def _rot90(v):
    return (-v[1], v[0])


def direction_cells(normals, d):
    """Rational representatives of the full-dimensional central cells, deterministic order."""
    lines = _distinct_lines(normals)
    if d == 1:
        return [(Fraction(1),), (Fraction(-1),)]
    if not lines:
        e = [Fraction(0)] * d
        e[0] = Fraction(1)
        return [tuple(e)]
    if d == 2:
        reps = _direction_cells_2d(lines)
    elif d == 3:
        reps = _direction_cells_3d(lines)
    else:
        reps = _direction_cells_lp(lines, d)
    return [normalize_ray(u) for u in reps]


def _direction_cells_2d(lines):
    rays = []
    seen = set()
    for a in lines:
        for w in (_rot90(a), _rot90((-a[0], -a[1]))):
            key = (Fraction(w[0]), Fraction(w[1]))
            if key not in seen:
                seen.add(key)
                rays.append(key)
    rays.sort(key=cmp_to_key(_angle_cmp))
    reps = []
    m = len(rays)
    for i in range(m):
        w1, w2 = rays[i], rays[(i + 1) % m]
        rep = (w1[0] + w2[0], w1[1] + w2[1])
        if rep == (0, 0):  # antipodal boundary rays: the sector spans a half-plane
            rep = _rot90(w1)
        reps.append((Fraction(rep[0]), Fraction(rep[1])))
    return reps


def _direction_cells_3d(lines):
    reps = []
    seen = set()
    for z in (Fraction(1), Fraction(-1)):
        slice_lines = []
        for a in lines:
            # plane a.u = 0 meets {u_z = z} in the line a_x x + a_y y = -a_z z
            if a[0] != 0 or a[1] != 0:
                slice_lines.append(((Fraction(a[0]), Fraction(a[1])), -Fraction(a[2]) * z))
        for face in faces_2d(slice_lines):
            if face.dim != 2:
                continue
            u = (face.rep[0], face.rep[1], z)
            key = tuple(1 if linalg.dot(a, u) > 0 else -1 if linalg.dot(a, u) < 0 else 0 for a in lines)
            if 0 in key:
                continue  # rep lies on a z-normal plane's cell boundary; other slice covers it
            if key not in seen:
                seen.add(key)
                reps.append(u)
    return reps


def _direction_cells_lp(lines, d):
    cells = [((), None)]
    for i, a in enumerate(lines):
        nxt = []
        for signs, witness in cells:
            if witness is None:
                for s in (1, -1):
                    w = linprog.cone_witness([linalg.vscale(t, lines[j]) for j, t in enumerate(signs + (s,))])
                    if w is not None:
                        nxt.append((signs + (s,), w))
                continue
            s0 = linalg.dot(a, witness)
            if s0 > 0:
                nxt.append((signs + (1,), witness))
                other = -1
            elif s0 < 0:
                nxt.append((signs + (-1,), witness))
                other = 1
            else:
                other = None
            candidates = (1, -1) if other is None else (other,)
            for s in candidates:
                rows = [linalg.vscale(t, lines[j]) for j, t in enumerate(signs)] + [linalg.vscale(s, a)]
                w = linprog.cone_witness(rows)
                if w is not None:
                    nxt.append((signs + (s,), w))
        cells = nxt
    return [witness for _, witness in cells]


@dataclass(frozen=True)
class Face2:
    """A face of a planar line arrangement: sign vector, dimension, interior point."""

    dim: int
    signs: tuple
    rep: tuple
    line: int | None = None  # supporting line for dim-1 faces
    span: tuple | None = None  # (t_lo, t_hi) parameters along the line, None = unbounded


def _perp2(a):
    return (-a[1], a[0])


def _line_anchor(a, c):
    nn = a[0] * a[0] + a[1] * a[1]
    return (c * a[0] / nn, c * a[1] / nn)


def _sign_vector(lines, p):
    out = []
    for a, c in lines:
        s = a[0] * p[0] + a[1] * p[1] - c
        out.append(1 if s > 0 else -1 if s < 0 else 0)
    return tuple(out)


def faces_2d(lines):
    """All faces of a planar arrangement of lines ((a, c) with a.x = c), exactly.

    Handles degenerate inputs (parallel, concurrent and duplicate lines).
    Returns Face2 records: vertices first, then edges per line, then cells,
    in a deterministic order.
    """
    lines = [((Fraction(a[0]), Fraction(a[1])), Fraction(c)) for a, c in lines]
    distinct = []
    rep_of = {}
    for i, (a, c) in enumerate(lines):
        key = canonical_line((a[0], a[1], c))
        if key not in rep_of:
            rep_of[key] = len(distinct)
            distinct.append((a, c))

    faces = []
    if not lines:
        faces.append(Face2(2, (), (Fraction(0), Fraction(0))))
        return faces

    # Vertices: pairwise intersections of distinct lines.
    vertices = []
    vset = {}
    for (i, (a1, c1)), (j, (a2, c2)) in combinations(enumerate(distinct), 2):
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if det == 0:
            continue
        x = (c1 * a2[1] - c2 * a1[1]) / det
        y = (a1[0] * c2 - a2[0] * c1) / det
        if (x, y) not in vset:
            vset[(x, y)] = True
            vertices.append((x, y))
    vertices.sort()
    for v in vertices:
        faces.append(Face2(0, _sign_vector(lines, v), v))

    # Edges: each distinct line subdivided by the vertices lying on it.
    edge_faces = []
    for li, (a, c) in enumerate(distinct):
        anchor = _line_anchor(a, c)
        direction = _perp2(a)
        dd = direction[0] * direction[0] + direction[1] * direction[1]
        params = sorted(
            {
                (direction[0] * (v[0] - anchor[0]) + direction[1] * (v[1] - anchor[1])) / dd
                for v in vertices
                if a[0] * v[0] + a[1] * v[1] == c
            }
        )
        if not params:
            spans = [(None, None)]
            reps_t = [Fraction(0)]
        else:
            spans = [(None, params[0])]
            reps_t = [params[0] - 1]
            for t1, t2 in zip(params, params[1:]):
                spans.append((t1, t2))
                reps_t.append((t1 + t2) / 2)
            spans.append((params[-1], None))
            reps_t.append(params[-1] + 1)
        for span, t in zip(spans, reps_t):
            p = (anchor[0] + t * direction[0], anchor[1] + t * direction[1])
            edge_faces.append(Face2(1, _sign_vector(lines, p), p, line=li, span=span))
    faces.extend(edge_faces)

    # Cells: nudge every edge representative to both sides, dedupe by sign vector.
    cell_signs = {}
    cell_faces = []
    for ef in edge_faces:
        a, _ = distinct[ef.line]
        p = ef.rep
        dists = []
        for aj, cj in distinct:
            denom = aj[0] * a[0] + aj[1] * a[1]
            if denom == 0:
                continue
            s = aj[0] * p[0] + aj[1] * p[1] - cj
            if s != 0:
                dists.append(abs(s) / abs(denom))
        step = min(dists) / 2 if dists else Fraction(1)
        for sgn in (1, -1):
            qp = (p[0] + sgn * step * a[0], p[1] + sgn * step * a[1])
            sv = _sign_vector(lines, qp)
            if 0 in sv:
                continue  # duplicate-line artifact; the true cell comes from another nudge
            if sv not in cell_signs:
                cell_signs[sv] = True
                cell_faces.append(Face2(2, sv, qp))
    faces.extend(cell_faces)
    return faces


def enumerate_faces(arr):
    """Faces of an affine arrangement as (signs, representative) pairs, any d.

    d = 2 uses the geometric path; other dimensions run the incremental
    sign-vector construction with exact LP feasibility checks. Returned in a
    deterministic order.
    """
    d = arr.dimension
    if d == 2:
        out = []
        lines = [((h.normal[0], h.normal[1]), h.offset) for h in arr]
        for face in faces_2d(lines):
            out.append((face.signs, face.rep))
        return out
    return _enumerate_faces_lp(arr)


def _enumerate_faces_lp(arr):
    d = arr.dimension
    hs = list(arr)
    states = [((), tuple([Fraction(0)] * d))]  # (signs, witness in relative interior)
    for h in hs:
        a, b = h.normal, h.offset
        nxt = []
        for signs, w in states:
            eq_rows = [hs[j].normal for j, s in enumerate(signs) if s == 0]
            eq_rhs = [hs[j].offset for j, s in enumerate(signs) if s == 0]
            st_rows = [linalg.vscale(s, hs[j].normal) for j, s in enumerate(signs) if s != 0]
            st_rhs = [Fraction(s) * hs[j].offset for j, s in enumerate(signs) if s != 0]
            s0 = linalg.dot(a, w) - b
            sign0 = 1 if s0 > 0 else -1 if s0 < 0 else 0
            nxt.append((signs + (sign0,), w))
            for s in (0, 1, -1):
                if s == sign0:
                    continue
                if s == 0:
                    p = linprog.interior_point(eq_rows + [a], eq_rhs + [b], st_rows, st_rhs)
                else:
                    p = linprog.interior_point(
                        eq_rows, eq_rhs, st_rows + [linalg.vscale(s, a)], st_rhs + [Fraction(s) * b]
                    )
                if p is not None:
                    nxt.append((signs + (s,), p))
        states = nxt
    return states
