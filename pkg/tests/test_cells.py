import random
from fractions import Fraction

from arrdepth import linalg
from arrdepth.cells import (
    _direction_cells_3d,
    _direction_cells_lp,
    _distinct_lines,
    direction_cells,
    enumerate_faces,
    faces_2d,
    normalize_ray,
)
from arrdepth.geometry import generate_instance


def _sign_key(lines, u):
    return tuple(1 if linalg.dot(a, u) > 0 else -1 if linalg.dot(a, u) < 0 else 0 for a in lines)


def test_direction_cells_1d():
    assert direction_cells([(Fraction(3),)], 1) == [(1,), (-1,)]


def test_direction_cells_2d_single_line():
    reps = direction_cells([(1, 0)], 2)
    assert len(reps) == 2
    signs = {_sign_key([(Fraction(1), Fraction(0))], u) for u in reps}
    assert signs == {(1,), (-1,)}


def test_direction_cells_2d_count():
    # m distinct normal lines cut the direction plane into 2m sectors
    arr = generate_instance(1, 2, 6, "generic")
    reps = direction_cells([h.normal for h in arr], 2)
    assert len(reps) == 12
    lines = _distinct_lines([h.normal for h in arr])
    keys = {_sign_key(lines, u) for u in reps}
    assert len(keys) == 12 and all(0 not in k for k in keys)


def test_direction_cells_3d_slices_match_lp():
    for seed in range(6):
        arr = generate_instance(100 + seed, 3, 5 + seed % 4, "generic")
        lines = _distinct_lines([h.normal for h in arr])
        s_slice = {_sign_key(lines, u) for u in _direction_cells_3d(lines)}
        s_lp = {_sign_key(lines, u) for u in _direction_cells_lp(lines, 3)}
        assert s_slice == s_lp


def test_faces_2d_against_sampling():
    rng = random.Random(3)
    arr = generate_instance(7, 2, 6, "generic")
    lines = [((h.normal[0], h.normal[1]), h.offset) for h in arr]
    enum_cells = {f.signs for f in faces_2d(lines) if f.dim == 2}
    sampled = set()
    for _ in range(3000):
        p = (Fraction(rng.randint(-10**6, 10**6), 99), Fraction(rng.randint(-10**6, 10**6), 101))
        key = tuple(
            1 if (a[0] * p[0] + a[1] * p[1] - c) > 0 else -1 if (a[0] * p[0] + a[1] * p[1] - c) < 0 else 0
            for a, c in lines
        )
        if 0 not in key:
            sampled.add(key)
    assert sampled <= enum_cells


def test_faces_2d_counts_simple():
    from math import comb

    arr = generate_instance(9, 2, 7, "generic")
    lines = [((h.normal[0], h.normal[1]), h.offset) for h in arr]
    faces = faces_2d(lines)
    n = 7
    assert sum(1 for f in faces if f.dim == 0) == comb(n, 2)
    assert sum(1 for f in faces if f.dim == 1) == n * n
    assert sum(1 for f in faces if f.dim == 2) == 1 + n + comb(n, 2)


def test_face_representatives_in_relative_interior():
    arr = generate_instance(11, 2, 5, "generic")
    for signs, rep in enumerate_faces(arr):
        for h, s in zip(arr, signs):
            r = h.residual(rep)
            assert (r > 0, r < 0, r == 0) == (s == 1, s == -1, s == 0)


def test_enumerate_faces_lp_3d():
    arr = generate_instance(13, 3, 4, "generic")
    faces = enumerate_faces(arr)
    # simple 3D arrangement with 4 planes: 1 vertex set of C(4,3)=4 vertices
    vertices = [rep for signs, rep in faces if signs.count(0) == 3]
    assert len(vertices) == 4
    for signs, rep in faces:
        for h, s in zip(arr, signs):
            r = h.residual(rep)
            assert (r > 0, r < 0, r == 0) == (s == 1, s == -1, s == 0)


def test_normalize_ray():
    assert normalize_ray((Fraction(2, 3), Fraction(-4, 3))) == (1, -2)
    assert normalize_ray((-2, 4)) == (-1, 2)  # scaling only, never flips direction
