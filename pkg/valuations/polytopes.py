"""
Exact volumes of slab polytopes

    P = {u in R^3, u >= 0 : m <= u0 + u1 + u2 <= d}

cut by a half-space ell(u) >= t. There are at most six planes, so vertices are
found by solving every triple of them, and volumes by coning the boundary
facets off the centroid of the vertices.
"""

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from exactnum import PiecewisePoly, as_rational
from kfano.exceptions import ConsistencyError, DomainError

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


@dataclass(frozen=True)
class SlabPolytope:
    d: Fraction
    m: Fraction
    ell: tuple

    def __post_init__(self):
        d, m = as_rational(self.d), as_rational(self.m)
        ell = tuple(as_rational(c) for c in self.ell)
        if not 0 <= m <= d:
            raise DomainError(f"slab needs 0 <= m <= d, got m = {m}, d = {d}")
        if len(ell) != 3 or any(c < 0 for c in ell):
            raise DomainError(f"functional {ell} must have three nonnegative coefficients")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "ell", ell)

    def halfspaces(self, t=None):
        """(normal, offset) pairs meaning normal . u >= offset"""
        spaces = [
            ((1, 0, 0), ZERO),
            ((0, 1, 0), ZERO),
            ((0, 0, 1), ZERO),
            ((1, 1, 1), self.m),
            ((-1, -1, -1), -self.d),
        ]
        if t is not None:
            spaces.append((self.ell, as_rational(t)))
        return spaces

    @property
    def euclidean_volume(self):
        return (self.d ** 3 - self.m ** 3) / 6

    @property
    def max_functional(self):
        return self.d * max(self.ell)

    def critical_values(self):
        """Values of ell at the vertices of the uncut slab"""
        return sorted({ZERO} | {self.d * c for c in self.ell} | {self.m * c for c in self.ell})

    def value(self, point):
        return _dot(self.ell, point)


@dataclass(frozen=True)
class Vertex3:
    coordinates: tuple

    def __iter__(self):
        return iter(self.coordinates)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _det3(a, b, c):
    return _dot(a, _cross(b, c))


def _solve3(rows, rhs):
    """Cramer's rule; None when the three planes do not meet in a point"""
    det = _det3(*rows)
    if det == 0:
        return None
    columns = list(zip(*rows))
    solution = []
    for k in range(3):
        replaced = [rhs if j == k else columns[j] for j in range(3)]
        solution.append(Fraction(_det3(*zip(*replaced))) / det)
    return tuple(solution)


def enumerate_vertices(P, t=None):
    spaces = P.halfspaces(t)
    seen = set()
    for triple in combinations(spaces, 3):
        point = _solve3([n for n, _ in triple], [o for _, o in triple])
        if point is None or point in seen:
            continue
        if all(_dot(n, point) >= o for n, o in spaces):
            seen.add(point)
    vertices = [Vertex3(p) for p in sorted(seen)]
    logger.debug(f"{len(vertices)} vertices for {P} at t = {t}")
    return vertices


def _order_facet(points, normal):
    anchor = min(points)

    def compare(a, b):
        turn = _dot(_cross(_sub(a, anchor), _sub(b, anchor)), normal)
        return -1 if turn > 0 else (1 if turn < 0 else 0)

    rest = sorted((p for p in points if p != anchor), key=functools.cmp_to_key(compare))
    return [anchor] + rest


def _tetrahedra(vertices, spaces):
    points = [v.coordinates for v in vertices]
    if len(points) < 4:
        return []
    center = tuple(sum(c) / len(points) for c in zip(*points))
    facets = {}
    for normal, offset in spaces:
        if not any(normal):
            continue
        on_plane = [p for p in points if _dot(normal, p) == offset]
        if len(on_plane) >= 3:
            facets.setdefault(frozenset(on_plane), (normal, on_plane))
    tetrahedra = []
    for normal, on_plane in facets.values():
        ordered = _order_facet(on_plane, normal)
        for a, b in zip(ordered[1:], ordered[2:]):
            tetrahedra.append((center, ordered[0], a, b))
    return tetrahedra


def _tetra_volume(a, b, c, d):
    return abs(_det3(_sub(b, a), _sub(c, a), _sub(d, a))) / 6


def slice_volume(P, t):
    """Euclidean volume of P cut by ell >= t"""
    t = as_rational(t)
    if t < 0:
        raise DomainError(f"slice parameter must be nonnegative, got {t}")
    spaces = P.halfspaces(t)
    return sum(
        (_tetra_volume(*tet) for tet in _tetrahedra(enumerate_vertices(P, t), spaces)),
        ZERO,
    )


def slice_volume_function(P):
    """t -> slice_volume(P, t) on [0, max ell] as a piecewise cubic"""
    top = P.max_functional
    if top == 0:
        raise DomainError("the zero functional has no slice-volume function")
    breakpoints = [c for c in P.critical_values() if c <= top]
    return PiecewisePoly.interpolate(lambda t: slice_volume(P, t), breakpoints, degree=3).assert_continuous()


def layer_cake_integral(P):
    """Integral over t >= 0 of slice_volume(P, t)"""
    if P.max_functional == 0:
        return ZERO
    return slice_volume_function(P).integrate()


def integral_linear_over_slab(P, verify=True):
    """Integral of ell over P, by the vertex-average rule on each tetrahedron"""
    spaces = P.halfspaces()
    total = ZERO
    for tet in _tetrahedra(enumerate_vertices(P), spaces):
        total += _tetra_volume(*tet) * sum(P.value(v) for v in tet) / 4
    if verify:
        layered = layer_cake_integral(P)
        if layered != total:
            raise ConsistencyError(f"layer-cake integral {layered} differs from direct integral {total}")
    return total


def scaling_check(d, m, t, ell):
    """slice volume of the (d, m) slab against d^3 Q(t/d) - m^3 Q(t/m), Q the unit simplex"""
    d, m, t = as_rational(d), as_rational(m), as_rational(t)
    if d <= 0 or m <= 0:
        raise DomainError(f"scaling check needs d > 0 and m > 0, got d = {d}, m = {m}")
    Q = SlabPolytope(1, 0, ell)
    direct = slice_volume(SlabPolytope(d, m, ell), t)
    scaled = d ** 3 * slice_volume(Q, t / d) - m ** 3 * slice_volume(Q, t / m)
    return direct, scaled
