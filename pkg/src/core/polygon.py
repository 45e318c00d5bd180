"""
Harder-Narasimhan polygons and measures
Concave piecewise-linear polygons with P(0) = 0 and finite Dirac measures,
with the exact correspondence between the two
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import PolygonError
from .exact import ExactDegree, RationalDegree, as_exact, exact_sum

Atom = Tuple[ExactDegree, Fraction]
Vertex = Tuple[Fraction, ExactDegree]


@dataclass(frozen=True)
class HNMeasure:
    """
    Finite positive combination of Dirac masses

    Atoms are stored at strictly decreasing locations with positive masses;
    equal locations are merged and zero masses dropped on construction.
    """

    atoms: Tuple[Atom, ...] = ()

    def __post_init__(self):
        merged: List[List] = []
        for location, mass in sorted(
            ((as_exact(loc), Fraction(m)) for loc, m in self.atoms),
            key=_LocationKey,
            reverse=True,
        ):
            if mass < 0:
                raise PolygonError(f"negative mass {mass} at {location!r}")
            if mass == 0:
                continue
            if merged and merged[-1][0] == location:
                merged[-1][1] += mass
            else:
                merged.append([location, mass])
        object.__setattr__(self, "atoms", tuple((loc, mass) for loc, mass in merged))

    @classmethod
    def zero(cls) -> "HNMeasure":
        return cls(())

    @classmethod
    def dirac(cls, location, mass=Fraction(1)) -> "HNMeasure":
        return cls(((as_exact(location), Fraction(mass)),))

    def is_zero(self) -> bool:
        return not self.atoms

    def total_mass(self) -> Fraction:
        return sum((mass for _, mass in self.atoms), Fraction(0))

    def mean(self) -> ExactDegree:
        """The integral of t against the measure"""
        return exact_sum(location * mass for location, mass in self.atoms)

    def locations(self) -> List[ExactDegree]:
        return [location for location, _ in self.atoms]


@dataclass(frozen=True)
class HNPolygon:
    """
    Concave piecewise-linear function on [0, t_end] with P(0) = 0

    Vertices are (t, P(t)) with strictly increasing t; collinear interior
    vertices are removed so every vertex is a genuine corner.
    """

    vertices: Tuple[Vertex, ...] = ((Fraction(0), RationalDegree(Fraction(0))),)

    def __post_init__(self):
        points = [(Fraction(t), as_exact(h)) for t, h in self.vertices]
        if not points or points[0][0] != 0 or not points[0][1].is_zero():
            raise PolygonError("polygon must start at (0, 0)")
        for (t0, _), (t1, _) in zip(points, points[1:]):
            if t1 <= t0:
                raise PolygonError("polygon abscissae must increase strictly")
        corners = [points[0]]
        for point in points[1:]:
            if len(corners) >= 2:
                previous = _segment_slope(corners[-2], corners[-1])
                current = _segment_slope(corners[-1], point)
                if current > previous:
                    raise PolygonError("polygon is not concave")
                if current == previous:
                    corners[-1] = point
                    continue
            corners.append(point)
        object.__setattr__(self, "vertices", tuple(corners))

    @classmethod
    def zero(cls) -> "HNPolygon":
        return cls()

    @property
    def width(self) -> Fraction:
        return self.vertices[-1][0]

    def endpoint(self) -> ExactDegree:
        return self.vertices[-1][1]

    def segments(self) -> List[Tuple[Fraction, Fraction, ExactDegree]]:
        return [(a[0], b[0], _segment_slope(a, b)) for a, b in zip(self.vertices, self.vertices[1:])]

    def slopes(self) -> List[ExactDegree]:
        return [slope for _, _, slope in self.segments()]

    def is_concave(self) -> bool:
        slopes = self.slopes()
        return all(a > b for a, b in zip(slopes, slopes[1:]))

    def value_at(self, t) -> ExactDegree:
        t = Fraction(t)
        if t < 0 or t > self.width:
            raise PolygonError(f"t = {t} outside [0, {self.width}]")
        for (t0, h0), (t1, h1) in zip(self.vertices, self.vertices[1:]):
            if t0 <= t <= t1:
                return h0 + (h1 - h0) * ((t - t0) / (t1 - t0))
        return self.vertices[0][1]

    def dominated_by(self, other: "HNPolygon") -> bool:
        """True when self <= other pointwise on the common domain"""
        if self.width != other.width:
            raise PolygonError("polygons have different widths")
        abscissae = sorted({t for t, _ in self.vertices} | {t for t, _ in other.vertices})
        return all(self.value_at(t) <= other.value_at(t) for t in abscissae)


class _LocationKey:
    """Sort key wrapper so exact degrees sort with their exact comparison"""

    __slots__ = ("value",)

    def __init__(self, atom):
        self.value = atom[0]

    def __lt__(self, other: "_LocationKey") -> bool:
        return self.value < other.value


def _segment_slope(a: Vertex, b: Vertex) -> ExactDegree:
    return (b[1] - a[1]) / (b[0] - a[0])


def measure_to_polygon(measure: HNMeasure) -> HNPolygon:
    """Polygon whose slope on [t_{i-1}, t_i) is the i-th largest atom location"""
    if measure.total_mass() > 1:
        raise PolygonError(f"measure mass {measure.total_mass()} exceeds 1")
    t = Fraction(0)
    height: ExactDegree = RationalDegree(Fraction(0))
    vertices: List[Vertex] = [(t, height)]
    for location, mass in measure.atoms:
        t += mass
        height = height + location * mass
        vertices.append((t, height))
    return HNPolygon(tuple(vertices))


def polygon_to_measure(polygon: HNPolygon) -> HNMeasure:
    """Dirac masses at the segment slopes, weighted by segment widths"""
    return HNMeasure(tuple((slope, t1 - t0) for t0, t1, slope in polygon.segments()))
