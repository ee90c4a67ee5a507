# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
import itertools

import numpy

from xminpaq.error import DegenerateTriangleError, DomainError
from xminpaq.utilities import INTERIOR_TOLERANCE

#: Side index to vertex index pairs, in the order xy, yz, xz.
SIDES = ((0, 1), (1, 2), (0, 2))


class Triangle2D:
    """A planar triangle with vertices labeled x, y and z.

    The origin of the plane is distinguished: sections of positive cones are
    triangles enclosing it, and circular transforms are taken about it.
    """

    def __init__(self, vertices):
        """Create a triangle.

        :param vertices: Three points in the plane.
        :type vertices: array-like of shape (3, 2)
        :raises DomainError: If the vertices are not three finite planar points.
        :raises DegenerateTriangleError: If the vertices are collinear.
        """
        vertices = numpy.array(vertices, dtype=float)
        if vertices.shape != (3, 2):
            raise DomainError(f"Expected three planar vertices, got shape {vertices.shape}")
        if not numpy.all(numpy.isfinite(vertices)):
            raise DomainError("Triangle vertices must be finite")
        vertices.setflags(write=False)
        self._vertices = vertices

        x, y, z = vertices
        self._signed_area = 0.5 * ((y[0] - x[0]) * (z[1] - x[1]) - (z[0] - x[0]) * (y[1] - x[1]))
        scale = max(1.0, float(numpy.max(numpy.abs(vertices))))
        if abs(self._signed_area) <= 1e-15 * scale**2:
            raise DegenerateTriangleError(f"Triangle {vertices.tolist()} has zero area")

        self._barycentric_matrix = numpy.linalg.inv(
            numpy.vstack([vertices.T, numpy.ones(3)])
        )

    def __repr__(self):
        return f"Triangle2D({self._vertices.tolist()})"

    @property
    def vertices(self):
        """A read-only (3, 2) array of the vertices x, y and z."""
        return self._vertices

    @property
    def x(self):
        return self._vertices[0]

    @property
    def y(self):
        return self._vertices[1]

    @property
    def z(self):
        return self._vertices[2]

    @property
    def signed_area(self):
        """Positive when x, y, z run counterclockwise."""
        return self._signed_area

    @property
    def area(self):
        return abs(self._signed_area)

    @property
    def vertex_distances(self):
        """Distances of x, y and z from the origin."""
        return numpy.hypot(self._vertices[:, 0], self._vertices[:, 1])

    @property
    def side_lengths(self):
        """Lengths of the sides xy, yz and xz."""
        return numpy.array(
            [numpy.linalg.norm(self._vertices[i] - self._vertices[j]) for i, j in SIDES]
        )

    @property
    def barycentric_matrix(self):
        """The inverse of the matrix with columns (x, 1), (y, 1), (z, 1)."""
        return self._barycentric_matrix

    def barycentric(self, point):
        """Barycentric coordinates of a point with respect to x, y and z.

        :param point: A point in the plane.
        :returns: Three weights summing to one.
        :rtype: numpy.ndarray
        """
        px, py = point
        return self._barycentric_matrix @ numpy.array([px, py, 1.0])

    def contains(self, point, tolerance=0.0):
        """Whether a point lies in the closed triangle, up to ``tolerance`` in
        barycentric coordinates."""
        return bool(numpy.all(self.barycentric(point) >= -tolerance))

    @property
    def enclosing(self):
        """True if the origin lies strictly inside the triangle."""
        return bool(numpy.all(self.barycentric((0.0, 0.0)) > INTERIOR_TOLERANCE))

    def transformed(self, matrix):
        """Return the image of this triangle under a linear map of the plane,
        keeping vertex labels."""
        matrix = numpy.asarray(matrix, dtype=float)
        return Triangle2D(self._vertices @ matrix.T)

    def relabeled(self, order):
        """Return the same point set with vertices taken in ``order``."""
        return Triangle2D(self._vertices[list(order)])

    def orthogonally_equivalent(self, other, tolerance=1e-9):
        """Whether an orthogonal map of the plane (fixing the origin) sends this
        triangle onto ``other``.

        Two point triples are related by an orthogonal map exactly when some
        vertex correspondence preserves all inner products between vertex vectors.
        """
        gram = self._vertices @ self._vertices.T
        scale = max(1.0, float(numpy.max(numpy.abs(gram))))
        for perm in itertools.permutations(range(3)):
            theirs = other.vertices[list(perm)]
            if numpy.max(numpy.abs(gram - theirs @ theirs.T)) <= tolerance * scale:
                return True
        return False

    def congruent(self, other, tolerance=1e-9):
        """Whether the triangles are congruent as plane figures (equal side lengths)."""
        mine = numpy.sort(self.side_lengths)
        theirs = numpy.sort(other.side_lengths)
        return bool(numpy.max(numpy.abs(mine - theirs)) <= tolerance * max(1.0, mine[-1]))

    def to_dict(self):
        return {"vertices": self._vertices.tolist()}

    @classmethod
    def from_dict(cls, data):
        """Build a triangle from ``{"vertices": [[a1, b1], [a2, b2], [a3, b3]]}``."""
        try:
            vertices = data["vertices"]
        except (KeyError, TypeError):
            raise DomainError("Triangle data needs a 'vertices' entry")
        return cls(vertices)
