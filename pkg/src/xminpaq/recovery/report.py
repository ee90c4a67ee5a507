# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""The outcome of a covariance recovery."""

from xminpaq.core.covariance import permutation_distance
from xminpaq.formats import jsonable


class RecoveryReport:
    """A recovered covariance with the intermediate results that produced it.

    A failed recovery is still a report: ``success`` is False and the best
    candidate found is attached.
    """

    def __init__(
        self,
        sigma_hat,
        kappa_hat,
        triangle,
        residual,
        route,
        success=True,
        experimental=False,
        distance_to_truth=None,
        diagnostics=None,
    ):
        """
        :param CovarianceMatrix3 sigma_hat: The recovered covariance, or None if no
            candidate was feasible.
        :param float kappa_hat: The scale of the recovered covariance.
        :param Triangle2D triangle: The recovered section triangle.
        :param float residual: The objective at the returned candidate.
        :param str route: "fit" or "constructive".
        :param bool success: Whether the residual met the configured tolerance.
        :param bool experimental: Set by the constructive route.
        :param float distance_to_truth: Permutation distance to a known covariance.
        :param dict diagnostics: Per-stage information.
        """
        self._sigma_hat = sigma_hat
        self._kappa_hat = None if kappa_hat is None else float(kappa_hat)
        self._triangle = triangle
        self._residual = float(residual)
        self._route = route
        self._success = bool(success)
        self._experimental = bool(experimental)
        self._distance_to_truth = distance_to_truth
        self._diagnostics = dict(diagnostics or {})

    def __repr__(self):
        status = "success" if self._success else "failure"
        return f"<RecoveryReport {self._route} {status} residual={self._residual:.3g}>"

    @property
    def sigma_hat(self):
        return self._sigma_hat

    @property
    def kappa_hat(self):
        return self._kappa_hat

    @property
    def triangle(self):
        return self._triangle

    @property
    def residual(self):
        return self._residual

    @property
    def route(self):
        return self._route

    @property
    def success(self):
        return self._success

    @property
    def experimental(self):
        return self._experimental

    @property
    def distance_to_truth(self):
        """Permutation distance to the generating covariance, or None if unknown."""
        return self._distance_to_truth

    @property
    def diagnostics(self):
        return self._diagnostics

    def with_truth(self, sigma):
        """A copy carrying the permutation distance to ``sigma``."""
        distance = None
        if self._sigma_hat is not None:
            distance = permutation_distance(self._sigma_hat, sigma).distance
        return RecoveryReport(
            self._sigma_hat,
            self._kappa_hat,
            self._triangle,
            self._residual,
            self._route,
            success=self._success,
            experimental=self._experimental,
            distance_to_truth=distance,
            diagnostics=self._diagnostics,
        )

    def to_dict(self):
        """The report as plain JSON types."""
        sigma = None if self._sigma_hat is None else self._sigma_hat.matrix.tolist()
        triangle = None if self._triangle is None else self._triangle.to_dict()
        return {
            "sigma_hat": sigma,
            "kappa_hat": self._kappa_hat,
            "triangle": triangle,
            "residual": self._residual,
            "route": self._route,
            "distance_to_truth": self._distance_to_truth,
            "success": self._success,
            "experimental": self._experimental,
            "diagnostics": jsonable(self._diagnostics),
        }

