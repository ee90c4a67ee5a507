# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Sampled tails of the minimum and raw samples of it."""

import numpy

from xminpaq.error import DataError, DomainError

PROVENANCES = ("analytic", "quadrature", "empirical")


class TailGrid:
    """Samples (t, m(t)) of m(t) = Prob(X_min >= t).

    ``provenance`` records where the values came from.  Analytic tails are computed
    from a known covariance and may carry the model that produced them, quadrature
    tails are numerically exact samples from elsewhere, and empirical tails are
    fractions of Monte Carlo samples with their standard errors.
    """

    def __init__(self, t, m, provenance="analytic", stderr=None, n_samples=None, model=None):
        """
        :param t: Strictly increasing abscissae.
        :param m: Tail probabilities, non-increasing in t.
        :param str provenance: One of "analytic", "quadrature" or "empirical".
        :param stderr: Per-point standard errors (empirical tails only).
        :param int n_samples: Number of samples behind an empirical tail.
        :param model: Optional :class:`~xminpaq.tail.TailModel` that generated the values.
        :raises DomainError: If the grid or metadata are malformed.
        :raises DataError: If the values are not a tail.
        """
        t = numpy.array(t, dtype=float)
        m = numpy.array(m, dtype=float)
        if t.ndim != 1 or t.shape != m.shape or len(t) == 0:
            raise DomainError("A tail needs matching one-dimensional t and m")
        if not (numpy.all(numpy.isfinite(t)) and numpy.all(numpy.isfinite(m))):
            raise DataError("Tail values must be finite")
        if numpy.any(numpy.diff(t) <= 0):
            raise DomainError("Tail abscissae must be strictly increasing")
        if numpy.min(m) < -1e-12 or numpy.max(m) > 1 + 1e-12:
            raise DataError("Tail values must be probabilities")
        if numpy.any(numpy.diff(m) > 1e-12):
            raise DataError("Tail values must be non-increasing")
        if provenance not in PROVENANCES:
            raise DomainError(f"Unknown provenance {provenance!r}")
        if provenance == "empirical":
            if stderr is None or n_samples is None:
                raise DomainError("Empirical tails need standard errors and a sample count")
        if stderr is not None:
            stderr = numpy.array(stderr, dtype=float)
            if stderr.shape != t.shape:
                raise DomainError("Standard errors must match the grid")
            stderr.setflags(write=False)
        for array in (t, m):
            array.setflags(write=False)
        self._t = t
        self._m = numpy.clip(m, 0.0, 1.0)
        self._m.setflags(write=False)
        self._provenance = provenance
        self._stderr = stderr
        self._n_samples = None if n_samples is None else int(n_samples)
        self._model = model

    def __repr__(self):
        return f"<TailGrid {self._provenance} {len(self._t)} points in [{self._t[0]:.3g}, {self._t[-1]:.3g}]>"

    def __len__(self):
        return len(self._t)

    @property
    def t(self):
        return self._t

    @property
    def m(self):
        return self._m

    @property
    def provenance(self):
        return self._provenance

    @property
    def stderr(self):
        """Standard errors, or None for noiseless tails."""
        return self._stderr

    @property
    def n_samples(self):
        return self._n_samples

    @property
    def model(self):
        """The model that generated the values, or None."""
        return self._model

    @property
    def empirical(self):
        return self._provenance == "empirical"

    def usable(self, low=1e-6, high=1 - 1e-6):
        """Mask of points with ``low < m < high``."""
        return (self._m > low) & (self._m < high)

    def weights(self):
        """Least-squares weights: inverse variances for empirical tails, else ones.
        Points with zero standard error get weight zero."""
        if self._stderr is None:
            return numpy.ones_like(self._t)
        weights = numpy.zeros_like(self._t)
        positive = self._stderr > 0
        weights[positive] = 1.0 / self._stderr[positive] ** 2
        return weights


class MinSampleSet:
    """Realizations of X_min for a known covariance."""

    def __init__(self, values, seed=None, sigma=None):
        values = numpy.array(values, dtype=float)
        if values.ndim != 1 or len(values) == 0:
            raise DomainError("Samples must be a nonempty one-dimensional array")
        if not numpy.all(numpy.isfinite(values)):
            raise DataError("Samples must be finite")
        values.setflags(write=False)
        self._values = values
        self._seed = seed
        self._sigma = sigma

    def __repr__(self):
        return f"<MinSampleSet n={len(self._values)} seed={self._seed}>"

    def __len__(self):
        return len(self._values)

    @property
    def values(self):
        return self._values

    @property
    def seed(self):
        return self._seed

    @property
    def sigma(self):
        """The covariance sampled from, if known."""
        return self._sigma
