# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Monte Carlo samples of X_min and empirical tails."""

import numpy
import scipy.linalg

from xminpaq.core.covariance import validate_admissible
from xminpaq.error import AdmissibilityError, DomainError
from .grid import MinSampleSet, TailGrid

#: Samples drawn per random stream.  Chunk k always uses the Philox counter block k,
#: so the output depends only on the seed and n.
CHUNK_SIZE = 1 << 18


def sample_xmin(sigma, n, seed):
    """Draw n realizations of min(X1, X2, X3) with X ~ N(0, Sigma).

    :param CovarianceMatrix3 sigma: An admissible covariance.
    :param int n: Number of samples, at least one.
    :param int seed: Nonnegative seed; equal seeds give identical samples.
    :rtype: MinSampleSet
    """
    diagnostics = validate_admissible(sigma)
    if not diagnostics.admissible:
        raise AdmissibilityError(f"Inadmissible covariance: {diagnostics.reason}")
    n = int(n)
    if n < 1:
        raise DomainError("At least one sample is needed")
    if int(seed) < 0:
        raise DomainError("Seeds must be nonnegative")

    matrix = numpy.asarray(getattr(sigma, "matrix", sigma), dtype=float)
    lower = scipy.linalg.cholesky(0.5 * (matrix + matrix.T), lower=True)
    values = numpy.empty(n)
    for chunk, start in enumerate(range(0, n, CHUNK_SIZE)):
        stop = min(n, start + CHUNK_SIZE)
        bits = numpy.random.Philox(key=int(seed), counter=chunk << 128)
        normals = numpy.random.Generator(bits).standard_normal((stop - start, 3))
        values[start:stop] = numpy.min(normals @ lower.T, axis=1)
    return MinSampleSet(values, seed=int(seed), sigma=sigma)


def empirical_tail(samples, grid):
    """Fraction of samples at or above each grid point, with standard errors
    sqrt(m (1 - m) / n).

    :param MinSampleSet samples: The samples.
    :param grid: Strictly increasing thresholds.
    :rtype: TailGrid
    """
    values = numpy.sort(samples.values)
    n = len(values)
    grid = numpy.asarray(grid, dtype=float)
    m = (n - numpy.searchsorted(values, grid, side="left")) / n
    stderr = numpy.sqrt(m * (1.0 - m) / n)
    return TailGrid(grid, m, provenance="empirical", stderr=stderr, n_samples=n)
