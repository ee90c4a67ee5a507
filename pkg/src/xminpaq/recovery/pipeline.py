# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Entry points recovering a covariance, up to permutation, from the tail of the
minimum of its Gaussian vector."""

import logging

from xminpaq.core.covariance import validate_admissible
from xminpaq.error import AdmissibilityError
from xminpaq.tail.forward import analytic_tail
from .config import RecoveryConfig
from .routes import ROUTE_TYPES, ConstructiveRoute, FitRoute

log = logging.getLogger(__name__)


def _config(config, kwargs):
    if config is None:
        return RecoveryConfig(**kwargs)
    if kwargs:
        return config.replace(**kwargs)
    return config


def recover_sigma_fit(tail, config=None, **kwargs):
    """Recover a covariance by fitting the forward model to the tail.

    :param TailGrid tail: The tail, noiseless or empirical.
    :param RecoveryConfig config: Options; keyword arguments override them.
    :rtype: RecoveryReport
    """
    return FitRoute(_config(config, kwargs)).recover(tail)


def recover_sigma_constructive(tail, config=None, **kwargs):
    """Recover a covariance through the inverse Laplace chain.  Experimental.

    :param TailGrid tail: A noiseless tail.
    :param RecoveryConfig config: Options; keyword arguments override them.
    :rtype: RecoveryReport
    :raises DataError: If the tail is empirical.
    :raises InversionUnstableError: If the Laplace inversion breaks down.
    """
    return ConstructiveRoute(_config(config, kwargs)).recover(tail)


def recover_sigma(tail, config=None, **kwargs):
    """Recover a covariance by the route named in the configuration (the fit route
    unless told otherwise).

    :rtype: RecoveryReport

    .. note::
        See :class:`RecoveryConfig` for the available options.
    """
    config = _config(config, kwargs)
    route = ROUTE_TYPES[config.route](config)
    log.info("Recovering a covariance by the %s route", route.name)
    return route.recover(tail)


def roundtrip_report(sigma, config=None, **kwargs):
    """Compute the tail of a covariance on the configured grid, recover a covariance
    from it and attach the permutation distance between the two.

    :param CovarianceMatrix3 sigma: An admissible covariance.
    :rtype: RecoveryReport
    :raises AdmissibilityError: If sigma is not admissible.
    """
    config = _config(config, kwargs)
    diagnostics = validate_admissible(sigma)
    if not diagnostics.admissible:
        raise AdmissibilityError(f"Inadmissible covariance: {diagnostics.reason}")
    tail = analytic_tail(sigma, config.tail_grid())
    return recover_sigma(tail, config).with_truth(sigma)
