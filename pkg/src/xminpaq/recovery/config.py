# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Options for recovering a covariance from a tail."""

import numpy

from xminpaq.error import DomainError

ROUTES = ("fit", "constructive")


class RecoveryConfig:
    """Options shared by both recovery routes.

    Every option is a keyword argument with a default; unknown keywords are rejected.

    - ``route``: "fit" (default) or "constructive".
    - ``kappa_window``, ``kappa_log_prefactor``, ``kappa_weight_power``: passed to
      :func:`~xminpaq.tail.estimate_kappa`.
    - ``max_evaluations``: objective evaluations allowed per start of the simplex search.
    - ``multistart``: number of starts of the fit route.
    - ``tolerance``: largest accepted mean squared residual on a noiseless tail.
    - ``chi2_tolerance``: largest accepted reduced chi-square on an empirical tail.
    - ``seed``: seed of the random starts.
    - ``t_min``, ``t_max``, ``grid_points``: the tail grid of round trips.
    - ``rho_points``, ``rho_min``, ``rho_max``: the radii of the constructive route.
    - ``gs_order``, ``gs_tolerance``: outer Gaver-Stehfest order and error allowance.
    """

    def __init__(self, **kwargs):
        """
        :raises DomainError: On unknown options or values out of range.
        """
        self.set_defaults(
            kwargs,
            route="fit",
            kappa_window=None,
            kappa_log_prefactor=3.0,
            kappa_weight_power=2.0,
            max_evaluations=600,
            multistart=8,
            tolerance=1e-12,
            chi2_tolerance=4.0,
            seed=0,
            t_min=-2.0,
            t_max=6.0,
            grid_points=201,
            rho_points=8,
            rho_min=0.8,
            rho_max=3.0,
            gs_order=16,
            gs_tolerance=0.25,
        )
        if kwargs:
            raise DomainError(f"Unknown recovery options: {', '.join(sorted(kwargs))}")
        self._validate()

    def __repr__(self):
        return f"RecoveryConfig({', '.join(f'{k}={v!r}' for k, v in self.to_dict().items())})"

    def set_defaults(self, kwargs, **defaults):
        """Set attributes from keyword arguments, falling back on defaults.

        :param kwargs: The caller's keyword arguments, mutated to only contain
          unused values.
        """
        self._keys = tuple(defaults)
        for k, v in defaults.items():
            setattr(self, k, kwargs.pop(k, v))

    def _validate(self):
        if self.route not in ROUTES:
            raise DomainError(f"Unknown route {self.route!r}; choose one of {ROUTES}")
        for name in ("max_evaluations", "multistart", "grid_points", "rho_points"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")
            setattr(self, name, int(value))
        for name in ("tolerance", "chi2_tolerance", "rho_max", "gs_tolerance"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.kappa_window is not None and not 0 < self.kappa_window < 1:
            raise DomainError("kappa_window must lie in (0, 1)")
        if self.gs_order < 4 or self.gs_order % 2:
            raise DomainError(f"gs_order must be even and at least 4, got {self.gs_order!r}")
        if not 0 < self.rho_min < self.rho_max:
            raise DomainError("Radii need 0 < rho_min < rho_max")
        if not self.t_min < self.t_max:
            raise DomainError("t_min must be smaller than t_max")
        if self.grid_points < 3:
            raise DomainError("The tail grid needs at least 3 points")
        if self.rho_points < 3:
            raise DomainError("The constructive route needs at least 3 radii")
        if int(self.seed) < 0:
            raise DomainError("Seeds must be nonnegative")

    def replace(self, **changes):
        """A copy with some options changed."""
        options = self.to_dict()
        options.update(changes)
        return type(self)(**options)

    def tail_grid(self):
        """The thresholds t of a round trip: ``grid_points`` from ``t_min`` to ``t_max``."""
        return numpy.linspace(self.t_min, self.t_max, self.grid_points)

    def to_dict(self):
        return {key: getattr(self, key) for key in self._keys}
