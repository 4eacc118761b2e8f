"""Interval extensions, projections, and reconstruction.

A consistent database admits many joint distributions; the *extension
envelope* records, per joint cell, the exact minimum and maximum probability
over all of them.  Projection plays the same game over a single interval
distribution's box: the marginal bounds are min/max of fiber sums, not sums of
endpoints.  Reconstruction composes the two — project onto a scheme, then take
the envelope of the projected database — and measures what the scheme forgot.

Every endpoint returned by these functions is attained by a feasible witness
(the corresponding LP solution); the envelopes are exact, not outer bounds.
"""

from __future__ import annotations

import numpy as np

from .errors import InfeasibleError, SolverError
from .model import (
    Database,
    IntervalDistribution,
    RealDistribution,
    Scheme,
    Space,
)
from .polytope import (
    OPTIMAL,
    ConstraintSystem,
    constraints_from_box,
    constraints_from_database,
    optimize,
)


def _extreme(cs: ConstraintSystem, objective: np.ndarray, direction: str) -> float:
    outcome = optimize(cs, objective, direction)
    if outcome.status != OPTIMAL:
        raise SolverError(
            "a feasibility-checked system reported infeasible during the sweep"
        )
    return outcome.value


def _interval_envelope(
    cs: ConstraintSystem, objectives: np.ndarray, space: Space
) -> IntervalDistribution:
    """Min/max of each objective row over the system, as one table per row.

    Runs a single feasibility probe first so an empty system fails with one
    clear error instead of on an arbitrary cell.
    """
    probe = optimize(cs, np.zeros(cs.space.cell_count), "max")
    if probe.status != OPTIMAL:
        raise InfeasibleError(
            "no joint distribution satisfies the constraints",
            infeasibility=probe.infeasibility,
        )
    k = objectives.shape[0]
    lower = np.empty(k)
    upper = np.empty(k)
    for t in range(k):
        lower[t] = _extreme(cs, objectives[t], "min")
        upper[t] = _extreme(cs, objectives[t], "max")
    # Endpoints are probabilities of (sums of) cells; scrub float dust.
    lower = np.clip(lower, 0.0, 1.0)
    upper = np.clip(upper, 0.0, 1.0)
    lower = np.minimum(lower, upper)
    return IntervalDistribution(space, lower, upper)


def extension_star(db: Database) -> IntervalDistribution:
    """Narrowest interval table containing every joint consistent with ``db``.

    For each cell of the ambient space the endpoints are the exact min and max
    probabilities over all joint distributions whose marginals satisfy every
    table of the database.  Every such joint is more informative than the
    result, and each endpoint is attained by one of them.

    Raises :class:`InfeasibleError` when the database is inconsistent.
    """
    cs = constraints_from_database(db)
    n = cs.space.cell_count
    return _interval_envelope(cs, np.eye(n), cs.space)


def joint_intervals(db: Database) -> IntervalDistribution:
    """Joint cell bounds implied by a database of real-valued tables.

    The same envelope as :func:`extension_star`; under this name it is read as
    the narrowest interval distribution consistent with observed real
    marginals.
    """
    return extension_star(db)


def project_real(p: RealDistribution, onto) -> RealDistribution:
    """Marginal of ``p`` on the given variables, by fiber summation."""
    names = p.space.ordered_subset(onto)
    if not names:
        raise ValueError("projection requires at least one variable")
    sub = p.space.subspace(names)
    pm = p.space.projection_map(names)
    q = np.zeros(sub.cell_count)
    np.add.at(q, pm, p.p)
    return RealDistribution(sub, q)


def project_interval(i: IntervalDistribution, onto) -> IntervalDistribution:
    """Marginal interval table of ``i`` on the given variables.

    Each marginal cell's endpoints are the min and max of the corresponding
    fiber sum over ``{p : i.lower <= p <= i.upper, sum(p) = 1}``.  These are
    generally tighter than the sums of ``i``'s endpoints, because the
    normalization couples the cells.  For degenerate ``i`` this reduces to
    plain marginal summation.
    """
    names = i.space.ordered_subset(onto)
    if not names:
        raise ValueError("projection requires at least one variable")
    i.require_valid()
    sub = i.space.subspace(names)
    pm = i.space.projection_map(names)
    if i.is_degenerate:
        q = np.zeros(sub.cell_count)
        np.add.at(q, pm, i.lower)
        return IntervalDistribution(sub, q, q)
    cs = constraints_from_box(i)
    fibers = np.zeros((sub.cell_count, i.space.cell_count))
    fibers[pm, np.arange(i.space.cell_count)] = 1.0
    return _interval_envelope(cs, fibers, sub)


def project_database(i: IntervalDistribution, scheme: Scheme) -> Database:
    """One marginal table per scheme subset, over ``i``'s ambient space."""
    tables = tuple(project_interval(i, subset) for subset in scheme.subsets)
    return Database(tables, space=i.space)


def reconstruct(i: IntervalDistribution, scheme: Scheme) -> IntervalDistribution:
    """What the scheme's marginal tables still say about the joint.

    Projects ``i`` onto every scheme subset and returns the extension envelope
    of the projected database.  The result is never more informative than
    ``tighten(i)``; the gap between the two is exactly the information the
    scheme fails to represent.
    """
    return extension_star(project_database(i, scheme))


def tighten(i: IntervalDistribution) -> IntervalDistribution:
    """Shrink ``i``'s intervals until every endpoint is attainable.

    An endpoint can be slack when the remaining cells cannot absorb it under
    normalization (e.g. lower bounds 0 with upper bounds (0.3, 0.4, 0.5) force
    each cell's minimum up to 1 minus the others' maxima).  The result is the
    narrowest interval table with the same feasible set; idempotent.
    """
    cs = constraints_from_box(i)
    n = i.space.cell_count
    return _interval_envelope(cs, np.eye(n), i.space)
