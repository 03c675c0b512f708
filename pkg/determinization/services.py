import logging
from bisect import bisect_right
from fractions import Fraction
from itertools import accumulate

from behaviors.models import LocalModel, ModelComponent
from behaviors.services.validation_service import ensure_valid_model
from core.exceptions import ModeError, ParameterError

from .models import IntervalAtom

logger = logging.getLogger(__name__)


def _resolve_ordering(table, ordering):
    if ordering is None:
        return [tuple(range(len(row))) for row in table]
    if len(ordering) != len(table):
        raise ParameterError(f"ordering covers {len(ordering)} settings, table has {len(table)}")
    resolved = []
    for setting, (row, order) in enumerate(zip(table, ordering)):
        order = tuple(order)
        if sorted(order) != list(range(len(row))):
            raise ParameterError(f"ordering {order} is not a permutation of setting {setting}'s outcomes")
        resolved.append(order)
    return resolved


def _partial_sums(row, order):
    return list(accumulate((row[outcome] for outcome in order), initial=Fraction(0)))


def breakpoints(response_table, ordering=None):
    """
    Sorted union, over settings, of the cumulative sums of one party's
    response rows taken in the given outcome order (canonical order by
    default). Always contains 0 and 1.
    """
    orders = _resolve_ordering(response_table, ordering)
    points = {Fraction(0), Fraction(1)}
    for row, order in zip(response_table, orders):
        points.update(_partial_sums(row, order))
    return sorted(points)


def interval_atoms(response_table, ordering=None):
    """
    Partition [0,1) at the breakpoints. On each atom, setting x answers with
    the outcome whose cumulative interval [sum_{i<j}, sum_{i<=j}) contains it.
    """
    orders = _resolve_ordering(response_table, ordering)
    cumulative = [_partial_sums(row, order)[1:] for row, order in zip(response_table, orders)]
    points = breakpoints(response_table, orders)

    atoms = []
    for lower, upper in zip(points, points[1:]):
        assignment = tuple(
            order[min(bisect_right(sums, lower), len(order) - 1)]
            for sums, order in zip(cumulative, orders)
        )
        atoms.append(IntervalAtom(lower, upper, assignment))
    return atoms


def alice_atoms(component, ordering=None):
    return interval_atoms(component.alice, ordering)


def bob_atoms(component, ordering=None):
    return interval_atoms(component.bob, ordering)


def _one_hot(assignment, outcome_counts):
    return [
        [Fraction(int(outcome == chosen)) for outcome in range(count)]
        for chosen, count in zip(assignment, outcome_counts)
    ]


def determinize(model, orderings=None):
    """
    Replace every stochastic component by deterministic ones, one per pair
    of Alice/Bob interval atoms, weighted by the component weight times both
    atom widths. The resulting model reproduces the input behavior exactly.

    `orderings` optionally maps 'alice'/'bob' to per-setting outcome
    permutations; the canonical stored order is used otherwise.
    """
    if not isinstance(model, LocalModel):
        raise ModeError("determinization needs an exact LocalModel")
    ensure_valid_model(model)
    orderings = orderings or {}
    scenario = model.scenario

    components = []
    for k, component in enumerate(model.components):
        if component.weight == 0:
            continue
        alice_slices = alice_atoms(component, orderings.get('alice'))
        bob_slices = bob_atoms(component, orderings.get('bob'))
        for alice_atom in alice_slices:
            alice = _one_hot(alice_atom.assignment, scenario.alice_outcomes)
            for bob_atom in bob_slices:
                components.append(ModelComponent(
                    weight=component.weight * alice_atom.width * bob_atom.width,
                    alice=alice,
                    bob=_one_hot(bob_atom.assignment, scenario.bob_outcomes),
                ))
        logger.debug(
            "component %d: %d alice atoms x %d bob atoms", k, len(alice_slices), len(bob_slices)
        )

    logger.debug("determinized %d components into %d", len(model), len(components))
    return LocalModel(scenario, components)


def component_bound(model):
    """Upper bound on the number of components determinize can produce."""
    scenario = model.scenario
    alice = 1 + sum(n - 1 for n in scenario.alice_outcomes)
    bob = 1 + sum(n - 1 for n in scenario.bob_outcomes)
    return len(model) * alice * bob
