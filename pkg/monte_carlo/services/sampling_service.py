import logging
from collections import defaultdict
from fractions import Fraction

import numpy as np

from behaviors.services.validation_service import ensure_valid_behavior, ensure_valid_model
from core.conf import bell_setting
from core.exceptions import ParameterError

from ..models import SampleRecord
from ..utils.prng import Xoshiro256StarStar, derive_seed

logger = logging.getLogger(__name__)


def cell_stream(seed, x, y, lanes=None):
    """Independent stream for the (x,y) cell, whatever order cells run in."""
    stream_seed = derive_seed(seed, x, y)
    logger.debug("stream for (x=%d,y=%d) under seed %d: %#018x", x, y, seed, stream_seed)
    return Xoshiro256StarStar(stream_seed, bell_setting('SAMPLER_LANES', lanes))


def _cumulative(rows):
    """
    Float cumulative sums of probability rows, padded to equal width. From
    the last positive entry on, the sum is pinned to 1 so that round-off
    never selects a trailing zero-probability outcome.
    """
    width = max(len(row) for row in rows)
    table = np.ones((len(rows), width))
    for i, row in enumerate(rows):
        values = [float(Fraction(v)) for v in row]
        table[i, :len(row)] = np.cumsum(values)
        positive = [j for j, v in enumerate(values) if v > 0]
        if positive:
            table[i, positive[-1]:] = 1.0
    return table


def _invert(cumulative, uniforms, outcomes):
    """Inverse CDF: the first index whose cumulative sum exceeds u."""
    drawn = (uniforms[:, None] >= cumulative).sum(axis=1)
    return np.minimum(drawn, outcomes - 1)


def draw_cell(model, x, y, count, seed, lanes=None):
    """
    Draw `count` outcome pairs at (x,y): a component by weight, then a and b
    independently from that component's responses. Three uniforms per draw.
    """
    uniforms = cell_stream(seed, x, y, lanes).random(3 * count).reshape(count, 3)
    components = model.components

    weights = _cumulative([[c.weight for c in components]])[0]
    k = _invert(weights[None, :], uniforms[:, 0], len(components))

    alice = _cumulative([c.alice[x] for c in components])[k]
    bob = _cumulative([c.bob[y] for c in components])[k]
    a = _invert(alice, uniforms[:, 1], model.scenario.alice_outcomes[x])
    b = _invert(bob, uniforms[:, 2], model.scenario.bob_outcomes[y])
    return a, b


def draw_behavior_cell(behavior, x, y, count, seed, lanes=None):
    """Draw outcome pairs straight from a behavior's (x,y) cell, row-major in (a,b)."""
    uniforms = cell_stream(seed, x, y, lanes).random(count)
    cell = behavior.cell(x, y)
    n_b = behavior.scenario.bob_outcomes[y]
    flat = [value for outcomes in cell for value in outcomes]
    pairs = _invert(_cumulative([flat])[0][None, :], uniforms, len(flat))
    return pairs // n_b, pairs % n_b


def _group_schedule(schedule, scenario):
    if not schedule:
        raise ParameterError("sampling schedule is empty")
    positions = defaultdict(list)
    for i, (x, y) in enumerate(schedule):
        scenario.check_setting(x, y)
        positions[(x, y)].append(i)
    return positions


def _records(schedule, positions, draw):
    records = [None] * len(schedule)
    for (x, y), indices in sorted(positions.items()):
        a, b = draw(x, y, len(indices))
        for i, a_i, b_i in zip(indices, a.tolist(), b.tolist()):
            records[i] = SampleRecord(x, y, a_i, b_i)
    return records


def sample_model(model, schedule, seed=None, lanes=None):
    """
    One record per scheduled (x,y). Occurrences of the same cell consume its
    stream in schedule order, so records depend only on (model, schedule,
    seed).
    """
    ensure_valid_model(model)
    seed = bell_setting('DEFAULT_SEED', seed)
    positions = _group_schedule(schedule, model.scenario)
    return _records(schedule, positions, lambda x, y, n: draw_cell(model, x, y, n, seed, lanes))


def sample_behavior(behavior, schedule, seed=None, lanes=None):
    ensure_valid_behavior(behavior)
    seed = bell_setting('DEFAULT_SEED', seed)
    positions = _group_schedule(schedule, behavior.scenario)
    return _records(schedule, positions, lambda x, y, n: draw_behavior_cell(behavior, x, y, n, seed, lanes))


def full_schedule(scenario, per_cell):
    """Every (x,y) cell repeated per_cell times, cell by cell."""
    if per_cell < 1:
        raise ParameterError(f"samples per cell must be positive, got {per_cell}")
    return [(x, y) for x, y in scenario.cells() for _ in range(per_cell)]


def sample_cell_counts(model, x, y, count, seed, lanes=None):
    """Outcome-pair counts [a][b] of `count` draws at (x,y)."""
    model.scenario.check_setting(x, y)
    a, b = draw_cell(model, x, y, count, seed, lanes)
    counts = np.zeros((model.scenario.alice_outcomes[x], model.scenario.bob_outcomes[y]), dtype=np.int64)
    np.add.at(counts, (a, b), 1)
    return counts
