from behaviors.models import Behavior, NumericMode
from core.exceptions import CoverageError, ShapeError


def count_records(records, scenario):
    """Outcome counts[x][y][a][b] of a record list, checking every index."""
    counts = [
        [
            [[0] * scenario.bob_outcomes[y] for _ in range(scenario.alice_outcomes[x])]
            for y in range(scenario.bob_settings)
        ]
        for x in range(scenario.alice_settings)
    ]
    for i, record in enumerate(records):
        scenario.check_setting(record.x, record.y)
        if not 0 <= record.a < scenario.alice_outcomes[record.x]:
            raise ShapeError(f"record {i}: alice outcome {record.a} out of range at x={record.x}")
        if not 0 <= record.b < scenario.bob_outcomes[record.y]:
            raise ShapeError(f"record {i}: bob outcome {record.b} out of range at y={record.y}")
        counts[record.x][record.y][record.a][record.b] += 1
    return counts


def empirical_behavior(records, scenario):
    """
    Frequency table of the records, one cell per (x,y). Every cell of the
    scenario needs at least one record.
    """
    counts = count_records(records, scenario)
    missing = [
        (x, y) for x, y in scenario.cells()
        if not sum(sum(row) for row in counts[x][y])
    ]
    if missing:
        cells = ', '.join(f"(x={x},y={y})" for x, y in missing)
        raise CoverageError(f"no records for {cells}")

    entries = []
    for row in counts:
        entries.append([])
        for cell in row:
            total = sum(sum(outcomes) for outcomes in cell)
            entries[-1].append([[n / total for n in outcomes] for outcomes in cell])
    return Behavior(scenario, entries, NumericMode.FLOAT), counts


def max_deviation(first, second):
    """Largest absolute entrywise difference between two behaviors."""
    if first.scenario != second.scenario:
        raise ShapeError(f"cannot compare {first.scenario} with {second.scenario}")
    return max(
        abs(float(first.p(a, b, x, y)) - float(second.p(a, b, x, y)))
        for x, y in first.scenario.cells()
        for a, b in first.scenario.outcome_pairs(x, y)
    )
