from ..models import Behavior


def marginal_alice(behavior: Behavior, x, y):
    """Alice's distribution over a for the setting pair (x, y)."""
    cell = behavior.cell(x, y)
    return tuple(sum(outcomes) for outcomes in cell)


def marginal_bob(behavior: Behavior, x, y):
    cell = behavior.cell(x, y)
    return tuple(
        sum(cell[a][b] for a in range(len(cell)))
        for b in range(behavior.scenario.bob_outcomes[y])
    )
