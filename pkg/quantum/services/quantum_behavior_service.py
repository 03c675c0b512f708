import logging

from behaviors.models import Behavior, NumericMode
from behaviors.services.validation_service import validate_behavior
from core.conf import bell_setting
from core.exceptions import InvariantError, ShapeError

logger = logging.getLogger(__name__)


def quantum_behavior(state, assemblage, negativity_floor=None):
    """
    Born rule p(a,b|x,y) = tr(rho (M_{a|x} (x) N_{b|y})). Round-off negatives
    down to -floor are clamped to zero; anything more negative is an error.
    """
    if (state.dim_a, state.dim_b) != (assemblage.dim_a, assemblage.dim_b):
        raise ShapeError(
            f"state is {state.dim_a}x{state.dim_b} but measurements act on "
            f"{assemblage.dim_a}x{assemblage.dim_b}"
        )
    floor = bell_setting('NEGATIVITY_FLOOR', negativity_floor)

    clamped = 0
    entries = []
    for x, alice_effects in enumerate(assemblage.alice):
        row = []
        for y, bob_effects in enumerate(assemblage.bob):
            cell = []
            for a, alice_effect in enumerate(alice_effects):
                outcomes = []
                for b, bob_effect in enumerate(bob_effects):
                    value = (state.rho @ alice_effect.kron(bob_effect)).trace().real
                    if value < 0:
                        if value < -floor:
                            raise InvariantError(
                                f"negative probability {value:.3e} at (x={x},y={y},a={a},b={b})"
                            )
                        value = 0.0
                        clamped += 1
                    outcomes.append(value)
                cell.append(outcomes)
            row.append(cell)
        entries.append(row)

    if clamped:
        logger.debug("clamped %d round-off negatives to zero", clamped)
    behavior = Behavior(assemblage.scenario, entries, NumericMode.FLOAT)
    validate_behavior(behavior).raise_for_violations('quantum behavior')
    return behavior
