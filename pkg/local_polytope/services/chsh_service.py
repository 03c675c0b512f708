from dataclasses import dataclass
from itertools import product

from behaviors.services.fixture_service import CHSH_SCENARIO
from core.exceptions import ParameterError, ShapeError

from ..models.bell_functional_model import BellFunctional

CHSH_LOCAL_BOUND = 2

# Signs (s00, s01, s10, s11) of S = sum s_xy E(x,y) with an odd number of
# minus signs. Index 0 is E00 + E01 + E10 - E11.
CHSH_SIGN_PATTERNS = tuple(
    signs for signs in product((1, -1), repeat=4) if signs.count(-1) % 2 == 1
)


@dataclass(frozen=True)
class ChshSummary:
    values: tuple
    argmax: int

    @property
    def maximum(self):
        return self.values[self.argmax]


def _require_chsh(scenario):
    if not scenario.is_chsh:
        raise ShapeError(f"CHSH needs two binary settings per party, got {scenario}")


def _signs(variant):
    if not 0 <= variant < len(CHSH_SIGN_PATTERNS):
        raise ParameterError(f"CHSH variant {variant} outside 0..{len(CHSH_SIGN_PATTERNS) - 1}")
    return CHSH_SIGN_PATTERNS[variant]


def correlator(behavior, x, y):
    """E(x,y) = sum_{a,b} (-1)^(a+b) p(a,b|x,y)."""
    _require_chsh(behavior.scenario)
    cell = behavior.cell(x, y)
    return cell[0][0] - cell[0][1] - cell[1][0] + cell[1][1]


def chsh_value(behavior, variant=0):
    _require_chsh(behavior.scenario)
    signs = _signs(variant)
    return sum(
        sign * correlator(behavior, x, y)
        for sign, (x, y) in zip(signs, behavior.scenario.cells())
    )


def chsh_all_variants(behavior):
    """All eight CHSH values; ties resolve to the lowest variant index."""
    values = tuple(chsh_value(behavior, k) for k in range(len(CHSH_SIGN_PATTERNS)))
    argmax = max(range(len(values)), key=lambda k: (values[k], -k))
    return ChshSummary(values=values, argmax=argmax)


def chsh_functional(variant=0):
    signs = _signs(variant)
    coefficients = [
        [
            [[signs[2 * x + y] * (-1) ** (a + b) for b in range(2)] for a in range(2)]
            for y in range(2)
        ]
        for x in range(2)
    ]
    return BellFunctional(CHSH_SCENARIO, coefficients, CHSH_LOCAL_BOUND)
