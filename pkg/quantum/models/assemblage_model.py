from dataclasses import dataclass

from behaviors.models import Scenario
from core.conf import bell_setting
from core.exceptions import InvariantError, ShapeError

from ..utils.linalg import ComplexMatrix
from .state_model import check_hermitian, check_positive


def _freeze_party(settings, party):
    if not settings:
        raise ShapeError(f"{party} needs at least one setting")
    frozen = []
    dimension = None
    for x, effects in enumerate(settings):
        if not effects:
            raise ShapeError(f"{party} setting {x} has no effects")
        row = []
        for a, effect in enumerate(effects):
            effect = effect if isinstance(effect, ComplexMatrix) else ComplexMatrix(effect)
            label = f"{party} effect (setting {x}, outcome {a})"
            check_hermitian(effect, label)
            if dimension is None:
                dimension = effect.rows
            elif effect.rows != dimension:
                raise ShapeError(f"{label} is {effect.rows}x{effect.cols}, expected {dimension}x{dimension}")
            check_positive(effect, label)
            row.append(effect)

        total = row[0]
        for effect in row[1:]:
            total = total + effect
        deviation = total.max_deviation(ComplexMatrix.identity(dimension))
        if deviation > bell_setting('FLOAT_TOLERANCE'):
            raise InvariantError(
                f"{party} setting {x}: effects sum to identity only within {deviation:.3e}"
            )
        frozen.append(tuple(row))
    return tuple(frozen), dimension


@dataclass(frozen=True)
class MeasurementAssemblage:
    """
    Per party, per setting, the list of POVM effects (one per outcome).
    alice[x][a] is M_{a|x}; bob[y][b] is N_{b|y}.
    """
    alice: tuple
    bob: tuple

    def __post_init__(self):
        alice, dim_a = _freeze_party(self.alice, 'alice')
        bob, dim_b = _freeze_party(self.bob, 'bob')
        object.__setattr__(self, 'alice', alice)
        object.__setattr__(self, 'bob', bob)
        object.__setattr__(self, '_dims', (dim_a, dim_b))

    @property
    def dim_a(self):
        return self._dims[0]

    @property
    def dim_b(self):
        return self._dims[1]

    @property
    def scenario(self):
        return Scenario(
            tuple(len(effects) for effects in self.alice),
            tuple(len(effects) for effects in self.bob),
        )
