from dataclasses import dataclass

from behaviors.models import Behavior, Scenario
from core.exceptions import InvariantError

from ..repositories.strategy_repository import StrategyRepository


@dataclass(frozen=True)
class BellFunctional:
    """
    Linear functional sum c[x][y][a][b] p(a,b|x,y) together with its
    maximum over deterministic strategies. The bound is recomputed on
    construction; a stated bound that disagrees is rejected.
    """
    scenario: Scenario
    coefficients: tuple
    local_bound: object = None

    def __post_init__(self):
        # Behavior performs the shape check and exact conversion for us.
        table = Behavior(self.scenario, self.coefficients).entries
        object.__setattr__(self, 'coefficients', table)

        bound = StrategyRepository().local_bound(self.scenario, table)
        if self.local_bound is not None and self.local_bound != bound:
            raise InvariantError(f"stated local bound {self.local_bound} differs from recomputed {bound}")
        object.__setattr__(self, 'local_bound', bound)
