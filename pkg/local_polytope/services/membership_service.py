import logging
from dataclasses import replace
from fractions import Fraction
from math import gcd, lcm

from behaviors.models import LocalModel
from behaviors.services.synthesis_service import behavior_of_model
from behaviors.services.validation_service import ensure_valid_behavior, validate_behavior
from core.conf import bell_setting
from core.exceptions import InvariantError
from nosignalling.services import check_no_signalling

from ..models.bell_functional_model import BellFunctional
from ..models.membership_model import MembershipMethod, MembershipResult, MembershipStatus
from ..repositories.strategy_repository import StrategyRepository
from ..utils.rationalize import rationalize_behavior
from ..utils.simplex import solve_phase_one
from .bell_functional_service import evaluate_bell_functional
from .chsh_service import CHSH_LOCAL_BOUND, chsh_all_variants, chsh_functional

logger = logging.getLogger(__name__)


class MembershipService:
    """
    Decide whether a behavior lies in the local polytope.

    Exact behaviors go through an exact phase-one LP over the convex hull of
    the deterministic strategies: feasible solutions become a local model,
    infeasible ones a Bell functional built from the Farkas multipliers.
    Floating behaviors in the CHSH scenario use the CHSH criterion; in any
    other scenario they are rationalized first, with a logged warning.
    """

    def __init__(self, strategy_cap=None, tolerance=None, max_denominator=None):
        self.repository = StrategyRepository(strategy_cap)
        self.tolerance = bell_setting('FLOAT_TOLERANCE', tolerance)
        self.max_denominator = bell_setting('MAX_DENOMINATOR', max_denominator)

    def execute(self, behavior):
        if behavior.is_exact:
            ensure_valid_behavior(behavior)
            return self.solve_exact(behavior)

        validate_behavior(behavior, tolerance=self.tolerance).raise_for_violations('behavior')
        if behavior.scenario.is_chsh and check_no_signalling(behavior, self.tolerance).ok:
            return self.classify_by_chsh(behavior)

        warning = (
            f"behavior on {behavior.scenario} is approximate; rationalized with "
            f"denominators up to {self.max_denominator} before the exact test"
        )
        logger.warning(warning)
        result = self.solve_exact(rationalize_behavior(behavior, self.max_denominator))
        return replace(result, method=MembershipMethod.RATIONALIZED_LP, warning=warning)

    def classify_by_chsh(self, behavior):
        """
        A no-signalling (2,2,2) behavior is local iff every CHSH variant is
        at most 2.
        """
        summary = chsh_all_variants(behavior)
        if summary.maximum <= CHSH_LOCAL_BOUND + self.tolerance:
            return MembershipResult(
                status=MembershipStatus.MEMBER,
                method=MembershipMethod.CHSH,
                value=summary.maximum,
            )
        return MembershipResult(
            status=MembershipStatus.NON_MEMBER,
            method=MembershipMethod.CHSH,
            certificate=chsh_functional(summary.argmax),
            value=summary.maximum,
        )

    def solve_exact(self, behavior):
        scenario = behavior.scenario
        strategies = self.repository.get_strategies(scenario)
        rows, rhs, index = self.constraint_system(behavior, strategies)

        logger.debug("membership LP: %d strategies, %d constraints", len(strategies), len(rows))
        result = solve_phase_one(rows, rhs)

        if result.feasible:
            components = [
                strategies[j].component(scenario, weight)
                for j, weight in enumerate(result.solution)
                if weight > 0
            ]
            model = LocalModel(scenario, components)
            if behavior_of_model(model) != behavior:
                raise InvariantError("LP solution does not reproduce the behavior")
            return MembershipResult(status=MembershipStatus.MEMBER, model=model)

        certificate, value = self.certificate(behavior, result.duals, index)
        return MembershipResult(
            status=MembershipStatus.NON_MEMBER,
            certificate=certificate,
            value=value,
        )

    @staticmethod
    def constraint_system(behavior, strategies):
        """
        One row per (x,y,a,b) equating the mixture to p(a,b|x,y), plus the
        normalization row sum q = 1.
        """
        scenario = behavior.scenario
        index = {}
        rhs = []
        for x, y in scenario.cells():
            for a, b in scenario.outcome_pairs(x, y):
                index[(x, y, a, b)] = len(rhs)
                rhs.append(behavior.p(a, b, x, y))

        rows = [[0] * len(strategies) for _ in range(len(rhs) + 1)]
        for j, strategy in enumerate(strategies):
            for x, y in scenario.cells():
                rows[index[(x, y, strategy.alice_map[x], strategy.bob_map[y])]][j] = 1
            rows[-1][j] = 1
        rhs.append(Fraction(1))
        return rows, rhs, index

    @classmethod
    def certificate(cls, behavior, duals, index):
        """
        In the CHSH scenario a violated CHSH variant is reported, since it is
        the canonical facet; elsewhere the Farkas functional itself.
        """
        if behavior.scenario.is_chsh:
            summary = chsh_all_variants(behavior)
            if summary.maximum > CHSH_LOCAL_BOUND:
                return chsh_functional(summary.argmax), summary.maximum
        return cls.farkas_functional(behavior, duals, index)

    @staticmethod
    def farkas_functional(behavior, duals, index):
        """Scale the cell multipliers of the Farkas vector to coprime integers."""
        scenario = behavior.scenario
        multipliers = {key: duals[row] for key, row in index.items()}
        scale = lcm(*(m.denominator for m in multipliers.values()))
        integers = {key: int(m * scale) for key, m in multipliers.items()}
        divisor = gcd(*integers.values()) or 1

        coefficients = [
            [
                [
                    [integers[(x, y, a, b)] // divisor for b in range(scenario.bob_outcomes[y])]
                    for a in range(scenario.alice_outcomes[x])
                ]
                for y in range(scenario.bob_settings)
            ]
            for x in range(scenario.alice_settings)
        ]
        functional = BellFunctional(scenario, coefficients)
        evaluation = evaluate_bell_functional(functional, behavior)
        if not evaluation.violated:
            raise InvariantError(
                f"Farkas functional does not separate: value {evaluation.value} "
                f"<= bound {functional.local_bound}"
            )
        return functional, evaluation.value


def membership(behavior, strategy_cap=None, tolerance=None, max_denominator=None):
    return MembershipService(strategy_cap, tolerance, max_denominator).execute(behavior)
