import logging
from fractions import Fraction
from itertools import combinations

from behaviors.services.marginal_service import marginal_alice, marginal_bob
from behaviors.services.validation_service import ensure_valid_behavior
from core.conf import bell_setting
from core.exceptions import ModeError, ParameterError

from .models import NoSignallingReport, Party, SignallingWitness

logger = logging.getLogger(__name__)


def _party_discrepancies(behavior, party):
    scenario = behavior.scenario
    if party == Party.ALICE:
        own, other, marginal = scenario.alice_settings, scenario.bob_settings, marginal_alice
    else:
        own, other, marginal = scenario.bob_settings, scenario.alice_settings, marginal_bob

    for setting in range(own):
        if party == Party.ALICE:
            marginals = [marginal(behavior, setting, c) for c in range(other)]
        else:
            marginals = [marginal(behavior, c, setting) for c in range(other)]
        for first, second in combinations(range(other), 2):
            for outcome, (p, q) in enumerate(zip(marginals[first], marginals[second])):
                yield setting, outcome, (first, second), abs(p - q)


def check_no_signalling(behavior, tolerance=None):
    """
    Compare every marginal of each party across all settings of the other
    party. ok iff no pairwise discrepancy exceeds the tolerance; the worst
    violation is the max-norm over all of them.

    Exact behaviors are checked at tolerance 0; floating ones default to the
    configured FLOAT_TOLERANCE.
    """
    if tolerance is not None and tolerance < 0:
        raise ParameterError(f"tolerance must be nonnegative, got {tolerance}")
    if behavior.is_exact:
        if tolerance:
            raise ModeError("exact behaviors are checked with tolerance 0")
        tolerance = Fraction(0)
        worst = Fraction(0)
    else:
        tolerance = bell_setting('FLOAT_TOLERANCE', tolerance)
        worst = 0.0

    ensure_valid_behavior(behavior)

    witnesses = []
    for party in (Party.ALICE, Party.BOB):
        for setting, outcome, pair, discrepancy in _party_discrepancies(behavior, party):
            worst = max(worst, discrepancy)
            if discrepancy > tolerance:
                witnesses.append(SignallingWitness(str(party), setting, outcome, pair, discrepancy))

    if witnesses:
        logger.info("behavior signals: %d witnesses, worst %s", len(witnesses), worst)
    return NoSignallingReport(
        ok=not witnesses,
        worst_violation=worst,
        tolerance=tolerance,
        witnesses=tuple(witnesses),
    )
