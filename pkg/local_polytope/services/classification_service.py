from dataclasses import dataclass
from typing import Optional

from django.db import models

from nosignalling.models import NoSignallingReport
from nosignalling.services import check_no_signalling

from ..models.membership_model import MembershipResult
from .membership_service import MembershipService


class Verdict(models.TextChoices):
    LOCAL_SEPARABLE = 'local_separable', 'No-signalling and inside the local polytope'
    LOCAL_NONSEPARABLE = 'local_nonseparable', 'No-signalling but outside the local polytope'
    SIGNALLING = 'signalling', 'Signalling'


@dataclass(frozen=True)
class Classification:
    verdict: str
    no_signalling: NoSignallingReport
    membership: Optional[MembershipResult] = None


def classify_behavior(behavior, tolerance=None, strategy_cap=None):
    """
    Combine the no-signalling check with local-polytope membership.
    Signalling behaviors stop at the first check; membership is only
    decided inside the no-signalling set.
    """
    tolerance = None if behavior.is_exact else tolerance
    report = check_no_signalling(behavior, tolerance)
    if not report.ok:
        return Classification(verdict=Verdict.SIGNALLING, no_signalling=report)

    result = MembershipService(strategy_cap=strategy_cap, tolerance=tolerance).execute(behavior)
    verdict = Verdict.LOCAL_SEPARABLE if result.is_member else Verdict.LOCAL_NONSEPARABLE
    return Classification(verdict=verdict, no_signalling=report, membership=result)
