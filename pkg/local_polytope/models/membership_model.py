from dataclasses import dataclass
from typing import Optional

from django.db import models

from behaviors.models import LocalModel

from .bell_functional_model import BellFunctional


class MembershipStatus(models.TextChoices):
    MEMBER = 'member', 'Member'
    NON_MEMBER = 'non_member', 'Non-member'


class MembershipMethod(models.TextChoices):
    LP = 'lp', 'Exact linear program'
    CHSH = 'chsh', 'CHSH criterion'
    RATIONALIZED_LP = 'rationalized_lp', 'Exact linear program on a rationalized behavior'


@dataclass(frozen=True)
class MembershipResult:
    """
    Outcome of the local-polytope test. Members carry a deterministic
    mixture reproducing the behavior (when the exact LP ran); non-members
    carry a violated Bell functional and its value on the behavior.
    """
    status: str
    method: str = MembershipMethod.LP
    model: Optional[LocalModel] = None
    certificate: Optional[BellFunctional] = None
    value: object = None
    warning: str = ''

    @property
    def is_member(self):
        return self.status == MembershipStatus.MEMBER
