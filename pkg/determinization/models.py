from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class IntervalAtom:
    """
    A half-open slice [lower, upper) of the auxiliary uniform variable on
    which every setting's deterministic response is constant.
    assignment[x] is the outcome chosen for setting x inside the slice.
    """
    lower: Fraction
    upper: Fraction
    assignment: tuple

    @property
    def width(self):
        return self.upper - self.lower
