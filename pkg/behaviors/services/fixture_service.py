from fractions import Fraction

from core.exceptions import ParameterError

from ..models import Behavior, NumericMode, Scenario

CHSH_SCENARIO = Scenario((2, 2), (2, 2))


def uniform_behavior(scenario):
    entries = [
        [
            [
                [Fraction(1, scenario.alice_outcomes[x] * scenario.bob_outcomes[y])] * scenario.bob_outcomes[y]
                for _ in range(scenario.alice_outcomes[x])
            ]
            for y in range(scenario.bob_settings)
        ]
        for x in range(scenario.alice_settings)
    ]
    return Behavior(scenario, entries, NumericMode.EXACT)


def pr_box(variant=0):
    """
    PR-type extremal of the (2,2,2) no-signalling polytope:
    p(a,b|x,y) = 1/2 iff a xor b = xy xor rx xor sy xor t, where the variant
    index packs the bits (r, s, t). Variant 0 is the canonical PR box.
    """
    if not 0 <= variant < 8:
        raise ParameterError(f"PR box variant {variant} outside 0..7")
    r, s, t = (variant >> 2) & 1, (variant >> 1) & 1, variant & 1
    half = Fraction(1, 2)
    entries = [
        [
            [
                [half if (a ^ b) == ((x * y) ^ (r * x) ^ (s * y) ^ t) else Fraction(0) for b in range(2)]
                for a in range(2)
            ]
            for y in range(2)
        ]
        for x in range(2)
    ]
    return Behavior(CHSH_SCENARIO, entries, NumericMode.EXACT)
