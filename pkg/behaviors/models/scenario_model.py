from dataclasses import dataclass

from core.exceptions import ShapeError


@dataclass(frozen=True)
class Scenario:
    """
    Measurement structure of a bipartite experiment.
    Each party has a list of settings; entry x is the number of outcomes of
    setting x, with outcomes labelled 0..count-1.
    """
    alice_outcomes: tuple
    bob_outcomes: tuple

    def __post_init__(self):
        object.__setattr__(self, 'alice_outcomes', tuple(int(n) for n in self.alice_outcomes))
        object.__setattr__(self, 'bob_outcomes', tuple(int(n) for n in self.bob_outcomes))

        for party, counts in (('alice', self.alice_outcomes), ('bob', self.bob_outcomes)):
            if not counts:
                raise ShapeError(f"{party} needs at least one setting")
            for setting, count in enumerate(counts):
                if count < 1:
                    raise ShapeError(
                        f"{party} setting {setting} has outcome_count {count}, expected >= 1"
                    )

    def __str__(self):
        return f"Scenario(alice={list(self.alice_outcomes)}, bob={list(self.bob_outcomes)})"

    @property
    def alice_settings(self):
        return len(self.alice_outcomes)

    @property
    def bob_settings(self):
        return len(self.bob_outcomes)

    @property
    def is_chsh(self):
        """Two binary settings per party, the scenario CHSH is defined on."""
        return self.alice_outcomes == (2, 2) and self.bob_outcomes == (2, 2)

    def cells(self):
        for x in range(self.alice_settings):
            for y in range(self.bob_settings):
                yield x, y

    def outcome_pairs(self, x, y):
        for a in range(self.alice_outcomes[x]):
            for b in range(self.bob_outcomes[y]):
                yield a, b

    def transposed(self):
        return Scenario(self.bob_outcomes, self.alice_outcomes)

    def check_setting(self, x, y):
        if not 0 <= x < self.alice_settings:
            raise ShapeError(f"alice setting x={x} out of range 0..{self.alice_settings - 1}")
        if not 0 <= y < self.bob_settings:
            raise ShapeError(f"bob setting y={y} out of range 0..{self.bob_settings - 1}")
