from dataclasses import dataclass, field


@dataclass(frozen=True)
class SampleRecord:
    x: int
    y: int
    a: int
    b: int


@dataclass(frozen=True)
class CellComparison:
    """
    Sampled frequencies of one model at (x,y) checked against the exact
    behavior of the other. z_scores is indexed [a][b]; entries with an
    exact probability of 0 or 1 carry no z-score and are checked by count.
    """
    direction: str
    x: int
    y: int
    max_deviation: float
    z_scores: tuple
    exact_mismatches: tuple = field(default_factory=tuple)

    @property
    def max_abs_z(self):
        values = [abs(z) for row in self.z_scores for z in row if z is not None]
        return max(values, default=0.0)


@dataclass(frozen=True)
class ComparisonReport:
    cells: tuple
    passed: bool
    sample_count: int
    seed: int
    threshold: float

    @property
    def max_abs_z(self):
        return max((cell.max_abs_z for cell in self.cells), default=0.0)

    @property
    def failing_cells(self):
        return tuple(
            cell for cell in self.cells
            if cell.exact_mismatches or cell.max_abs_z > self.threshold
        )
