import logging
from dataclasses import dataclass
from fractions import Fraction

from core.exceptions import InvariantError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseOneResult:
    """
    Result of minimizing the sum of artificials for A q = b, q >= 0.

    duals holds one multiplier per constraint row. When the system is
    infeasible they form a Farkas vector: y.A[:, j] <= 0 for every column
    and y.b = objective > 0.
    """
    objective: Fraction
    solution: tuple
    duals: tuple
    pivots: int

    @property
    def feasible(self):
        return self.objective == 0


class ExactTableau:
    """
    Dense phase-one simplex tableau over Fractions, pivoting with Bland's
    rule so that it always terminates. Columns are the structural variables
    followed by one artificial per row; the last column is the right-hand
    side.
    """

    def __init__(self, rows, rhs):
        if not rows:
            raise InvariantError("linear system has no rows")
        self.m = len(rows)
        self.n = len(rows[0])
        self.signs = []
        self.table = []
        for i, (row, b) in enumerate(zip(rows, rhs)):
            if len(row) != self.n:
                raise InvariantError(f"row {i} has {len(row)} columns, expected {self.n}")
            sign = -1 if b < 0 else 1
            artificials = [0] * self.m
            artificials[i] = 1
            self.table.append([sign * v for v in row] + artificials + [sign * Fraction(b)])
            self.signs.append(sign)
        self.basis = [self.n + i for i in range(self.m)]

        # Reduced costs of the phase-one objective with the artificials basic.
        width = self.n + self.m
        self.cost = [-sum(row[j] for row in self.table) for j in range(self.n)]
        self.cost += [0] * self.m
        self.cost.append(-sum(row[width] for row in self.table))
        self.pivots = 0

    def entering_column(self):
        for j in range(self.n + self.m):
            if self.cost[j] < 0:
                return j
        return None

    def leaving_row(self, j):
        try:
            _, _, i = min(
                (Fraction(row[-1]) / row[j], self.basis[i], i)
                for i, row in enumerate(self.table)
                if row[j] > 0
            )
        except ValueError:
            return None
        return i

    def pivot(self, i, j):
        pivot_row = self.table[i]
        pivot = Fraction(pivot_row[j])
        nonzero = [c for c, v in enumerate(pivot_row) if v]
        for c in nonzero:
            pivot_row[c] = pivot_row[c] / pivot

        for row in self.table + [self.cost]:
            if row is pivot_row:
                continue
            factor = row[j]
            if factor:
                for c in nonzero:
                    row[c] -= factor * pivot_row[c]

        self.basis[i] = j
        self.pivots += 1

    def solve(self):
        while True:
            j = self.entering_column()
            if j is None:
                break
            i = self.leaving_row(j)
            if i is None:
                # The phase-one objective is bounded below by zero.
                raise InvariantError(f"phase-one simplex unbounded at column {j}")
            self.pivot(i, j)

        objective = -Fraction(self.cost[-1])
        solution = [Fraction(0)] * self.n
        for i, variable in enumerate(self.basis):
            if variable < self.n:
                solution[variable] = Fraction(self.table[i][-1])
        duals = tuple(
            sign * (1 - Fraction(self.cost[self.n + i]))
            for i, sign in enumerate(self.signs)
        )
        logger.debug(
            "phase one finished: %d rows, %d columns, %d pivots, objective %s",
            self.m, self.n, self.pivots, objective,
        )
        return PhaseOneResult(
            objective=objective,
            solution=tuple(solution),
            duals=duals,
            pivots=self.pivots,
        )


def solve_phase_one(rows, rhs):
    return ExactTableau(rows, rhs).solve()
