"""Exact Gaussian elimination over any field of coefficients."""
from __future__ import annotations

from fractions import Fraction


class LinearSystem:
    """Accumulates rows ``sum_u coeff[u] * x_u = rhs`` and reduces them on insertion.

    Rows are kept in echelon form keyed by pivot column, so feeding thousands
    of redundant equations stays cheap.
    """

    def __init__(self, nvars):
        self.nvars = nvars
        self.pivots = {}  # column -> (row dict, rhs)
        self.inconsistent = False
        self.witness = None

    def add(self, row, rhs=0, tag=None):
        row = {c: v for c, v in row.items() if v}
        rhs = rhs if rhs else Fraction(0)
        while row:
            col = min(row)
            if col not in self.pivots:
                lead = row[col]
                row = {c: v / lead for c, v in row.items()}
                rhs = rhs / lead
                self.pivots[col] = (row, rhs)
                return True
            prow, prhs = self.pivots[col]
            f = row[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs = rhs - f * prhs
        if rhs:
            self.inconsistent = True
            if self.witness is None:
                self.witness = tag
        return False

    @property
    def rank(self):
        return len(self.pivots)

    def free_columns(self):
        return [c for c in range(self.nvars) if c not in self.pivots]

    def solve(self, free_values=None):
        """Back-substitute; free columns default to 0.  Returns list of values."""
        if self.inconsistent:
            raise ValueError("inconsistent linear system")
        free_values = free_values or {}
        sol = [None] * self.nvars
        for c in self.free_columns():
            sol[c] = free_values.get(c, Fraction(0))
        for col in sorted(self.pivots, reverse=True):
            row, rhs = self.pivots[col]
            v = rhs
            for c, coef in row.items():
                if c != col:
                    v = v - coef * sol[c]
            sol[col] = v
        return sol


def solve_affine(equations, nvars):
    """Solve a list of (row dict, rhs) pairs; returns (LinearSystem, particular solution)."""
    system = LinearSystem(nvars)
    for row, rhs in equations:
        system.add(row, rhs)
    if system.inconsistent:
        return system, None
    return system, system.solve()
