"""Exact rational linear programming: two-phase primal simplex with Bland's rule.

Sized for the small feasibility and optimisation problems that come out of
dominance and belief tests (tens to a few hundred rows). Everything is
``Fraction``; there is no tolerance anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

LE, EQ, GE = "<=", "==", ">="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LpError(ValueError):
    """Malformed linear program."""


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple
    relation: str
    bound: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """Maximise ``objective . x`` subject to ``constraints``.

    ``lower_bounds[j]`` is a Fraction or ``None`` (free variable); it defaults to
    zero for every variable.
    """

    objective: tuple
    constraints: tuple = ()
    lower_bounds: Optional[tuple] = None

    def __post_init__(self):
        obj = tuple(Fraction(c) for c in self.objective)
        if not obj:
            raise LpError("a linear program needs at least one variable")
        rows = []
        for c in self.constraints:
            if not isinstance(c, Constraint):
                coeffs, rel, bound = c
                c = Constraint(tuple(coeffs), rel, bound)
            if c.relation not in (LE, EQ, GE):
                raise LpError(f"unknown relation {c.relation!r}")
            if len(c.coefficients) != len(obj):
                raise LpError(f"constraint has {len(c.coefficients)} coefficients for {len(obj)} variables")
            rows.append(Constraint(tuple(Fraction(a) for a in c.coefficients), c.relation, Fraction(c.bound)))
        lbs = self.lower_bounds
        if lbs is None:
            lbs = (_ZERO,) * len(obj)
        elif len(lbs) != len(obj):
            raise LpError("one lower bound per variable")
        lbs = tuple(None if b is None else Fraction(b) for b in lbs)
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", tuple(rows))
        object.__setattr__(self, "lower_bounds", lbs)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        for lb, v in zip(self.lower_bounds, x):
            if lb is not None and v < lb:
                return False
        for c in self.constraints:
            lhs = sum((a * v for a, v in zip(c.coefficients, x) if a), _ZERO)
            if c.relation == LE and lhs > c.bound:
                return False
            if c.relation == GE and lhs < c.bound:
                return False
            if c.relation == EQ and lhs != c.bound:
                return False
        return True


@dataclass(frozen=True)
class LpOutcome:
    status: str
    optimal_value: Optional[Fraction] = None
    witness: Optional[tuple] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense simplex tableau; the last entry of every row is the right-hand side."""

    def __init__(self, rows, basis, n_cols):
        self.rows = rows
        self.basis = basis
        self.n_cols = n_cols
        self.obj = None

    def set_objective(self, cost):
        # reduced costs z_j - c_j for maximisation
        obj = [-c for c in cost] + [_ZERO]
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                for j, a in enumerate(row):
                    if a:
                        obj[j] += cb * a
        self.obj = obj

    def pivot(self, r, j):
        row = self.rows[r]
        p = row[j]
        if p != _ONE:
            row = [a / p for a in row]
            self.rows[r] = row
        nz = [k for k, a in enumerate(row) if a]
        for other in self.rows + [self.obj]:
            if other is row:
                continue
            f = other[j]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
        self.basis[r] = j

    def run(self, allowed):
        """Bland's rule iterations; returns False if unbounded."""
        while True:
            entering = next((j for j in range(self.n_cols) if allowed[j] and self.obj[j] < 0), None)
            if entering is None:
                return True
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[r] < self.basis[best[1]]):
                        best = (ratio, r)
            if best is None:
                return False
            self.pivot(best[1], entering)


def solve(lp: LinearProgram) -> LpOutcome:
    """Solve ``lp`` exactly. Deterministic: same input, same witness."""
    n = lp.n_vars
    # column layout: each original variable maps to one or two non-negative columns
    mapping = []
    n_struct = 0
    for lb in lp.lower_bounds:
        if lb is None:
            mapping.append((n_struct, n_struct + 1))
            n_struct += 2
        else:
            mapping.append((n_struct,))
            n_struct += 1

    def expand(coeffs):
        out = [_ZERO] * n_struct
        for j, a in enumerate(coeffs):
            if a:
                cols = mapping[j]
                out[cols[0]] = a
                if len(cols) == 2:
                    out[cols[1]] = -a
        return out

    shift = [lb if lb is not None else _ZERO for lb in lp.lower_bounds]
    prepared = []
    for c in lp.constraints:
        rhs = c.bound - sum((a * s for a, s in zip(c.coefficients, shift) if a), _ZERO)
        coeffs = expand(c.coefficients)
        rel = c.relation
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        prepared.append((coeffs, rel, rhs))

    n_slack = sum(1 for _, rel, _ in prepared if rel != EQ)
    n_art = sum(1 for _, rel, _ in prepared if rel != LE)
    n_cols = n_struct + n_slack + n_art
    rows, basis = [], []
    slack_col = n_struct
    art_col = n_struct + n_slack
    for coeffs, rel, rhs in prepared:
        row = coeffs + [_ZERO] * (n_slack + n_art) + [rhs]
        if rel == LE:
            row[slack_col] = _ONE
            basis.append(slack_col)
            slack_col += 1
        else:
            if rel == GE:
                row[slack_col] = -_ONE
                slack_col += 1
            row[art_col] = _ONE
            basis.append(art_col)
            art_col += 1
        rows.append(row)

    tab = _Tableau(rows, basis, n_cols)
    first_art = n_struct + n_slack
    if n_art:
        cost = [_ZERO] * first_art + [-_ONE] * n_art
        tab.set_objective(cost)
        tab.run([True] * n_cols)
        if tab.obj[-1] < 0:
            return LpOutcome(INFEASIBLE)
        # drive zero-level artificials out of the basis, dropping redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= first_art:
                row = tab.rows[r]
                j = next((k for k in range(first_art) if row[k]), None)
                if j is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, j)
            r += 1
    allowed = [True] * first_art + [False] * n_art
    cost = [_ZERO] * n_cols
    for j, c in enumerate(lp.objective):
        cols = mapping[j]
        cost[cols[0]] = c
        if len(cols) == 2:
            cost[cols[1]] = -c
    tab.set_objective(cost)
    if not tab.run(allowed):
        return LpOutcome(UNBOUNDED)

    values = [_ZERO] * n_cols
    for r, b in enumerate(tab.basis):
        values[b] = tab.rows[r][-1]
    x = []
    for j in range(n):
        cols = mapping[j]
        v = values[cols[0]] - (values[cols[1]] if len(cols) == 2 else _ZERO)
        x.append(v + shift[j])
    x = tuple(x)
    if not lp.satisfied_by(x):
        raise RuntimeError("simplex produced a witness that violates the constraints")
    value = sum((c * v for c, v in zip(lp.objective, x)), _ZERO)
    return LpOutcome(OPTIMAL, value, x)
