"""Exact coefficient fields (the rationals or a prime field) and dense linear algebra.

Matrices are handed to python-flint: rational matrices are cleared of
denominators into ``fmpz_mat``, prime-field matrices become ``nmod_mat``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

import flint


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class CoefficientField:
    """``Q`` (characteristic 0) or ``F_p`` for an odd prime ``p``."""

    def __init__(self, characteristic: int = 0):
        if characteristic == 2:
            raise FieldError("characteristic 2 is not supported (2 must be invertible)")
        if characteristic and not _is_prime(characteristic):
            raise FieldError(f"{characteristic} is not a prime")
        self.p = characteristic
        self.zero = self.elt(0)
        self.one = self.elt(1)

    @classmethod
    def parse(cls, spec: str) -> "CoefficientField":
        spec = spec.strip()
        if spec in ("Q", "QQ", "0"):
            return cls(0)
        m = re.fullmatch(r"F_?(\d+)", spec)
        if not m:
            raise FieldError(f"unknown field {spec!r}; use Q or F<p>")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __repr__(self) -> str:
        return f"CoefficientField({self.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CoefficientField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(self.p)

    # -- scalars ------------------------------------------------------------
    def elt(self, x):
        if type(x) is int:
            return flint.fmpq(x) if self.p == 0 else flint.nmod(x, self.p)
        if self.p == 0:
            if isinstance(x, flint.fmpq):
                return x
            q = Fraction(x) if not isinstance(x, (int, Fraction)) else Fraction(x)
            return flint.fmpq(q.numerator, q.denominator)
        if isinstance(x, flint.nmod):
            return x
        if isinstance(x, flint.fmpq):
            x = Fraction(int(x.p), int(x.q))
        q = Fraction(x)
        if q.denominator % self.p == 0:
            raise FieldError(f"{q} has no image in F{self.p}")
        return flint.nmod(q.numerator, self.p) / flint.nmod(q.denominator, self.p)

    def to_fraction(self, x) -> Fraction:
        if self.p == 0:
            return Fraction(int(x.p), int(x.q))
        return Fraction(int(x))

    def is_zero_vector(self, v: Sequence) -> bool:
        return all(self.elt(x) == 0 for x in v)

    def format(self, x) -> str:
        f = self.to_fraction(self.elt(x))
        return f"{f.numerator}/{f.denominator}"

    # -- matrices -------------------------------------------------------------
    def _matrix(self, rows: Sequence[Sequence], ncols: int):
        nrows = len(rows)
        if self.p == 0:
            flat = [x for row in rows for x in row]
            return flint.fmpq_mat(nrows, ncols, flat).numer_denom()[0]
        flat = [int(x) for row in rows for x in row]
        return flint.nmod_mat(nrows, ncols, flat, self.p)

    def rank(self, rows: Sequence[Sequence], ncols: int) -> int:
        if not rows or ncols == 0:
            return 0
        return self._matrix(rows, ncols).rank()

    def nullspace(self, rows: Sequence[Sequence], ncols: int) -> list[list]:
        """Basis of ``{v : M v = 0}`` for the matrix with the given rows."""
        if ncols == 0:
            return []
        if not rows:
            return [[self.one if i == j else self.zero for j in range(ncols)] for i in range(ncols)]
        N, nullity = self._matrix(rows, ncols).nullspace()
        if nullity == 0:
            return []
        conv = flint.fmpq if self.p == 0 else (lambda x, p=self.p: flint.nmod(x, p))
        entries = N.entries()
        width = N.ncols()
        return [[conv(int(entries[i * width + k])) for i in range(ncols)] for k in range(nullity)]

    def independent_rows(self, rows: Sequence[Sequence], ncols: int) -> list[int]:
        """Indices of a greedy maximal independent subset of the rows, in order."""
        if not rows or ncols == 0:
            return []
        M = self._matrix(rows, ncols).transpose()
        if self.p == 0:
            R, _den, rk = M.rref()
        else:
            R, rk = M.rref()
        pivots = []
        for i in range(rk):
            for j in range(R.ncols()):
                if R[i, j] != 0:
                    pivots.append(j)
                    break
        return pivots

    def row_basis(self, rows: Sequence[Sequence], ncols: int) -> list:
        return [rows[i] for i in self.independent_rows(rows, ncols)]

    def solve_in_span(self, basis: Sequence[Sequence], target: Sequence, ncols: int) -> list | None:
        """Coefficients expressing ``target`` in the span of ``basis`` rows, or None."""
        rows = [list(col) for col in zip(*basis)] if basis else [[] for _ in range(ncols)]
        aug = [r + [-self.elt(t)] for r, t in zip(rows, target)]
        ns = self.nullspace(aug, len(basis) + 1)
        for v in ns:
            if v[-1] != 0:
                inv = self.one / v[-1]
                return [x * inv for x in v[:-1]]
        return None


QQ = CoefficientField(0)
