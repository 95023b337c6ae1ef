"""Exact Fourier-Motzkin elimination for homogeneous systems with multiplier tracking.

A system is a list of rows a with a relation: a.v = 0, a.v >= 0 or a.v > 0.
Elimination either reaches a contradiction 0 > 0, whose tracked multipliers
form a transposition (Motzkin) certificate of infeasibility, or ends
consistent, in which case back-substitution produces a rational point that
is scaled to an integer witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

EQ, GE, GT = "eq", "ge", "gt"


@dataclass(frozen=True)
class Row:
    coeffs: tuple[Fraction, ...]
    kind: str
    mult: tuple[Fraction, ...]  # multipliers on the original rows

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _combine(a: Row, ca: Fraction, b: Row, cb: Fraction, kind: str) -> Row:
    return Row(
        tuple(ca * x + cb * y for x, y in zip(a.coeffs, b.coeffs)),
        kind,
        tuple(ca * x + cb * y for x, y in zip(a.mult, b.mult)),
    )


def _normalize(row: Row) -> Row:
    # scale so the first nonzero coefficient has absolute value one
    lead = next((abs(c) for c in row.coeffs if c), None)
    if lead is None or lead == 1:
        return row
    return Row(tuple(c / lead for c in row.coeffs), row.kind, tuple(c / lead for c in row.mult))


@dataclass
class Infeasible:
    """sum_i mult_i row_i = 0 with mult >= 0 on inequality rows and > 0 on some strict row."""

    multipliers: tuple[Fraction, ...]


@dataclass
class Feasible:
    point: tuple[int, ...]


@dataclass
class _Stage:
    var: int
    pivot: Row | None
    bounded: list[Row]


def solve_homogeneous(
    nvars: int,
    equalities: Sequence[Sequence] = (),
    inequalities: Sequence[Sequence] = (),
    strict: Sequence[Sequence] = (),
) -> Infeasible | Feasible:
    """Decide {E v = 0, F v >= 0, S v > 0} exactly.

    Multipliers in an Infeasible result are indexed by the concatenation
    equalities + inequalities + strict.
    """
    originals = (
        [(r, EQ) for r in equalities] + [(r, GE) for r in inequalities] + [(r, GT) for r in strict]
    )
    total = len(originals)
    rows: list[Row] = []
    for k, (r, kind) in enumerate(originals):
        if len(r) != nvars:
            raise ValueError("row length does not match the number of variables")
        unit = tuple(Fraction(int(i == k)) for i in range(total))
        rows.append(Row(tuple(Fraction(x) for x in r), kind, unit))

    stages: list[_Stage] = []
    for var in range(nvars):
        contradiction = next((r for r in rows if r.is_zero() and r.kind == GT), None)
        if contradiction is not None:
            return Infeasible(contradiction.mult)
        rows = [r for r in rows if not r.is_zero()]
        pivot = next((r for r in rows if r.kind == EQ and r.coeffs[var]), None)
        if pivot is not None:
            rest = []
            for r in rows:
                if r is pivot:
                    continue
                if r.coeffs[var]:
                    r = _combine(r, Fraction(1), pivot, -r.coeffs[var] / pivot.coeffs[var], r.kind)
                rest.append(r)
            stages.append(_Stage(var, pivot, []))
            rows = rest
            continue
        pos = [r for r in rows if r.coeffs[var] > 0]
        neg = [r for r in rows if r.coeffs[var] < 0]
        rest = [r for r in rows if r.coeffs[var] == 0]
        seen = {(r.coeffs, r.kind) for r in rest}
        for a in pos:
            for b in neg:
                kind = GT if GT in (a.kind, b.kind) else GE
                new = _normalize(_combine(a, -b.coeffs[var], b, a.coeffs[var], kind))
                if (new.coeffs, new.kind) not in seen:
                    seen.add((new.coeffs, new.kind))
                    rest.append(new)
        stages.append(_Stage(var, None, pos + neg))
        rows = rest

    contradiction = next((r for r in rows if r.kind == GT), None)
    if contradiction is not None:
        return Infeasible(contradiction.mult)
    return Feasible(_back_substitute(nvars, stages))


def _back_substitute(nvars: int, stages: list[_Stage]) -> tuple[int, ...]:
    value = [Fraction(0)] * nvars

    def partial(r: Row, var: int) -> Fraction:
        return sum((c * value[i] for i, c in enumerate(r.coeffs) if i != var), Fraction(0))

    for stage in reversed(stages):
        var = stage.var
        if stage.pivot is not None:
            value[var] = -partial(stage.pivot, var) / stage.pivot.coeffs[var]
            continue
        lo: tuple[Fraction, bool] | None = None
        hi: tuple[Fraction, bool] | None = None
        for r in stage.bounded:
            bound = -partial(r, var) / r.coeffs[var]
            strict = r.kind == GT
            if r.coeffs[var] > 0:
                if lo is None or bound > lo[0] or (bound == lo[0] and strict):
                    lo = (bound, strict)
            else:
                if hi is None or bound < hi[0] or (bound == hi[0] and strict):
                    hi = (bound, strict)
        if lo and hi:
            value[var] = lo[0] if lo[0] == hi[0] else (lo[0] + hi[0]) / 2
        elif lo:
            value[var] = lo[0] + 1
        elif hi:
            value[var] = hi[0] - 1
    scale = lcm(*(v.denominator for v in value)) if value else 1
    return tuple(int(v * scale) for v in value)


def check_point(
    point: Sequence,
    equalities: Sequence[Sequence] = (),
    inequalities: Sequence[Sequence] = (),
    strict: Sequence[Sequence] = (),
) -> bool:
    def dot(r):
        return sum(Fraction(a) * b for a, b in zip(r, point))

    return (
        all(dot(r) == 0 for r in equalities)
        and all(dot(r) >= 0 for r in inequalities)
        and all(dot(r) > 0 for r in strict)
    )
