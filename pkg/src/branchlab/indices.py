"""Closed-form indices of level stabilizers and the Hausdorff dimension of G_d.

Indices are kept factored as d!^a / 2^b and expanded on demand.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import mpmath

from .quotient import index_exponent
from .words import GroupConfig

MAX_EXPANDED_DIGITS = 10_000


def _geom(d: int, k: int) -> int:
    """(d^k - 1)/(d - 1)."""
    return (d**k - 1) // (d - 1)


@dataclass(frozen=True)
class Factored:
    """The integer fact^e_fact / 2^e_two."""

    fact: int
    e_fact: int
    e_two: int

    @property
    def value(self) -> int:
        num = self.fact**self.e_fact
        q, r = divmod(num, 2**self.e_two)
        if r:
            raise ArithmeticError("closed form is not an integer")
        return q

    def log(self) -> mpmath.mpf:
        return self.e_fact * mpmath.log(self.fact) - self.e_two * mpmath.log(2)

    def digits(self) -> int:
        return int(mpmath.floor(self.log() / mpmath.log(10))) + 1

    def decimal(self) -> str:
        # lift the interpreter's int/str digit cap just for this conversion
        limit = getattr(sys, "get_int_max_str_digits", lambda: 0)()
        if limit:
            sys.set_int_max_str_digits(0)
        try:
            return str(self.value)
        finally:
            if limit:
                sys.set_int_max_str_digits(limit)

    def text(self, max_digits: int = MAX_EXPANDED_DIGITS) -> str:
        if self.digits() <= max_digits:
            return self.decimal()
        head = f"{self.fact}^{self.e_fact}"
        return f"{head}/2^{self.e_two}" if self.e_two else head

    def to_json(self, max_digits: int = MAX_EXPANDED_DIGITS) -> dict:
        out = {"base": self.fact, "exp_base": self.e_fact, "exp_two": self.e_two}
        out["value"] = self.decimal() if self.digits() <= max_digits else None
        return out


def st_step_index(d: int, k: int) -> Factored:
    """[St(k) : St(k+1)] = d!^(d^k) / 2^(d^(k-1)), k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Factored(math.factorial(d), d**k, d ** (k - 1))


def gd_index(d: int, k: int) -> Factored:
    """[G_d : St(k)] = d!^((d^k-1)/(d-1)) / 2^((d^(k-1)-1)/(d-1)), k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Factored(math.factorial(d), _geom(d, k), _geom(d, k - 1))


def aut_index(d: int, k: int) -> Factored:
    """[Aut(T) : St_Aut(k)] = d!^((d^k-1)/(d-1))."""
    return Factored(math.factorial(d), _geom(d, k), 0)


def aut_index_wreath(d: int, k: int) -> int:
    """The same index as the order of a k-fold iterated wreath product of S_d."""
    out = 1
    for j in range(k):
        out *= math.factorial(d) ** (d**j)
    return out


def rist_index(d: int, k: int) -> Factored:
    """[St(k) : Rist(k)] = 2^t."""
    return Factored(2, index_exponent(d, k), 0)


@dataclass(frozen=True)
class IndexRow:
    k: int
    st_step: Factored
    gd: Factored
    aut: Factored
    rist: Factored

    def to_json(self, max_digits: int = MAX_EXPANDED_DIGITS) -> dict:
        return {
            "k": self.k,
            "St(k):St(k+1)": self.st_step.to_json(max_digits),
            "G:St(k+1)": self.gd.to_json(max_digits),
            "Aut:St(k+1)": self.aut.to_json(max_digits),
            "St(k):Rist(k)": self.rist.to_json(max_digits),
        }


def index_table(d: int, k_max: int, limit: int = 64) -> list[IndexRow]:
    GroupConfig(d)
    if not 1 <= k_max <= limit:
        raise ValueError(f"k_max must be in 1..{limit}")
    return [
        IndexRow(k, st_step_index(d, k), gd_index(d, k + 1), aut_index(d, k + 1), rist_index(d, k))
        for k in range(1, k_max + 1)
    ]


@dataclass(frozen=True)
class HausdorffResult:
    d: int
    value: mpmath.mpf
    ratios: tuple[mpmath.mpf, ...]


def hausdorff_limit(d: int, dps: int = 50) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return 1 - mpmath.log(2) / (d * mpmath.log(math.factorial(d)))


def hausdorff_ratio(d: int, k: int, dps: int = 50) -> mpmath.mpf:
    """log [G_d : St(k)] / log [Aut(T) : St(k)], from exact exponent counts."""
    g, t = gd_index(d, k), aut_index(d, k)
    with mpmath.workdps(dps):
        lf = mpmath.log(math.factorial(d))
        return (g.e_fact * lf - g.e_two * mpmath.log(2)) / (t.e_fact * lf)


def hausdorff_dimension(d: int, k_max: int = 20, dps: int = 50) -> HausdorffResult:
    GroupConfig(d)
    ratios = tuple(hausdorff_ratio(d, k, dps) for k in range(1, k_max + 1))
    return HausdorffResult(d, hausdorff_limit(d, dps), ratios)
