"""
Symmetric functions in the power-sum basis
A symmetric function is a dict partition -> Fraction, partitions stored as
non-increasing tuples; the empty tuple is the constant 1
"""
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Tuple

from sympy.utilities.iterables import partitions

Partition = Tuple[int, ...]
SymFunc = Dict[Partition, Fraction]


def z_lambda(part: Partition) -> int:
    """Centralizer order z_lambda = prod_i i^{m_i} m_i!"""
    out = 1
    for i in set(part):
        m = part.count(i)
        out *= i ** m * factorial(m)
    return out


def _as_tuple(mult: Dict[int, int]) -> Partition:
    out = []
    for i in sorted(mult, reverse=True):
        out.extend([i] * mult[i])
    return tuple(out)


@lru_cache(maxsize=None)
def _h_to_p_cached(n: int) -> Tuple[Tuple[Partition, Fraction], ...]:
    if n == 0:
        return (((), Fraction(1)),)
    terms = []
    for mult in partitions(n):
        part = _as_tuple(mult)
        terms.append((part, Fraction(1, z_lambda(part))))
    return tuple(sorted(terms))


def h_to_p(n: int) -> SymFunc:
    """Complete homogeneous h_n = sum_{lambda |- n} p_lambda / z_lambda"""
    if n < 0:
        raise ValueError(f"h_to_p needs n >= 0, got {n}")
    return dict(_h_to_p_cached(n))


def p_single(n: int) -> SymFunc:
    return {(n,): Fraction(1)}


def sym_mul(f: SymFunc, g: SymFunc) -> SymFunc:
    out: SymFunc = {}
    for a, ca in f.items():
        for b, cb in g.items():
            key = tuple(sorted(a + b, reverse=True))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def sym_add(f: SymFunc, g: SymFunc, scale: Fraction = Fraction(1)) -> SymFunc:
    out = dict(f)
    for k, v in g.items():
        out[k] = out.get(k, Fraction(0)) + scale * v
    return {k: v for k, v in out.items() if v != 0}


def newton_residual(n: int) -> SymFunc:
    """n h_n - sum_{k=1..n} h_{n-k} p_k, zero for every n >= 1"""
    out = {k: v * n for k, v in h_to_p(n).items()}
    for k in range(1, n + 1):
        out = sym_add(out, sym_mul(h_to_p(n - k), p_single(k)), Fraction(-1))
    return out
