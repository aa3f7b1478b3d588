"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the production algorithms: the
symmetric-extension problem is solved a second time by brute-force linear
algebra over the symmetric-monomial basis, and a third time by a literal
transcription of the subset inclusion-exclusion enumeration, so the fast
orbit-based implementation can be checked against both.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from wpvol.poly import GR_ZERO, GaussianRational, Poly
from wpvol.volume import seed_volume


@pytest.fixture(scope="session")
def v03():
    return seed_volume(0, 3)


@pytest.fixture(scope="session")
def v11():
    return seed_volume(1, 1)


@pytest.fixture()
def rng():
    return random.Random(20260810)


# ----------------------------------------------------------------------
# random polynomial generators


def random_rational(rng, allow_zero=True) -> Fraction:
    num = rng.randint(-9, 9)
    if not allow_zero and num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 9))


def random_poly(rng, n_vars, max_terms=4, max_exp=3, max_pi=2, complex_coeffs=False) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        key = tuple(rng.randint(0, max_exp) for _ in range(n_vars)) + (
            rng.randint(0, max_pi),
        )
        re = random_rational(rng)
        im = random_rational(rng) if complex_coeffs and rng.random() < 0.5 else Fraction(0)
        terms[key] = GaussianRational(re, im)
    return Poly.from_terms(n_vars, terms)


def partitions(total, max_parts):
    """All partitions of `total` into at most `max_parts` positive parts."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return

    def rec(remaining, largest, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part, slots - 1):
                yield (part,) + rest

    yield from rec(total, total, max_parts)


def monomial_symmetric(n_vars, pattern, pi_exp=0) -> Poly:
    """m_lambda over n_vars variables, built by brute-force permutation."""
    padded = tuple(pattern) + (0,) * (n_vars - len(pattern))
    keys = {p + (pi_exp,) for p in permutations(padded)}
    return Poly.from_terms(n_vars, {key: 1 for key in keys})


def random_symmetric_even(rng, n_vars, half_degree) -> Poly:
    """Random symmetric polynomial, even L exponents, homogeneous of total
    degree 2*half_degree (pi included), squared degree <= half_degree."""
    total = Poly.zero(n_vars)
    for k in range(half_degree + 1):
        for pattern in partitions(half_degree - k, n_vars):
            if rng.random() < 0.5:
                continue
            c = random_rational(rng, allow_zero=False)
            doubled = tuple(2 * p for p in pattern)
            total = total + monomial_symmetric(n_vars, doubled, 2 * k).scale(c)
    return total


# ----------------------------------------------------------------------
# independent oracles for the symmetric lift


def solve_linear(rows, rhs):
    """Fraction Gaussian elimination; returns the unique solution or None."""
    n_unknowns = len(rows[0]) if rows else 0
    aug = [list(row) + [value] for row, value in zip(rows, rhs)]
    pivots = []
    row_at = 0
    for col in range(n_unknowns):
        pivot = next((r for r in range(row_at, len(aug)) if aug[r][col]), None)
        if pivot is None:
            return None  # underdetermined
        aug[row_at], aug[pivot] = aug[pivot], aug[row_at]
        factor = aug[row_at][col]
        aug[row_at] = [v / factor for v in aug[row_at]]
        for r in range(len(aug)):
            if r != row_at and aug[r][col]:
                scale = aug[r][col]
                aug[r] = [a - scale * b for a, b in zip(aug[r], aug[row_at])]
        pivots.append(col)
        row_at += 1
    for r in range(row_at, len(aug)):
        if aug[r][-1]:
            return None  # inconsistent
    return [aug[i][-1] for i in range(n_unknowns)]


def brute_force_lift(f: Poly) -> Poly:
    """Solve for the symmetric extension by linear algebra, layer by layer.

    Unknowns are coefficients of monomial symmetric polynomials over n+1
    variables whose pattern keeps at least one variable absent (the
    no-all-variables convention); equations match the restriction at
    L_{n+1} = 0 against f.
    """
    n = f.n_vars
    total = Poly.zero(n + 1)
    pi_levels = sorted({key[-1] for key in f.terms})
    for pi_exp in pi_levels:
        layer = f.coeff_pi(pi_exp)
        degrees = sorted({sum(key[:-1]) for key in layer.terms})
        lambdas = []
        for degree in degrees:
            for pattern in partitions(degree // 2, n):
                lambdas.append(tuple(2 * p for p in pattern))
        basis = [monomial_symmetric(n + 1, lam) for lam in lambdas]
        restricted = [b.eval_zero(n + 1).drop_var(n + 1) for b in basis]
        keys = sorted(set(layer.terms) | {k for r in restricted for k in r.terms})
        rows = []
        rhs = []
        for key in keys:
            rows.append([r.terms.get(key, GR_ZERO).re for r in restricted])
            rhs.append(layer.terms.get(key, GR_ZERO).re)
        solution = solve_linear(rows, rhs)
        assert solution is not None, "brute-force lift system was not uniquely solvable"
        for lam_poly, coeff in zip(basis, solution):
            if coeff:
                total = total + (lam_poly * Poly.pi(n + 1, pi_exp)).scale(coeff)
    return total


def _substitute_var(p: Poly, source: int, target: int) -> Poly:
    """L_source -> L_target (exponents merge onto the target)."""
    out = {}
    for key, c in p.terms.items():
        e = key[source - 1]
        if e:
            key = list(key)
            key[source - 1] = 0
            key[target - 1] += e
            key = tuple(key)
        out[key] = out.get(key, GR_ZERO) + c
    return Poly.from_terms(p.n_vars, out)


def epsilon_lift(f: Poly) -> Poly:
    """Literal subset inclusion-exclusion enumeration of the lift (slow).

    For every epsilon in {0,1}^n: zero the marked variables, then for each i
    whose higher-indexed marks are all zero, rename L_i to L_{n+1} and add
    with sign (-1)^{|epsilon|}."""
    n = f.n_vars
    total = f.embed(n + 1)
    for bits in product((0, 1), repeat=n):
        zeroed = f
        for j, bit in enumerate(bits, start=1):
            if bit:
                zeroed = zeroed.eval_zero(j)
        zeroed = zeroed.embed(n + 1)
        inner = Poly.zero(n + 1)
        for i in range(1, n + 1):
            if all(bits[j - 1] == 0 for j in range(i + 1, n + 1)):
                inner = inner + _substitute_var(zeroed, i, n + 1)
        total = total + inner.scale((-1) ** sum(bits))
    return total
