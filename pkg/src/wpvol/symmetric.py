"""Symmetric extension by one variable and pi-stratified reconstruction.

``sym_lift_zero`` solves: given a symmetric polynomial f in n variables
with even L exponents, produce the symmetric polynomial S in n+1 variables
that restricts to f at L_{n+1} = 0 and carries no monomial involving all
n+1 variables.  Those two conditions pin S down uniquely: two candidates
differ by a symmetric polynomial vanishing at L_{n+1} = 0, hence divisible
by the product of all variables, and the no-all-variables condition kills
that difference.  When the degree of f in the squared variables is below
n+1 the extension of that degree is unique outright and the convention is
vacuous.

The implementation expands f over symmetry orbits (monomial symmetric
polynomials) and reinterprets each orbit in one more variable, which is the
closed form of the 2**n inclusion-exclusion sum over subsets of zeroed
variables and runs in time linear in the output.

``stratified_lift`` rebuilds a symmetric, even, homogeneous polynomial V in
n+1 variables of total degree 2D from its evaluation E = V(L1,...,Ln, 2*pi*i),
peeling one pi stratum at a time: the pi**2k coefficient of the running
residual is exactly stratum k restricted to L_{n+1} = 0, so lift it, subtract
its own evaluation, and continue.  A nonzero final residual means E is not
such an evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly, arrangements


class LiftError(Exception):
    """The lift input is malformed or inconsistent with its claimed shape."""

    def __init__(self, message: str, residual: Poly | None = None):
        super().__init__(message)
        self.residual = residual


def sym_lift_zero(f: Poly) -> Poly:
    """Extend a symmetric even polynomial from n to n+1 variables.

    Raises LiftError if f is not symmetric or has an odd L exponent.
    """
    n = f.n_vars
    if not f.has_even_l_exponents():
        raise LiftError("lift input has an odd L exponent")
    try:
        orbits = f.orbit_coefficients()
    except ValueError as exc:
        raise LiftError(f"lift input is not symmetric: {exc}") from exc
    out = {}
    for (pattern, pi_exp), c in orbits.items():
        padded = pattern + (0,)
        for arrangement in arrangements(padded):
            out[arrangement + (pi_exp,)] = c
    return Poly(n + 1, out)


@dataclass(frozen=True)
class Stratum:
    """One pi stratum of a reconstruction: V = sum_k pi**2k * w_k.

    ``w`` is pi-free and homogeneous in L of degree 2*(D - k).
    """

    k: int
    w: Poly


def stratified_lift(evaluation: Poly, target_half_degree: int) -> tuple[list[Stratum], Poly]:
    """Reconstruct V in n+1 variables from V(L1..Ln, 2*pi*i).

    ``evaluation`` has n variables; the unknown V is symmetric, even and
    homogeneous of total degree ``2 * target_half_degree``.  Returns the
    strata and the reassembled candidate, which satisfies
    ``V.eval_two_pi_i(n+1) == evaluation`` exactly.  When the squared degree
    of V reaches n+1 the candidate is the representative with no
    all-variable monomial; callers needing a different representative add a
    correction downstream.
    """
    n = evaluation.n_vars
    D = target_half_degree
    if D < 0:
        raise ValueError("target half degree must be nonnegative")
    residual = evaluation
    strata: list[Stratum] = []
    total = Poly.zero(n + 1)
    for k in range(D + 1):
        layer = residual.coeff_pi(2 * k)
        if layer and not layer.is_l_homogeneous(2 * (D - k)):
            raise LiftError(
                f"stratum {k} is not homogeneous of degree {2 * (D - k)}",
                residual=residual,
            )
        w = sym_lift_zero(layer)
        strata.append(Stratum(k, w))
        if w:
            contribution = w * Poly.pi(n + 1, 2 * k)
            total = total + contribution
            residual = residual - contribution.eval_two_pi_i(n + 1).drop_var(n + 1)
    if residual:
        raise LiftError(
            "nonzero residual: the input is not the evaluation of any "
            "symmetric even homogeneous polynomial of this degree",
            residual=residual,
        )
    return strata, total
