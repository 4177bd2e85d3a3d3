"""Zariski decomposition of effective rational divisors.

Two flavours are provided.  :func:`zariski_support` constrains the
negative part to a fixed negative-definite cycle E; :func:`zariski_absolute`
lets the support grow inside supp(D).  Both use the Fujita fixed point:
start from the components on which D is negative, solve for N on that set,
add every component on which D - N is still negative, and repeat.

Every result carries a :class:`Certificate` that is re-checked before
returning.  A failed certificate raises :class:`InvariantViolation`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .errors import InvariantViolation, ModelInconsistencyError, PreconditionError
from .lattice import (
    Cycle,
    Divisor,
    SurfaceModel,
    intersect,
    is_effective,
    is_negative_definite,
)

ORACLE_LIMIT = 12


@dataclass(frozen=True)
class Certificate:
    negative_effective: bool
    positive_effective: bool
    support_in_cycle: bool
    positive_nef_on_cycle: bool
    positive_orthogonal_to_support: bool
    parts_sum_to_input: bool
    parts_orthogonal: bool
    squares_add: bool

    @property
    def holds(self) -> bool:
        return all(vars(self).values())

    def failures(self) -> list[str]:
        return [k for k, v in vars(self).items() if not v]


@dataclass(frozen=True)
class ZariskiResult:
    positive: Divisor
    negative: Divisor
    support: Cycle
    certificate: Certificate

    def to_json(self) -> dict:
        return {
            "positive": self.positive.to_json(),
            "negative": self.negative.to_json(),
            "support": list(self.support.components),
            "certificate": dict(vars(self.certificate)),
        }


def certify(
    D: Divisor,
    N: Divisor,
    E: Iterable[str],
    model: SurfaceModel,
    *,
    effective_on: Iterable[str] | None = None,
) -> Certificate:
    """Check the defining properties of D = (D - N) + N relative to E.

    ``effective_on`` limits the effectivity check of P to those classes.
    """
    cycle = list(E)
    P = D - N
    if effective_on is not None:
        P_checked = P.restrict(effective_on)
    else:
        P_checked = P
    prime = {c: Divisor.prime(c) for c in cycle}
    return Certificate(
        negative_effective=is_effective(N),
        positive_effective=is_effective(P_checked),
        support_in_cycle=N.support <= set(cycle),
        positive_nef_on_cycle=all(intersect(P, prime[c], model) >= 0 for c in cycle),
        positive_orthogonal_to_support=all(
            intersect(P, Divisor.prime(c), model) == 0 for c in N.support
        ),
        parts_sum_to_input=P + N == D,
        parts_orthogonal=intersect(P, N, model) == 0,
        squares_add=intersect(D, D, model)
        == intersect(P, P, model) + intersect(N, N, model),
    )


def _ordered(names: Iterable[str], model: SurfaceModel) -> list[str]:
    return sorted(set(names), key=model.index)


def _check_prime_configuration(names: Sequence[str], model: SurfaceModel) -> None:
    # Distinct irreducible curves meet nonnegatively.  The fixed point and
    # its uniqueness argument depend on this.
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if model.pairing(a, b) < 0:
                raise PreconditionError(
                    f"classes {a} and {b} have negative intersection; "
                    "they cannot both be distinct prime curves"
                )


def _solve_negative(D: Divisor, S: Sequence[str], model: SurfaceModel) -> Divisor:
    """N supported on S with N·E_i = D·E_i for every E_i in S."""
    if not S:
        return Divisor()
    rhs = [intersect(D, Divisor.prime(c), model) for c in S]
    coeffs = linalg.solve(model.submatrix(S), rhs)
    return Divisor(zip(S, coeffs))


def _fixed_point(
    D: Divisor, candidates: Sequence[str], model: SurfaceModel, *, absolute: bool
) -> Divisor:
    prime = {c: Divisor.prime(c) for c in candidates}
    S = [c for c in candidates if intersect(D, prime[c], model) < 0]
    N = Divisor()
    while S:
        if absolute and not is_negative_definite(Cycle(tuple(S)), model):
            raise ModelInconsistencyError(
                f"negative part support {S} is not negative definite; "
                "the intersection data cannot come from an effective divisor"
            )
        N = _solve_negative(D, S, model)
        P = D - N
        grow = [c for c in candidates if c not in S and intersect(P, prime[c], model) < 0]
        if not grow:
            break
        S = _ordered(S + grow, model)
    return N


def _finish(
    D: Divisor,
    N: Divisor,
    cycle: Sequence[str],
    model: SurfaceModel,
    effective_on: Iterable[str] | None = None,
) -> ZariskiResult:
    cert = certify(D, N, cycle, model, effective_on=effective_on)
    if not cert.holds:
        raise InvariantViolation(f"Zariski certificate failed: {cert.failures()}")
    return ZariskiResult(
        positive=D - N,
        negative=N,
        support=Cycle(tuple(_ordered(N.support, model))),
        certificate=cert,
    )


def _validate(D: Divisor, model: SurfaceModel) -> None:
    model.check_divisor(D)
    if not is_effective(D):
        raise PreconditionError(f"divisor is not effective: {D!r}")


def zariski_support(D: Divisor, E: Cycle, model: SurfaceModel) -> ZariskiResult:
    """Decomposition D = P_E(D) + N_E(D) with N supported on E."""
    _validate(D, model)
    for c in E:
        model.index(c)
    if not is_negative_definite(E, model):
        raise PreconditionError(f"cycle {list(E)} is not negative definite")
    _check_prime_configuration(_ordered(set(D.support) | set(E), model), model)
    active = _ordered(set(E) & D.support, model)
    N = _fixed_point(D, active, model, absolute=False)
    return _finish(D, N, list(E), model)


def zariski_absolute(
    D: Divisor, model: SurfaceModel, *, candidates: Iterable[str] | None = None
) -> ZariskiResult:
    """Absolute decomposition D = P(D) + N(D).

    The negative part may use any component of supp(D), or only those in
    ``candidates`` when given (useful when some classes of the model are
    not prime curves).  Nefness of P is certified on the same set.  With
    ``candidates`` only the coefficients of D on candidate classes need to
    be nonnegative; the rest of D must then pair nonnegatively with every
    candidate for the result to be meaningful, which the certificate checks
    indirectly through nefness.
    """
    model.check_divisor(D)
    if candidates is None:
        _validate(D, model)
        pool = set(D.support)
    else:
        pool = set(candidates)
        for c in pool:
            model.index(c)
        if not is_effective(D.restrict(pool)):
            raise PreconditionError("divisor is not effective on the candidate classes")
    active = _ordered(pool & D.support, model)
    _check_prime_configuration(active, model)
    N = _fixed_point(D, active, model, absolute=True)
    return _finish(D, N, active, model, effective_on=None if candidates is None else pool)


def zariski_oracle(
    D: Divisor, E: Cycle, model: SurfaceModel, *, limit: int = ORACLE_LIMIT
) -> ZariskiResult:
    """Brute-force reference for :func:`zariski_support`.

    Tries every subset S of E ∩ supp(D) as the support, solves the linear
    system on S and keeps the candidates that pass the full certificate.
    Exactly one distinct candidate must survive.
    """
    _validate(D, model)
    if len(E) > limit:
        raise PreconditionError(f"oracle refuses cycles with more than {limit} components")
    if not is_negative_definite(E, model):
        raise PreconditionError(f"cycle {list(E)} is not negative definite")
    active = _ordered(set(E) & D.support, model)
    passing: set[Divisor] = set()
    for size in range(len(active) + 1):
        for S in combinations(active, size):
            N = _solve_negative(D, list(S), model)
            if certify(D, N, list(E), model).holds:
                passing.add(N)
    if len(passing) != 1:
        raise InvariantViolation(f"oracle found {len(passing)} certified decompositions")
    return _finish(D, passing.pop(), list(E), model)


def negative_square(result: ZariskiResult, model: SurfaceModel) -> Fraction:
    return intersect(result.negative, result.negative, model)
