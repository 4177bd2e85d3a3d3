"""Explicit upper bounds for the canonical degree (K+D)·C.

Every bound here is a function of five numbers, (K+D)², e(X∖D), (K+D)·C,
C² and e(C∖D), carried by :class:`~logsurf.bmy.LogInvariants`.  Square
roots are enclosed in rational intervals and comparisons are retried at
doubling precision before a verdict of "unknown" is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Mapping

from .bmy import LogInvariants
from .errors import InputError, ModelInconsistencyError, PreconditionError
from .intervals import DEFAULT_BITS, RationalInterval, decide, sqrt_interval
from .lattice import format_rational
from .verdicts import Check, Status, Verdict, exit_code

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
DEFAULT_LAMBDA0 = Fraction(7, 10)
H_CONST = Fraction(4, 9)
K_CONST = Fraction(22)


@dataclass(frozen=True)
class NormalizedInvariants:
    """Curve invariants measured in units of (K+D)²."""

    x: Fraction  # (K+D)·C / (K+D)²
    sigma: Fraction  # e(X∖D) / (K+D)²
    gamma: Fraction  # -e(C∖D) / 2(K+D)²
    y_sq: Fraction  # -(C - x(K+D))² / (K+D)²

    def remarks(self) -> dict[str, bool]:
        """Inequalities that hold on genuine log surfaces of general type."""
        return {
            "sigma_at_least_third": self.sigma >= THIRD,
            "gamma_at_least_minus_one": self.gamma >= -1,
            "x_nonneg": self.x >= 0,
        }

    def to_json(self) -> dict:
        f = format_rational
        return {
            "x": f(self.x),
            "sigma": f(self.sigma),
            "gamma": f(self.gamma),
            "y_sq": f(self.y_sq),
            "remarks": self.remarks(),
        }


def normalized_invariants(inv: LogInvariants) -> NormalizedInvariants:
    k = inv.kd_sq
    if k <= 0:
        raise PreconditionError(f"(K+D)² must be positive, got {k}")
    x = inv.kd_c / k
    y_sq = (inv.kd_c**2 / k - inv.c_sq) / k
    if y_sq < 0:
        raise ModelInconsistencyError(
            f"(C - x(K+D))² = {-y_sq * k} > 0 violates the Hodge index theorem"
        )
    return NormalizedInvariants(
        x=x, sigma=inv.e_open / k, gamma=-inv.e_curve / (2 * k), y_sq=y_sq
    )


@dataclass(frozen=True)
class BoundReport:
    kind: str
    checks: tuple[Check, ...]
    hypotheses: Mapping[str, Status]
    A: RationalInterval | None = None
    B: RationalInterval | None = None
    R_plus: RationalInterval | None = None
    bound: RationalInterval | None = None
    values: Mapping[str, str] = field(default_factory=dict)
    bits: int = DEFAULT_BITS

    @property
    def verdicts(self) -> dict[str, Verdict]:
        return {c.name: c.verdict for c in self.checks}

    @property
    def exit_code(self) -> int:
        return exit_code(self.checks, self.hypotheses)

    def to_json(self) -> dict:
        def iv(v: RationalInterval | None):
            return None if v is None else v.to_json()

        return {
            "kind": self.kind,
            "A": iv(self.A),
            "B": iv(self.B),
            "R_plus": iv(self.R_plus),
            "bound": iv(self.bound),
            "values": dict(self.values),
            "checks": [c.to_json() for c in self.checks],
            "hypotheses": {k: v.value for k, v in self.hypotheses.items()},
            "bits": self.bits,
        }


class _Decider:
    """Runs interval comparisons with retries and remembers the precision used."""

    def __init__(self, bits: int):
        if bits < 1:
            raise PreconditionError("precision must be at least one bit")
        self.bits = bits
        self.used = bits

    def __call__(self, evaluate: Callable[[int], Verdict]) -> Verdict:
        verdict, b = decide(evaluate, self.bits)
        self.used = max(self.used, b)
        return verdict


# ---------------------------------------------------------------------------
# the general bound


def coefficient_intervals(
    kd_sq: Fraction, e_open: Fraction, bits: int = DEFAULT_BITS
) -> tuple[RationalInterval, RationalInterval]:
    """Enclosures of A and B; needs (K+D)² > e(X∖D) and 3e(X∖D) >= (K+D)²."""
    k, e = Fraction(kd_sq), Fraction(e_open)
    if k <= e:
        raise PreconditionError("A and B need (K+D)² > e(X∖D)")
    if 3 * e < k:
        raise PreconditionError("A and B need 3e(X∖D) >= (K+D)²")
    root = sqrt_interval(2 * k * (3 * e - k), bits)
    A = (2 * k + root) / (k - e)
    B = (k * (3 * e - k) + 2 * e * root) / (2 * (k - e))
    return A, B


def polynomial_P(sigma: Fraction, gamma: Fraction, x: Fraction) -> Fraction:
    """𝒫(x) = (σ-1)x² + (4γ+3σ-1)x - 2γ(3γ+3σ-1)."""
    return (sigma - 1) * x**2 + (4 * gamma + 3 * sigma - 1) * x - 2 * gamma * (
        3 * gamma + 3 * sigma - 1
    )


def r_plus_discriminant(sigma: Fraction, gamma: Fraction) -> Fraction:
    s = 3 * sigma - 1
    return 8 * s * gamma**2 + 8 * sigma * s * gamma + s**2


def r_plus_interval(sigma: Fraction, gamma: Fraction, bits: int = DEFAULT_BITS) -> RationalInterval:
    """Enclosure of the larger root R₊ of 𝒫."""
    sigma, gamma = Fraction(sigma), Fraction(gamma)
    if sigma >= 1:
        raise PreconditionError("R₊ needs σ < 1")
    disc = r_plus_discriminant(sigma, gamma)
    if disc < 0:
        raise PreconditionError(f"𝒫 has no real roots (discriminant {disc})")
    num = sqrt_interval(disc, bits) + (4 * gamma + 3 * sigma - 1)
    return num * (1 / (2 * (1 - sigma)))


def p_sign_change(sigma: Fraction, gamma: Fraction, enclosure: RationalInterval) -> bool:
    """𝒫 >= 0 at the left end and <= 0 at the right end of an R₊ enclosure."""
    return polynomial_P(sigma, gamma, enclosure.lo) >= 0 >= polynomial_P(sigma, gamma, enclosure.hi)


def _common_hypotheses(inv: LogInvariants, nef: Status) -> dict[str, Status]:
    return {
        "kd_nef": nef,
        "kd_sq_positive": Status.of(inv.kd_sq > 0),
        "not_smooth_d_rational": Status.of(not inv.smooth_d_rational),
        "bmy_gap_nonneg": Status.of(inv.bmy_gap >= 0),
    }


def degree_bound_general(
    inv: LogInvariants, bits: int = DEFAULT_BITS, *, nef: Status = Status.ASSERTED
) -> BoundReport:
    """(K+D)·C <= A(-e(C∖D)/2) + B, with the normalised steps behind it."""
    dec = _Decider(bits)
    hyps = _common_hypotheses(inv, nef)
    hyps["kd_sq_exceeds_e_open"] = Status.of(inv.kd_sq > inv.e_open)
    checks: list[Check] = []
    values: dict[str, str] = {}
    A = B = R = bound = None

    if hyps["kd_sq_positive"].ok:
        norm = normalized_invariants(inv)
        values.update({k: format_rational(v) for k, v in vars(norm).items()})
        sigma, gamma, x = norm.sigma, norm.gamma, norm.x
        if x > 3 * gamma:
            p = polynomial_P(sigma, gamma, x)
            values["P_at_x"] = format_rational(p)
            checks.append(Check("P_nonneg", Verdict.of(p >= 0), requires=("kd_nef",)))
        else:
            values["branch"] = "x <= 3 gamma"
        if sigma < 1:
            disc = r_plus_discriminant(sigma, gamma)
            hyps["discriminant_nonneg"] = Status.of(disc >= 0)
            if disc >= 0:
                R = r_plus_interval(sigma, gamma, bits)
                checks.append(
                    Check(
                        "x_le_R_plus",
                        dec(lambda b: RationalInterval.point(x).compare_le(r_plus_interval(sigma, gamma, b))),
                        requires=("kd_nef", "not_smooth_d_rational", "discriminant_nonneg"),
                    )
                )

    if hyps["kd_sq_exceeds_e_open"].ok and hyps["bmy_gap_nonneg"].ok and inv.kd_sq > 0:
        A, B = coefficient_intervals(inv.kd_sq, inv.e_open, bits)
        g = -inv.e_curve / 2

        def rhs(b: int) -> RationalInterval:
            a_, b_ = coefficient_intervals(inv.kd_sq, inv.e_open, b)
            return a_ * g + b_

        bound = rhs(bits)
        checks.append(
            Check(
                "degree_bound",
                dec(lambda b: RationalInterval.point(inv.kd_c).compare_le(rhs(b))),
                requires=tuple(hyps),
            )
        )
    return BoundReport(
        kind="general",
        checks=tuple(checks),
        hypotheses=hyps,
        A=A,
        B=B,
        R_plus=R,
        bound=bound,
        values=values,
        bits=dec.used,
    )


# ---------------------------------------------------------------------------
# smooth curves meeting D transversally


def smooth_quadratic(inv: LogInvariants, t: Fraction) -> Fraction:
    """2t² + [6e_C - 2g]t - 2e_C·g + (9/2)e_C² with g = 3e(X∖D) - (K+D)²."""
    e, g = inv.e_curve, inv.bmy_gap
    return 2 * t**2 + (6 * e - 2 * g) * t - 2 * e * g + Fraction(9, 2) * e**2


def smooth_bound_interval(inv: LogInvariants, bits: int = DEFAULT_BITS) -> RationalInterval:
    """-(3/2)e_C + √g·√(g - 2e_C)/2 + g/2."""
    e, g = inv.e_curve, inv.bmy_gap
    if g < 0 or g - 2 * e < 0:
        raise PreconditionError("smooth bound needs g >= 0 and g - 2e(C∖D) >= 0")
    return sqrt_interval(g * (g - 2 * e), bits) * HALF + (-Fraction(3, 2) * e + g / 2)


def degree_bound_smooth(
    inv: LogInvariants, bits: int = DEFAULT_BITS, *, nef: Status = Status.ASSERTED
) -> BoundReport:
    dec = _Decider(bits)
    hyps = _common_hypotheses(inv, nef)
    hyps["smooth_transverse"] = Status.of(inv.smooth)
    hyps["radicand_nonneg"] = Status.of(inv.bmy_gap - 2 * inv.e_curve >= 0)
    checks: list[Check] = []
    values: dict[str, str] = {}
    bound = None
    t = inv.kd_c
    q = smooth_quadratic(inv, t)
    values["quadratic_at_t"] = format_rational(q)
    if t > -Fraction(3, 2) * inv.e_curve:
        checks.append(Check("smooth_quadratic", Verdict.of(q <= 0), requires=tuple(hyps)))
    else:
        values["branch"] = "t <= -3/2 e_C"
    if hyps["bmy_gap_nonneg"].ok and hyps["radicand_nonneg"].ok:
        bound = smooth_bound_interval(inv, bits)
        checks.append(
            Check(
                "degree_bound",
                dec(lambda b: RationalInterval.point(t).compare_le(smooth_bound_interval(inv, b))),
                requires=tuple(hyps),
            )
        )
    return BoundReport(
        kind="smooth", checks=tuple(checks), hypotheses=hyps, bound=bound, values=values, bits=dec.used
    )


# ---------------------------------------------------------------------------
# smooth D-rational curves: contract C and apply log BMY downstairs


def ceiling_identity(t: int) -> tuple[int, int]:
    """(⌈t²/(t+1) + 3⌉, t + 3); equal for every integer t >= 0."""
    if t < 0:
        raise PreconditionError("ceiling identity is stated for t >= 0")
    return ceil(Fraction(t * t, t + 1) + 3), t + 3


def disjoint_branch(t: Fraction) -> Fraction:
    """t²/(t+2) - 3/(t+2) + 6, the lower bound for 3e - (K+D)² when C ∩ D = ∅."""
    t = Fraction(t)
    return t**2 / (t + 2) - 3 / (t + 2) + 6


def meeting_branch(t: Fraction) -> Fraction:
    """t²/(t+1) + 3, the lower bound when C meets D once."""
    t = Fraction(t)
    return t**2 / (t + 1) + 3


@dataclass(frozen=True)
class Contraction:
    disjoint: bool
    m: int
    e_open: Fraction
    kd_sq: Fraction

    @property
    def bmy_gap(self) -> Fraction:
        return 3 * self.e_open - self.kd_sq


def contract(inv: LogInvariants) -> Contraction:
    """Invariants after contracting the (-m)-curve C."""
    m = -inv.c_sq
    if m <= 0 or m.denominator != 1:
        raise PreconditionError("contraction needs C² a negative integer")
    m = int(m)
    if inv.d_dot_c == 0:
        return Contraction(True, m, inv.e_open - 2 + Fraction(1, m), inv.kd_sq + Fraction((m - 2) ** 2, m))
    return Contraction(False, m, inv.e_open - 1, inv.kd_sq + Fraction((m - 1) ** 2, m))


def degree_bound_d_rational(inv: LogInvariants) -> BoundReport:
    """(K+D)·C <= 3e(X∖D) - (K+D)² - 3 for a smooth D-rational (-m)-curve."""
    hyps = {
        "smooth_d_rational": Status.of(inv.smooth_d_rational),
        "negative_curve": Status.of(inv.c_sq < 0),
        "integral_gap": Status.of(inv.bmy_gap.denominator == 1),
    }
    checks: list[Check] = []
    values: dict[str, str] = {}
    t = inv.kd_c
    limit = inv.bmy_gap - 3
    values["bound"] = format_rational(limit)
    if hyps["smooth_d_rational"].ok and hyps["negative_curve"].ok:
        con = contract(inv)
        values.update(
            branch="disjoint" if con.disjoint else "meets_once",
            m=str(con.m),
            contracted_e_open=format_rational(con.e_open),
            contracted_kd_sq=format_rational(con.kd_sq),
        )
        expected_t = con.m - 2 if con.disjoint else con.m - 1
        checks.append(Check("canonical_degree_formula", Verdict.of(t == expected_t)))
        checks.append(Check("contracted_bmy", Verdict.of(con.bmy_gap >= 0)))
        if t >= 0:
            lower = disjoint_branch(t) if con.disjoint else meeting_branch(t)
            values["branch_value"] = format_rational(lower)
            checks.append(Check("branch_le_gap", Verdict.of(lower <= inv.bmy_gap)))
            if con.disjoint:
                checks.append(Check("branch_exceeds_t_plus_3", Verdict.of(lower >= t + 3)))
            elif t.denominator == 1:
                c, target = ceiling_identity(int(t))
                checks.append(Check("ceiling_identity", Verdict.of(c == target)))
    checks.append(Check("degree_bound", Verdict.of(t <= limit), requires=tuple(hyps)))
    return BoundReport(kind="d_rational", checks=tuple(checks), hypotheses=hyps, values=values)


def _merge(general: BoundReport, smooth: BoundReport) -> BoundReport:
    """General report extended by the sharper smooth-curve checks."""
    hyps = dict(general.hypotheses)
    hyps.update(smooth.hypotheses)
    extra = tuple(
        Check(f"smooth_{c.name}", c.verdict, c.requires, c.detail) for c in smooth.checks
    )
    values = dict(general.values)
    values.update({f"smooth_{k}": v for k, v in smooth.values.items()})
    if smooth.bound is not None:
        values["smooth_bound"] = f"[{format_rational(smooth.bound.lo)}, {format_rational(smooth.bound.hi)}]"
    return replace(
        general,
        kind="general+smooth",
        checks=general.checks + extra,
        hypotheses=hyps,
        values=values,
        bits=max(general.bits, smooth.bits),
    )


def select_bound(
    inv: LogInvariants, bits: int = DEFAULT_BITS, *, nef: Status = Status.ASSERTED, kind: str | None = None
) -> BoundReport:
    """Pick the bounds matching the curve's shape unless ``kind`` forces one.

    Smooth transverse curves get both the general and the smooth bound.
    """
    if kind is None:
        if inv.smooth_d_rational:
            return degree_bound_d_rational(inv)
        if inv.smooth:
            return _merge(degree_bound_general(inv, bits, nef=nef), degree_bound_smooth(inv, bits, nef=nef))
        kind = "general"
    if kind == "general":
        return degree_bound_general(inv, bits, nef=nef)
    if kind == "smooth":
        return degree_bound_smooth(inv, bits, nef=nef)
    if kind == "d_rational":
        return degree_bound_d_rational(inv)
    raise InputError(f"unknown bound kind {kind!r}")


# ---------------------------------------------------------------------------
# plane curves against two boundary curves


def validate_lambda0(lambda0: Fraction) -> Fraction:
    lambda0 = Fraction(lambda0)
    if not Fraction(2, 3) < lambda0 < 1:
        raise PreconditionError(f"λ₀ must lie strictly between 2/3 and 1, got {lambda0}")
    return lambda0


validate_lambda0(DEFAULT_LAMBDA0)


def _lambda_root(lam: Fraction, bits: int) -> RationalInterval:
    return sqrt_interval(2 * (2 * lam**2 + lam + 2), bits)


def a_lambda(lam: Fraction, bits: int = DEFAULT_BITS) -> RationalInterval:
    lam = Fraction(lam)
    return (_lambda_root(lam, bits) * (lam + 1) + 2 * (lam + 1) ** 2) / (lam / 2 - THIRD)


def b_lambda(lam: Fraction, bits: int = DEFAULT_BITS) -> RationalInterval:
    lam = Fraction(lam)
    num = _lambda_root(lam, bits) * ((lam**2 + lam + 1) * (lam + 1)) + (lam + 1) ** 2 * (
        2 * lam**2 + lam + 2
    )
    return num / (2 * (lam / 2 - THIRD))


def m_bound(lam: Fraction) -> int:
    """⌊50 / (λ/2 - 1/3)⌋."""
    lam = Fraction(lam)
    if lam <= Fraction(2, 3):
        raise PreconditionError("m bound needs λ > 2/3")
    return floor(50 / (lam / 2 - THIRD))


def _lemma(lam: Fraction, bits: int) -> Verdict:
    rhs = 50 / (lam / 2 - THIRD)
    return (a_lambda(lam, bits) * ((lam + 1) / (lam + HALF))).compare_le(rhs)


def lemma_check(lam: Fraction, bits: int = DEFAULT_BITS) -> Verdict:
    """(λ+1)a(λ)/(λ+1/2) <= 50/(λ/2 - 1/3), decided with retries."""
    lam = Fraction(lam)
    return decide(lambda b: _lemma(lam, b), bits)[0]


def nu_threshold(g: int, lambda0: Fraction = DEFAULT_LAMBDA0) -> Fraction:
    lambda0 = validate_lambda0(lambda0)
    return (H_CONST * g + K_CONST) / ((lambda0 / 2 - THIRD) * (lambda0 / 2 + Fraction(1, 4)))


@dataclass(frozen=True)
class PlaneNumbers:
    e_open: int
    kd_sq: int
    difference: int  # (K+D)² - e(X∖D)
    difference_closed: Fraction  # λd₂² - 3(λ+1)d₂ + 6
    difference_printed: Fraction  # λd₂(d₂ - 3(λ+1)) + 6


def plane_numbers(d1: int, d2: int) -> PlaneNumbers:
    lam = Fraction(d1, d2)
    e = 3 + d1 * (d1 - 3) + d2 * (d2 - 3) + d1 * d2
    k = (d1 + d2 - 3) ** 2
    return PlaneNumbers(
        e_open=e,
        kd_sq=k,
        difference=k - e,
        difference_closed=lam * d2**2 - 3 * (lam + 1) * d2 + 6,
        difference_printed=lam * d2 * (d2 - 3 * (lam + 1)) + 6,
    )


def p2_corollary(
    d1: int,
    d2: int,
    d: int,
    g: int,
    m: int,
    *,
    lambda0: Fraction = DEFAULT_LAMBDA0,
    bits: int = DEFAULT_BITS,
) -> BoundReport:
    """Tangency bound for a plane curve of degree d against D₁ + D₂."""
    for name, v in (("d1", d1), ("d2", d2), ("d", d), ("g", g), ("m", m)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"{name} must be an integer")
    if not d >= d2 >= d1 > 0:
        raise InputError(f"degrees must satisfy d >= d2 >= d1 > 0, got {d}, {d2}, {d1}")
    if g < 0 or m < 1:
        raise InputError("genus must be >= 0 and m >= 1")
    lambda0 = validate_lambda0(lambda0)
    dec = _Decider(bits)
    lam, nu = Fraction(d1, d2), Fraction(d, d2)
    nums = plane_numbers(d1, d2)
    threshold = nu_threshold(g, lambda0)
    hyps = {
        "d2_at_least_6": Status.of(d2 >= 6),
        "lambda_at_least_lambda0": Status.of(lam >= lambda0),
        "nu_above_threshold": Status.of(nu > threshold),
    }
    checks = [
        Check("difference_closed_form", Verdict.of(nums.difference == nums.difference_closed)),
        Check("difference_positive", Verdict.of(nums.difference > 0), requires=("d2_at_least_6", "lambda_at_least_lambda0")),
    ]
    values = {
        "lambda": format_rational(lam),
        "nu": format_rational(nu),
        "e_open": str(nums.e_open),
        "kd_sq": str(nums.kd_sq),
        "difference": str(nums.difference),
        "difference_printed_form": format_rational(nums.difference_printed),
        "nu_threshold": format_rational(threshold),
    }
    A = B = None
    if lam > Fraction(2, 3):
        bound_m = m_bound(lam)
        values["m_bound"] = str(bound_m)
        checks.append(Check("lemma", dec(lambda b: _lemma(lam, b))))
        checks.append(Check("m_bound", Verdict.of(m <= bound_m), requires=tuple(hyps)))
    if nums.difference > 0 and 3 * nums.e_open >= nums.kd_sq:
        A, B = coefficient_intervals(Fraction(nums.kd_sq), Fraction(nums.e_open), bits)
        if lam > Fraction(2, 3):
            checks.append(
                Check(
                    "A_le_a",
                    dec(lambda b: coefficient_intervals(nums.kd_sq, nums.e_open, b)[0].compare_le(a_lambda(lam, b))),
                )
            )
            checks.append(
                Check(
                    "B_le_b",
                    dec(
                        lambda b: coefficient_intervals(nums.kd_sq, nums.e_open, b)[1].compare_le(
                            b_lambda(lam, b) * d2**2
                        )
                    ),
                )
            )
    return BoundReport(kind="p2", checks=tuple(checks), hypotheses=hyps, A=A, B=B, values=values, bits=dec.used)
