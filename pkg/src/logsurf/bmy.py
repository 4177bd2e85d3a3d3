"""Chern data of the orbibundle E_α and the chain of inequalities built on it.

All quantities are divided by the degree of the Kawamata covering, which
cancels everywhere, so the covering never has to be built.  The divisors
D_α, N_α, N̂_α and N̄_α live on the resolved lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InconsistentDatumError, LogsurfError, PreconditionError
from .lattice import (
    Divisor,
    SurfaceModel,
    format_rational,
    intersect,
    is_effective,
    numerically_equivalent,
)
from .resolution import (
    C_TILDE,
    ResolutionDatum,
    ResolvedSurface,
    Stage,
    build_resolved_lattice,
    check_adjunction,
    ebar,
    euler_open_curve,
    euler_open_surface,
)
from .verdicts import Check, Status, Verdict
from .zariski import zariski_absolute, zariski_support

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class LogInvariants:
    """The numbers every α-inequality and degree bound depends on."""

    kd_sq: Fraction  # (K+D)²
    e_open: Fraction  # e(X∖D)
    kd_c: Fraction  # (K+D)·C
    c_sq: Fraction  # C²
    e_curve: Fraction  # e(C∖D)
    genus: int = 0
    d_dot_c: Fraction = Fraction(0)
    smooth: bool = False  # C smooth and transverse to D (no centers)

    @property
    def first_bracket(self) -> Fraction:
        """(K+D)·C + (3/2) e(C∖D)."""
        return self.kd_c + Fraction(3, 2) * self.e_curve

    @property
    def second_bracket(self) -> Fraction:
        """C² + 3(K+D)·C + 3 e(C∖D)."""
        return self.c_sq + 3 * self.kd_c + 3 * self.e_curve

    @property
    def bmy_gap(self) -> Fraction:
        """3 e(X∖D) - (K+D)²."""
        return 3 * self.e_open - self.kd_sq

    @property
    def smooth_d_rational(self) -> bool:
        return self.genus == 0 and self.smooth and self.d_dot_c <= 1

    def to_json(self) -> dict:
        f = format_rational
        return {
            "kd_sq": f(self.kd_sq),
            "e_open": f(self.e_open),
            "kd_c": f(self.kd_c),
            "c_sq": f(self.c_sq),
            "e_curve": f(self.e_curve),
            "genus": self.genus,
            "d_dot_c": f(self.d_dot_c),
            "smooth": self.smooth,
        }


def curve_invariants(
    model: SurfaceModel,
    datum: ResolutionDatum,
    C: Divisor,
    resolved: ResolvedSurface | None = None,
) -> LogInvariants:
    resolved = resolved or build_resolved_lattice(model, datum, C)
    kd = model.log_canonical
    return LogInvariants(
        kd_sq=intersect(kd, kd, model),
        e_open=euler_open_surface(model),
        kd_c=intersect(kd, C, model),
        c_sq=intersect(C, C, model),
        e_curve=euler_open_curve(datum, resolved),
        genus=datum.genus_C,
        d_dot_c=intersect(model.boundary_divisor, C, model),
        smooth=len(datum) == 0,
    )


# ---------------------------------------------------------------------------
# Chern data


def _check_alpha(alpha: Fraction) -> Fraction:
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise PreconditionError(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


@dataclass(frozen=True)
class ChernData:
    alpha: Fraction
    c2_norm: Fraction
    c1sq_norm: Fraction
    d_alpha: Divisor

    def to_json(self) -> dict:
        return {
            "alpha": format_rational(self.alpha),
            "c2": format_rational(self.c2_norm),
            "c1sq": format_rational(self.c1sq_norm),
            "d_alpha": self.d_alpha.to_json(),
        }


def chern_data(
    model: SurfaceModel,
    datum: ResolutionDatum,
    C: Divisor,
    alpha: Fraction,
    resolved: ResolvedSurface | None = None,
) -> ChernData:
    """c₂ and c₁² of E_α per covering degree."""
    alpha = _check_alpha(alpha)
    resolved = resolved or build_resolved_lattice(model, datum, C)
    adj = check_adjunction(model, datum, C, resolved)
    if not adj.holds:
        raise InconsistentDatumError(
            f"adjunction fails by {adj.difference}; check the genus and multiplicities"
        )
    x = resolved.discrepancies
    kd = model.log_canonical
    e_curve = adj.e_curve
    c2 = euler_open_surface(model) - alpha * e_curve
    for c in datum.centers:
        if c.stage is Stage.S1:
            c2 += alpha * c.m - 1
        elif c.stage is Stage.LATE1:
            c2 -= alpha * c.m * c.eps
    c1sq = (
        intersect(kd, kd, model)
        + 2 * alpha * intersect(kd, C, model)
        + alpha**2 * intersect(C, C, model)
        - sum((x[c.index] - alpha * c.m) ** 2 for c in datum.centers)
    )
    d_alpha = kd + C * alpha + Divisor(
        (ebar(c.index), x[c.index] - alpha * c.m) for c in datum.centers
    )
    if resolved.pair(d_alpha, d_alpha) != c1sq:
        raise InconsistentDatumError("c1² disagrees with D_α² on the resolved lattice")
    return ChernData(alpha=alpha, c2_norm=c2, c1sq_norm=c1sq, d_alpha=d_alpha)


# ---------------------------------------------------------------------------
# nef reduction


@dataclass(frozen=True)
class ReductionData:
    """Coefficients of the negative parts on the total transforms Ē_j.

    ``b`` comes from N_α = N_{G+F''}(D_α), ``b_hat`` from
    N̂_α = N_{F+G}(P_α).  ``n_bar_sq`` is N̄_α² for the absolute negative
    part of P_α; it is None when that decomposition is unavailable.
    """

    b: Mapping[int, Fraction]
    b_hat: Mapping[int, Fraction]
    n_alpha_sq: Fraction
    n_hat_sq: Fraction
    n_bar_sq: Fraction | None
    kappa: Status
    absolute_scope: str
    notes: tuple[str, ...] = field(default=())

    @property
    def b_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.b.values()) and all(v >= 0 for v in self.b_hat.values())

    def to_json(self) -> dict:
        f = format_rational
        return {
            "b": {str(k): f(v) for k, v in self.b.items()},
            "b_hat": {str(k): f(v) for k, v in self.b_hat.items()},
            "n_alpha_sq": f(self.n_alpha_sq),
            "n_hat_sq": f(self.n_hat_sq),
            "n_bar_sq": None if self.n_bar_sq is None else f(self.n_bar_sq),
            "kappa": self.kappa.value,
            "absolute_scope": self.absolute_scope,
            "notes": list(self.notes),
        }


def local_part(resolved: ResolvedSurface, alpha: Fraction) -> Divisor:
    """Σ x_i Ē_i + α C~ written on strict curves (an effective divisor)."""
    out = Divisor.prime(C_TILDE, alpha) if alpha else Divisor()
    for c in resolved.datum.centers:
        xi = resolved.discrepancies[c.index]
        if xi:
            out = out + resolved.ebar_in_strict(c.index) * xi
    return out


def certified_representative(
    model: SurfaceModel, representative: Divisor | None
) -> Divisor | None:
    """An effective divisor numerically equal to K + D, if one is known."""
    kd = model.log_canonical
    if representative is not None:
        model.check_divisor(representative)
        if is_effective(representative) and numerically_equivalent(representative, kd, model):
            return representative
        return None
    return kd if is_effective(kd) else None


def _ebar_coefficients(resolved: ResolvedSurface, d: Divisor, indices) -> dict[int, Fraction]:
    expanded = resolved.expand(d)
    return {i: expanded.coefficient(ebar(i)) for i in indices}


def reduction_data(
    resolved: ResolvedSurface,
    chern: ChernData,
    *,
    representative: Divisor | None = None,
    kappa_asserted: bool = False,
) -> ReductionData:
    """Nef reduction of D_α along G+F'', then the F+G and absolute parts of P_α."""
    model = resolved.model
    datum = resolved.datum
    n = len(datum)
    local = local_part(resolved, chern.alpha)
    zs = zariski_support(local, resolved.cycle("G+F''"), model)
    N_alpha = zs.negative
    P_local = local - N_alpha
    zh = zariski_support(P_local, resolved.cycle("F+G"), model)
    late = range(datum.s_prime + 1, n + 1)
    b = _ebar_coefficients(resolved, N_alpha, late)
    b_hat = _ebar_coefficients(resolved, zh.negative, range(1, n + 1))

    notes: list[str] = []
    rep = certified_representative(resolved.base, representative)
    kappa = Status.MET if rep is not None else (Status.ASSERTED if kappa_asserted else Status.UNMET)
    exceptional = list(resolved.strict_names) + [C_TILDE]
    n_bar_sq: Fraction | None = None
    scope = "exceptional"
    attempts: list[tuple[str, Divisor, list[str] | None]] = []
    if rep is not None:
        attempts.append(("full", rep + P_local, None))
    attempts.append(("exceptional", resolved.base.log_canonical + P_local, exceptional))
    for label, divisor, candidates in attempts:
        try:
            za = zariski_absolute(divisor, model, candidates=candidates)
        except LogsurfError as exc:
            notes.append(f"absolute decomposition ({label}) unavailable: {exc}")
            continue
        n_bar_sq = intersect(za.negative, za.negative, model)
        scope = label
        break
    return ReductionData(
        b=b,
        b_hat=b_hat,
        n_alpha_sq=intersect(N_alpha, N_alpha, model),
        n_hat_sq=intersect(zh.negative, zh.negative, model),
        n_bar_sq=n_bar_sq,
        kappa=kappa,
        absolute_scope=scope,
        notes=tuple(notes),
    )


def principal_lhs(chern: ChernData, reduction: ReductionData) -> Fraction | None:
    """3c₂ - c₁² + N_α² + N̄_α²/4 of the reduced bundle, per covering degree."""
    if reduction.n_bar_sq is None:
        return None
    return 3 * chern.c2_norm - chern.c1sq_norm + reduction.n_alpha_sq + reduction.n_bar_sq / 4


# ---------------------------------------------------------------------------
# the inequality in α


def main_quadratic_coefficients(inv: LogInvariants) -> tuple[Fraction, Fraction, Fraction]:
    """(a₂, a₁, a₀) with the main inequality reading a₂α² + a₁α + a₀ >= 0."""
    return (inv.second_bracket / 2, -2 * inv.first_bracket, inv.bmy_gap)


def main_quadratic(inv: LogInvariants, alpha: Fraction) -> Fraction:
    a2, a1, a0 = main_quadratic_coefficients(inv)
    alpha = Fraction(alpha)
    return a2 * alpha**2 + a1 * alpha + a0


@dataclass(frozen=True)
class DiscriminantReport:
    value: Fraction
    verdict: Verdict
    hypotheses: Mapping[str, Status]
    alpha0: Fraction | None

    def to_json(self) -> dict:
        return {
            "value": format_rational(self.value),
            "verdict": self.verdict.value,
            "hypotheses": {k: v.value for k, v in self.hypotheses.items()},
            "alpha0": None if self.alpha0 is None else format_rational(self.alpha0),
        }


def minimizing_alpha(inv: LogInvariants) -> Fraction | None:
    """α₀ = 2[(K+D)·C + (3/2)e] / [C² + 3(K+D)·C + 3e], when defined."""
    q = inv.second_bracket
    return None if q == 0 else 2 * inv.first_bracket / q


def discriminant_inequality(inv: LogInvariants) -> DiscriminantReport:
    """2[(K+D)·C + (3/2)e_C]² - [3e_X - (K+D)²][C² + 3(K+D)·C + 3e_C] <= 0.

    ``first_bracket_nonneg`` is what the minimisation argument actually
    needs: together with C not smooth D-rational it puts α₀ in [0, 1].
    """
    value = 2 * inv.first_bracket**2 - inv.bmy_gap * inv.second_bracket
    hyps = {
        "not_smooth_d_rational": Status.of(not inv.smooth_d_rational),
        "kd_c_at_least_minus_three_halves_e_open": Status.of(
            inv.kd_c >= -Fraction(3, 2) * inv.e_open
        ),
        "first_bracket_nonneg": Status.of(inv.first_bracket >= 0),
    }
    return DiscriminantReport(
        value=value,
        verdict=Verdict.of(value <= 0),
        hypotheses=hyps,
        alpha0=minimizing_alpha(inv),
    )


# ---------------------------------------------------------------------------
# the inequality chain


def firstest_explicit(
    inv: LogInvariants, resolved: ResolvedSurface, alpha: Fraction, b: Mapping[int, Fraction]
) -> Fraction:
    """Right-hand side of the first estimate, summed term by term."""
    alpha = Fraction(alpha)
    total = (
        inv.bmy_gap
        - 2 * alpha * inv.first_bracket
        - alpha**2 * inv.c_sq
    )
    x = resolved.discrepancies
    for c in resolved.datum.centers:
        sq = (x[c.index] - alpha * c.m) ** 2
        bj = b.get(c.index, Fraction(0))
        if c.stage is Stage.S1:
            total += 3 * (alpha * c.m - 1) + sq
        elif c.stage is Stage.LATE1:
            total += -3 * alpha * c.m * c.eps + sq - bj**2
        else:
            total += sq - bj**2
    return total


def boundoldpoints(m: int, alpha: Fraction) -> tuple[Fraction, Fraction]:
    """(4(1 - αm + α²m²) - max(2 - αm, 0)², 6α²m(m - 1))."""
    alpha = Fraction(alpha)
    am = alpha * m
    lhs = 4 * (1 - am + am**2) - max(2 - am, Fraction(0)) ** 2
    return lhs, 6 * alpha**2 * m * (m - 1)


@dataclass(frozen=True)
class ChainRow:
    name: str
    index: int | None
    lhs: Fraction
    rhs: Fraction
    relation: str  # "<=", ">=", "=="

    @property
    def holds(self) -> bool:
        if self.relation == "<=":
            return self.lhs <= self.rhs
        if self.relation == ">=":
            return self.lhs >= self.rhs
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "index": self.index,
            "lhs": format_rational(self.lhs),
            "relation": self.relation,
            "rhs": format_rational(self.rhs),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class ChainReport:
    alpha: Fraction
    rows: tuple[ChainRow, ...]
    principal: Fraction | None
    quadratic: Fraction

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)

    def failures(self) -> list[ChainRow]:
        return [r for r in self.rows if not r.holds]


def chain_validators(
    inv: LogInvariants,
    resolved: ResolvedSurface,
    chern: ChernData,
    reduction: ReductionData,
) -> ChainReport:
    """Every intermediate inequality between the Chern data and the main quadratic."""
    alpha = chern.alpha
    x = resolved.discrepancies
    rows: list[ChainRow] = []
    for c in resolved.datum.centers:
        i, m = c.index, c.m
        gap = x[i] - alpha * m
        if c.stage is Stage.S1:
            rows.append(ChainRow("b_hat_lower", i, reduction.b_hat[i], gap, ">="))
            lhs, rhs = boundoldpoints(m, alpha)
            rows.append(ChainRow("boundoldpoints", i, lhs, rhs, "<="))
            continue
        bj = reduction.b[i]
        rows.append(ChainRow("b_lower", i, bj, gap, ">="))
        sq = gap**2 - bj**2
        if c.stage is Stage.S2:
            rows.append(ChainRow("fst_s2", i, sq, alpha**2 * m * (m - x[i]), "<="))
        elif c.stage is Stage.LATE1:
            rows.append(
                ChainRow("fst_late1", i, -3 * alpha * m * c.eps + sq, alpha**2 * m * (m - 1), "<=")
            )
        else:
            rows.append(
                ChainRow("fst_late2", i, sq, alpha**2 * m * (m - 1 + c.eps + c.delta), "<=")
            )
    s1_bound = -sum(
        max(x[c.index] - alpha * c.m, Fraction(0)) ** 2
        for c in resolved.datum.by_stage(Stage.S1)
    )
    rows.append(ChainRow("n_hat_sq_bound", None, reduction.n_hat_sq, s1_bound, "<="))
    if reduction.n_bar_sq is not None:
        rows.append(ChainRow("n_bar_le_n_hat", None, reduction.n_bar_sq, reduction.n_hat_sq, "<="))
    lhs = 3 * chern.c2_norm - chern.c1sq_norm + reduction.n_alpha_sq
    rows.append(
        ChainRow("firstest_identity", None, lhs, firstest_explicit(inv, resolved, alpha, reduction.b), "==")
    )
    quad = main_quadratic(inv, alpha)
    principal = principal_lhs(chern, reduction)
    if principal is not None:
        rows.append(ChainRow("principal_le_quadratic", None, principal, quad, "<="))
    return ChainReport(alpha=alpha, rows=tuple(rows), principal=principal, quadratic=quad)


def chain_checks(report: ChainReport) -> list[Check]:
    """Collapse a chain report into named checks (one per inequality family)."""
    families: dict[str, bool] = {}
    for row in report.rows:
        families[row.name] = families.get(row.name, True) and row.holds
    # the last step of the chain uses κ(K+D) >= 0
    needs_kappa = {"principal_le_quadratic": ("kappa_nonneg",)}
    out = [Check(name, Verdict.of(ok), requires=needs_kappa.get(name, ())) for name, ok in families.items()]
    if report.principal is not None:
        out.append(
            Check(
                "bmy_instance",
                Verdict.of(report.principal >= 0),
                requires=("kappa_nonneg",),
            )
        )
    return out
