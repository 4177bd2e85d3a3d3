"""Combinatorial log-resolution data for a curve C against a boundary D.

A resolution is a sequence of point blow-ups.  Each center records the
multiplicity ``m`` of the strict transform of C there, the multiplicity
``delta`` of the strict transform of D, and its *proximity set*: the
earlier exceptional curves whose strict transforms pass through it.

Centers come in four stages, in this order:

``S1``
    singular points of C off D (m >= 2);
``S2``
    points of C ∩ D where C + D is not SNC (delta in {1, 2});
``LATE1``
    later centers over S1 points (delta = 0);
``LATE2``
    later centers over S2 points.

For a late center the coefficient ``epsilon`` in
E = Σ_{i<=s} Ē_i - Σ_{j>s} ε_j Ē_j is one less than the size of its
proximity set, and the discrepancy is x = 1 - ε - δ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InconsistentDatumError, InputError
from .lattice import Cycle, Divisor, SurfaceModel, format_rational, intersect


class Stage(str, Enum):
    S1 = "S1"
    S2 = "S2"
    LATE1 = "LATE1"
    LATE2 = "LATE2"

    @property
    def late(self) -> bool:
        return self in (Stage.LATE1, Stage.LATE2)

    @property
    def over_s1(self) -> bool:
        return self in (Stage.S1, Stage.LATE1)


_ORDER = {Stage.S1: 0, Stage.S2: 1, Stage.LATE1: 2, Stage.LATE2: 3}


@dataclass(frozen=True)
class BlowupCenter:
    index: int
    stage: Stage
    m: int
    delta: int = 0
    proximity: frozenset[int] = frozenset()
    epsilon: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "stage", Stage(self.stage))
        object.__setattr__(self, "proximity", frozenset(self.proximity))
        for name in ("index", "m", "delta"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(f"center field {name} must be an integer")
        derived = len(self.proximity) - 1 if self.stage.late else 0
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", max(derived, 0))
        elif self.epsilon != derived:
            raise InconsistentDatumError(
                f"center {self.index}: epsilon {self.epsilon} does not match "
                f"its proximity set {sorted(self.proximity)} (expected {derived})"
            )

    @property
    def eps(self) -> int:
        assert self.epsilon is not None
        return self.epsilon


@dataclass(frozen=True)
class Discrepancies:
    x: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.x[i - 1]

    def __len__(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class ResolutionDatum:
    centers: tuple[BlowupCenter, ...]
    genus_C: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", tuple(self.centers))
        self.validate()

    # --- counts ---------------------------------------------------------
    def _count(self, *stages: Stage) -> int:
        return sum(1 for c in self.centers if c.stage in stages)

    @property
    def s_prime(self) -> int:
        return self._count(Stage.S1)

    @property
    def s(self) -> int:
        return self._count(Stage.S1, Stage.S2)

    @property
    def r_prime(self) -> int:
        return self._count(Stage.LATE1)

    @property
    def r(self) -> int:
        return self._count(Stage.LATE1, Stage.LATE2)

    def __len__(self) -> int:
        return len(self.centers)

    def center(self, i: int) -> BlowupCenter:
        return self.centers[i - 1]

    def by_stage(self, stage: Stage) -> list[BlowupCenter]:
        return [c for c in self.centers if c.stage is stage]

    def proximate_to(self, i: int) -> list[int]:
        """Indices j whose center lies on the strict transform of E_i."""
        return [c.index for c in self.centers if i in c.proximity]

    # --- validation -----------------------------------------------------
    def validate(self) -> None:
        if not isinstance(self.genus_C, int) or isinstance(self.genus_C, bool) or self.genus_C < 0:
            raise InputError("genus_C must be an integer >= 0")
        last = -1
        for pos, c in enumerate(self.centers, start=1):
            where = f"center {pos}"
            if c.index != pos:
                raise InconsistentDatumError(f"{where}: index {c.index} out of sequence")
            rank = _ORDER[c.stage]
            if rank < last:
                raise InconsistentDatumError(
                    f"{where}: stage {c.stage.value} after a later stage; "
                    "order must be S1, S2, LATE1, LATE2"
                )
            last = rank
            if c.m < 0 or c.delta < 0:
                raise InconsistentDatumError(f"{where}: m and delta must be >= 0")
            if c.stage is Stage.S1:
                if c.m < 2 or c.delta != 0:
                    raise InconsistentDatumError(f"{where}: S1 needs m >= 2 and delta = 0")
            elif c.m < 1:
                raise InconsistentDatumError(f"{where}: the strict transform of C must pass (m >= 1)")
            if c.stage is Stage.S2 and c.delta not in (1, 2):
                raise InconsistentDatumError(f"{where}: S2 needs delta in {{1, 2}}")
            if c.stage is Stage.LATE1 and c.delta != 0:
                raise InconsistentDatumError(f"{where}: LATE1 centers avoid D (delta = 0)")
            if c.stage is Stage.LATE2 and c.delta not in (0, 1):
                raise InconsistentDatumError(f"{where}: LATE2 needs delta in {{0, 1}}")
            if not c.stage.late:
                if c.proximity:
                    raise InconsistentDatumError(f"{where}: first-stage centers have no proximity")
                continue
            if not 1 <= len(c.proximity) <= 2:
                raise InconsistentDatumError(
                    f"{where}: a late center lies on one or two earlier exceptional curves"
                )
            for i in c.proximity:
                if not 1 <= i < pos:
                    raise InconsistentDatumError(f"{where}: proximity {i} is not an earlier index")
                if self.centers[i - 1].stage.over_s1 != c.stage.over_s1:
                    raise InconsistentDatumError(
                        f"{where}: proximity {i} lies over a different kind of point"
                    )
            if c.eps + c.delta > 1:
                raise InconsistentDatumError(
                    f"{where}: D is SNC, so epsilon + delta <= 1 (got {c.eps} + {c.delta})"
                )
        # Intersection numbers of strict transforms must be those of curves.
        n = len(self.centers)
        for i in range(1, n + 1):
            later = self.proximate_to(i)
            ci = self.center(i)
            if ci.m < sum(self.center(j).m for j in later):
                raise InconsistentDatumError(f"proximity inequality fails for C at E_{i}")
            if ci.delta < sum(self.center(j).delta for j in later):
                raise InconsistentDatumError(f"proximity inequality fails for D at E_{i}")
            for k in range(i + 1, n + 1):
                if strict_pairing(self, i, k) < 0:
                    raise InconsistentDatumError(
                        f"strict transforms of E_{i} and E_{k} would meet negatively"
                    )

    def to_json(self) -> dict:
        return {
            "genus": self.genus_C,
            "centers": [
                {
                    "stage": c.stage.value,
                    "m": c.m,
                    "delta": c.delta,
                    "epsilon": c.eps,
                    "proximity": sorted(c.proximity),
                }
                for c in self.centers
            ],
        }


def make_datum(centers: Iterable[Mapping], genus: int) -> ResolutionDatum:
    """Build a datum from plain dicts (stage, m, delta, proximity, epsilon)."""
    built = []
    for pos, spec in enumerate(centers, start=1):
        try:
            stage = Stage(spec["stage"])
        except (KeyError, ValueError) as exc:
            raise InputError(f"center {pos}: bad or missing stage") from exc
        built.append(
            BlowupCenter(
                index=pos,
                stage=stage,
                m=spec.get("m", 0),
                delta=spec.get("delta", 0),
                proximity=frozenset(spec.get("proximity", ())),
                epsilon=spec.get("epsilon"),
            )
        )
    return ResolutionDatum(tuple(built), genus)


def strict_pairing(datum: ResolutionDatum, i: int, k: int) -> int:
    """Intersection of the strict transforms of E_i and E_k on the final surface."""
    if i == k:
        return -1 - len(datum.proximate_to(i))
    if i > k:
        i, k = k, i
    shared = sum(1 for c in datum.centers if i in c.proximity and k in c.proximity)
    return int(i in datum.center(k).proximity) - shared


def derive_discrepancies(datum: ResolutionDatum) -> Discrepancies:
    """x_i with K~ + D~ + E = pullback(K + D) + Σ x_i Ē_i."""
    xs = []
    for c in datum.centers:
        if c.stage is Stage.S1:
            x = 2
        elif c.stage is Stage.S2:
            x = 2 - c.delta
        else:
            x = 1 - c.eps - c.delta
        if x < 0:
            raise InconsistentDatumError(f"center {c.index}: discrepancy {x} < 0")
        xs.append(x)
    return Discrepancies(tuple(xs))


# ---------------------------------------------------------------------------
# resolved lattice

C_TILDE = "C~"


def ebar(i: int) -> str:
    return f"Ebar{i}"


@dataclass(frozen=True)
class ResolvedSurface:
    """The blown-up lattice with named strict transforms.

    Base classes stand for their pullbacks.  ``Ebar{i}`` are the total
    transforms of the exceptional curves, ``F{i}`` (i <= s) and ``G{j}``
    (j = 1..r) their strict transforms, and ``C~`` the strict transform of
    the curve.  The classes are linearly dependent; the Gram matrix is
    computed from their expansions in pullbacks and Ē_i.
    """

    base: SurfaceModel
    datum: ResolutionDatum
    discrepancies: Discrepancies
    curve: Divisor
    model: SurfaceModel
    strict_names: tuple[str, ...]
    expansions: Mapping[str, Divisor] = field(repr=False)

    # names -------------------------------------------------------------
    def strict_name(self, i: int) -> str:
        return self.strict_names[i - 1]

    def indices(self, *stages: Stage) -> list[int]:
        return [c.index for c in self.datum.centers if c.stage in stages]

    def cycle(self, label: str) -> Cycle:
        """One of F', F'', F, G', G'', G, E', E'', E, G+F'', F+G."""
        groups = {
            "F'": (Stage.S1,),
            "F''": (Stage.S2,),
            "F": (Stage.S1, Stage.S2),
            "G'": (Stage.LATE1,),
            "G''": (Stage.LATE2,),
            "G": (Stage.LATE1, Stage.LATE2),
            "E'": (Stage.S1, Stage.LATE1),
            "E''": (Stage.S2, Stage.LATE2),
            "E": tuple(Stage),
        }
        groups["F+G"] = groups["E"]
        groups["G+F''"] = (Stage.S2, Stage.LATE1, Stage.LATE2)
        if label not in groups:
            raise InputError(f"unknown cycle {label!r}")
        return Cycle(tuple(self.strict_name(i) for i in self.indices(*groups[label])))

    # vectors -----------------------------------------------------------
    def expand(self, d: Divisor) -> Divisor:
        """Rewrite a divisor in pullbacks and Ē_i only."""
        out = Divisor()
        for name, coeff in d.items():
            out = out + self.expansions.get(name, Divisor.prime(name)) * coeff
        return out

    @property
    def c_tilde(self) -> Divisor:
        """π*C - Σ m_i Ē_i, in pullbacks and Ē_i."""
        return self.expansions[C_TILDE]

    @property
    def d_tilde(self) -> Divisor:
        """π*D - Σ δ_i Ē_i."""
        return self.base.boundary_divisor - Divisor(
            (ebar(c.index), c.delta) for c in self.datum.centers
        )

    def strict_vector(self, i: int) -> Divisor:
        return self.expansions[self.strict_name(i)]

    def ebar_in_strict(self, i: int) -> Divisor:
        """Ē_i as an effective sum of strict exceptional curves."""
        out = Divisor.prime(self.strict_name(i))
        for j in self.datum.proximate_to(i):
            out = out + self.ebar_in_strict(j)
        return out

    def cycle_sum(self, label: str) -> Divisor:
        return self.cycle(label).as_divisor()

    def pair(self, a: Divisor, b: Divisor) -> Fraction:
        return intersect(a, b, self.model)


def build_resolved_lattice(
    model: SurfaceModel, datum: ResolutionDatum, C: Divisor
) -> ResolvedSurface:
    model.check_divisor(C)
    x = derive_discrepancies(datum)
    n = len(datum)
    strict = [
        f"F{c.index}" if not c.stage.late else f"G{c.index - datum.s}" for c in datum.centers
    ]
    new_names = [ebar(i) for i in range(1, n + 1)] + strict + [C_TILDE]
    clash = set(new_names) & set(model.classes)
    if clash:
        raise InputError(f"class names reserved for the resolution are in use: {sorted(clash)}")

    expansions: dict[str, Divisor] = {}
    for i in range(1, n + 1):
        expansions[strict[i - 1]] = Divisor.prime(ebar(i)) - Divisor(
            (ebar(j), 1) for j in datum.proximate_to(i)
        )
    expansions[C_TILDE] = C - Divisor((ebar(c.index), c.m) for c in datum.centers)

    base = list(model.classes)
    classes = base + new_names
    vectors = [Divisor.prime(b) for b in base] + [Divisor.prime(e) for e in new_names[:n]]
    vectors += [expansions[name] for name in new_names[n:]]

    def pairing(u: Divisor, v: Divisor) -> Fraction:
        ub = Divisor((k, q) for k, q in u.items() if k in model)
        vb = Divisor((k, q) for k, q in v.items() if k in model)
        total = intersect(ub, vb, model)
        for k, q in u.items():
            if k not in model:
                total -= q * v.coefficient(k)
        return total

    gram = [[pairing(u, v) for v in vectors] for u in vectors]
    canonical = model.canonical + Divisor((ebar(i), 1) for i in range(1, n + 1))
    resolved_model = SurfaceModel(
        classes=tuple(classes),
        intersection=tuple(tuple(r) for r in gram),
        canonical=canonical,
        euler_top=model.euler_top + n,
        boundary={},
    )
    return ResolvedSurface(
        base=model,
        datum=datum,
        discrepancies=x,
        curve=C,
        model=resolved_model,
        strict_names=tuple(strict),
        expansions=expansions,
    )


# ---------------------------------------------------------------------------
# Euler numbers and adjunction


def euler_open_surface(model: SurfaceModel) -> Fraction:
    """e(X ∖ D) by additivity over the SNC boundary."""
    names = list(model.boundary)
    total = Fraction(model.euler_top)
    for name in names:
        genus = model.boundary.get(name)
        if genus is None:
            raise InputError(f"boundary component {name!r} has no genus")
        total -= 2 - 2 * genus
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            total += model.pairing(a, b)
    return total


def euler_open_curve(datum: ResolutionDatum, resolved: ResolvedSurface) -> Fraction:
    """e(C ∖ D) = 2 - 2g(C) - (E'' + D~)·C~."""
    e2 = resolved.expand(resolved.cycle_sum("E''"))
    return 2 - 2 * datum.genus_C - resolved.pair(e2 + resolved.d_tilde, resolved.c_tilde)


def e_prime_dot_c(resolved: ResolvedSurface) -> tuple[Fraction, Fraction]:
    """E'·C~ from the lattice and from Σ_{S1} m_i - Σ_{LATE1} m_j ε_j."""
    lattice = resolved.pair(resolved.expand(resolved.cycle_sum("E'")), resolved.c_tilde)
    d = resolved.datum
    formula = Fraction(
        sum(c.m for c in d.by_stage(Stage.S1)) - sum(c.m * c.eps for c in d.by_stage(Stage.LATE1))
    )
    return lattice, formula


@dataclass(frozen=True)
class AdjunctionReport:
    lhs: Fraction
    rhs: Fraction
    rhs_without_s2_term: Fraction
    e_curve: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def difference(self) -> Fraction:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        f = format_rational
        return {
            "lhs": f(self.lhs),
            "rhs": f(self.rhs),
            "rhs_without_s2_term": f(self.rhs_without_s2_term),
            "e_curve": f(self.e_curve),
            "difference": f(self.difference),
            "holds": self.holds,
        }


def adjunction_sums(datum: ResolutionDatum, x: Discrepancies) -> tuple[int, int]:
    """(Σ correction terms, Σ_{S2} m_i) of the singular adjunction formula."""
    total = 0
    s2 = 0
    for c in datum.centers:
        xi = x[c.index]
        if not c.stage.late:
            total += c.m * (c.m - xi + 1)
        else:
            total += c.m * (c.m - 1)
        if c.stage is Stage.LATE2:
            total += c.m * (c.eps + c.delta)
        if c.stage is Stage.S2:
            s2 += c.m
    return total, s2


def check_adjunction(
    model: SurfaceModel,
    datum: ResolutionDatum,
    C: Divisor,
    resolved: ResolvedSurface | None = None,
) -> AdjunctionReport:
    """Both sides of (K+D)·C + C² = -e(C∖D) - Σ_{S2} m_i + Σ corrections."""
    resolved = resolved or build_resolved_lattice(model, datum, C)
    lhs = intersect(model.log_canonical, C, model) + intersect(C, C, model)
    e_curve = euler_open_curve(datum, resolved)
    total, s2 = adjunction_sums(datum, resolved.discrepancies)
    return AdjunctionReport(
        lhs=lhs,
        rhs=-e_curve - s2 + total,
        rhs_without_s2_term=-e_curve + total,
        e_curve=e_curve,
    )
