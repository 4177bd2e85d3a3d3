"""Random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from pathlib import Path

from logsurf.bmy import chain_validators, chern_data, curve_invariants, reduction_data
from logsurf.errors import InconsistentDatumError
from logsurf.lattice import Cycle, Divisor, SurfaceModel, is_negative_definite
from logsurf.resolution import BlowupCenter, ResolutionDatum, Stage, build_resolved_lattice
from logsurf.scenario import load


def random_lattice(rng: random.Random, max_classes: int = 6) -> SurfaceModel:
    """Symmetric matrix with diagonal in -3..3 and off-diagonal in 0..3.

    Off-diagonal entries are nonnegative because distinct prime curves
    meet nonnegatively.
    """
    n = rng.randint(1, max_classes)
    names = tuple(f"C{i}" for i in range(n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.randint(-3, 3)
        for j in range(i + 1, n):
            v = rng.choice((0, 0, 0, 1, 1, 2, 3))
            rows[i][j] = rows[j][i] = v
    return SurfaceModel(classes=names, intersection=tuple(map(tuple, rows)))


def random_effective(rng: random.Random, names, density: float = 0.7) -> Divisor:
    return Divisor(
        (n, Fraction(rng.randint(0, 6), rng.choice((1, 1, 2, 3))))
        for n in names
        if rng.random() < density
    )


def random_negative_cycle(rng: random.Random, model: SurfaceModel, tries: int = 20) -> Cycle | None:
    names = list(model.classes)
    for _ in range(tries):
        k = rng.randint(1, len(names))
        picked = tuple(sorted(rng.sample(names, k), key=model.index))
        cyc = Cycle(picked)
        if is_negative_definite(cyc, model):
            return cyc
    return None


def zariski_case(rng: random.Random, max_classes: int = 6):
    """(model, D, E) with E negative definite; retries until one is found."""
    while True:
        model = random_lattice(rng, max_classes)
        E = random_negative_cycle(rng, model)
        if E is None:
            continue
        D = random_effective(rng, model.classes)
        if not D:
            continue
        return model, D, E


# ---------------------------------------------------------------------------
# resolution data


def random_centers(rng: random.Random) -> list[BlowupCenter] | None:
    """A random sequence of centers obeying the proximity rules, or None."""
    specs: list[dict] = []
    for _ in range(rng.randint(0, 2)):
        specs.append(dict(stage=Stage.S1, m=rng.randint(2, 4), delta=0, prox=()))
    for _ in range(rng.randint(0, 2)):
        specs.append(dict(stage=Stage.S2, m=rng.randint(1, 3), delta=rng.choice((1, 2)), prox=()))
    for stage in (Stage.LATE1, Stage.LATE2):
        for _ in range(rng.randint(0, 3)):
            pool = [i for i, s in enumerate(specs, start=1) if s["stage"].over_s1 == stage.over_s1]
            if not pool:
                break
            p = rng.choice(pool)
            prox = [p]
            later = [j for j in pool if j > p and p in specs[j - 1]["prox"]]
            if later and rng.random() < 0.4:
                prox.append(rng.choice(later))
            room_m = min(
                specs[i - 1]["m"] - sum(s["m"] for s in specs if i in s["prox"]) for i in prox
            )
            if room_m < 1:
                continue
            delta = 0
            if stage is Stage.LATE2 and len(prox) == 1:
                room_d = specs[p - 1]["delta"] - sum(s["delta"] for s in specs if p in s["prox"])
                delta = rng.randint(0, min(1, room_d))
            specs.append(dict(stage=stage, m=rng.randint(1, room_m), delta=delta, prox=tuple(prox)))
    centers = [
        BlowupCenter(index=i, stage=s["stage"], m=s["m"], delta=s["delta"], proximity=frozenset(s["prox"]))
        for i, s in enumerate(specs, start=1)
    ]
    return centers


def plane_model(boundary_degrees: tuple[int, ...]) -> SurfaceModel:
    """ℙ² with boundary curves of the given degrees, all smooth."""
    names = ("H",) + tuple(f"D{i + 1}" for i in range(len(boundary_degrees)))
    degs = (1,) + tuple(boundary_degrees)
    rows = tuple(tuple(a * b for b in degs) for a in degs)
    boundary = {f"D{i + 1}": (d - 1) * (d - 2) // 2 for i, d in enumerate(boundary_degrees)}
    return SurfaceModel(
        classes=names, intersection=rows, canonical=Divisor({"H": -3}), euler_top=3, boundary=boundary
    )


def noether_genus(d: int, centers) -> int:
    """Arithmetic genus minus the delta invariants of all infinitely near points."""
    return (d - 1) * (d - 2) // 2 - sum(c.m * (c.m - 1) // 2 for c in centers)


def random_plane_datum(rng: random.Random, attempts: int = 200):
    """(model, datum, C) for a plane curve with a consistent resolution."""
    for _ in range(attempts):
        centers = random_centers(rng)
        two = any(c.delta == 2 for c in centers)
        degrees = (rng.randint(1, 4), rng.randint(1, 4)) if two or rng.random() < 0.3 else (rng.randint(1, 5),)
        d = rng.randint(2, 9)
        g = noether_genus(d, centers)
        if g < 0:
            continue
        datum = ResolutionDatum(tuple(centers), g)
        try:
            datum.validate()
        except InconsistentDatumError:
            continue
        model = plane_model(degrees)
        D_dot_C = sum(degrees) * d
        if D_dot_C < sum(c.delta * c.m for c in centers):
            continue
        return model, datum, Divisor({"H": d})
    raise RuntimeError("no consistent datum found")


SCENARIO_DIR = Path(__file__).resolve().parents[1] / "scenarios"
KAPPA_FIXTURES = ("p2_quartic_line", "p2_two_sextics_line", "quartic_nodal_cubic", "quartic_tangent_line")
CURVE_FIXTURES = KAPPA_FIXTURES + ("nodal_cubic", "tacnodal_quartic", "conic_tangent_line", "smooth_transverse")


def scenario(name: str):
    return load(SCENARIO_DIR / f"{name}.json")


def bmy_pipeline(name: str, alpha):
    """Everything chain_validators needs for a fixture, at one α."""
    scn = scenario(name)
    model, datum, C = scn.require_curve()
    resolved = build_resolved_lattice(model, datum, C)
    inv = curve_invariants(model, datum, C, resolved)
    chern = chern_data(model, datum, C, alpha, resolved)
    red = reduction_data(
        resolved, chern, representative=scn.kd_representative, kappa_asserted=scn.asserts("kappa_nonneg")
    )
    return inv, resolved, chern, red, chain_validators(inv, resolved, chern, red)
