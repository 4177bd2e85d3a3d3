from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _gen import plane_model, random_plane_datum
from logsurf.errors import InconsistentDatumError, InputError
from logsurf.lattice import Divisor, SurfaceModel, intersect, is_negative_definite
from logsurf.resolution import (
    C_TILDE,
    BlowupCenter,
    ResolutionDatum,
    Stage,
    build_resolved_lattice,
    check_adjunction,
    derive_discrepancies,
    e_prime_dot_c,
    ebar,
    euler_open_curve,
    euler_open_surface,
    make_datum,
)

P2 = SurfaceModel(classes=("H",), intersection=((1,),), canonical=Divisor({"H": -3}), euler_top=3)
NODE = [{"stage": "S1", "m": 2}]
TACNODE = [{"stage": "S1", "m": 2}, {"stage": "LATE1", "m": 2, "proximity": [1]}]
CUSP = [
    {"stage": "S1", "m": 2},
    {"stage": "LATE1", "m": 1, "proximity": [1]},
    {"stage": "LATE1", "m": 1, "proximity": [1, 2]},
]
TANGENT = [
    {"stage": "S2", "m": 1, "delta": 1},
    {"stage": "LATE2", "m": 1, "delta": 1, "proximity": [1]},
]


# -- discrepancies ------------------------------------------------------------


@pytest.mark.parametrize(
    "centers, x",
    [
        (NODE, (2,)),
        (TACNODE, (2, 1)),
        (CUSP, (2, 1, 0)),
        ([{"stage": "S2", "m": 1, "delta": 1}], (1,)),
        ([{"stage": "S2", "m": 1, "delta": 2}], (0,)),
        (TANGENT, (1, 0)),
    ],
)
def test_discrepancies(centers, x):
    datum = make_datum(centers, 0)
    assert derive_discrepancies(datum).x == x


def test_epsilon_is_derived_and_checked():
    datum = make_datum(CUSP, 0)
    assert [c.eps for c in datum.centers] == [0, 0, 1]
    with pytest.raises(InconsistentDatumError):
        BlowupCenter(index=2, stage=Stage.LATE1, m=1, proximity=frozenset({1}), epsilon=1)


def test_counts():
    datum = make_datum(CUSP + [], 0)
    assert (datum.s_prime, datum.s, datum.r_prime, datum.r) == (1, 1, 2, 2)


@pytest.mark.parametrize(
    "centers",
    [
        [{"stage": "S1", "m": 1}],
        [{"stage": "S1", "m": 2, "delta": 1}],
        [{"stage": "S2", "m": 1, "delta": 3}],
        [{"stage": "S2", "m": 0, "delta": 1}],
        [{"stage": "LATE1", "m": 1, "proximity": [1]}],
        [{"stage": "S2", "m": 1, "delta": 1}, {"stage": "S1", "m": 2}],
        [{"stage": "S1", "m": 2}, {"stage": "LATE1", "m": 3, "proximity": [1]}],
        [{"stage": "S1", "m": 2}, {"stage": "LATE1", "m": 1, "delta": 1, "proximity": [1]}],
        [{"stage": "S2", "m": 1, "delta": 1}, {"stage": "LATE1", "m": 1, "proximity": [1]}],
        [
            {"stage": "S2", "m": 2, "delta": 2},
            {"stage": "LATE2", "m": 1, "delta": 1, "proximity": [1]},
            {"stage": "LATE2", "m": 1, "delta": 1, "proximity": [1, 2]},
        ],
    ],
)
def test_invalid_data(centers):
    with pytest.raises(InputError):
        make_datum(centers, 0)


def test_bad_stage_name():
    with pytest.raises(InputError):
        make_datum([{"stage": "S3", "m": 2}], 0)


# -- resolved lattice -----------------------------------------------------------


def test_no_centers_keeps_lattice():
    C = Divisor({"H": 1})
    res = build_resolved_lattice(P2, make_datum([], 0), C)
    assert res.model.classes == ("H", C_TILDE)
    assert res.pair(res.c_tilde, res.c_tilde) == 1


def test_nodal_cubic_lattice():
    C = Divisor({"H": 3})
    res = build_resolved_lattice(P2, make_datum(NODE, 0), C)
    assert res.c_tilde == Divisor({"H": 3, "Ebar1": -2})
    assert res.pair(res.c_tilde, res.c_tilde) == 5
    assert intersect(Divisor.prime(C_TILDE), Divisor.prime(C_TILDE), res.model) == 5


def test_tacnodal_quartic_lattice():
    C = Divisor({"H": 4})
    res = build_resolved_lattice(P2, make_datum(TACNODE, 1), C)
    assert res.c_tilde == Divisor({"H": 4, "Ebar1": -2, "Ebar2": -2})
    assert res.strict_vector(1) == Divisor({"Ebar1": 1, "Ebar2": -1})
    assert res.cycle("F") .components == ("F1",)
    assert res.cycle("G").components == ("G1",)
    assert res.ebar_in_strict(1) == Divisor({"F1": 1, "G1": 1})


def test_reserved_names_clash():
    m = SurfaceModel(classes=("H", "Ebar1"), intersection=((1, 0), (0, -1)))
    with pytest.raises(InputError):
        build_resolved_lattice(m, make_datum(NODE, 0), Divisor({"H": 3}))


@given(st.randoms(use_true_random=False))
def test_lattice_relations(r):
    model, datum, C = random_plane_datum(r)
    res = build_resolved_lattice(model, datum, C)
    strict = res.cycle("E")
    assert is_negative_definite(strict, res.model)
    for c in datum.centers:
        E = Divisor.prime(ebar(c.index))
        assert res.pair(E, res.c_tilde) == c.m
        assert res.pair(E, E) == -1
        for b in model.classes:
            assert res.pair(Divisor.prime(b), E) == 0
    lattice, formula = e_prime_dot_c(res)
    assert lattice == formula


@given(st.randoms(use_true_random=False))
def test_discrepancy_invariants(r):
    _, datum, _ = random_plane_datum(r)
    x = derive_discrepancies(datum)
    for c in datum.centers:
        xi = x[c.index]
        assert xi >= 0
        if c.stage is Stage.S1:
            assert xi == 2
        elif c.stage is Stage.S2:
            assert xi <= 1
        else:
            assert xi + c.delta + c.eps == 1


# -- Euler numbers and adjunction ----------------------------------------------


def test_euler_open_surface_examples():
    assert euler_open_surface(P2) == 3
    assert euler_open_surface(plane_model((1, 2))) == 1
    assert euler_open_surface(plane_model((6, 6))) == 75


def test_euler_open_surface_needs_boundary_classes():
    with pytest.raises(InputError):
        SurfaceModel(classes=("H",), intersection=((1,),), boundary={"D": 0})


def test_euler_open_curve_examples():
    nodal = build_resolved_lattice(P2, make_datum(NODE, 0), Divisor({"H": 3}))
    assert euler_open_curve(nodal.datum, nodal) == 2
    quartic = plane_model((4,))
    line = build_resolved_lattice(quartic, make_datum([], 0), Divisor({"H": 1}))
    assert euler_open_curve(line.datum, line) == -2


@pytest.mark.parametrize(
    "model, centers, genus, C, both_sides",
    [
        (plane_model((4,)), [], 0, {"H": 2}, 6),
        (P2, NODE, 0, {"H": 3}, 0),
        (P2, TACNODE, 1, {"H": 4}, 4),
        (P2, CUSP, 0, {"H": 3}, 0),
    ],
)
def test_adjunction_fixtures(model, centers, genus, C, both_sides):
    rep = check_adjunction(model, make_datum(centers, genus), Divisor(C))
    assert rep.lhs == rep.rhs == both_sides


def test_adjunction_tangent_conic_needs_s2_term():
    rep = check_adjunction(plane_model((1,)), make_datum(TANGENT, 0), Divisor({"H": 2}))
    assert rep.holds and rep.lhs == 0
    assert rep.rhs_without_s2_term == 1


def test_adjunction_reports_wrong_genus():
    rep = check_adjunction(P2, make_datum(NODE, 1), Divisor({"H": 3}))
    assert not rep.holds and rep.difference == -2


@given(st.randoms(use_true_random=False))
def test_adjunction_on_random_plane_data(r):
    model, datum, C = random_plane_datum(r)
    assert check_adjunction(model, datum, C).holds


def test_datum_json_round_trip():
    datum = make_datum(CUSP, 0)
    again = make_datum(datum.to_json()["centers"], datum.to_json()["genus"])
    assert again == datum
    assert isinstance(datum, ResolutionDatum)
