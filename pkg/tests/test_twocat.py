import pytest

from doublelift.errors import StructureError
from doublelift.fincat import FiniteCategory, Monoid, delooping, monoidal_delooping
from doublelift.twocat import (
    DecoratedBicategory,
    StrictBicategory,
    decorate,
    split_cells,
    suspend,
)


def test_suspension_of_a_monoidal_delooping():
    z3 = Monoid.cyclic(3)
    b = suspend(monoidal_delooping(z3))
    assert b.n0 == 1 and b.n1 == 1 and b.n2 == 3
    assert b.id1 == (0,) and b.id2 == (0,)
    assert b.vcomp[(1, 2)] == 0
    assert b.hcomp2[(1, 1)] == 2
    assert b.is_endo_1cell(0)
    assert b.cells2_between(0, 0) == [0, 1, 2]


def test_interchange_violation_is_caught():
    z2 = Monoid.cyclic(2)
    d = monoidal_delooping(z2)
    b = suspend(d)
    bad = dict(b.hcomp2)
    bad[(1, 1)] = 1  # should be 0
    with pytest.raises(StructureError, match="horizontal-|interchange"):
        StrictBicategory(b.n0, b.dom0, b.cod0, b.dom1, b.cod1, b.id1, b.id2,
                         b.vcomp, b.hcomp1, bad)


def test_vertical_totality_violation_is_caught():
    z2 = Monoid.cyclic(2)
    b = suspend(monoidal_delooping(z2))
    partial = {k: v for k, v in b.vcomp.items() if k != (1, 1)}
    with pytest.raises(StructureError, match="vertical-totality"):
        StrictBicategory(b.n0, b.dom0, b.cod0, b.dom1, b.cod1, b.id1, b.id2,
                         partial, b.hcomp1, b.hcomp2)


def test_identity_boundary_violation():
    # id1 of the first 0-cell points at a 1-cell sitting on the second
    with pytest.raises(StructureError, match="identity-boundary"):
        StrictBicategory(
            2, (0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (0, 1),
            {(0, 0): 0, (1, 1): 1},
            {(0, 0): 0, (1, 1): 1},
            {(0, 0): 0, (1, 1): 1},
        )


def test_decoration_must_share_objects():
    z2 = Monoid.cyclic(2)
    b = suspend(monoidal_delooping(z2))
    with pytest.raises(StructureError, match="decoration-mismatch"):
        decorate(FiniteCategory.discrete(2), b)
    dec = decorate(delooping(z2), b)
    assert isinstance(dec, DecoratedBicategory)


def test_split_cells_on_a_suspension_is_all_endo():
    z3 = Monoid.cyclic(3)
    b = suspend(monoidal_delooping(z3))
    split = split_cells(b)
    assert split.endo_objects == (0,)
    assert split.endo_morphisms == (0, 1, 2)
    assert split.rest_objects == ()
    assert split.rest_part.n_objects == 0
    assert split.endo_part.compose(1, 2) == 0


def test_split_cells_with_a_non_endo_1cell():
    from doublelift.examples import build_two_object_fixture

    b = build_two_object_fixture().dec.bicat
    split = split_cells(b)
    assert split.endo_objects == (0, 1)
    assert split.rest_objects == (2,)
    assert split.rest_morphisms == (3,)
    assert split.endo_part.n_morphisms == 3
