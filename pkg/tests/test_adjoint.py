import pytest

from doublelift.adjoint import (
    check_triangle_identities,
    enumerate_precosheaf_maps,
    extract_phi,
    extracted_action,
    phi_of_double_functor,
    pi_functor,
)
from doublelift.doublecat import trivial_double_category
from doublelift.errors import StructureError
from doublelift.fincat import Monoid, MonoidAction, delooping, enumerate_actions, monoidal_delooping
from doublelift.grothendieck import precosheaf_from_action
from doublelift.lift import lift_data
from doublelift.twocat import decorate, suspend


def _lift(n, m, action):
    dec = decorate(delooping(m), suspend(monoidal_delooping(n)))
    return lift_data(dec, precosheaf_from_action(dec, action))


def test_extract_phi_round_trips_on_lifts():
    z2, z3, z4 = Monoid.cyclic(2), Monoid.cyclic(3), Monoid.cyclic(4)
    for n, m, act in [
        (z3, z2, MonoidAction.inversion(z3)),
        (z3, z2, MonoidAction.trivial(z2, z3)),
        (z4, z2, MonoidAction.inversion(z4)),
        (z3, z3, MonoidAction.trivial(z3, z3)),
    ]:
        ld = _lift(n, m, act)
        recovered = extract_phi(ld.dc)
        assert recovered.on_cells2 == ld.phi.on_cells2


def test_extracted_action_matches_the_input_action():
    z2, z3 = Monoid.cyclic(2), Monoid.cyclic(3)
    act = MonoidAction.inversion(z3)
    ld = _lift(z3, z2, act)
    back = extracted_action(ld.dc)
    assert back.maps == act.maps


def test_extract_phi_rejects_monoid_decorations():
    flag = Monoid.flag()
    z3 = Monoid.cyclic(3)
    ld = _lift(z3, flag, MonoidAction.trivial(flag, z3))
    with pytest.raises(StructureError, match="not-a-group"):
        extract_phi(ld.dc)


def test_extract_phi_rejects_multi_object_input():
    dc = trivial_double_category(delooping(Monoid.cyclic(2)))
    extract_phi(dc)  # single object, single 1-cell: fine
    from doublelift.fincat import FiniteCategory

    with pytest.raises(StructureError, match="shape-mismatch"):
        extract_phi(trivial_double_category(FiniteCategory.discrete(2)))


def test_pi_functor_on_a_lift_is_the_identity():
    z2, z4 = Monoid.cyclic(2), Monoid.cyclic(4)
    ld = _lift(z4, z2, MonoidAction.inversion(z4))
    pi = pi_functor(ld.dc)
    assert pi.f1.morphism_map == tuple(range(ld.dc.c1.n_morphisms))
    eta = phi_of_double_functor(pi, ld.dc, ld.dc)
    assert eta.comp2[0] == {x: x for x in range(4)}


def test_enumerate_precosheaf_maps_counts():
    z2, z3 = Monoid.cyclic(2), Monoid.cyclic(3)
    phi_inv = _lift(z3, z2, MonoidAction.inversion(z3)).phi
    phi_triv = _lift(z3, z2, MonoidAction.trivial(z2, z3)).phi
    # endomorphisms of Z3 commuting with inversion: all three of them
    assert len(enumerate_precosheaf_maps(phi_inv, phi_inv)) == 3
    # maps from the inversion action to the trivial one must collapse
    maps = enumerate_precosheaf_maps(phi_inv, phi_triv)
    assert len(maps) == 1
    assert maps[0].comp2[0] == {0: 0, 1: 0, 2: 0}


def test_triangle_identities_over_the_full_grid():
    for g in (Monoid.cyclic(2), Monoid.cyclic(3)):
        for a in (Monoid.cyclic(3), Monoid.cyclic(4)):
            actions = enumerate_actions(g, a)
            assert actions
            report = check_triangle_identities(g, a, actions)
            assert report.passed, (g.size, a.size, report.entries)
            names = [name for name, _, _ in report.entries]
            assert any(name.startswith("round-trip") for name in names)
            assert any(name.startswith("naturality") for name in names)


def test_triangle_checker_rejects_non_groups():
    with pytest.raises(StructureError, match="not-a-group"):
        check_triangle_identities(Monoid.flag(), Monoid.cyclic(3), [])
