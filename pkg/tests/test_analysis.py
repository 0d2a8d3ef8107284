import pytest

from doublelift.analysis import (
    Folding,
    SearchCertificate,
    find_cofolding,
    find_folding,
    framed_flag,
    gamma,
    gamma_data,
    gg_criterion_surjective,
    is_gg,
    reconstruct_single_object_lift,
    v1_membership,
    validate_folding,
    vertical_chain,
    vertical_length,
)
from doublelift.doublecat import trivial_double_category
from doublelift.errors import StructureError
from doublelift.fincat import Monoid, MonoidAction, delooping, monoidal_delooping
from doublelift.grothendieck import precosheaf_from_action
from doublelift.lift import lift_data
from doublelift.twocat import decorate, suspend


def _lift(n, m, action):
    dec = decorate(delooping(m), suspend(monoidal_delooping(n)))
    return lift_data(dec, precosheaf_from_action(dec, action))


def test_gamma_is_idempotent(corpus_lifts):
    for tag, ld in corpus_lifts:
        g = gamma(ld.dc)
        assert gamma(g) == g, tag


def test_gamma_contains_globulars_and_identities(corpus_lifts):
    for tag, ld in corpus_lifts:
        gd = gamma_data(ld.dc)
        kept = set(gd.square_ids)
        for p in range(ld.dc.c1.n_morphisms):
            if ld.dc.is_globular(p):
                assert p in kept, tag
        for p in ld.dc.hid.morphism_map:
            assert p in kept, tag


def test_gg_status_of_the_corpus(corpus_lifts):
    status = {tag: is_gg(ld.dc) for tag, ld in corpus_lifts}
    assert status["semidirect:z3:z2:inv"]
    assert status["constant:flag:z3"]
    assert status["identity:flag:z3"]
    # a non-trivially graded lift has squares at degrees no pasting of
    # globular and identity squares can reach
    assert not status["graded:z2:z3:inv"]
    assert not status["graded:z2:z4:inv"]


def test_vertical_chain_is_monotone_and_stabilizes(corpus_lifts):
    for tag, ld in corpus_lifts:
        chain = vertical_chain(ld.dc)
        assert chain.stabilization_index == len(chain.levels), tag
        for k in range(1, len(chain.level_squares)):
            assert set(chain.level_squares[k - 1]) < set(chain.level_squares[k]), tag


def test_vertical_length_is_one_everywhere(corpus_lifts):
    for tag, ld in corpus_lifts:
        assert vertical_length(ld.dc) == 1, tag


def test_vertical_length_of_a_trivial_double_category():
    dc = trivial_double_category(delooping(Monoid.cyclic(3)))
    assert vertical_length(dc) == 1
    assert is_gg(dc)


def test_v1_membership_agrees_with_the_chain(corpus_lifts):
    for tag, ld in corpus_lifts:
        chain = vertical_chain(ld.dc)
        gd = gamma_data(ld.dc)
        v1 = {gd.square_ids[p] for p in chain.level_squares[0]}
        for p in range(ld.dc.c1.n_morphisms):
            if ld.ext.pair_info[p] is None:
                continue
            member, witness = v1_membership(ld, p)
            assert member == (p in v1), (tag, p)
            if member:
                psi, eta = witness
                i_f = ld.dc.hid.morphism_map[ld.ext.pair_info[p][0]]
                composite = ld.dc.c1.compose(
                    eta, ld.dc.c1.compose(i_f, psi))
                assert composite == p, (tag, p)


def test_v1_membership_rejects_globular_input():
    ld = _lift(Monoid.cyclic(3), Monoid.cyclic(2), MonoidAction.inversion(Monoid.cyclic(3)))
    with pytest.raises(StructureError, match="not-a-pair-square"):
        v1_membership(ld, 0)


def test_folding_absent_for_the_inversion_action():
    z3, z2 = Monoid.cyclic(3), Monoid.cyclic(2)
    ld = _lift(z3, z2, MonoidAction.inversion(z3))
    result = find_folding(ld)
    assert isinstance(result, SearchCertificate)
    assert result.exhausted and not result.inconclusive
    assert framed_flag(ld) is False


def test_folding_present_for_the_trivial_action():
    z3, z2 = Monoid.cyclic(3), Monoid.cyclic(2)
    ld = _lift(z3, z2, MonoidAction.trivial(z2, z3))
    fold = find_folding(ld)
    assert isinstance(fold, Folding)
    validate_folding(ld, fold)
    cofold = find_cofolding(ld)
    assert isinstance(cofold, Folding) and cofold.cofolding
    assert framed_flag(ld) is True


def test_validate_folding_rejects_a_broken_family():
    z3, z2 = Monoid.cyclic(3), Monoid.cyclic(2)
    ld = _lift(z3, z2, MonoidAction.trivial(z2, z3))
    ident = (0, 1, 2)
    with pytest.raises(StructureError, match="folding-vertical"):
        validate_folding(ld, Folding((ident, (0, 2, 1))))
    with pytest.raises(StructureError, match="folding-identity"):
        validate_folding(ld, Folding(((0, 2, 1), ident)))
    with pytest.raises(StructureError, match="folding-bijectivity|folding-horizontal"):
        validate_folding(ld, Folding((ident, (0, 0, 0))))


def test_search_limit_can_force_an_inconclusive_certificate(monkeypatch):
    z3, z2 = Monoid.cyclic(3), Monoid.cyclic(2)
    ld = _lift(z3, z2, MonoidAction.inversion(z3))
    monkeypatch.setenv("DOUBLELIFT_SEARCH_LIMIT", "1")
    result = find_folding(ld)
    assert isinstance(result, SearchCertificate)
    assert result.inconclusive
    assert result.limit == 1
    assert framed_flag(ld) is None


def test_reconstruction_round_trip():
    z4, z2 = Monoid.cyclic(4), Monoid.cyclic(2)
    ld = _lift(z4, z2, MonoidAction.inversion(z4))
    back = reconstruct_single_object_lift(ld.dc)
    assert back.phi.on_cells2 == ld.phi.on_cells2
    assert back.dc.hcomp == ld.dc.hcomp


def test_reconstruction_rejects_multi_object_input():
    dc = trivial_double_category(delooping(Monoid.cyclic(2)))
    reconstruct_single_object_lift(dc)  # one object, fine
    from doublelift.fincat import FiniteCategory

    with pytest.raises(StructureError, match="shape-mismatch"):
        reconstruct_single_object_lift(trivial_double_category(FiniteCategory.discrete(2)))


def test_surjectivity_criterion_implies_gg(corpus_lifts):
    applied = 0
    for tag, ld in corpus_lifts:
        b = ld.dec.bicat
        if ld.dec.decoration.n_objects != 1 or b.n0 != 1 or b.n1 != 1:
            with pytest.raises(StructureError, match="shape-mismatch"):
                gg_criterion_surjective(ld.phi)
            continue
        applied += 1
        if gg_criterion_surjective(ld.phi):
            assert is_gg(ld.dc), tag
    assert applied >= 5
