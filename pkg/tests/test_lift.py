import pytest

from doublelift.errors import StructureError
from doublelift.fincat import Monoid, MonoidAction, delooping, monoidal_delooping
from doublelift.grothendieck import precosheaf_from_action
from doublelift.lift import PrecosheafMap, lift, lift_data, lift_functor, square_triple
from doublelift.twocat import decorate, suspend


def _dec(n, m):
    return decorate(delooping(m), suspend(monoidal_delooping(n)))


def _phi(n, m, action):
    return precosheaf_from_action(_dec(n, m), action)


def test_every_corpus_fixture_lifts(corpus_lifts):
    assert len(corpus_lifts) >= 8
    for tag, ld in corpus_lifts:
        # construction already ran the axiom suite; spot check the shape
        assert ld.dc.c0 == ld.dec.decoration, tag
        assert ld.dc.c1.n_objects == ld.dec.bicat.n1, tag


def test_two_cells_keep_their_identifiers(corpus_lifts):
    for tag, ld in corpus_lifts:
        b = ld.dec.bicat
        for p in range(b.n2):
            f, g, payload = ld.ext.triples[p]
            assert payload == p, tag
            assert ld.dc.is_globular(p), tag
        for p in range(b.n2, ld.dc.c1.n_morphisms):
            assert not ld.dc.is_globular(p), tag


def test_interchange_payload_identity_directly(corpus_lifts):
    """The payload form of interchange, checked from the raw tables without
    going through the axiom suite: pasting then stacking equals stacking
    then pasting, with the twist applied to the lower payloads."""
    checked = 0
    for tag, ld in corpus_lifts:
        b = ld.dec.bicat
        ext, dc, phi = ld.ext, ld.dc, ld.phi
        n = dc.c1.n_morphisms
        for p in range(n):
            fp, gp, ap = ext.triples[p]
            for q in range(n):
                fq, gq, aq = ext.triples[q]
                if gp != fq:
                    continue
                for p2 in range(n):
                    fp2, gp2, ap2 = ext.triples[p2]
                    if fp2 != gp or dc.c1.dom[p2] != dc.c1.cod[p]:
                        continue
                    for q2 in range(n):
                        fq2, gq2, aq2 = ext.triples[q2]
                        if gp2 != fq2 or dc.c1.dom[q2] != dc.c1.cod[q]:
                            continue
                        big = dc.hsq(dc.c1.compose(p2, p), dc.c1.compose(q2, q))
                        lower = b.hcomp2[(ap, aq)]
                        upper = b.hcomp2[(ap2, aq2)]
                        if ld.dec.decoration.is_identity(fp2):
                            twisted = lower
                        else:
                            twisted = phi.on_cells2[fp2][lower]
                        want = b.vcomp[(upper, twisted)]
                        assert ext.triples[big][2] == want, (tag, p, q, p2, q2)
                        checked += 1
    assert checked > 0


def test_horizontal_identity_squares():
    z2, z3 = Monoid.cyclic(2), Monoid.cyclic(3)
    ld = lift_data(_dec(z3, z2), _phi(z3, z2, MonoidAction.inversion(z3)))
    bstar = ld.dec.decoration
    for f in range(bstar.n_morphisms):
        sq = square_triple(ld, ld.dc.hid.morphism_map[f])
        assert sq.f == f and sq.g == f
        assert sq.payload == ld.dec.bicat.id2[sq.top]


def test_square_triple_shape(corpus_lifts):
    for tag, ld in corpus_lifts:
        bstar = ld.dec.decoration
        for p in range(ld.dc.c1.n_morphisms):
            sq = square_triple(ld, p)
            assert sq.top == ld.dc.c1.dom[p], tag
            assert sq.bottom == ld.dc.c1.cod[p], tag
            assert sq.f_is_identity == bstar.is_identity(sq.f), tag
            if not sq.f_is_identity:
                assert sq.f == sq.g, tag


def test_identity_precosheaf_map_gives_the_identity_functor():
    z2, z3 = Monoid.cyclic(2), Monoid.cyclic(3)
    phi = _phi(z3, z2, MonoidAction.inversion(z3))
    eta = PrecosheafMap.identity(phi)
    df = lift_functor(eta)
    dc = lift(phi.dec, phi)
    assert df.f1.morphism_map == tuple(range(dc.c1.n_morphisms))
    assert eta.compose(eta).comp2 == eta.comp2


def test_collapse_map_between_different_actions():
    z2, z3 = Monoid.cyclic(2), Monoid.cyclic(3)
    phi = _phi(z3, z2, MonoidAction.inversion(z3))
    psi = _phi(z3, z2, MonoidAction.trivial(z2, z3))
    collapse = PrecosheafMap(
        phi, psi, ({0: 0},), ({0: 0, 1: 0, 2: 0},),
    )
    df = lift_functor(collapse)
    src_ld = lift_data(phi.dec, phi)
    tgt_ld = lift_data(psi.dec, psi)
    df.check(src_ld.dc, tgt_ld.dc)
    # all globular squares land on the identity 2-cell
    for p in range(3):
        assert df.f1.morphism_map[p] == 0


def test_nonnatural_component_is_rejected():
    z2, z3 = Monoid.cyclic(2), Monoid.cyclic(3)
    phi = _phi(z3, z2, MonoidAction.inversion(z3))
    psi = _phi(z3, z2, MonoidAction.trivial(z2, z3))
    with pytest.raises(StructureError, match="naturality"):
        PrecosheafMap(phi, psi, ({0: 0},), ({0: 0, 1: 1, 2: 2},))


def test_nonmonoidal_component_is_rejected():
    z2, z4 = Monoid.cyclic(2), Monoid.cyclic(4)
    phi = _phi(z4, z2, MonoidAction.trivial(z2, z4))
    with pytest.raises(StructureError, match="component-"):
        PrecosheafMap(phi, phi, ({0: 0},), ({0: 0, 1: 2, 2: 1, 3: 3},))


def test_composition_of_precosheaf_maps_checks_endpoints():
    z2, z3 = Monoid.cyclic(2), Monoid.cyclic(3)
    phi = _phi(z3, z2, MonoidAction.inversion(z3))
    psi = _phi(z3, z2, MonoidAction.trivial(z2, z3))
    collapse = PrecosheafMap(phi, psi, ({0: 0},), ({0: 0, 1: 0, 2: 0},))
    with pytest.raises(StructureError, match="composition-mismatch"):
        collapse.compose(collapse)
    after = PrecosheafMap.identity(psi).compose(collapse)
    assert after.comp2 == collapse.comp2
