"""Recovering a pre-cosheaf from a globularily generated double category of
vertical length one over a one-object group decoration, the comparison
functor from the lift of the recovered pre-cosheaf, and the triangle
identities making the two constructions adjoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .analysis import is_gg, vertical_length
from .doublecat import DoubleCategory, DoubleFunctor, decorated_horizontalization, globular_squares
from .errors import StructureError
from .fincat import FunctorData, Monoid, MonoidAction
from .grothendieck import Precosheaf
from .lift import LiftData, PrecosheafMap, lift_data, lift_functor


def _check_shape(c: DoubleCategory) -> None:
    if c.c0.n_objects != 1:
        raise StructureError("shape-mismatch", "decoration must have a single object")
    if c.c1.n_objects != 1:
        raise StructureError("shape-mismatch", "expected a single horizontal 1-cell")
    for g in range(c.c0.n_morphisms):
        if not any(c.c0.compose(h, g) == c.c0.identity[0] == c.c0.compose(g, h)
                   for h in range(c.c0.n_morphisms)):
            raise StructureError("not-a-group", f"vertical morphism {g} has no inverse")
    if not is_gg(c):
        raise StructureError("not-gg", "double category is not globularily generated")
    if vertical_length(c) != 1:
        raise StructureError("vertical-length", "vertical length must be 1")


def _c0_inverse(c: DoubleCategory, g: int) -> int:
    for h in range(c.c0.n_morphisms):
        if c.c0.compose(h, g) == c.c0.identity[0] == c.c0.compose(g, h):
            return h
    raise StructureError("not-a-group", f"vertical morphism {g}")


def extract_phi(c: DoubleCategory) -> Precosheaf:
    """Read off the pre-cosheaf of a length-one GG double category over a
    one-object group decoration.

    The action of a vertical morphism g on a globular square a is the
    vertical composite of i_{g^{-1}}, then a, then i_g, which is globular
    again because the sides cancel.
    """
    _check_shape(c)
    dec = decorated_horizontalization(c)
    glob = sorted(globular_squares(c))
    pos = {p: i for i, p in enumerate(glob)}
    on1, on2 = [], []
    for g in range(c.c0.n_morphisms):
        ig = c.hid.morphism_map[g]
        iginv = c.hid.morphism_map[_c0_inverse(c, g)]
        mapping = {}
        for p in glob:
            image = c.c1.compose(ig, c.c1.compose(p, iginv))
            if image not in pos:
                raise StructureError("conjugation-not-globular", f"({g}, {p})")
            mapping[pos[p]] = pos[image]
        on1.append({0: 0})
        on2.append(mapping)
    return Precosheaf(dec, tuple(on1), tuple(on2))


def extracted_action(c: DoubleCategory) -> MonoidAction:
    """The same data as extract_phi, as a monoid action of G on the
    globular monoid A."""
    phi = extract_phi(c)
    g = Monoid(
        tuple(tuple(c.c0.compose(x, y) for y in range(c.c0.n_morphisms))
              for x in range(c.c0.n_morphisms)),
        c.c0.identity[0],
    )
    b = phi.dec.bicat
    a = Monoid(
        tuple(tuple(b.vcomp[(x, y)] for y in range(b.n2)) for x in range(b.n2)),
        b.id2[0],
    )
    maps = tuple(tuple(phi.on_cells2[m][x] for x in range(a.size)) for m in range(g.size))
    return MonoidAction(g, a, maps)


def pi_functor(c: DoubleCategory) -> DoubleFunctor:
    """The comparison functor from the lift of the extracted pre-cosheaf
    back to c.  It is the identity on the decoration, sends the globular
    square with index i back to the i-th globular square of c, and sends a
    pair square (g, a) to the composite of that globular square with i_g.
    The result is checked to be a full double functor fixing the
    horizontalization."""
    phi = extract_phi(c)
    ld = lift_data(phi.dec, phi)
    glob = sorted(globular_squares(c))
    mor_map = []
    for j in range(ld.dc.c1.n_morphisms):
        info = ld.ext.pair_info[j]
        if info is None:
            mor_map.append(glob[j])
        else:
            g, _, payload = info
            mor_map.append(c.c1.compose(glob[payload], c.hid.morphism_map[g]))
    f0 = FunctorData.identity(c.c0)
    f1 = FunctorData(ld.dc.c1, c.c1, (0,), tuple(mor_map))
    df = DoubleFunctor(f0, f1)
    df.check(ld.dc, c)
    if set(f1.morphism_map) != set(range(c.c1.n_morphisms)):
        raise StructureError("pi-not-full", "comparison functor misses a square")
    return df


def phi_of_double_functor(f: DoubleFunctor, c: DoubleCategory, d: DoubleCategory) -> PrecosheafMap:
    """Restrict a double functor between internalizations of the same
    decorated bicategory to globular squares, giving a map of the extracted
    pre-cosheaves."""
    ident = tuple(range(c.c0.n_morphisms))
    if f.f0.object_map != (0,) or f.f0.morphism_map != ident:
        raise StructureError("base-not-identity", "double functor must fix the decoration")
    phi_c = extract_phi(c)
    phi_d = extract_phi(d)
    glob_c = sorted(globular_squares(c))
    glob_d = sorted(globular_squares(d))
    pos_d = {p: i for i, p in enumerate(glob_d)}
    comp2 = {}
    for i, p in enumerate(glob_c):
        image = f.f1.morphism_map[p]
        if image not in pos_d:
            raise StructureError("globular-not-preserved", f"square {p}")
        comp2[i] = pos_d[image]
    return PrecosheafMap(phi_c, phi_d, ({0: 0},), (comp2,))


def enumerate_precosheaf_maps(phi: Precosheaf, psi: Precosheaf) -> list[PrecosheafMap]:
    """All natural transformations between single-object pre-cosheaves, by
    brute force over monoid-endomorphism-shaped components."""
    b = phi.dec.bicat
    if phi.dec.decoration.n_objects != 1 or b.n1 != 1:
        raise StructureError("shape-mismatch", "enumeration needs the one-object shape")
    n2 = b.n2
    out = []
    for candidate in itertools.product(range(n2), repeat=n2):
        try:
            eta = PrecosheafMap(phi, psi, ({0: 0},), ({x: candidate[x] for x in range(n2)},))
        except StructureError:
            continue
        out.append(eta)
    return out


@dataclass(frozen=True)
class TriangleReport:
    entries: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)


def check_triangle_identities(g: Monoid, a: Monoid, actions: list[MonoidAction]) -> TriangleReport:
    """Verify both triangle laws and the naturality of the comparison
    functors over a family of actions of a group g on a commutative
    monoid a."""
    from .fincat import delooping, monoidal_delooping
    from .grothendieck import precosheaf_from_action
    from .twocat import decorate, suspend

    if not g.is_group():
        raise StructureError("not-a-group", "decorating monoid must be a group")
    dec = decorate(delooping(g), suspend(monoidal_delooping(a)))
    entries: list[tuple[str, bool, str]] = []
    lifts: list[tuple[MonoidAction, LiftData]] = []
    for i, action in enumerate(actions):
        phi = precosheaf_from_action(dec, action)
        ld = lift_data(dec, phi)
        lifts.append((action, ld))

        recovered = extract_phi(ld.dc)
        ok = recovered == phi
        entries.append((f"round-trip[{i}]", ok, "extract_phi(lift) == phi"))

        pi = pi_functor(ld.dc)
        ident1 = tuple(range(ld.dc.c1.n_morphisms))
        ok = pi.f1.morphism_map == ident1 and pi.f1.object_map == (0,)
        entries.append((f"pi-identity[{i}]", ok, "pi on a lift is the identity"))

        eta = phi_of_double_functor(pi, ld.dc, ld.dc)
        ident2 = {x: x for x in range(dec.bicat.n2)}
        ok = eta.comp2[0] == ident2
        entries.append((f"phi-of-pi-identity[{i}]", ok, "extracted map of pi is the identity"))

    # naturality of the comparison: every map of pre-cosheaves commutes with pi
    for i, (_, ld1) in enumerate(lifts):
        for j, (_, ld2) in enumerate(lifts):
            for k, eta in enumerate(enumerate_precosheaf_maps(ld1.phi, ld2.phi)):
                f = lift_functor(eta)
                pi1 = pi_functor(ld1.dc)
                pi2 = pi_functor(ld2.dc)
                lhs = f.compose(pi1)
                back = phi_of_double_functor(f, ld1.dc, ld2.dc)
                rhs = pi2.compose(lift_functor(back))
                ok = lhs.f1.morphism_map == rhs.f1.morphism_map
                entries.append((f"naturality[{i},{j},{k}]", ok,
                                "comparison commutes with lifted maps"))
    return TriangleReport(tuple(entries))
