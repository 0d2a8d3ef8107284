"""Lifting a decorated bicategory along a monoidal pre-cosheaf to a double
category, and the functoriality of the construction in the pre-cosheaf.

The lifted double category has c0 = the decoration, c1 = the extended total
category, and horizontal composition given by the horizontal composition of
the bicategory on 2-cells and by pasting payloads on pair squares sharing a
vertical side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .doublecat import DoubleCategory, DoubleFunctor, HKey, Square, decorated_horizontalization
from .errors import StructureError
from .fincat import FunctorData
from .grothendieck import ExtendedTotal, Precosheaf, constant_precosheaf, extended_total
from .twocat import DecoratedBicategory

__all__ = [
    "LiftData", "lift", "lift_data", "constant_precosheaf",
    "PrecosheafMap", "lift_functor", "square_triple",
]


@dataclass(frozen=True)
class LiftData:
    """A lifted double category together with its construction data.

    The objects of ``dc.c1`` are the 1-cells of the bicategory with their
    original identifiers, and squares ``0..n2-1`` are its 2-cells, so the
    horizontalization of ``dc`` is the input decorated bicategory on the
    nose; ``ext`` keeps the triple of each square.
    """

    dec: DecoratedBicategory
    phi: Precosheaf
    ext: ExtendedTotal
    dc: DoubleCategory


def lift_data(dec: DecoratedBicategory, phi: Precosheaf) -> LiftData:
    b = dec.bicat
    bstar = dec.decoration
    ext = extended_total(dec, phi)
    c1 = ext.cat

    src = FunctorData(
        c1, bstar,
        tuple(b.dom0[x] for x in range(b.n1)),
        tuple(t[0] for t in ext.triples),
    )
    tgt = FunctorData(
        c1, bstar,
        tuple(b.cod0[x] for x in range(b.n1)),
        tuple(t[1] for t in ext.triples),
    )
    hid_mor = []
    for f in range(bstar.n_morphisms):
        a, bb = bstar.dom[f], bstar.cod[f]
        hid_mor.append(ext.key_index[(f, b.id1[a], b.id2[b.id1[bb]])])
    hid = FunctorData(bstar, c1, tuple(b.id1), tuple(hid_mor))

    hcomp: dict[HKey, int] = {}
    for (x, y), z in b.hcomp1.items():
        hcomp[("ob", x, y)] = z
    n = c1.n_morphisms
    for p in range(n):
        fp, gp, pp = ext.triples[p]
        for q in range(n):
            fq, gq, pq = ext.triples[q]
            if gp != fq:
                continue
            if ext.pair_info[p] is None and ext.pair_info[q] is None:
                hcomp[("sq", p, q)] = b.hcomp2[(pp, pq)]
            elif ext.pair_info[p] is not None and ext.pair_info[q] is not None:
                # pair squares sharing their middle vertical side f
                top = b.hcomp1[(c1.dom[p], c1.dom[q])]
                hcomp[("sq", p, q)] = ext.key_index[(fp, top, b.hcomp2[(pp, pq)])]
            # a pair square and a bicategory 2-cell never share a side:
            # one side is a non-identity, the other an identity

    dc = DoubleCategory(bstar, c1, src, tgt, hid, hcomp)
    hstar = decorated_horizontalization(dc)
    if hstar != dec:
        raise StructureError("horizontalization-mismatch",
                             "lift does not restrict to its input decorated bicategory")
    return LiftData(dec, phi, ext, dc)


def lift(dec: DecoratedBicategory, phi: Precosheaf) -> DoubleCategory:
    return lift_data(dec, phi).dc


def square_triple(ld: LiftData, p: int) -> Square:
    """The (f, g, payload) presentation of square ``p`` of a lift."""
    f, g, payload = ld.ext.triples[p]
    bstar = ld.dec.decoration
    return Square(
        f, g, payload,
        ld.ext.cat.dom[p], ld.ext.cat.cod[p],
        bstar.is_identity(f), bstar.is_identity(g),
    )


# ---------------------------------------------------------------------------
# functoriality in the pre-cosheaf


@dataclass(frozen=True)
class PrecosheafMap:
    """A natural transformation between pre-cosheaves over the same
    decoration, with strict monoidal components."""

    phi: Precosheaf
    psi: Precosheaf
    comp1: tuple[Mapping[int, int], ...]  # per decoration object: endo 1-cell map
    comp2: tuple[Mapping[int, int], ...]  # per decoration object: 2-cell map

    def __post_init__(self):
        object.__setattr__(self, "comp1", tuple(dict(m) for m in self.comp1))
        object.__setattr__(self, "comp2", tuple(dict(m) for m in self.comp2))
        if self.phi.dec != self.psi.dec:
            raise StructureError("naturality", "pre-cosheaves over different decorations")
        dec = self.phi.dec
        b = dec.bicat
        bstar = dec.decoration
        if len(self.comp1) != bstar.n_objects or len(self.comp2) != bstar.n_objects:
            raise StructureError("component-shape", "one component per decoration object")
        for a in range(bstar.n_objects):
            endo = {x for x in range(b.n1) if b.is_endo_1cell(x) and b.dom0[x] == a}
            cells2 = {p for p in range(b.n2) if b.dom1[p] in endo}
            m1, m2 = self.comp1[a], self.comp2[a]
            if set(m1) != endo or not set(m1.values()) <= endo:
                raise StructureError("component-shape", f"1-cell component at object {a}")
            if set(m2) != cells2 or not set(m2.values()) <= cells2:
                raise StructureError("component-shape", f"2-cell component at object {a}")
            for p in cells2:
                if b.dom1[m2[p]] != m1[b.dom1[p]] or b.cod1[m2[p]] != m1[b.cod1[p]]:
                    raise StructureError("component-boundary", f"object {a}, 2-cell {p}")
            for x in endo:
                if m2[b.id2[x]] != b.id2[m1[x]]:
                    raise StructureError("component-identity", f"object {a}, 1-cell {x}")
            for (q, p) in b.vcomp:
                if q in m2 and p in m2 and m2[b.vcomp[(q, p)]] != b.vcomp[(m2[q], m2[p])]:
                    raise StructureError("component-composition", f"object {a}, ({q}, {p})")
            if m1[b.id1[a]] != b.id1[a]:
                raise StructureError("component-monoidal-unit", f"object {a}")
            for x in endo:
                for y in endo:
                    if m1[b.hcomp1[(x, y)]] != b.hcomp1[(m1[x], m1[y])]:
                        raise StructureError("component-monoidal", f"object {a}, 1-cells ({x}, {y})")
            for p in cells2:
                for q in cells2:
                    if m2[b.hcomp2[(p, q)]] != b.hcomp2[(m2[p], m2[q])]:
                        raise StructureError("component-monoidal", f"object {a}, 2-cells ({p}, {q})")
        # naturality: component(cod f) after phi_f = psi_f after component(dom f)
        for f in range(bstar.n_morphisms):
            a, bb = bstar.dom[f], bstar.cod[f]
            for x, v in self.phi.on_cells1[f].items():
                if self.comp1[bb][v] != self.psi.on_cells1[f][self.comp1[a][x]]:
                    raise StructureError("naturality", f"morphism {f}, 1-cell {x}")
            for p, v in self.phi.on_cells2[f].items():
                if self.comp2[bb][v] != self.psi.on_cells2[f][self.comp2[a][p]]:
                    raise StructureError("naturality", f"morphism {f}, 2-cell {p}")

    @staticmethod
    def identity(phi: Precosheaf) -> "PrecosheafMap":
        dec = phi.dec
        b = dec.bicat
        comp1, comp2 = [], []
        for a in range(dec.decoration.n_objects):
            endo = [x for x in range(b.n1) if b.is_endo_1cell(x) and b.dom0[x] == a]
            cells2 = [p for p in range(b.n2) if b.dom1[p] in set(endo)]
            comp1.append({x: x for x in endo})
            comp2.append({p: p for p in cells2})
        return PrecosheafMap(phi, phi, tuple(comp1), tuple(comp2))

    def compose(self, other: "PrecosheafMap") -> "PrecosheafMap":
        """self after other (vertical composition of transformations)."""
        if other.psi != self.phi:
            raise StructureError("composition-mismatch", "transformations do not line up")
        comp1 = tuple({x: self.comp1[a][v] for x, v in other.comp1[a].items()}
                      for a in range(len(self.comp1)))
        comp2 = tuple({p: self.comp2[a][v] for p, v in other.comp2[a].items()}
                      for a in range(len(self.comp2)))
        return PrecosheafMap(other.phi, self.psi, comp1, comp2)


def lift_functor(eta: PrecosheafMap) -> DoubleFunctor:
    """The double functor between lifts induced by a pre-cosheaf map.

    It is the identity on the decoration, on non-endo cells, and on the
    1-cell part only when the components fix all endo 1-cells.
    """
    src_ld = lift_data(eta.phi.dec, eta.phi)
    tgt_ld = lift_data(eta.psi.dec, eta.psi)
    dec = eta.phi.dec
    b = dec.bicat
    bstar = dec.decoration

    obj_map = []
    for x in range(b.n1):
        if b.is_endo_1cell(x):
            obj_map.append(eta.comp1[b.dom0[x]][x])
        else:
            obj_map.append(x)
    mor_map = []
    for j in range(src_ld.ext.cat.n_morphisms):
        info = src_ld.ext.pair_info[j]
        if info is None:
            p = j
            x = b.dom1[p]
            if b.is_endo_1cell(x):
                mor_map.append(eta.comp2[b.dom0[x]][p])
            else:
                mor_map.append(p)
        else:
            f, x, payload = info
            a, bb = bstar.dom[f], bstar.cod[f]
            mor_map.append(tgt_ld.ext.key_index[(f, eta.comp1[a][x], eta.comp2[bb][payload])])

    f0 = FunctorData.identity(bstar)
    f1 = FunctorData(src_ld.ext.cat, tgt_ld.ext.cat, tuple(obj_map), tuple(mor_map))
    df = DoubleFunctor(f0, f1)
    df.check(src_ld.dc, tgt_ld.dc)
    return df
