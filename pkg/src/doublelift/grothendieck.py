"""The Grothendieck construction for monoidal pre-cosheaves on a decoration,
and its extension by the non-endo cells of the bicategory.

A pre-cosheaf assigns to each 0-cell ``a`` the endomorphism category
End_B(a) (this is forced, so we store no fiber data) and to each decoration
morphism ``f: a -> b`` a strict monoidal functor End_B(a) -> End_B(b),
recorded directly as maps on the bicategory's 1- and 2-cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import StructureError
from .fincat import FiniteCategory, FunctorData, MonoidAction, end_data
from .twocat import DecoratedBicategory, split_cells


@dataclass(frozen=True)
class Precosheaf:
    dec: DecoratedBicategory
    on_cells1: tuple[Mapping[int, int], ...]
    on_cells2: tuple[Mapping[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "on_cells1", tuple(dict(m) for m in self.on_cells1))
        object.__setattr__(self, "on_cells2", tuple(dict(m) for m in self.on_cells2))
        self._validate()

    def _validate(self):
        dec, b = self.dec, self.dec.bicat
        bstar = dec.decoration
        if len(self.on_cells1) != bstar.n_morphisms or len(self.on_cells2) != bstar.n_morphisms:
            raise StructureError("action-shape", "one action per decoration morphism required")
        endo_at = [
            {x for x in range(b.n1) if b.is_endo_1cell(x) and b.dom0[x] == a}
            for a in range(b.n0)
        ]
        cells2_at = [
            {p for p in range(b.n2) if b.dom1[p] in endo_at[a]} for a in range(b.n0)
        ]
        for f in range(bstar.n_morphisms):
            a, bb = bstar.dom[f], bstar.cod[f]
            m1, m2 = self.on_cells1[f], self.on_cells2[f]
            if set(m1) != endo_at[a] or not set(m1.values()) <= endo_at[bb]:
                raise StructureError("action-domain", f"1-cell map of morphism {f}")
            if set(m2) != cells2_at[a] or not set(m2.values()) <= cells2_at[bb]:
                raise StructureError("action-domain", f"2-cell map of morphism {f}")
            for p in cells2_at[a]:
                if b.dom1[m2[p]] != m1[b.dom1[p]] or b.cod1[m2[p]] != m1[b.cod1[p]]:
                    raise StructureError("action-boundary", f"morphism {f}, 2-cell {p}")
            for x in endo_at[a]:
                if m2[b.id2[x]] != b.id2[m1[x]]:
                    raise StructureError("action-identity", f"morphism {f}, 1-cell {x}")
            for (q, p) in b.vcomp:
                if q in m2 and p in m2:
                    if m2[b.vcomp[(q, p)]] != b.vcomp[(m2[q], m2[p])]:
                        raise StructureError("action-composition", f"morphism {f}, ({q}, {p})")
            # strict monoidality
            if m1[b.id1[a]] != b.id1[bb]:
                raise StructureError("action-monoidal-unit", f"morphism {f}")
            for x in endo_at[a]:
                for y in endo_at[a]:
                    if m1[b.hcomp1[(x, y)]] != b.hcomp1[(m1[x], m1[y])]:
                        raise StructureError("action-monoidal", f"morphism {f}, 1-cells ({x}, {y})")
            for p in cells2_at[a]:
                for q in cells2_at[a]:
                    if m2[b.hcomp2[(p, q)]] != b.hcomp2[(m2[p], m2[q])]:
                        raise StructureError("action-monoidal", f"morphism {f}, 2-cells ({p}, {q})")
        # functoriality of the whole family
        for a in range(bstar.n_objects):
            i = bstar.identity[a]
            if self.on_cells1[i] != {x: x for x in endo_at[a]} or \
               self.on_cells2[i] != {p: p for p in cells2_at[a]}:
                raise StructureError("precosheaf-identity", f"object {a}")
        for (g, f), h in bstar.composition.items():
            comp1 = {x: self.on_cells1[g][v] for x, v in self.on_cells1[f].items()}
            comp2 = {p: self.on_cells2[g][v] for p, v in self.on_cells2[f].items()}
            if self.on_cells1[h] != comp1 or self.on_cells2[h] != comp2:
                raise StructureError("precosheaf-functoriality", f"({g}, {f})")

    # -- public accessors ----------------------------------------------------

    def at(self, a: int):
        """The fiber over object ``a``: End_B(a) as a strict monoidal category."""
        return end_data(self.dec.bicat, a).cat

    def action(self, f: int) -> FunctorData:
        """The strict monoidal functor at decoration morphism ``f``, in the
        dense indexing of the two end categories."""
        bstar = self.dec.decoration
        src = end_data(self.dec.bicat, bstar.dom[f])
        tgt = end_data(self.dec.bicat, bstar.cod[f])
        pos1 = {x: i for i, x in enumerate(tgt.objects_as_cells1)}
        pos2 = {p: i for i, p in enumerate(tgt.morphisms_as_cells2)}
        omap = tuple(pos1[self.on_cells1[f][x]] for x in src.objects_as_cells1)
        mmap = tuple(pos2[self.on_cells2[f][p]] for p in src.morphisms_as_cells2)
        return FunctorData(src.cat.base, tgt.cat.base, omap, mmap)


def precosheaf_from_action(dec: DecoratedBicategory, action: MonoidAction) -> Precosheaf:
    """Pre-cosheaf over a single-object decoration (Omega M, 2 Omega N),
    where the action is a family of monoid endomorphisms of N."""
    b = dec.bicat
    bstar = dec.decoration
    if bstar.n_objects != 1 or b.n0 != 1 or b.n1 != 1:
        raise StructureError("shape-mismatch", "expected a delooping-shaped decorated bicategory")
    if bstar.n_morphisms != action.acting.size or b.n2 != action.target.size:
        raise StructureError("shape-mismatch", "action does not match the decoration")
    on1 = tuple({0: 0} for _ in range(bstar.n_morphisms))
    on2 = tuple({x: action.maps[m][x] for x in range(b.n2)} for m in range(bstar.n_morphisms))
    return Precosheaf(dec, on1, on2)


def identity_precosheaf(dec: DecoratedBicategory) -> Precosheaf:
    """All actions the identity. Only well-typed when every decoration
    morphism is an endomorphism."""
    b = dec.bicat
    bstar = dec.decoration
    on1, on2 = [], []
    for f in range(bstar.n_morphisms):
        a, bb = bstar.dom[f], bstar.cod[f]
        if a != bb:
            raise StructureError("shape-mismatch",
                                 f"morphism {f} is not an endomorphism; no identity action")
        endo = [x for x in range(b.n1) if b.is_endo_1cell(x) and b.dom0[x] == a]
        cells2 = [p for p in range(b.n2) if b.dom1[p] in set(endo)]
        on1.append({x: x for x in endo})
        on2.append({p: p for p in cells2})
    return Precosheaf(dec, tuple(on1), tuple(on2))


def constant_precosheaf(dec: DecoratedBicategory) -> Precosheaf:
    """Collapse every non-identity action to the monoidal unit.

    This is only functorial when no composite of non-identity decoration
    morphisms is an identity; validation rejects decorations (e.g. by a
    non-trivial group) where that fails.
    """
    b = dec.bicat
    bstar = dec.decoration
    on1, on2 = [], []
    for f in range(bstar.n_morphisms):
        a, bb = bstar.dom[f], bstar.cod[f]
        endo = [x for x in range(b.n1) if b.is_endo_1cell(x) and b.dom0[x] == a]
        cells2 = [p for p in range(b.n2) if b.dom1[p] in set(endo)]
        if bstar.is_identity(f):
            on1.append({x: x for x in endo})
            on2.append({p: p for p in cells2})
        else:
            on1.append({x: b.id1[bb] for x in endo})
            on2.append({p: b.id2[b.id1[bb]] for p in cells2})
    return Precosheaf(dec, tuple(on1), tuple(on2))


# ---------------------------------------------------------------------------
# total categories


@dataclass(frozen=True)
class TotalCategory:
    """The Grothendieck total category: objects are pairs (x, a) and
    morphisms are pairs (alpha, beta) with beta: Phi_alpha(a) -> a'."""

    cat: FiniteCategory
    object_pairs: tuple[tuple[int, int], ...]          # (decoration object, 1-cell)
    morphism_pairs: tuple[tuple[int, int, int], ...]   # (decoration morphism, dom 1-cell, payload 2-cell)


def total_category(phi: Precosheaf) -> TotalCategory:
    dec, b = phi.dec, phi.dec.bicat
    bstar = dec.decoration
    objects = [
        (a, x)
        for a in range(bstar.n_objects)
        for x in range(b.n1)
        if b.is_endo_1cell(x) and b.dom0[x] == a
    ]
    obj_pos = {pair: i for i, pair in enumerate(objects)}
    morphisms: list[tuple[int, int, int]] = []
    for f in range(bstar.n_morphisms):
        for (a, x) in objects:
            if a != bstar.dom[f]:
                continue
            fx = phi.on_cells1[f][x]
            for p in range(b.n2):
                if b.dom1[p] == fx:
                    morphisms.append((f, x, p))
    mor_pos = {t: i for i, t in enumerate(morphisms)}
    dom = tuple(obj_pos[(bstar.dom[f], x)] for (f, x, p) in morphisms)
    cod = tuple(obj_pos[(bstar.cod[f], b.cod1[p])] for (f, x, p) in morphisms)
    identity = tuple(mor_pos[(bstar.identity[a], x, b.id2[x])] for (a, x) in objects)
    comp: dict[tuple[int, int], int] = {}
    for qi, (fq, xq, pq) in enumerate(morphisms):
        for pi, (fp, xp, pp) in enumerate(morphisms):
            if dom[qi] != cod[pi]:
                continue
            fc = bstar.compose(fq, fp)
            payload = b.vcomp[(pq, phi.on_cells2[fq][pp])]
            comp[(qi, pi)] = mor_pos[(fc, xp, payload)]
    cat = FiniteCategory(len(objects), dom, cod, identity, comp)
    return TotalCategory(cat, tuple(objects), tuple(morphisms))


@dataclass(frozen=True)
class ExtendedTotal:
    """The disjoint union of the total category and the non-endo cells,
    with objects identified with the 1-cells of the bicategory.

    Morphism ``j`` for ``j < n2`` is the 2-cell ``j`` of the bicategory;
    higher identifiers are the pair morphisms (f, alpha, payload) with f a
    non-identity decoration morphism.  ``triples[j]`` is the (f, g, payload)
    triple of each morphism, plus its boundary 1-cells.
    """

    cat: FiniteCategory
    triples: tuple[tuple[int, int, int], ...]   # (left side f, right side g, payload 2-cell)
    pair_info: tuple[Optional[tuple[int, int, int]], ...]  # (f, dom 1-cell, payload) for pair morphisms
    key_index: Mapping[tuple[int, int, int], int] = field(compare=False, default_factory=dict)


def extended_total(dec: DecoratedBicategory, phi: Precosheaf) -> ExtendedTotal:
    if phi.dec != dec:
        raise StructureError("fiber-constraint", "pre-cosheaf is not attached to this decoration")
    b = dec.bicat
    bstar = dec.decoration

    dom: list[int] = []
    cod: list[int] = []
    triples: list[tuple[int, int, int]] = []
    pair_info: list[Optional[tuple[int, int, int]]] = []
    key_index: dict[tuple[int, int, int], int] = {}

    for p in range(b.n2):
        f = bstar.identity[b.dom0[b.dom1[p]]]
        g = bstar.identity[b.cod0[b.dom1[p]]]
        dom.append(b.dom1[p])
        cod.append(b.cod1[p])
        triples.append((f, g, p))
        pair_info.append(None)
        key_index[(f, b.dom1[p], p)] = p

    for f in range(bstar.n_morphisms):
        if bstar.is_identity(f):
            continue
        a = bstar.dom[f]
        for x in range(b.n1):
            if not (b.is_endo_1cell(x) and b.dom0[x] == a):
                continue
            fx = phi.on_cells1[f][x]
            for p in range(b.n2):
                if b.dom1[p] != fx:
                    continue
                idx = len(dom)
                dom.append(x)
                cod.append(b.cod1[p])
                triples.append((f, f, p))
                pair_info.append((f, x, p))
                key_index[(f, x, p)] = idx

    identity = tuple(b.id2[x] for x in range(b.n1))
    comp: dict[tuple[int, int], int] = {}
    n = len(dom)
    for q in range(n):
        for p in range(n):
            if dom[q] != cod[p]:
                continue
            if not b.is_endo_1cell(dom[p]):
                # both live in the non-endo part: plain vertical composition
                comp[(q, p)] = b.vcomp[(q, p)]
                continue
            fq, _, pq = triples[q]
            fp, _, pp = triples[p]
            fc = bstar.compose(fq, fp)
            payload = b.vcomp[(pq, phi.on_cells2[fq][pp])]
            comp[(q, p)] = key_index[(fc, dom[p], payload)]
    cat = FiniteCategory(b.n1, tuple(dom), tuple(cod), identity, comp)
    return ExtendedTotal(cat, tuple(triples), tuple(pair_info), key_index)


def rest_part_object_count(dec: DecoratedBicategory) -> int:
    return split_cells(dec.bicat).rest_part.n_objects
