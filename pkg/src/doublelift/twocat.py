"""Finite strict bicategories (2-categories), decorations, and the
endo / non-endo cell split.

Conventions:

* ``vcomp[(q, p)]`` is the vertical composite ``q after p`` (defined when
  the top 1-cell of ``q`` equals the bottom 1-cell of ``p``).
* ``hcomp1[(x, y)]`` is the diagrammatic horizontal composite ``x * y``
  read left to right, defined when ``cod0(x) == dom0(y)``.
* ``hcomp2[(p, q)]`` pastes 2-cells side by side in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import StructureError
from .fincat import (
    FiniteCategory,
    StrictMonoidalCategory,
    _raise_first,
)


def bicategory_violations(n0, dom0, cod0, dom1, cod1, id1, id2,
                          vcomp, hcomp1, hcomp2) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    n1, n2 = len(dom0), len(dom1)
    if len(cod0) != n1 or len(cod1) != n2 or len(id1) != n0 or len(id2) != n1:
        return [("table-shape", "cell table lengths inconsistent")]
    if any(not (0 <= a < n0) for a in dom0 + cod0):
        return [("boundary-range", "1-cell endpoint outside 0-cells")]
    if any(not (0 <= x < n1) for x in dom1 + cod1):
        return [("boundary-range", "2-cell boundary outside 1-cells")]
    for p in range(n2):
        if dom0[dom1[p]] != dom0[cod1[p]] or cod0[dom1[p]] != cod0[cod1[p]]:
            out.append(("globe-boundary", f"2-cell {p} between non-parallel 1-cells"))
    for a in range(n0):
        if dom0[id1[a]] != a or cod0[id1[a]] != a:
            out.append(("identity-boundary", f"id1 of 0-cell {a}"))
    for x in range(n1):
        if dom1[id2[x]] != x or cod1[id2[x]] != x:
            out.append(("identity-boundary", f"id2 of 1-cell {x}"))
    if out:
        return out

    # vertical structure: each parallel class is a category
    for q in range(n2):
        for p in range(n2):
            if dom1[q] == cod1[p]:
                if (q, p) not in vcomp:
                    out.append(("vertical-totality", f"({q}, {p}) missing"))
            elif (q, p) in vcomp:
                out.append(("vertical-domain", f"({q}, {p}) not composable"))
    if out:
        return out
    for (q, p), r in vcomp.items():
        if dom1[r] != dom1[p] or cod1[r] != cod1[q]:
            out.append(("vertical-boundary", f"({q}, {p}) -> {r}"))
    for p in range(n2):
        if vcomp[(p, id2[dom1[p]])] != p or vcomp[(id2[cod1[p]], p)] != p:
            out.append(("vertical-identity", f"2-cell {p}"))
    for (q, p) in list(vcomp):
        for r in range(n2):
            if dom1[r] == cod1[q]:
                if vcomp[(vcomp[(r, q)], p)] != vcomp[(r, vcomp[(q, p)])]:
                    out.append(("vertical-associativity", f"({r}, {q}, {p})"))
    if out:
        return out

    # horizontal structure on 1-cells
    for x in range(n1):
        for y in range(n1):
            if cod0[x] == dom0[y]:
                if (x, y) not in hcomp1:
                    out.append(("horizontal-totality", f"1-cells ({x}, {y}) missing"))
            elif (x, y) in hcomp1:
                out.append(("horizontal-domain", f"1-cells ({x}, {y}) not composable"))
    if out:
        return out
    for (x, y), z in hcomp1.items():
        if dom0[z] != dom0[x] or cod0[z] != cod0[y]:
            out.append(("horizontal-boundary", f"1-cells ({x}, {y}) -> {z}"))
    for x in range(n1):
        if hcomp1[(id1[dom0[x]], x)] != x or hcomp1[(x, id1[cod0[x]])] != x:
            out.append(("horizontal-unit", f"1-cell {x}"))
    for (x, y) in list(hcomp1):
        for z in range(n1):
            if dom0[z] == cod0[y]:
                if hcomp1[(hcomp1[(x, y)], z)] != hcomp1[(x, hcomp1[(y, z)])]:
                    out.append(("horizontal-associativity", f"1-cells ({x}, {y}, {z})"))
    if out:
        return out

    # horizontal structure on 2-cells
    for p in range(n2):
        for q in range(n2):
            if cod0[dom1[p]] == dom0[dom1[q]]:
                if (p, q) not in hcomp2:
                    out.append(("horizontal-totality", f"2-cells ({p}, {q}) missing"))
            elif (p, q) in hcomp2:
                out.append(("horizontal-domain", f"2-cells ({p}, {q}) not composable"))
    if out:
        return out
    for (p, q), r in hcomp2.items():
        if dom1[r] != hcomp1[(dom1[p], dom1[q])] or cod1[r] != hcomp1[(cod1[p], cod1[q])]:
            out.append(("horizontal-boundary", f"2-cells ({p}, {q}) -> {r}"))
    for p in range(n2):
        li = id2[id1[dom0[dom1[p]]]]
        ri = id2[id1[cod0[dom1[p]]]]
        if hcomp2[(li, p)] != p or hcomp2[(p, ri)] != p:
            out.append(("horizontal-unit", f"2-cell {p}"))
    for (p, q) in list(hcomp2):
        for r in range(n2):
            if dom0[dom1[r]] == cod0[dom1[q]]:
                if hcomp2[(hcomp2[(p, q)], r)] != hcomp2[(p, hcomp2[(q, r)])]:
                    out.append(("horizontal-associativity", f"2-cells ({p}, {q}, {r})"))
    for (x, y), z in hcomp1.items():
        if hcomp2[(id2[x], id2[y])] != id2[z]:
            out.append(("horizontal-identity", f"id2 tensor at ({x}, {y})"))
    if out:
        return out

    # interchange (exchange law)
    for (q, p) in list(vcomp):
        for (q2, p2) in list(vcomp):
            if cod0[dom1[p]] != dom0[dom1[p2]]:
                continue
            lhs = vcomp[(hcomp2[(q, q2)], hcomp2[(p, p2)])]
            rhs = hcomp2[(vcomp[(q, p)], vcomp[(q2, p2)])]
            if lhs != rhs:
                out.append(("interchange", f"(({q}, {p}), ({q2}, {p2}))"))
    return out


@dataclass(frozen=True)
class StrictBicategory:
    n0: int
    dom0: tuple[int, ...]
    cod0: tuple[int, ...]
    dom1: tuple[int, ...]
    cod1: tuple[int, ...]
    id1: tuple[int, ...]
    id2: tuple[int, ...]
    vcomp: Mapping[tuple[int, int], int]
    hcomp1: Mapping[tuple[int, int], int]
    hcomp2: Mapping[tuple[int, int], int]
    names1: Optional[tuple[str, ...]] = field(default=None, compare=False)
    names2: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        for attr in ("dom0", "cod0", "dom1", "cod1", "id1", "id2"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        for attr in ("vcomp", "hcomp1", "hcomp2"):
            object.__setattr__(self, attr, dict(getattr(self, attr)))
        _raise_first(
            bicategory_violations(self.n0, self.dom0, self.cod0, self.dom1, self.cod1,
                                  self.id1, self.id2, self.vcomp, self.hcomp1, self.hcomp2)
        )

    @property
    def n1(self) -> int:
        return len(self.dom0)

    @property
    def n2(self) -> int:
        return len(self.dom1)

    def is_endo_1cell(self, x: int) -> bool:
        return self.dom0[x] == self.cod0[x]

    def cells2_between(self, x: int, y: int) -> list[int]:
        return [p for p in range(self.n2) if self.dom1[p] == x and self.cod1[p] == y]


def suspend(d: StrictMonoidalCategory) -> StrictBicategory:
    """The one-object bicategory whose endomorphism category is ``d``."""
    base = d.base
    n1, n2 = base.n_objects, base.n_morphisms
    vcomp = dict(base.composition)
    return StrictBicategory(
        1,
        (0,) * n1, (0,) * n1,
        base.dom, base.cod,
        (d.unit_obj,), base.identity,
        vcomp, dict(d.tensor_obj), dict(d.tensor_mor),
        names1=base.object_names, names2=base.morphism_names,
    )


@dataclass(frozen=True)
class DecoratedBicategory:
    decoration: FiniteCategory
    bicat: StrictBicategory

    def __post_init__(self):
        if self.decoration.n_objects != self.bicat.n0:
            raise StructureError(
                "decoration-mismatch",
                f"{self.decoration.n_objects} decoration objects vs {self.bicat.n0} 0-cells",
            )


def decorate(bstar: FiniteCategory, b: StrictBicategory) -> DecoratedBicategory:
    return DecoratedBicategory(bstar, b)


@dataclass(frozen=True)
class CellSplit:
    """Partition of the 1-cells into endo part and the rest, each made into
    a category under vertical composition."""

    endo_part: FiniteCategory
    rest_part: FiniteCategory
    endo_objects: tuple[int, ...]      # endo_part object -> 1-cell
    endo_morphisms: tuple[int, ...]    # endo_part morphism -> 2-cell
    rest_objects: tuple[int, ...]
    rest_morphisms: tuple[int, ...]


def _part_category(b: StrictBicategory, cells1: list[int]) -> tuple[FiniteCategory, tuple[int, ...], tuple[int, ...]]:
    pos1 = {x: i for i, x in enumerate(cells1)}
    cells2 = [p for p in range(b.n2) if b.dom1[p] in pos1]
    pos2 = {p: i for i, p in enumerate(cells2)}
    dom = tuple(pos1[b.dom1[p]] for p in cells2)
    cod = tuple(pos1[b.cod1[p]] for p in cells2)
    identity = tuple(pos2[b.id2[x]] for x in cells1)
    comp = {(pos2[q], pos2[p]): pos2[r] for (q, p), r in b.vcomp.items() if q in pos2 and p in pos2}
    cat = FiniteCategory(len(cells1), dom, cod, identity, comp)
    return cat, tuple(cells1), tuple(cells2)


def split_cells(b: StrictBicategory) -> CellSplit:
    endo = [x for x in range(b.n1) if b.is_endo_1cell(x)]
    rest = [x for x in range(b.n1) if not b.is_endo_1cell(x)]
    endo_cat, endo_obj, endo_mor = _part_category(b, endo)
    rest_cat, rest_obj, rest_mor = _part_category(b, rest)
    return CellSplit(endo_cat, rest_cat, endo_obj, endo_mor, rest_obj, rest_mor)
