"""Double categories as table data, the axiom suite, and horizontalization.

A double category is stored as a category of objects ``c0``, a category of
squares ``c1`` (objects of ``c1`` are the horizontal 1-cells, morphisms are
squares, composition is the vertical pasting), source/target functors
``src, tgt: c1 -> c0``, a horizontal identity functor ``hid: c0 -> c1``,
and a single partial horizontal composition table ``hcomp`` covering both
1-cells and squares, keyed by cell kind.

``hcomp[("ob", x, y)]`` is the horizontal composite of 1-cells read left to
right, defined exactly when the right endpoint of ``x`` is the left endpoint
of ``y``.  ``hcomp[("sq", p, q)]`` pastes squares side by side in the same
order, defined exactly when ``tgt(p) == src(q)``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from typing import Mapping, Optional

from .errors import StructureError
from .fincat import FiniteCategory, FunctorData
from .twocat import DecoratedBicategory, StrictBicategory

HKey = tuple[str, int, int]


@dataclass(frozen=True)
class DoubleCategory:
    c0: FiniteCategory
    c1: FiniteCategory
    src: FunctorData
    tgt: FunctorData
    hid: FunctorData
    hcomp: Mapping[HKey, int]
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        object.__setattr__(self, "hcomp", dict(self.hcomp))
        if validate:
            report = check_double_axioms(self)
            for law, ok, witness in report:
                if not ok:
                    raise StructureError(law, repr(witness))

    def hob(self, x: int, y: int) -> int:
        return self.hcomp[("ob", x, y)]

    def hsq(self, p: int, q: int) -> int:
        return self.hcomp[("sq", p, q)]

    # endpoint helpers: the left/right 0-cell of a horizontal 1-cell
    def left0(self, x: int) -> int:
        return self.src.object_map[x]

    def right0(self, x: int) -> int:
        return self.tgt.object_map[x]

    def is_globular(self, p: int) -> bool:
        return self.c0.is_identity(self.src.morphism_map[p]) and \
            self.c0.is_identity(self.tgt.morphism_map[p])


def check_double_axioms(c: DoubleCategory) -> list[tuple[str, bool, Optional[tuple]]]:
    """Run the full strict double-category axiom suite.

    Returns one entry per law: (law name, passed, first counterexample).
    The component categories and the three structure functors validate
    themselves on construction, so the laws here are the ones that relate
    them: the section equations for hid, and everything about horizontal
    composition.
    """
    c0, c1 = c.c0, c.c1
    report: list[tuple[str, bool, Optional[tuple]]] = []

    def record(law: str, witness: Optional[tuple]):
        report.append((law, witness is None, witness))

    def first(gen):
        for w in gen:
            return w
        return None

    if c.src.source is not c1 and c.src.source != c1:
        raise StructureError("wiring", "src is not a functor out of c1")
    for fun, name in ((c.src, "src"), (c.tgt, "tgt")):
        assert fun.target == c0, f"{name} does not land in c0"
    assert c.hid.source == c0 and c.hid.target == c1

    record("hid-section", first(
        ("object", a) for a in range(c0.n_objects)
        if c.src.object_map[c.hid.object_map[a]] != a or c.tgt.object_map[c.hid.object_map[a]] != a
    ) or first(
        ("morphism", f) for f in range(c0.n_morphisms)
        if c.src.morphism_map[c.hid.morphism_map[f]] != f
        or c.tgt.morphism_map[c.hid.morphism_map[f]] != f
    ))

    def ob_witness():
        for x in range(c1.n_objects):
            for y in range(c1.n_objects):
                defined = ("ob", x, y) in c.hcomp
                composable = c.right0(x) == c.left0(y)
                if defined != composable:
                    return (x, y, "defined" if defined else "missing")
        return None

    record("hcomp-totality-1cells", ob_witness())

    def sq_witness():
        for p in range(c1.n_morphisms):
            for q in range(c1.n_morphisms):
                defined = ("sq", p, q) in c.hcomp
                composable = c.tgt.morphism_map[p] == c.src.morphism_map[q]
                if defined != composable:
                    return (p, q, "defined" if defined else "missing")
        return None

    record("hcomp-totality-squares", sq_witness())
    if any(not ok for _, ok, _ in report):
        return report

    record("hcomp-boundary", first(
        (x, y) for (kind, x, y) in c.hcomp if kind == "ob"
        and (c.left0(c.hob(x, y)) != c.left0(x) or c.right0(c.hob(x, y)) != c.right0(y))
    ) or first(
        (p, q)
        for (kind, p, q) in c.hcomp if kind == "sq"
        and (c.src.morphism_map[c.hsq(p, q)] != c.src.morphism_map[p]
             or c.tgt.morphism_map[c.hsq(p, q)] != c.tgt.morphism_map[q]
             or c1.dom[c.hsq(p, q)] != c.hob(c1.dom[p], c1.dom[q])
             or c1.cod[c.hsq(p, q)] != c.hob(c1.cod[p], c1.cod[q]))
    ))

    record("hcomp-identity", first(
        (x, y) for (kind, x, y) in c.hcomp if kind == "ob"
        and c.hsq(c1.identity[x], c1.identity[y]) != c1.identity[c.hob(x, y)]
    ))

    def interchange_witness():
        for (q, p) in c1.composition:
            for (q2, p2) in c1.composition:
                if c.tgt.morphism_map[p] != c.src.morphism_map[p2] or \
                   c.tgt.morphism_map[q] != c.src.morphism_map[q2]:
                    continue
                lhs = c1.compose(c.hsq(q, q2), c.hsq(p, p2))
                rhs = c.hsq(c1.compose(q, p), c1.compose(q2, p2))
                if lhs != rhs:
                    return (q, p, q2, p2)
        return None

    record("interchange", interchange_witness())

    def unit_witness():
        for x in range(c1.n_objects):
            il = c.hid.object_map[c.left0(x)]
            ir = c.hid.object_map[c.right0(x)]
            if c.hob(il, x) != x or c.hob(x, ir) != x:
                return ("ob", x)
        for p in range(c1.n_morphisms):
            il = c.hid.morphism_map[c.src.morphism_map[p]]
            ir = c.hid.morphism_map[c.tgt.morphism_map[p]]
            if c.hsq(il, p) != p or c.hsq(p, ir) != p:
                return ("sq", p)
        return None

    record("hcomp-unit", unit_witness())

    def assoc_witness():
        for (kind, x, y) in list(c.hcomp):
            if kind != "ob":
                continue
            for z in range(c1.n_objects):
                if c.left0(z) != c.right0(y):
                    continue
                if c.hob(c.hob(x, y), z) != c.hob(x, c.hob(y, z)):
                    return ("ob", x, y, z)
        for (kind, p, q) in list(c.hcomp):
            if kind != "sq":
                continue
            for r in range(c1.n_morphisms):
                if c.src.morphism_map[r] != c.tgt.morphism_map[q]:
                    continue
                if c.hsq(c.hsq(p, q), r) != c.hsq(p, c.hsq(q, r)):
                    return ("sq", p, q, r)
        return None

    record("hcomp-associativity", assoc_witness())
    return report


def globular_squares(c: DoubleCategory) -> set[int]:
    """Squares whose vertical sides are both identity morphisms of c0."""
    return {p for p in range(c.c1.n_morphisms) if c.is_globular(p)}


def horizontalization(c: DoubleCategory) -> StrictBicategory:
    """The bicategory of objects, horizontal 1-cells, and globular squares.

    2-cell identifiers are the globular squares in ascending square order;
    0-cells and 1-cells keep the identifiers of c0-objects and c1-objects.
    """
    glob = sorted(globular_squares(c))
    pos = {p: i for i, p in enumerate(glob)}
    dom1 = tuple(c.c1.dom[p] for p in glob)
    cod1 = tuple(c.c1.cod[p] for p in glob)
    id1 = tuple(c.hid.object_map)
    id2 = tuple(pos[c.c1.identity[x]] for x in range(c.c1.n_objects))
    vcomp = {
        (pos[q], pos[p]): pos[c.c1.compose(q, p)]
        for q in glob for p in glob if c.c1.dom[q] == c.c1.cod[p]
    }
    hcomp1 = {
        (x, y): c.hob(x, y)
        for x in range(c.c1.n_objects) for y in range(c.c1.n_objects)
        if c.right0(x) == c.left0(y)
    }
    hcomp2 = {
        (pos[p], pos[q]): pos[c.hsq(p, q)]
        for p in glob for q in glob
        if c.tgt.morphism_map[p] == c.src.morphism_map[q]
    }
    return StrictBicategory(
        c.c0.n_objects, tuple(c.left0(x) for x in range(c.c1.n_objects)),
        tuple(c.right0(x) for x in range(c.c1.n_objects)),
        dom1, cod1, id1, id2, vcomp, hcomp1, hcomp2,
        names1=c.c1.object_names,
    )


def decorated_horizontalization(c: DoubleCategory) -> DecoratedBicategory:
    return DecoratedBicategory(c.c0, horizontalization(c))


def trivial_double_category(c0: FiniteCategory) -> DoubleCategory:
    """The double category with only horizontal identity 1-cells over c0 and
    only identity globular squares plus the hid-images of c0-morphisms."""
    c1 = FiniteCategory(
        c0.n_objects, c0.dom, c0.cod, c0.identity, dict(c0.composition),
    )
    ident = FunctorData.identity(c1)
    src = FunctorData(c1, c0, ident.object_map, ident.morphism_map)
    tgt = src
    hid = FunctorData(c0, c1, tuple(range(c0.n_objects)), tuple(range(c0.n_morphisms)))
    hcomp: dict[HKey, int] = {}
    for x in range(c1.n_objects):
        for y in range(c1.n_objects):
            if x == y:
                hcomp[("ob", x, y)] = x
    for p in range(c1.n_morphisms):
        # src(p) = tgt(p) = p here, so squares compose horizontally only
        # with themselves
        hcomp[("sq", p, p)] = p
    return DoubleCategory(c1=c1, c0=c0, src=src, tgt=tgt, hid=hid, hcomp=hcomp)


@dataclass(frozen=True)
class DoubleFunctor:
    f0: FunctorData
    f1: FunctorData

    def __post_init__(self):
        pass

    def check(self, c: DoubleCategory, d: DoubleCategory) -> None:
        """Exhaustively verify compatibility with src, tgt, hid and hcomp."""
        assert self.f0.source == c.c0 and self.f0.target == d.c0
        assert self.f1.source == c.c1 and self.f1.target == d.c1
        for x in range(c.c1.n_objects):
            if d.left0(self.f1.object_map[x]) != self.f0.object_map[c.left0(x)] or \
               d.right0(self.f1.object_map[x]) != self.f0.object_map[c.right0(x)]:
                raise StructureError("double-functor-boundary", f"1-cell {x}")
        for p in range(c.c1.n_morphisms):
            if d.src.morphism_map[self.f1.morphism_map[p]] != self.f0.morphism_map[c.src.morphism_map[p]] or \
               d.tgt.morphism_map[self.f1.morphism_map[p]] != self.f0.morphism_map[c.tgt.morphism_map[p]]:
                raise StructureError("double-functor-boundary", f"square {p}")
        for a in range(c.c0.n_objects):
            if self.f1.object_map[c.hid.object_map[a]] != d.hid.object_map[self.f0.object_map[a]]:
                raise StructureError("double-functor-hid", f"object {a}")
        for f in range(c.c0.n_morphisms):
            if self.f1.morphism_map[c.hid.morphism_map[f]] != d.hid.morphism_map[self.f0.morphism_map[f]]:
                raise StructureError("double-functor-hid", f"morphism {f}")
        for (kind, u, v) in c.hcomp:
            if kind == "ob":
                if self.f1.object_map[c.hob(u, v)] != d.hob(self.f1.object_map[u], self.f1.object_map[v]):
                    raise StructureError("double-functor-hcomp", f"1-cells ({u}, {v})")
            else:
                if self.f1.morphism_map[c.hsq(u, v)] != d.hsq(self.f1.morphism_map[u], self.f1.morphism_map[v]):
                    raise StructureError("double-functor-hcomp", f"squares ({u}, {v})")

    @staticmethod
    def identity(c: DoubleCategory) -> "DoubleFunctor":
        return DoubleFunctor(FunctorData.identity(c.c0), FunctorData.identity(c.c1))

    def compose(self, other: "DoubleFunctor") -> "DoubleFunctor":
        """self after other."""
        return DoubleFunctor(self.f0.compose(other.f0), self.f1.compose(other.f1))


@dataclass(frozen=True)
class Square:
    """A square of a lifted double category in the (f, g, payload) shape.

    The vertical sides f and g of such a square are either both identities
    (a 2-cell of the underlying bicategory) or equal.
    """

    f: int
    g: int
    payload: int
    top: int
    bottom: int
    f_is_identity: bool
    g_is_identity: bool

    def __post_init__(self):
        if not self.f_is_identity and not self.g_is_identity and self.f != self.g:
            raise StructureError(
                "square-shape",
                f"non-identity vertical sides differ: {self.f} vs {self.g}",
            )
