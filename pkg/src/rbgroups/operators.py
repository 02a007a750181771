"""Rota-Baxter operators of weight 1: verification, exhaustive enumeration,
induced circle groups and skew braces, morphism and subgroup checks.

The defining law is R(x)R(y) = R(x R(x) y R(x)^-1); equivalently R is a
homomorphism from the induced circle group (G, o_R) to (G, .), which is what
the enumeration propagates on.
"""

from __future__ import annotations

import json
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .groups import (
    BudgetError,
    FiniteGroup,
    GroupMap,
    group_from_dict,
    group_to_dict,
    is_homomorphism,
    is_subgroup,
    make_group,
)

DEFAULT_ENUM_BOUND = 16
ENUM_WARN_ORDER = 12


@dataclass(frozen=True)
class RotaBaxterOperator:
    """A set map on a group's elements; validity is checked by is_rb_operator."""

    group: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.group.order:
            raise ValueError("operator is not total on the group")
        if any(not 0 <= v < self.group.order for v in self.images):
            raise ValueError("operator image out of range")

    def __call__(self, x: int) -> int:
        return self.images[x]


def trivial_operator(g: FiniteGroup) -> RotaBaxterOperator:
    """R == e, always a Rota-Baxter operator."""
    return RotaBaxterOperator(g, (0,) * g.order)


def inversion_operator(g: FiniteGroup) -> RotaBaxterOperator:
    """R(x) = x^-1, always a Rota-Baxter operator."""
    return RotaBaxterOperator(g, g.inverses)


def identity_operator(g: FiniteGroup) -> RotaBaxterOperator:
    """R = id; a Rota-Baxter operator exactly when g is abelian."""
    return RotaBaxterOperator(g, tuple(g.elements()))


def rb_witness(g: FiniteGroup, images) -> tuple[int, int] | None:
    """First (x, y) violating the Rota-Baxter law, scanning in index order."""
    table, inv = g.table, g.inverses
    im = tuple(images)
    for x in g.elements():
        rx = im[x]
        xrx = table[x][rx]
        rxi = inv[rx]
        for y in g.elements():
            z = table[table[xrx][y]][rxi]
            if table[rx][im[y]] != im[z]:
                return (x, y)
    return None


def is_rb_operator(g: FiniteGroup, images) -> bool:
    images = images.images if isinstance(images, RotaBaxterOperator) else images
    return rb_witness(g, images) is None


def rb_operator(g: FiniteGroup, images) -> RotaBaxterOperator:
    """Validated constructor; raises with the first violating pair."""
    op = RotaBaxterOperator(g, tuple(images))
    w = rb_witness(g, op.images)
    if w is not None:
        raise ValueError(f"Rota-Baxter law fails at (x, y) = {w}")
    return op


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------
#
# Depth-first assignment of R over elements in index order with R(e) = e
# pinned (forced by the law at x = y = e: R(e)^2 = R(e)).  After every
# assignment, each law instance whose lookups are all defined must hold, and
# instances with R(x), R(y) known force R(x R(x) y R(x)^-1) = R(x) R(y).


def _propagate(table, inv, values, trail) -> bool:
    n = len(values)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            rx = values[x]
            if rx < 0:
                continue
            xrx = table[x][rx]
            rxi = inv[rx]
            row = table[rx]
            for y in range(n):
                ry = values[y]
                if ry < 0:
                    continue
                z = table[table[xrx][y]][rxi]
                want = row[ry]
                have = values[z]
                if have < 0:
                    values[z] = want
                    trail.append(z)
                    changed = True
                elif have != want:
                    return False
    return True


def _dfs(table, inv, values, out) -> None:
    n = len(values)
    x = next((i for i in range(n) if values[i] < 0), None)
    if x is None:
        out.append(tuple(values))
        return
    for v in range(n):
        trail = [x]
        values[x] = v
        if _propagate(table, inv, values, trail):
            _dfs(table, inv, values, out)
        for t in trail:
            values[t] = -1


def _enumerate_task(args) -> list[tuple[int, ...]]:
    table, first_value = args
    g = FiniteGroup(table, check=False)
    values = [-1] * g.order
    values[0] = 0
    out: list[tuple[int, ...]] = []
    if first_value is not None:
        trail = [1]
        values[1] = first_value
        if _propagate(g.table, g.inverses, values, trail):
            _dfs(g.table, g.inverses, values, out)
    else:
        if _propagate(g.table, g.inverses, values, []):
            _dfs(g.table, g.inverses, values, out)
    return out


def enumerate_rb_operators(
    g: FiniteGroup,
    bound: int = DEFAULT_ENUM_BOUND,
    workers: int = 1,
) -> list[RotaBaxterOperator]:
    """All weight-1 Rota-Baxter operators on g, sorted by image table.

    The search tree is partitioned on R at the first non-identity element, so
    the result is identical for any worker count.
    """
    if g.order > bound:
        raise BudgetError(f"enumeration bound exceeded: |G| = {g.order} > {bound}")
    if g.order > ENUM_WARN_ORDER:
        warnings.warn(
            f"enumerating Rota-Baxter operators on a group of order {g.order}; "
            "this may take a while",
            stacklevel=2,
        )
    if g.order == 1:
        return [trivial_operator(g)]
    tasks = [(g.table, v) for v in range(g.order)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_enumerate_task, tasks))
    else:
        chunks = [_enumerate_task(t) for t in tasks]
    found = sorted(im for chunk in chunks for im in chunk)
    return [RotaBaxterOperator(g, im) for im in found]


# ---------------------------------------------------------------------------
# circle group and skew brace
# ---------------------------------------------------------------------------


def circle_table(g: FiniteGroup, images) -> tuple[tuple[int, ...], ...]:
    table, inv = g.table, g.inverses
    im = tuple(images)
    out = []
    for x in g.elements():
        xrx = table[x][im[x]]
        rxi = inv[im[x]]
        out.append(tuple(table[table[xrx][y]][rxi] for y in g.elements()))
    return tuple(out)


def induced_circle_group(g: FiniteGroup, op: RotaBaxterOperator) -> FiniteGroup:
    """The group (G, o_R) with x o y = x R(x) y R(x)^-1; axioms re-verified."""
    return FiniteGroup(
        circle_table(g, op.images),
        labels=g.labels,
        name=f"({g.name},circ)",
    )


@dataclass(frozen=True)
class SkewBrace:
    """Two Cayley tables on one carrier sharing identity 0; may be unvalidated."""

    order: int
    add: tuple[tuple[int, ...], ...]
    circ: tuple[tuple[int, ...], ...]

    @property
    def identity(self) -> int:
        return 0

    def add_group(self) -> FiniteGroup:
        return FiniteGroup(self.add, name="add")

    def circ_group(self) -> FiniteGroup:
        return FiniteGroup(self.circ, name="circ")


def skew_brace_witness(brace: SkewBrace):
    """First failing axiom of a skew left brace, or None.

    Checks both group structures, then the compatibility law
    a o (b + c) = (a o b) - a + (a o c).
    """
    from .groups import group_table_witness

    w = group_table_witness(brace.add)
    if w is not None:
        return ("add:" + w[0], w[1])
    w = group_table_witness(brace.circ)
    if w is not None:
        return ("circ:" + w[0], w[1])
    add, circ = brace.add, brace.circ
    neg = tuple(row.index(0) for row in add)
    n = brace.order
    for a in range(n):
        for b in range(n):
            ab = circ[a][b]
            for c in range(n):
                lhs = circ[a][add[b][c]]
                rhs = add[add[ab][neg[a]]][circ[a][c]]
                if lhs != rhs:
                    return ("compatibility", (a, b, c))
    return None


def is_skew_brace(brace: SkewBrace) -> bool:
    return skew_brace_witness(brace) is None


def induced_skew_brace(g: FiniteGroup, op: RotaBaxterOperator) -> SkewBrace:
    """The skew brace (G, ., o_R); always valid for a genuine operator."""
    brace = SkewBrace(g.order, g.table, circle_table(g, op.images))
    w = skew_brace_witness(brace)
    if w is not None:
        raise ValueError(f"induced brace fails {w[0]} at {w[1]}; operator invalid?")
    return brace


# ---------------------------------------------------------------------------
# morphisms and substructures
# ---------------------------------------------------------------------------


def rb_morphism_witness(
    f: GroupMap, source: RotaBaxterOperator, target: RotaBaxterOperator
) -> int | None:
    """First element where f R1 != R2 f, or None; f must be a homomorphism."""
    if f.domain.order != source.group.order or f.codomain.order != target.group.order:
        raise ValueError("morphism domain/codomain do not match the operators")
    if not is_homomorphism(f):
        raise ValueError("map is not a group homomorphism")
    for x in f.domain.elements():
        if f.images[source.images[x]] != target.images[f.images[x]]:
            return x
    return None


def is_rb_morphism(
    f: GroupMap, source: RotaBaxterOperator, target: RotaBaxterOperator
) -> bool:
    return rb_morphism_witness(f, source, target) is None


def is_rb_subgroup(g: FiniteGroup, op: RotaBaxterOperator, elems) -> bool:
    """True iff elems is a subgroup with R(H) contained in H."""
    s = set(elems)
    if not is_subgroup(g, s):
        raise ValueError("not a subgroup")
    return all(op.images[x] in s for x in s)


def is_brace_morphism(images, source: SkewBrace, target: SkewBrace) -> bool:
    """A map of skew braces: a homomorphism for both the add and circ tables."""
    im = tuple(images)
    n = source.order
    return all(
        im[source.add[a][b]] == target.add[im[a]][im[b]]
        and im[source.circ[a][b]] == target.circ[im[a]][im[b]]
        for a in range(n)
        for b in range(n)
    )


# ---------------------------------------------------------------------------
# brace -> operator search
# ---------------------------------------------------------------------------


def find_rb_inducing_brace(
    brace: SkewBrace, bound: int = DEFAULT_ENUM_BOUND
) -> RotaBaxterOperator | None:
    """Search for R on (carrier, add) whose circle table equals brace.circ.

    R(x) is pinned up to the centralizer by R(x) y R(x)^-1 = x^-1 (x o y);
    the remaining constraint is that R be a homomorphism (G, o) -> (G, .).
    Returns the lexicographically first solution, or None after exhausting.
    """
    w = skew_brace_witness(brace)
    if w is not None:
        raise ValueError(f"not a skew brace: {w[0]} at {w[1]}")
    if brace.order > bound:
        raise BudgetError(f"search bound exceeded: order {brace.order} > {bound}")
    add = brace.add_group()
    circ = brace.circ
    n = brace.order
    candidates: list[list[int]] = []
    for x in range(n):
        target = [add.mul(add.inv(x), circ[x][y]) for y in range(n)]
        cands = [
            z
            for z in range(n)
            if all(add.conj(z, y) == target[y] for y in range(n))
        ]
        if not cands:
            return None
        candidates.append(cands)
    if 0 not in candidates[0]:
        return None

    values = [-1] * n
    values[0] = 0
    found: list[tuple[int, ...]] = []

    def consistent(x: int) -> bool:
        for y in range(n):
            if values[y] < 0:
                continue
            for a, b in ((x, y), (y, x)):
                z = circ[a][b]
                if values[z] >= 0 and values[z] != add.mul(values[a], values[b]):
                    return False
        return True

    def dfs() -> bool:
        x = next((i for i in range(n) if values[i] < 0), None)
        if x is None:
            found.append(tuple(values))
            return True
        for v in candidates[x]:
            values[x] = v
            if consistent(x) and dfs():
                return True
            values[x] = -1
        return False

    if not dfs():
        return None
    op = RotaBaxterOperator(add, found[0])
    assert rb_witness(add, op.images) is None
    return op


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def operator_to_dict(op: RotaBaxterOperator, group_name: str | None = None) -> dict:
    group_field = group_name if group_name is not None else group_to_dict(op.group)
    return {"group": group_field, "images": list(op.images)}


def operator_from_dict(data: dict, group: FiniteGroup | None = None) -> RotaBaxterOperator:
    """Read an operator; image entries may be indices or element labels."""
    if group is None:
        spec = data.get("group")
        if spec is None:
            raise ValueError("operator JSON needs a 'group' field or an explicit group")
        group = group_from_dict(spec) if isinstance(spec, dict) else make_group(spec)
    raw = data["images"]
    if len(raw) != group.order:
        raise ValueError(f"operator has {len(raw)} images for order {group.order}")
    images = tuple(
        v if isinstance(v, int) else group.label_index(str(v)) for v in raw
    )
    return RotaBaxterOperator(group, images)


def load_operator(path, group: FiniteGroup | None = None) -> RotaBaxterOperator:
    return operator_from_dict(json.loads(Path(path).read_text()), group=group)
