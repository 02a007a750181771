"""Rota-Baxter extensions: abelian (classified by H2), split (semidirect), and
non-abelian via associated triplets, plus couplings and the central action.

Extension carriers are always H x I with pair index h*|I| + y, group law
(h1,y1)(h2,y2) = (h1 h2, tau(h1,h2) + mu_{h2}(y1) + y2) and operator
R(h,y) = (R_H(h), g(h) + R_I(mu_{R_H(h)}(y))) (conjugation-twisted when the
kernel is non-abelian).  Builders verify everything they construct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import (
    AutomorphismGroup,
    BudgetError,
    FiniteGroup,
    GroupMap,
    automorphisms,
    center,
    group_table_witness,
    is_bijective,
    is_homomorphism,
)
from .cohomology import Cochain, CocyclePair, RBModule, d2_rbe
from .operators import RotaBaxterOperator, rb_witness

DEFAULT_THETA_BUDGET = 10**4
DEFAULT_TRIPLET_BUDGET = 10**6


class ExtensionError(ValueError):
    """A constructive extension check failed; `witness` locates the failure."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnionFind:
    """Minimal deterministic union-find; the class root is the least index."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return
        lo, hi = (ri, rj) if ri < rj else (rj, ri)
        self.parent[hi] = lo

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            groups.setdefault(self.find(i), []).append(i)
        return [groups[r] for r in sorted(groups)]


# ---------------------------------------------------------------------------
# abelian extensions
# ---------------------------------------------------------------------------


@dataclass
class AbelianExtension:
    """A built extension carrier H x I with its operator and structure maps."""

    module: RBModule
    E: FiniteGroup
    operator: RotaBaxterOperator
    include: GroupMap
    project: GroupMap
    section: GroupMap
    pair: CocyclePair

    def pair_index(self, h: int, y: int) -> int:
        return h * self.module.I.order + y

    def split_index(self, e: int) -> tuple[int, int]:
        return divmod(e, self.module.I.order)

    def kernel_part(self, e: int) -> int:
        """I-coordinate of an element of the included kernel copy."""
        h, y = self.split_index(e)
        if h != 0:
            raise ValueError(f"element {e} is not in the kernel copy")
        return y


def build_abelian_extension(
    module: RBModule, pair: CocyclePair, check: bool = True
) -> AbelianExtension:
    """Construct E(tau, g) from a 2-cocycle pair; raises on a non-cocycle.

    The error message names which of the two cocycle conditions failed and
    the first tuple where it does.
    """
    dt, beta = d2_rbe(pair)
    if not dt.is_zero():
        bad = next(t for t, v in sorted(dt.values.items()) if v != 0)
        raise ExtensionError(
            f"pair is not a 2-cocycle: group cocycle condition fails at {bad}",
            witness=("group-cocycle", bad),
        )
    if not beta.is_zero():
        bad = next(t for t, v in sorted(beta.values.items()) if v != 0)
        raise ExtensionError(
            f"pair is not a 2-cocycle: operator condition fails at {bad}",
            witness=("operator-cocycle", bad),
        )
    h, i = module.H, module.I
    ni = i.order
    n = h.order * ni
    tau, g = pair.tau, pair.g
    table = [[0] * n for _ in range(n)]
    for h1 in h.elements():
        for y1 in i.elements():
            row = table[h1 * ni + y1]
            for h2 in h.elements():
                my1 = module.act(h2, y1)
                for y2 in i.elements():
                    yy = i.table[i.table[tau((h1, h2))][my1]][y2]
                    row[h2 * ni + y2] = h.table[h1][h2] * ni + yy
    labels = None
    if h.labels is not None and i.labels is not None:
        labels = [f"({h.label(a)},{i.label(b)})" for a in h.elements() for b in i.elements()]
    e_group = FiniteGroup(table, labels=labels, name=f"E({h.name},{i.name})")
    r_images = tuple(
        module.rh[hh] * ni + i.table[g((hh,))][module.ri[module.act(module.rh[hh], y)]]
        for hh in h.elements()
        for y in i.elements()
    )
    operator = RotaBaxterOperator(e_group, r_images)
    include = GroupMap(i, e_group, tuple(range(ni)))
    project = GroupMap(e_group, h, tuple(e // ni for e in range(n)))
    section = GroupMap(h, e_group, tuple(hh * ni for hh in h.elements()))
    ext = AbelianExtension(module, e_group, operator, include, project, section, pair)
    if check:
        _verify_extension_invariants(ext)
    return ext


def _verify_extension_invariants(ext: AbelianExtension) -> None:
    m, e = ext.module, ext.E
    w = rb_witness(e, ext.operator.images)
    if w is not None:
        raise AssertionError(f"built operator fails the Rota-Baxter law at {w}")
    if not is_homomorphism(ext.include) or len(set(ext.include.images)) != m.I.order:
        raise AssertionError("inclusion is not an injective homomorphism")
    if not is_homomorphism(ext.project) or set(ext.project.images) != set(m.H.elements()):
        raise AssertionError("projection is not a surjective homomorphism")
    kernel = {x for x in e.elements() if ext.project.images[x] == 0}
    if kernel != set(ext.include.images):
        raise AssertionError("kernel of projection differs from the included copy")
    for y in m.I.elements():
        if ext.operator.images[ext.include.images[y]] != ext.include.images[m.ri[y]]:
            raise AssertionError("R_E does not restrict to R_I on the kernel")
    for x in e.elements():
        if ext.project.images[ext.operator.images[x]] != m.rh[ext.project.images[x]]:
            raise AssertionError("projection does not intertwine R_E with R_H")
    for hh in m.H.elements():
        if ext.project.images[ext.section.images[hh]] != hh:
            raise AssertionError("canonical section is not a section")
    if ext.section.images[0] != 0:
        raise AssertionError("canonical section does not preserve the identity")


def is_st_section(ext: AbelianExtension, s: GroupMap) -> bool:
    return (
        s.images[0] == 0
        and all(ext.project.images[s.images[h]] == h for h in ext.module.H.elements())
    )


def st_sections(ext: AbelianExtension):
    """All set-theoretic sections of the projection fixing the identity."""
    m = ext.module
    fibers = [
        [e for e in ext.E.elements() if ext.project.images[e] == h]
        for h in m.H.elements()
    ]
    for choice in itertools.product(*fibers[1:]):
        yield GroupMap(m.H, ext.E, (0,) + tuple(choice))


def extract_cocycle(ext: AbelianExtension, section: GroupMap | None = None) -> CocyclePair:
    """Read (tau, g) off an extension through an st-section.

    tau(h1,h2) = s(h1 h2)^-1 s(h1) s(h2) and g(h) is the kernel coordinate of
    s(R_H(h))^-1 R_E(s(h)).  The result is always a 2-cocycle.
    """
    if section is None:
        section = ext.section
    if not is_st_section(ext, section):
        raise ValueError("map is not an st-section of the extension")
    m, e = ext.module, ext.E
    inc_inv = {img: y for y, img in enumerate(ext.include.images)}
    s = section.images

    def kernel_coord(x: int) -> int:
        if x not in inc_inv:
            raise AssertionError("expected a kernel element")
        return inc_inv[x]

    tau = Cochain.from_callable(
        m,
        2,
        lambda h1, h2: kernel_coord(
            e.table[e.inverses[s[m.H.table[h1][h2]]]][e.table[s[h1]][s[h2]]]
        ),
    )
    g = Cochain.from_callable(
        m,
        1,
        lambda h: kernel_coord(
            e.table[e.inverses[s[m.rh[h]]]][ext.operator.images[s[h]]]
        ),
    )
    pair = CocyclePair(tau, g)
    dt, beta = d2_rbe(pair)
    if not (dt.is_zero() and beta.is_zero()):
        raise AssertionError("extracted pair is not a 2-cocycle")
    return pair


def recovered_action(ext: AbelianExtension, section: GroupMap | None = None):
    """The conjugation action mu_h(y) = s(h)^-1 y s(h) read off the extension."""
    if section is None:
        section = ext.section
    m, e = ext.module, ext.E
    inc_inv = {img: y for y, img in enumerate(ext.include.images)}
    out = []
    for h in m.H.elements():
        sh = section.images[h]
        row = tuple(
            inc_inv[e.table[e.table[e.inverses[sh]][ext.include.images[y]]][sh]]
            for y in m.I.elements()
        )
        out.append(row)
    return tuple(out)


def same_module(m1: RBModule, m2: RBModule) -> bool:
    return (
        m1.H.table == m2.H.table
        and m1.rh == m2.rh
        and m1.I.table == m2.I.table
        and m1.ri == m2.ri
        and m1.action == m2.action
    )


def are_equivalent(
    e1: AbelianExtension, e2: AbelianExtension, budget: int = DEFAULT_THETA_BUDGET
) -> GroupMap | None:
    """Fiber-preserving Rota-Baxter isomorphism (h,y) -> (h, y + theta(h)), or None.

    Exhausts all |I|^(|H|-1) candidate theta maps.
    """
    if not same_module(e1.module, e2.module):
        raise ValueError("extensions live over different modules")
    m = e1.module
    h, i = m.H, m.I
    ni = i.order
    if i.order ** (h.order - 1) > budget:
        raise BudgetError("equivalence search exceeds budget")
    for rest in itertools.product(i.elements(), repeat=h.order - 1):
        theta = (0,) + rest
        images = tuple(
            hh * ni + i.table[y][theta[hh]] for hh in h.elements() for y in i.elements()
        )
        cand = GroupMap(e1.E, e2.E, images)
        if not is_homomorphism(cand):
            continue
        if all(
            images[e1.operator.images[x]] == e2.operator.images[images[x]]
            for x in e1.E.elements()
        ):
            return cand
    return None


def classify_abelian(module: RBModule, budget: int = DEFAULT_TRIPLET_BUDGET) -> dict:
    """Partition all built extensions by equivalence and compare with |H2|."""
    from .cohomology import h2_rbe, z2_rbe

    z2 = z2_rbe(module, budget)
    exts = [build_abelian_extension(module, p) for p in z2]
    uf = UnionFind(len(exts))
    for a in range(len(exts)):
        for b in range(a + 1, len(exts)):
            if uf.find(a) == uf.find(b):
                continue
            if are_equivalent(exts[a], exts[b]) is not None:
                uf.union(a, b)
    classes = uf.classes()
    reps = [min((z2[i] for i in cls), key=lambda p: p.key()) for cls in classes]
    h2 = h2_rbe(module, budget)
    return {
        "num_classes": len(classes),
        "h2_order": h2.order_h2,
        "match": len(classes) == h2.order_h2,
        "class_representatives": [p.to_dict() for p in reps],
    }


def extension_to_dict(ext) -> dict:
    """Serialize a built extension: full Cayley table plus (tau, g, mu).

    Works for both AbelianExtension and GeneralExtension.
    """
    if isinstance(ext, AbelianExtension):
        m = ext.module
        tau = {
            f"({h1},{h2})": ext.pair.tau((h1, h2))
            for h1 in m.H.elements()
            for h2 in m.H.elements()
            if ext.pair.tau((h1, h2)) != 0
        }
        g = {str(h): ext.pair.g((h,)) for h in m.H.elements() if ext.pair.g((h,)) != 0}
        mu = [list(row) for row in m.action]
    else:
        t = ext.triplet
        tau = {
            f"({h1},{h2})": v
            for h1, row in enumerate(t.tau)
            for h2, v in enumerate(row)
            if v != 0
        }
        g = {str(h): v for h, v in enumerate(t.g) if v != 0}
        mu = [list(row) for row in t.mu]
    return {
        "order": ext.E.order,
        "table": [list(row) for row in ext.E.table],
        "operator": list(ext.operator.images),
        "tau": tau,
        "g": g,
        "mu": mu,
    }


# ---------------------------------------------------------------------------
# general (possibly non-abelian kernel) extensions from triplet data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triplet:
    """Candidate datum (mu, tau, g) for a non-abelian extension.

    mu: per-h automorphism tables of I (not necessarily anti-homomorphic);
    tau: |H| x |H| table of I elements, normalized; g: map H -> I, g(0) = 0.
    """

    mu: tuple[tuple[int, ...], ...]
    tau: tuple[tuple[int, ...], ...]
    g: tuple[int, ...]

    def key(self):
        return (self.mu, self.tau, self.g)


@dataclass
class GeneralExtension:
    """A built split or triplet extension; same shape as AbelianExtension."""

    hgroup: RotaBaxterOperator
    igroup: RotaBaxterOperator
    triplet: Triplet
    E: FiniteGroup
    operator: RotaBaxterOperator
    include: GroupMap
    project: GroupMap
    section: GroupMap


def _candidate_tables(h_rb, i_rb, mu, tau, g):
    h, i = h_rb.group, i_rb.group
    ni = i.order
    n = h.order * ni
    table = [[0] * n for _ in range(n)]
    for h1 in h.elements():
        for y1 in i.elements():
            row = table[h1 * ni + y1]
            for h2 in h.elements():
                my1 = mu[h2][y1]
                for y2 in i.elements():
                    yy = i.table[i.table[tau[h1][h2]][my1]][y2]
                    row[h2 * ni + y2] = h.table[h1][h2] * ni + yy
    r_images = []
    for hh in h.elements():
        ghh = g[hh]
        ghi = i.inverses[ghh]
        for y in i.elements():
            conj = i.table[i.table[ghi][mu[h_rb.images[hh]][y]]][ghh]
            r_images.append(h_rb.images[hh] * ni + i.table[ghh][i_rb.images[conj]])
    return table, tuple(r_images)


def verify_triplet(t: Triplet, h_rb: RotaBaxterOperator, i_rb: RotaBaxterOperator):
    """Constructive check: build the candidate extension and test everything.

    Returns None when (mu, tau, g) is an associated triplet, else a witness
    ("structural"/"group:..."/"rb-law", where).
    """
    h, i = h_rb.group, i_rb.group
    if len(t.mu) != h.order or len(t.tau) != h.order or len(t.g) != h.order:
        return ("structural", "shape")
    if tuple(t.mu[0]) != tuple(i.elements()):
        return ("structural", "mu at identity is not id")
    for hh, row in enumerate(t.mu):
        gm = GroupMap(i, i, tuple(row))
        if not (is_bijective(gm) and is_homomorphism(gm)):
            return ("structural", f"mu_{hh} is not an automorphism")
    for hh in h.elements():
        if t.tau[0][hh] != 0 or t.tau[hh][0] != 0:
            return ("structural", f"tau not normalized at {hh}")
    if t.g[0] != 0:
        return ("structural", "g(identity) != identity")
    table, r_images = _candidate_tables(h_rb, i_rb, t.mu, t.tau, t.g)
    w = group_table_witness(table)
    if w is not None:
        return ("group:" + w[0], w[1])
    e_group = FiniteGroup(table, name="candidate", check=False)
    w = rb_witness(e_group, r_images)
    if w is not None:
        return ("rb-law", w)
    return None


def build_triplet_extension(
    t: Triplet, h_rb: RotaBaxterOperator, i_rb: RotaBaxterOperator
) -> GeneralExtension:
    w = verify_triplet(t, h_rb, i_rb)
    if w is not None:
        raise ExtensionError(f"not an associated triplet: {w[0]} at {w[1]}", witness=w)
    h, i = h_rb.group, i_rb.group
    ni = i.order
    table, r_images = _candidate_tables(h_rb, i_rb, t.mu, t.tau, t.g)
    labels = None
    if h.labels is not None and i.labels is not None:
        labels = [f"({h.label(a)},{i.label(b)})" for a in h.elements() for b in i.elements()]
    e_group = FiniteGroup(table, labels=labels, name=f"E({h.name},{i.name})")
    operator = RotaBaxterOperator(e_group, r_images)
    include = GroupMap(i, e_group, tuple(range(ni)))
    project = GroupMap(e_group, h, tuple(e // ni for e in range(h.order * ni)))
    section = GroupMap(h, e_group, tuple(hh * ni for hh in h.elements()))
    return GeneralExtension(h_rb, i_rb, t, e_group, operator, include, project, section)


def build_split_extension(
    h_rb: RotaBaxterOperator,
    i_rb: RotaBaxterOperator,
    mu,
    g,
) -> GeneralExtension:
    """Semidirect product H x| I with R(h,y) = (R_H h, g(h) R_I(i_{g(h)^-1} mu_{R_H h}(y))).

    mu must be a genuine anti-homomorphism here (the section is homomorphic);
    the split compatibility condition on (mu, g) is checked constructively,
    with the first violating pair reported on failure.
    """
    h, i = h_rb.group, i_rb.group
    mu = tuple(tuple(row) for row in mu)
    action_as_map = [GroupMap(i, i, row) for row in mu]
    for hh, gm in enumerate(action_as_map):
        if not (is_bijective(gm) and is_homomorphism(gm)):
            raise ValueError(f"mu_{hh} is not an automorphism of I")
    for h1 in h.elements():
        for h2 in h.elements():
            comp = tuple(mu[h2][mu[h1][y]] for y in i.elements())
            if mu[h.table[h1][h2]] != comp:
                raise ValueError(f"mu is not an anti-homomorphism at ({h1}, {h2})")
    g = tuple(g)
    if g[0] != 0:
        raise ValueError("g must send the identity to the identity")
    zero_tau = tuple((0,) * h.order for _ in h.elements())
    t = Triplet(mu, zero_tau, g)
    w = verify_triplet(t, h_rb, i_rb)
    if w is not None:
        raise ExtensionError(
            f"(mu, g) violates the split condition: {w[0]} at {w[1]}", witness=w
        )
    ext = build_triplet_extension(t, h_rb, i_rb)
    if not is_homomorphism(ext.section):
        raise AssertionError("split extension's canonical section must be homomorphic")
    return ext


def extract_triplet(ext: GeneralExtension, section: GroupMap | None = None) -> Triplet:
    """Read (mu, tau, g) off a general extension through an st-section."""
    if section is None:
        section = ext.section
    h, i, e = ext.hgroup.group, ext.igroup.group, ext.E
    s = section.images
    if s[0] != 0 or any(ext.project.images[s[hh]] != hh for hh in h.elements()):
        raise ValueError("map is not an st-section of the extension")
    inc_inv = {img: y for y, img in enumerate(ext.include.images)}

    def coord(x: int) -> int:
        return inc_inv[x]

    mu = tuple(
        tuple(
            coord(e.table[e.table[e.inverses[s[hh]]][ext.include.images[y]]][s[hh]])
            for y in i.elements()
        )
        for hh in h.elements()
    )
    tau = tuple(
        tuple(
            coord(e.table[e.inverses[s[h.table[h1][h2]]]][e.table[s[h1]][s[h2]]])
            for h2 in h.elements()
        )
        for h1 in h.elements()
    )
    g = tuple(
        coord(e.table[e.inverses[s[ext.hgroup.images[hh]]]][ext.operator.images[s[hh]]])
        for hh in h.elements()
    )
    return Triplet(mu, tau, g)


def triplets_equivalent(
    t1: Triplet,
    t2: Triplet,
    h_rb: RotaBaxterOperator,
    i_rb: RotaBaxterOperator,
    budget: int = DEFAULT_THETA_BUDGET,
) -> tuple[int, ...] | None:
    """Search for theta: H -> I relating the triplets by a section shift.

    The three relations (with i_x(u) = x u x^-1):
      mu2_h = i_{theta(h)^-1} mu1_h,
      tau2(h1,h2) = theta(h1 h2)^-1 tau1(h1,h2) mu1_{h2}(theta(h1)) theta(h2),
      theta(R_H(h)) g2(h) = g1(h) R_I(i_{g1(h)^-1}(mu1_{R_H(h)}(theta(h)))).
    """
    h, i = h_rb.group, i_rb.group
    if i.order ** (h.order - 1) > budget:
        raise BudgetError("triplet equivalence search exceeds budget")
    rh, ri = h_rb.images, i_rb.images
    for rest in itertools.product(i.elements(), repeat=h.order - 1):
        theta = (0,) + rest
        ok = True
        for hh in h.elements():
            ti = i.inverses[theta[hh]]
            if any(
                t2.mu[hh][y] != i.table[i.table[ti][t1.mu[hh][y]]][theta[hh]]
                for y in i.elements()
            ):
                ok = False
                break
        if not ok:
            continue
        for h1 in h.elements():
            for h2 in h.elements():
                lhs = t2.tau[h1][h2]
                rhs = i.table[
                    i.table[
                        i.table[i.inverses[theta[h.table[h1][h2]]]][t1.tau[h1][h2]]
                    ][t1.mu[h2][theta[h1]]]
                ][theta[h2]]
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        for hh in h.elements():
            g1h = t1.g[hh]
            conj = i.table[i.table[i.inverses[g1h]][t1.mu[rh[hh]][theta[hh]]]][g1h]
            lhs = i.table[theta[rh[hh]]][t2.g[hh]]
            rhs = i.table[g1h][ri[conj]]
            if lhs != rhs:
                ok = False
                break
        if ok:
            return theta
    return None


# ---------------------------------------------------------------------------
# couplings and the census of triplets over a coupling
# ---------------------------------------------------------------------------


@dataclass
class Coupling:
    """A map H -> Out(I), stored as canonical Inn-coset ids inside Aut(I)."""

    aut: AutomorphismGroup
    inner: tuple[int, ...]
    coset_ids: tuple[int, ...]

    def coset_members(self, h: int) -> list[int]:
        """Aut-indices in the coset over h, sorted."""
        rep = self.coset_ids[h]
        return sorted({self.aut.group.table[k][rep] for k in self.inner})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Coupling)
            and self.aut.base.table == other.aut.base.table
            and self.coset_ids == other.coset_ids
        )


def _coset_id(aut: AutomorphismGroup, inner, aut_index: int) -> int:
    return min(aut.group.table[k][aut_index] for k in inner)


def coupling_of(
    t: Triplet, h_group: FiniteGroup, i_group: FiniteGroup, aut: AutomorphismGroup | None = None
) -> Coupling:
    """Reduce mu modulo Inn(I); an invariant of the extension class."""
    if aut is None:
        aut = automorphisms(i_group)
    inner = tuple(aut.inner_indices())
    ids = tuple(
        _coset_id(aut, inner, aut.index_of(GroupMap(i_group, i_group, tuple(row))))
        for row in t.mu
    )
    return Coupling(aut, inner, ids)


def trivial_coupling(h_group: FiniteGroup, i_group: FiniteGroup,
                     aut: AutomorphismGroup | None = None) -> Coupling:
    if aut is None:
        aut = automorphisms(i_group)
    inner = tuple(aut.inner_indices())
    ids = tuple(_coset_id(aut, inner, 0) for _ in h_group.elements())
    return Coupling(aut, inner, ids)


def is_coupling(c: Coupling, h_group: FiniteGroup) -> bool:
    """The induced map into Out(I) must respect products (anti, in the
    function-composition convention used for Aut here)."""
    aut = c.aut
    inner = c.inner
    for h1 in h_group.elements():
        for h2 in h_group.elements():
            comp = aut.group.table[c.coset_ids[h2]][c.coset_ids[h1]]
            if c.coset_ids[h_group.table[h1][h2]] != _coset_id(aut, inner, comp):
                return False
    return True


@dataclass
class TripletCensus:
    """Exhaustive classification of associated triplets over one coupling."""

    h_rb: RotaBaxterOperator
    i_rb: RotaBaxterOperator
    coupling: Coupling
    triplets: list[Triplet]
    classes: list[list[int]]
    representatives: list[Triplet]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_of(self, t: Triplet) -> int:
        """Census class index of a valid triplet (searched by equivalence)."""
        for ci, rep in enumerate(self.representatives):
            if triplets_equivalent(t, rep, self.h_rb, self.i_rb) is not None:
                return ci
        raise ValueError("triplet is not equivalent to any census class")


def h2_alpha(
    h_rb: RotaBaxterOperator,
    i_rb: RotaBaxterOperator,
    alpha: Coupling,
    budget: int = DEFAULT_TRIPLET_BUDGET,
) -> TripletCensus:
    """Enumerate all associated triplets with coupling alpha, up to equivalence.

    Candidates are Inn-coset lifts of alpha at each h (identity pinned at e),
    crossed with all normalized tau and g; each candidate is verified
    constructively.
    """
    h, i = h_rb.group, i_rb.group
    nh, ni = h.order, i.order
    lifts = [alpha.coset_members(hh) for hh in h.elements()]
    if 0 not in lifts[0]:
        raise ValueError("coupling must be trivial at the identity")
    total = 1
    for hh in range(1, nh):
        total *= len(lifts[hh])
    total *= ni ** ((nh - 1) ** 2) * ni ** (nh - 1)
    if total > budget:
        raise BudgetError(f"triplet census of size {total} exceeds budget {budget}")
    aut_tables = [alpha.aut.elements[k].images for k in range(len(alpha.aut.elements))]

    tau_slots = [(h1, h2) for h1 in range(1, nh) for h2 in range(1, nh)]
    valid: list[Triplet] = []
    for mu_choice in itertools.product(*lifts[1:]):
        mu = (tuple(i.elements()),) + tuple(aut_tables[k] for k in mu_choice)
        for tau_vals in itertools.product(i.elements(), repeat=len(tau_slots)):
            tau_tab = [[0] * nh for _ in range(nh)]
            for (h1, h2), v in zip(tau_slots, tau_vals):
                tau_tab[h1][h2] = v
            tau = tuple(tuple(row) for row in tau_tab)
            for g_vals in itertools.product(i.elements(), repeat=nh - 1):
                t = Triplet(mu, tau, (0,) + g_vals)
                if verify_triplet(t, h_rb, i_rb) is None:
                    valid.append(t)
    uf = UnionFind(len(valid))
    for a in range(len(valid)):
        for b in range(a + 1, len(valid)):
            if uf.find(a) == uf.find(b):
                continue
            if triplets_equivalent(valid[a], valid[b], h_rb, i_rb) is not None:
                uf.union(a, b)
    classes = uf.classes()
    reps = [min((valid[i] for i in cls), key=lambda t: t.key()) for cls in classes]
    return TripletCensus(h_rb, i_rb, alpha, valid, classes, reps)


# ---------------------------------------------------------------------------
# the free action of H2(H, Z(I)) on the census
# ---------------------------------------------------------------------------


def center_module(census: TripletCensus) -> tuple[RBModule, tuple[int, ...]]:
    """The module (Z(I), R_I|_Z) with the action induced by the census.

    Returns the module together with the list embedding Z-indices into I.
    Raises if Z(I) is not invariant under R_I, or if census members disagree
    on the induced action.
    """
    h_rb, i_rb = census.h_rb, census.i_rb
    i = i_rb.group
    z_elems = tuple(center(i))
    z_set = set(z_elems)
    for z in z_elems:
        if i_rb.images[z] not in z_set:
            raise ValueError("Z(I) is not invariant under R_I")
    z_index = {z: k for k, z in enumerate(z_elems)}
    z_table = [[z_index[i.table[a][b]] for b in z_elems] for a in z_elems]
    z_group = FiniteGroup(z_table, name=f"Z({i.name})")
    z_ri = tuple(z_index[i_rb.images[z]] for z in z_elems)
    actions = set()
    for t in census.representatives or census.triplets:
        act = tuple(
            tuple(z_index[t.mu[hh][z]] for z in z_elems) for hh in h_rb.group.elements()
        )
        actions.add(act)
    if len(actions) > 1:
        raise AssertionError("census members induce different actions on Z(I)")
    action = actions.pop()
    module = RBModule(h_rb, z_group, z_ri, action)
    return module, z_elems


def central_action(census: TripletCensus, budget: int = DEFAULT_TRIPLET_BUDGET) -> dict:
    """Action table of H2(H, Z(I)) on the census classes, with freeness check.

    The class [(tau', g')] sends [(mu, tau, g)] to [(mu, tau*tau', g*g')].
    """
    from .cohomology import b2_rbe, h2_rbe

    h_rb, i_rb = census.h_rb, census.i_rb
    h, i = h_rb.group, i_rb.group
    module, z_elems = center_module(census)
    h2 = h2_rbe(module, budget)
    b2 = b2_rbe(module, budget)

    def translated(t: Triplet, pair: CocyclePair) -> Triplet:
        tau = tuple(
            tuple(
                i.table[t.tau[h1][h2]][z_elems[pair.tau((h1, h2))]]
                for h2 in h.elements()
            )
            for h1 in h.elements()
        )
        g = tuple(
            i.table[t.g[hh]][z_elems[pair.g((hh,))]] for hh in h.elements()
        )
        return Triplet(t.mu, tau, g)

    action_table = []
    free = True
    witnesses = []
    for pi, rep_pair in enumerate(h2.representatives):
        row = []
        for ci, rep_t in enumerate(census.representatives):
            moved = translated(rep_t, rep_pair)
            if verify_triplet(moved, h_rb, i_rb) is not None:
                raise AssertionError("translated triplet is no longer valid")
            target = census.class_of(moved)
            row.append(target)
            if pi != 0 and target == ci:
                free = False
                witnesses.append({"h2_class": pi, "census_class": ci})
            # well-definedness: coboundary shifts of the pair act identically
            for b in b2:
                if census.class_of(translated(rep_t, rep_pair.add(b))) != target:
                    raise AssertionError("central action is not well-defined")
        action_table.append(row)
    identity_row = action_table[0]
    if identity_row != list(range(census.num_classes)):
        raise AssertionError("identity class does not act as the identity")
    # orbit census (transitivity is measured, never asserted)
    uf = UnionFind(census.num_classes)
    for row in action_table:
        for ci, target in enumerate(row):
            uf.union(ci, target)
    orbits = len(uf.classes())
    return {
        "h2_center_order": h2.order_h2,
        "num_classes": census.num_classes,
        "free": free,
        "orbits": orbits,
        "transitive": orbits == 1,
        "action": action_table,
        "witnesses": witnesses,
    }
