"""Cochain complexes for a Rota-Baxter group acting on an abelian one.

Carries the plain (dot) and circle coboundaries, the combined complexes, the
module condition, the maps Phi1/Phi2, the degree 1..3 total complex with
d1/d2, and brute-force computation of Z1, Z2, B2 and H2.

Sign conventions (each forced by the cochain-complex property and by the
extension roundtrip, see the delta/phi2/d1 docstrings): the coboundary's last
term carries (-1)^(n+1); d1(theta) = (delta theta, +Phi1 theta); Phi2 is
R_I(mu(four-term sum)) - f(R_H-, R_H-).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .groups import BudgetError, FiniteGroup, GroupMap
from .operators import RotaBaxterOperator, induced_circle_group

DEFAULT_COHOMOLOGY_BUDGET = 10**7


# ---------------------------------------------------------------------------
# modules over a Rota-Baxter group
# ---------------------------------------------------------------------------


def rb_module_witness(hop: RotaBaxterOperator, igroup: FiniteGroup, ri, action):
    """First violated module axiom, or None.

    Checks: I abelian; R_I an endomorphism; each mu_h an automorphism;
    mu an anti-homomorphism (mu_{h1 h2} = mu_{h2} mu_{h1}); and the
    compatibility condition
    mu_{R(h)}(R_I(z)) = R_I(mu_{h R(h)}(z + R_I(z)) - mu_{R(h)}(R_I(z))).
    """
    h = hop.group
    if not igroup.is_abelian:
        return ("abelian", ())
    ri = tuple(ri)
    for a in igroup.elements():
        for b in igroup.elements():
            if ri[igroup.table[a][b]] != igroup.table[ri[a]][ri[b]]:
                return ("ri-endomorphism", (a, b))
    action = tuple(tuple(row) for row in action)
    if len(action) != h.order:
        return ("action-shape", ())
    for hh, row in enumerate(action):
        if sorted(row) != list(igroup.elements()):
            return ("action-bijective", (hh,))
        for a in igroup.elements():
            for b in igroup.elements():
                if row[igroup.table[a][b]] != igroup.table[row[a]][row[b]]:
                    return ("action-endomorphism", (hh, a, b))
    for h1 in h.elements():
        for h2 in h.elements():
            prod = action[h.table[h1][h2]]
            comp = tuple(action[h2][action[h1][y]] for y in igroup.elements())
            if tuple(prod) != comp:
                return ("action-anti-homomorphism", (h1, h2))
    rh = hop.images
    for hh in h.elements():
        mu_rh = action[rh[hh]]
        mu_hrh = action[h.table[hh][rh[hh]]]
        for z in igroup.elements():
            lhs = mu_rh[ri[z]]
            inner = igroup.table[mu_hrh[igroup.table[z][ri[z]]]][
                igroup.inverses[mu_rh[ri[z]]]
            ]
            if lhs != ri[inner]:
                return ("module-condition", (hh, z))
    return None


def is_rb_module(hop: RotaBaxterOperator, igroup: FiniteGroup, ri, action) -> bool:
    return rb_module_witness(hop, igroup, ri, action) is None


def trivial_action(h: FiniteGroup, igroup: FiniteGroup):
    return tuple(tuple(igroup.elements()) for _ in h.elements())


class RBModule:
    """An abelian Rota-Baxter group (I, R_I) with a right (H, R_H)-action."""

    def __init__(self, hop: RotaBaxterOperator, igroup: FiniteGroup, ri, action,
                 check: bool = True):
        self.hop = hop
        self.H = hop.group
        self.rh = hop.images
        self.I = igroup
        self.ri = tuple(ri)
        self.action = tuple(tuple(row) for row in action)
        if check:
            w = rb_module_witness(hop, igroup, ri, action)
            if w is not None:
                raise ValueError(f"not a Rota-Baxter module: {w[0]} fails at {w[1]}")

    @cached_property
    def circle(self) -> FiniteGroup:
        """(H, o_{R_H}), the circle group of the acting Rota-Baxter group."""
        return induced_circle_group(self.H, self.hop)

    def act(self, h: int, y: int) -> int:
        return self.action[h][y]

    def ri_of(self, y: int) -> int:
        return self.ri[y]

    def iadd(self, a: int, b: int) -> int:
        return self.I.table[a][b]

    def ineg(self, a: int) -> int:
        return self.I.inverses[a]

    def isub(self, a: int, b: int) -> int:
        return self.I.table[a][self.I.inverses[b]]

    def mu_commutes_with_ri(self) -> bool:
        """Whether every mu_h is an automorphism of (I, R_I)."""
        return all(
            self.action[h][self.ri[y]] == self.ri[self.action[h][y]]
            for h in self.H.elements()
            for y in self.I.elements()
        )

    def __repr__(self) -> str:
        return f"RBModule(H={self.H.name}, I={self.I.name})"


# ---------------------------------------------------------------------------
# normalized cochains
# ---------------------------------------------------------------------------


def nondegenerate_tuples(h_order: int, n: int):
    return itertools.product(range(1, h_order), repeat=n)


class Cochain:
    """A function H^n -> I vanishing whenever any argument is the identity."""

    __slots__ = ("module", "arity", "values")

    def __init__(self, module: RBModule, arity: int, values: dict):
        if arity < 1:
            raise ValueError("cochain arity must be >= 1")
        self.module = module
        self.arity = arity
        self.values = dict(values)
        expected = (module.H.order - 1) ** arity
        if len(self.values) != expected:
            raise ValueError(f"cochain table has {len(self.values)} of {expected} entries")

    @classmethod
    def zero(cls, module: RBModule, arity: int) -> "Cochain":
        vals = {t: 0 for t in nondegenerate_tuples(module.H.order, arity)}
        return cls(module, arity, vals)

    @classmethod
    def from_callable(cls, module: RBModule, arity: int, fn) -> "Cochain":
        vals = {t: fn(*t) for t in nondegenerate_tuples(module.H.order, arity)}
        return cls(module, arity, vals)

    @classmethod
    def from_vector(cls, module: RBModule, arity: int, vector) -> "Cochain":
        keys = list(nondegenerate_tuples(module.H.order, arity))
        if len(vector) != len(keys):
            raise ValueError("vector length does not match cochain table")
        return cls(module, arity, dict(zip(keys, vector)))

    def __call__(self, args) -> int:
        if 0 in args:
            return 0
        return self.values[tuple(args)]

    def value_vector(self) -> tuple[int, ...]:
        return tuple(
            self.values[t] for t in nondegenerate_tuples(self.module.H.order, self.arity)
        )

    def key(self) -> tuple[int, ...]:
        return self.value_vector()

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values.values())

    def add(self, other: "Cochain") -> "Cochain":
        self._match(other)
        m = self.module
        return Cochain(m, self.arity, {t: m.iadd(v, other.values[t]) for t, v in self.values.items()})

    def neg(self) -> "Cochain":
        m = self.module
        return Cochain(m, self.arity, {t: m.ineg(v) for t, v in self.values.items()})

    def sub(self, other: "Cochain") -> "Cochain":
        return self.add(other.neg())

    def _match(self, other: "Cochain") -> None:
        if self.arity != other.arity or self.module is not other.module:
            if self.arity != other.arity or self.module.H.order != other.module.H.order:
                raise ValueError("cochain mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.arity == other.arity
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.arity, self.value_vector()))

    def __repr__(self) -> str:
        return f"Cochain(arity={self.arity}, {self.values})"

    def to_dict(self) -> dict:
        vals = {
            "(" + ",".join(str(x) for x in t) + ")": v
            for t, v in sorted(self.values.items())
            if v != 0
        }
        return {"arity": self.arity, "values": vals}

    @classmethod
    def from_dict(cls, module: RBModule, data: dict) -> "Cochain":
        arity = int(data["arity"])
        vals = {t: 0 for t in nondegenerate_tuples(module.H.order, arity)}
        for key, v in data.get("values", {}).items():
            t = tuple(int(x) for x in key.strip("()").split(",") if x != "")
            if len(t) != arity:
                raise ValueError(f"cochain key {key!r} has wrong arity")
            if 0 in t:
                raise ValueError(f"cochain key {key!r} is degenerate")
            vals[t] = int(v)
        return cls(module, arity, vals)


def enumerate_cochains(module: RBModule, arity: int, budget: int | None = None):
    """All cochains H^arity -> I in lexicographic value order."""
    keys = list(nondegenerate_tuples(module.H.order, arity))
    total = module.I.order ** len(keys)
    if budget is not None and total > budget:
        raise BudgetError(f"cochain space of size {total} exceeds budget {budget}")
    for vec in itertools.product(module.I.elements(), repeat=len(keys)):
        yield Cochain(module, arity, dict(zip(keys, vec)))


# ---------------------------------------------------------------------------
# coboundaries
# ---------------------------------------------------------------------------


def _coboundary(f: Cochain, prod, act) -> Cochain:
    """Normalized coboundary with the bar-resolution sign (-1)^(n+1) on the
    action term; any other sign breaks d(d(f)) = 0 already for trivial
    actions."""
    m, n = f.module, f.arity

    def value(*args):
        total = f(args[1:])
        for k in range(1, n + 1):
            merged = args[: k - 1] + (prod(args[k - 1], args[k]),) + args[k + 1 :]
            term = f(merged)
            if k % 2 == 1:
                term = m.ineg(term)
            total = m.iadd(total, term)
        last = act(args[n], f(args[:n]))
        if n % 2 == 0:
            last = m.ineg(last)
        return m.iadd(total, last)

    return Cochain.from_callable(m, n + 1, value)


def delta(f: Cochain) -> Cochain:
    """Coboundary of (H, .) acting through mu."""
    m = f.module
    return _coboundary(f, lambda a, b: m.H.table[a][b], lambda h, y: m.action[h][y])


def partial(f: Cochain) -> Cochain:
    """Coboundary of the circle group (H, o) acting through h -> mu_{R_H(h)}."""
    m = f.module
    circ = m.circle.table
    return _coboundary(f, lambda a, b: circ[a][b], lambda h, y: m.action[m.rh[h]][y])


def validate_circle_action(module: RBModule, sigma) -> None:
    """sigma must be an anti-homomorphism of (H, o) into Aut(I) with
    R_I sigma_h = mu_{R_H(h)} R_I."""
    sigma = tuple(tuple(row) for row in sigma)
    if len(sigma) != module.H.order:
        raise ValueError("circle action has wrong length")
    for h, row in enumerate(sigma):
        gm = GroupMap(module.I, module.I, tuple(row))
        from .groups import is_bijective, is_homomorphism

        if not (is_bijective(gm) and is_homomorphism(gm)):
            raise ValueError(f"sigma_{h} is not an automorphism of I")
    circ = module.circle.table
    for h1 in module.H.elements():
        for h2 in module.H.elements():
            prod = sigma[circ[h1][h2]]
            comp = tuple(sigma[h2][sigma[h1][y]] for y in module.I.elements())
            if tuple(prod) != comp:
                raise ValueError(f"sigma is not anti-homomorphic at ({h1}, {h2})")
    for h in module.H.elements():
        for y in module.I.elements():
            if module.ri[sigma[h][y]] != module.action[module.rh[h]][module.ri[y]]:
                raise ValueError(f"intertwining R_I sigma = mu_R R_I fails at ({h}, {y})")


def mu_twist_action(module: RBModule):
    """The canonical circle action sigma_h = mu_{R_H(h)}."""
    return tuple(module.action[module.rh[h]] for h in module.H.elements())


def partial_circ(f: Cochain, sigma=None) -> Cochain:
    """Coboundary of (H, o) acting through an explicit circle action sigma."""
    m = f.module
    if sigma is None:
        sigma = mu_twist_action(m)
    else:
        validate_circle_action(m, sigma)
    sigma = tuple(tuple(row) for row in sigma)
    circ = m.circle.table
    return _coboundary(f, lambda a, b: circ[a][b], lambda h, y: sigma[h][y])


def bar(f: Cochain) -> Cochain:
    """f-bar: precompose every argument with R_H."""
    m = f.module
    return Cochain.from_callable(m, f.arity, lambda *args: f(tuple(m.rh[a] for a in args)))


def ri_after(f: Cochain) -> Cochain:
    """R_I composed after f."""
    m = f.module
    return Cochain.from_callable(m, f.arity, lambda *args: m.ri[f(args)])


# ---------------------------------------------------------------------------
# combined complexes C^n_RB = C^n + C^(n-1) + C^n
# ---------------------------------------------------------------------------


def _require_rb_automorphisms(m: RBModule) -> None:
    if not m.mu_commutes_with_ri():
        raise ValueError("combined complex needs every mu_h to commute with R_I")


def _middle_sign(n: int, m: RBModule, term: Cochain) -> Cochain:
    return term if (n + 1) % 2 == 0 else term.neg()


def delta_rb(element):
    """Combined coboundary; pairs (f, g) at degree 1, triples (f, g, h) above.

    Degree 1 maps to (delta f, bar f - R_I g, partial g); the middle term uses
    the minus variant, which is the one making the complex square to zero.
    """
    if len(element) == 2:
        f, g = element
        m = f.module
        _require_rb_automorphisms(m)
        if f.arity != 1 or g.arity != 1:
            raise ValueError("degree-1 element must be a pair of 1-cochains")
        return (delta(f), bar(f).sub(ri_after(g)), partial(g))
    f, g, h = element
    m = f.module
    _require_rb_automorphisms(m)
    n = f.arity
    if n < 2 or g.arity != n - 1 or h.arity != n:
        raise ValueError("triple must have arities (n, n-1, n) with n >= 2")
    middle = partial(g).add(_middle_sign(n, m, bar(f).sub(ri_after(h))))
    return (delta(f), middle, partial(h))


def partial_rb(element, sigma=None):
    """Like delta_rb but the third slot uses the sigma-twisted circle coboundary."""
    if len(element) == 2:
        f, g = element
        m = f.module
        _require_rb_automorphisms(m)
        if f.arity != 1 or g.arity != 1:
            raise ValueError("degree-1 element must be a pair of 1-cochains")
        return (delta(f), bar(f).sub(ri_after(g)), partial_circ(g, sigma))
    f, g, h = element
    m = f.module
    _require_rb_automorphisms(m)
    n = f.arity
    if n < 2 or g.arity != n - 1 or h.arity != n:
        raise ValueError("triple must have arities (n, n-1, n) with n >= 2")
    middle = partial(g).add(_middle_sign(n, m, bar(f).sub(ri_after(h))))
    return (delta(f), middle, partial_circ(h, sigma))


# ---------------------------------------------------------------------------
# the degree <= 3 total complex: TC^1 = C^1, TC^2 = C^2 + C^1, TC^3 = C^3 + C^2
# ---------------------------------------------------------------------------


def phi1(theta: Cochain) -> Cochain:
    """Phi1(theta)(h) = R_I(mu_{R_H(h)}(theta(h))) - theta(R_H(h))."""
    m = theta.module
    if theta.arity != 1:
        raise ValueError("phi1 takes a 1-cochain")

    def value(h):
        return m.isub(m.ri[m.act(m.rh[h], theta((h,)))], theta((m.rh[h],)))

    return Cochain.from_callable(m, 1, value)


def phi2(f: Cochain) -> Cochain:
    """The degree-2 companion of Phi1.

    Phi2(f) = R_I(mu_{R_H(h1)R_H(h2)}(four-term f sum)) - f(R_H(h1), R_H(h2)),
    with the twist applied to the whole sum.  Both the orientation and the
    bracketing are forced: the kernel of the degree-2 total coboundary must be
    exactly the set of pairs whose built extension operator satisfies the
    Rota-Baxter law, and the central-case square d1 Phi1 = Phi2 delta1 must
    commute.
    """
    m = f.module
    if f.arity != 2:
        raise ValueError("phi2 takes a 2-cochain")
    h, i = m.H, m.I
    rh = m.rh

    def value(h1, h2):
        r1, r2 = rh[h1], rh[h2]
        r1i = h.inverses[r1]
        a = f((h.table[h1][r1], h.table[h2][r1i]))
        b = m.act(h.table[h2][r1i], f((h1, r1)))
        c = f((h2, r1i))
        d = f((r1, r1i))
        total = i.table[i.table[a][b]][i.table[c][i.inverses[d]]]
        twisted = m.ri[m.act(h.table[r1][r2], total)]
        return m.isub(twisted, f((r1, r2)))

    return Cochain.from_callable(m, 2, value)


@dataclass(frozen=True)
class CocyclePair:
    """An element (tau, g) of TC^2 = C^2(H, I) + C^1(H, I)."""

    tau: Cochain
    g: Cochain

    def __post_init__(self):
        if self.tau.arity != 2 or self.g.arity != 1:
            raise ValueError("pair must have arities (2, 1)")

    def add(self, other: "CocyclePair") -> "CocyclePair":
        return CocyclePair(self.tau.add(other.tau), self.g.add(other.g))

    def neg(self) -> "CocyclePair":
        return CocyclePair(self.tau.neg(), self.g.neg())

    def sub(self, other: "CocyclePair") -> "CocyclePair":
        return CocyclePair(self.tau.sub(other.tau), self.g.sub(other.g))

    def key(self) -> tuple[int, ...]:
        return self.tau.value_vector() + self.g.value_vector()

    def is_zero(self) -> bool:
        return self.tau.is_zero() and self.g.is_zero()

    @classmethod
    def zero(cls, module: RBModule) -> "CocyclePair":
        return cls(Cochain.zero(module, 2), Cochain.zero(module, 1))

    def to_dict(self) -> dict:
        return {"tau": self.tau.to_dict(), "g": self.g.to_dict()}

    @classmethod
    def from_dict(cls, module: RBModule, data: dict) -> "CocyclePair":
        return cls(
            Cochain.from_dict(module, data["tau"]),
            Cochain.from_dict(module, data["g"]),
        )


def d1_rbe(theta: Cochain) -> CocyclePair:
    """d1(theta) = (delta1 theta, Phi1 theta).

    The + sign on Phi1 makes the image exactly the set of pair differences
    realized by changing the section of an extension, which the bijection
    between extension classes and H2 requires.  The (delta1, -Phi1) variant
    spans the same subgroup only when I has exponent 2.
    """
    if theta.arity != 1:
        raise ValueError("d1 takes a 1-cochain")
    return CocyclePair(delta(theta), phi1(theta))


def d2_rbe(pair: CocyclePair) -> tuple[Cochain, Cochain]:
    """d2(tau, g) = (delta2 tau, beta); the pair is a 2-cocycle iff both vanish.

    beta(h1,h2) = partial1(g) - R_I(mu_{h2 R(h2)}(g(h1)) - mu_{R(h2)}(g(h1)))
                  - Phi2(tau); this is exactly the constant part of the
    Rota-Baxter law on the extension built from (tau, g).
    """
    tau, g = pair.tau, pair.g
    m = tau.module
    h = m.H
    pg = partial(g)
    p2 = phi2(tau)

    def beta(h1, h2):
        gh1 = g((h1,))
        mid = m.ri[
            m.isub(m.act(h.table[h2][m.rh[h2]], gh1), m.act(m.rh[h2], gh1))
        ]
        return m.isub(m.isub(pg((h1, h2)), mid), p2((h1, h2)))

    return (delta(tau), Cochain.from_callable(m, 2, beta))


def is_one_cocycle(module: RBModule, theta: Cochain) -> bool:
    p = d1_rbe(theta)
    return p.tau.is_zero() and p.g.is_zero()


def is_two_cocycle(module: RBModule, pair: CocyclePair) -> bool:
    a, b = d2_rbe(pair)
    return a.is_zero() and b.is_zero()


# ---------------------------------------------------------------------------
# Z1, Z2, B2, H2 by brute force
# ---------------------------------------------------------------------------


def _check_budget(module: RBModule, budget: int) -> None:
    nh, ni = module.H.order, module.I.order
    total = ni ** ((nh - 1) ** 2 + (nh - 1))
    if total > budget:
        raise BudgetError(
            f"TC^2 space of size {total} exceeds budget {budget}; "
            "membership predicates still work at this size"
        )


def _verify_closed(elements, add, name: str) -> None:
    keyed = {e.key() for e in elements}
    for a in elements:
        for b in elements:
            if add(a, b).key() not in keyed:
                raise AssertionError(f"{name} is not closed under addition")


def z1_rbe(module: RBModule, budget: int = DEFAULT_COHOMOLOGY_BUDGET) -> list[Cochain]:
    """Kernel of d1: derivations lambda with lambda(R(h)) = R_I(mu_{R(h)}(lambda(h)))."""
    nh, ni = module.H.order, module.I.order
    if ni ** (nh - 1) > budget:
        raise BudgetError("TC^1 space exceeds budget")
    out = [t for t in enumerate_cochains(module, 1) if is_one_cocycle(module, t)]
    _verify_closed(out, lambda a, b: a.add(b), "Z1")
    return out


def z2_rbe(module: RBModule, budget: int = DEFAULT_COHOMOLOGY_BUDGET) -> list[CocyclePair]:
    """All 2-cocycle pairs, sorted by value vector."""
    _check_budget(module, budget)
    out = []
    for tau in enumerate_cochains(module, 2):
        dt = delta(tau)
        if not dt.is_zero():
            continue
        for g in enumerate_cochains(module, 1):
            pair = CocyclePair(tau, g)
            if is_two_cocycle(module, pair):
                out.append(pair)
    out.sort(key=lambda p: p.key())
    _verify_closed(out, lambda a, b: a.add(b), "Z2")
    return out


def b2_rbe(module: RBModule, budget: int = DEFAULT_COHOMOLOGY_BUDGET) -> list[CocyclePair]:
    """Image of d1, sorted by value vector."""
    nh, ni = module.H.order, module.I.order
    if ni ** (nh - 1) > budget:
        raise BudgetError("TC^1 space exceeds budget")
    seen = {}
    for theta in enumerate_cochains(module, 1):
        p = d1_rbe(theta)
        seen.setdefault(p.key(), p)
    out = [seen[k] for k in sorted(seen)]
    _verify_closed(out, lambda a, b: a.add(b), "B2")
    return out


@dataclass
class H2Result:
    """Second cohomology as canonical coset representatives of Z2 mod B2."""

    module: RBModule
    order_z2: int
    order_b2: int
    order_h2: int
    representatives: list[CocyclePair]
    _class_index: dict

    def class_of(self, pair: CocyclePair) -> CocyclePair:
        """Canonical representative of the coset of a 2-cocycle."""
        key = pair.key()
        rep = self._class_index.get(key)
        if rep is None:
            raise ValueError("pair is not a 2-cocycle of this module")
        return rep

    def to_dict(self) -> dict:
        return {
            "order_Z2": self.order_z2,
            "order_B2": self.order_b2,
            "order_H2": self.order_h2,
            "representatives": [p.to_dict() for p in self.representatives],
        }


def h2_rbe(module: RBModule, budget: int = DEFAULT_COHOMOLOGY_BUDGET) -> H2Result:
    """H2 = Z2/B2 with lexicographically least coset representatives."""
    z2 = z2_rbe(module, budget)
    b2 = b2_rbe(module, budget)
    z2_keys = {p.key() for p in z2}
    for b in b2:
        if b.key() not in z2_keys:
            raise AssertionError("B2 is not contained in Z2")
    if len(z2) % len(b2) != 0:
        raise AssertionError("|B2| does not divide |Z2|")
    class_index: dict = {}
    reps = []
    for p in z2:  # sorted, so the first unseen member of a coset is its least
        if p.key() in class_index:
            continue
        reps.append(p)
        for b in b2:
            q = p.add(b)
            class_index[q.key()] = p
    return H2Result(
        module=module,
        order_z2=len(z2),
        order_b2=len(b2),
        order_h2=len(z2) // len(b2),
        representatives=reps,
        _class_index=class_index,
    )
