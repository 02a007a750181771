"""Automorphism-group machinery for extensions: the compatible-pair group,
the action on cocycle pairs, the Wells derivation, the kernel isomorphism
with Z1, and exactness of the resulting four-term sequence.
"""

from __future__ import annotations

from .groups import (
    FiniteGroup,
    GroupMap,
    automorphisms,
    compose,
    is_homomorphism,
)
from .cohomology import Cochain, CocyclePair, H2Result, RBModule, h2_rbe, z1_rbe
from .extensions import AbelianExtension, extract_cocycle
from .operators import RotaBaxterOperator

DEFAULT_AUT_BOUND = 64


def rb_automorphisms(
    g: FiniteGroup, op: RotaBaxterOperator, bound: int = DEFAULT_AUT_BOUND
) -> list[GroupMap]:
    """Automorphisms commuting with the operator, in canonical order."""
    auts = automorphisms(g, bound=bound)
    return [
        f
        for f in auts.elements
        if all(f.images[op.images[x]] == op.images[f.images[x]] for x in g.elements())
    ]


def aut_I(ext: AbelianExtension, bound: int = DEFAULT_AUT_BOUND) -> list[GroupMap]:
    """Rota-Baxter automorphisms of E that map the kernel copy into itself."""
    kernel = set(ext.include.images)
    return [
        f
        for f in rb_automorphisms(ext.E, ext.operator, bound)
        if all(f.images[x] in kernel for x in kernel)
    ]


def gamma_parts(ext: AbelianExtension, gamma: GroupMap) -> tuple[GroupMap, GroupMap]:
    """(gamma_H, gamma_I): the induced maps on H and on I.

    gamma_H(h) = project(gamma(section(h))); independent of the st-section.
    """
    m = ext.module
    inc_inv = {img: y for y, img in enumerate(ext.include.images)}
    gh = tuple(
        ext.project.images[gamma.images[ext.section.images[h]]] for h in m.H.elements()
    )
    gi = tuple(inc_inv[gamma.images[ext.include.images[y]]] for y in m.I.elements())
    return GroupMap(m.H, m.H, gh), GroupMap(m.I, m.I, gi)


def rho(ext: AbelianExtension, bound: int = DEFAULT_AUT_BOUND):
    """[(gamma, gamma_H, gamma_I)] over Aut_I(E, R_E)."""
    return [(f, *gamma_parts(ext, f)) for f in aut_I(ext, bound)]


def aut_HI(ext: AbelianExtension, bound: int = DEFAULT_AUT_BOUND) -> list[GroupMap]:
    """Kernel of rho: automorphisms inducing the identity on both H and I."""
    idh = tuple(ext.module.H.elements())
    idi = tuple(ext.module.I.elements())
    out = []
    for f in aut_I(ext, bound):
        gh, gi = gamma_parts(ext, f)
        if gh.images == idh and gi.images == idi:
            out.append(f)
    return out


def c_mu(
    module: RBModule,
    aut_h: list[GroupMap] | None = None,
    aut_i: list[GroupMap] | None = None,
    bound: int = DEFAULT_AUT_BOUND,
) -> list[tuple[GroupMap, GroupMap]]:
    """Pairs (phi, psi) of operator-automorphisms with mu_h = psi^-1 mu_{phi(h)} psi."""
    if aut_h is None:
        aut_h = rb_automorphisms(module.H, module.hop, bound)
    if aut_i is None:
        aut_i = rb_automorphisms(
            module.I, RotaBaxterOperator(module.I, module.ri), bound
        )
    out = []
    for phi in aut_h:
        for psi in aut_i:
            if all(
                module.action[phi.images[h]][psi.images[y]]
                == psi.images[module.action[h][y]]
                for h in module.H.elements()
                for y in module.I.elements()
            ):
                out.append((phi, psi))
    out.sort(key=lambda c: (c[0].images, c[1].images))
    return out


def in_c_mu(module: RBModule, phi: GroupMap, psi: GroupMap) -> bool:
    return all(
        module.action[phi.images[h]][psi.images[y]] == psi.images[module.action[h][y]]
        for h in module.H.elements()
        for y in module.I.elements()
    )


def act_on_pair(
    module: RBModule, c: tuple[GroupMap, GroupMap], pair: CocyclePair
) -> CocyclePair:
    """(tau, g)^(phi, psi): twist arguments by phi and values by psi^-1."""
    phi, psi = c
    if not in_c_mu(module, phi, psi):
        raise ValueError("pair (phi, psi) is not in C_mu")
    psi_inv = [0] * module.I.order
    for y, img in enumerate(psi.images):
        psi_inv[img] = y
    tau = Cochain.from_callable(
        module, 2, lambda h1, h2: psi_inv[pair.tau((phi.images[h1], phi.images[h2]))]
    )
    g = Cochain.from_callable(module, 1, lambda h: psi_inv[pair.g((phi.images[h],))])
    return CocyclePair(tau, g)


def compose_pairs(c1, c2):
    """(phi1, psi1)(phi2, psi2) componentwise; cochain twisting is a right action."""
    return (compose(c1[0], c2[0]), compose(c1[1], c2[1]))


def twist_extension(
    ext: AbelianExtension, c: tuple[GroupMap, GroupMap]
) -> AbelianExtension:
    """The same carrier read through inclusion i psi and projection phi^-1 pi.

    Its extracted pair equals act_on_pair(c, pair); used to cross-check the
    cochain-level action against the extension-level one.
    """
    phi, psi = c
    m = ext.module
    phi_inv = [0] * m.H.order
    for h, img in enumerate(phi.images):
        phi_inv[img] = h
    include = compose(ext.include, psi)
    project = GroupMap(ext.E, m.H, tuple(phi_inv[ext.project.images[x]] for x in ext.E.elements()))
    section = GroupMap(m.H, ext.E, tuple(ext.section.images[phi.images[h]] for h in m.H.elements()))
    twisted = AbelianExtension(
        module=m,
        E=ext.E,
        operator=ext.operator,
        include=include,
        project=project,
        section=section,
        pair=ext.pair,
    )
    twisted.pair = extract_cocycle(twisted)
    return twisted


def wells_map(
    ext: AbelianExtension,
    h2: H2Result | None = None,
    cmu: list[tuple[GroupMap, GroupMap]] | None = None,
):
    """omega(E): for each c in C_mu the H2 class with [E]^c = [E]^{omega(c)}.

    Since the translation action is free and transitive on classes, this is
    the class of (pair^c - pair).
    """
    m = ext.module
    if h2 is None:
        h2 = h2_rbe(m)
    if cmu is None:
        cmu = c_mu(m)
    base = ext.pair
    out = []
    for c in cmu:
        moved = act_on_pair(m, c, base)
        out.append((c, h2.class_of(moved.sub(base))))
    return out


# ---------------------------------------------------------------------------
# Aut^{H,I}(E, R_E) ~ Z1
# ---------------------------------------------------------------------------


def eta(ext: AbelianExtension, lam: Cochain) -> GroupMap:
    """The automorphism (h, y) -> (h, lam(h) + y) attached to a derivation."""
    m = ext.module
    ni = m.I.order
    images = tuple(
        h * ni + m.I.table[lam((h,))][y] for h in m.H.elements() for y in m.I.elements()
    )
    return GroupMap(ext.E, ext.E, images)


def zeta(ext: AbelianExtension, gamma: GroupMap) -> Cochain:
    """The derivation h -> kernel coordinate of s(h)^-1 gamma(s(h))."""
    m, e = ext.module, ext.E
    inc_inv = {img: y for y, img in enumerate(ext.include.images)}
    return Cochain.from_callable(
        m,
        1,
        lambda h: inc_inv[
            e.table[e.inverses[ext.section.images[h]]][gamma.images[ext.section.images[h]]]
        ],
    )


def z1_iso_check(ext: AbelianExtension, bound: int = DEFAULT_AUT_BOUND) -> dict:
    """Verify eta/zeta are mutually inverse group isomorphisms Z1 ~ Aut^{H,I}."""
    m = ext.module
    z1 = z1_rbe(m)
    hi = aut_HI(ext, bound)
    eta_images = {}
    ok = True
    for lam in z1:
        f = eta(ext, lam)
        if not is_homomorphism(f):
            ok = False
        if not all(
            f.images[ext.operator.images[x]] == ext.operator.images[f.images[x]]
            for x in ext.E.elements()
        ):
            ok = False
        back = zeta(ext, f)
        if back.value_vector() != lam.value_vector():
            ok = False
        eta_images[f.images] = lam
    if {f.images for f in hi} != set(eta_images):
        ok = False
    for f in hi:
        lam = zeta(ext, f)
        if eta(ext, lam).images != f.images:
            ok = False
    # eta is a homomorphism: pointwise sums map to compositions
    for a in z1:
        for b in z1:
            if eta(ext, a.add(b)).images != compose(eta(ext, a), eta(ext, b)).images:
                ok = False
    return {"z1_order": len(z1), "autHI_order": len(hi), "isomorphic": ok}


# ---------------------------------------------------------------------------
# exactness report
# ---------------------------------------------------------------------------


def check_wells_exactness(
    ext: AbelianExtension,
    bound: int = DEFAULT_AUT_BOUND,
    budget: int | None = None,
) -> dict:
    """Verify 0 -> Z1 -> Aut_I(E) -> C_mu -> H2 at every joint, with witnesses."""
    m = ext.module
    cohomology_kwargs = {} if budget is None else {"budget": budget}
    h2 = h2_rbe(m, **cohomology_kwargs)
    cmu = c_mu(m, bound=bound)
    auti = aut_I(ext, bound)
    hi = aut_HI(ext, bound)
    z1 = z1_rbe(m, **cohomology_kwargs)
    witnesses = []

    iso = z1_iso_check(ext, bound)
    exact_at_autI = iso["isomorphic"]
    if not exact_at_autI:
        witnesses.append({"joint": "autI", "reason": "Z1 does not match Ker(rho)"})

    rho_list = rho(ext, bound)
    image_rho = {(gh.images, gi.images) for _, gh, gi in rho_list}
    cmu_keys = {(phi.images, psi.images) for phi, psi in cmu}
    if not image_rho <= cmu_keys:
        witnesses.append({"joint": "cmu", "reason": "Im(rho) not inside C_mu"})

    omega = wells_map(ext, h2, cmu)
    zero_class = h2.class_of(CocyclePair.zero(m))
    kernel_omega = {
        (c[0].images, c[1].images)
        for c, cls in omega
        if cls.key() == zero_class.key()
    }
    exact_at_cmu = image_rho == kernel_omega
    if not exact_at_cmu:
        only_rho = sorted(image_rho - kernel_omega)
        only_ker = sorted(kernel_omega - image_rho)
        witnesses.append(
            {
                "joint": "cmu",
                "reason": "Im(rho) != Ker(omega)",
                "im_rho_only": [list(map(list, k)) for k in only_rho[:3]],
                "ker_omega_only": [list(map(list, k)) for k in only_ker[:3]],
            }
        )

    omega_by_key = {
        (c[0].images, c[1].images): (c, cls) for c, cls in omega
    }
    derivation_ok = True
    for c1 in cmu:
        for c2 in cmu:
            c12 = compose_pairs(c1, c2)
            _, lhs = omega_by_key[(c12[0].images, c12[1].images)]
            cls1 = omega_by_key[(c1[0].images, c1[1].images)][1]
            cls2 = omega_by_key[(c2[0].images, c2[1].images)][1]
            rhs = h2.class_of(act_on_pair(m, c2, cls1).add(cls2))
            if lhs.key() != rhs.key():
                derivation_ok = False
                witnesses.append(
                    {
                        "joint": "derivation",
                        "c1": [list(c1[0].images), list(c1[1].images)],
                        "c2": [list(c2[0].images), list(c2[1].images)],
                    }
                )
    return {
        "z1_order": len(z1),
        "autI_order": len(auti),
        "autHI_order": len(hi),
        "cmu_order": len(cmu),
        "h2_order": h2.order_h2,
        "exact_at_autI": exact_at_autI,
        "exact_at_cmu": exact_at_cmu,
        "omega_is_derivation": derivation_ok,
        "witnesses": witnesses,
    }
