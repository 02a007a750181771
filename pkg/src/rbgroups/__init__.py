"""Computing with Rota-Baxter operators of weight 1 on finite groups."""

from .groups import (
    AutomorphismGroup,
    AxiomError,
    BudgetError,
    FiniteGroup,
    GroupMap,
    automorphisms,
    center,
    direct_product,
    endomorphisms,
    group_from_dict,
    group_to_dict,
    inner_automorphism,
    is_anti_homomorphism,
    is_homomorphism,
    load_group,
    make_group,
    quotient,
    save_group,
)
from .operators import (
    RotaBaxterOperator,
    identity_operator,
    SkewBrace,
    enumerate_rb_operators,
    find_rb_inducing_brace,
    induced_circle_group,
    induced_skew_brace,
    inversion_operator,
    is_brace_morphism,
    is_rb_morphism,
    is_rb_operator,
    is_rb_subgroup,
    is_skew_brace,
    load_operator,
    operator_from_dict,
    operator_to_dict,
    rb_operator,
    rb_witness,
    skew_brace_witness,
    trivial_operator,
)
from .cohomology import (
    Cochain,
    CocyclePair,
    H2Result,
    RBModule,
    b2_rbe,
    bar,
    d1_rbe,
    d2_rbe,
    delta,
    delta_rb,
    enumerate_cochains,
    h2_rbe,
    is_rb_module,
    is_two_cocycle,
    partial,
    partial_circ,
    partial_rb,
    phi1,
    phi2,
    rb_module_witness,
    trivial_action,
    z1_rbe,
    z2_rbe,
)
from .extensions import (
    AbelianExtension,
    Coupling,
    ExtensionError,
    GeneralExtension,
    Triplet,
    TripletCensus,
    are_equivalent,
    build_abelian_extension,
    build_split_extension,
    build_triplet_extension,
    central_action,
    classify_abelian,
    coupling_of,
    extension_to_dict,
    extract_cocycle,
    extract_triplet,
    h2_alpha,
    st_sections,
    triplets_equivalent,
    trivial_coupling,
    verify_triplet,
)
from .wells import (
    act_on_pair,
    aut_HI,
    aut_I,
    c_mu,
    check_wells_exactness,
    eta,
    rb_automorphisms,
    rho,
    twist_extension,
    wells_map,
    z1_iso_check,
    zeta,
)

__version__ = "0.1.0"
