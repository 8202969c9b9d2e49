"""Morphic, ea-morphic and self-dual finite p-groups."""

from ._core import (
    FiniteGroup,
    MorphicError,
    __version__,
    all_maximal_isomorphic,
    all_subgroups,
    are_isomorphic,
    catalog,
    center,
    derived_subgroup,
    extract_triple,
    frattini_subgroup,
    images_properties,
    is_abelian,
    is_ea_morphic,
    is_homocyclic,
    is_morphic,
    is_self_dual,
    k_subgroup,
    maximal_subgroups,
    min_generators,
    normal_subgroups,
    quotient,
    reverify,
    run_cli,
    search_triples,
    subgroup_as_group,
    verify_morphic_triple,
    zset_size,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
