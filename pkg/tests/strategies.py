from functools import lru_cache

from hypothesis import strategies as st

from perfectcodes.codes import PairInstance
from perfectcodes.groups import all_subgroups
from perfectcodes.named_groups import (
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    quaternion,
    symmetric,
)
from perfectcodes.perms import Permutation


@st.composite
def permutations(draw, max_degree=7, degree=None):
    if degree is None:
        degree = draw(st.integers(min_value=1, max_value=max_degree))
    return Permutation(draw(st.permutations(range(degree))))


@lru_cache(maxsize=None)
def small_groups():
    return (
        cyclic(4),
        cyclic(6),
        dihedral(4),
        dihedral(8),
        dihedral(12),
        quaternion(),
        dicyclic(12),
        alternating(4),
        symmetric(3),
        symmetric(4),
    )


@lru_cache(maxsize=None)
def subgroups_of(G):
    return tuple(all_subgroups(G))


@st.composite
def subgroup_pairs(draw):
    """(G, A) with A <= G."""
    G = draw(st.sampled_from(small_groups()))
    A = draw(st.sampled_from(subgroups_of(G)))
    return G, A


@st.composite
def pair_instances(draw):
    G, A = draw(subgroup_pairs())
    H = draw(st.sampled_from([K for K in subgroups_of(G) if K <= A]))
    return PairInstance(G, A, H)
