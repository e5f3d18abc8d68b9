from .codes import (
    PairInstance,
    Status,
    Verdict,
    decide_pair,
    is_perfect_code_of_group,
    search_pair_transversal,
)
from .constructions import parse_family
from .informations import __author__, __version__
from .named_groups import parse_group

__all__ = [
    "PairInstance",
    "Status",
    "Verdict",
    "decide_pair",
    "is_perfect_code_of_group",
    "parse_family",
    "parse_group",
    "search_pair_transversal",
    "__author__",
    "__version__",
]
