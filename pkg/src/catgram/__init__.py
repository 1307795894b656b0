"""Basic categorial grammars, their reduction calculus, and an encoding of
context-free grammars into categorial grammars with unique category
assignment."""

__version__ = "0.1.0"

from .category import (
    Category,
    LeftDiv,
    Prim,
    RightDiv,
    count,
    denominators,
    format_category,
    numerators,
    parse_category,
    parse_category_string,
    phi,
    psi,
)
from .cfg import Cfg, cyk_member, is_gnf2, member_of, parse_cfg, to_cnf, to_gnf2
from .encoder import encode_grammar, member_via_encoding, uca_member
from .reduction import (
    brute_force_derivable,
    count_preserved_check,
    derivable_singletons,
    one_step,
    reducible_to,
    reduction_trees,
)
