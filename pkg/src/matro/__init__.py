"""Small-matroid toolkit: weak maps, Tutte polynomials, relative freedom of elements,
and exhaustive verification over catalogs of matroids on at most 16 elements."""

from .canonical import CanonicalForm, canonical_form, is_isomorphic
from .constructions import (
    contract,
    counterexample_sec4,
    delete,
    direct_sum,
    dual,
    figure2_example,
    free_extension,
    minor,
    parallel_connection,
    relax,
    restrict,
    truncation,
    two_sum,
    uniform,
)
from .core import Matroid, validate
from .errors import MatroidError
from .fileformat import format_matroid, parse_matroid
from .order import are_clones, find_rp_weak_map, freer_than, is_weak_map
from .tutte import TuttePoly, tutte, tutte_delcon, tutte_subset_expansion

__version__ = "0.1.0"
