"""Finite Heyting algebras, upset models and the intuitionistic logic they interpret."""

from .errors import (
    ArgumentError, ConsistencyError, FIPError, ParseError, ResourceError, SizeLimitError,
    StructureError, WorkbenchError,
)
from .filters import Filter, generated_filter, prime_filters, prime_representation
from .lattice import FiniteLattice, HeytingAlgebra, chain_algebra, implication_table, interval
from .logic.ipc import ipc_decide
from .logic.semantics import KripkeModel, Valuation, evaluate, validity
from .logic.syntax import parse
from .morphisms import PosetMap, cc_power, cc_punctured, is_cone_cover
from .omega import FinCofin, OmegaElem, omega_impl, theorem_k_check
from .order import Poset, open_algebra, power_poset

__version__ = "0.1.0"
