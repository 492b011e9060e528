"""
Fully commutative elements, star reducibility and canonical bases of
generalized Temperley-Lieb algebras.

>>> from coxstar import family_graph, fc_element, star_up
>>> w = fc_element(family_graph("B2"), [1, 0])
>>> star_up(w, (0, 1), "left").word
(0, 1, 0)
"""

from .classify import classify_star_reducible, counterexample_word
from .elements import (
    ElementError, FcElement, enumerate_fc, enumerate_group, fc_element,
    is_reduced_fc, is_weakly_complex, normal_shape_case, tits_is_reduced,
)
from .graph import INF, CoxeterGraph, GraphError, family_graph, graph_from_edges, parse_family
from .hinv import InvariantViolation, h_value, is_acyclic
from .laurent import LaurentInt, delta, one, vpow, zero
from .star import audit_graph, star_down, star_reduce_path, star_up, string_position
from .tl import TlElement, algebra, c_of, reduce_b_monomial, structure_constants, ttilde_of
from .traces import CapExceeded, Trace, TraceError, cartier_foata

__version__ = "0.1.0"
