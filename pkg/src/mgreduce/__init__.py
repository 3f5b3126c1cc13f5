"""Multigraph isomorphism reduced to additive code equivalence over GF(2^r)."""

from .codes import AdditiveCode, EquivalenceWitness
from .errors import GuardExceeded, InvalidWitness
from .field import FieldContext, choose_degree, make_field
from .multigraph import MultiGraph, VertexBijection
from .reduction import ReductionCode, build_generator, compute_length

__version__ = "0.1.0"
