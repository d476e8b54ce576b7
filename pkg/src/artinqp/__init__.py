"""Exact tools for deciding quasi-projectivity of even Artin groups."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .graph import LabeledGraph, validate_graph
from .qpdecide import NotQP, QP, decide_and_verify, decide_qp

__all__ = ["BACKEND", "LabeledGraph", "NotQP", "QP", "__version__", "decide_and_verify",
           "decide_qp", "validate_graph"]
