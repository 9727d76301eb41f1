"""Binary paint shop solver workbench.

Instances, colour encodings, classical heuristics, weighted max-cut and
Ising reductions, exact oracles, depth-1 variational engines, recursive
correlation rounding, and a seeded benchmark harness.
"""

from .instances import BpspInstance, generate_instance, validate_instance
from .encoding import expand, compress, swap_count
from .heuristics import greedy, recursive_greedy, recursive_star_greedy, red_first
from .reduction import build_graph, build_ising, maxcut_bruteforce, bpsp_via_maxcut
from .oracles import bpsp_bruteforce
from .qaoa import qaoa1_optimize, xqaoa_optimize, xqaoa_solve
from .rqaoa import rqaoa_solve

__all__ = [
    "BpspInstance",
    "generate_instance",
    "validate_instance",
    "expand",
    "compress",
    "swap_count",
    "red_first",
    "greedy",
    "recursive_greedy",
    "recursive_star_greedy",
    "build_graph",
    "build_ising",
    "maxcut_bruteforce",
    "bpsp_via_maxcut",
    "bpsp_bruteforce",
    "qaoa1_optimize",
    "xqaoa_optimize",
    "xqaoa_solve",
    "rqaoa_solve",
]
