"""Exact-arithmetic toolkit for the equation (a^n - 1)(b^n - 1) = x^2.

Pell equations, divisibility laws of the Pell sequences, the auxiliary
equation x^p = 2y^2 - 1, and bounded exhaustive verification of which pairs
(a, b) admit solutions.
"""

from .arith import DomainError, factorize, is_perfect_square, is_prime, isqrt, squarefree_decompose
from .diophantine import ScopeTag, SolutionCertificate, decompose, evaluate, search, verify_scope
from .ljunggren import search_ljunggren
from .lucas import check_carmichael, check_lemma1, check_lemma3, primitive_divisors
from .pell import fundamental_solution, index_of_u, solution_at

__version__ = "0.1.0"
