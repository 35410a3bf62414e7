"""
逆向设计

- designer: 目标纠缠能量/熵 → 磁场分布
- primes: Möbius 函数与素数纠缠谱
"""

from .designer import DesignResult
from .designer import DesignTarget
from .designer import branch_candidates
from .designer import choose_branch
from .designer import entropies_to_energies
from .designer import fields_from_energies
from .designer import h2_max
from .designer import order_pairs
from .designer import solve_fields
from .designer import uniform_q_fields
from .primes import PrimeNormalization
from .primes import PrimeSpectrum
from .primes import design_prime_chain
from .primes import first_primes
from .primes import moebius
from .primes import moebius_sieve
from .primes import normalization
from .primes import prime_sieve
from .primes import prime_spectrum
from .primes import prime_spectrum_target

__all__ = [
    # 设计器
    "DesignTarget",
    "DesignResult",
    "fields_from_energies",
    "solve_fields",
    "order_pairs",
    "h2_max",
    "branch_candidates",
    "choose_branch",
    "entropies_to_energies",
    "uniform_q_fields",
    # 素数谱
    "PrimeNormalization",
    "PrimeSpectrum",
    "moebius",
    "moebius_sieve",
    "prime_sieve",
    "first_primes",
    "normalization",
    "prime_spectrum",
    "prime_spectrum_target",
    "design_prime_chain",
]
