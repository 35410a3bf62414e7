"""
素数纠缠谱

- Möbius 函数（试除与筛法）、素数筛
- 归一化常数 A_F = ζ(2s)/ζ(s)：截断 Euler 乘积与无平方因子数求和两种独立估计，
  均带解析尾项修正，截断位置 K 自适应加倍
- 素数谱 ε_p = s ln p 及其设计目标
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import mpmath
import numpy as np
from scipy.special import exp1
from scipy.special import expi

from ..config import resolve
from ..exceptions import DivergentSeriesError
from ..exceptions import InvalidArgumentError
from .designer import DesignResult
from .designer import DesignTarget
from .designer import fields_from_energies

logger = logging.getLogger(__name__)

# 相邻两次截断估计的收敛判据
STEP_TOLERANCE = 1e-10
# 两种估计的一致性判据
AGREEMENT_TOLERANCE = 1e-8
MIN_TRUNCATION = 1000
# 默认耦合的几何公比
DEFAULT_COUPLING_RATIO = 1e-2


# =============================================================================
# 数论工具
# =============================================================================


def moebius(n: int) -> int:
    """Möbius 函数 μ(n)（试除）"""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidArgumentError("n 必须为正整数", field="n", value=n)
    n = int(n)
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def _check_limit(limit: int) -> int:
    if limit < 0:
        raise InvalidArgumentError("上限不能为负", field="limit", value=limit)
    return int(limit)


def prime_sieve(limit: int) -> np.ndarray:
    """不超过 limit 的全部素数（升序）"""
    limit = _check_limit(limit)
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def squarefree_mask(limit: int) -> np.ndarray:
    """mask[k] 为真当且仅当 k ≥ 1 无平方因子"""
    limit = _check_limit(limit)
    mask = np.ones(limit + 1, dtype=bool)
    mask[0] = False
    for p in prime_sieve(math.isqrt(limit)):
        mask[p * p :: p * p] = False
    return mask


def moebius_sieve(limit: int) -> np.ndarray:
    """μ(0..limit)，约定 μ(0) = 0"""
    limit = _check_limit(limit)
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in prime_sieve(limit):
        mu[p::p] *= -1
    mu[~squarefree_mask(limit)] = 0
    return mu


def first_primes(n: int) -> list[int]:
    """前 n 个素数（升序）"""
    if n < 0:
        raise InvalidArgumentError("个数不能为负", field="n", value=n)
    if n == 0:
        return []
    # p_n < n (ln n + ln ln n)，n ≥ 6
    limit = 15 if n < 6 else int(n * (math.log(n) + math.log(math.log(n)))) + 1
    return [int(p) for p in prime_sieve(limit)[:n]]


# =============================================================================
# 归一化常数
# =============================================================================


@dataclass(frozen=True)
class PrimeNormalization:
    """A_F = ζ(2s)/ζ(s) 的两种截断估计"""

    s: float
    A_F: float
    E0: float
    euler_product: float
    squarefree_sum: float
    truncation: int
    converged: bool
    reference: float

    @property
    def discrepancy(self) -> float:
        return abs(self.euler_product - self.squarefree_sum)

    def __iter__(self) -> Iterator[Any]:
        return iter((self.A_F, self.E0))

    def to_dict(self) -> dict[str, Any]:
        return {
            "s": self.s,
            "A_F": self.A_F,
            "E0": self.E0,
            "euler_product": self.euler_product,
            "squarefree_sum": self.squarefree_sum,
            "truncation": self.truncation,
            "converged": self.converged,
            "reference": self.reference,
        }


def _euler_product_estimate(s: float, K: int) -> float:
    """Π_p (1 + p^{−s})^{−1}，p > K 部分用素数计数函数 ≈ li 估计"""
    primes = prime_sieve(K).astype(float)
    log_sum = float(np.sum(np.log1p(primes ** (-s))))

    # Σ_{p>K} [p^{−s} − p^{−2s}/2]，边界项修正 π(K) − li(K)
    L = math.log(K)
    excess = primes.size - float(expi(L))
    tail = float(exp1((s - 1.0) * L)) - 0.5 * float(exp1((2.0 * s - 1.0) * L))
    tail -= excess * (K ** (-s) - 0.5 * K ** (-2.0 * s))
    return math.exp(-(log_sum + tail))


def _squarefree_sum_estimate(s: float, K: int) -> float:
    """1 / Σ_{k 无平方因子} k^{−s}，k > K 部分按密度 6/π² 估计"""
    mask = squarefree_mask(K)
    k = np.flatnonzero(mask).astype(float)
    partial = float(np.sum(k ** (-s)))
    density = 6.0 / math.pi**2
    tail = -k.size * K ** (-s) + density * s * K ** (1.0 - s) / (s - 1.0)
    return 1.0 / (partial + tail)


def zeta_reference(s: float) -> float:
    """mpmath 计算的 ζ(2s)/ζ(s)"""
    with mpmath.workdps(30):
        return float(mpmath.zeta(2 * s) / mpmath.zeta(s))


def _estimate(s: float, K: int) -> tuple[float, float]:
    return _euler_product_estimate(s, K), _squarefree_sum_estimate(s, K)


def normalization(s: float, truncation: int | None = None) -> PrimeNormalization:
    """A_F = ζ(2s)/ζ(s) 与 E0 = ln(ζ(s)/ζ(2s))

    给定 truncation 时只在该截断处估计一次；否则从 prime_truncation_start
    开始加倍，直到相邻估计变化 < 1e−10 且两种估计相差 < 1e−8，
    超过 prime_truncation_cap 时返回最后一次估计并告警。
    """
    if not math.isfinite(s):
        raise InvalidArgumentError("s 必须为有限实数", field="s", value=s)
    if s <= 1.0:
        raise DivergentSeriesError("s ≤ 1 时 Σ k^{−s} 发散", field="s", value=s)
    if truncation is not None and truncation < MIN_TRUNCATION:
        raise InvalidArgumentError(
            f"截断位置必须 ≥ {MIN_TRUNCATION}", field="truncation", value=truncation
        )

    if truncation is not None:
        K = int(truncation)
        product, direct = _estimate(s, K)
        converged = abs(product - direct) < AGREEMENT_TOLERANCE
    else:
        K = max(int(resolve("prime_truncation_start")), MIN_TRUNCATION)
        cap = int(resolve("prime_truncation_cap"))
        product, direct = _estimate(s, K)
        converged = False
        while 2 * K <= cap:
            K *= 2
            new_product, new_direct = _estimate(s, K)
            step = max(abs(new_product - product), abs(new_direct - direct))
            product, direct = new_product, new_direct
            if step < STEP_TOLERANCE and abs(product - direct) < AGREEMENT_TOLERANCE:
                converged = True
                break
        logger.debug("Prime normalization at s=%g settled at K=%d", s, K)

    if not converged:
        logger.warning(
            "Prime normalization at s=%g not converged at K=%d (estimates differ by %.3g)",
            s,
            K,
            abs(product - direct),
        )

    A_F = 0.5 * (product + direct)
    return PrimeNormalization(
        s=float(s),
        A_F=A_F,
        E0=-math.log(A_F),
        euler_product=product,
        squarefree_sum=direct,
        truncation=K,
        converged=converged,
        reference=zeta_reference(s),
    )


# =============================================================================
# 素数谱
# =============================================================================


@dataclass(frozen=True)
class PrimeSpectrum:
    """前 N 个素数的单粒子纠缠能量，素数降序"""

    s: float
    n_pairs: int
    primes: tuple[int, ...]
    eps: tuple[float, ...]
    A_F: float
    E0: float
    normalization: PrimeNormalization | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "s": self.s,
            "n_pairs": self.n_pairs,
            "primes": list(self.primes),
            "eps": list(self.eps),
            "A_F": self.A_F,
            "E0": self.E0,
        }


def _prime_energies(s: float, n_pairs: int) -> tuple[list[int], list[float]]:
    if not math.isfinite(s) or s < 0:
        raise InvalidArgumentError("s 必须为非负有限实数", field="s", value=s)
    if n_pairs < 1:
        raise InvalidArgumentError("n_pairs 必须 ≥ 1", field="n_pairs", value=n_pairs)
    primes = first_primes(n_pairs)[::-1]
    return primes, [s * math.log(p) for p in primes]


def prime_spectrum(
    s: float, n_pairs: int, *, truncation: int | None = None
) -> PrimeSpectrum:
    """ε_p = s ln p 与归一化常数（需要 s > 1）"""
    primes, eps = _prime_energies(s, n_pairs)
    norm = normalization(s, truncation)
    return PrimeSpectrum(
        s=float(s),
        n_pairs=n_pairs,
        primes=tuple(primes),
        eps=tuple(eps),
        A_F=norm.A_F,
        E0=norm.E0,
        normalization=norm,
    )


def default_couplings(n_pairs: int, ratio: float = DEFAULT_COUPLING_RATIO) -> list[float]:
    """几何耦合 J_i = ratio^{i−1}"""
    return [ratio**i for i in range(n_pairs)]


def prime_spectrum_target(
    s: float, n_pairs: int, J: Sequence[float] | None = None
) -> DesignTarget:
    """素数谱设计目标，第 1 对对应最大的素数"""
    _, eps = _prime_energies(s, n_pairs)
    couplings = list(J) if J is not None else default_couplings(n_pairs)
    return DesignTarget.from_energies(eps, couplings, ordering="as-given")


def design_prime_chain(
    s: float, n_pairs: int, J: Sequence[float] | None = None
) -> DesignResult:
    """素数谱链设计"""
    return fields_from_energies(prime_spectrum_target(s, n_pairs, J))
