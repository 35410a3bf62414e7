"""
q 形变标量原语

所有模块共享的标量恒等式：
- QParam: 以 gamma = ln q 表示形变参数，按需取指数
- 量子维数 [x]_q
- q 单态振幅
- 单对 von Neumann / Renyi 纠缠熵及其反函数
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit

from ..exceptions import InvalidArgumentError

LN2 = math.log(2.0)

# gamma 绝对值上限：|eps| = 2|gamma| 可达约 1400
_GAMMA_SEARCH_MAX = 50.0


@dataclass(frozen=True, order=True)
class QParam:
    """形变参数 q = exp(gamma)"""

    gamma: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.gamma):
            raise InvalidArgumentError("gamma 必须为有限实数", field="gamma", value=self.gamma)

    @classmethod
    def from_q(cls, q: float) -> QParam:
        """由 q > 0 构造"""
        if not (q > 0 and math.isfinite(q)):
            raise InvalidArgumentError("q 必须为正有限实数", field="q", value=q)
        return cls(math.log(q))

    @property
    def q(self) -> float:
        """q 值（可能溢出为 inf）"""
        try:
            return math.exp(self.gamma)
        except OverflowError:
            return math.inf

    def inverse(self) -> QParam:
        """q -> 1/q"""
        return QParam(-self.gamma)

    def __repr__(self) -> str:
        return f"QParam(q={self.q:.6g}, gamma={self.gamma:.6g})"


def q_from_ratio(ratio: float) -> QParam:
    """由 h/J（或 h~/J~）求 q：gamma = asinh(ratio)"""
    if not math.isfinite(ratio):
        raise InvalidArgumentError("比值必须为有限实数", field="ratio", value=ratio)
    return QParam(math.asinh(ratio))


def quantum_dimension(x: float, q: QParam) -> float:
    """量子维数 [x]_q = sinh(x gamma) / sinh(gamma)

    关于 gamma 为偶函数；按 e^{(x−1)|gamma|}(1 − e^{−2x|gamma|})/(1 − e^{−2|gamma|})
    计算，大 |gamma| 时不经过 sinh 的中间溢出，结果超出浮点范围时返回 inf。
    q = 1 时取极限 x；gamma 很小时用级数展开避免相消。
    """
    gamma = abs(q.gamma)
    if gamma == 0.0:
        return float(x)
    if gamma < 1e-6:
        # sinh(xg)/sinh(g) = x [1 + (x^2 - 1) g^2 / 6 + O(g^4)]
        return float(x) * (1.0 + (x * x - 1.0) * gamma * gamma / 6.0)
    ratio = math.expm1(-2.0 * x * gamma) / math.expm1(-2.0 * gamma)
    try:
        return math.exp((x - 1.0) * gamma) * ratio
    except OverflowError:
        return math.copysign(math.inf, ratio)


def singlet_amplitudes(q: QParam) -> tuple[float, float]:
    """q 单态在 |↑↓⟩、|↓↑⟩ 上的振幅

    (q^{-1/2}, -q^{1/2}) / sqrt([2]_q)，平方和为 1。
    """
    a_updown = math.sqrt(expit(-2.0 * q.gamma))
    a_downup = -math.sqrt(expit(2.0 * q.gamma))
    return a_updown, a_downup


def pair_probabilities(q: QParam) -> tuple[float, float]:
    """单对约化密度矩阵的本征值 (1/(1+q^2), q^2/(1+q^2))"""
    return float(expit(-2.0 * q.gamma)), float(expit(2.0 * q.gamma))


def pair_entropy(q: QParam) -> float:
    """单对 von Neumann 熵 ln(1+q^2) - q^2 ln(q^2)/(1+q^2)"""
    g = abs(q.gamma)
    return math.log1p(math.exp(-2.0 * g)) + 2.0 * g * float(expit(-2.0 * g))


def pair_renyi(q: QParam, alpha: float) -> float:
    """单对 Renyi 熵 (1/(1-a)) ln[(1+q^{2a}) / (1+q^2)^a]"""
    if alpha <= 0 or alpha == 1:
        raise InvalidArgumentError("Renyi 阶数必须为正且不等于1", field="alpha", value=alpha)
    g = abs(q.gamma)
    # 以 q >= 1 展开：sum lambda^a = expit(2g)^a (1 + q^{-2a})
    log_sum = math.log1p(math.exp(-2.0 * alpha * g)) - alpha * math.log1p(math.exp(-2.0 * g))
    return log_sum / (1.0 - alpha)


def entropy_to_gamma(entropy: float) -> float:
    """单对熵的反函数，返回 gamma >= 0"""
    if not 0.0 <= entropy <= LN2 + 1e-15:
        raise InvalidArgumentError(
            "单对熵必须位于 [0, ln 2]", field="entropy", value=entropy
        )
    if entropy >= LN2:
        return 0.0
    if entropy <= 0.0:
        return math.inf
    upper = _GAMMA_SEARCH_MAX
    if pair_entropy(QParam(upper)) > entropy:
        return math.inf
    return float(
        brentq(
            lambda g: pair_entropy(QParam(g)) - entropy,
            0.0,
            upper,
            xtol=1e-15,
            rtol=4 * np.finfo(float).eps,
            maxiter=500,
        )
    )
