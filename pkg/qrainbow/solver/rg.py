"""
实空间重整化群

- renormalize: 由内向外递推重整化参数 (J~_i, h~_i) 与形变参数 q_i
- rainbow_state: q 单态张量积构成的彩虹拟设态
- perturbation_oracle_4site: 四格点二阶微扰有效哈密顿量的数值计算
- 有效性比值诊断：r_i = max(J_{i+1}, |h_{i+1}|) / max(J~_i, |h~_i|)
"""

from __future__ import annotations

import logging
import math
import warnings
from collections.abc import Iterator
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..config import resolve
from ..exceptions import NumericRangeError
from ..exceptions import ValidityWarning
from ..model.chain import BasisConvention
from ..model.chain import ChainSpec
from ..model.chain import assemble_dense
from ..model.qalgebra import QParam
from ..model.qalgebra import q_from_ratio
from ..model.qalgebra import quantum_dimension
from ..model.qalgebra import singlet_amplitudes
from .exact import PureState
from .exact import expectation_value

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QProfile:
    """每对的形变参数与重整化参数"""

    q: tuple[QParam, ...]
    J_eff: tuple[float, ...]
    h_eff: tuple[float, ...]
    validity_ratio: tuple[float, ...] = ()

    @property
    def n_pairs(self) -> int:
        return len(self.q)

    @property
    def gammas(self) -> tuple[float, ...]:
        return tuple(param.gamma for param in self.q)

    @classmethod
    def from_q(cls, q: Sequence[QParam | float]) -> QProfile:
        """仅由形变参数构造（J~ 取 1，用于解析态与谱）"""
        params = tuple(p if isinstance(p, QParam) else QParam.from_q(p) for p in q)
        return cls(
            q=params,
            J_eff=tuple(1.0 for _ in params),
            h_eff=tuple(math.sinh(p.gamma) for p in params),
            validity_ratio=tuple(0.0 for _ in params),
        )

    def to_dict(self) -> dict[str, Any]:
        """JSON 报告片段"""
        return {
            "q": [param.q for param in self.q],
            "gamma": list(self.gammas),
            "J_eff": list(self.J_eff),
            "h_eff": list(self.h_eff),
            "validity_ratio": list(self.validity_ratio),
        }


def xx_rescaling(J_left: float, J_center: float, J_right: float) -> float:
    """XX 极限的有效耦合 J_left·J_right / J_center"""
    return J_left * J_right / J_center


def renormalize(spec: ChainSpec, *, validity_threshold: float | None = None) -> QProfile:
    """重整化递推

    J~_i = J_i² / (cosh²γ_{i−1} J~_{i−1})，h~_i = h_i − sinh γ_{i−1} J~_i，
    等价于 4J_i²/([2]²_{q} J~) 与 2(q − 1/q)J_i²/([2]²_{q} J~) 形式。
    """
    threshold = resolve("validity_threshold", validity_threshold)
    n = spec.n_pairs

    J_eff = [float(spec.J[0])]
    h_eff = [float(spec.h[0])]
    q = [q_from_ratio(h_eff[0] / J_eff[0])]

    for i in range(1, n):
        gamma = q[-1].gamma
        if abs(gamma) > 700:
            raise NumericRangeError("形变参数 q 溢出", pair_index=i, context={"gamma": gamma})
        cosh = math.cosh(gamma)
        J_next = spec.J[i] / cosh * (spec.J[i] / (cosh * J_eff[-1]))
        h_next = spec.h[i] - math.sinh(gamma) * J_next
        if not (math.isfinite(J_next) and math.isfinite(h_next) and J_next > 0):
            raise NumericRangeError(
                "重整化参数溢出或非正",
                pair_index=i + 1,
                context={"J_eff": J_next, "h_eff": h_next},
            )
        J_eff.append(J_next)
        h_eff.append(h_next)
        q.append(q_from_ratio(h_next / J_next))

    ratios = []
    for i in range(n):
        if i + 1 < n:
            outer = max(spec.J[i + 1], abs(spec.h[i + 1]))
            ratios.append(outer / max(J_eff[i], abs(h_eff[i])))
        else:
            ratios.append(0.0)

    for i, ratio in enumerate(ratios):
        if ratio > threshold:
            message = (
                f"Strong-inhomogeneity condition violated at pair {i + 1}: "
                f"validity ratio {ratio:.3g} > {threshold:.3g}"
            )
            logger.warning(message)
            warnings.warn(message, ValidityWarning, stacklevel=2)

    return QProfile(
        q=tuple(q),
        J_eff=tuple(J_eff),
        h_eff=tuple(h_eff),
        validity_ratio=tuple(ratios),
    )


def rainbow_state(profile: QProfile) -> PureState:
    """q 单态张量积，第 i 对位于格点 (−i, i)"""
    basis = BasisConvention(profile.n_pairs)
    # 基矢编号 → 振幅，逐对展开
    vector = {0: 1.0}
    for i, param in enumerate(profile.q, start=1):
        a_updown, a_downup = singlet_amplitudes(param)
        left, right = basis.pair_bits(i)
        updated: dict[int, float] = {}
        for index, amplitude in vector.items():
            updated[index | (1 << left)] = amplitude * a_updown
            updated[index | (1 << right)] = amplitude * a_downup
        vector = updated

    amplitudes = np.zeros(1 << basis.n_sites)
    for index, amplitude in vector.items():
        amplitudes[index] = amplitude
    return PureState(basis.n_sites, amplitudes)


# =============================================================================
# 四格点微扰验证
# =============================================================================


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """四格点二阶有效哈密顿量

    基矢为外侧格点 (−2, 2) 的 (↑↑, ↑↓, ↓↑, ↓↓)。
    """

    heff1: np.ndarray
    heff2: np.ndarray
    J2_eff: float
    h2_eff: float
    constant: float
    ground_energy: float
    energy_bracket_power: int

    def __iter__(self) -> Iterator[Any]:
        return iter((self.heff1, self.heff2, self.J2_eff, self.h2_eff))


def _outer_configurations() -> list[tuple[int, int]]:
    # (s_{-2}, s_2)，1 为向上
    return [(1, 1), (1, 0), (0, 1), (0, 0)]


def _embed(basis: BasisConvention, outer: tuple[int, int], inner: dict[tuple[int, int], float]) -> np.ndarray:
    vector = np.zeros(1 << basis.n_sites)
    outer_left, outer_right = basis.pair_bits(2)
    inner_left, inner_right = basis.pair_bits(1)
    base = (outer[0] << outer_left) | (outer[1] << outer_right)
    for (s_left, s_right), amplitude in inner.items():
        vector[base | (s_left << inner_left) | (s_right << inner_right)] = amplitude
    return vector


def perturbation_oracle_4site(J1: float, h1: float, J2: float, h2: float) -> EffectiveHamiltonian:
    """数值计算四格点二阶有效哈密顿量并提取 J~_2、h~_2

    H1 为中心对 (−1, 1) 的两格点哈密顿量，V 为外侧键与外侧磁场。
    基态子空间 |m_α⟩ = |外侧构型⟩ ⊗ |ψ⁻⟩，激发态为内侧 |↑↑⟩、|↓↓⟩
    （能量 0）与 |ψ⁺⟩（能量 +[2]J1）乘以四种外侧构型，共 12 个。
    """
    basis = BasisConvention(2)
    h1_only = assemble_dense(2, [J1, 0.0], [h1, 0.0])
    full = assemble_dense(2, [J1, J2], [h1, h2])
    perturbation = full - h1_only

    q1 = q_from_ratio(h1 / J1)
    bracket = quantum_dimension(2, q1)
    e_minus = -bracket * J1
    a_updown, a_downup = singlet_amplitudes(q1)
    singlet = {(1, 0): a_updown, (0, 1): a_downup}
    triplet_mixed = {(1, 0): -a_downup, (0, 1): a_updown}

    outers = _outer_configurations()
    ground = np.column_stack([_embed(basis, outer, singlet) for outer in outers])

    excited: list[tuple[np.ndarray, float]] = []
    for outer in outers:
        excited.append((_embed(basis, outer, {(1, 1): 1.0}), 0.0))
        excited.append((_embed(basis, outer, {(0, 0): 1.0}), 0.0))
        excited.append((_embed(basis, outer, triplet_mixed), bracket * J1))

    heff1 = ground.T @ perturbation @ ground
    heff2 = np.zeros((4, 4))
    for vector, energy in excited:
        coupling = ground.T @ perturbation @ vector
        heff2 += np.outer(coupling, coupling) / (e_minus - energy)

    total = e_minus * np.eye(4) + heff1 + heff2
    J2_eff = total[1, 2] / 2.0
    h2_eff = (total[1, 1] - total[2, 2]) / 4.0
    constant = (total[0, 0] + total[3, 3]) / 2.0

    # 常数项与 E1 − 4J2²/([2]^p J1) 的比较
    candidates = {
        power: abs(constant - (e_minus - 4.0 * J2**2 / (bracket**power * J1)))
        for power in (1, 2)
    }
    power = min(candidates, key=lambda p: (candidates[p], p))

    outer_ground = -quantum_dimension(2, q_from_ratio(h2_eff / J2_eff)) * J2_eff
    return EffectiveHamiltonian(
        heff1=heff1,
        heff2=heff2,
        J2_eff=float(J2_eff),
        h2_eff=float(h2_eff),
        constant=float(constant),
        ground_energy=float(constant + outer_ground),
        energy_bracket_power=power,
    )


def closed_form_effective(J1: float, h1: float, J2: float, h2: float) -> tuple[float, float]:
    """二阶有效参数的闭式解 (J~_2, h~_2)"""
    q1 = q_from_ratio(h1 / J1)
    bracket2 = quantum_dimension(2, q1) ** 2
    J2_eff = 4.0 * J2**2 / (bracket2 * J1)
    h2_eff = h2 - 2.0 * (q1.q - 1.0 / q1.q) * J2**2 / (bracket2 * J1)
    return J2_eff, h2_eff


def predicted_energy(profile: QProfile, spec: ChainSpec, **kwargs: object) -> float:
    """彩虹拟设态的能量 ⟨ψ|H|ψ⟩（精确基态能量的变分上界）"""
    return expectation_value(spec, rainbow_state(profile), **kwargs)
