"""
逆向设计

由目标单粒子纠缠能量 ε_i（或每对 von Neumann 熵）求磁场分布 {h_i}：
- 闭式解：h_1 = −J_1 sinh(ε_1/2)，h_2 与 h_{i>2} 的递推闭式
- 正向求解：h_i = −J~_i [sinh(ε_i/2) + sinh(ε_{i−1}/2)]
- 高/低保真度分支选择与配对排序
- 均匀 q 设计
每个设计结果都经过 renormalize 回代校验。
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any
from typing import Literal

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import PositiveFloat
from pydantic import ValidationError
from pydantic import model_validator

from ..analysis.entanglement import EntanglementReport
from ..analysis.entanglement import analyze_profile
from ..analysis.entanglement import single_particle_energies
from ..exceptions import DegenerateTargetError
from ..exceptions import DesignVerificationError
from ..exceptions import InvalidArgumentError
from ..exceptions import NumericRangeError
from ..exceptions import convert_validation_error
from ..model.chain import ChainSpec
from ..model.qalgebra import LN2
from ..model.qalgebra import QParam
from ..model.qalgebra import entropy_to_gamma
from ..model.qalgebra import q_from_ratio
from ..solver.rg import QProfile
from ..solver.rg import renormalize

logger = logging.getLogger(__name__)

OrderingPolicy = Literal["optimal", "as-given"]
BranchPolicy = Literal["optimal", "high", "low"]
DesignMethod = Literal["auto", "closed-form", "forward"]

ROUND_TRIP_TOLERANCE = 1e-9
# 超过该偏差视为设计失败
_VERIFICATION_LIMIT = 1e-6


class TargetValues(BaseModel):
    """目标值：ε 或 S 二选一"""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    eps: list[float] | None = None
    entropies: list[float] | None = Field(default=None, alias="S")

    @model_validator(mode="after")
    def _exactly_one(self) -> TargetValues:
        if (self.eps is None) == (self.entropies is None):
            raise ValueError("targets 必须且只能包含 eps 或 S 之一")
        values = self.eps if self.eps is not None else self.entropies
        assert values is not None
        if not values:
            raise ValueError("目标列表不能为空")
        if not all(math.isfinite(value) for value in values):
            raise ValueError("目标值必须为有限实数")
        if self.entropies is not None and not all(0.0 <= s <= LN2 for s in self.entropies):
            raise ValueError("熵目标必须位于 [0, ln 2]")
        return self


class DesignTarget(BaseModel):
    """设计目标"""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    targets: TargetValues
    J: list[PositiveFloat]
    ordering: OrderingPolicy = "optimal"
    branch: BranchPolicy = "optimal"
    method: DesignMethod = "auto"

    @model_validator(mode="after")
    def _lengths(self) -> DesignTarget:
        values = self.targets.eps if self.targets.eps is not None else self.targets.entropies
        assert values is not None
        if len(values) != len(self.J):
            raise ValueError(f"目标数 ({len(values)}) 必须等于耦合数 ({len(self.J)})")
        return self

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> DesignTarget:
        """从 JSON 字典构造，错误统一为参数错误"""
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise convert_validation_error(e, "DesignTarget")

    @classmethod
    def from_energies(
        cls,
        eps: Sequence[float],
        J: Sequence[float],
        *,
        ordering: OrderingPolicy = "optimal",
        method: DesignMethod = "auto",
    ) -> DesignTarget:
        return cls.from_dict(
            {"targets": {"eps": list(eps)}, "J": list(J), "ordering": ordering, "method": method}
        )

    @classmethod
    def from_entropies(
        cls,
        entropies: Sequence[float],
        J: Sequence[float],
        *,
        ordering: OrderingPolicy = "optimal",
        branch: BranchPolicy = "optimal",
    ) -> DesignTarget:
        return cls.from_dict(
            {
                "targets": {"S": list(entropies)},
                "J": list(J),
                "ordering": ordering,
                "branch": branch,
            }
        )

    def to_dict(self) -> dict[str, Any]:
        """序列化为目标 JSON"""
        return self.model_dump(by_alias=True, exclude_none=True)

    @property
    def eps_targets(self) -> list[float] | None:
        return self.targets.eps

    @property
    def s_targets(self) -> list[float] | None:
        return self.targets.entropies

    @property
    def n_pairs(self) -> int:
        return len(self.J)


@dataclass(frozen=True)
class DesignResult:
    """设计结果"""

    spec: ChainSpec
    profile: QProfile
    permutation: tuple[int, ...]
    targets: tuple[float, ...]
    predicted: EntanglementReport
    max_deviation: float

    @property
    def achieved(self) -> list[float]:
        return single_particle_energies(self.profile)[1]


# =============================================================================
# 分支与排序
# =============================================================================


def _gamma_cosh2(gamma: float) -> float:
    value = math.cosh(gamma)
    return value * value


def h2_max(J1: float, h1: float, J2: float) -> float:
    """使 h~_2 = 0 的 h_2 = sinh(γ_1) J~_2"""
    if not (J1 > 0 and J2 > 0):
        raise InvalidArgumentError("耦合必须为正", context={"J1": J1, "J2": J2})
    gamma = q_from_ratio(h1 / J1).gamma
    J2_eff = J2 * J2 / (_gamma_cosh2(gamma) * J1)
    return math.sinh(gamma) * J2_eff


def branch_candidates(J1: float, h1: float, J2: float, target_S2: float) -> tuple[float, float]:
    """目标熵对应的两个 h_2 (低分支, 高分支)，关于 h2_max 对称"""
    if not 0.0 < target_S2 <= LN2 + 1e-15:
        raise InvalidArgumentError("目标熵必须位于 (0, ln 2]", field="target_S2", value=target_S2)
    gamma = q_from_ratio(h1 / J1).gamma
    J2_eff = J2 * J2 / (_gamma_cosh2(gamma) * J1)
    gamma2 = entropy_to_gamma(min(target_S2, LN2))
    if not math.isfinite(gamma2):
        raise NumericRangeError("目标熵过小，q 溢出", pair_index=2)
    center = h2_max(J1, h1, J2)
    offset = J2_eff * math.sinh(gamma2)
    return center - offset, center + offset


def choose_branch(
    J1: float,
    h1: float,
    J2: float,
    target_S2: float,
    policy: BranchPolicy = "optimal",
) -> float:
    """选择 h_2：h_1/J_1 > 0 取高分支，< 0 取低分支，h_1 = 0 取高分支"""
    low, high = branch_candidates(J1, h1, J2, target_S2)
    if policy == "high":
        return high
    if policy == "low":
        return low
    return low if h1 < 0 else high


def order_pairs(targets: Sequence[float]) -> tuple[int, ...]:
    """按 |ε| 降序（再按 ε 降序、原序号）分配到第 1…N 对"""
    if not all(math.isfinite(value) for value in targets):
        raise InvalidArgumentError("目标必须为有限实数", field="targets")
    return tuple(
        sorted(range(len(targets)), key=lambda k: (-abs(targets[k]), -targets[k], k))
    )


def entropies_to_energies(
    entropies: Sequence[float],
    policy: BranchPolicy = "optimal",
    *,
    previous_gamma: float | None = None,
) -> list[float]:
    """熵目标转 ε 目标

    第 1 对取 h_1 ≥ 0（ε_1 ≤ 0）；其后每对的 γ_i 符号由分支策略决定：
    high 取 γ_i ≥ 0，low 取 γ_i ≤ 0，optimal 跟随 γ_{i−1}（γ_{i−1} = 0 时取 high）。
    给定 previous_gamma 时，首个熵目标视为紧随形变参数为该值的一对。
    """
    gammas: list[float] = [] if previous_gamma is None else [previous_gamma]
    offset = len(gammas)
    for i, entropy in enumerate(entropies, start=offset):
        magnitude = entropy_to_gamma(entropy)
        if not math.isfinite(magnitude):
            raise NumericRangeError("目标熵过小，q 溢出", pair_index=i + 1)
        if i == 0 or policy == "high":
            sign = 1.0
        elif policy == "low":
            sign = -1.0
        else:
            sign = -1.0 if gammas[-1] < 0 else 1.0
        gammas.append(sign * magnitude)
    return [-2.0 * gamma for gamma in gammas[offset:]]


# =============================================================================
# 磁场求解
# =============================================================================


def _half_sinh(eps: float, pair_index: int) -> float:
    try:
        return math.sinh(eps / 2.0)
    except OverflowError:
        raise NumericRangeError(
            "目标 |ε| 过大，q 溢出", pair_index=pair_index, context={"eps": eps}
        ) from None


def _decimated(coupling: float, eps: float, inner: float, pair_index: int) -> float:
    """coupling² / (cosh²(ε/2) inner)，不经过 cosh² 的中间溢出"""
    try:
        cosh = math.cosh(eps / 2.0)
    except OverflowError:
        raise NumericRangeError(
            "目标 |ε| 过大，q 溢出", pair_index=pair_index, context={"eps": eps}
        ) from None
    return coupling / cosh * (coupling / (cosh * inner))


def _closed_form_field(
    i: int, eps: Sequence[float], J: Sequence[float], fields: Sequence[float]
) -> float | None:
    """闭式解；h_{i−1} = 0 导致除零时返回 None（i 为 0 起序号）"""
    s = [_half_sinh(value, k + 1) for k, value in enumerate(eps[: i + 1])]
    if i == 0:
        return -J[0] * s[0]
    if i == 1:
        return -_decimated(J[1], eps[0], J[0], 1) * (s[1] + s[0])
    if fields[i - 1] == 0.0:
        return None
    return (
        _decimated(J[i], eps[i - 1], fields[i - 1], i)
        * (s[i] + s[i - 1])
        * (s[i - 1] + s[i - 2])
    )


def _forward_fields(eps: Sequence[float], J: Sequence[float]) -> list[float]:
    fields = [-J[0] * _half_sinh(eps[0], 1)]
    J_eff = J[0]
    for i in range(1, len(eps)):
        J_eff = _decimated(J[i], eps[i - 1], J_eff, i)
        fields.append(-J_eff * (_half_sinh(eps[i], i + 1) + _half_sinh(eps[i - 1], i)))
    return fields


def solve_fields(
    eps: Sequence[float], J: Sequence[float], method: DesignMethod = "auto"
) -> list[float]:
    """按给定顺序求磁场分布"""
    if method == "forward":
        fields = _forward_fields(eps, J)
    else:
        fields = []
        forward: list[float] | None = None
        for i in range(len(eps)):
            value = _closed_form_field(i, eps, J, fields)
            if value is None:
                if method == "closed-form":
                    raise DegenerateTargetError(
                        f"h_{i} = 0 使闭式递推除零，请对 ε_{i} 或 ε_{i - 1} 做无穷小扰动",
                        pair_index=i + 1,
                    )
                logger.warning("Closed form singular at pair %d; using forward solve", i + 1)
                if forward is None:
                    forward = _forward_fields(eps, J)
                value = forward[i]
            fields.append(value)

    for i, value in enumerate(fields):
        if not math.isfinite(value):
            raise NumericRangeError("磁场溢出", pair_index=i + 1, context={"h": value})
    return fields


def fields_from_energies(target: DesignTarget) -> DesignResult:
    """由目标求链参数并回代校验"""
    identity = tuple(range(target.n_pairs))
    if target.eps_targets is not None:
        raw = list(target.eps_targets)
        permutation = order_pairs(raw) if target.ordering == "optimal" else identity
        eps = [raw[k] for k in permutation]
    else:
        # 熵目标先排序（S 升序即 |ε| 降序），再按分支策略逐对定符号
        entropies = target.s_targets
        assert entropies is not None
        if target.ordering == "optimal":
            permutation = tuple(sorted(identity, key=lambda k: (entropies[k], k)))
        else:
            permutation = identity
        eps = entropies_to_energies([entropies[k] for k in permutation], target.branch)
    logger.info("Design permutation %s, ordered targets %s", permutation, eps)

    fields = solve_fields(eps, target.J, target.method)
    spec = ChainSpec.create(target.J, fields)

    # 回代：不假设 h_i ↦ ε_i 全局可逆
    profile = renormalize(spec)

    achieved = single_particle_energies(profile)[1]
    deviation = max(abs(a - e) for a, e in zip(achieved, eps))
    if deviation > _VERIFICATION_LIMIT * max(1.0, max(abs(e) for e in eps)):
        raise DesignVerificationError(
            "设计结果回代偏差过大", deviation=deviation, context={"targets": eps}
        )
    if deviation > ROUND_TRIP_TOLERANCE:
        logger.warning("Design round-trip deviation %.3g exceeds %.0e", deviation, ROUND_TRIP_TOLERANCE)

    return DesignResult(
        spec=spec,
        profile=profile,
        permutation=permutation,
        targets=tuple(eps),
        predicted=analyze_profile(profile),
        max_deviation=deviation,
    )


def uniform_q_fields(q: float, J: Sequence[float]) -> ChainSpec:
    """使每对形变参数均为 q 的磁场分布"""
    param = QParam.from_q(q)
    J = [float(value) for value in J]
    if not J or any(value <= 0 for value in J):
        raise InvalidArgumentError("耦合必须为非空正数列表", field="J")
    if param.gamma == 0.0:
        return ChainSpec.create(J, [0.0] * len(J))

    # ((1 − q²)/(1 + q²))² = tanh²γ
    squeeze = math.tanh(param.gamma) ** 2
    fields = [J[0] * (q - 1.0 / q) / 2.0]
    if len(J) > 1:
        fields.append(2.0 * J[1] ** 2 / fields[0] * squeeze)
    for i in range(2, len(J)):
        fields.append(4.0 * J[i] ** 2 / fields[i - 1] * squeeze)
    return ChainSpec.create(J, fields)
