"""
扫描实验

每个实验把一个扫描点（参数字典）映射为一行结果。参数约定：
- 列表参数 J、h、S 可整体给出，也可用 J1、h2、S3 之类的键逐项覆盖
- 行中的浮点列均为 Python float，便于按固定有效数字输出
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from ..analysis.entanglement import density_eigenvalues
from ..analysis.entanglement import reduced_density_matrix
from ..analysis.entanglement import vn_entropy
from ..config import resolve
from ..core.simulator import AnsatzComparison
from ..core.simulator import compare_with_ansatz
from ..design.designer import DesignTarget
from ..design.designer import entropies_to_energies
from ..design.designer import fields_from_energies
from ..design.designer import uniform_q_fields
from ..exceptions import InvalidArgumentError
from ..model.chain import ChainSpec
from ..model.qalgebra import QParam
from ..model.qalgebra import pair_entropy
from ..model.qalgebra import pair_probabilities
from ..model.qalgebra import pair_renyi
from ..model.qalgebra import q_from_ratio

logger = logging.getLogger(__name__)

Row = dict[str, Any]


@dataclass(frozen=True)
class ExperimentSettings:
    """单点计算的资源参数"""

    size_cap: int | None = None
    validity_threshold: float | None = None


ExperimentFunc = Callable[[dict[str, Any], ExperimentSettings], Row]


@dataclass(frozen=True)
class Experiment:
    name: str
    func: ExperimentFunc
    default_columns: tuple[str, ...]
    description: str = ""

    def __call__(self, params: dict[str, Any], settings: ExperimentSettings) -> Row:
        return self.func(params, settings)


_EXPERIMENTS: dict[str, Experiment] = {}


def experiment(
    name: str, default_columns: tuple[str, ...], description: str = ""
) -> Callable[[ExperimentFunc], ExperimentFunc]:
    """注册实验"""

    def decorator(func: ExperimentFunc) -> ExperimentFunc:
        _EXPERIMENTS[name] = Experiment(name, func, default_columns, description)
        return func

    return decorator


def get_experiment(name: str) -> Experiment:
    if name not in _EXPERIMENTS:
        raise InvalidArgumentError("未知的实验", field="experiment", value=name)
    return _EXPERIMENTS[name]


def list_experiments() -> list[str]:
    return sorted(_EXPERIMENTS)


# =============================================================================
# 参数解析
# =============================================================================


def _as_float(params: dict[str, Any], key: str) -> float:
    try:
        return float(params[key])
    except KeyError:
        raise InvalidArgumentError("缺少参数", field=key)
    except (TypeError, ValueError):
        raise InvalidArgumentError("参数必须为实数", field=key, value=params[key])


def _couplings(params: dict[str, Any]) -> list[float]:
    if "J" not in params:
        raise InvalidArgumentError("缺少耦合列表", field="J")
    base = [float(value) for value in params["J"]]
    return [
        _as_float(params, f"J{i}") if f"J{i}" in params else value
        for i, value in enumerate(base, start=1)
    ]


def _indexed(
    params: dict[str, Any], key: str, n: int, *, start: int = 1, default: float | None = None
) -> list[float]:
    """key 列表（对应序号 start..n）与 key{i} 逐项覆盖"""
    size = n - start + 1
    if key in params:
        values = [float(value) for value in params[key]]
        if len(values) != size:
            raise InvalidArgumentError(
                f"{key} 的长度必须为 {size}", field=key, value=params[key]
            )
    else:
        values = [math.nan if default is None else default] * size
    for i in range(start, n + 1):
        if f"{key}{i}" in params:
            values[i - start] = _as_float(params, f"{key}{i}")
    missing = [f"{key}{start + k}" for k, value in enumerate(values) if math.isnan(value)]
    if missing:
        raise InvalidArgumentError("缺少参数", field=missing[0])
    return values


def _compare(spec: ChainSpec, settings: ExperimentSettings) -> AnsatzComparison:
    return compare_with_ansatz(
        spec,
        threads=1,
        size_cap=settings.size_cap,
        validity_threshold=settings.validity_threshold,
    )


def _exact_entropy(comparison: AnsatzComparison) -> float:
    return vn_entropy(density_eigenvalues(reduced_density_matrix(comparison.ground.state)))


def _chain_columns(spec: ChainSpec, comparison: AnsatzComparison) -> Row:
    row: Row = {}
    for i, (J, h) in enumerate(zip(spec.J, spec.h), start=1):
        row[f"J{i}"] = float(J)
        row[f"h{i}"] = float(h)
    for i, param in enumerate(comparison.profile.q, start=1):
        row[f"eps{i}"] = -2.0 * param.gamma
        row[f"S_A{i}"] = pair_entropy(param)
    row["S_ansatz"] = float(sum(pair_entropy(param) for param in comparison.profile.q))
    row["S_exact"] = _exact_entropy(comparison)
    row["fidelity"] = comparison.fidelity
    row["infidelity"] = comparison.infidelity
    row["E_exact"] = comparison.ground.energy
    row["E_ansatz"] = comparison.ansatz_energy
    row["gap"] = comparison.ground.gap
    row["r_max"] = float(max(comparison.profile.validity_ratio))
    return row


# =============================================================================
# 实验
# =============================================================================


@experiment(
    "pair_renyi",
    ("q", "S", "renyi_0.5", "renyi_2", "renyi_3"),
    "单对 q 单态的 von Neumann 与 Renyi 熵",
)
def pair_renyi_experiment(params: dict[str, Any], settings: ExperimentSettings) -> Row:
    param = QParam.from_q(_as_float(params, "q"))
    p_updown, p_downup = pair_probabilities(param)
    row: Row = {
        "q": param.q,
        "gamma": param.gamma,
        "p_updown": p_updown,
        "p_downup": p_downup,
        "S": pair_entropy(param),
    }
    for alpha in resolve("renyi_orders"):
        row[f"renyi_{alpha:g}"] = pair_renyi(param, alpha)
    if "alpha" in params:
        alpha = _as_float(params, "alpha")
        row["alpha"] = alpha
        row["renyi"] = pair_renyi(param, alpha) if alpha != 1.0 else pair_entropy(param)
    return row


@experiment(
    "chain",
    ("h1", "h2", "eps2", "S_A2", "fidelity"),
    "固定耦合、扫描磁场的链：纠缠能量、单对熵与保真度",
)
def chain_experiment(params: dict[str, Any], settings: ExperimentSettings) -> Row:
    J = _couplings(params)
    h = _indexed(params, "h", len(J), default=0.0)
    spec = ChainSpec.create(J, h)
    return _chain_columns(spec, _compare(spec, settings))


@experiment(
    "target_entropy",
    ("h1", "S2", "h2", "fidelity"),
    "由熵目标设计的链：分支与排序比较",
)
def target_entropy_experiment(params: dict[str, Any], settings: ExperimentSettings) -> Row:
    """给定 h1 时第 1 对磁场固定，熵目标 S2..SN 按分支策略确定其余磁场"""
    J = _couplings(params)
    n = len(J)
    branch = params.get("branch", "optimal")
    ordering = params.get("ordering", "optimal")

    if branch not in ("optimal", "high", "low"):
        raise InvalidArgumentError("未知的分支策略", field="branch", value=branch)

    row: Row = {"branch": branch, "ordering": ordering}
    if "h1" in params:
        h1 = _as_float(params, "h1")
        entropies = _indexed(params, "S", n, start=2)
        gamma1 = q_from_ratio(h1 / J[0]).gamma
        eps = [-2.0 * gamma1] + entropies_to_energies(
            entropies, branch, previous_gamma=gamma1
        )
        target = DesignTarget.from_energies(eps, J, ordering="as-given")
        first = 2
    else:
        entropies = _indexed(params, "S", n)
        target = DesignTarget.from_entropies(entropies, J, ordering=ordering, branch=branch)
        first = 1
    for i, value in enumerate(entropies, start=first):
        row[f"S{i}"] = value

    result = fields_from_energies(target)
    comparison = _compare(result.spec, settings)
    row["permutation"] = " ".join(str(k) for k in result.permutation)
    row.update(_chain_columns(result.spec, comparison))
    return row


@experiment(
    "uniform_q",
    ("q", "S", "fidelity"),
    "每对形变参数相同的设计链的保真度",
)
def uniform_q_experiment(params: dict[str, Any], settings: ExperimentSettings) -> Row:
    q = _as_float(params, "q")
    spec = uniform_q_fields(q, _couplings(params))
    comparison = _compare(spec, settings)
    row: Row = {"q": q, "S": pair_entropy(QParam.from_q(q))}
    row.update(_chain_columns(spec, comparison))
    return row
