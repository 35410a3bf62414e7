"""
中心二分纠缠

- 约化密度矩阵（对右半链 1..N 求偏迹）
- Renyi / von Neumann 熵
- 纠缠谱 E_j = −ln λ_j 与单粒子纠缠能量 ε_i
- 自由费米子谱拟合 E_j = E0 + Σ n_i ε_i
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterator
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any
from typing import Literal

import numpy as np
from pydantic import BaseModel
from pydantic import Field
from scipy.special import xlogy

from ..config import resolve
from ..exceptions import InvalidArgumentError
from ..model.qalgebra import pair_probabilities
from ..solver.exact import PureState
from ..solver.rg import QProfile

logger = logging.getLogger(__name__)

# 本征值负值容差，超出时告警
_NEGATIVE_TOLERANCE = 1e-12


class EntanglementReport(BaseModel):
    """纠缠分析报告"""

    rho_eigs: list[float]
    renyi: dict[str, float]
    vn_entropy: float = Field(ge=0.0)
    spectrum: list[float]
    single_particle: list[float]
    E0: float | None = None
    fit_residual: float | None = None


@dataclass(frozen=True)
class FreeSpectrumFit:
    """自由费米子谱拟合结果"""

    E0: float
    eps: tuple[float, ...]
    residual: float

    def __iter__(self) -> Iterator[Any]:
        return iter((self.E0, list(self.eps), self.residual))


def reduced_density_matrix(state: PureState) -> np.ndarray:
    """对右半链求偏迹，保留格点 −N..−1"""
    if state.n_sites % 2:
        raise InvalidArgumentError("格点数必须为偶数", field="n_sites", value=state.n_sites)
    half = 1 << (state.n_sites // 2)
    # 行为右半（高位比特），列为左半（低位比特）
    matrix = state.amplitudes.reshape(half, half)
    return matrix.T @ matrix.conj()


def density_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """降序本征值，数值负值截断为 0"""
    values = np.linalg.eigvalsh(rho)[::-1].copy()
    if values.min() < -_NEGATIVE_TOLERANCE:
        logger.warning("Reduced density matrix has eigenvalue %.3g < 0", values.min())
    values[values < 0] = 0.0
    return values


def _as_eigs(rho_eigs: Sequence[float] | np.ndarray) -> np.ndarray:
    values = np.asarray(rho_eigs, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise InvalidArgumentError("本征值必须为非空一维序列", field="rho_eigs")
    return np.where(values < 0, 0.0, values)


def renyi_entropy(rho_eigs: Sequence[float] | np.ndarray, alpha: float) -> float:
    """Renyi 熵 (1/(1−α)) ln Σ λ^α"""
    if alpha <= 0 or alpha == 1:
        raise InvalidArgumentError(
            "Renyi 阶数必须为正且不等于1（α=1 请使用 vn_entropy）", field="alpha", value=alpha
        )
    values = _as_eigs(rho_eigs)
    values = values[values > 0]
    return float(math.log(np.sum(values**alpha)) / (1.0 - alpha))


def vn_entropy(rho_eigs: Sequence[float] | np.ndarray) -> float:
    """von Neumann 熵 −Σ λ ln λ（0·ln 0 ≡ 0）"""
    values = _as_eigs(rho_eigs)
    return float(max(-np.sum(xlogy(values, values)), 0.0))


def entanglement_spectrum(
    rho_eigs: Sequence[float] | np.ndarray, cutoff: float | None = None
) -> np.ndarray:
    """纠缠能量 −ln λ，升序；小于 cutoff 的本征值被排除"""
    threshold = resolve("spectrum_cutoff", cutoff)
    values = _as_eigs(rho_eigs)
    kept = values[values > threshold]
    if kept.size == 0:
        raise InvalidArgumentError("本征值全部为零", field="rho_eigs")
    return np.sort(-np.log(kept))


def single_particle_energies(profile: QProfile) -> tuple[float, list[float]]:
    """ε_i = −2γ_i，E0 = Σ ln(1 + q_i²)"""
    gammas = np.asarray(profile.gammas)
    E0 = float(np.sum(np.logaddexp(0.0, 2.0 * gammas)))
    return E0, [float(-2.0 * gamma) for gamma in gammas]


def occupation_patterns(n_pairs: int) -> np.ndarray:
    """所有 n ∈ {0,1}^N，行按二进制计数排列"""
    return np.array(list(itertools.product((0, 1), repeat=n_pairs)), dtype=float)


def free_spectrum(E0: float, eps: Sequence[float]) -> np.ndarray:
    """由 (E0, ε) 生成全部 2^N 纠缠能量，升序"""
    patterns = occupation_patterns(len(eps))
    return np.sort(E0 + patterns @ np.asarray(eps, dtype=float))


def fit_free_spectrum(
    spectrum: Sequence[float] | np.ndarray,
    n_pairs: int,
    convention: Literal["positive", "negative"] = "positive",
) -> FreeSpectrumFit:
    """用 N 个单粒子能量拟合 2^N 纠缠能量

    谱本身只能确定 |ε_i|；convention 选择全为非负（E0 为最低能级）
    或全为非正（E0 为最高能级）。先贪心地逐个剥离最小的未解释能隙，
    再对匹配后的占据模式做最小二乘精修。残差为最大绝对偏差。
    """
    energies = np.sort(np.asarray(spectrum, dtype=float))
    if n_pairs < 1 or energies.size != 1 << n_pairs:
        raise InvalidArgumentError(
            "谱长度必须为 2^n_pairs",
            field="spectrum",
            context={"length": int(energies.size), "n_pairs": n_pairs},
        )
    if not np.all(np.isfinite(energies)):
        raise InvalidArgumentError("谱中含非有限值", field="spectrum")
    if convention not in ("positive", "negative"):
        raise InvalidArgumentError("未知的符号约定", field="convention", value=convention)

    # 统一到非负约定：E0 为最小值
    shifted = energies - energies[0]
    remaining = list(shifted[1:])
    generated = [0.0]
    eps: list[float] = []
    for _ in range(n_pairs):
        eps_k = min(remaining)
        eps.append(eps_k)
        new_levels = [level + eps_k for level in generated]
        for level in new_levels:
            # 移除最接近的剩余能级
            if remaining:
                nearest = min(range(len(remaining)), key=lambda j: abs(remaining[j] - level))
                remaining.pop(nearest)
        generated.extend(new_levels)

    # 最小二乘精修
    patterns = occupation_patterns(n_pairs)
    predicted = patterns @ np.asarray(eps)
    order = np.argsort(predicted, kind="stable")
    design = np.column_stack([np.ones(len(order)), patterns[order]])
    solution, *_ = np.linalg.lstsq(design, energies, rcond=None)
    E0 = float(solution[0])
    fitted_eps = solution[1:]
    residual = float(np.max(np.abs(design @ solution - energies)))

    if convention == "negative":
        # E_j = (E0 + Σε) − Σ (1 − n_i) ε_i
        E0 = float(E0 + np.sum(fitted_eps))
        fitted_eps = -fitted_eps

    return FreeSpectrumFit(
        E0=E0, eps=tuple(float(value) for value in fitted_eps), residual=residual
    )


def orient_free_spectrum(fit: FreeSpectrumFit, reference: Sequence[float]) -> FreeSpectrumFit:
    """按参考能量确定拟合结果的对序与符号

    谱只确定 |ε|：按 |ε| 的秩把拟合值分配到参考的各对，符号取参考值的符号。
    E0 随之调整，使生成的 2^N 个能级不变。
    """
    ref = np.asarray(reference, dtype=float)
    if ref.shape != (len(fit.eps),) or not np.all(np.isfinite(ref)):
        raise InvalidArgumentError(
            "参考能量必须为与拟合结果等长的有限实数列表",
            field="reference",
            context={"length": int(ref.size), "n_pairs": len(fit.eps)},
        )
    # 最低能级 = E0 + Σ min(ε, 0)，与约定无关
    lowest = fit.E0 + sum(min(value, 0.0) for value in fit.eps)

    eps = np.empty(ref.size)
    eps[np.argsort(np.abs(ref), kind="stable")] = np.sort(np.abs(fit.eps))
    eps = np.where(ref < 0, -eps, eps)
    E0 = float(lowest - np.sum(np.minimum(eps, 0.0)))
    return FreeSpectrumFit(
        E0=E0, eps=tuple(float(value) for value in eps), residual=fit.residual
    )


# =============================================================================
# 报告
# =============================================================================


def _renyi_map(values: np.ndarray, orders: Sequence[float] | None) -> dict[str, float]:
    alphas = resolve("renyi_orders", orders)
    return {f"{alpha:g}": renyi_entropy(values, alpha) for alpha in alphas}


def analyze_state(
    state: PureState,
    *,
    renyi_orders: Sequence[float] | None = None,
    reference: Sequence[float] | None = None,
) -> EntanglementReport:
    """任意纯态的纠缠报告（谱可拟合时给出单粒子能量）

    不给 reference 时单粒子能量取非负约定；给出按对序排列的参考能量
    （如自由费米子或拟设态的 ε）时，拟合结果按 orient_free_spectrum 定序定号。
    """
    values = density_eigenvalues(reduced_density_matrix(state))
    spectrum = entanglement_spectrum(values)

    single_particle: list[float] = []
    E0: float | None = None
    residual: float | None = None
    if spectrum.size == 1 << state.n_pairs:
        fit = fit_free_spectrum(spectrum, state.n_pairs)
        if reference is not None:
            fit = orient_free_spectrum(fit, reference)
        single_particle, E0, residual = list(fit.eps), fit.E0, fit.residual
    else:
        logger.info(
            "Spectrum has %d of %d levels above cutoff; skipping free-fermion fit",
            spectrum.size,
            1 << state.n_pairs,
        )

    return EntanglementReport(
        rho_eigs=values.tolist(),
        renyi=_renyi_map(values, renyi_orders),
        vn_entropy=vn_entropy(values),
        spectrum=spectrum.tolist(),
        single_particle=single_particle,
        E0=E0,
        fit_residual=residual,
    )


def profile_eigenvalues(profile: QProfile) -> np.ndarray:
    """彩虹拟设态约化密度矩阵本征值（单对概率的乘积），降序"""
    values = np.ones(1)
    for param in profile.q:
        values = np.outer(values, pair_probabilities(param)).ravel()
    return np.sort(values)[::-1]


def analyze_profile(
    profile: QProfile, *, renyi_orders: Sequence[float] | None = None
) -> EntanglementReport:
    """彩虹拟设态的解析纠缠报告"""
    values = profile_eigenvalues(profile)
    E0, eps = single_particle_energies(profile)
    return EntanglementReport(
        rho_eigs=values.tolist(),
        renyi=_renyi_map(values, renyi_orders),
        vn_entropy=vn_entropy(values),
        spectrum=free_spectrum(E0, eps).tolist(),
        single_particle=eps,
        E0=E0,
        fit_residual=0.0,
    )


def spectrum_rows(spectrum: Sequence[float]) -> list[dict[str, float]]:
    """两列 (index, energy) 导出行"""
    return [{"index": j, "energy": float(energy)} for j, energy in enumerate(spectrum)]
