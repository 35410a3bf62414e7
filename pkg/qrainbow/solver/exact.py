"""
精确对角化

稠密对称本征求解器的封装：
- 在各磁化扇区并行对角化，确定性地合并全局最小值
- 本征矢嵌回 2^{2N} 全空间并固定相位（首个非零振幅为正）
- 简并子空间保真度（投影算符）
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from typing import Union

import numpy as np
from scipy.linalg import eigh

from ..config import resolve
from ..exceptions import InvalidArgumentError
from ..model.chain import ChainSpec
from ..model.chain import SectorBlock
from ..model.chain import build_hamiltonian

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12
# 相位固定时视为零的振幅
_PHASE_CUTOFF = 1e-12


@dataclass(frozen=True)
class PureState:
    """2N 格点纯态（BasisConvention 顺序的实振幅）"""

    n_sites: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amplitudes = np.asarray(self.amplitudes, dtype=float)
        if amplitudes.shape != (1 << self.n_sites,):
            raise InvalidArgumentError(
                "振幅长度必须为 2^n_sites",
                field="amplitudes",
                context={"n_sites": self.n_sites, "length": amplitudes.size},
            )
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidArgumentError("态矢未归一化", field="amplitudes", value=norm)
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def from_vector(cls, vector: np.ndarray, n_sites: int | None = None) -> PureState:
        """归一化任意非零向量"""
        vector = np.asarray(vector, dtype=float)
        if n_sites is None:
            n_sites = int(vector.size).bit_length() - 1
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise InvalidArgumentError("零向量无法归一化", field="vector")
        return cls(n_sites, vector / norm)

    @property
    def n_pairs(self) -> int:
        return self.n_sites // 2

    def overlap(self, other: PureState) -> float:
        """⟨self|other⟩"""
        _check_same_dimension(self, other)
        return float(np.dot(self.amplitudes, other.amplitudes))

    def expectation(self, blocks: list[SectorBlock]) -> float:
        """⟨ψ|H|ψ⟩，H 以扇区块给出"""
        total = 0.0
        for block in blocks:
            local = self.amplitudes[block.indices]
            total += float(local @ block.matrix @ local)
        return total


@dataclass(frozen=True)
class GroundStateResult:
    """基态求解结果"""

    energy: float
    state: PureState
    gap: float
    degeneracy: int
    subspace: tuple[PureState, ...] = field(default=())
    sectors: tuple[int, ...] = field(default=())
    residual: float = 0.0
    norm_estimate: float = 0.0

    def projector_weight(self, other: PureState) -> float:
        """other 在简并基态子空间上的投影模方"""
        vectors = self.subspace or (self.state,)
        return float(sum(vector.overlap(other) ** 2 for vector in vectors))


StateLike = Union[PureState, GroundStateResult]


def _check_same_dimension(a: PureState, b: PureState) -> None:
    if a.n_sites != b.n_sites:
        raise InvalidArgumentError(
            "两态维数不一致", context={"left": a.n_sites, "right": b.n_sites}
        )


def fix_phase(vector: np.ndarray) -> np.ndarray:
    """首个非零振幅取正"""
    nonzero = np.flatnonzero(np.abs(vector) > _PHASE_CUTOFF)
    if nonzero.size and vector[nonzero[0]] < 0:
        return -vector
    return vector


def _diagonalize(block: SectorBlock) -> tuple[np.ndarray, np.ndarray]:
    return eigh(block.matrix)


def default_sectors(spec: ChainSpec, full_sector_search: bool | None = None) -> list[int] | None:
    """基态搜索范围：小链搜索全部扇区，大链仅 Sz = 0"""
    if full_sector_search is None:
        full_sector_search = spec.n_pairs <= resolve("full_sector_max_pairs")
    return None if full_sector_search else [0]


def ground_state(
    spec: ChainSpec,
    *,
    full_sector_search: bool | None = None,
    threads: int | None = None,
    size_cap: int | None = None,
    dense_block_cap: int | None = None,
    gap_rel_tol: float | None = None,
) -> GroundStateResult:
    """精确基态、能隙与简并度

    Args:
        spec: 链参数
        full_sector_search: 是否搜索全部磁化扇区（默认 N ≤ full_sector_max_pairs 时是）
        threads: 并行对角化线程数
        size_cap: 全空间维数上限
        dense_block_cap: 单块维数上限
        gap_rel_tol: 简并判据（相对 max|E|）
    """
    workers = resolve("threads", threads)
    blocks = build_hamiltonian(
        spec,
        sectors=default_sectors(spec, full_sector_search),
        size_cap=size_cap,
        dense_block_cap=dense_block_cap,
        threads=workers,
    )
    assert isinstance(blocks, list)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            spectra = list(executor.map(_diagonalize, blocks))
    else:
        spectra = [_diagonalize(block) for block in blocks]

    all_values = np.concatenate([values for values, _ in spectra])
    scale = float(np.max(np.abs(all_values)))
    tol = resolve("gap_rel_tol", gap_rel_tol) * scale
    energy = float(np.min(all_values))

    subspace: list[PureState] = []
    sectors: list[int] = []
    residual = 0.0
    above = all_values[all_values > energy + tol]
    gap = float(np.min(above) - energy) if above.size else 0.0

    for block, (values, vectors) in zip(blocks, spectra):
        for k in np.flatnonzero(values <= energy + tol):
            local = vectors[:, k]
            residual = max(
                residual,
                float(np.linalg.norm(block.matrix @ local - values[k] * local)),
            )
            full = np.zeros(spec.dimension)
            full[block.indices] = local
            subspace.append(PureState(spec.n_sites, fix_phase(full)))
            sectors.append(block.magnetization)

    if len(subspace) > 1:
        logger.info(
            "Ground level is %d-fold degenerate (sectors %s)", len(subspace), sectors
        )

    return GroundStateResult(
        energy=energy,
        state=subspace[0],
        gap=gap,
        degeneracy=len(subspace),
        subspace=tuple(subspace),
        sectors=tuple(sectors),
        residual=residual,
        norm_estimate=scale,
    )


def fidelity(a: StateLike, b: StateLike) -> float:
    """保真度 |⟨a|b⟩|²，简并基态时取投影模方"""
    if isinstance(a, GroundStateResult) and isinstance(b, GroundStateResult):
        return _clip(b.projector_weight(a.state))
    if isinstance(a, GroundStateResult):
        _check_same_dimension(a.state, _as_state(b))
        return _clip(a.projector_weight(_as_state(b)))
    if isinstance(b, GroundStateResult):
        _check_same_dimension(a, b.state)
        return _clip(b.projector_weight(a))
    return _clip(a.overlap(b) ** 2)


def _as_state(value: StateLike) -> PureState:
    return value.state if isinstance(value, GroundStateResult) else value


def _clip(value: float) -> float:
    return float(min(max(value, 0.0), 1.0))


def expectation_value(spec: ChainSpec, state: PureState, **kwargs: object) -> float:
    """⟨ψ|H(spec)|ψ⟩"""
    if state.n_sites != spec.n_sites:
        raise InvalidArgumentError(
            "态与链格点数不一致", context={"state": state.n_sites, "chain": spec.n_sites}
        )
    blocks = build_hamiltonian(spec, **kwargs)  # type: ignore[arg-type]
    assert isinstance(blocks, list)
    return state.expectation(blocks)


def basis_state(n_sites: int, index: int) -> PureState:
    """计算基矢 |index⟩"""
    vector = np.zeros(1 << n_sites)
    vector[index] = 1.0
    return PureState(n_sites, vector)
