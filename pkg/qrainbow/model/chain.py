"""
2N 格点 q 形变彩虹链哈密顿量

H = Σ_i h_i(σᶻ_{-i} − σᶻ_i) + J_1(σˣ_{-1}σˣ_1 + σʸ_{-1}σʸ_1)
    + Σ_{i≥2} J_i(XX 项作用于键 (−i, −(i−1)) 与 (i−1, i))

基矢约定：格点顺序 (−N, …, −1, 1, …, N) 对应比特 0 … 2N−1，
自旋向上记为 1，基矢编号 Σ bit_ℓ·2^ℓ。哈密顿量按总磁化 Σσᶻ 分块稠密存储。
"""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Iterable
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Any

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import ValidationError
from pydantic import model_validator

from ..config import resolve
from ..exceptions import InvalidArgumentError
from ..exceptions import ResourceError
from ..exceptions import convert_validation_error
from .qalgebra import q_from_ratio
from .qalgebra import quantum_dimension

logger = logging.getLogger(__name__)


class ChainSpec(BaseModel):
    """链参数：对数 N、耦合 J_i 与磁场 h_i（J[0] 为中心键）"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    n_pairs: int = Field(alias="pairs", ge=1)
    J: tuple[float, ...]
    h: tuple[float, ...]

    @model_validator(mode="after")
    def _check_profile(self) -> ChainSpec:
        if len(self.J) != self.n_pairs or len(self.h) != self.n_pairs:
            raise ValueError(
                f"J 与 h 的长度必须等于 pairs={self.n_pairs} "
                f"(J: {len(self.J)}, h: {len(self.h)})"
            )
        if not all(math.isfinite(value) for value in (*self.J, *self.h)):
            raise ValueError("J 与 h 必须为有限实数")
        if any(value <= 0 for value in self.J):
            raise ValueError("所有耦合 J_i 必须为正")
        return self

    @classmethod
    def create(cls, J: Sequence[float], h: Sequence[float]) -> ChainSpec:
        """由耦合与磁场列表构造，错误统一为参数错误"""
        return cls.from_dict({"pairs": len(J), "J": list(J), "h": list(h)})

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ChainSpec:
        """从 JSON 字典构造"""
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise convert_validation_error(e, "ChainSpec")

    @classmethod
    def from_json(cls, content: str) -> ChainSpec:
        """从 JSON 文本构造"""
        return cls.from_dict(json.loads(content))

    def to_dict(self) -> dict[str, Any]:
        """序列化为 {"pairs", "J", "h"}"""
        return {"pairs": self.n_pairs, "J": list(self.J), "h": list(self.h)}

    def to_json(self) -> str:
        """序列化为 JSON 文本"""
        return json.dumps(self.to_dict(), indent=2)

    @property
    def n_sites(self) -> int:
        return 2 * self.n_pairs

    @property
    def dimension(self) -> int:
        return 1 << self.n_sites

    def with_fields(self, h: Sequence[float]) -> ChainSpec:
        """替换磁场分布"""
        return ChainSpec.create(self.J, h)


# =============================================================================
# 基矢约定
# =============================================================================


@dataclass(frozen=True)
class BasisConvention:
    """格点与比特位的双射"""

    n_pairs: int

    @property
    def n_sites(self) -> int:
        return 2 * self.n_pairs

    @property
    def site_order(self) -> tuple[int, ...]:
        n = self.n_pairs
        return (*range(-n, 0), *range(1, n + 1))

    def bit(self, site: int) -> int:
        """格点 → 比特位"""
        n = self.n_pairs
        if site == 0 or abs(site) > n:
            raise InvalidArgumentError(f"格点必须在 ±1 … ±{n} 之间", field="site", value=site)
        return n + site if site < 0 else n - 1 + site

    def pair_bits(self, pair: int) -> tuple[int, int]:
        """第 pair 对 (−i, i) 的比特位"""
        return self.bit(-pair), self.bit(pair)

    def bonds(self, couplings: Sequence[float]) -> list[tuple[int, int, float]]:
        """相邻键 (比特 a, 比特 b, J)"""
        n = self.n_pairs
        bonds = [(n - 1, n, float(couplings[0]))]
        for i in range(2, n + 1):
            bonds.append((n - i, n - i + 1, float(couplings[i - 1])))
            bonds.append((n + i - 2, n + i - 1, float(couplings[i - 1])))
        return bonds

    def spins(self, indices: np.ndarray) -> np.ndarray:
        """基矢编号 → σᶻ 本征值矩阵 (状态数, 2N)"""
        bits = (indices[:, None] >> np.arange(self.n_sites)) & 1
        return 2 * bits - 1

    def magnetizations(self) -> list[int]:
        """所有扇区的 Σσᶻ，升序"""
        return list(range(-self.n_sites, self.n_sites + 1, 2))

    def sector_indices(self, magnetization: int) -> np.ndarray:
        """给定磁化扇区的有序基矢编号"""
        all_indices = np.arange(1 << self.n_sites, dtype=np.int64)
        ups = ((all_indices[:, None] >> np.arange(self.n_sites)) & 1).sum(axis=1)
        return all_indices[2 * ups - self.n_sites == magnetization]


@dataclass(frozen=True)
class SectorBlock:
    """固定磁化扇区内的稠密哈密顿量"""

    magnetization: int
    indices: np.ndarray
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.indices)


# =============================================================================
# 组装
# =============================================================================


def _sector_matrix(
    basis: BasisConvention,
    couplings: Sequence[float],
    fields: Sequence[float],
    indices: np.ndarray,
) -> np.ndarray:
    n = basis.n_pairs
    dim = len(indices)
    matrix = np.zeros((dim, dim))

    spins = basis.spins(indices)
    diagonal = np.zeros(dim)
    for i in range(1, n + 1):
        left, right = basis.pair_bits(i)
        diagonal += fields[i - 1] * (spins[:, left] - spins[:, right])
    matrix[np.diag_indices(dim)] = diagonal

    # XX 项: σˣσˣ + σʸσʸ = 2(σ⁺σ⁻ + σ⁻σ⁺)
    for a, b, coupling in basis.bonds(couplings):
        if coupling == 0.0:
            continue
        rows = np.nonzero(((indices >> a) ^ (indices >> b)) & 1)[0]
        flipped = indices[rows] ^ ((1 << a) | (1 << b))
        cols = np.searchsorted(indices, flipped)
        matrix[rows, cols] += 2.0 * coupling

    return matrix


def assemble_dense(
    n_pairs: int, couplings: Sequence[float], fields: Sequence[float]
) -> np.ndarray:
    """不做参数校验的全空间稠密矩阵（允许 J_i = 0，用于微扰算符拆分）"""
    basis = BasisConvention(n_pairs)
    indices = np.arange(1 << basis.n_sites, dtype=np.int64)
    return _sector_matrix(basis, couplings, fields, indices)


def build_sector_block(spec: ChainSpec, magnetization: int) -> SectorBlock:
    """组装单个磁化扇区"""
    basis = BasisConvention(spec.n_pairs)
    indices = basis.sector_indices(magnetization)
    matrix = _sector_matrix(basis, spec.J, spec.h, indices)
    indices.setflags(write=False)
    matrix.setflags(write=False)
    return SectorBlock(magnetization=magnetization, indices=indices, matrix=matrix)


def check_size(spec: ChainSpec, size_cap: int | None = None) -> None:
    """全空间维数检查"""
    cap = resolve("size_cap", size_cap)
    if spec.dimension > cap:
        raise ResourceError(
            f"Hilbert 空间维数超过上限 (N={spec.n_pairs})",
            dimension=spec.dimension,
            cap=cap,
        )


def build_hamiltonian(
    spec: ChainSpec,
    *,
    blocked: bool = True,
    sectors: Iterable[int] | None = None,
    size_cap: int | None = None,
    dense_block_cap: int | None = None,
    threads: int | None = None,
) -> np.ndarray | list[SectorBlock]:
    """组装哈密顿量

    Args:
        spec: 链参数
        blocked: True 返回按磁化升序的扇区块列表，False 返回全空间稠密矩阵
        sectors: 仅组装指定磁化扇区（仅分块模式）
        size_cap: 全空间维数上限
        dense_block_cap: 单个稠密块维数上限
        threads: 并行组装扇区的线程数
    """
    check_size(spec, size_cap)
    block_cap = resolve("dense_block_cap", dense_block_cap)
    basis = BasisConvention(spec.n_pairs)

    if not blocked:
        if spec.dimension > block_cap:
            raise ResourceError(
                "全空间稠密矩阵超过单块上限", dimension=spec.dimension, cap=block_cap
            )
        indices = np.arange(spec.dimension, dtype=np.int64)
        return _sector_matrix(basis, spec.J, spec.h, indices)

    magnetizations = basis.magnetizations() if sectors is None else sorted(set(sectors))
    for magnetization in magnetizations:
        if magnetization not in basis.magnetizations():
            raise InvalidArgumentError(
                "磁化扇区不存在", field="sectors", value=magnetization
            )
        # 扇区维数 C(2N, ups)
        size = math.comb(basis.n_sites, (magnetization + basis.n_sites) // 2)
        if size > block_cap:
            raise ResourceError(
                f"扇区 M={magnetization} 超过单块上限", dimension=size, cap=block_cap
            )

    workers = resolve("threads", threads)
    build = partial(build_sector_block, spec)
    if workers > 1 and len(magnetizations) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            blocks = list(executor.map(build, magnetizations))
    else:
        blocks = [build(m) for m in magnetizations]

    logger.info(
        "Assembled %d sector blocks for N=%d (dims: %s)",
        len(blocks),
        spec.n_pairs,
        [block.dimension for block in blocks],
    )
    return blocks


def ground_energy_pair(J: float, h: float) -> float:
    """两格点基态能量 −[2]_q J，q = q_from_ratio(h/J)"""
    if not J > 0:
        raise InvalidArgumentError("耦合 J 必须为正", field="J", value=J)
    return -quantum_dimension(2, q_from_ratio(h / J)) * J
