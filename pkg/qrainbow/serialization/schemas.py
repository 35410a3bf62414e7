"""
报告模型与 JSON Schema 导出

所有命令行输出文件均由这里的 pydantic 模型校验后写出，
export_json_schemas 生成对应的 schema 文件。
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from ..analysis.entanglement import EntanglementReport
from ..design.designer import DesignTarget
from ..model.chain import ChainSpec
from ..solver.rg import QProfile

logger = logging.getLogger(__name__)


class ReportModel(BaseModel):
    """报告模型基类"""

    model_config = ConfigDict(extra="forbid")


class QProfileReport(ReportModel):
    """重整化参数"""

    q: list[float]
    gamma: list[float]
    J_eff: list[float]
    h_eff: list[float]
    validity_ratio: list[float]

    @classmethod
    def from_profile(cls, profile: QProfile) -> QProfileReport:
        return cls.model_validate(profile.to_dict())


class ExactSection(ReportModel):
    """精确对角化结果"""

    energy: float
    gap: float = Field(ge=0.0)
    degeneracy: int = Field(ge=1)
    sectors: list[int]
    residual: float = Field(ge=0.0)


class AnsatzSection(ReportModel):
    """彩虹拟设态与精确基态的比较"""

    energy: float
    fidelity: float = Field(ge=0.0, le=1.0)


class EntanglementSection(ReportModel):
    exact: EntanglementReport
    ansatz: EntanglementReport


class FreeFermionSection(ReportModel):
    """关联矩阵方法的单粒子纠缠能量（−ln q² 约定，按对序 i = 1..N，饱和模式为 null）"""

    eps: list[float | None]
    entropy: float = Field(ge=0.0)
    zero_modes: int = Field(ge=0)


class SimulationReport(ReportModel):
    """simulate 命令输出"""

    spec: dict[str, Any]
    q_profile: QProfileReport
    exact: ExactSection
    ansatz: AnsatzSection
    entanglement: EntanglementSection
    freefermion: FreeFermionSection

    @property
    def chain(self) -> ChainSpec:
        return ChainSpec.from_dict(self.spec)


class DesignReport(ReportModel):
    """design 命令输出"""

    target: DesignTarget
    spec: dict[str, Any]
    permutation: list[int]
    targets: list[float]
    achieved: list[float]
    max_deviation: float = Field(ge=0.0)
    predicted: EntanglementReport


class PrimeReport(ReportModel):
    """prime 命令输出"""

    s: float
    primes: list[int]
    eps: list[float]
    A_F: float
    E0: float
    euler_product: float
    squarefree_sum: float
    reference: float
    truncation: int
    converged: bool
    design: DesignReport


REPORT_MODELS: dict[str, type[BaseModel]] = {
    "chain_spec": ChainSpec,
    "design_target": DesignTarget,
    "simulation_report": SimulationReport,
    "design_report": DesignReport,
    "prime_report": PrimeReport,
}


def _all_models() -> dict[str, type[BaseModel]]:
    # 扫描网格模型位于 sweep 包，按需导入
    from ..sweep.grid import SweepGrid

    return {**REPORT_MODELS, "sweep_grid": SweepGrid}


def json_schemas() -> dict[str, dict[str, Any]]:
    """全部报告模型的 JSON Schema"""
    return {
        name: model.model_json_schema(by_alias=True) for name, model in _all_models().items()
    }


def export_json_schemas(directory: str | Path) -> list[Path]:
    """写出 <name>.schema.json，返回文件列表"""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, schema in json_schemas().items():
        path = target / f"{name}.schema.json"
        path.write_text(
            json.dumps(schema, indent=2, ensure_ascii=False, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        written.append(path)
    logger.info("Wrote %d JSON schemas to %s", len(written), target)
    return written
