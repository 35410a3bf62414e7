"""
参数扫描网格

网格由若干轴（线性/对数等分或显式取值）与固定参数组成，
扫描点按轴的行优先顺序展开：最后一根轴变化最快。
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Iterator
from typing import Any
from typing import Literal

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import ValidationError
from pydantic import model_validator

from ..exceptions import convert_validation_error

ExperimentName = Literal["chain", "uniform_q", "target_entropy", "pair_renyi"]


class Axis(BaseModel):
    """扫描轴：min/max/count 等分，或显式 values"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(min_length=1)
    min: float | None = None
    max: float | None = None
    count: int | None = Field(default=None, ge=2)
    scale: Literal["linear", "log"] = "linear"
    values: list[float] | None = None

    @model_validator(mode="after")
    def _check_range(self) -> Axis:
        if self.values is not None:
            if any(v is not None for v in (self.min, self.max, self.count)):
                raise ValueError(f"轴 '{self.name}' 不能同时给出 values 与 min/max/count")
            if len(self.values) < 2:
                raise ValueError(f"轴 '{self.name}' 至少需要2个取值")
            if not all(math.isfinite(v) for v in self.values):
                raise ValueError(f"轴 '{self.name}' 的取值必须为有限实数")
            return self

        if self.min is None or self.max is None or self.count is None:
            raise ValueError(f"轴 '{self.name}' 需要 min、max 与 count")
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise ValueError(f"轴 '{self.name}' 的端点必须为有限实数")
        if self.scale == "log" and (self.min <= 0 or self.max <= 0):
            raise ValueError(f"对数轴 '{self.name}' 的端点必须为正")
        return self

    def points(self) -> list[float]:
        """轴上的取值"""
        if self.values is not None:
            return [float(v) for v in self.values]
        assert self.min is not None and self.max is not None and self.count is not None
        if self.scale == "log":
            grid = np.geomspace(self.min, self.max, self.count)
        else:
            grid = np.linspace(self.min, self.max, self.count)
        return [float(v) for v in grid]


class SweepGrid(BaseModel):
    """扫描定义"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    experiment: ExperimentName
    axes: list[Axis] = Field(default_factory=list)
    fixed: dict[str, Any] = Field(default_factory=dict)
    columns: list[str] | None = None

    @model_validator(mode="after")
    def _check_names(self) -> SweepGrid:
        names = [axis.name for axis in self.axes]
        duplicated = sorted({name for name in names if names.count(name) > 1})
        if duplicated:
            raise ValueError(f"轴名称重复: {duplicated}")
        overlap = sorted(set(names) & set(self.fixed))
        if overlap:
            raise ValueError(f"参数同时出现在轴与固定参数中: {overlap}")
        if self.columns is not None and not self.columns:
            raise ValueError("columns 不能为空列表")
        return self

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SweepGrid:
        """从 JSON 字典构造"""
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise convert_validation_error(e, "SweepGrid")

    @classmethod
    def from_json(cls, content: str) -> SweepGrid:
        return cls.from_dict(json.loads(content))

    @property
    def n_points(self) -> int:
        return math.prod(len(axis.points()) for axis in self.axes)

    def points(self) -> Iterator[dict[str, Any]]:
        """行优先展开的扫描点（含固定参数）"""
        names = [axis.name for axis in self.axes]
        for combination in itertools.product(*(axis.points() for axis in self.axes)):
            yield {**self.fixed, **dict(zip(names, combination))}
