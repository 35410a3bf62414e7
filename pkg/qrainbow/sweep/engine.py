"""
qrainbow 扫描引擎

- 工作线程池逐点计算，结果按网格顺序缓冲输出
- 同一输入在任意线程数下产生逐字节相同的 CSV
- 进度回调与失败点记录
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields
from typing import Any

from ..config import resolve
from ..exceptions import InvalidArgumentError
from ..exceptions import QRainbowError
from ..serialization.formatters import format_as_csv
from .experiments import ExperimentSettings
from .experiments import Row
from .experiments import get_experiment
from .grid import SweepGrid

logger = logging.getLogger(__name__)


@dataclass
class SweepConfig:
    """扫描配置"""

    # 并行配置
    threads: int | None = None

    # 单点资源配置
    size_cap: int | None = None
    validity_threshold: float | None = None

    # 输出配置
    significant_digits: int | None = None

    # 监控配置
    progress_callback: Callable[[dict[str, Any]], None] | None = None

    def copy(self, **kwargs: Any) -> SweepConfig:
        """创建配置副本"""
        values = {item.name: getattr(self, item.name) for item in fields(self)}
        values.update(kwargs)
        return SweepConfig(**values)

    @property
    def settings(self) -> ExperimentSettings:
        return ExperimentSettings(
            size_cap=self.size_cap, validity_threshold=self.validity_threshold
        )


@dataclass
class SweepContext:
    """扫描上下文"""

    grid: SweepGrid
    config: SweepConfig = field(default_factory=SweepConfig)

    # 执行状态
    total_points: int = 0
    processed_points: int = 0

    # 时间跟踪
    start_time: float = field(default_factory=time.time)

    def update_progress(self, processed: int = 1) -> None:
        """更新进度"""
        self.processed_points += processed
        if self.config.progress_callback:
            self.config.progress_callback(self.get_progress_info())

    def get_progress_info(self) -> dict[str, Any]:
        """获取进度信息"""
        return {
            "experiment": self.grid.experiment,
            "total_points": self.total_points,
            "processed_points": self.processed_points,
            "progress_percentage": (
                self.processed_points / self.total_points * 100 if self.total_points else 0
            ),
            "elapsed_time": self.get_elapsed_time(),
        }

    def get_elapsed_time(self) -> float:
        """获取执行时间"""
        return time.time() - self.start_time


@dataclass(frozen=True)
class SweepResult:
    """按网格顺序排列的结果表"""

    experiment: str
    columns: tuple[str, ...]
    rows: tuple[Row, ...]

    def to_csv(self, digits: int | None = None) -> str:
        return format_as_csv(list(self.rows), headers=list(self.columns), digits=digits)

    def column(self, name: str) -> list[Any]:
        if name not in self.columns:
            raise InvalidArgumentError("结果中没有该列", field="column", value=name)
        return [row[name] for row in self.rows]


class SweepEngine:
    """扫描引擎"""

    def __init__(self, config: SweepConfig | None = None):
        self.config = config or SweepConfig()

    def run(self, grid: SweepGrid, config: SweepConfig | None = None) -> SweepResult:
        """执行扫描"""
        effective_config = config or self.config
        context = SweepContext(grid=grid, config=effective_config, total_points=grid.n_points)
        experiment = get_experiment(grid.experiment)
        settings = effective_config.settings
        points = list(grid.points())
        workers = max(1, min(int(resolve("threads", effective_config.threads)), len(points)))

        logger.info(
            "Sweep '%s': %d point(s) on %d worker(s)", grid.experiment, len(points), workers
        )

        def evaluate(indexed: tuple[int, dict[str, Any]]) -> Row:
            index, params = indexed
            try:
                row = experiment(params, settings)
            except QRainbowError as e:
                e.context.setdefault("point", index)
                raise
            # 参数列（包括轴与标量固定参数）始终可选
            merged = {
                key: value
                for key, value in params.items()
                if not isinstance(value, (list, tuple, dict))
            }
            merged.update(row)
            return merged

        rows: list[Row] = []
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                # map 按提交顺序返回
                for row in executor.map(evaluate, enumerate(points)):
                    rows.append(row)
                    context.update_progress()
        else:
            for indexed in enumerate(points):
                rows.append(evaluate(indexed))
                context.update_progress()

        columns = tuple(grid.columns or experiment.default_columns)
        for index, row in enumerate(rows):
            missing = [column for column in columns if column not in row]
            if missing:
                raise InvalidArgumentError(
                    "扫描结果缺少列",
                    field="columns",
                    value=missing,
                    context={"point": index, "available": sorted(row)},
                )

        logger.info(
            "Sweep '%s' finished in %.2fs", grid.experiment, context.get_elapsed_time()
        )
        return SweepResult(
            experiment=grid.experiment,
            columns=columns,
            rows=tuple({column: row[column] for column in columns} for row in rows),
        )


def run_sweep(grid: SweepGrid, config: SweepConfig | None = None) -> SweepResult:
    """便捷函数"""
    return SweepEngine(config).run(grid)
