"""
参数扫描

- grid: 扫描网格定义
- experiments: 可扫描的实验
- engine: 有序并行执行与 CSV 输出
"""

from .engine import SweepConfig
from .engine import SweepContext
from .engine import SweepEngine
from .engine import SweepResult
from .engine import run_sweep
from .experiments import ExperimentSettings
from .experiments import get_experiment
from .experiments import list_experiments
from .grid import Axis
from .grid import SweepGrid

__all__ = [
    "Axis",
    "SweepGrid",
    "ExperimentSettings",
    "get_experiment",
    "list_experiments",
    "SweepConfig",
    "SweepContext",
    "SweepEngine",
    "SweepResult",
    "run_sweep",
]
