"""
qrainbow 序列化模块

- JSON / CSV 格式化器与注册表
- 报告模型与 JSON Schema 导出
"""

from .formatters import BaseFormatter
from .formatters import CSVFormatter
from .formatters import FormatterRegistry
from .formatters import JSONFormatter
from .formatters import format_as_csv
from .formatters import format_as_json
from .formatters import formatter_registry
from .formatters import parse_csv
from .formatters import parse_json
from .formatters import to_plain
from .schemas import AnsatzSection
from .schemas import DesignReport
from .schemas import EntanglementSection
from .schemas import ExactSection
from .schemas import FreeFermionSection
from .schemas import PrimeReport
from .schemas import QProfileReport
from .schemas import SimulationReport
from .schemas import export_json_schemas
from .schemas import json_schemas

__all__ = [
    # 格式化器
    "BaseFormatter",
    "JSONFormatter",
    "CSVFormatter",
    "FormatterRegistry",
    "formatter_registry",
    "format_as_json",
    "format_as_csv",
    "parse_json",
    "parse_csv",
    "to_plain",
    # 报告模型
    "QProfileReport",
    "ExactSection",
    "AnsatzSection",
    "EntanglementSection",
    "FreeFermionSection",
    "SimulationReport",
    "DesignReport",
    "PrimeReport",
    "json_schemas",
    "export_json_schemas",
]
