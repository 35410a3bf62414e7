"""
qrainbow 输出格式化器

- JSON格式化器（支持 numpy 数组与标量、pydantic 模型）
- CSV格式化器（固定有效数字，行序即输入顺序）
- 格式化器注册表
"""

from __future__ import annotations

import csv
import json
import math
from abc import ABC
from abc import abstractmethod
from io import StringIO
from typing import Any

import numpy as np
from pydantic import BaseModel

from ..config import resolve
from ..exceptions import FormatterError


class BaseFormatter(ABC):
    """格式化器基类"""

    def __init__(self, name: str, format_type: str, description: str = ""):
        self.name = name
        self.format_type = format_type
        self.description = description

    @abstractmethod
    def format(self, data: Any, **kwargs: Any) -> str:
        """格式化数据"""

    @abstractmethod
    def parse(self, content: str, **kwargs: Any) -> Any:
        """解析格式化的内容"""

    def _error(self, message: str, **context: Any) -> FormatterError:
        return FormatterError(
            message, formatter_name=self.name, format_type=self.format_type, context=context
        )

    def __call__(self, data: Any, **kwargs: Any) -> str:
        """使格式化器可调用"""
        return self.format(data, **kwargs)


def to_plain(data: Any) -> Any:
    """递归转换为 JSON 原生类型"""
    if isinstance(data, BaseModel):
        return to_plain(data.model_dump(by_alias=True))
    if isinstance(data, dict):
        return {str(key): to_plain(value) for key, value in data.items()}
    if isinstance(data, np.ndarray):
        return to_plain(data.tolist())
    if isinstance(data, (list, tuple)):
        return [to_plain(item) for item in data]
    if isinstance(data, (bool, np.bool_)):
        return bool(data)
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, np.floating):
        return float(data)
    if hasattr(data, "to_dict"):
        return to_plain(data.to_dict())
    return data


class JSONFormatter(BaseFormatter):
    """JSON格式化器"""

    def __init__(self) -> None:
        super().__init__("json", "application/json", "JSON格式化器")

    def format(
        self,
        data: Any,
        indent: int | None = 2,
        ensure_ascii: bool = False,
        sort_keys: bool = False,
        **kwargs: Any,
    ) -> str:
        """格式化为JSON"""
        try:
            return json.dumps(
                to_plain(data),
                indent=indent,
                ensure_ascii=ensure_ascii,
                sort_keys=sort_keys,
                **kwargs,
            )
        except (TypeError, ValueError) as e:
            raise self._error(f"JSON格式化失败: {e!s}")

    def parse(self, content: str, **kwargs: Any) -> Any:
        """解析JSON内容，出错时给出行列号"""
        try:
            return json.loads(content, **kwargs)
        except json.JSONDecodeError as e:
            raise self._error(
                f"JSON解析失败: {e.msg} (行 {e.lineno}, 列 {e.colno})",
                line=e.lineno,
                column=e.colno,
            )


class CSVFormatter(BaseFormatter):
    """CSV格式化器"""

    def __init__(self) -> None:
        super().__init__("csv", "text/csv", "CSV格式化器")

    def format(
        self,
        data: Any,
        headers: list[str] | None = None,
        delimiter: str = ",",
        digits: int | None = None,
        **kwargs: Any,
    ) -> str:
        """格式化为CSV，浮点数按固定有效数字输出"""
        rows = self._prepare_csv_data(data)
        if headers is None:
            if not rows:
                return ""
            headers = list(rows[0].keys())
        precision = resolve("csv_significant_digits", digits)

        output = StringIO()
        writer = csv.writer(output, delimiter=delimiter, lineterminator="\n", **kwargs)
        writer.writerow(headers)
        for row in rows:
            missing = [header for header in headers if header not in row]
            if missing:
                raise self._error("行缺少列", columns=missing)
            writer.writerow(self._format_csv_value(row[header], precision) for header in headers)
        return output.getvalue()

    def parse(self, content: str, delimiter: str = ",", **kwargs: Any) -> list[dict[str, str]]:
        """解析CSV内容"""
        try:
            reader = csv.DictReader(StringIO(content), delimiter=delimiter, **kwargs)
            return [dict(row) for row in reader]
        except csv.Error as e:
            raise self._error(f"CSV解析失败: {e!s}")

    def _prepare_csv_data(self, data: Any) -> list[dict[str, Any]]:
        """准备CSV数据"""
        if isinstance(data, dict):
            return [data]
        if isinstance(data, (list, tuple)):
            if not all(isinstance(item, dict) for item in data):
                raise self._error("CSV 数据必须为字典列表")
            return list(data)
        raise self._error("不支持的CSV数据类型", type=type(data).__name__)

    def _format_csv_value(self, value: Any, digits: int) -> str:
        """格式化CSV值"""
        if value is None:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            value = float(value)
            if math.isnan(value):
                return "nan"
            if math.isinf(value):
                return "inf" if value > 0 else "-inf"
            return format(value, f".{digits}g")
        return str(value)


class FormatterRegistry:
    """格式化器注册表"""

    def __init__(self) -> None:
        self._formatters: dict[str, BaseFormatter] = {}
        self._mime_type_mapping: dict[str, str] = {}

        # 注册内置格式化器
        self._register_builtin_formatters()

    def register_formatter(
        self, name: str, formatter: BaseFormatter, mime_types: list[str] | None = None
    ) -> None:
        """注册格式化器"""
        self._formatters[name] = formatter
        for mime_type in mime_types or []:
            self._mime_type_mapping[mime_type] = name

    def get_formatter(self, name: str) -> BaseFormatter | None:
        """获取格式化器"""
        return self._formatters.get(name)

    def get_formatter_by_mime_type(self, mime_type: str) -> BaseFormatter | None:
        """根据MIME类型获取格式化器"""
        formatter_name = self._mime_type_mapping.get(mime_type)
        return self.get_formatter(formatter_name) if formatter_name else None

    def list_formatters(self) -> list[str]:
        """列出所有格式化器"""
        return list(self._formatters.keys())

    def _require(self, format_name: str) -> BaseFormatter:
        formatter = self.get_formatter(format_name)
        if not formatter:
            raise FormatterError(
                f"未找到格式化器: {format_name}",
                formatter_name=format_name,
                format_type="unknown",
            )
        return formatter

    def format_data(self, data: Any, format_name: str, **kwargs: Any) -> str:
        """格式化数据"""
        return self._require(format_name).format(data, **kwargs)

    def parse_data(self, content: str, format_name: str, **kwargs: Any) -> Any:
        """解析格式化的数据"""
        return self._require(format_name).parse(content, **kwargs)

    def _register_builtin_formatters(self) -> None:
        """注册内置格式化器"""
        self.register_formatter("json", JSONFormatter(), ["application/json", "text/json"])
        self.register_formatter("csv", CSVFormatter(), ["text/csv", "application/csv"])


# 全局格式化器注册表实例
formatter_registry = FormatterRegistry()


# 便捷函数
def format_as_json(data: Any, **kwargs: Any) -> str:
    """格式化为JSON"""
    return formatter_registry.format_data(data, "json", **kwargs)


def format_as_csv(data: Any, **kwargs: Any) -> str:
    """格式化为CSV"""
    return formatter_registry.format_data(data, "csv", **kwargs)


def parse_json(content: str, **kwargs: Any) -> Any:
    """解析JSON"""
    return formatter_registry.parse_data(content, "json", **kwargs)


def parse_csv(content: str, **kwargs: Any) -> Any:
    """解析CSV"""
    return formatter_registry.parse_data(content, "csv", **kwargs)
