"""
qrainbow 异常系统

统一的异常层次结构：
- QRainbowError 基础异常（消息、上下文、退出码）
- 参数错误、资源上限、数值溢出
- 设计器错误（退化目标、回代校验失败）
- 格式化器错误
- 警告类别（有效性比值、零模式简并）
"""

from __future__ import annotations

from typing import Any

from pydantic import ValidationError as PydanticValidationError


class QRainbowError(Exception):
    """基础异常类"""

    exit_code: int = 1

    def __init__(self, message: str, context: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def __str__(self) -> str:
        if self.context:
            details = ", ".join(f"{key}={value}" for key, value in self.context.items())
            return f"{self.message} ({details})"
        return self.message

    def to_dict(self) -> dict[str, Any]:
        """转换为字典格式"""
        return {
            "type": type(self).__name__,
            "message": self.message,
            "context": self.context,
            "exit_code": self.exit_code,
        }


class InvalidArgumentError(QRainbowError, ValueError):
    """参数非法"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        field: str | None = None,
        value: Any = None,
        errors: list[dict[str, Any]] | None = None,
        context: dict[str, Any] | None = None,
    ):
        super().__init__(message, context)
        self.field = field
        self.value = value
        self.errors = errors or []

    def __str__(self) -> str:
        base = super().__str__()
        if self.field:
            base = f"参数 '{self.field}' 非法: {base}"
        if self.errors:
            lines = "\n".join(
                f"  - {error['field']}: {error['message']}" for error in self.errors
            )
            base = f"{base}\n{lines}"
        return base

    def to_dict(self) -> dict[str, Any]:
        """转换为字典格式"""
        result = super().to_dict()
        result.update(
            {
                "field": self.field,
                "value": None if self.value is None else repr(self.value),
                "errors": self.errors,
            }
        )
        return result


class DivergentSeriesError(InvalidArgumentError):
    """级数发散 (s <= 1)"""


class ResourceError(QRainbowError):
    """超出资源上限"""

    exit_code = 3

    def __init__(self, message: str, dimension: int, cap: int, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.dimension = dimension
        self.cap = cap

    def __str__(self) -> str:
        return f"{self.message} (维度: {self.dimension}, 上限: {self.cap})"


class NumericRangeError(QRainbowError, ArithmeticError):
    """中间量溢出或非有限"""

    exit_code = 4

    def __init__(self, message: str, pair_index: int | None = None, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.pair_index = pair_index

    def __str__(self) -> str:
        base = super().__str__()
        if self.pair_index is not None:
            return f"{base} (对: {self.pair_index})"
        return base


class DesignError(QRainbowError):
    """设计器基础异常"""

    exit_code = 4


class DegenerateTargetError(DesignError):
    """闭式解除零"""

    def __init__(self, message: str, pair_index: int, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.pair_index = pair_index

    def __str__(self) -> str:
        return f"{super().__str__()} (对: {self.pair_index})"


class DesignVerificationError(DesignError):
    """设计结果回代校验失败"""

    def __init__(self, message: str, deviation: float, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.deviation = deviation


class FormatterError(QRainbowError):
    """格式化器异常"""

    exit_code = 2

    def __init__(self, message: str, formatter_name: str, format_type: str, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.formatter_name = formatter_name
        self.format_type = format_type

    def __str__(self) -> str:
        return (
            f"格式化器 '{self.formatter_name}' 错误: {self.message} "
            f"(格式: {self.format_type})"
        )


# =============================================================================
# 警告
# =============================================================================


class ValidityWarning(UserWarning):
    """强非均匀条件不满足"""


class DegeneracyWarning(UserWarning):
    """单粒子零模式导致基态简并"""


def convert_validation_error(
    pydantic_error: PydanticValidationError, model_name: str = "Unknown"
) -> InvalidArgumentError:
    """将Pydantic验证错误转换为参数错误

    Args:
        pydantic_error: Pydantic验证错误
        model_name: 模型名称

    Returns:
        带字段明细的参数错误
    """
    errors = [
        {
            "field": ".".join(str(loc) for loc in error["loc"]) or model_name,
            "message": error["msg"],
            "type": error["type"],
        }
        for error in pydantic_error.errors()
    ]
    return InvalidArgumentError(
        f"{model_name} 校验失败，共 {len(errors)} 个错误",
        errors=errors,
        context={"model": model_name},
    )
