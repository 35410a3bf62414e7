"""
命令共用工具

- JSON 输入读取（错误带行列号）
- 输出文件写入
- 异常到退出码的映射
- rich 表格与日志
"""

from __future__ import annotations

import functools
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any
from typing import TypeVar

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ...exceptions import InvalidArgumentError
from ...exceptions import QRainbowError
from ...serialization.formatters import format_as_json
from ...serialization.formatters import parse_json

F = TypeVar("F", bound=Callable[..., Any])

STDOUT = "-"


def configure_logging(level: int) -> None:
    """qrainbow 日志输出到 stderr（rich 格式）"""
    package_logger = logging.getLogger("qrainbow")
    for handler in list(package_logger.handlers):
        if isinstance(handler, RichHandler):
            package_logger.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
    package_logger.addHandler(handler)
    package_logger.setLevel(level)


def get_console(ctx: click.Context) -> Console:
    """标准输出控制台，静默模式下不输出"""
    quiet = bool(ctx.obj.get("quiet", False)) if ctx.obj else False
    return Console(quiet=quiet, soft_wrap=True)


def handle_errors(func: F) -> F:
    """把 qrainbow 异常转换为对应的退出码"""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except QRainbowError as e:
            click.echo(f"❌ {e}", err=True)
            ctx = click.get_current_context()
            if ctx.obj and ctx.obj.get("verbose"):
                click.echo(format_as_json(e.to_dict()), err=True)
            ctx.exit(e.exit_code)

    return wrapper  # type: ignore[return-value]


def load_json_object(path: str | Path, model_name: str) -> dict[str, Any]:
    """读取 JSON 对象"""
    content = Path(path).read_text(encoding="utf-8")
    data = parse_json(content)
    if not isinstance(data, dict):
        raise InvalidArgumentError(
            f"{model_name} 必须是 JSON 对象", field=str(path), value=type(data).__name__
        )
    return data


def write_text(path: str | Path, content: str) -> None:
    """写出文本，路径为 '-' 时写标准输出"""
    if str(path) == STDOUT:
        sys.stdout.write(content)
        return
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    # 固定换行符，保证跨平台逐字节一致
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)


def write_json(path: str | Path, data: Any) -> None:
    write_text(path, format_as_json(data) + "\n")


def report_path(out: str | None, source: str | Path, suffix: str) -> str:
    """默认输出路径：输入文件同名加后缀，位于当前目录"""
    if out:
        return out
    return f"{Path(source).stem}{suffix}"


def comparison_table(
    title: str, targets: list[float], achieved: list[float], label: str = "ε"
) -> Table:
    """目标与实现值对照表"""
    table = Table(title=title)
    table.add_column("对", justify="right")
    table.add_column(f"目标 {label}", justify="right")
    table.add_column(f"实现 {label}", justify="right")
    table.add_column("偏差", justify="right")
    for i, (target, value) in enumerate(zip(targets, achieved), start=1):
        table.add_row(str(i), f"{target:.10g}", f"{value:.10g}", f"{abs(value - target):.2e}")
    return table
