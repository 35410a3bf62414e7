"""
Schema 命令

导出全部输入与报告文件的 JSON Schema。
"""

from __future__ import annotations

import click

from ...serialization.schemas import export_json_schemas
from .common import get_console
from .common import handle_errors


@click.command()
@click.option("--out", "-o", default="schemas", show_default=True, help="输出目录")
@click.pass_context
@handle_errors
def schema(ctx: click.Context, out: str) -> None:
    """
    📋 导出 JSON Schema
    """
    written = export_json_schemas(out)
    console = get_console(ctx)
    for path in written:
        console.print(f"  - {path}")
    console.print(f"✅ 已导出 {len(written)} 个 schema")
