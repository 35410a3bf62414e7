"""
🌈 qrainbow CLI - 彩虹链模拟与纠缠谱设计

Usage:
    qrainbow --help                        # 查看帮助
    qrainbow simulate chain.json           # 模拟链
    qrainbow design target.json            # 由目标纠缠谱设计链
    qrainbow sweep grid.json -o data.csv   # 参数扫描
    qrainbow prime --s 2 --pairs 3         # 素数纠缠谱
    qrainbow uniform-q --q 2 -J 1 -J 0.01  # 均匀 q 设计
"""

from __future__ import annotations

import logging
import sys
import warnings

import click

from .. import __version__
from ..config import get_setting
from ..config import set_setting
from ..exceptions import DegeneracyWarning
from ..exceptions import ValidityWarning
from .commands import design
from .commands import prime
from .commands import schema
from .commands import simulate
from .commands import sweep
from .commands import uniform_q
from .commands.common import configure_logging


@click.group()
@click.version_option(version=__version__, prog_name="qrainbow")
@click.option("--verbose", "-v", is_flag=True, help="启用详细输出")
@click.option("--quiet", "-q", is_flag=True, help="静默模式")
@click.option(
    "--threads",
    type=click.IntRange(min=1),
    envvar="QRAINBOW_THREADS",
    default=None,
    help="工作线程数（默认读取 QRAINBOW_THREADS）",
)
@click.option("--size-cap", type=click.IntRange(min=4), default=None, help="Hilbert 空间维数上限")
@click.option(
    "--validity-threshold",
    type=click.FloatRange(min=0.0, min_open=True),
    default=None,
    help="强非均匀有效性比值阈值",
)
@click.pass_context
def cli(
    ctx: click.Context,
    verbose: bool,
    quiet: bool,
    threads: int | None,
    size_cap: int | None,
    validity_threshold: float | None,
) -> None:
    """
    🌈 qrainbow - q 形变彩虹链的模拟与纠缠谱设计

    \b
    常用命令:
        qrainbow simulate <chain.json>     精确对角化与彩虹拟设态比较
        qrainbow design <target.json>      由目标纠缠能量或熵求磁场
        qrainbow sweep <grid.json>         参数扫描，输出 CSV
        qrainbow prime                     素数纠缠谱
        qrainbow uniform-q                 均匀 q 设计
        qrainbow schema                    导出 JSON Schema

    \b
    获取帮助:
        qrainbow <command> --help          查看特定命令的帮助
    """
    # 确保上下文对象存在
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["quiet"] = quiet

    # 命令行参数覆盖全局配置
    if threads is not None:
        set_setting("threads", threads)
    if size_cap is not None:
        set_setting("size_cap", size_cap)
    if validity_threshold is not None:
        set_setting("validity_threshold", validity_threshold)

    # 配置日志级别
    if verbose and not quiet:
        level = logging.INFO
    elif quiet:
        level = logging.ERROR
    else:
        level = getattr(logging, str(get_setting("log_level", "WARNING")).upper(), logging.WARNING)
    configure_logging(level)

    # 这两类警告已经写入日志
    ctx.with_resource(warnings.catch_warnings())
    warnings.simplefilter("ignore", ValidityWarning)
    warnings.simplefilter("ignore", DegeneracyWarning)

    if verbose and not quiet:
        click.echo(f"🔧 qrainbow CLI v{__version__} - 详细模式", err=True)


# 注册命令
cli.add_command(simulate)
cli.add_command(design)
cli.add_command(sweep)
cli.add_command(prime)
cli.add_command(uniform_q)
cli.add_command(schema)


def main() -> None:
    """CLI主入口函数"""
    try:
        cli()
    except KeyboardInterrupt:
        click.echo("\n❌ 操作被用户中断", err=True)
        sys.exit(1)
    except Exception as e:
        click.echo(f"❌ CLI执行错误: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
