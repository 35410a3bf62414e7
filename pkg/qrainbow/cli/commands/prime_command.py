"""
素数谱命令

设计单粒子纠缠能量为 ε_p = s ln p 的链，并输出归一化常数。
"""

from __future__ import annotations

from pathlib import Path

import click

from ...core.simulator import design as run_design
from ...design.primes import prime_spectrum
from ...design.primes import prime_spectrum_target
from ...serialization.schemas import PrimeReport
from .common import get_console
from .common import handle_errors
from .common import write_json
from .design_command import write_design_outputs


@click.command()
@click.option("--s", "s", type=float, default=2.0, show_default=True, help="纠缠温度 s (> 1)")
@click.option("--pairs", "-n", type=int, default=3, show_default=True, help="对数 N")
@click.option(
    "--coupling",
    "-J",
    "couplings",
    type=float,
    multiple=True,
    help="耦合 J_i（可重复，默认公比 1e-2 的几何序列）",
)
@click.option("--truncation", type=int, default=None, help="固定截断位置 K（默认自适应）")
@click.option("--out", "-o", default=".", show_default=True, help="输出目录")
@click.option(
    "--simulate/--no-simulate",
    "with_simulation",
    default=True,
    help="是否对设计结果做精确模拟",
)
@click.pass_context
@handle_errors
def prime(
    ctx: click.Context,
    s: float,
    pairs: int,
    couplings: tuple[float, ...],
    truncation: int | None,
    out: str,
    with_simulation: bool,
) -> None:
    """
    🔢 素数纠缠谱

    \b
    示例:
        qrainbow prime --s 2 --pairs 3
        qrainbow prime --s 1.5 -n 2 -J 1 -J 0.01 --truncation 1000000
    """
    console = get_console(ctx)

    spectrum = prime_spectrum(s, pairs, truncation=truncation)
    norm = spectrum.normalization
    assert norm is not None
    target = prime_spectrum_target(s, pairs, list(couplings) or None)
    _, report = run_design(target)

    directory = Path(out)
    stem = f"prime_s{s:g}_n{pairs}"
    write_design_outputs(ctx, directory, stem, report, with_simulation)

    summary = PrimeReport(
        s=s,
        primes=list(spectrum.primes),
        eps=list(spectrum.eps),
        A_F=norm.A_F,
        E0=norm.E0,
        euler_product=norm.euler_product,
        squarefree_sum=norm.squarefree_sum,
        reference=norm.reference,
        truncation=norm.truncation,
        converged=norm.converged,
        design=report,
    )
    write_json(directory / f"{stem}_prime.json", summary)
    console.print(f"A_F = {norm.A_F:.12g}  (ζ(2s)/ζ(s) 参考值 {norm.reference:.12g})")
    console.print(f"E0 = ln(ζ(s)/ζ(2s)) = {norm.E0:.12g}")
