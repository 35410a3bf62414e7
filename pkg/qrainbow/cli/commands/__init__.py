"""
qrainbow CLI命令模块

包含所有可用的CLI命令实现。
"""

from .design_command import design
from .prime_command import prime
from .schema_command import schema
from .simulate_command import simulate
from .sweep_command import sweep
from .uniform_q_command import uniform_q

__all__ = ["simulate", "design", "sweep", "prime", "uniform_q", "schema"]
