"""qrainbow 核心流程"""

from .simulator import AnsatzComparison
from .simulator import compare_with_ansatz
from .simulator import design
from .simulator import design_report
from .simulator import simulate

__all__ = [
    "AnsatzComparison",
    "compare_with_ansatz",
    "simulate",
    "design",
    "design_report",
]
