"""
qrainbow - q 形变彩虹链的模拟与纠缠谱设计

2N 个自旋 1/2 组成的 XX 链，耦合由中心向外迅速衰减，交错磁场使中心对称的
每一对格点 (−i, i) 形成 q 形变单态。本包提供：

- 🔬 分扇区精确对角化与基态保真度
- 🌀 实空间重整化群：逐对形变参数 q_i 与彩虹拟设态
- 📐 中心二分纠缠：Renyi / von Neumann 熵、纠缠谱与单粒子纠缠能量
- ⚛️ Jordan–Wigner 自由费米子校验（单粒子尺度 N ~ 10³）
- 🎯 逆向设计：由目标纠缠能量或每对熵求磁场分布
- 🔢 素数纠缠谱与 Möbius 函数工具
- 📈 参数扫描与命令行工具

示例用法：
```python
from qrainbow import ChainSpec, ground_state, renormalize, rainbow_state, fidelity

spec = ChainSpec.create(J=[1.0, 0.01], h=[0.5, 0.0])
profile = renormalize(spec)
result = ground_state(spec)
print(fidelity(result, rainbow_state(profile)))
```
"""

from __future__ import annotations

import logging
from typing import Any

# 版本信息
__version__ = "0.1.0"
__license__ = "MIT"

# 配置日志
logger = logging.getLogger("qrainbow")
logger.addHandler(logging.NullHandler())

# =============================================================================
# 主要导出API
# =============================================================================

__all__ = [
    # 版本信息
    "__version__",
    "__license__",
    # q 代数
    "QParam",
    "q_from_ratio",
    "quantum_dimension",
    "singlet_amplitudes",
    "pair_entropy",
    "pair_renyi",
    "entropy_to_gamma",
    # 链模型
    "ChainSpec",
    "BasisConvention",
    "SectorBlock",
    "build_hamiltonian",
    # 精确对角化
    "PureState",
    "GroundStateResult",
    "ground_state",
    "fidelity",
    "expectation_value",
    # 重整化群
    "QProfile",
    "renormalize",
    "rainbow_state",
    "perturbation_oracle_4site",
    "predicted_energy",
    # 纠缠分析
    "EntanglementReport",
    "reduced_density_matrix",
    "renyi_entropy",
    "vn_entropy",
    "entanglement_spectrum",
    "single_particle_energies",
    "fit_free_spectrum",
    # 自由费米子
    "correlation_matrix",
    "subsystem_ent_energies",
    "pair_energies",
    "entanglement_entropy",
    # 逆向设计
    "DesignTarget",
    "DesignResult",
    "fields_from_energies",
    "uniform_q_fields",
    # 素数谱
    "moebius",
    "normalization",
    "prime_spectrum",
    "prime_spectrum_target",
    # 流程与扫描
    "simulate",
    "SweepGrid",
    "run_sweep",
    # 异常
    "QRainbowError",
    "InvalidArgumentError",
    "ResourceError",
    "NumericRangeError",
    "DesignError",
    "ValidityWarning",
    # 配置系统
    "QRainbowConfig",
    "ConfigManager",
    "get_config",
    "set_config",
    "get_setting",
    "set_setting",
    "generate_config_file",
    "validate_config",
]

# =============================================================================
# 延迟导入 - 仅在实际使用时导入 numpy/scipy 相关模块
# =============================================================================

_LAZY_IMPORTS: dict[str, str] = {
    # q 代数
    "QParam": "qrainbow.model.qalgebra",
    "q_from_ratio": "qrainbow.model.qalgebra",
    "quantum_dimension": "qrainbow.model.qalgebra",
    "singlet_amplitudes": "qrainbow.model.qalgebra",
    "pair_entropy": "qrainbow.model.qalgebra",
    "pair_renyi": "qrainbow.model.qalgebra",
    "entropy_to_gamma": "qrainbow.model.qalgebra",
    # 链模型
    "ChainSpec": "qrainbow.model.chain",
    "BasisConvention": "qrainbow.model.chain",
    "SectorBlock": "qrainbow.model.chain",
    "build_hamiltonian": "qrainbow.model.chain",
    # 精确对角化
    "PureState": "qrainbow.solver.exact",
    "GroundStateResult": "qrainbow.solver.exact",
    "ground_state": "qrainbow.solver.exact",
    "fidelity": "qrainbow.solver.exact",
    "expectation_value": "qrainbow.solver.exact",
    # 重整化群
    "QProfile": "qrainbow.solver.rg",
    "renormalize": "qrainbow.solver.rg",
    "rainbow_state": "qrainbow.solver.rg",
    "perturbation_oracle_4site": "qrainbow.solver.rg",
    "predicted_energy": "qrainbow.solver.rg",
    # 纠缠分析
    "EntanglementReport": "qrainbow.analysis.entanglement",
    "reduced_density_matrix": "qrainbow.analysis.entanglement",
    "renyi_entropy": "qrainbow.analysis.entanglement",
    "vn_entropy": "qrainbow.analysis.entanglement",
    "entanglement_spectrum": "qrainbow.analysis.entanglement",
    "single_particle_energies": "qrainbow.analysis.entanglement",
    "fit_free_spectrum": "qrainbow.analysis.entanglement",
    # 自由费米子
    "correlation_matrix": "qrainbow.solver.freefermion",
    "subsystem_ent_energies": "qrainbow.solver.freefermion",
    "pair_energies": "qrainbow.solver.freefermion",
    "entanglement_entropy": "qrainbow.solver.freefermion",
    # 逆向设计
    "DesignTarget": "qrainbow.design.designer",
    "DesignResult": "qrainbow.design.designer",
    "fields_from_energies": "qrainbow.design.designer",
    "uniform_q_fields": "qrainbow.design.designer",
    # 素数谱
    "moebius": "qrainbow.design.primes",
    "normalization": "qrainbow.design.primes",
    "prime_spectrum": "qrainbow.design.primes",
    "prime_spectrum_target": "qrainbow.design.primes",
    # 流程与扫描
    "simulate": "qrainbow.core.simulator",
    "SweepGrid": "qrainbow.sweep.grid",
    "run_sweep": "qrainbow.sweep.engine",
    # 异常
    "QRainbowError": "qrainbow.exceptions",
    "InvalidArgumentError": "qrainbow.exceptions",
    "ResourceError": "qrainbow.exceptions",
    "NumericRangeError": "qrainbow.exceptions",
    "DesignError": "qrainbow.exceptions",
    "ValidityWarning": "qrainbow.exceptions",
    # 配置系统
    "QRainbowConfig": "qrainbow.config",
    "ConfigManager": "qrainbow.config",
    "get_config": "qrainbow.config",
    "set_config": "qrainbow.config",
    "get_setting": "qrainbow.config",
    "set_setting": "qrainbow.config",
    "generate_config_file": "qrainbow.config",
    "validate_config": "qrainbow.config",
}


def __getattr__(name: str) -> Any:
    """延迟导入模块和类"""
    module_name = _LAZY_IMPORTS.get(name)
    if module_name is None:
        raise AttributeError(f"module '{__name__}' has no attribute '{name}'")

    import importlib

    value = getattr(importlib.import_module(module_name), name)
    globals()[name] = value
    return value


def __dir__() -> list[str]:
    return sorted(set(globals()) | set(__all__))
