"""
求解器

- exact: 分扇区精确对角化
- rg: 实空间重整化群与彩虹拟设态
- freefermion: 关联矩阵方法
"""

from .exact import GroundStateResult
from .exact import PureState
from .exact import basis_state
from .exact import expectation_value
from .exact import fidelity
from .exact import ground_state
from .freefermion import CorrelationResult
from .freefermion import EntanglementModes
from .freefermion import HoppingMatrix
from .freefermion import correlation_matrix
from .freefermion import entanglement_entropy
from .freefermion import entanglement_modes
from .freefermion import pair_energies
from .freefermion import rainbow_energies
from .freefermion import subsystem_ent_energies
from .rg import EffectiveHamiltonian
from .rg import QProfile
from .rg import closed_form_effective
from .rg import perturbation_oracle_4site
from .rg import predicted_energy
from .rg import rainbow_state
from .rg import renormalize
from .rg import xx_rescaling

__all__ = [
    # 精确对角化
    "PureState",
    "GroundStateResult",
    "ground_state",
    "fidelity",
    "expectation_value",
    "basis_state",
    # 重整化群
    "QProfile",
    "EffectiveHamiltonian",
    "renormalize",
    "rainbow_state",
    "xx_rescaling",
    "perturbation_oracle_4site",
    "closed_form_effective",
    "predicted_energy",
    # 自由费米子
    "HoppingMatrix",
    "CorrelationResult",
    "EntanglementModes",
    "correlation_matrix",
    "entanglement_modes",
    "subsystem_ent_energies",
    "entanglement_entropy",
    "rainbow_energies",
    "pair_energies",
]
