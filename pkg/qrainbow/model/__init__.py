"""
模型层

- qalgebra: q 数、q 单态振幅与单对熵
- chain: 链参数、基矢约定与分块哈密顿量
"""

from .chain import BasisConvention
from .chain import ChainSpec
from .chain import SectorBlock
from .chain import assemble_dense
from .chain import build_hamiltonian
from .chain import build_sector_block
from .chain import check_size
from .chain import ground_energy_pair
from .qalgebra import LN2
from .qalgebra import QParam
from .qalgebra import entropy_to_gamma
from .qalgebra import pair_entropy
from .qalgebra import pair_probabilities
from .qalgebra import pair_renyi
from .qalgebra import q_from_ratio
from .qalgebra import quantum_dimension
from .qalgebra import singlet_amplitudes

__all__ = [
    # q 代数
    "LN2",
    "QParam",
    "q_from_ratio",
    "quantum_dimension",
    "singlet_amplitudes",
    "pair_probabilities",
    "pair_entropy",
    "pair_renyi",
    "entropy_to_gamma",
    # 链
    "ChainSpec",
    "BasisConvention",
    "SectorBlock",
    "assemble_dense",
    "build_sector_block",
    "build_hamiltonian",
    "check_size",
    "ground_energy_pair",
]
