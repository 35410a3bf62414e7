"""纠缠分析"""

from .entanglement import EntanglementReport
from .entanglement import FreeSpectrumFit
from .entanglement import analyze_profile
from .entanglement import analyze_state
from .entanglement import density_eigenvalues
from .entanglement import entanglement_spectrum
from .entanglement import fit_free_spectrum
from .entanglement import orient_free_spectrum
from .entanglement import free_spectrum
from .entanglement import reduced_density_matrix
from .entanglement import renyi_entropy
from .entanglement import single_particle_energies
from .entanglement import vn_entropy

__all__ = [
    "EntanglementReport",
    "FreeSpectrumFit",
    "reduced_density_matrix",
    "density_eigenvalues",
    "renyi_entropy",
    "vn_entropy",
    "entanglement_spectrum",
    "single_particle_energies",
    "free_spectrum",
    "fit_free_spectrum",
    "orient_free_spectrum",
    "analyze_state",
    "analyze_profile",
]
