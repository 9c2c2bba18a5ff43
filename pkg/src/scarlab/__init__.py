"""scarlab: simulator and trapped-ion gate compiler for PVBS-derived
quantum many-body scar models."""

from .pvbs import GeneratorCoeffs, ModelParams
from .qops import StateVector

__all__ = ["GeneratorCoeffs", "ModelParams", "StateVector"]
__version__ = "0.1.0"
