"""SU(N)_L SOS face models: Boltzmann weights, exterior modules, modular data and SU(2) state sums."""

from .boltzmann import ModelParams

__all__ = ["ModelParams"]
