from .assemblage_model import MeasurementAssemblage
from .state_model import QuantumState

__all__ = ['MeasurementAssemblage', 'QuantumState']
