from .behavior_model import Behavior, NumericMode
from .local_model import LocalModel, ModelComponent
from .scenario_model import Scenario

__all__ = ['Behavior', 'LocalModel', 'ModelComponent', 'NumericMode', 'Scenario']
