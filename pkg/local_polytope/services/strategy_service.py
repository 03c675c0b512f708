from ..repositories.strategy_repository import StrategyRepository


def enumerate_strategies(scenario, cap=None):
    return StrategyRepository(cap).get_strategies(scenario)


def count_strategies(scenario):
    return StrategyRepository.count(scenario)


def deterministic_behavior(strategy, scenario):
    return strategy.behavior(scenario)
