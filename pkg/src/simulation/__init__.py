from .scenarios import Scenario, ScenarioSample, SCENARIO_COLUMNS, sample_scenario

__all__ = ["Scenario", "ScenarioSample", "SCENARIO_COLUMNS", "sample_scenario"]
