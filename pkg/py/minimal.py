from relib.scenario.deployment import ScenarioId, sweep, savings_vs
from relib.utils.config import load_run_config


config = load_run_config()
points = sweep(list(ScenarioId), range(1, 101), config.model)
for scenario, saving in savings_vs(points, ScenarioId.S1, 100).items():
    print(f"{scenario.value}: {saving:.1%} less energy than D-RAN")
