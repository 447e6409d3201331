"""Consistency report at one operating point: closed form vs Monte Carlo,
relay-state frequencies, and the packet protocol against the capacity
predicate.

Run: python demos/validation_report.py
"""

from onclab import ScenarioConfig
from onclab.cli import run_validation

config = ScenarioConfig(7, 0.5, 10.0, trials=200_000)
for check in run_validation(config, workers=4, packet_trials=5_000):
    print(check.line())
