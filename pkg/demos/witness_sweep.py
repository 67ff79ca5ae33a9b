#!/usr/bin/env python3
"""Sweep squeezing and detection efficiency; watch the witness cross the bound.

The inseparability total is 2 e^(-2r) for an ideal source, dips below the
separable bound 2 as soon as r > 0, and loss drags it back toward 2 without
ever crossing it from below.
"""

from eprsim import (
    DUAN_BOUND,
    ScenarioConfig,
    SourceSpec,
    run_point,
    run_sweep,
    variance_db,
)

def show(records, label):
    print(f"{label:>5} {'measured':>10} {'state':>10} {'margin dB':>10}  verdict")
    for rec in records:
        verdict = "entangled" if rec.entangled else "separable"
        print(
            f"{rec.value:5.2f} {rec.measured_total:10.5f} "
            f"{rec.state_total:10.5f} {rec.margin_db:10.3f}  {verdict}"
        )
    print()


print("squeezing sweep (ideal detection)")
show(run_sweep(ScenarioConfig(), "r", [0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0]), "r")

print("arm-efficiency sweep at r = 1")
print("(loss mixes in vacuum: total -> eta * 2e^-2r + (1 - eta) * 2)")
show(run_sweep(ScenarioConfig(), "eta", [1.0, 0.8, 0.6, 0.4, 0.2, 0.05]), "eta")

print("excess source noise at r = 1, eta = 0.8")
print("(each unit of excess adds eta * 2 to the total: the witness is blunt")
print(" but honest about a noisy source)")
levels = (0.0, 0.2, 0.5, 1.0, 2.0)
rows = [
    run_point(
        ScenarioConfig(
            source=SourceSpec(r=1.0, excess_noise=excess), arm_efficiency=0.8
        )
    )
    for excess in levels
]
for excess, rec in zip(levels, rows):
    verdict = "entangled" if rec.entangled else "separable"
    print(f"excess {excess:4.1f}: total {rec.measured_total:8.5f}  {verdict}")
print()

squeezed_db = variance_db(rows[0].measured_total / DUAN_BOUND)
print(f"the clean point sits {-squeezed_db:.2f} dB below the separable bound;")
print("roughly 0.9 units of excess noise eat that margin completely.")
