"""Feed a generated stream through different windows and compare the outcome.

Run with ``python demos/streaming_windows.py``.
"""

import numpy as np

from streamcomm import GenConfig, RunConfig, WindowMode, WindowPolicy, generate, process

timeline = generate(GenConfig(n_vertices=120, iterations=6, decay_ttl=3, seed=11))
print(f"{len(timeline.events)} events, stable iterations {[it for it, _ in timeline.stable_points]}")

policies = {
    "landmark": WindowPolicy.landmark(),
    "sliding, 200 events": WindowPolicy.sliding(200, WindowMode.COUNT),
    "tumbling, 2 time units": WindowPolicy.non_overlapping(2, WindowMode.TIME),
}
for name, policy in policies.items():
    res = process(timeline.events, RunConfig(input=None, out=None, window=policy, densopt=True))
    q = np.array([row[1] for row in res.quality])
    churn = np.mean([frac for _, frac in res.stability])
    print(f"{name:>24}: final Q {q[-1]:.3f}, final ADC {res.quality[-1][2]:.3f}, "
          f"mean churn {churn:.4f}, {res.elapsed:.2f}s")
