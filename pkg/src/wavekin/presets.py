"""Bundled run configurations reproducing the two reference experiments."""

TEST1 = """\
# Reference experiment 1: half-cosine hump sampled on [0, 5]
model.h = 0.1
model.alpha = 0.1 0.1 0.1
model.beta = 0.1 0.1 0.1
model.delta = 0.4
model.n_cells = 500
model.truncation = leaky
sim.dt = 0.001
sim.t_final = 10.0
sim.record_every = 10
sim.snapshot_times = 0.0 1.0 10.0
sim.method = euler
init.kind = cosine_bump
init.l = 5.0
diagnostics.ml_pairs = 1:0.1 1:1.0
diagnostics.moment_orders = 1 2 3 4
output.dir = out
"""

TEST2 = """\
# Reference experiment 2: indicator of [3, 5]
model.h = 0.1
model.alpha = 0.1 0.1 0.1
model.beta = 0.1 0.1 0.1
model.delta = 0.4
model.n_cells = 500
model.truncation = leaky
sim.dt = 0.001
sim.t_final = 10.0
sim.record_every = 10
sim.snapshot_times = 0.0 1.0 10.0
sim.method = euler
init.kind = indicator
init.a = 3.0
init.b = 5.0
diagnostics.ml_pairs = 1:0.1 1:1.0
diagnostics.moment_orders = 1 2 3 4
output.dir = out
"""

PRESETS = {"test1": TEST1, "test2": TEST2}
