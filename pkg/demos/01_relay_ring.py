"""Hidden relays in a four-node ring.

Nodes 1 -> 2 -> 3 -> 4 -> 1 each pass a quarter of their state forward.
We only observe nodes 1 and 3, so every interaction between them runs
through an unobserved relay.  This walk-through shows how that shows up
in the best auto-regressive (AR) description of the observed pair and
in a least-squares fit to simulated data.
"""
# %%
import numpy as np

from latentid import classify, gen_ring, lsar_fit, optimal_ar, simulate, stability_report

net = gen_ring(4, edge_weight=0.25, self_loop=0.0, manifest_indices=[1, 3])
print(stability_report(net))
print("observed -> hidden coupling:\n", net.a21)
print("hidden -> observed coupling:\n", net.a12)

# %% [markdown]
# The hidden block is zero, so every relay is one step long. The optimal AR
# sequence therefore stops after its second matrix: A0 is empty (no direct
# edge between 1 and 3) and A1 carries 0.25 * 0.25 in both directions.

# %%
best = optimal_ar(net, 3)
for i, a in enumerate(best.mats):
    print(f"A{i} =\n{a}")

# %% [markdown]
# Now pretend we never saw the network. Simulate 100k samples driven by
# white noise on the observed nodes and fit an order-3 AR model.

# %%
data = simulate(net, 100_000, seed=1)
fit = lsar_fit(data, 3, labels=net.manifest_labels)
print("largest gap to the optimal sequence:",
      np.max(np.abs(fit.stacked() - best.stacked())))

graph = classify(fit, alpha=0.3)
for src, dst, orders in graph.indirect_edges():
    print(f"{src} reaches {dst} through a hidden relay of order {orders[0]}")
print("direct edges:", graph.direct_edges() or "none")
