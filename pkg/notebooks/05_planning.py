# %% [markdown]
# # Choosing L and power for a target error rate
#
# Because the bound is cheap to evaluate, we can invert it. Here we find
# the fewest bins, or the lowest per-bin SNR, that keeps the bound at or
# below a URLLC target.

# %%
from mrcbound import CodeParams, LinkConfig
from mrcbound.sweep import PlanFree, PlanQuery, plan_parameters

code = CodeParams(4096, 0.5)
link = LinkConfig(4, 1.0, 3.0)

for target in (1e-3, 1e-4, 1e-5):
    bins = plan_parameters(PlanQuery(target, PlanFree.MIN_BINS, 1, 20, link, code))
    snr = plan_parameters(PlanQuery(target, PlanFree.MIN_SNR_DB, -10, 30, link, code))
    print(f"target {target:.0e}: L >= {bins.value} (bound {bins.achieved_bound:.2e}), "
          f"or with L=4 SNR >= {snr.value:.2f} dB")

# %%
res = plan_parameters(PlanQuery(1e-9, PlanFree.MIN_BINS, 1, 3, link, code))
print(res)  # infeasible: best reachable bound in [1, 3]
