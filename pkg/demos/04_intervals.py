"""Unions of unit intervals with kappa * volume at least 2C * (count/n)."""
from kappaspec import counterex

for C in (5, 10, 20):
    inst = counterex.nazarov_search(C, seed=0)
    b = counterex.interval_union_kappa(inst)
    print(f"C = {C:2d}: n = {inst.n:4d}, {inst.count:4d} intervals, "
          f"min f on [0, C/n] = {inst.grid_min:.3f} (dip bound {inst.dip_bound:.3f}), "
          f"kappa * vol >= {b.product:.3f}")
