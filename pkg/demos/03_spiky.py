"""A spiky domain whose transform stays positive on the whole disk of radius j11.

As the number of spikes grows the transform approaches its rotation average
2 pi l(gamma); the deviation shrinks quickly with n.
"""
from kappaspec import counterex

prof = counterex.select_delta(0.2)
print(f"delta_tilde = {prof.delta_tilde}, delta = {prof.delta}, plateau a = {prof.a:.6f}")
for n in (8, 16, 32, 64):
    rep = counterex.verify_spiky(n, prof, directions=90, points=128)
    print(f"n = {n:3d}  min over grid = {rep.minimum:.6f}  deviation from limit = {rep.gap:.2e}")
