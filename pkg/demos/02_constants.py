"""The machinery constants and the sign of the key integral at y_min."""
from kappaspec import machinery

k = machinery.constants()
print(f"L     = {k.L:.10f}")
print(f"M     = {k.M:.10f}")
print(f"y_min = {k.y_min:.10f}")
print(f"key integral at y_min = {machinery.key_integral(k.y_min):.10f}")
print("largest deviation from the tabulated constants:", f"{max(k.table_errors().values()):.1e}")
