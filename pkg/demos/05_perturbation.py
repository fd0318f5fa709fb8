"""First-order change of kappa and sqrt(lambda_2) for r = 1 + eps cos(2 theta)."""
from kappaspec import perturb
from kappaspec.domains import RadialProfile

F = RadialProfile((1.0,), ())
rep = perturb.perturbation_report(F)
fd = perturb.finite_difference_check(F, 1e-3)
print(f"d kappa           = {rep.d_kappa:.8f}   (difference quotient {fd.kappa_quotient:.6f})")
print(f"d sqrt(lambda_2)  = {rep.d_sqrt_lambda2:.8f}   (difference quotient {fd.sqrt_lambda2_quotient:.6f})")
