"""Reference values for the unit tests, by brute force in 40-digit arithmetic.

Run:  python3 tests/reference/derive_values.py
The printed constants are pasted into tests/reference_values.hpp.
"""
import itertools

from mpmath import mp, mpf, exp, e, pi, cos, sin, mpc, nsum, inf, factorial, quad, cosh, sqrt

mp.dps = 40


def states(levels, cap):
    return itertools.product(range(cap + 1), repeat=len(levels))


def grand(levels, U, beta, mu, cap, n_max=None):
    """Returns Xi and the per-level occupations by direct enumeration."""
    xi = mpf(0)
    occ = [mpf(0)] * len(levels)
    for s in states(levels, cap):
        n = sum(s)
        if n_max is not None and n > n_max:
            continue
        energy = sum(mpf(k) * eps for k, eps in zip(s, levels)) + mpf(U) * n * (n - 1) / 2
        w = exp(-beta * (energy - mu * n))
        xi += w
        for a, k in enumerate(s):
            occ[a] += k * w
    return xi, [o / xi for o in occ]


def show(name, value):
    if isinstance(value, mpc):
        print(f"{name}_re = {mp.nstr(value.real, 20)}")
        print(f"{name}_im = {mp.nstr(value.imag, 20)}")
    else:
        print(f"{name} = {mp.nstr(value, 20)}")


# two fermion levels {0, 0.5}, U=1, beta=1, mu=0
xi2, occ2 = grand([mpf(0), mpf("0.5")], 1, 1, 0, 1)
show("fermion2_xi", xi2)
show("fermion2_n1", occ2[0])
show("fermion2_n2", occ2[1])
show("fermion2_n_1_1", 1 / xi2)
show("fermion2_n_1_2", exp(mpf("-1.5")) / xi2)
show("fermion2_p_1_0", 1 / xi2)
show("fermion2_p_1_1", exp(mpf("-0.5")) / xi2)

# four fermion levels, U=1, beta=2, mu=0.5
xi4, occ4 = grand([mpf("-0.5"), mpf(0), mpf("0.25"), mpf(1)], 1, 2, mpf("0.5"), 1)
show("fermion4_xi", xi4)
for a, o in enumerate(occ4):
    show(f"fermion4_n{a + 1}", o)

# one boson level eps=1, U=1, beta=1, mu=-1 (untruncated)
xib1 = nsum(lambda n: exp(-2 * n - n * (n - 1) / 2), [0, inf])
show("boson1_xi", xib1)

# two boson levels {0.5, 1}, U=1, beta=1, mu=-1, n_max_per_level=10
xib2, occb2 = grand([mpf("0.5"), mpf(1)], 1, 1, -1, 10)
show("boson2_xi", xib2)
show("boson2_n1", occb2[0])
show("boson2_n2", occb2[1])

# one-site series at U=1, beta=1, mu=0
show("one_site_exact", nsum(lambda n: exp(-n * (n - 1) / 2), [0, inf]))
show("one_site_naive", nsum(lambda n: exp(-n * n / 2), [0, inf]))

# HS average <Xi_0(mu + U/2 - i phi)> for fermion2, phi ~ N(0, U/beta), by real quadrature
def xi0(mu_eff):
    return (1 + exp(-(0 - mu_eff))) * (1 + exp(-(mpf("0.5") - mu_eff)))


avg = quad(lambda x: xi0(mpf("0.5") - 1j * x) * exp(-x * x / 2), [-inf, inf]) / sqrt(2 * pi)
show("fermion2_hs_average", avg)
naive = quad(lambda x: xi0(-1j * x) * exp(-x * x / 2), [-inf, inf]) / sqrt(2 * pi)
show("fermion2_hs_naive_average", naive)

# coherent element z=w=1, U=1, t=pi
m = exp(-1) * nsum(lambda n: exp(-1j * pi * n * n / 2) / factorial(n), [0, inf])
show("coherent_pi", m)
show("sum_n2_over_nfact", nsum(lambda n: n * n / factorial(n), [0, inf]))

# spin traces at betaJ = 1 and the quadrature form of the right-hand side
show("spin_lhs_1", 2 * exp(mpf("0.75")))
show("spin_rhs_1", 2 * exp(mpf("0.25")) * mpf("1.5"))
radial = quad(lambda r: 4 * pi * r * r * exp(-r * r) * 2 * cosh(r), [0, inf]) / pi ** mpf("1.5")
show("spin_rhs_quad_1", radial)

# generalised HS left-hand side, U=[[1,0.5],[0.5,1]], beta=1, n=(1,1)
show("gen_hs_lhs_11", exp(-(1 + 1 + 2 * mpf("0.5")) / 2))

# shifted Fermi-Dirac case eps={0,0.5,1}, U=1, beta=2, mu=0.7
xi3, occ3 = grand([mpf(0), mpf("0.5"), mpf(1)], 1, 2, mpf("0.7"), 1)
show("fermion3_xi", xi3)
for a, o in enumerate(occ3):
    show(f"fermion3_n{a + 1}", o)
