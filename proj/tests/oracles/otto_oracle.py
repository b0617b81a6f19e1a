# Copyright 2026 The sqthermo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http:#www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent closed-form and brute-force evaluations used to freeze test values.

Run with: python3 tests/oracles/otto_oracle.py
"""
from mpmath import mp, mpf, exp, sinh, cosh, tanh, asinh, sqrt, log, sin, findroot
import numpy as np
from scipy.optimize import minimize_scalar

mp.dps = 30


def nth(beta, w):
    return 1 / (exp(beta * w) - 1)


def cycle(b1, b2, w1, w2, r):
    n1, n2 = nth(b1, w1), nth(b2, w2)
    s2 = sinh(r) ** 2
    w_ab = -(w2 - w1) * n1
    q_bc = w2 * (n2 * cosh(2 * r) + s2 - n1)
    w_cd = w2 * (n2 * cosh(2 * r) + s2) - w1 * n2
    q_da = w1 * (n1 - n2)
    return w_ab, q_bc, w_cd, q_da


print("nth(1,1) =", nth(1, 1))
print("W_max(1,1,0.5) =", (2 * nth(1, 1) + 1) * sinh(mpf("0.5")) ** 2)
print("tanh(1) =", tanh(1))
print("sin^2(0.1) =", sin(mpf("0.1")) ** 2)
n1 = nth(1, 1)
N = n1 * cosh(1) + sinh(mpf("0.5")) ** 2
print("N(1,1,0.5) =", N, " |M| =", sinh(mpf("0.5")) * cosh(mpf("0.5")) * (2 * n1 + 1))
print("U_pi - U_thermal =", N - n1)
print("S(n=1) =", 2 * log(2))

# standard Otto example
w_ab, q_bc, w_cd, q_da = cycle(1, mpf("0.2"), 1, 3, 0)
print("otto r=0 w2=3: W_out =", w_ab + w_cd, " 2(n2-n1) =", 2 * (nth(mpf("0.2"), 3) - n1))

# boundaries at w2 = 6
b1, b2, w1, w2 = mpf(1), mpf("0.2"), mpf(1), mpf(6)
n1, n2 = nth(b1, w1), nth(b2, w2)
s2q = (n1 - n2) / (2 * n2 + 1)
rq = asinh(sqrt(s2q))
rw = asinh(sqrt((1 - w1 / w2) * s2q))
print("w2=6: r_q =", rq, " r_w =", rw)
# root of Q_BC(r)=0 independently
root = findroot(lambda r: cycle(b1, b2, w1, w2, r)[1], mpf("0.4"))
print("root Q_BC =", root)
rootw = findroot(lambda r: sum(cycle(b1, b2, w1, w2, r)[i] for i in (0, 2)), mpf("0.4"))
print("root W_out =", rootw)
rmid = (rq + rw) / 2
print("mid III signs:", [float(x) for x in cycle(b1, b2, w1, w2, rmid)])
print("1.5 r_q signs:", [float(x) for x in cycle(b1, b2, w1, w2, 1.5 * rq)])

# high temperature argmax of W_out
for r in [0, 0.5, 0.7, 0.8, 0.9]:
    b1, b2 = 0.02, 0.004
    f = lambda w2: -float(sum(cycle(b1, b2, 1, w2, r)[i] for i in (0, 2)))
    res = minimize_scalar(f, bounds=(1.0, 20.0), method="bounded", options={"xatol": 1e-10})
    pred = float(sqrt(b1 * (1 + 2 * sinh(r) ** 2) / b2))
    print("highT r=%.1f argmax=%.6f pred=%.6f rel=%.4f" % (r, res.x, pred, abs(res.x - pred) / pred))

# low temperature (fig2 dataset parameters) W_out maxima and zero crossing of r=0 curve
for r in [0, 0.5, 0.7, 0.8, 0.9]:
    f = lambda w2: -float(sum(cycle(1, 0.2, 1, w2, r)[i] for i in (0, 2)))
    res = minimize_scalar(f, bounds=(1.0, 8.0), method="bounded")
    print("fig2 r=%.1f argmax=%.4f Wmax=%.6f" % (r, res.x, -res.fun))

# fig4: eta vs eta_ht crossing at w2=3
for r in np.linspace(0, 1.2, 13):
    w_ab, q_bc, w_cd, q_da = [float(x) for x in cycle(1, 0.2, 1, 3, r)]
    eta = (w_ab + w_cd) / q_bc
    eta_ht = 1 - 0.2 / (1 + 2 * np.sinh(r) ** 2)
    print("fig4 r=%.2f eta=%.6f eta_ht=%.6f" % (r, eta, eta_ht))
