"""Writes q-expansion files for the cusp forms used by the fixtures.

All coefficients come from exact integer eta-product / Eisenstein
expansions.  Output format: header `weight k width h level tag`, then
`m re im` per line.
"""
import sys
from pathlib import Path

M = 400  # number of coefficients in the local parameter q_h = e^{2 pi i z / h}


def eta_power(e, nterms):
    """Coefficients of prod_{n>=1} (1 - q^n)^e up to q^{nterms-1}."""
    c = [0] * nterms
    c[0] = 1
    for n in range(1, nterms):
        for _ in range(e):
            for i in range(nterms - 1, n - 1, -1):
                c[i] -= c[i - n]
    return c


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def mul(a, b, nterms):
    out = [0] * nterms
    for i, x in enumerate(a[:nterms]):
        if x:
            for j, y in enumerate(b[: nterms - i]):
                out[i + j] += x * y
    return out


def write(path, weight, width, level, tag, coeffs):
    with open(path, "w") as f:
        f.write(f"weight {weight} width {width} level {level} {tag}\n")
        for m in range(1, len(coeffs)):
            f.write(f"{m} {coeffs[m]} 0\n")


out = Path(sys.argv[1])
out.mkdir(parents=True, exist_ok=True)

# eta(2z)^12 on Gamma0(4), width 1: q * prod (1 - q^{2n})^12
p = eta_power(12, M)
c = [0] * (M + 1)
for i, x in enumerate(p):
    if 1 + 2 * i <= M:
        c[1 + 2 * i] = x
write(out / "w6_gamma0_4.qexp", 6, 1, 4, "eta2z_12", c)

# forms on the commutator subgroup of PSL2(Z); cusp width 6, q6 = e^{2 pi i z/6}
base = M // 6 + 2


def spread(series, offset):
    c = [0] * (M + 1)
    for n, x in enumerate(series):
        m = 6 * n + offset
        if m <= M:
            c[m] = x
    return c


write(out / "w4_torus_eta8.qexp", 4, 6, 1, "eta_8", spread(eta_power(8, base), 2))
write(out / "w6_torus_eta12.qexp", 6, 6, 1, "eta_12", spread(eta_power(12, base), 3))
e4 = [1] + [240 * sigma3(n) for n in range(1, base)]
write(out / "w6_torus_e4eta4.qexp", 6, 6, 1, "e4_eta_4", spread(mul(e4, eta_power(4, base), base), 1))
