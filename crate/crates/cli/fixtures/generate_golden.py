"""Regenerate golden.json by brute-force expansion with Python fractions and sympy.

Independent of the Rust engines: spectra come from direct evaluation of the
eigenvalue formula over all (alpha, B); matrix entries from expanding psi * z^alpha
into monomials and integrating term by term.
"""
import json
from fractions import Fraction as F
from itertools import product

import sympy


def lam(n, m, a, B):
    first = F(1)
    for k in B:
        first *= F(a[k] + 1, a[k] + n[k] + m[k] + 1)
    if any(a[k] < m[k] - n[k] for k in B):
        return first
    sub = F(1)
    for k in B:
        sub *= F((a[k] + 1) * (a[k] + n[k] - m[k] + 1), (a[k] + n[k] + 1) ** 2)
    return first - sub


def subsets(d):
    for mask in range(1, 2 ** d):
        yield [k for k in range(d) if mask >> k & 1]


def spectrum(n, m, cap, proper_only=False):
    d = len(n)
    vals = {F(0)}
    for B in subsets(d):
        if proper_only and len(B) == d:
            continue
        for a in product(range(cap + 1), repeat=d):
            if any(a[k] for k in range(d) if k not in B):
                continue
            vals.add(lam(n, m, a, B))
    return sorted(vals)


def fr(x):
    return f"{x.numerator}/{x.denominator}"


def ip(a, b, c, d):
    """<z^a zbar^b, z^c zbar^d> / pi^n."""
    out = F(1)
    for k in range(len(a)):
        if a[k] + d[k] != b[k] + c[k]:
            return F(0)
        out /= a[k] + d[k] + 1
    return out


def times(psi, alpha):
    return [(c, tuple(x + y for x, y in zip(n, alpha)), m) for c, n, m in psi]


def inner(f, g):
    tot_re, tot_im = F(0), F(0)
    for cf, a, b in f:
        for cg, c, d in g:
            v = ip(a, b, c, d)
            if v:
                # cf * conj(cg) * v
                re = cf[0] * cg[0] + cf[1] * cg[1]
                im = cf[1] * cg[0] - cf[0] * cg[1]
                tot_re += re * v
                tot_im += im * v
    return (tot_re, tot_im)


def gram(psi, alpha, beta, cap):
    """<H z^beta, H z^alpha> / pi^n, monomial basis."""
    fb, fa = times(psi, beta), times(psi, alpha)
    re, im = inner(fb, fa)
    d = len(alpha)
    for g in product(range(cap + 1), repeat=d):
        w = 1
        for x in g:
            w *= x + 1
        zg = [((F(1), F(0)), g, (0,) * d)]
        pb = inner(fb, zg)
        pa = inner(fa, zg)
        # minus pb * conj(pa) * w
        re -= (pb[0] * pa[0] + pb[1] * pa[1]) * w
        im -= (pb[1] * pa[0] - pb[0] * pa[1]) * w
    return re, im


def matrix(psi, d, N):
    maxdeg = max(n[k] + m[k] for _, n, m in psi for k in range(d))
    cap = N + maxdeg
    basis = sorted(product(range(N + 1), repeat=d), key=lambda a: (sum(a), a))
    entries = []
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            re, im = gram(psi, a, b, cap)
            if re == 0 and im == 0:
                continue
            wa = 1
            wb = 1
            for x in a:
                wa *= x + 1
            for x in b:
                wb *= x + 1
            s = sympy.sqrt(sympy.Integer(wa * wb))
            coeff, rad = s.as_coeff_Mul()
            radicand = int(rad ** 2) if rad != 1 else 1
            coeff = F(int(sympy.fraction(coeff)[0]), int(sympy.fraction(coeff)[1]))
            entries.append([i, j, fr(re * coeff), fr(im * coeff), radicand])
    return entries


golden = {"spectra": [], "essential": [], "matrices": []}
for text, n, m, cap in [
    ("zb1", (0, 0), (1, 0), 3),
    ("zb1^2", (0, 0), (2, 0), 5),
    ("zb1*zb2", (0, 0), (1, 1), 2),
    ("z1^2", (2,), (0,), 4),
    ("zb1^2*zb2^3", (0, 0), (2, 3), 4),
    ("z1*zb2^2", (1, 0), (0, 2), 3),
]:
    golden["spectra"].append(
        {"symbol": text, "dim": len(n), "cap": cap, "values": [fr(v) for v in spectrum(n, m, cap)]}
    )
for text, n, m, cap in [("zb1*zb2", (0, 0), (1, 1), 3), ("zb1^2*zb2", (0, 0), (2, 1), 3)]:
    golden["essential"].append(
        {"symbol": text, "dim": len(n), "cap": cap, "values": [fr(v) for v in spectrum(n, m, cap, True)]}
    )
for text, psi, d, N in [
    ("zb1*(zb2+1)", [((F(1), F(0)), (0, 0), (1, 1)), ((F(1), F(0)), (0, 0), (1, 0))], 2, 2),
    (
        "(1/2+i)*zb1^2*z2 + zb2",
        [((F(1, 2), F(1)), (0, 1), (2, 0)), ((F(1), F(0)), (0, 0), (0, 1))],
        2,
        2,
    ),
    ("zb1 + 3*z1*zb1^2", [((F(1), F(0)), (0,), (1,)), ((F(3), F(0)), (1,), (2,))], 1, 4),
]:
    golden["matrices"].append({"symbol": text, "dim": d, "N": N, "entries": matrix(psi, d, N)})

print(json.dumps(golden, indent=1))
