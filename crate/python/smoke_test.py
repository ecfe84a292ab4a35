"""Smoke test for the hankel_spectra_py extension.

Build and install first:
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
"""

from fractions import Fraction
import math
import sys

import hankel_spectra_py as hs


def lam(n, m, a, b):
    first = Fraction(1)
    second = Fraction(1)
    kernel = False
    for k in b:
        first *= Fraction(a[k] + 1, a[k] + n[k] + m[k] + 1)
        if a[k] < m[k] - n[k]:
            kernel = True
        else:
            second *= Fraction((a[k] + 1) * (a[k] + n[k] - m[k] + 1), (a[k] + n[k] + 1) ** 2)
    return first if kernel else first - second


def main():
    sym = hs.Symbol("zb1*(zb2+1)")
    assert sym.dim == 2 and not sym.is_holomorphic()
    assert hs.Symbol(sym.to_json()) == sym

    assert hs.exact_values("zb1", 3, 2) == [Fraction(v) for v in ("0", "1/20", "1/12", "1/6", "1/2")]
    assert hs.lambda_value([0, 0], [1, 1], [0, 0], [1, 2]) == Fraction(1, 4)
    for a1 in range(4):
        for a2 in range(4):
            assert hs.lambda_value([1, 0], [2, 3], [a1, a2], [1, 2]) == lam([1, 0], [2, 3], [a1, a2], [0, 1])

    report = hs.exact("zb1^2*zb2", cap=4)
    assert report["multiplicity_class"] == "AllFinite"

    eig = hs.compression_eigenvalues(hs.Symbol("zb1"), 30)
    for j, want in enumerate([1 / 2, 1 / 6, 1 / 12]):
        assert abs(eig[-1 - j] - want) < 1e-12

    profile = hs.slice_profile(hs.Symbol("zb1^2*zb2^3"), 1, 16, 8)
    values = [v for _, v in profile]
    assert max(values) - min(values) <= 1e-12 * max(values)
    assert math.isclose(profile[4][0], 2 * math.pi * 4 / 16)

    b = hs.boundary("zb1*(zb2+1)", coord=2, degree=6, samples=32)
    assert b["verdict"] == "non-constant"

    try:
        hs.exact("zb1 + zb2")
    except ValueError as e:
        assert "approx" in str(e)
    else:
        raise AssertionError("non-monomial accepted")

    v = hs.run_verify(["engines-agree", "toeplitz-identity"])
    assert v["passed"], v

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
