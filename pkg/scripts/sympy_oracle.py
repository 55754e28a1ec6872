"""Independent CAS oracle: recompute family quantities with sympy and print them.

The printed values are frozen into tests/test_oracle_values.py.  Run with
``python scripts/sympy_oracle.py``; needs sympy (``pip install .[oracle]``).
"""

import sympy as sp


def family(m, k, alpha):
    xs = sp.symbols(f"x1:{m + 1}")
    y, z = sp.symbols("y z")
    X = sp.Mul(*xs)
    H = X**2 * y + z**2 + X * (z**2 - alpha) ** k - alpha
    Q = X**2 * y + z**2 + X - alpha
    return xs, y, z, X, H, Q


def quotients(m, k, alpha):
    xs, y, z, X, H, Q = family(m, k, alpha)
    out = {}
    for side, F in (("Q", Q), ("P", H)):
        q, r = sp.div(sp.expand(F**k - (z**2 - alpha) ** k), sp.expand(X), *xs, y, z)
        assert r == 0
        out[side] = sp.expand(q)
    return out


def phi_pulls_P_to_Q(m, k, alpha):
    xs, y, z, X, P, Q = family(m, k, alpha)
    wQ = quotients(m, k, alpha)["Q"]
    phi = {xs[0]: xs[0] / Q**k, y: y * Q ** (2 * k) + Q**k * wQ}
    return sp.simplify(P.subs(phi, simultaneous=True) - Q) == 0


def main():
    a = sp.Symbol("a")
    for m, k, alpha in [(1, 1, a), (2, 1, a), (1, 2, a), (2, 2, 1), (1, 3, sp.Rational(-3, 2))]:
        for side, q in quotients(m, k, alpha).items():
            print(f"quotient m={m} k={k} alpha={alpha} side={side}: {q}")
    for m, k, alpha in [(1, 1, a), (1, 2, a), (2, 2, 1)]:
        print(f"P o Phi == Q for m={m} k={k} alpha={alpha}: {phi_pulls_P_to_Q(m, k, alpha)}")
    xs, y, z, X, S1, _ = family(1, 1, 0)
    grad = [sp.diff(S1, v) for v in (*xs, y, z)]
    print("S1 gradient:", grad)
    print("S1 singular points:", sp.solve([S1, *grad], [*xs, y, z], dict=True))
    xs, y, z, X, S2, _ = family(1, 0, 0)
    grad = [sp.diff(S2, v) for v in (*xs, y, z)]
    print("S2 singular points:", sp.solve([S2, *grad], [*xs, y, z], dict=True))


if __name__ == "__main__":
    main()
