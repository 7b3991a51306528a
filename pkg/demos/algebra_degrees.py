"""Separability and tower degrees for a handful of small commutative algebras.

Run with ``python3 demos/algebra_degrees.py``.
"""

from sepalg.exactcore import GF, QQ, default_modulus
from sepalg.fdalg import (degree, monogenic, separability_idempotent, split_algebra, splitting_tower,
                          tensor_product)
from sepalg.io import load_algebra


def show(name, a):
    w = separability_idempotent(a)
    if w is None:
        print(f"{name:28s} dim {a.dim}  not separable")
        return
    rec = splitting_tower(a, explicit=False)
    print(f"{name:28s} dim {a.dim}  degree {rec.degree}  tower dims {rec.dims}")


def main():
    F2, F3 = GF(2), GF(3)
    show("F2 x F2 x F2", split_algebra(F2, 3))
    show("F16 over F2", monogenic(F2, default_modulus(2, 4)))
    show("F9 over F3", monogenic(F3, default_modulus(3, 2)))
    show("F2[x]/(x^2)", monogenic(F2, [0, 0, 1]))
    show("Q[x]/(x^3 - 2)", monogenic(QQ, [-2, 0, 0, 1]))
    show("Q[x]/(x^4 + 1)", monogenic(QQ, [1, 0, 0, 0, 1]))

    # degree is additive on products and multiplicative on tensor products
    f4 = load_algebra("f4_over_f2")
    f8 = monogenic(F2, default_modulus(2, 3))
    print("deg(F4 (x) F8) =", degree(tensor_product(f4, f8)), "=", degree(f4), "*", degree(f8))


if __name__ == "__main__":
    main()
