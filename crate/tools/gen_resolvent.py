"""Regenerates crates/core/src/prehomog/resolvent_table.rs.

Expands 4·det(A·x − B·y) for symmetric matrices A, B built from the integral coefficients
of two ternary quadratic forms Σ_{i≤j} a_ij x_i x_j and prints the coefficient of each
monomial of the resulting binary cubic as an integer polynomial in the 12 inputs.
"""
import sympy as sp

names = ["a00", "a11", "a22", "a01", "a02", "a12", "b00", "b11", "b22", "b01", "b02", "b12"]
syms = sp.symbols(names)
v = dict(zip(names, syms))
x, y = sp.symbols("x y")


def sym_matrix(p):
    h = sp.Rational(1, 2)
    return sp.Matrix([
        [v[p + "00"], h * v[p + "01"], h * v[p + "02"]],
        [h * v[p + "01"], v[p + "11"], h * v[p + "12"]],
        [h * v[p + "02"], h * v[p + "12"], v[p + "22"]],
    ])


cubic = sp.expand(4 * (sym_matrix("a") * x - sym_matrix("b") * y).det())
poly = sp.Poly(cubic, x, y)
print("// @generated by tools/gen_resolvent.py; do not edit.")
print("//")
print("// Inputs are indexed as [a00, a11, a22, a01, a02, a12, b00, b11, b22, b01, b02, b12].")
print("// Each entry (c, i, j, k) contributes c · v[i] · v[j] · v[k].")
print()
for label, mono in zip("ABCD", [x**3, x**2 * y, x * y**2, y**3]):
    coeff = sp.Poly(poly.as_expr().coeff(x, sp.degree(mono, x)).coeff(y, sp.degree(mono, y)), *syms)
    rows = []
    for exps, c in sorted(coeff.terms()):
        idx = [i for i, e in enumerate(exps) for _ in range(e)]
        assert c == int(c) and len(idx) == 3
        rows.append((int(c), *idx))
    print(f"pub(crate) const CUBIC_{label}: [(i64, usize, usize, usize); {len(rows)}] = [")
    for r in rows:
        print(f"    ({r[0]}, {r[1]}, {r[2]}, {r[3]}),")
    print("];")
    print()
