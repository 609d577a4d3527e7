"""Regenerates forms_table.json: I_k(F_i F_j) and sum_m J_k^(m) pairings for
F = (1 - P1)^a P2^b, by direct symbolic integration over the simplex."""
import json
import sympy as sp


def simplex_integral(expr, xs):
    # integrate x_k first, then x_{k-1}, ... over sum x_i <= 1
    for i in reversed(range(len(xs))):
        upper = 1 - sum(xs[:i])
        expr = sp.integrate(expr, (xs[i], 0, upper))
    return sp.nsimplify(sp.expand(expr))


def basis(D):
    gens = [(a, b) for b in range(D // 2 + 1) for a in range(D - 2 * b + 1)]
    return sorted(gens, key=lambda g: (g[0] + 2 * g[1], g[1]))


def table(k, D):
    xs = sp.symbols(f"x1:{k + 1}")
    P1, P2 = sum(xs), sum(x * x for x in xs)
    gens = basis(D)
    F = [(1 - P1) ** a * P2 ** b for a, b in gens]
    entries = []
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            m1 = simplex_integral(sp.expand(F[i] * F[j]), xs)
            m2 = 0
            for m in range(k):
                rest = [x for t, x in enumerate(xs) if t != m]
                upper = 1 - sum(rest)
                fi = sp.integrate(sp.expand(F[i]), (xs[m], 0, upper))
                fj = sp.integrate(sp.expand(F[j]), (xs[m], 0, upper))
                m2 += simplex_integral(sp.expand(fi * fj), rest) if rest else fi * fj
            entries.append({"i": i, "j": j, "M1": str(sp.Rational(m1)), "M2": str(sp.Rational(m2))})
    return {"k": k, "degree_bound": D, "generators": [list(g) for g in gens], "entries": entries}


if __name__ == "__main__":
    out = [table(1, 3), table(2, 2), table(3, 2)]
    with open("forms_table.json", "w") as f:
        json.dump(out, f, indent=1)
        f.write("\n")
