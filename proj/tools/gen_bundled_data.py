#!/usr/bin/env python3
"""Regenerate the bundled data files under data/.

rational_ap.txt holds a_p of six rational curves, computed as
-sum_x (f(x) / p) for y^2 = f(x).

The Bianchi eigenvalue tables for Q(sqrt(-2)) are obtained from those by
the base-change relation: a_P = a_p(f) at a split prime P | p, and
a_(p) = a_p(f)^2 - 2p at an inert prime. Cuspidal and newform counts per
level are the published ones and are written as DIM lines.

Usage: gen_bundled_data.py [outdir]   (default: data/ next to this script)
"""

import os
import sys

P_BOUND = 500

# omega^2 = t*omega - n
FIELDS = {-1: (0, 1), -2: (0, 2), -7: (1, 2)}
UNITS = {-1: [(1, 0), (-1, 0), (0, 1), (0, -1)], -2: [(1, 0), (-1, 0)], -7: [(1, 0), (-1, 0)]}


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def mul(d, x, y):
    t, n = FIELDS[d]
    a, b = x
    c, e = y
    return (a * c - n * b * e, a * e + b * c + t * b * e)


def power(d, x, k):
    r = (1, 0)
    for _ in range(k):
        r = mul(d, r, x)
    return r


def norm(d, x):
    t, n = FIELDS[d]
    a, b = x
    return a * a + t * a * b + n * b * b


def canonical(d, x):
    cands = [mul(d, u, x) for u in UNITS[d]]
    first = [y for y in cands if y[0] > 0 and y[1] >= 0]
    if first:
        return first[0]
    return min(y for y in cands if y[0] > 0 or (y[0] == 0 and y[1] > 0))


def coords(x):
    return "%d,%d" % x


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def ap_short(model, p):
    a1, a2, a3, a4, a6 = model
    assert a1 == 0 and a3 == 0
    return -sum(legendre(x * x * x + a2 * x * x + a4 * x + a6, p) for x in range(p))


RATIONAL = [
    # label, model, level, twist source
    ("E1", (0, 0, 0, 1, 0), 64, None),
    ("E1_chi", (0, 0, 0, 4, 0), 32, "E1"),
    ("E2", (0, 1, 0, 1, 1), None, None),
    ("E2_chi", (0, -8, 0, 64, -512), None, "E2"),
    ("E3", (0, -1, 0, 1, -1), None, None),
    ("E3_chi", (0, 8, 0, 64, 512), None, "E3"),
]


def rational_tables():
    odd_primes = [p for p in range(3, P_BOUND) if is_prime(p)]
    return {label: {p: ap_short(model, p) for p in odd_primes} for label, model, _, _ in RATIONAL}


def write_rational(path, tables):
    out = ["# a_p for odd p < %d, by Legendre sums (tools/gen_bundled_data.py)" % P_BOUND]
    for label, model, level, src in RATIONAL:
        head = "RATIONAL %s MODEL %s" % (label, ",".join(str(c) for c in model))
        if level is not None:
            head += " LEVEL %d" % level
        if src is not None:
            head += " TWIST_OF %s BY -8" % src
        out.append(head)
        for p, a in tables[label].items():
            out.append("AP %d %d" % (p, a))
        out.append("END")
    with open(path, "w") as f:
        f.write("\n".join(out) + "\n")


def primes_sqrtm2(bound):
    """(generator, norm, rational p, split?) for primes of Z[sqrt(-2)] of
    odd norm < bound, ordered by (norm, generator)."""
    out = []
    for p in range(3, bound):
        if not is_prime(p):
            continue
        if p % 8 in (1, 3):
            b = 1
            while 2 * b * b < p:
                a2 = p - 2 * b * b
                a = int(round(a2 ** 0.5))
                if a * a == a2:
                    break
                b += 1
            for g in sorted({canonical(-2, (a, b)), canonical(-2, (a, -b))}):
                out.append((g, p, p, True))
        elif p * p < bound:
            out.append(((p, 0), p * p, p, False))
    out.sort(key=lambda e: (e[1], e[0]))
    return out


def header(d, provenance, notes, dims):
    lines = ["FIELD d=%d" % d]
    lines += ["PROVENANCE " + s for s in provenance]
    lines += ["NOTE " + s for s in notes]
    for gen, cusp, new in dims:
        g = canonical(d, gen)
        lines.append("DIM LEVEL %s NORM %d CUSPIDAL %d NEWFORMS %d" % (coords(g), norm(d, g), cusp, new))
    return lines


def write_sqrtm2(path, tables):
    pi = (0, 1)
    dims = {5: (1, 1), 6: (2, 0), 7: (3, 0), 8: (6, 2)}
    lines = header(
        -2,
        [
            "cuspidal and newform counts per level (sqrt(-2))^k as published for weight 2 and Gamma_0",
            "Hecke eigenvalues generated by tools/gen_bundled_data.py from the base-change relation "
            "(a_P = a_p split, a_p^2 - 2p inert) applied to the curves in rational_ap.txt",
            "labels follow the LMFDB Bianchi newform labels over 2.0.8.1",
        ],
        ["torsion primes of Gamma_0(N)^ab at the predicted level: {2}"],
        [(power(-2, pi, k), *dims.get(k, (0, 0))) for k in range(9)],
    )
    forms = [
        ("32.1-a", power(-2, pi, 5), True, "E1", "E1"),
        ("256.1-a", power(-2, pi, 8), False, "E2", "E2"),
        ("256.1-b", power(-2, pi, 8), False, "E3", "E3"),
    ]
    models = {label: model for label, model, _, _ in RATIONAL}
    for label, level, cm, curve, src in forms:
        lvl = canonical(-2, level)
        lines.append("")
        lines.append("FORM %s LEVEL %s NORM %d CM %d BC 1" % (label, coords(lvl), norm(-2, lvl), 1 if cm else 0))
        lines.append("CURVE " + " ".join("%d,0" % c for c in models[curve]))
        for g, q, p, split in primes_sqrtm2(P_BOUND):
            a = tables[src][p]
            value = a if split else a * a - 2 * p
            lines.append("AP %s NORM %d VALUE %d" % (coords(g), q, value))
        lines.append("END")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def write_empty(path, d, name, dims, torsion):
    lines = header(
        d,
        ["cuspidal and newform counts per level as published for weight 2 and Gamma_0 over " + name],
        ["the cuspidal space at each predicted level is 0, so every divisor level is 0 as well",
         "torsion primes of Gamma_0(N)^ab at the predicted levels: " + torsion],
        dims,
    )
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "..", "data")
    os.makedirs(outdir, exist_ok=True)
    tables = rational_tables()
    write_rational(os.path.join(outdir, "rational_ap.txt"), tables)
    write_sqrtm2(os.path.join(outdir, "newforms_qsqrtm2.txt"), tables)

    qi = [(power(-1, (1, 1), k), 0, 0) for k in range(9)]
    write_empty(os.path.join(outdir, "newforms_qi.txt"), -1, "Q(i)", qi, "{2}")

    a1, a2 = (0, 1), (1, -1)
    pairs = sorted({(i, j) for i in range(5) for j in range(2)} | {(i, j) for i in range(2) for j in range(5)})
    gens = [mul(-7, power(-7, a1, i), power(-7, a2, j)) for i, j in pairs]
    gens.sort(key=lambda g: (norm(-7, g), canonical(-7, g)))
    write_empty(os.path.join(outdir, "newforms_qsqrtm7.txt"), -7, "Q(sqrt(-7))", [(g, 0, 0) for g in gens], "{2, 3}")


if __name__ == "__main__":
    main()
