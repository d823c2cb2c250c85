#!/usr/bin/env python3
"""Writes data/golden_tables.json: minimizing weights and hvol for the A, D, E families."""
import json
import math
import sys
from fractions import Fraction as F


def q(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def entry(family, n, k, weight, value, source):
    w = [q(c) if isinstance(c, F) else float(c) for c in weight]
    exact = all(isinstance(c, F) for c in weight) and isinstance(value, F)
    return {
        "family": family, "n": n, "k": k, "weight": w,
        "value": q(value) if isinstance(value, F) else float(value),
        "exact": exact, "source": source,
    }


def a_rows():
    for n in range(2, 7):
        for k in range(1, 7):
            ones = [F(1)] * n
            if k * (n - 2) >= 2 * (n - 1):
                a = F(n - 2, n - 1)
                val = 2 * F(n) ** n * F(n - 2) ** (n - 1) / F(n - 1) ** (n - 1)
                yield entry("A", n, k, ones + [a], val, "closed form, interior branch")
            else:
                val = F((n - 2) * k + 2) ** n / F(k) ** (n - 1)
                yield entry("A", n, k, ones + [F(2, k)], val, "closed form, wall branch")


def alpha_star(n):
    return (-n + math.sqrt(5 * n * n - 4 * n)) / (2 * (n - 1))


def d_rows():
    for n in range(1, 7):
        for k in range(3, 7):
            ones = [F(1)] * n
            if n == 1:
                yield entry("D", n, k, [F(1), F(k - 1, k), F(2, k)], F(1, k - 1), "tabulated, surface")
            elif n <= 3 and k == 3:
                val = F((n - 1) * k + 1) ** (n + 1) / (F(k) ** (n - 1) * (k - 1))
                yield entry("D", n, k, ones + [F(2, 3), F(2, 3)], val, "tabulated")
            elif n <= 3:
                b = alpha_star(n)
                val = (n - b) ** (n + 1) / (b * (1 - b))
                yield entry("D", n, k, ones + [b, 2 - 2 * b], val, "irrational branch; value derived")
            else:
                a = F(n - 2, n - 1)
                val = 2 * F(n + 1) ** (n + 1) * F(n - 2) ** (n - 1) / F(n - 1) ** (n - 1)
                yield entry("D", n, k, ones + [a, a], val, "closed form")


E_LOW = {
    "E6": {1: ([F(2, 3), F(1, 2)], F(1, 6), "tabulated, surface"),
           2: ([F(2, 3), F(1, 2)], F(343, 36), "tabulated"),
           3: ([F(2, 3), F(5, 9)], F(32000, 243), "derived"),
           4: ([F(2, 3), F(2, 3)], F(50000, 27), "derived")},
    "E7": {1: ([F(4, 9), F(2, 3)], F(1, 12), "tabulated, surface"),
           2: ([F(4, 9), F(2, 3)], F(250, 27), "tabulated"),
           3: ([F(5, 9), F(2, 3)], F(32000, 243), "tabulated"),
           4: ([F(2, 3), F(2, 3)], F(50000, 27), "tabulated")},
    "E8": {1: ([F(2, 3), F(2, 5)], F(1, 30), "tabulated, surface"),
           2: ([F(2, 3), F(2, 5)], F(2048, 225), "tabulated"),
           3: ([F(2, 3), F(5, 9)], F(32000, 243), "tabulated"),
           4: ([F(2, 3), F(2, 3)], F(50000, 27), "tabulated")},
}


def e_rows():
    for family, low in E_LOW.items():
        for n in range(1, 7):
            ones = [F(1)] * n
            if n in low:
                tail, val, src = low[n]
                yield entry(family, n, 0, ones + tail, val, src)
            else:
                a = F(n - 2, n - 1)
                val = 2 * F(n + 1) ** (n + 1) * F(n - 2) ** (n - 1) / F(n - 1) ** (n - 1)
                yield entry(family, n, 0, ones + [a, a], val, "closed form")


rows = list(a_rows()) + list(d_rows()) + list(e_rows())
out = sys.argv[1] if len(sys.argv) > 1 else "data/golden_tables.json"
with open(out, "w") as fh:
    json.dump({"entries": rows}, fh, indent=1)
    fh.write("\n")
