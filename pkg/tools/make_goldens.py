#!/usr/bin/env python3
"""Regenerate the vendored OEIS b-files under src/mutatree/data/oeis/.

The sandbox this project is built in has no route to oeis.org, so the terms are
produced from each entry's defining formula with plain integer arithmetic.  The
script deliberately imports nothing from mutatree.
"""

from math import comb
from pathlib import Path

TERMS = 30
OUT = Path(__file__).resolve().parent.parent / "src" / "mutatree" / "data" / "oeis"


def catalan(k):
    return comb(2 * k, k) // (k + 1)


def a007852(n):
    # antichains in rooted plane trees on n nodes; sum_k C_k (2k+1)/(2m+1) binom(2m+1, m-k), m = n-1
    m = n - 1
    return sum(catalan(k) * (2 * k + 1) * comb(2 * m + 1, m - k) for k in range(m + 1)) // (2 * m + 1)


def a007856(n):
    m = n - 1
    return sum(catalan(k) * comb(2 * m, m - k) for k in range(m + 1))


def a114121(n):
    return 1 if n == 0 else 4 ** (n - 1) + comb(2 * n, n) // 2


def a097613(n):
    return 1 if n == 1 else (3 * n - 2) * comb(2 * n - 2, n - 1) // (2 * n)


SEQS = {
    "A000984": (0, lambda n: comb(2 * n, n), "binomial(2n, n)"),
    "A001700": (0, lambda n: comb(2 * n + 1, n + 1), "binomial(2n+1, n+1)"),
    "A007852": (1, a007852, "antichains in rooted plane trees on n nodes"),
    "A007856": (1, a007856, "sum_k C_k binomial(2m, m-k), m = n-1"),
    "A097070": (1, lambda n: (n + 1) * comb(2 * n - 1, n), "(n+1) binomial(2n-1, n)"),
    "A114121": (0, a114121, "a(0) = 1, a(n) = 4^(n-1) + binomial(2n, n)/2"),
    "A097613": (1, a097613, "a(1) = 1, a(n) = (3n-2)/(2n) binomial(2n-2, n-1)"),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for ident, (offset, fn, desc) in SEQS.items():
        lines = [
            f"# {ident}: {desc}",
            "# regenerated offline from the defining formula by tools/make_goldens.py",
        ]
        lines += [f"{n} {fn(n)}" for n in range(offset, offset + TERMS)]
        (OUT / f"b{ident[1:]}.txt").write_text("\n".join(lines) + "\n")
        print(ident, "written")


if __name__ == "__main__":
    main()
