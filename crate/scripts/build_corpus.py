"""Regenerate corpus/links.txt and the table fixtures from the KnotInfo/LinkInfo CSV dumps.

usage: python3 scripts/build_corpus.py <path-to-database_knotinfo/csv_data>
"""
import csv
import math
import re
import sys
from pathlib import Path

import sympy

csv.field_size_limit(10**9)
ROOT = Path(__file__).resolve().parent.parent
MAX_KNOT = 9
MAX_LINK = 8


def rows(path):
    r = list(csv.reader(open(path), delimiter="|"))
    header = r[0]
    # second row holds display names
    for row in r[2:]:
        yield dict(zip(header, row))


def pd_from_text(s):
    nums = [int(x) for x in re.findall(r"-?\d+", s)]
    assert len(nums) % 4 == 0, s
    return [nums[i:i + 4] for i in range(0, len(nums), 4)]


def pd_text(pd):
    return "[" + ",".join("[" + ",".join(map(str, c)) + "]" for c in pd) + "]"


def braid_word(gens):
    return " ".join(f"s{g}" if g > 0 else f"s{-g}^-1" for g in gens)


def jones_pairs(expr, var):
    """Laurent polynomial in t (knots) or x = t^(1/2) (links) as sorted exponent:coef pairs in t^(1/2) units."""
    x = sympy.Symbol("x")
    t = sympy.Symbol("t")
    e = sympy.sympify(expr.replace("^", "**"))
    if var == "t":
        e = e.subs(t, x**2)
    shift = 64
    poly = sympy.Poly(sympy.expand(e * x**shift), x)
    terms = {int(m[0]) - shift: int(c) for m, c in poly.terms()}
    return " ".join(f"{k}:{v}" for k, v in sorted(terms.items()) if v != 0)


def cf_length(p, q):
    """Crossing number of the 2-bridge link p/q: sum of the terms of the positive continued fraction."""
    total = 0
    while q:
        a, r = divmod(p, q)
        total += a
        p, q = q, r
    return total


def main(src):
    src = Path(src)
    corpus = []
    knots_fixture = []
    links_fixture = []
    rational = []
    braids = []

    corpus.append("0_1 unknot")
    for r in rows(src / "knotinfo_data_complete.csv"):
        name = r["name"]
        n = int(r["crossing_number"])
        if n == 0 or n > MAX_KNOT:
            continue
        pd = pd_from_text(r["pd_notation"])
        corpus.append(f"{name} {pd_text(pd)}")
        alt = r["alternating"] == "Y"
        knots_fixture.append("\t".join([
            name, pd_text(pd), "alt" if alt else "nonalt", r["signature"], r["determinant"],
            jones_pairs(r["jones_polynomial"], "t"),
        ]))
        gens = [int(g) for g in re.findall(r"-?\d+", r["braid_notation"])]
        k = max(abs(g) for g in gens) + 1
        braids.append(f"{name}_br braid {k}: {braid_word(gens)}")
        tb = r["two_bridge_notation"].strip()
        if tb:
            p, q = [int(v) for v in re.findall(r"\d+", tb)]
            rational.append(f"{name}_2b rational {p}/{q}")

    seen = set()
    for r in rows(src / "linkinfo_data_complete.csv"):
        n = int(r["crossing_number"])
        if n > MAX_LINK:
            continue
        pd = pd_from_text(r["pd_notation_vector"])
        alt = r["alternating"] == "Y"
        links_fixture.append("\t".join([
            r["name"], pd_text(pd), "alt" if alt else "nonalt", r["signature"], r["determinant"],
            jones_pairs(r["jones_polynomial"], "x"),
        ]))
        base = r["name_unoriented"]
        if base in seen:
            continue
        seen.add(base)
        corpus.append(f"{base} {pd_text(pd)}")
        m = re.match(r"\{(\d+),\s*\{(.*)\}\}", r["braid_notation"].strip())
        if m:
            k = int(m.group(1))
            gens = [int(g) for g in re.findall(r"-?\d+", m.group(2))]
            braids.append(f"{base}_br braid {k}: {braid_word(gens)}")

    # 2-bridge links (even numerator) up to MAX_LINK crossings, one per unoriented
    # homeomorphism class of the branched cover.
    classes = set()
    for p in range(2, 200, 2):
        for q in range(1, p):
            if math.gcd(p, q) != 1 or cf_length(p, q) > MAX_LINK:
                continue
            qi = pow(q, -1, p)
            key = min(q, qi, p - q, p - qi)
            if (p, key) in classes:
                continue
            classes.add((p, key))
            rational.append(f"2b_{p}_{key} rational {p}/{key}")

    with open(ROOT / "corpus" / "links.txt", "w") as f:
        f.write("# Prime knots through 9 crossings and prime links through 8 crossings\n")
        f.write("# (PD codes from the KnotInfo / LinkInfo tables), braid-closure duplicates,\n")
        f.write("# 2-bridge links given by their fraction p/q, and a split unlink.\n")
        f.write("#\n# <name> <pd-code> | <name> braid <k>: <word> | <name> rational <p>/<q>\n\n")
        for line in corpus:
            f.write(line + "\n")
        f.write("\n# braid closures\n")
        for line in braids:
            f.write(line + "\n")
        f.write("\n# 2-bridge links\n")
        for line in rational:
            f.write(line + "\n")
        f.write("\n# split\n")
        f.write("unlink2 braid 2:\n")

    fixtures = ROOT / "crates" / "core" / "tests" / "data"
    fixtures.mkdir(parents=True, exist_ok=True)
    header = "# name\tpd\talternating\tsignature\tdeterminant\tjones (t^(1/2)-exponent:coefficient)\n"
    with open(fixtures / "knot_table.tsv", "w") as f:
        f.write(header)
        f.write("\n".join(knots_fixture) + "\n")
    with open(fixtures / "link_table.tsv", "w") as f:
        f.write(header)
        f.write("\n".join(links_fixture) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
