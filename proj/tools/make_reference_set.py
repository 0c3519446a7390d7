#!/usr/bin/env python3
#
# Project gadmol - Copyright 2026 The gadmol Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Generates the bundled reference SMILES set by seeded fragment assembly.

Molecules are neutral organics over C, N, O, S, P and F built from a ring
catalog, substituents and linkers. A few deliberately unsupported lines are
mixed in so the loader's skip-and-report path is exercised on real input.

    python3 tools/make_reference_set.py > data/reference.smi
"""

import argparse
import random

# (atoms, ring bonds, atoms that accept a substituent, weight)
RINGS = [
    (["c", "c", "c", "c", "c", "c"], [""] * 6, [0, 1, 2, 3, 4, 5], 10),
    (["c", "c", "c", "n", "c", "c"], [""] * 6, [0, 1, 2, 4, 5], 4),
    (["c", "c", "n", "c", "n", "c"], [""] * 6, [0, 1, 3, 5], 2),
    (["c", "c", "c", "o", "c"], [""] * 5, [0, 1, 2, 4], 2),
    (["c", "c", "c", "s", "c"], [""] * 5, [0, 1, 2, 4], 2),
    (["C", "C", "C", "C", "C", "C"], [""] * 6, [0, 1, 2, 3, 4, 5], 5),
    (["C", "C", "C", "C", "C"], [""] * 5, [0, 1, 2, 3, 4], 3),
    (["C", "C", "C", "N", "C", "C"], [""] * 6, [0, 1, 2, 3, 4, 5], 3),
    (["C", "C", "O", "C", "C", "N"], [""] * 6, [0, 1, 3, 4, 5], 2),
    (["C", "C", "C", "O", "C"], [""] * 5, [0, 1, 2, 4], 2),
    (["C", "C", "C"], [""] * 3, [0, 1, 2], 1),
    (["C", "C", "C", "C", "C", "C"], ["=", "", "", "", "", ""], [2, 3, 4, 5], 2),
    (["C", "C", "C", "C", "C", "C", "C"], [""] * 7, [0, 1, 2, 3, 4, 5, 6], 2),
    (["C", "C", "C", "N", "C", "C", "C"], [""] * 7, [0, 1, 2, 3, 4, 5, 6], 1),
    (["C", "C", "C", "C", "C", "C", "C", "C"], [""] * 8, [0, 2, 4, 6], 1),
]

SUBSTITUENTS = [
    ("C", 10), ("CC", 6), ("CCC", 3), ("CC(C)C", 2), ("OC", 5), ("O", 4),
    ("N", 3), ("NC", 3), ("N(C)C", 2), ("C(=O)O", 3), ("C(=O)N", 3),
    ("C(=O)OC", 2), ("C#N", 2), ("F", 6), ("C(F)(F)F", 3), ("SC", 2),
    ("S", 1), ("CO", 3), ("CN", 2), ("CCO", 2), ("OCC", 2), ("C=O", 2),
    ("CC=C", 1), ("NC(=O)C", 3), ("P(C)C", 1), ("OP(O)O", 1), ("CCCC", 1),
    ("CCS", 1), ("C(C)=O", 2), ("CC#C", 1), ("CSC", 1),
]

LINKERS = [
    ("", 4), ("C", 4), ("CC", 2), ("O", 2), ("N", 2), ("C(=O)N", 3),
    ("NC(=O)", 2), ("S", 1), ("OC", 2), ("CNC", 1), ("C=C", 1),
]

ACYCLIC = [
    "CCCCCC", "CCOC(=O)CC", "CC(C)CC(=O)O", "NCCCCN", "CCSCCO", "CC(=O)NCC",
    "CCCCCCCC(=O)O", "COCCOC", "CC(C)(C)O", "CN(C)C=O", "CCCP(C)C",
    "FC(F)CCO", "CC=CC=CC", "N#CCCC#N", "CSCC(N)C(=O)O", "OCC(O)CO",
    "CCCCCCCCCC", "CC(C)CCCC(C)C", "CCOCCOCCO", "CSSC", "CCCCSCCCC",
    "CC(O)C(=O)NC", "NCC(=O)NCC(=O)O", "CC(C)(C)CC(=O)OC", "FC(F)(F)CCCN",
    "C=CCOCC=C", "CCN(CC)CCO", "OC(=O)CCC(=O)O", "CCCCC(CC)CO",
]

UNSUPPORTED = [
    "CCCl", "c1ccccc1Cl", "CC(=O)[O-]", "C[N+](C)(C)C", "CS(=O)(=O)C",
    "C/C=C/C", "N[C@@H](C)C(=O)O", "CC.CC", "c1cc[nH]c1", "BrCCO",
    "CC(C)S(=O)(=O)N", "[Na+].[Cl-]", "OB(O)c1ccccc1", "C1CC1[Si](C)(C)C",
    "ICC", "CP(=O)(O)O", "c1ccc2ccccc2c1Cl", "CC[NH3+]",
]


def weighted(rng, items):
    total = sum(w for _, w in items)
    x = rng.uniform(0, total)
    for value, w in items:
        x -= w
        if x <= 0:
            return value
    return items[-1][0]


def ring_smiles(rng, depth, budget):
    atoms, bonds, open_sites = weighted(rng, [(r[:3], r[3]) for r in RINGS])
    digit = str(depth + 1)
    branches = {i: [] for i in range(len(atoms))}
    # A nested ring hangs off its first atom, which then has no room left.
    sites = [i for i in open_sites if depth == 0 or i != 0]
    rng.shuffle(sites)
    for site in sites[: rng.randint(0, min(3, len(sites)))]:
        branches[site].append(weighted(rng, SUBSTITUENTS))
    if budget > 0 and sites and rng.random() < 0.55:
        site = sites[-1]
        linker = weighted(rng, LINKERS)
        branches[site] = [linker + ring_smiles(rng, depth + 1, budget - 1)]
    out = []
    for i, atom in enumerate(atoms):
        if i > 0:
            out.append(bonds[i - 1])
        out.append(atom)
        if i == 0:
            out.append(digit)
        elif i == len(atoms) - 1:
            out.append(bonds[-1] + digit)
        for b in branches[i]:
            out.append("(" + b + ")")
    return "".join(out)


def molecule(rng):
    if rng.random() < 0.1:
        return rng.choice(ACYCLIC)
    return ring_smiles(rng, 0, 2)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("-n", type=int, default=1000, help="number of lines")
    parser.add_argument("--seed", type=int, default=20260101)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    n_bad = len(UNSUPPORTED)
    lines = [molecule(rng) for _ in range(args.n - n_bad)]
    step = max(1, len(lines) // n_bad)
    for k, bad in enumerate(UNSUPPORTED):
        lines.insert(min(len(lines), k * step + step // 2), bad)
    for line in lines:
        print(line)


if __name__ == "__main__":
    main()
