#!/usr/bin/env python3
"""Solve a sparse SDPA (.dat-s) file with cvxpy and write a CSDP-style solution.

    sdpa_cvxpy.py problem.dat-s problem.sol [--solver CLARABEL|SCS|CVXOPT]

The primal is max <F0, X> s.t. <Fi, X> = ci, X psd (blockwise). The solution
file has the dual vector on the first line, then "2 block i j value" lines for X.
"""
import argparse
import sys

import numpy as np
import scipy.sparse as sp


def read_sdpa(path):
    tokens = []
    with open(path) as f:
        for line in f:
            line = line.split('*', 1)[0].split('"', 1)[0].strip()
            if line:
                tokens.extend(line.replace(',', ' ').replace('{', ' ').replace('}', ' ')
                              .replace('(', ' ').replace(')', ' ').split())
    pos = 0
    m = int(tokens[pos]); pos += 1
    nblocks = int(tokens[pos]); pos += 1
    sizes = [int(t) for t in tokens[pos:pos + nblocks]]; pos += nblocks
    c = np.array([float(t) for t in tokens[pos:pos + m]]); pos += m
    entries = []
    while pos + 5 <= len(tokens):
        mat, blk, i, j = (int(t) for t in tokens[pos:pos + 4])
        entries.append((mat, blk - 1, i - 1, j - 1, float(tokens[pos + 4])))
        pos += 5
    return m, sizes, c, entries


def solve(path, solver):
    import cvxpy as cp

    m, sizes, c, entries = read_sdpa(path)
    variables = []
    for n in sizes:
        variables.append(cp.Variable((n, n), PSD=True) if n > 0 else cp.Variable(-n, nonneg=True))
    rows = [[] for _ in sizes]
    cols = [[] for _ in sizes]
    vals = [[] for _ in sizes]
    objective = []
    for mat, blk, i, j, v in entries:
        n = sizes[blk]
        if n < 0:
            col, w = i, v
            if mat == 0:
                objective.append(v * variables[blk][i])
                continue
            rows[blk].append(mat - 1); cols[blk].append(col); vals[blk].append(w)
            continue
        pairs = [(i, j)] if i == j else [(i, j), (j, i)]
        for a, b in pairs:
            if mat == 0:
                objective.append(v * variables[blk][a, b])
            else:
                rows[blk].append(mat - 1); cols[blk].append(b * n + a); vals[blk].append(v)
    lhs = 0
    for k, n in enumerate(sizes):
        if not vals[k]:
            continue
        width = -n if n < 0 else n * n
        a = sp.csr_matrix((vals[k], (rows[k], cols[k])), shape=(m, width))
        x = variables[k] if n < 0 else cp.vec(variables[k], order='F')
        lhs = lhs + a @ x
    equality = lhs == c
    problem = cp.Problem(cp.Maximize(cp.sum(objective) if objective else 0), [equality])
    problem.solve(solver=solver)
    if problem.status not in ("optimal", "optimal_inaccurate"):
        raise RuntimeError(f"solver status {problem.status}")
    return sizes, variables, np.asarray(equality.dual_value).ravel()


def write_solution(path, sizes, variables, y):
    with open(path, "w") as out:
        out.write(" ".join(repr(float(v)) for v in y) + "\n")
        for k, n in enumerate(sizes):
            value = np.asarray(variables[k].value)
            if n < 0:
                for i, v in enumerate(value):
                    out.write(f"2 {k + 1} {i + 1} {i + 1} {float(v)!r}\n")
                continue
            value = (value + value.T) / 2
            for i in range(n):
                for j in range(i, n):
                    if value[i, j] != 0:
                        out.write(f"2 {k + 1} {i + 1} {j + 1} {float(value[i, j])!r}\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("problem")
    parser.add_argument("solution")
    parser.add_argument("--solver", default="CLARABEL")
    args = parser.parse_args()
    try:
        sizes, variables, y = solve(args.problem, args.solver)
    except ImportError:
        print("cvxpy is not installed", file=sys.stderr)
        return 3
    write_solution(args.solution, sizes, variables, y)
    return 0


if __name__ == "__main__":
    sys.exit(main())
