"""Independent reference implementations used to check the library.

Nothing here calls the library's evaluators, kernels or closure engine; only
the raw connective tables and the formula AST are shared.
"""

from __future__ import annotations

import itertools

import numpy as np

from twistlab.formula import Binary, Const, Unary, Var


def plain_tables(a) -> dict:
    """Connective tables as nested lists / ints."""
    return {op: (int(t) if np.ndim(t) == 0 else np.asarray(t).tolist()) for op, t in a.tables.items()}


def naive_eval(tables: dict, term, env: dict) -> int:
    if isinstance(term, Var):
        return env[term.name]
    if isinstance(term, Const):
        return tables[term.op]
    if isinstance(term, Unary):
        return tables[term.op][naive_eval(tables, term.child, env)]
    return tables[term.op][naive_eval(tables, term.left, env)][naive_eval(tables, term.right, env)]


def naive_table(tables: dict, n: int, term, order: list[str]) -> dict:
    return {vals: naive_eval(tables, term, dict(zip(order, vals)))
            for vals in itertools.product(range(n), repeat=len(order))}


def naive_equation(tables: dict, n: int, lhs, rhs, order: list[str]):
    """First assignment (lexicographic, first variable most significant)
    where the sides differ, or None."""
    for vals in itertools.product(range(n), repeat=len(order)):
        env = dict(zip(order, vals))
        if naive_eval(tables, lhs, env) != naive_eval(tables, rhs, env):
            return env
    return None


def naive_valid(tables: dict, n: int, designated, formula, order: list[str]):
    for vals in itertools.product(range(n), repeat=len(order)):
        env = dict(zip(order, vals))
        if naive_eval(tables, formula, env) not in designated:
            return env
    return None


def naive_entails(tables: dict, n: int, designated, premises, conclusion, order: list[str]):
    for vals in itertools.product(range(n), repeat=len(order)):
        env = dict(zip(order, vals))
        if all(naive_eval(tables, p, env) in designated for p in premises) and \
                naive_eval(tables, conclusion, env) not in designated:
            return env
    return None


def naive_is_subuniverse(tables: dict, n: int, subset) -> bool:
    s = set(subset)
    for t in tables.values():
        if isinstance(t, int):
            if t not in s:
                return False
        elif isinstance(t[0], list):
            if any(t[x][y] not in s for x in s for y in s):
                return False
        elif any(t[x] not in s for x in s):
            return False
    return True


def naive_homomorphism(src: dict, dst: dict, n: int, h) -> bool:
    for op, t in src.items():
        u = dst[op]
        if isinstance(t, int):
            if h[t] != u:
                return False
        elif isinstance(t[0], list):
            if any(h[t[x][y]] != u[h[x]][h[y]] for x in range(n) for y in range(n)):
                return False
        elif any(h[t[x]] != u[h[x]] for x in range(n)):
            return False
    return True


def brute_isomorphic(src: dict, dst: dict, n: int, m: int) -> bool:
    if n != m:
        return False
    return any(naive_homomorphism(src, dst, n, perm) for perm in itertools.permutations(range(n)))


# ---------------------------------------------------------------- clone oracle


def encode(rows: np.ndarray, n: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    weights = n ** np.arange(rows.shape[1] - 1, -1, -1, dtype=np.int64)
    return rows @ weights


def decode(codes: np.ndarray, n: int, ncells: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((len(codes), ncells), dtype=np.uint8)
    for c in range(ncells - 1, -1, -1):
        out[:, c] = codes % n
        codes = codes // n
    return out


def leaf_rows(n: int, constants) -> np.ndarray:
    i = np.repeat(np.arange(n), n)
    j = np.tile(np.arange(n), n)
    rows = [i, j] + [np.full(n * n, c) for c in constants]
    return np.array(rows, dtype=np.uint8)


def depth_sets(n: int, unary: list, binary: list, constants: list, max_depth: int,
               chunk_cells: int = 1 << 25) -> list[np.ndarray]:
    """Sorted codes of every binary term operation of depth ≤ d, d = 0..max_depth.

    D(d+1) = D(d) ∪ {u(g)} ∪ {f(g, h)} over all g, h in D(d), computed by
    brute force over every pair.
    """
    cur = np.unique(encode(leaf_rows(n, constants), n))
    out = [cur]
    ncells = n * n
    for _ in range(max_depth):
        rows = decode(cur, n, ncells)
        found = [cur]
        for u in unary:
            found.append(encode(np.asarray(u)[rows], n))
        N = len(rows)
        step = max(1, chunk_cells // max(1, N * ncells))
        for f in binary:
            f = np.asarray(f, dtype=np.uint8)
            for s in range(0, N, step):
                g = rows[s:s + step]
                prod = f[g[:, None, :], rows[None, :, :]]
                found.append(np.unique(encode(prod.reshape(-1, ncells), n)))
        cur = np.unique(np.concatenate(found))
        out.append(cur)
    return out


def literal_terms(basis: dict, leaves: list, depth: int):
    """Every term (as an AST, no deduplication) of depth ≤ ``depth``."""
    terms = list(leaves)
    for _ in range(depth):
        nxt = list(leaves)
        for op, ar in basis.items():
            if ar == 1:
                nxt += [Unary(op, t) for t in terms]
            elif ar == 2:
                nxt += [Binary(op, s, t) for s in terms for t in terms]
        terms = nxt
    return terms
