"""Pure Python Felsch enumeration kernel.

This is the fallback twin of the compiled kernel in ``_felsch_c.pyx``; both
implement the identical deduction-driven strategy and must produce identical
raw tables.  Columns come in generator/inverse pairs, so column ``c ^ 1`` is
always the inverse of column ``c``.

Raw protocol shared by both kernels:

    run(ncols, words, bucket_of, subgroup, max_rows)
        -> (status, table, parent, high_water)

where ``words`` are cyclic relator conjugates as column tuples, ``bucket_of[c]``
lists the indices of words starting with column ``c``, and ``subgroup`` holds
column words scanned and filled at coset 0 before the main loop.  ``status``
is "complete" or "exceeded"; on "exceeded" the partial table is dropped.
"""

from __future__ import annotations

KERNEL_NAME = "pure-python"


class _Exceeded(Exception):
    pass


def run(ncols, words, bucket_of, subgroup, max_rows):
    table = [[-1] * ncols]
    parent = [0]
    state = {"live": 1, "high": 1}
    deductions: list[tuple[int, int]] = []

    def rep(k):
        r = k
        while parent[r] != r:
            r = parent[r]
        while parent[k] != r:
            parent[k], k = r, parent[k]
        return r

    def define(alpha, c):
        if len(table) >= max_rows:
            raise _Exceeded
        beta = len(table)
        table.append([-1] * ncols)
        parent.append(beta)
        state["live"] += 1
        if state["live"] > state["high"]:
            state["high"] = state["live"]
        table[alpha][c] = beta
        table[beta][c ^ 1] = alpha
        deductions.append((alpha, c))
        return beta

    def merge(x, y, queue):
        x = rep(x)
        y = rep(y)
        if x != y:
            if x > y:
                x, y = y, x
            parent[y] = x
            state["live"] -= 1
            queue.append(y)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            row = table[gamma]
            for c in range(ncols):
                delta = row[c]
                if delta == -1:
                    continue
                # consistency pairs every incoming pointer with an entry of
                # this row, so nulling here removes all references to gamma
                table[delta][c ^ 1] = -1
                mu = rep(gamma)
                nu = rep(delta)
                if table[mu][c] != -1:
                    merge(nu, table[mu][c], queue)
                elif table[nu][c ^ 1] != -1:
                    merge(mu, table[nu][c ^ 1], queue)
                else:
                    table[mu][c] = nu
                    table[nu][c ^ 1] = mu
                    deductions.append((mu, c))

    def scan(alpha, w):
        f = alpha
        b = alpha
        i = 0
        j = len(w) - 1
        while i <= j:
            nxt = table[f][w[i]]
            if nxt == -1:
                break
            f = nxt
            i += 1
        if i > j:
            if f != b:
                coincidence(f, b)
            return
        while j >= i:
            prv = table[b][w[j] ^ 1]
            if prv == -1:
                break
            b = prv
            j -= 1
        if j < i:
            coincidence(f, b)
        elif j == i:
            table[f][w[i]] = b
            table[b][w[i] ^ 1] = f
            deductions.append((f, w[i]))
        # a gap longer than one letter yields no information

    def scan_and_fill(alpha, w):
        i = 0
        j = len(w) - 1
        f = alpha
        b = alpha
        while True:
            while i <= j and table[f][w[i]] != -1:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] != -1:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                deductions.append((f, w[i]))
                return
            define(f, w[i])

    def process_deductions():
        while deductions:
            alpha, c = deductions.pop()
            if rep(alpha) != alpha:
                continue
            for wi in bucket_of[c]:
                scan(alpha, words[wi])
                if parent[alpha] != alpha:
                    break
            if parent[alpha] != alpha:
                continue
            beta = table[alpha][c]
            if beta != -1 and rep(beta) == beta:
                cinv = c ^ 1
                for wi in bucket_of[cinv]:
                    scan(beta, words[wi])
                    if parent[beta] != beta:
                        break

    try:
        for w in subgroup:
            if w:
                scan_and_fill(0, w)
                process_deductions()
        alpha = 0
        while alpha < len(table):
            if parent[alpha] == alpha:
                c = 0
                while c < ncols:
                    if parent[alpha] != alpha:
                        break
                    if table[alpha][c] == -1:
                        define(alpha, c)
                        process_deductions()
                    c += 1
            alpha += 1
    except _Exceeded:
        return "exceeded", None, None, state["high"]

    return "complete", table, parent, state["high"]
