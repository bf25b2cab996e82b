"""Validate the factored theta paths against the literal definitions."""
import itertools
import math
import random
from ref_check import theta, alpha

def theta2_fast(Z):
    N = len(Z); n = len(Z[0])
    acc = 0.0
    for r in range(n):
        for s in range(r + 1, n):
            inner = 0.0
            for u in range(N):
                for v in range(u + 1, N):
                    inner += abs((Z[u][r] - Z[v][r]) * (Z[u][s] - Z[v][s]))
            inner *= 2.0
            acc += 2.0 * inner * inner
    return alpha(N, n, 2) * math.sqrt(acc)

def theta3_fast(Z):
    N = len(Z); n = len(Z[0])
    # T[u][t] = sum_{w != u} |y_{u,w;t}|
    T = [[sum(abs(Z[u][t] - Z[w][t]) for w in range(N) if w != u)
          for t in range(n)] for u in range(N)]
    acc = 0.0
    for r in range(n):
        for s in range(r + 1, n):
            for t in range(n):
                if t == r or t == s:
                    continue
                inner = 0.0
                for u in range(N):
                    for v in range(N):
                        if v == u:
                            continue
                        g = abs((Z[u][r] - Z[v][r]) * (Z[u][s] - Z[v][s]))
                        inner += g * (T[u][t] - abs(Z[u][t] - Z[v][t]))
                acc += 2.0 * inner * inner  # (r,s) ordered pairs collapse
    return alpha(N, n, 3) * math.sqrt(acc)

def theta4_fast(Z):
    N = len(Z); n = len(Z[0])
    pairs = list(itertools.combinations(range(n), 2))
    # per unordered column pair: G matrix over ordered row pairs, marginals, total
    G = {}
    S = {}
    A = {}
    for (a, b) in pairs:
        g = [[0.0] * N for _ in range(N)]
        for u in range(N):
            for v in range(N):
                if u != v:
                    g[u][v] = abs((Z[u][a] - Z[v][a]) * (Z[u][b] - Z[v][b]))
        G[(a, b)] = g
        S[(a, b)] = [sum(g[u]) for u in range(N)]
        A[(a, b)] = sum(S[(a, b)])
    acc = 0.0
    for pp1 in pairs:
        for pp2 in pairs:
            if set(pp1) & set(pp2):
                continue
            g1, g2 = G[pp1], G[pp2]
            c2 = sum(g1[u][v] * g2[u][v] for u in range(N) for v in range(N) if u != v)
            s1s2 = sum(S[pp1][i] * S[pp2][i] for i in range(N))
            inner = A[pp1] * A[pp2] - 4.0 * s1s2 + 2.0 * c2
            acc += inner * inner
    # ordered 4-tuples (q,r,s,t): 4 per ordered pair of disjoint unordered pairs
    return alpha(N, n, 4) * math.sqrt(4.0 * acc)

rng = random.Random(777)
for trial in range(12):
    n = rng.randint(4, 6)
    N = rng.randint(max(5, n), 9)
    Z = [[rng.random() for _ in range(n)] for _ in range(N)]
    for d, fast in ((2, theta2_fast), (3, theta3_fast), (4, theta4_fast)):
        a = theta(Z, d)
        b = fast(Z)
        rel = abs(a - b) / max(1.0, abs(a))
        assert rel <= 1e-9, (d, N, n, a, b, rel)
print("theta fast factorizations == naive definitions: OK (12 trials, d in {2,3,4})")
