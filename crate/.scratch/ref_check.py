"""Independent reference implementation of the paper's formulas, used only to
pre-validate my reading before the Rust build. Literal, definition-level code.
"""
import itertools
import math
import random

# ---------- exact permanent of thin N x n matrix (definition, Eq. 1) ----------
def per_thin(Z):
    N = len(Z); n = len(Z[0])
    total = 0.0
    for sigma in itertools.permutations(range(N), n):
        p = 1.0
        for r in range(n):
            p *= Z[sigma[r]][r]
        total += p
    return total

# ---------- rectangular Ryser (row-subset over wide transpose) ----------
def e_k(values, k):
    # elementary symmetric polynomial e_k via one-pass recurrence
    e = [0.0] * (k + 1)
    e[0] = 1.0
    for v in values:
        for i in range(min(k, len(values)), 0, -1):
            e[i] += v * e[i - 1]
    return e[k]

def per_ryser_rect(Z):
    # Z thin N x n; A = Z^T is n x N wide
    N = len(Z); n = len(Z[0])
    A = [[Z[i][j] for i in range(N)] for j in range(n)]  # n rows, N cols
    total = 0.0
    for bits in range(1 << n):
        S = [i for i in range(n) if bits >> i & 1]
        c = [sum(A[i][j] for i in S) for j in range(N)]
        sign = -1.0 if (n - len(S)) % 2 else 1.0
        total += sign * e_k(c, n)
    return total

# ---------- Roos quantities (paper section II, literal) ----------
def col_means(Z):
    N = len(Z); n = len(Z[0])
    return [sum(Z[j][r] for j in range(N)) / N for r in range(n)]

def ff(N, n):
    out = 1.0
    for i in range(n):
        out *= N - i
    return out

def p1(Z):
    zt = col_means(Z)
    out = 1.0
    for v in zt:
        out *= v
    return out

def p2(Z):
    N = len(Z); n = len(Z[0])
    zt = col_means(Z)
    total = 0.0
    for R in itertools.combinations(range(n), 2):
        prod_rest = 1.0
        for r in range(n):
            if r not in R:
                prod_rest *= zt[r]
        s = 0.0
        for j in range(N):
            t = 1.0
            for r in R:
                t *= Z[j][r] - zt[r]
            s += t
        total += prod_rest * s
    return total

def beta(Z):
    zt = col_means(Z)
    return sum(v * v for v in zt) / len(zt)

def kappa(Z, nu):
    N = len(Z); n = len(Z[0])
    assert n > nu and N > nu
    best = -1.0
    for J in itertools.combinations(range(N), nu):
        for R in itertools.combinations(range(n), nu):
            s = 0.0
            for j in range(N):
                if j in J:
                    continue
                for r in range(n):
                    if r in R:
                        continue
                    s += Z[j][r] ** 2
            best = max(best, s)
    return best / ((n - nu) * (N - nu))

def alpha(N, n, d):
    return (1.0 / ff(N, d)) * math.sqrt(1.0 / ff(n, d))

def theta(Z, d):
    N = len(Z); n = len(Z[0])
    y = lambda j, k, r: Z[j][r] - Z[k][r]
    acc = 0.0
    if d == 2:
        for (r, s) in itertools.permutations(range(n), 2):
            inner = 0.0
            for (u, v) in itertools.permutations(range(N), 2):
                inner += abs(y(u, v, r) * y(u, v, s))
            acc += inner * inner
    elif d == 3:
        for (r, s, t) in itertools.permutations(range(n), 3):
            inner = 0.0
            for (u, v, w) in itertools.permutations(range(N), 3):
                inner += abs(y(u, v, r) * y(u, v, s) * y(u, w, t))
            acc += inner * inner
    elif d == 4:
        for (q, r, s, t) in itertools.permutations(range(n), 4):
            inner = 0.0
            for (u, v, w, x) in itertools.permutations(range(N), 4):
                inner += abs(y(u, v, q) * y(u, v, r) * y(w, x, s) * y(w, x, t))
            acc += inner * inner
    return alpha(N, n, d) * math.sqrt(acc)

def f2(n, x1, x2):
    return sum((k - 1) * x1 ** (n - k) * x2 ** (k - 2) for k in range(2, n + 1))

def f3(n, x1, x2):
    return sum((n + k - 2) * (n - k + 1) * x1 ** (n - k) * x2 ** (k - 3)
               for k in range(3, n + 1))

def f4(n, x1, x2):
    return sum((k - 3) * (n + k - 2) * (n - k + 1) * x1 ** (n - k) * x2 ** (k - 4)
               for k in range(4, n + 1))

def bounds(Z):
    N = len(Z); n = len(Z[0])
    b = beta(Z)
    est1 = ff(N, n) * p1(Z)
    hw1 = ff(N, n) * theta(Z, 2) / (2 * N) * f2(n, math.sqrt(b), math.sqrt(kappa(Z, 2)))
    est2 = ff(N, n) * p1(Z) - ff(N - 2, n - 2) * p2(Z)
    hw2 = ff(N, n) * (theta(Z, 3) / (2 * N * N) * f3(n, math.sqrt(b), math.sqrt(kappa(Z, 3)))
                      + theta(Z, 4) / (8 * N * N) * f4(n, math.sqrt(b), math.sqrt(kappa(Z, 4))))
    return est1, hw1, est2, hw2

# ---------- checks ----------
def main():
    rng = random.Random(12345)

    # frozen small values from the build contract
    Z = [[1.0, 2.0], [3.0, 4.0]]
    assert per_thin(Z) == 10.0
    assert abs(per_ryser_rect(Z) - 10.0) < 1e-12
    zt = col_means(Z)
    assert zt == [2.0, 3.0]
    assert p1(Z) == 6.0
    assert p2(Z) == 2.0
    assert beta(Z) == 6.5
    t2 = theta(Z, 2)
    print("theta2([[1,2],[3,4]]) =", t2)
    assert abs(t2 - 4.0) < 1e-12
    est2 = ff(2, 2) * p1(Z) - ff(0, 0) * p2(Z)
    assert est2 == 10.0
    print("second-order estimate for [[1,2],[3,4]] =", est2)

    # f values
    assert f2(5, 1.0, 1.0) == 10.0
    assert f3(5, 1.0, 1.0) == 40.0
    assert f4(3, 1.0, 1.0) == 0.0

    # all-ones 6x5
    A = [[1.0] * 5 for _ in range(6)]
    assert per_thin(A) == 720.0
    assert p1(A) == 1.0 and abs(p2(A)) == 0.0 and beta(A) == 1.0
    for nu in (2, 3, 4):
        assert abs(kappa(A, nu) - 1.0) < 1e-12, (nu, kappa(A, nu))
    for d in (2, 3, 4):
        assert theta(A, d) == 0.0

    # ryser vs brute force on random thin shapes
    for trial in range(300):
        n = rng.randint(1, 4)
        N = rng.randint(n, 7)
        Z = [[rng.random() for _ in range(n)] for _ in range(N)]
        a = per_thin(Z)
        b = per_ryser_rect(Z)
        assert abs(a - b) <= 1e-10 * max(1.0, abs(a)), (N, n, a, b)
    print("ryser (row-subset rectangular form) == brute force: OK")

    # n=1 / n=2 low-order exactness
    for trial in range(200):
        N = rng.randint(1, 8)
        Z = [[rng.random()] for _ in range(N)]
        assert abs(ff(N, 1) * p1(Z) - per_thin(Z)) <= 1e-12 * max(1.0, per_thin(Z))
    for trial in range(200):
        N = rng.randint(2, 8)
        Z = [[rng.random(), rng.random()] for _ in range(N)]
        e = ff(N, 2) * p1(Z) - ff(N - 2, 0) * p2(Z)
        assert abs(e - per_thin(Z)) <= 1e-12 * max(1.0, per_thin(Z))
    print("low-order exactness: OK")

    # containment, n in {5,6}, N in {n..10} -- the central check
    worst1 = worst2 = 0.0
    trials = 400
    inside2_tighter = 0
    for trial in range(trials):
        n = rng.choice([5, 6])
        N = rng.randint(n, 10)
        Z = [[rng.random() for _ in range(n)] for _ in range(N)]
        p = per_thin(Z)
        e1, h1, e2, h2 = bounds(Z)
        assert e1 - h1 <= p <= e1 + h1, ("first order violated", trial, N, n, p, e1, h1)
        assert e2 - h2 <= p <= e2 + h2, ("second order violated", trial, N, n, p, e2, h2)
        worst1 = max(worst1, abs(p - e1) / h1 if h1 > 0 else 0.0)
        worst2 = max(worst2, abs(p - e2) / h2 if h2 > 0 else 0.0)
        if h2 <= h1:
            inside2_tighter += 1
    print(f"containment over {trials} trials: OK  (worst |err|/hw: "
          f"first={worst1:.4f}, second={worst2:.4f}; second tighter in "
          f"{inside2_tighter}/{trials})")

if __name__ == "__main__":
    main()
