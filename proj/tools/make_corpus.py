#!/usr/bin/env python3
# regenerate corpus/*.csv; needs the built CLI as argv[1]
import json, math, subprocess, sys
from fractions import Fraction as Fr

cli = sys.argv[1] if len(sys.argv) > 1 else "build/relclass"


def squarefree(n):
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return n > 0


def fundamental(D):
    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        return (D // 4) % 4 in (2, 3) and squarefree(D // 4)
    return False


def reduced_count(D):
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


def omega(n):
    n, k, p = abs(n), 0, 2
    while p * p <= n:
        if n % p == 0:
            k += 1
            while n % p == 0:
                n //= p
        p += 1
    return k + (n > 1)


def q_corpus():
    must = [-3, -4, -20, -23, -84, -420, -4*5*7*11*13 + 0]
    ds = [D for D in range(-3, -2001, -1) if fundamental(D)]
    pick = sorted(set([D for D in must if fundamental(D)] + ds[::len(ds) // 43]), reverse=True)[:50]
    rows = ["# n,m,delta_a,delta_b,hK,t  (imaginary quadratic fields, delta = disc)"]
    for D in pick:
        rows.append(f"1,1,{D},0,{reduced_count(D)},{omega(D)}")
    return rows


def is_square_rat(q):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    return Fr(rn, rd) if rn * rn == n and rd * rd == d else None


def surd(m, a, b):
    # a + b*omega as A + B*sqrt(m)
    if m % 4 == 1:
        return Fr(a) + Fr(b, 2), Fr(b, 2)
    return Fr(a), Fr(b)


def is_square_field(m, A, B):
    n = A * A - m * B * B
    r = is_square_rat(n)
    if r is None:
        return False
    for s in (r, -r):
        u2 = (A + s) / 2
        u = is_square_rat(u2)
        if u is None or u == 0:
            continue
        v = B / (2 * u)
        if u * u + m * v * v == A and 2 * u * v == B:
            return True
    return B == 0 and is_square_rat(Fr(A, m)) is not None


def real_corpus(m, want=22):
    cands = []
    for a in range(-60, 1):
        for b in range(-30, 31):
            A, B = surd(m, a, b)
            s = math.sqrt(m)
            if not (A + B * s < 0 and A - B * s < 0):
                continue
            cands.append((a, b))
    out, seen = [], []
    info = []
    for a, b in cands:
        r = subprocess.run([cli, "classify", "--n", "2", "--m", str(m), "--delta", f"{a},{b}"],
                           capture_output=True, text=True)
        if r.returncode:
            continue
        j = json.loads(r.stdout)
        if not j["unit_equal"]:
            continue
        nd = int(j["rel_disc_norm"])
        if nd > 5000:
            continue
        info.append((nd, a, b))
    info.sort()
    for nd, a, b in info:
        A, B = surd(m, a, b)
        dup = False
        for (A2, B2) in seen:
            # delta * delta2 a square
            if is_square_field(m, A * A2 + m * B * B2, A * B2 + B * A2):
                dup = True
                break
        if dup:
            continue
        seen.append((A, B))
        out.append(f"2,{m},{a},{b}")
        if len(out) == want:
            break
    return out


if __name__ == "__main__":
    with open("corpus/quadratic.csv", "w") as f:
        f.write("\n".join(q_corpus()) + "\n")
    rows = ["# n,m,delta_a,delta_b  (delta = a + b*omega)"]
    for m in (2, 5, 3, 13):
        rows += real_corpus(m)
    with open("corpus/real_quadratic.csv", "w") as f:
        f.write("\n".join(rows) + "\n")
