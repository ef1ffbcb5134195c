"""Slow, obviously-correct reference computations used only by the tests."""

import math


def naive_pow(base, exp, mod):
    acc = 1 % mod
    for _ in range(exp):
        acc = acc * base % mod
    return acc


def order(g, p):
    acc, k = g % p, 1
    while acc != 1:
        acc = acc * g % p
        k += 1
    return k


def log_table(g, p):
    """Map every residue in [1, p-1] to its smallest exponent base g."""
    table = {}
    acc = 1
    for e in range(p - 1):
        table.setdefault(acc, e)
        acc = acc * g % p
    return table


def safe_primes_upto(limit):
    def prime(n):
        return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))

    return [p for p in range(5, limit + 1) if prime(p) and prime((p - 1) // 2)]


def brute_public(c1, c2, n):
    out = set()
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if (x + z) % n == c1 and (y + z) % n == c2 and math.gcd((x + y) % n, n) == 1:
                    out.add((x, y, z))
    return out


def brute_insider(c1, c2, c3, xe, ye, n, derived):
    """Enumerate (z, w) pairs; a triple counts if some w satisfies every equation."""
    out = set()
    for z in range(n):
        x, y = (c1 - z) % n, (c2 - z) % n
        s = (x + y) % n
        if math.gcd(s, n) != 1:
            continue
        for w in range(n):
            if derived and (w * s) % n != 1:
                continue
            if (w * x * xe + w * y * ye) % n == c3:
                out.add((x, y, z))
                break
    return out


def brute_channel(c, n, derived):
    """Enumerate (z_a, z_b, w_a, w_b); returns Alice triples and full assignment count."""
    triples, assignments = set(), set()
    for za in range(n):
        xa, ya = (c[0] - za) % n, (c[1] - za) % n
        if math.gcd(xa + ya, n) != 1:
            continue
        for zb in range(n):
            xb, yb = (c[2] - zb) % n, (c[3] - zb) % n
            if math.gcd(xb + yb, n) != 1:
                continue
            cross = xa * xb + ya * yb
            was = [w for w in range(n) if (w * cross + zb) % n == c[4]]
            wbs = [w for w in range(n) if (w * cross + za) % n == c[5]]
            if derived:
                was = [w for w in was if w * (xa + ya) % n == 1]
                wbs = [w for w in wbs if w * (xb + yb) % n == 1]
            if was and wbs:
                triples.add((xa, ya, za))
                assignments.add((za, zb))
    return triples, len(assignments)


def write_frame(msg_type, fields):
    """Octet-by-octet frame writer, independent of qke.wire."""
    out = [0x51, 0x4B, 0x45, 0x31, msg_type]
    payload = []
    for v in fields:
        mag = []
        while v:
            mag.insert(0, v & 0xFF)
            v >>= 8
        n = len(mag)
        payload += [(n >> 24) & 0xFF, (n >> 16) & 0xFF, (n >> 8) & 0xFF, n & 0xFF] + mag
    n = len(payload)
    out += [(n >> 24) & 0xFF, (n >> 16) & 0xFF, (n >> 8) & 0xFF, n & 0xFF]
    return bytes(out + payload)
