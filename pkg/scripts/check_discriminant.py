"""Brute-force the singular members of y^2 + xy = x^3 + u x^2 - v x over F_p.

Compares the set of singular (u, v) with the zero set of
v^2((4u+1)^2 + 64v) and of the sign-flipped v^2((4u+1)^2 - 64v).
"""
import sys


def singular(p, u, v):
    for x in range(p):
        for y in range(p):
            f = (y * y + x * y - x ** 3 - u * x * x + v * x) % p
            fx = (y - 3 * x * x - 2 * u * x + v) % p
            fy = (2 * y + x) % p
            if f == 0 and fx == 0 and fy == 0:
                return True
    return False


def main(p=13):
    brute = {(u, v) for u in range(p) for v in range(p) if singular(p, u, v)}
    plus = {(u, v) for u in range(p) for v in range(p)
            if v * v * ((4 * u + 1) ** 2 + 64 * v) % p == 0}
    minus = {(u, v) for u in range(p) for v in range(p)
             if v * v * ((4 * u + 1) ** 2 - 64 * v) % p == 0}
    print(f"p = {p}: {len(brute)} singular pairs")
    print("  matches  +64v form:", brute == plus)
    print("  matches  -64v form:", brute == minus)
    print("  (6, 1) singular:", (6, 1) in brute, " (1, 5):", (1, 5) in brute,
          " (1, 12):", (1, 12) in brute)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 13)
