#!/usr/bin/env python3
# Regenerates the corpus suites from reference implementations of the
# intended (bug-free) programs.  Run from this directory.
import json
import os
import random


def mid(x, y, z):
    return sorted([x, y, z])[1]


def median(x, y, z):
    return f"{mid(x, y, z)}\n{min(x, y, z)}\n"


def digits(x):
    return f"{sum(int(c) for c in str(abs(x)))}\n"


def grade(s):
    if s < 0 or s > 100:
        return "invalid\n"
    for bound, letter in ((90, "A"), (80, "B"), (70, "C"), (60, "D")):
        if s >= bound:
            return letter + "\n"
    return "F\n"


def maxcount(a, b, c, d, t):
    xs = [a, b, c, d]
    return f"{max(xs)}\n{sum(1 for v in xs if v > t)}\n"


def triangle(a, b, c):
    if min(a, b, c) <= 0:
        return "invalid\n"
    s = sorted([a, b, c])
    if s[0] + s[1] <= s[2]:
        return "invalid\n"
    if a == b == c:
        return "equilateral\n"
    if a == b or b == c or a == c:
        return "isosceles\n"
    return "scalene\n"


def reverse(x):
    return f"{int(str(x)[::-1]) if x > 0 else 0}\n"


def power(b, e):
    return "0\n" if e < 0 else f"{b ** e}\n"


def random_triples(seed, n):
    rng = random.Random(seed)
    return [tuple(rng.randint(0, 9) for _ in range(3)) for _ in range(n)]


SUITES = {
    # no passing input reaches the buggy branch (y < z, x >= y, x == z)
    "median_p2": (median, [
        (1, 2, 3), (2, 1, 3), (5, 1, 3), (3, 2, 1), (2, 3, 1), (1, 3, 2),
        (3, 1, 2), (7, 0, 9), (8, 4, 6), (4, 4, 4), (9, 2, 5), (1, 5, 9),
        (6, 6, 1), (0, -3, 2), (-1, -5, 4), (2, 2, 5),
    ]),
    "median_p3": (median, [
        (3, 2, 1), (5, 4, 2), (1, 3, 2), (0, 5, 1), (9, 1, 0), (2, 3, 1),
        (3, 3, 1), (2, 2, 2), (7, 7, 0), (1, 2, 3), (2, 1, 3), (4, 1, 9),
        (6, 6, 6), (-2, -2, -9), (8, 6, 5), (0, 9, 4),
    ]),
    "median_p5": (median, [
        (1, 2, 3), (3, 2, 1), (2, 3, 1), (5, 5, 7), (4, 9, 6), (6, 4, 9),
        (2, 8, 0), (7, 7, 7), (1, 9, 5), (3, 1, 2), (0, 0, 1), (6, 2, 4),
        (5, 6, 8), (9, 3, 1),
    ] + random_triples(7, 16)),
    # single-digit and multi-digit failures together
    "digits_loop": (digits, [
        (0,), (7,), (3,), (-5,), (12,), (345,), (-81,), (9000,), (10,),
        (4,), (271,), (-6,),
    ]),
    "digits_sign": (digits, [
        (0,), (5,), (12,), (-12,), (345,), (-7,), (90,), (0,), (-404,), (8,),
    ]),
    "grade_p2": (grade, [
        (95,), (80,), (85,), (79,), (100,), (0,), (65,), (72,), (90,),
        (-4,), (101,), (81,), (59,),
    ]),
    # every input reaching the C/D split fails
    "grade_p3": (grade, [
        (95,), (85,), (80,), (90,), (100,), (-1,), (150,), (75,), (62,),
        (40,), (70,), (69,), (12,),
    ]),
    "maxcount_guard": (maxcount, [
        (1, 2, 3, 4, 0), (4, 3, 2, 1, 0), (1, 5, 2, 9, 3), (2, 7, 3, 1, 5),
        (9, 1, 1, 1, 1), (0, 0, 0, 5, 0), (3, 3, 3, 3, 2), (5, 1, 6, 2, 4),
        (1, 1, 1, 2, 9), (8, 2, 4, 6, 5), (2, 4, 1, 3, 0), (0, 1, 2, 7, 1),
    ]),
    # ties with the threshold at different positions
    "maxcount_tie": (maxcount, [
        (3, 5, 1, 1, 3), (2, 1, 4, 1, 2), (5, 6, 3, 2, 5), (1, 2, 3, 4, 0),
        (0, 12, 1, 9, 9), (1, 2, 2, 9, 2), (4, 4, 4, 4, 1), (9, 8, 7, 6, 10),
        (1, 5, 2, 3, 4), (6, 6, 1, 2, 3), (2, 3, 9, 9, 1), (8, 1, 4, 1, 2),
    ]),
    "triangle_degenerate": (triangle, [
        (3, 4, 5), (1, 2, 3), (2, 2, 4), (1, 1, 1), (5, 5, 8), (0, 3, 4),
        (1, 3, 2), (7, 10, 3), (2, 3, 4), (3, 3, 3), (4, 4, 5), (1, 1, 3),
        (-1, 2, 2), (6, 3, 3),
    ]),
    # equilateral and invalid inputs never reach the buggy predicate
    "triangle_kind": (triangle, [
        (3, 4, 5), (2, 2, 3), (4, 2, 3), (5, 5, 8), (1, 1, 1), (7, 7, 7),
        (0, 1, 1), (1, 2, 3), (2, 3, 2), (5, 6, 7), (-3, 4, 5), (9, 9, 9),
        (6, 5, 5), (10, 2, 2),
    ]),
    # failures need a second loop iteration
    "reverse_digits": (reverse, [
        (0,), (5,), (7,), (3,), (12,), (345,), (908,), (1234,), (21,), (-4,), (66,),
    ]),
    # every failing input has e >= 2
    "power_guard": (power, [
        (2, 3), (3, 2), (2, 10), (5, 4), (1, 7), (0, 3), (7, 0), (2, -1),
        (4, 2), (-2, 3), (1, 1), (3, 5), (10, 2), (0, 0),
    ]),
}


def main():
    os.makedirs("suites", exist_ok=True)
    for name, (fn, cases) in SUITES.items():
        suite = {"cases": [{"args": list(a), "expected": fn(*a)} for a in cases]}
        with open(os.path.join("suites", name + ".json"), "w") as f:
            json.dump(suite, f, indent=1)
            f.write("\n")
    extra = {"cases": [{"args": [s], "expected": grade(s)} for s in (95, 85, 75, 65, 55, 30, 0, 100)]}
    with open(os.path.join("extra", "grade_constant.json"), "w") as f:
        json.dump(extra, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
