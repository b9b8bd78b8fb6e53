"""Small helpers for permutations given as tuples.

A permutation of degree n is a tuple ``p`` of length n with ``p[i]`` the image
of ``i + 1``, so values are 1-based while indexing is 0-based.
"""

from itertools import permutations as _permutations


def identity(n: int) -> tuple:
    return tuple(range(1, n + 1))


def all_perms(n: int) -> list:
    """All permutations of degree n in lexicographic order."""
    return [tuple(p) for p in _permutations(range(1, n + 1))]


def compose(p: tuple, q: tuple) -> tuple:
    """p after q: (p*q)(i) = p(q(i))."""
    return tuple(p[q[i] - 1] for i in range(len(p)))


def inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


def sign(p: tuple) -> int:
    n = len(p)
    seen = [False] * n
    sgn = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j] - 1
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


def lehmer_rank(word: tuple) -> int:
    """Rank of a permutation word in lexicographic order (0-based)."""
    n = len(word)
    rank = 0
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    for i in range(n):
        fact //= n - i
        smaller = 0
        wi = word[i]
        for j in range(i + 1, n):
            if word[j] < wi:
                smaller += 1
        rank += smaller * fact
    return rank


S3 = all_perms(3)
