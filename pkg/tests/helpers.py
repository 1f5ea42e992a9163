"""Independent oracles for the test suite.

Everything here is written straight from the definitions, with no care
for speed and no shared code with the package, so that agreement between
the two is meaningful.
"""

import itertools
import random


def iso_by_signs(a, b):
    """Order-isomorphism by comparing every pair of positions."""
    if len(a) != len(b):
        return False
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if (a[i] < a[j]) != (b[i] < b[j]):
                return False
    return True


def rank_by_sorting(seq):
    """The pattern of ``seq``: each symbol replaced by its 1-based rank."""
    order = sorted(seq)
    return tuple(order.index(v) + 1 for v in seq)


def brute_find_power(perm, k):
    """First (start, block_length) of a k-power, scanning starts then lengths."""
    n = len(perm)
    for start in range(1, n + 1):
        for d in range(2, (n - start + 1) // k + 1):
            blocks = [
                perm[start - 1 + j * d : start - 1 + (j + 1) * d] for j in range(k)
            ]
            if all(iso_by_signs(blocks[j], blocks[j + 1]) for j in range(k - 1)):
                return start, d
    return None


def brute_power_free(perm, k):
    return brute_find_power(perm, k) is None


def brute_extensions(perm, side):
    """All patterns obtained by adding one symbol on the given side."""
    n = len(perm)
    out = []
    for rank in range(1, n + 2):
        shifted = [v + 1 if v >= rank else v for v in perm]
        if side == "right":
            out.append(tuple(shifted) + (rank,))
        else:
            out.append((rank,) + tuple(shifted))
    return out


def brute_is_crucial(perm, k, side):
    """Cruciality straight from the definition."""
    if not brute_power_free(perm, k):
        return False
    sides = ("right", "left") if side == "bi" else (side,)
    for s in sides:
        for ext in brute_extensions(perm, s):
            if brute_power_free(ext, k):
                return False
    return True


def all_patterns(n):
    for p in itertools.permutations(range(1, n + 1)):
        yield p


def random_patterns(n, count, seed):
    rng = random.Random(seed)
    base = list(range(1, n + 1))
    for _ in range(count):
        rng.shuffle(base)
        yield tuple(base)


def random_sequences(n, count, seed, low=-50, high=50):
    """Distinct-valued integer sequences that are not 1..n patterns."""
    rng = random.Random(seed)
    for _ in range(count):
        yield tuple(rng.sample(range(low, high + 1), n))
