"""
The hyperoctahedral group W(B_n) as signed permutations of 1..n.

Generator convention: ``s_i`` (1 <= i < n) swaps coordinates i and i+1, and
``s_n`` negates coordinate n.  With this choice the parabolic subgroup
generated by ``s_{t+1}, ..., s_n`` is the group of signed permutations of the
coordinates t+1..n, which is the Weyl group of the Levi of a flag stabilizer.

>>> w = SignedPerm.from_word(2, [1, 2, 1])
>>> w
SignedPerm([-1, 2])
>>> length(w)
3
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "SignedPerm", "identity", "generator", "generators", "mul", "inverse",
    "length", "bfs_lengths", "reduced_word", "longest_element", "all_elements",
    "element_order", "coxeter_matrix", "generated_group", "conjugacy_class_reps",
    "parse_element", "parse_word",
]


@dataclass(frozen=True, order=True)
class SignedPerm:
    """Element of W(B_n); ``images[i-1]`` is the signed image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(abs(x) for x in self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Image of the signed letter i (i in ±1..±n)."""
        x = self.images[abs(i) - 1]
        return x if i > 0 else -x

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        return mul(self, other)

    def inverse(self) -> "SignedPerm":
        return inverse(self)

    @classmethod
    def from_word(cls, n: int, word: Iterable[int]) -> "SignedPerm":
        w = identity(n)
        for i in word:
            w = mul(w, generator(n, i))
        return w

    def __repr__(self):
        return f"SignedPerm({list(self.images)})"

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.images) + "]"


def identity(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(1, n + 1)))


@lru_cache(maxsize=None)
def generator(n: int, i: int) -> SignedPerm:
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} out of range for rank {n}")
    images = list(range(1, n + 1))
    if i < n:
        images[i - 1], images[i] = images[i], images[i - 1]
    else:
        images[n - 1] = -n
    return SignedPerm(tuple(images))


def generators(n: int) -> list[SignedPerm]:
    return [generator(n, i) for i in range(1, n + 1)]


def mul(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """Composition: ``a`` applied after ``b``."""
    if a.n != b.n:
        raise ValueError(f"rank mismatch: {a.n} != {b.n}")
    return SignedPerm(tuple(a(x) for x in b.images))


def inverse(w: SignedPerm) -> SignedPerm:
    images = [0] * w.n
    for i, x in enumerate(w.images, start=1):
        images[abs(x) - 1] = i if x > 0 else -i
    return SignedPerm(tuple(images))


def length(w: SignedPerm) -> int:
    """
    Number of positive roots made negative by w.

    Positive roots are e_i - e_j, e_i + e_j (i < j) and e_i, ordered so that a
    root is positive iff its first nonzero coordinate is positive.  With the
    generator convention above this is the Coxeter length.
    """
    n = w.n
    img = w.images
    count = sum(1 for x in img if x < 0)
    for i in range(n):
        a = img[i]
        for j in range(i + 1, n):
            b = img[j]
            # w(e_i - e_j) and w(e_i + e_j); the sign of a root +-e_|a| +- e_|b|
            # is the sign carried by the smaller coordinate index
            lead_minus = a if abs(a) < abs(b) else -b
            lead_plus = a if abs(a) < abs(b) else b
            count += (lead_minus < 0) + (lead_plus < 0)
    return count


@lru_cache(maxsize=None)
def bfs_lengths(n: int) -> dict[SignedPerm, int]:
    """Word lengths of all elements by breadth-first search on the Cayley graph."""
    gens = generators(n)
    e = identity(n)
    dist = {e: 0}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for s in gens:
            x = mul(w, s)
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return dist


def reduced_word(w: SignedPerm) -> list[int]:
    """A reduced word, built by stripping right descents (lexicographically first)."""
    word = []
    n = w.n
    while True:
        lw = length(w)
        for i in range(1, n + 1):
            x = mul(w, generator(n, i))
            if length(x) < lw:
                word.append(i)
                w = x
                break
        else:
            break
    return word[::-1]


def all_elements(n: int) -> list[SignedPerm]:
    """All 2^n n! elements, sorted lexicographically on the image sequence."""
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            out.append(SignedPerm(tuple(s * x for s, x in zip(signs, perm))))
    out.sort()
    return out


def longest_element(n: int, J: Iterable[int]) -> SignedPerm:
    """The longest element of the parabolic subgroup W_J, J a set of generator indices."""
    J = set(J)
    w = identity(n)
    # grow w while some generator in J lengthens it; terminates at the unique maximum
    improved = True
    while improved:
        improved = False
        for i in sorted(J):
            x = mul(w, generator(n, i))
            if length(x) > length(w):
                w = x
                improved = True
    return w


def element_order(w: SignedPerm) -> int:
    e = identity(w.n)
    x, k = w, 1
    while x != e:
        x, k = mul(x, w), k + 1
    return k


def coxeter_matrix(gens: Sequence[SignedPerm]) -> list[list[int]]:
    """Orders of pairwise products of the given elements."""
    return [[element_order(mul(a, b)) for b in gens] for a in gens]


def generated_group(gens: Sequence[SignedPerm], n: int | None = None) -> set[SignedPerm]:
    if n is None:
        n = gens[0].n
    e = identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for s in gens:
            x = mul(w, s)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return seen


def conjugacy_class_reps(S: Iterable[SignedPerm]) -> list[SignedPerm]:
    """
    One representative per conjugacy class of the finite group S, the
    lexicographically smallest element of each class.
    """
    S = set(S)
    if not S:
        raise ValueError("empty set is not a group")
    for a in S:
        if inverse(a) not in S:
            raise ValueError("set is not closed under inverse")
        for b in S:
            if mul(a, b) not in S:
                raise ValueError("set is not closed under multiplication")
    seen: set[SignedPerm] = set()
    reps = []
    for x in sorted(S):
        if x in seen:
            continue
        cls = {mul(mul(g, x), inverse(g)) for g in S}
        seen |= cls
        reps.append(min(cls))
    return sorted(reps)


def parse_element(text: str) -> SignedPerm:
    """Parse the textual form ``[-1,2]``."""
    body = text.strip().strip("[]")
    if not body.strip():
        return SignedPerm(())
    return SignedPerm(tuple(int(x) for x in body.split(",")))


def parse_word(n: int, text: str) -> SignedPerm:
    """Parse a word such as ``"s1 s2 s1"``; the empty word is the identity."""
    idx = []
    for tok in text.replace(",", " ").split():
        tok = tok.strip()
        if not tok.startswith("s"):
            raise ValueError(f"bad generator token {tok!r}")
        idx.append(int(tok[1:]))
    return SignedPerm.from_word(n, idx)


def format_word(word: Sequence[int]) -> str:
    return " ".join(f"s{i}" for i in word)
