"""Root systems, Weyl groups and the coset combinatorics W^X.

Roots are integer tuples in the basis of simple roots.  The inner product
on roots is the one induced by the Killing form, computed from the adjoint
action of the Cartan subalgebra rather than taken from a table.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import re

from . import exact
from .errors import BadSubset, TooLarge, UnknownType

MAX_RANK = 8
WEYL_ORDER_CAP = 200_000


def _chain(n: int, lengths: list[Fraction]) -> list[list[Fraction]]:
    b = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        b[i][i] = lengths[i]
    for i in range(n - 1):
        b[i][i + 1] = b[i + 1][i] = -max(lengths[i], lengths[i + 1]) / 2
    return b


def _standard_form(family: str, rank: int) -> list[list[Fraction]]:
    """Symmetric form on simple roots with long roots of squared length 2
    (Bourbaki numbering)."""
    two, one = Fraction(2), Fraction(1)
    if family == "A" and rank >= 1:
        return _chain(rank, [two] * rank)
    if family == "B" and rank >= 2:
        return _chain(rank, [two] * (rank - 1) + [one])
    if family == "C" and rank >= 2:
        return _chain(rank, [one] * (rank - 1) + [two])
    if family == "D" and rank >= 4:
        b = _chain(rank, [two] * rank)
        b[rank - 2][rank - 1] = b[rank - 1][rank - 2] = Fraction(0)
        b[rank - 3][rank - 1] = b[rank - 1][rank - 3] = -one
        return b
    if family == "E" and rank in (6, 7, 8):
        b = [[Fraction(0)] * rank for _ in range(rank)]
        for i in range(rank):
            b[i][i] = two
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, rank - 1)]
        for i, j in edges:
            b[i][j] = b[j][i] = -one
        return b
    if family == "F" and rank == 4:
        return _chain(4, [two, two, one, one])
    if family == "G" and rank == 2:
        third = Fraction(2, 3)
        return [[third, -one], [-one, two]]
    raise UnknownType(f"no simple root system of type {family}{rank}")


def parse_designator(text: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", str(text))
    if not m:
        raise UnknownType(f"cannot parse algebra designator {text!r}")
    return m.group(1).upper(), int(m.group(2))


class RootSystem:
    """A reduced irreducible root system of rank at most 8."""

    def __init__(self, family: str, rank: int):
        family = family.upper()
        if not 1 <= rank <= MAX_RANK:
            raise UnknownType(f"rank {rank} outside 1..{MAX_RANK}")
        std = _standard_form(family, rank)
        self.family = family
        self.rank = rank
        self.cartan_matrix = [[int(2 * std[i][j] / std[i][i]) for j in range(rank)]
                              for i in range(rank)]
        positive = self._close(std)
        positive.sort(key=lambda r: (sum(r), [-c for c in r]))
        self.n_positive = len(positive)
        self.roots: list[tuple[int, ...]] = positive + [tuple(-c for c in r) for r in positive]
        self.index = {r: k for k, r in enumerate(self.roots)}
        self.simple_roots = list(range(rank))
        self.gram = self._killing_gram()

    def _close(self, std) -> list[tuple[int, ...]]:
        r = self.rank
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            for i in range(r):
                # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
                pair = sum(beta[j] * self.cartan_matrix[i][j] for j in range(r))
                img = tuple(beta[j] - pair * (j == i) for j in range(r))
                if img not in seen and all(c >= 0 for c in img) and any(img):
                    seen.add(img)
                    queue.append(img)
        return list(seen)

    def _killing_gram(self) -> list[list[Fraction]]:
        # Coroot H_i acts on E_beta by beta(H_i); kappa(H_i, H_j) = sum_beta beta(H_i) beta(H_j).
        r = self.rank
        vals = [[sum(b[j] * self.cartan_matrix[i][j] for j in range(r)) for i in range(r)]
                for b in self.roots]
        kap = [[Fraction(sum(v[i] * v[j] for v in vals)) for j in range(r)] for i in range(r)]
        kinv = exact.inverse(kap)
        # alpha_i evaluated on the coroots is row i of the Cartan matrix transposed
        a = [[Fraction(self.cartan_matrix[j][i]) for j in range(r)] for i in range(r)]
        return exact.matmul(exact.matmul(a, kinv), [list(col) for col in zip(*a)])

    # -- basic queries -------------------------------------------------------

    @property
    def designator(self) -> str:
        return f"{self.family}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.designator})"

    @property
    def positive_set(self) -> range:
        return range(self.n_positive)

    def is_positive(self, k: int) -> bool:
        return k < self.n_positive

    def neg(self, k: int) -> int:
        return k + self.n_positive if k < self.n_positive else k - self.n_positive

    def height(self, k: int) -> int:
        return sum(self.roots[k])

    def add(self, a: int, b: int) -> int | None:
        """Id of root a + b, or None if the sum is not a root."""
        s = tuple(x + y for x, y in zip(self.roots[a], self.roots[b]))
        return self.index.get(s)

    def ip(self, a, b) -> Fraction:
        """Killing-normalized inner product of two coordinate vectors (or root ids)."""
        va = self.roots[a] if isinstance(a, int) else a
        vb = self.roots[b] if isinstance(b, int) else b
        r = self.rank
        return sum((va[i] * self.gram[i][j] * vb[j] for i in range(r) for j in range(r)),
                   Fraction(0))

    def simple_name(self, i: int) -> str:
        return f"a{i + 1}"

    def parse_simple(self, names) -> frozenset[int]:
        out = set()
        for nm in names:
            nm = str(nm).strip().lower()
            if not nm:
                continue
            m = re.fullmatch(r"a(\d+)", nm)
            if not m or not 1 <= int(m.group(1)) <= self.rank:
                raise BadSubset(f"{nm!r} is not a simple root name of {self.designator}")
            out.add(int(m.group(1)) - 1)
        return frozenset(out)

    def check_subset(self, X) -> frozenset[int]:
        X = frozenset(X)
        for i in X:
            if not isinstance(i, int) or not 0 <= i < self.rank:
                raise BadSubset(f"{i!r} is not a simple root id")
        return X

    @cached_property
    def fundamental_coweights(self) -> list[list[Fraction]]:
        """Coweights as coefficient vectors on the basis h_j = t_{alpha_j}."""
        ginv = exact.inverse(self.gram)
        return [[ginv[j][g] for j in range(self.rank)] for g in range(self.rank)]

    def coweight_value(self, k: int, X) -> int:
        """alpha(rho_check_X): the sum of the coordinates of root k over X."""
        return sum(self.roots[k][i] for i in X)

    def string_p(self, a: int, b: int) -> int:
        """Largest p with b - p a a root."""
        p = 0
        va, vb = self.roots[a], self.roots[b]
        while tuple(y - (p + 1) * x for x, y in zip(va, vb)) in self.index:
            p += 1
        return p


def build_root_system(family: str, rank: int) -> RootSystem:
    return RootSystem(family, rank)


def root_span_subset(rs: RootSystem, X) -> frozenset[int]:
    """[X]: the roots lying in the linear span of the simple roots X."""
    X = rs.check_subset(X)
    return frozenset(k for k, r in enumerate(rs.roots)
                     if all(c == 0 for i, c in enumerate(r) if i not in X))


def reflection_perms(rs: RootSystem) -> list[tuple[int, ...]]:
    """Simple reflections as permutations of root ids."""
    gens = []
    for i in range(rs.rank):
        perm = []
        for beta in rs.roots:
            pair = sum(beta[j] * rs.cartan_matrix[i][j] for j in range(rs.rank))
            perm.append(rs.index[tuple(beta[j] - pair * (j == i) for j in range(rs.rank))])
        gens.append(tuple(perm))
    return gens


def word_to_perm(rs: RootSystem, word) -> tuple[int, ...]:
    gens = reflection_perms(rs)
    w = tuple(range(len(rs.roots)))
    for i in word:
        w = tuple(w[x] for x in gens[i])
    return w


class WeylGroup:
    """Weyl group with elements stored as permutations of root ids.

    A permutation w maps root id k to the id of w(root k).  Products follow
    composition: (w1 w2)(k) = w1(w2(k)).
    """

    def __init__(self, rs: RootSystem, cap: int = WEYL_ORDER_CAP):
        self.rs = rs
        n = len(rs.roots)
        gens = reflection_perms(rs)
        self.generators = gens
        ident = tuple(range(n))
        self.identity = ident
        self.words = {ident: ()}
        order = [ident]
        queue = deque([ident])
        while queue:
            w = queue.popleft()
            for i, s in enumerate(gens):
                sw = tuple(s[x] for x in w)
                if sw not in self.words:
                    self.words[sw] = (i,) + self.words[w]
                    order.append(sw)
                    queue.append(sw)
                    if len(order) > cap:
                        raise TooLarge(f"|W({rs.designator})| exceeds {cap}")
        self.elements = order

    def __len__(self) -> int:
        return len(self.elements)

    def length(self, w) -> int:
        return len(self.words[w])

    def word(self, w) -> tuple[int, ...]:
        return self.words[w]

    def mul(self, a, b):
        return tuple(a[x] for x in b)

    def inv(self, w):
        out = [0] * len(w)
        for k, v in enumerate(w):
            out[v] = k
        return tuple(out)

    def from_word(self, word) -> tuple[int, ...]:
        w = self.identity
        for i in word:
            w = self.mul(w, self.generators[i])
        return w

    def inversion_set(self, w) -> frozenset[int]:
        """Phi_w = Sigma_+ cap (-w Sigma_+)."""
        wi = self.inv(w)
        rs = self.rs
        return frozenset(k for k in rs.positive_set if not rs.is_positive(wi[k]))

    @cached_property
    def longest(self):
        return max(self.elements, key=self.length)

    def word_name(self, w) -> str:
        wd = self.words[w]
        return "e" if not wd else "".join(f"s{i + 1}" for i in wd)


@dataclass(frozen=True)
class CosetDecomposition:
    X: frozenset
    W_X: list
    W__X: list       # minimal representatives W^X
    factor: dict     # w -> (w1, w2)
    longest_rep: tuple  # w^X


def subgroup(W: WeylGroup, X) -> list:
    X = sorted(W.rs.check_subset(X))
    seen = {W.identity}
    out = [W.identity]
    queue = deque(out)
    while queue:
        w = queue.popleft()
        for i in X:
            sw = W.mul(W.generators[i], w)
            if sw not in seen:
                seen.add(sw)
                out.append(sw)
                queue.append(sw)
    return out


def in_min_coset_reps(W: WeylGroup, w, span) -> bool:
    return not (W.inversion_set(W.inv(w)) & span)


def coset_decomposition(W: WeylGroup, X) -> CosetDecomposition:
    X = W.rs.check_subset(X)
    span = root_span_subset(W.rs, X)
    wx = subgroup(W, X)
    reps = [w for w in W.elements if in_min_coset_reps(W, w, span)]
    rep_set = set(reps)
    factor = {}
    for w in W.elements:
        for w2 in wx:
            w1 = W.mul(w, W.inv(w2))
            if w1 in rep_set:
                factor[w] = (w1, w2)
                break
    longest = max(reps, key=W.length)
    return CosetDecomposition(X, wx, reps, factor, longest)
