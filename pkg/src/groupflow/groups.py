"""Finite groups given by dense multiplication tables.

Elements are indices 0..order-1.  The module provides validated table
construction, a spec mini-language for the standard families (cyclic,
dihedral, quaternion, symmetric, alternating, the 2-group family ``es:n``
used by the flow examples, direct and central products, and tables read
from files), plus the abelian-structure utilities the leak machinery
needs: centralizers, maximal abelian subgroups, invariant-factor bases
with discrete logarithms, and conjugacy class identifiers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    CentreMismatch,
    DuplicateName,
    InternalInvariantError,
    NoIdentity,
    NoInverse,
    NotAbelian,
    NotAssociative,
    NotMember,
    ParseError,
    TooLarge,
)

DEFAULT_MAX_ORDER = 5040

# Exhaustive associativity is O(n^3); above this bound Light's test on a
# generating set is used instead (still exact, just O(|gens| n^2)).
_FULL_ASSOC_LIMIT = 768


class FiniteGroup:
    """A finite group on element indices 0..order-1.

    The multiplication table is the single source of truth; the inverse
    table and identity are derived and checked at construction time.
    Instances are immutable after construction and safe to share.
    """

    def __init__(self, table: np.ndarray, names: Sequence[str], spec: Optional[str] = None,
                 _skip_assoc: bool = False):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ParseError("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise NoIdentity("empty table")
        if table.min() < 0 or table.max() >= n:
            raise ParseError("table entries out of range")
        if len(names) != n:
            raise ParseError("need exactly one name per element")
        if len(set(names)) != n:
            seen = set()
            for nm in names:
                if nm in seen:
                    raise DuplicateName(nm)
                seen.add(nm)
        self.order = n
        self.table = table
        self.table.setflags(write=False)
        self.names = tuple(str(nm) for nm in names)
        self.spec = spec
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        if not _skip_assoc:
            self._check_associativity()
        self._name_index = {nm: i for i, nm in enumerate(self.names)}
        self._orders: Optional[np.ndarray] = None
        self._conj_ids: dict[int, int] = {}
        self._abelian: Optional[bool] = None

    # -- construction checks ------------------------------------------------

    def _find_identity(self) -> int:
        n = self.order
        idx = np.arange(n)
        for e in range(n):
            if np.array_equal(self.table[e], idx) and np.array_equal(self.table[:, e], idx):
                return e
        raise NoIdentity("no two-sided identity element")

    def _find_inverses(self) -> np.ndarray:
        n, e = self.order, self.identity
        inv = np.full(n, -1, dtype=np.int32)
        for a in range(n):
            for b in np.nonzero(self.table[a] == e)[0]:
                if self.table[b, a] == e:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise NoInverse(self.names[a])
        inv.setflags(write=False)
        return inv

    def _check_associativity(self) -> None:
        T = self.table
        n = self.order
        if n <= _FULL_ASSOC_LIMIT:
            probes = range(n)
        else:
            probes = self._generating_set()
        for g in probes:
            lhs = T[T[:, g], :]          # (a g) b
            rhs = T[:, T[g, :]]          # a (g b)
            if not np.array_equal(lhs, rhs):
                bad = np.argwhere(lhs != rhs)[0]
                raise NotAssociative(self.names[bad[0]], self.names[g], self.names[bad[1]])

    def _generating_set(self) -> list[int]:
        gens: list[int] = []
        have = {self.identity}
        while len(have) < self.order:
            g = min(i for i in range(self.order) if i not in have)
            gens.append(g)
            frontier = list(have | {g})
            have.add(g)
            while frontier:
                x = frontier.pop()
                for y in (int(self.table[x, g]), int(self.table[g, x])):
                    if y not in have:
                        have.add(y)
                        frontier.append(y)
            # closure under products of everything found so far
            changed = True
            while changed:
                changed = False
                current = np.fromiter(have, dtype=np.int64)
                prods = set(self.table[np.ix_(current, current)].ravel().tolist())
                if not prods <= have:
                    have |= prods
                    changed = True
        return gens

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def prod(self, elements: Iterable[int]) -> int:
        result = self.identity
        for g in elements:
            result = self.mul(result, g)
        return result

    def commutes(self, a: int, b: int) -> bool:
        return self.table[a, b] == self.table[b, a]

    def elements(self) -> range:
        return range(self.order)

    def name(self, a: int) -> str:
        return self.names[a]

    def index_of(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise ParseError(f"unknown element name {name!r}") from None

    def parse_word(self, word: str) -> int:
        """Parse products written as names joined by '*'; '1' is the identity."""
        word = word.strip()
        if word == "1":
            return self.identity
        result = self.identity
        for token in word.split("*"):
            token = token.strip()
            if token == "1":
                continue
            result = self.mul(result, self.index_of(token))
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = np.array([self.element_order(a) for a in range(self.order)])
            self._orders.setflags(write=False)
        return self._orders

    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders()))

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = bool(np.array_equal(self.table, self.table.T))
        return self._abelian

    def center(self) -> tuple[int, ...]:
        mask = np.all(self.table == self.table.T, axis=1)
        return tuple(int(i) for i in np.nonzero(mask)[0])

    def conjugate(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def __repr__(self) -> str:
        label = self.spec or "group"
        return f"FiniteGroup({label}, order={self.order})"


def conjugacy_class_id(G: FiniteGroup, g: int) -> int:
    """Canonical identifier of g's conjugacy class: the minimal member index."""
    cached = G._conj_ids.get(g)
    if cached is not None:
        return cached
    t1 = G.table[:, g]                       # h*g over all h
    members = np.unique(G.table[t1, G.inverse[np.arange(G.order)]])
    cid = int(members.min())
    for m in members.tolist():
        G._conj_ids[int(m)] = cid
    return cid


# -- subgroups ----------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted member indices."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(int(m) for m in self.members)))

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._member_set

    @property
    def _member_set(self) -> frozenset[int]:
        key = "_member_set_cache"
        cached = self.__dict__.get(key)
        if cached is None:
            cached = frozenset(self.members)
            self.__dict__[key] = cached
        return cached

    @property
    def is_abelian(self) -> bool:
        m = np.array(self.members)
        T = self.parent.table[np.ix_(m, m)]
        return bool(np.array_equal(T, T.T))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, tuple(self._member_set & other._member_set))


def closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    have = {G.identity}
    frontier = [G.identity]
    gens = [int(g) for g in gens]
    for g in gens:
        if g not in have:
            have.add(g)
            frontier.append(g)
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (G.mul(x, g), G.mul(g, x)):
                if y not in have:
                    have.add(y)
                    frontier.append(y)
    # products of non-generators can still be missing when gens interact
    changed = True
    while changed:
        changed = False
        current = sorted(have)
        for a in current:
            row = G.table[a, current]
            new = set(row.tolist()) - have
            if new:
                have |= new
                changed = True
    return Subgroup(G, tuple(have))


def centralizer(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """All g commuting with every element of the given set."""
    mask = np.ones(G.order, dtype=bool)
    for s in elements:
        mask &= G.table[:, s] == G.table[s, :]
    return Subgroup(G, tuple(int(i) for i in np.nonzero(mask)[0]))


def _commuting_bitsets(G: FiniteGroup) -> list[int]:
    T = G.table
    masks = []
    for a in range(G.order):
        row = T[a, :] == T[:, a]
        row[a] = False
        bits = int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
        masks.append(bits)
    return masks


def _maximal_cliques(neigh: list[int], n: int) -> list[int]:
    """Bron-Kerbosch with pivoting on bitset adjacency; returns clique bitsets."""
    out: list[int] = []

    def bits(x: int):
        while x:
            b = x & -x
            yield b.bit_length() - 1
            x ^= b

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: (p & neigh[u]).bit_count())
        candidates = p & ~neigh[pivot]
        for v in bits(candidates):
            bit = 1 << v
            expand(r | bit, p & neigh[v], x & neigh[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << n) - 1, 0)
    return out


def maximal_abelian_subgroups(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """All subgroups H with H abelian and H = centralizer(G, H).

    These are exactly the maximal cliques of the commuting graph: a maximal
    set of pairwise-commuting elements is automatically closed under
    products and inverses, hence a subgroup.
    """
    if G.is_abelian:
        return (Subgroup(G, tuple(range(G.order))),)
    neigh = _commuting_bitsets(G)
    cliques = _maximal_cliques(neigh, G.order)
    subs = []
    for mask in cliques:
        members = []
        x = mask
        while x:
            b = x & -x
            members.append(b.bit_length() - 1)
            x ^= b
        subs.append(Subgroup(G, tuple(members)))
    subs.sort(key=lambda s: s.members)
    return tuple(subs)


# -- abelian invariant-factor bases --------------------------------------------


@dataclass(frozen=True)
class AbelianBasis:
    """Invariant-factor basis of an abelian subgroup.

    The map (a_1..a_k) -> prod gens_i^(a_i) is an isomorphism from
    Z/d_1 + ... + Z/d_k (orders satisfy d_1 | d_2 | ... | d_k); the full
    discrete-log table is precomputed and verified at construction.
    """

    subgroup: Subgroup
    gens: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def _dlog(self) -> dict[int, tuple[int, ...]]:
        cached = self.__dict__.get("_dlog_cache")
        if cached is None:
            cached = _build_dlog(self.subgroup.parent, self.gens, self.orders)
            self.__dict__["_dlog_cache"] = cached
        return cached


def _build_dlog(G: FiniteGroup, gens, orders) -> dict[int, tuple[int, ...]]:
    table: dict[int, tuple[int, ...]] = {}
    exps = [0] * len(gens)
    elem = G.identity
    total = math.prod(orders) if orders else 1
    table[elem] = tuple(exps)
    for _ in range(total - 1):
        # odometer over the exponent vectors, updating the product incrementally
        i = len(exps) - 1
        while i >= 0:
            exps[i] += 1
            if exps[i] < orders[i]:
                break
            exps[i] = 0
            i -= 1
        elem = G.identity
        for g, a in zip(gens, exps):
            elem = G.mul(elem, G.power(g, a))
        if elem in table:
            raise InternalInvariantError("basis enumeration is not injective")
        table[elem] = tuple(exps)
    return table


class _BaseView:
    """Group elements as opaque handles, used by the basis recursion."""

    def __init__(self, G: FiniteGroup, members: Sequence[int]):
        self.G = G
        self.elements = tuple(sorted(members))
        self.ident = G.identity

    def mul(self, a, b):
        return self.G.mul(a, b)

    def key(self, h):
        return h


class _QuotientView:
    """Cosets of a cyclic subgroup of the parent view, as frozensets."""

    def __init__(self, parent, gen: int, gen_order: int):
        self.parent = parent
        cyc = []
        x = parent.ident
        for _ in range(gen_order):
            cyc.append(x)
            x = parent.mul(x, gen)
        self._coset_of = {}
        cosets = []
        for e in parent.elements:
            if e in self._coset_of:
                continue
            coset = frozenset(parent.mul(e, c) for c in cyc)
            for m in coset:
                self._coset_of[m] = coset
            cosets.append(coset)
        self.elements = tuple(sorted(cosets, key=self.key))
        self.ident = self._coset_of[parent.ident]

    def key(self, h):
        return min(self.parent.key(m) for m in h)

    def rep(self, h):
        return min(h, key=self.parent.key)

    def mul(self, a, b):
        return self._coset_of[self.parent.mul(self.rep(a), self.rep(b))]


def _view_order(view, h) -> int:
    k, x = 1, h
    while x != view.ident:
        x = view.mul(x, h)
        k += 1
    return k


def _p_group_basis(view, p: int) -> list[tuple[object, int]]:
    if len(view.elements) == 1:
        return []
    orders = [(_view_order(view, h), h) for h in view.elements]
    e1 = max(o for o, _ in orders)
    g1 = min((h for o, h in orders if o == e1), key=view.key)
    quo = _QuotientView(view, g1, e1)
    result = [(g1, e1)]
    for coset, f in _p_group_basis(quo, p):
        x = quo.rep(coset)
        # x^f lands in <g1>; divide it out so the lift has exact order f
        xf = x
        for _ in range(f - 1):
            xf = view.mul(xf, x)
        t, y = 0, view.ident
        while y != xf:
            y = view.mul(y, g1)
            t += 1
        if t % f != 0:
            raise InternalInvariantError("p-group basis lift: exponent not divisible")
        adjust = (-(t // f)) % e1
        for _ in range(adjust):
            x = view.mul(x, g1)
        result.append((x, f))
    return result


def abelian_basis(H: Subgroup) -> AbelianBasis:
    """Invariant-factor basis d_1 | d_2 | ... | d_k of an abelian subgroup."""
    if not H.is_abelian:
        raise NotAbelian(f"subgroup of order {H.order} is not abelian")
    G = H.parent
    if H.order == 1:
        return AbelianBasis(H, (), ())
    primes = _prime_factors(H.order)
    per_prime: dict[int, list[tuple[int, int]]] = {}
    for p in primes:
        members_p = [m for m in H.members if _is_prime_power_order(G.element_order(m), p)]
        view = _BaseView(G, members_p)
        per_prime[p] = [(int(g), o) for g, o in _p_group_basis(view, p)]
    # combine across primes: pair the largest orders together (CRT)
    width = max(len(v) for v in per_prime.values())
    combined = []
    for i in range(width):
        elem = G.identity
        order = 1
        for p in sorted(per_prime):
            basis_p = per_prime[p]
            if i < len(basis_p):
                g, o = basis_p[i]
                elem = G.mul(elem, g)
                order *= o
        combined.append((elem, order))
    combined.reverse()  # ascending d_1 | d_2 | ... | d_k
    gens = tuple(g for g, _ in combined)
    orders = tuple(o for _, o in combined)
    if math.prod(orders) != H.order:
        raise InternalInvariantError("basis orders do not multiply to the subgroup order")
    basis = AbelianBasis(H, gens, orders)
    if set(basis._dlog) != set(H.members):
        raise InternalInvariantError("basis does not enumerate the subgroup")
    return basis


def discrete_log(B: AbelianBasis, g: int) -> tuple[int, ...]:
    """Exponent vector (a_i) with prod gens_i^(a_i) = g, 0 <= a_i < d_i."""
    try:
        return B._dlog[int(g)]
    except KeyError:
        raise NotMember(f"element {g} is not in the subgroup") from None


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime_power_order(order: int, p: int) -> bool:
    while order % p == 0:
        order //= p
    return order == 1


# -- the 2-group family es:n ---------------------------------------------------


@dataclass(frozen=True)
class EsElement:
    """Element of es:n as bits: eps for the central z, u and v as bitmasks."""

    eps: int
    u: int
    v: int

    def mul(self, other: "EsElement") -> "EsElement":
        eps = self.eps ^ other.eps ^ ((self.v & other.u).bit_count() & 1)
        return EsElement(eps, self.u ^ other.u, self.v ^ other.v)


def es_encode(n: int, e: EsElement) -> int:
    return e.eps | (e.u << 1) | (e.v << (n + 1))


def es_decode(n: int, idx: int) -> EsElement:
    mask = (1 << n) - 1
    return EsElement(idx & 1, (idx >> 1) & mask, (idx >> (n + 1)) & mask)


def _es_name(n: int, e: EsElement) -> str:
    parts = []
    if e.eps:
        parts.append("z")
    for i in range(n):
        if (e.u >> i) & 1:
            parts.append(f"x{i + 1}")
    for i in range(n):
        if (e.v >> i) & 1:
            parts.append(f"x{n + i + 1}")
    return "*".join(parts) if parts else "1"


def es_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """The group of order 2^(2n+1) on triples (eps, u, v) with the law
    (e1,u1,v1)(e2,u2,v2) = (e1+e2+<v1,u2>, u1+u2, v1+v2) over GF(2)."""
    if n < 1:
        raise ParseError("es:n needs n >= 1")
    return _standard_group_cached(f"es:{n}", max_order)


def _es_group_impl(n: int, max_order: int) -> FiniteGroup:
    order = 1 << (2 * n + 1)
    if order > max_order:
        raise TooLarge(order, max_order)
    idx = np.arange(order, dtype=np.int64)
    eps = idx & 1
    umask = (1 << n) - 1
    u = (idx >> 1) & umask
    v = (idx >> (n + 1)) & umask
    parity = np.array([bin(x).count("1") & 1 for x in range(1 << n)], dtype=np.int64)
    cross = parity[v[:, None] & u[None, :]]
    eps2 = eps[:, None] ^ eps[None, :] ^ cross
    u2 = u[:, None] ^ u[None, :]
    v2 = v[:, None] ^ v[None, :]
    table = eps2 | (u2 << 1) | (v2 << (n + 1))
    names = [_es_name(n, es_decode(n, i)) for i in range(order)]
    group = FiniteGroup(table, names, spec=f"es:{n}", _skip_assoc=order > _FULL_ASSOC_LIMIT)
    return group


# -- standard families ---------------------------------------------------------


def _cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    names = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    return FiniteGroup(table, names, spec=f"cyclic:{n}", _skip_assoc=True)


def _dihedral(n: int) -> FiniteGroup:
    """Dihedral group with n rotations (order 2n); r^n = s^2 = 1, srs = r^-1."""
    order = 2 * n
    table = np.zeros((order, order), dtype=np.int32)
    for i1, j1, i2, j2 in itertools.product(range(n), (0, 1), range(n), (0, 1)):
        i = (i1 + (i2 if j1 == 0 else -i2)) % n
        j = j1 ^ j2
        table[i1 + n * j1, i2 + n * j2] = i + n * j
    names = []
    for j in (0, 1):
        for i in range(n):
            word = []
            if i == 1:
                word.append("r")
            elif i > 1:
                word.append(f"r{i}")
            if j:
                word.append("s")
            names.append("*".join(word) if word else "1")
    return FiniteGroup(table, names, spec=f"dihedral:{n}")


def _quaternion() -> FiniteGroup:
    # elements (sign, axis) with axis in 1,i,j,k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    mul_axis = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
        ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
    }

    def split(nm):
        return (-1, nm[1:]) if nm.startswith("-") else (1, nm)

    def join(sign, axis):
        nm = axis if sign == 1 else "-" + axis
        return names.index(nm)

    table = np.zeros((8, 8), dtype=np.int32)
    for a, b in itertools.product(range(8), repeat=2):
        s1, x1 = split(names[a])
        s2, x2 = split(names[b])
        s3, x3 = mul_axis[(x1, x2)]
        table[a, b] = join(s1 * s2 * s3, x3)
    return FiniteGroup(table, names, spec="quaternion")


def _perm_cycle_name(perm: tuple[int, ...]) -> str:
    seen: set[int] = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) if parts else "1"


def _perm_group(n: int, even_only: bool, spec: str, max_order: int) -> FiniteGroup:
    order = math.factorial(n)
    if even_only:
        order //= 2 if n >= 2 else 1
    if order > max_order:
        raise TooLarge(order, max_order)
    perms = []
    for p in itertools.permutations(range(n)):
        if even_only and _perm_parity(p) != 0:
            continue
        perms.append(p)
    P = np.array(perms, dtype=np.int64)
    powers = np.array([n ** (n - 1 - k) for k in range(n)], dtype=np.int64)
    keys = P @ powers
    sorted_idx = np.argsort(keys)
    sorted_keys = keys[sorted_idx]
    m = len(perms)
    table = np.zeros((m, m), dtype=np.int32)
    for a in range(m):
        composed = P[a][P]            # (p_a o p_b)(x) = p_a[p_b[x]]
        ck = composed @ powers
        table[a] = sorted_idx[np.searchsorted(sorted_keys, ck)]
    names = [_perm_cycle_name(p) for p in perms]
    return FiniteGroup(table, names, spec=spec, _skip_assoc=m > _FULL_ASSOC_LIMIT)


def _perm_parity(perm: Sequence[int]) -> int:
    seen = set()
    parity = 0
    for start in range(len(perm)):
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _direct_product(A: FiniteGroup, B: FiniteGroup, spec: Optional[str],
                    max_order: int) -> FiniteGroup:
    order = A.order * B.order
    if order > max_order:
        raise TooLarge(order, max_order)
    nb = B.order
    ia, ib = divmod(np.arange(order), nb)
    table = A.table[np.ix_(ia, ia)].astype(np.int64) * nb + B.table[np.ix_(ib, ib)]
    names = [f"({A.names[a]},{B.names[b]})" for a in range(A.order) for b in range(B.order)]
    return FiniteGroup(table, names, spec=spec, _skip_assoc=order > _FULL_ASSOC_LIMIT)


def designated_central_involution(G: FiniteGroup) -> Optional[int]:
    """The unique central element of order 2, if there is exactly one."""
    orders = G.element_orders()
    candidates = [z for z in G.center() if orders[z] == 2]
    return candidates[0] if len(candidates) == 1 else None


def _central_product(A: FiniteGroup, B: FiniteGroup, spec: str, max_order: int) -> FiniteGroup:
    za = designated_central_involution(A)
    zb = designated_central_involution(B)
    if za is None or zb is None:
        raise CentreMismatch("central product needs a unique central involution in each factor")
    order = A.order * B.order // 2
    if order > max_order:
        raise TooLarge(order, max_order)
    prod = _direct_product(A, B, spec=None, max_order=max_order * 2)
    zz = za * B.order + zb
    rep = {}
    reps = []
    for x in range(prod.order):
        if x in rep:
            continue
        y = prod.mul(x, zz)
        r = min(x, y)
        rep[x] = r
        rep[y] = r
        reps.append(r)
    reps.sort()
    pos = {r: i for i, r in enumerate(reps)}
    table = np.zeros((order, order), dtype=np.int32)
    for i, x in enumerate(reps):
        row = prod.table[x, reps]
        table[i] = [pos[rep[int(y)]] for y in row]
    names = [prod.names[r] for r in reps]
    return FiniteGroup(table, names, spec=spec, _skip_assoc=order > _FULL_ASSOC_LIMIT)


def group_from_cayley(table, names, spec: Optional[str] = None) -> FiniteGroup:
    """Validate a raw multiplication table: associativity, identity, inverses,
    and name uniqueness are all checked; violations name the culprit."""
    return FiniteGroup(table, names, spec=spec)


def _parse_cayley_file(path: str) -> FiniteGroup:
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError(f"empty cayley file {path}")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError("cayley file: first line must be the order") from None
    if len(lines) < 2 + n:
        raise ParseError("cayley file: truncated")
    names = lines[1].split()
    if len(names) != n:
        raise ParseError(f"cayley file: expected {n} names, got {len(names)}")
    rows = []
    for ln in lines[2:2 + n]:
        row = [int(tok) for tok in ln.split()]
        if len(row) != n:
            raise ParseError("cayley file: row width mismatch")
        rows.append(row)
    return group_from_cayley(rows, names, spec=f"cayley:{path}")


def _split_product_args(args: str) -> tuple[str, str]:
    for pos in (i for i, ch in enumerate(args) if ch == ","):
        left, right = args[:pos], args[pos + 1:]
        try:
            _validate_spec_shape(left)
            _validate_spec_shape(right)
            return left, right
        except ParseError:
            continue
    raise ParseError(f"cannot split product arguments {args!r}")


def _validate_spec_shape(spec: str) -> None:
    head, _, rest = spec.partition(":")
    if head in ("cyclic", "dihedral", "sym", "alt", "es"):
        if not rest.isdigit():
            raise ParseError(spec)
    elif head == "quaternion":
        if rest:
            raise ParseError(spec)
    elif head in ("product", "centprod"):
        _split_product_args(rest)
    elif head == "cayley":
        if not rest:
            raise ParseError(spec)
    else:
        raise ParseError(f"unknown group spec {spec!r}")


@lru_cache(maxsize=128)
def _standard_group_cached(spec: str, max_order: int) -> FiniteGroup:
    head, _, rest = spec.partition(":")
    if head in ("cyclic", "dihedral", "sym", "alt", "es"):
        if not rest.isdigit():
            raise ParseError(f"{head}:<n> needs a positive integer, got {spec!r}")
        n = int(rest)
        if n < 1:
            raise ParseError(f"{head}:<n> needs n >= 1")
    if head == "cyclic":
        if n > max_order:
            raise TooLarge(n, max_order)
        return _cyclic(n)
    if head == "dihedral":
        if 2 * n > max_order:
            raise TooLarge(2 * n, max_order)
        return _dihedral(n)
    if head == "quaternion":
        if rest:
            raise ParseError("quaternion takes no arguments")
        return _quaternion()
    if head == "sym":
        return _perm_group(n, False, spec, max_order)
    if head == "alt":
        return _perm_group(n, True, spec, max_order)
    if head == "es":
        return _es_group_impl(n, max_order)
    if head == "product":
        left, right = _split_product_args(rest)
        A = _standard_group_cached(left, max_order)
        B = _standard_group_cached(right, max_order)
        return _direct_product(A, B, spec, max_order)
    if head == "centprod":
        left, right = _split_product_args(rest)
        A = _standard_group_cached(left, max_order)
        B = _standard_group_cached(right, max_order)
        return _central_product(A, B, spec, max_order)
    if head == "cayley":
        return _parse_cayley_file(rest)
    raise ParseError(f"unknown group spec {spec!r}")


def standard_group(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from the group-spec mini-language.

    Grammar: ``cyclic:<n> | dihedral:<n> | quaternion | sym:<n> | alt:<n> |
    es:<n> | product:<spec>,<spec> | centprod:<spec>,<spec> | cayley:<path>``.
    """
    spec = spec.strip().replace(" ", "")
    if not spec:
        raise ParseError("empty group spec")
    if spec.startswith("cayley:"):
        # file contents may change between calls; do not cache
        return _parse_cayley_file(spec[len("cayley:"):])
    return _standard_group_cached(spec, max_order)
