"""Finite abelian groups in invariant-factor form.

A group is a direct sum Z_d1 + ... + Z_dk with 2 <= d1 | d2 | ... | dk.
Elements are addressed by mixed-radix indices, first factor least
significant: the element with coordinates (c1, ..., ck) has index
c1 + d1*(c2 + d2*(c3 + ...)). Index 0 is the identity and the i-th
standard generator sits at index d1*...*d_{i-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division.

    >>> factorize(360)
    {2: 3, 3: 2, 5: 1}
    """
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def _partitions(n: int) -> list[tuple[int, ...]]:
    """Integer partitions of n, parts descending, largest-first order."""
    if n == 0:
        return [()]
    out = []

    def rec(rest: int, cap: int, acc: tuple[int, ...]):
        if rest == 0:
            out.append(acc)
            return
        for part in range(min(rest, cap), 0, -1):
            rec(rest - part, part, acc + (part,))

    rec(n, n, ())
    return out


def _merge_primary(prime_exponents: dict[int, list[int]]) -> tuple[int, ...]:
    # each value is a descending exponent partition; align largest with
    # largest so the result is a divisibility chain
    width = max(len(parts) for parts in prime_exponents.values())
    desc = []
    for j in range(width):
        d = 1
        for p, parts in prime_exponents.items():
            if j < len(parts):
                d *= p ** parts[j]
        desc.append(d)
    return tuple(reversed(desc))


def _int_log(value: int, base: int) -> int:
    s, x = 0, 1
    while x < value:
        x *= base
        s += 1
    if x != value:
        raise ValueError(f"{value} is not a power of {base}")
    return s


def invariant_factors_from_element_orders(orders) -> tuple[int, ...]:
    """Recover invariant factors from the multiset of all element orders.

    The multiset of element orders determines a finite abelian group up to
    isomorphism; this inverts that correspondence. Raises ValueError if the
    statistics do not belong to any abelian group.
    """
    orders = list(orders)
    n = len(orders)
    if n == 0:
        raise ValueError("empty order multiset")
    if n == 1:
        return ()
    prime_exponents: dict[int, list[int]] = {}
    for p in factorize(n):
        s_prev = 0
        mks = []  # mks[k-1] = number of cyclic parts of p-exponent >= k
        k = 1
        while True:
            pk = p ** k
            c = sum(1 for o in orders if pk % o == 0)
            s = _int_log(c, p)
            m = s - s_prev
            if m <= 0:
                break
            mks.append(m)
            s_prev = s
            k += 1
        if mks:
            parts = [sum(1 for m in mks if m >= j) for j in range(1, mks[0] + 1)]
            prime_exponents[p] = parts
    if math.prod(p ** sum(parts) for p, parts in prime_exponents.items()) != n:
        raise ValueError("order statistics do not match any abelian group")
    return _merge_primary(prime_exponents)


@dataclass(frozen=True)
class AbelianGroup:
    """A finite abelian group given by its invariant factors.

    The empty factor sequence is the trivial group of order 1.

    >>> g = AbelianGroup((2, 4))
    >>> g.order
    8
    >>> g.coords(6)
    (0, 3)
    >>> g.add(1, 3)
    2
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        for d in facs:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be >= 2")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise ValueError(f"{facs} is not a divisibility chain")

    @cached_property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @cached_property
    def _prefix(self) -> tuple[int, ...]:
        out = [1]
        for d in self.invariant_factors:
            out.append(out[-1] * d)
        return tuple(out)

    def elements(self) -> range:
        return range(self.order)

    def generator_indices(self) -> tuple[int, ...]:
        """Indices of the standard generators e_1, ..., e_k."""
        return self._prefix[:-1]

    def coords(self, x: int) -> tuple[int, ...]:
        out = []
        for d in self.invariant_factors:
            x, c = divmod(x, d)
            out.append(c)
        return tuple(out)

    def index_of(self, coords) -> int:
        facs = self.invariant_factors
        if len(coords) != len(facs):
            raise ValueError(f"expected {len(facs)} coordinates, got {len(coords)}")
        x = 0
        for c, d, p in zip(coords, facs, self._prefix):
            x += (int(c) % d) * p
        return x

    def add(self, x: int, y: int) -> int:
        out, p = 0, 1
        for d in self.invariant_factors:
            out += ((x + y) % d) * p
            x //= d
            y //= d
            p *= d
        return out

    def neg(self, x: int) -> int:
        out, p = 0, 1
        for d in self.invariant_factors:
            out += ((d - x) % d) * p
            x //= d
            p *= d
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def scale(self, c: int, x: int) -> int:
        out, p = 0, 1
        for d in self.invariant_factors:
            out += ((c * x) % d) * p
            x //= d
            p *= d
        return out

    def element_order(self, x: int) -> int:
        order = 1
        for d in self.invariant_factors:
            c = x % d
            order = math.lcm(order, d // math.gcd(d, c))
            x //= d
        return order


@dataclass(frozen=True)
class GroupAutomorphism:
    """An automorphism, stored by its images of the standard generators.

    Construction validates well-definedness (the image of an order-d
    generator must have order dividing d) and bijectivity, and builds the
    full element map additively.
    """

    group: AbelianGroup
    generator_images: tuple[int, ...]
    element_map: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        g = self.group
        images = tuple(int(y) for y in self.generator_images)
        object.__setattr__(self, "generator_images", images)
        facs = g.invariant_factors
        if len(images) != len(facs):
            raise ValueError("need one generator image per invariant factor")
        for d, y in zip(facs, images):
            if not 0 <= y < g.order:
                raise ValueError(f"generator image {y} out of range")
            if d % g.element_order(y):
                raise ValueError(
                    f"image of an order-{d} generator has order "
                    f"{g.element_order(y)}; the map is not well defined"
                )
        emap = [0] * g.order
        span = 1
        for d, y in zip(facs, images):
            cy = 0
            for c in range(1, d):
                cy = g.add(cy, y)
                base = c * span
                for src in range(span):
                    emap[base + src] = g.add(emap[src], cy)
            span *= d
        if len(set(emap)) != g.order:
            raise ValueError("induced endomorphism is not a bijection")
        object.__setattr__(self, "element_map", tuple(emap))

    def __call__(self, x: int) -> int:
        return self.element_map[x]

    def compose(self, other: GroupAutomorphism) -> GroupAutomorphism:
        """self after other: x -> self(other(x))."""
        if other.group != self.group:
            raise ValueError("cannot compose automorphisms of different groups")
        m_s, m_o = self.element_map, other.element_map
        images = tuple(m_s[m_o[e]] for e in self.group.generator_indices())
        return GroupAutomorphism(self.group, images)

    def inverse(self) -> GroupAutomorphism:
        inv = [0] * self.group.order
        for x, y in enumerate(self.element_map):
            inv[y] = x
        images = tuple(inv[e] for e in self.group.generator_indices())
        return GroupAutomorphism(self.group, images)


def identity_automorphism(group: AbelianGroup) -> GroupAutomorphism:
    return GroupAutomorphism(group, group.generator_indices())


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    """All abelian groups of order n, one per isomorphism class.

    Ordered with the cyclic group first and the most-split group last
    (descending lexicographic on the reversed factor sequence).

    >>> [g.invariant_factors for g in abelian_groups_of_order(8)]
    [(8,), (2, 4), (2, 2, 2)]
    """
    if n < 1:
        raise ValueError(f"no groups of order {n}")
    if n == 1:
        return [AbelianGroup(())]
    primes = sorted(factorize(n).items())
    choices = [_partitions(e) for _, e in primes]
    groups = []
    for combo in product(*choices):
        prime_exponents = {p: list(parts) for (p, _), parts in zip(primes, combo)}
        groups.append(AbelianGroup(_merge_primary(prime_exponents)))
    groups.sort(key=lambda g: tuple(reversed(g.invariant_factors)), reverse=True)
    return groups


def iter_automorphisms(group: AbelianGroup):
    """Yield all automorphisms, lexicographic on generator-image indices.

    Depth-first over candidate generator images with incremental injectivity
    pruning; the identity always comes first.
    """
    facs = group.invariant_factors
    if not facs:
        yield GroupAutomorphism(group, ())
        return
    n = group.order
    add = group.add
    cand = [
        tuple(x for x in range(n) if d % group.element_order(x) == 0)
        for d in facs
    ]
    k = len(facs)
    partial = [0] * n
    used = bytearray(n)
    used[0] = 1
    images: list[int] = []

    def rec(level: int, span: int):
        if level == k:
            yield GroupAutomorphism(group, tuple(images))
            return
        d = facs[level]
        for y in cand[level]:
            written = []
            ok = True
            cy = 0
            for c in range(1, d):
                cy = add(cy, y)
                base = c * span
                for src in range(span):
                    tgt = add(partial[src], cy)
                    if used[tgt]:
                        ok = False
                        break
                    used[tgt] = 1
                    partial[base + src] = tgt
                    written.append(tgt)
                if not ok:
                    break
            if ok:
                images.append(y)
                yield from rec(level + 1, span * d)
                images.pop()
            for tgt in written:
                used[tgt] = 0

    yield from rec(0, 1)


def enumerate_automorphisms(group: AbelianGroup) -> list[GroupAutomorphism]:
    """The full automorphism group as a list, in deterministic order."""
    return list(iter_automorphisms(group))


def conjugacy_classes(auts, *, assume_closed: bool = False) -> list[list[GroupAutomorphism]]:
    """Partition a full automorphism group into conjugacy classes.

    Classes are sorted by their representative (the member with the
    lexicographically smallest generator images), members likewise.
    Raises ValueError if the input is not closed under composition;
    assume_closed skips that check for trusted callers.
    """
    auts = list(auts)
    if not auts:
        raise ValueError("empty automorphism list")
    group = auts[0].group
    for a in auts:
        if a.group != group:
            raise ValueError("automorphisms of mixed groups")
    n = group.order
    maps = [a.element_map for a in auts]
    index = {m: i for i, m in enumerate(maps)}
    if len(index) != len(auts):
        raise ValueError("duplicate automorphisms in input")
    if not assume_closed:
        keyset = set(maps)
        for gm in maps:
            for hm in maps:
                if tuple(gm[t] for t in hm) not in keyset:
                    raise ValueError("input is not closed under composition")
    inv_maps = []
    for m in maps:
        inv = [0] * n
        for x, y in enumerate(m):
            inv[y] = x
        inv_maps.append(inv)
    seen = [False] * len(auts)
    classes = []
    for i, gm in enumerate(maps):
        if seen[i]:
            continue
        members = set()
        for hm, him in zip(maps, inv_maps):
            conj = tuple(him[gm[hm[x]]] for x in range(n))
            j = index.get(conj)
            if j is None:
                raise ValueError("input is not closed under conjugation")
            members.add(j)
        ordered = sorted(members, key=lambda j: auts[j].generator_images)
        for j in ordered:
            seen[j] = True
        classes.append([auts[j] for j in ordered])
    classes.sort(key=lambda cls: cls[0].generator_images)
    return classes
