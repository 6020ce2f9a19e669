"""Finite modules over the ring of integer Laurent polynomials in t.

A finite module is a finite abelian group together with an automorphism
giving the action of t (invertibility of t forces an automorphism). The
constructors cover the standard finite quotients: Z_n with t acting as a
unit a, quotients of Z_n[t] by a monic polynomial with unit constant term
(companion-matrix action), direct sums, and raw (group, automorphism)
pairs.

Modules carry an optional provenance descriptor recording how they were
built; descriptors double as canonical names during classification.
Descriptor shapes:

    ("linear", n, a)            Z_n, t = multiplication by a
    ("poly", n, coeffs)         Z_n[t] / (c0 + c1 t + ... + t^d), ascending coeffs
    ("sum", (desc, ...))        direct sum of the named components
    ("pair", factors, images)   explicit group and t generator images (coords)

The empty sum ("sum", ()) names the trivial module and prints as "0".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, product

from .abelian import (
    AbelianGroup,
    GroupAutomorphism,
    invariant_factors_from_element_orders,
)

_KIND_RANK = {"linear": 0, "poly": 1, "sum": 2, "pair": 3}


def descriptor_key(desc) -> tuple:
    """Total order on descriptors: linear < poly < sum < pair, then contents."""
    kind = desc[0]
    rank = _KIND_RANK[kind]
    if kind == "linear":
        return (rank, desc[1], desc[2])
    if kind == "poly":
        return (rank, desc[1], len(desc[2]), desc[2])
    if kind == "sum":
        return (rank, len(desc[1]), tuple(descriptor_key(c) for c in desc[1]))
    return (rank, desc[1], desc[2])


def descriptor_str(desc) -> str:
    """Render a descriptor in the spec-string syntax used by the CLI."""
    kind = desc[0]
    if kind == "linear":
        return f"linear:{desc[1]}:{desc[2]}"
    if kind == "poly":
        return f"poly:{desc[1]}:" + ",".join(str(c) for c in desc[2])
    if kind == "sum":
        if not desc[1]:
            return "0"
        return "sum:" + "+".join(descriptor_str(c) for c in desc[1])
    factors = ",".join(str(d) for d in desc[1])
    images = ";".join(",".join(str(c) for c in img) for img in desc[2])
    return f"pair:{factors}:{images}"


@dataclass(frozen=True)
class Polynomial:
    """A monic polynomial over Z_n with unit constant term, ascending coeffs.

    coeffs[i] is the coefficient of t^i; the last entry must reduce to 1.

    >>> Polynomial(9, (-4, 1)).coeffs
    (5, 1)
    """

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus
        if n < 2:
            raise ValueError(f"modulus {n} must be >= 2")
        cs = tuple(int(c) % n for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        if len(cs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if cs[-1] != 1:
            raise ValueError(f"polynomial is not monic mod {n}: {cs}")
        if math.gcd(cs[0], n) != 1:
            raise ValueError(
                f"constant term {cs[0]} is not a unit mod {n}; t would not act invertibly"
            )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class LambdaModule:
    """A finite abelian group with a distinguished automorphism t."""

    group: AbelianGroup
    t_action: GroupAutomorphism
    provenance: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.t_action.group != self.group:
            raise ValueError("t acts on a different group")

    @property
    def order(self) -> int:
        return self.group.order

    def t(self, x: int) -> int:
        return self.t_action.element_map[x]

    @cached_property
    def _t_inverse_map(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for x, y in enumerate(self.t_action.element_map):
            inv[y] = x
        return tuple(inv)

    def t_inv(self, x: int) -> int:
        return self._t_inverse_map[x]

    def one_minus_t(self, x: int) -> int:
        return self.group.sub(x, self.t(x))


def trivial_module() -> LambdaModule:
    group = AbelianGroup(())
    return LambdaModule(group, GroupAutomorphism(group, ()), ("sum", ()))


def module_from_pair(group: AbelianGroup, phi, provenance=None) -> LambdaModule:
    """Build a module from a group and an automorphism (or raw element map).

    A raw map is validated for additivity and bijectivity.
    """
    if not isinstance(phi, GroupAutomorphism):
        emap = list(phi)
        if len(emap) != group.order:
            raise ValueError("element map has wrong length")
        images = tuple(emap[e] for e in group.generator_indices())
        phi = GroupAutomorphism(group, images)
        if tuple(emap) != phi.element_map:
            raise ValueError("element map is not additive")
    elif phi.group != group:
        raise ValueError("automorphism belongs to a different group")
    if provenance is None:
        images = tuple(group.coords(phi.element_map[e]) for e in group.generator_indices())
        provenance = ("pair", group.invariant_factors, images)
    return LambdaModule(group, phi, provenance)


def linear_module(n: int, a: int) -> LambdaModule:
    """Z_n with t acting as multiplication by a unit a."""
    if n < 2:
        raise ValueError(f"order {n} must be >= 2")
    a %= n
    if math.gcd(n, a) != 1:
        raise ValueError(f"gcd({n}, {a}) != 1, so t would not act invertibly")
    group = AbelianGroup((n,))
    t = GroupAutomorphism(group, (a,))
    return LambdaModule(group, t, ("linear", n, a))


def module_from_polynomial(p: Polynomial) -> LambdaModule:
    """Quotient of Z_n[t] by a monic polynomial: companion-matrix t-action.

    Degree-1 quotients are returned in their linear form.
    """
    n, coeffs, d = p.modulus, p.coeffs, p.degree
    if d == 1:
        return linear_module(n, -coeffs[0])
    group = AbelianGroup((n,) * d)
    gens = group.generator_indices()
    images = list(gens[1:])
    images.append(group.index_of(tuple((-c) % n for c in coeffs[:d])))
    t = GroupAutomorphism(group, tuple(images))
    return LambdaModule(group, t, ("poly", n, coeffs))


def _sum_components(m: LambdaModule):
    prov = m.provenance
    if prov is None:
        return None
    if prov[0] == "sum":
        return list(prov[1])
    return [prov]


def _recoordinatize(members, add, t):
    """Express a finite abelian group given by (members, add) in canonical form.

    members must contain 0 as the identity. Returns (module, to_abstract)
    where module has invariant-factor coordinates and to_abstract maps each
    member to its abstract index. t is transported along.
    """
    members = sorted(members)
    size = len(members)
    if members[0] != 0:
        raise ValueError("identity element 0 missing from member set")
    if size == 1:
        return trivial_module(), {0: 0}

    orders = {}
    for x in members:
        k, y = 1, x
        while y != 0:
            y = add(y, x)
            k += 1
        orders[x] = k
    target = invariant_factors_from_element_orders(orders.values())
    desc = tuple(reversed(target))

    def find_basis(span, level):
        if level == len(desc):
            return []
        d = desc[level]
        for g in members:
            # a basis element for Z_d must have order exactly d both in the
            # group and relative to the span built so far
            if orders[g] != d or g in span:
                continue
            rel, y = 1, g
            while y not in span:
                y = add(y, g)
                rel += 1
            if rel != d:
                continue
            nspan = set(span)
            y = 0
            for _ in range(1, d):
                y = add(y, g)
                for h in span:
                    nspan.add(add(h, y))
            rest = find_basis(nspan, level + 1)
            if rest is not None:
                return [g] + rest
        return None

    basis_desc = find_basis({0}, 0)
    if basis_desc is None:
        raise ValueError("member set is not closed under the given addition")
    basis = list(reversed(basis_desc))

    group = AbelianGroup(target)
    to_abstract: dict[int, int] = {}
    for idx in range(size):
        elt = 0
        for c, b in zip(group.coords(idx), basis):
            for _ in range(c):
                elt = add(elt, b)
        to_abstract[elt] = idx
    if len(to_abstract) != size or set(to_abstract) != set(members):
        raise ValueError("member set is not closed under the given addition")
    t_images = tuple(to_abstract[t(b)] for b in basis)
    taut = GroupAutomorphism(group, t_images)
    return LambdaModule(group, taut), to_abstract


def direct_sum(m1: LambdaModule, m2: LambdaModule) -> LambdaModule:
    """Direct sum, renormalized to invariant-factor coordinates."""
    if m1.order == 1:
        return m2
    if m2.order == 1:
        return m1
    n1 = m1.order
    add1, add2 = m1.group.add, m2.group.add
    t1, t2 = m1.t_action.element_map, m2.t_action.element_map

    def add(x, y):
        return add1(x % n1, y % n1) + n1 * add2(x // n1, y // n1)

    def t(x):
        return t1[x % n1] + n1 * t2[x // n1]

    module, _ = _recoordinatize(range(n1 * m2.order), add, t)
    comps1, comps2 = _sum_components(m1), _sum_components(m2)
    if comps1 is None or comps2 is None:
        return module
    comps = tuple(sorted(comps1 + comps2, key=descriptor_key))
    return replace(module, provenance=("sum", comps))


def direct_sum_all(modules) -> LambdaModule:
    out = trivial_module()
    for m in modules:
        out = direct_sum(out, m)
    return out


@dataclass(eq=False)
class Submodule:
    """Im(1-t)^k inside a parent module, with its abstract normal form.

    to_abstract / from_abstract translate between parent element indices
    and indices of as_module.
    """

    parent: LambdaModule
    member_indices: tuple[int, ...]
    as_module: LambdaModule
    to_abstract: dict[int, int]
    from_abstract: tuple[int, ...]


@lru_cache(maxsize=None)
def _image_members(module: LambdaModule, power: int) -> tuple[int, ...]:
    xs = set(range(module.order))
    for _ in range(power):
        xs = {module.one_minus_t(x) for x in xs}
    return tuple(sorted(xs))


@lru_cache(maxsize=None)
def _image_submodule(module: LambdaModule, power: int) -> Submodule:
    members = _image_members(module, power)
    abstract, to_abstract = _recoordinatize(members, module.group.add, module.t)
    from_abstract = [0] * len(members)
    for parent_idx, abs_idx in to_abstract.items():
        from_abstract[abs_idx] = parent_idx
    return Submodule(module, members, abstract, to_abstract, tuple(from_abstract))


def image_one_minus_t(module: LambdaModule, power: int = 1) -> Submodule:
    """The submodule (1-t)^power M, with a canonical abstract copy.

    power may be 1 or 2.
    """
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    return _image_submodule(module, power)


def _orbit_lengths(perm) -> list[int]:
    n = len(perm)
    out = [0] * n
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            seen[x] = True
            cycle.append(x)
            x = perm[x]
        for y in cycle:
            out[y] = len(cycle)
    return out


@lru_cache(maxsize=None)
def module_certificate(module: LambdaModule) -> tuple:
    """Cheap isomorphism invariants used to prescreen lambda_iso.

    Equal certificates are necessary (not sufficient) for isomorphism.
    """
    im1 = _image_members(module, 1)
    im2 = _image_members(module, 2)
    g = module.group
    im1_factors = invariant_factors_from_element_orders(
        [g.element_order(x) for x in im1]
    )
    tmap = module.t_action.element_map
    fixed = sum(1 for x, y in enumerate(tmap) if x == y)
    orbit_sizes = tuple(sorted(_orbit_lengths(tmap)))
    return (g.invariant_factors, im1_factors, len(im2), fixed, orbit_sizes)


def lambda_iso(m: LambdaModule, n: LambdaModule):
    """An additive, t-commuting bijection m -> n as an index tuple, or None.

    Backtracking over generator images with span-injectivity and partial
    t-equivariance pruning; candidates must match element order and t-orbit
    length. The identity is found first when m and n coincide.
    """
    if m.group.order != n.group.order:
        return None
    if module_certificate(m) != module_certificate(n):
        return None
    facs = m.group.invariant_factors
    if not facs:
        return (0,)
    size = m.group.order
    tm, tn = m.t_action.element_map, n.t_action.element_map
    orbit_m, orbit_n = _orbit_lengths(tm), _orbit_lengths(tn)
    orders_n = [n.group.element_order(x) for x in range(size)]
    addn = n.group.add
    cand = []
    for e, d in zip(m.group.generator_indices(), facs):
        ol = orbit_m[e]
        cand.append(
            tuple(y for y in range(size) if orders_n[y] == d and orbit_n[y] == ol)
        )
    partial = [0] * size
    used = bytearray(size)
    used[0] = 1

    def rec(level: int, span: int):
        if level == len(facs):
            return tuple(partial)
        d = facs[level]
        for y in cand[level]:
            if used[y]:
                continue
            written = []
            ok = True
            cy = 0
            for c in range(1, d):
                cy = addn(cy, y)
                base = c * span
                for src in range(span):
                    tgt = addn(partial[src], cy)
                    if used[tgt]:
                        ok = False
                        break
                    used[tgt] = 1
                    partial[base + src] = tgt
                    written.append(tgt)
                if not ok:
                    break
            if ok:
                nspan = span * d
                for z in range(nspan):
                    tz = tm[z]
                    if tz < nspan and partial[tz] != tn[partial[z]]:
                        ok = False
                        break
            if ok:
                res = rec(level + 1, span * d)
                if res is not None:
                    return res
            for tgt in written:
                used[tgt] = 0
        return None

    return rec(0, 1)


def _integer_roots(order: int):
    """(base, degree) pairs with base**degree == order, degree >= 2."""
    out = []
    for degree in range(2, order.bit_length() + 1):
        base = 2
        while base ** degree <= order:
            if base ** degree == order:
                out.append((base, degree))
            base += 1
    return out


@lru_cache(maxsize=None)
def _atomic_candidates(order: int):
    """Named non-sum modules of the given order: linear and companion forms."""
    out = []
    for a in range(1, order):
        if math.gcd(order, a) == 1:
            out.append((("linear", order, a), linear_module(order, a)))
    for base, degree in _integer_roots(order):
        units = [c for c in range(1, base) if math.gcd(c, base) == 1]
        for c0 in units:
            for mid in product(range(base), repeat=degree - 1):
                poly = Polynomial(base, (c0, *mid, 1))
                out.append((("poly", base, poly.coeffs), module_from_polynomial(poly)))
    return tuple(out)


def _factorizations(n: int):
    """Multisets of integers >= 2 (nondecreasing, length >= 2) with product n."""
    results = []

    def rec(remaining, start, acc):
        f = start
        while f * f <= remaining:
            if remaining % f == 0:
                rec(remaining // f, f, acc + (f,))
            f += 1
        if acc:
            results.append(acc + (remaining,))

    rec(n, 2, ())
    return results


@lru_cache(maxsize=None)
def named_candidates(order: int):
    """All canonically named modules of one order, sorted by descriptor.

    Covers linear forms, polynomial quotients whose base power matches the
    order, and direct sums of those; used to put a readable name on
    classification output.
    """
    if order < 1:
        raise ValueError(f"no modules of order {order}")
    if order == 1:
        return ((("sum", ()), trivial_module()),)
    out = {}
    for desc, mod in _atomic_candidates(order):
        out.setdefault(desc, mod)
    for parts in _factorizations(order):
        runs: dict[int, int] = {}
        for part in parts:
            runs[part] = runs.get(part, 0) + 1
        per_run = [
            combinations_with_replacement(_atomic_candidates(part), mult)
            for part, mult in sorted(runs.items())
        ]
        for chosen in product(*per_run):
            comps = [item for run in chosen for item in run]
            descs = tuple(sorted((d for d, _ in comps), key=descriptor_key))
            key = ("sum", descs)
            if key in out:
                continue
            out[key] = direct_sum_all(m for _, m in comps)
    return tuple(sorted(out.items(), key=lambda kv: descriptor_key(kv[0])))


def identify_as_quotient(module: LambdaModule):
    """The smallest named descriptor isomorphic to the module, or None.

    The trivial module names itself as the empty sum.
    """
    if module.order == 1:
        return ("sum", ())
    for desc, cand in named_candidates(module.order):
        if lambda_iso(module, cand) is not None:
            return desc
    return None


def module_from_descriptor(desc) -> LambdaModule:
    """Rebuild a module from its descriptor."""
    kind = desc[0]
    if kind == "linear":
        return linear_module(desc[1], desc[2])
    if kind == "poly":
        return module_from_polynomial(Polynomial(desc[1], desc[2]))
    if kind == "sum":
        return direct_sum_all(module_from_descriptor(c) for c in desc[1])
    group = AbelianGroup(tuple(desc[1]))
    images = tuple(group.index_of(c) for c in desc[2])
    return module_from_pair(group, GroupAutomorphism(group, images))


def module_from_json_dict(data) -> LambdaModule:
    """Module from {"invariant_factors": [...], "t_generator_images": [[...], ...]}."""
    try:
        factors = tuple(int(d) for d in data["invariant_factors"])
        raw_images = list(data["t_generator_images"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad module JSON: {exc}") from None
    group = AbelianGroup(factors)
    images = tuple(group.index_of([int(c) for c in img]) for img in raw_images)
    return module_from_pair(group, GroupAutomorphism(group, images))
