"""Quandle Cayley tables from finite t-modules, and isomorphism testing.

The table operation is x ^ y = t(x) + (1 - t)(y). Two independent
deciders are provided: brute_iso searches for a table bijection directly,
theorem1_iso reduces the question to a module isomorphism between the
Im(1-t) submodules (valid for equal-order Alexander quandles), and
construct_quandle_iso turns such a submodule isomorphism into an explicit
table bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lambda_module import (
    LambdaModule,
    image_one_minus_t,
    lambda_iso,
)


@dataclass(frozen=True)
class QuandleTable:
    """A square operation table; rows[x][y] is x ^ y.

    Entry ranges are deliberately not validated here so that check_axioms
    can report malformed tables; a non-square table is rejected outright.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("table is not square")

    @property
    def order(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class IsoWitness:
    """A bijection witnessing a quandle isomorphism.

    map[x] is the image of x; method records which decider produced it
    ("theorem1-constructive" or "brute-force").
    """

    map: tuple[int, ...]
    method: str


def alexander_table(module: LambdaModule) -> QuandleTable:
    """The Cayley table of x ^ y = t(x) + (1 - t)(y)."""
    n = module.order
    add = module.group.add
    tmap = module.t_action.element_map
    omt = [module.one_minus_t(y) for y in range(n)]
    rows = tuple(tuple(add(tmap[x], omt[y]) for y in range(n)) for x in range(n))
    return QuandleTable(rows)


def check_axioms(table: QuandleTable):
    """None if the table is a quandle, else (axiom, witness).

    Axioms in order: ("i", (x1, x2, y)) when column y maps x1 and x2 to the
    same value; ("ii", (a, b, c)) when (a^b)^c != (a^c)^(b^c);
    ("iii", (a, a, a)) when a^a != a. Witnesses are lexicographically
    smallest. Raises ValueError for out-of-range entries (malformed input,
    distinct from an axiom failure).
    """
    rows = table.rows
    n = table.order
    for x in range(n):
        for y in range(n):
            v = rows[x][y]
            if not 0 <= v < n:
                raise ValueError(f"entry {v} at ({x}, {y}) is out of range")
    worst = None
    for y in range(n):
        seen = {}
        for x in range(n):
            v = rows[x][y]
            if v in seen:
                cand = (seen[v], x, y)
                if worst is None or cand < worst:
                    worst = cand
                break
            seen[v] = x
    if worst is not None:
        return ("i", worst)
    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            for c in range(n):
                if rows[ab][c] != rows[rows[a][c]][rows[b][c]]:
                    return ("ii", (a, b, c))
    for a in range(n):
        if rows[a][a] != a:
            return ("iii", (a, a, a))
    return None


def orbits(table: QuandleTable) -> list[list[int]]:
    """Connected components under x -> x ^ y and its inverses, sorted."""
    rows = table.rows
    n = table.order
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(n):
        for y in range(n):
            a, b = find(x), find(rows[x][y])
            if a != b:
                parent[b] = a
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def is_connected(table: QuandleTable) -> bool:
    return len(orbits(table)) == 1


def dual(table: QuandleTable) -> QuandleTable:
    """The dual table: x ^' y is the unique z with z ^ y = x."""
    rows = table.rows
    n = table.order
    out = [[0] * n for _ in range(n)]
    for y in range(n):
        for z in range(n):
            out[rows[z][y]][y] = z
    return QuandleTable(tuple(tuple(r) for r in out))


def is_quandle_iso(t1: QuandleTable, t2: QuandleTable, mapping) -> bool:
    """Does the bijection mapping carry t1 onto t2?"""
    n = t1.order
    if t2.order != n or len(mapping) != n or sorted(mapping) != list(range(n)):
        return False
    r1, r2 = t1.rows, t2.rows
    for x in range(n):
        mx = mapping[x]
        for y in range(n):
            if mapping[r1[x][y]] != r2[mx][mapping[y]]:
                return False
    return True


def _element_profiles(table: QuandleTable):
    rows = table.rows
    n = table.order
    orbit_size = [0] * n
    for orb in orbits(table):
        for x in orb:
            orbit_size[x] = len(orb)
    profiles = []
    for e in range(n):
        col_fix = sum(1 for x in range(n) if rows[x][e] == x)
        row_fix = sum(1 for y in range(n) if rows[e][y] == e)
        # cycle type of the right translation by e
        seen = [False] * n
        lengths = []
        for start in range(n):
            if seen[start]:
                continue
            ln, x = 0, start
            while not seen[x]:
                seen[x] = True
                ln += 1
                x = rows[x][e]
            lengths.append(ln)
        profiles.append((orbit_size[e], col_fix, row_fix, tuple(sorted(lengths))))
    return profiles


def brute_iso(t1: QuandleTable, t2: QuandleTable):
    """Search for a table isomorphism directly; IsoWitness or None.

    Elements are matched by local profile (orbit size, fixed counts,
    translation cycle type) before backtracking with pairwise consistency
    checks. Equal tables short-circuit to the identity.
    """
    n = t1.order
    if t2.order != n:
        return None
    if t1.rows == t2.rows:
        return IsoWitness(tuple(range(n)), "brute-force")
    p1, p2 = _element_profiles(t1), _element_profiles(t2)
    if sorted(p1) != sorted(p2):
        return None
    cand = []
    for x in range(n):
        cs = tuple(u for u in range(n) if p2[u] == p1[x])
        if not cs:
            return None
        cand.append(cs)
    order = sorted(range(n), key=lambda x: (len(cand[x]), x))
    r1, r2 = t1.rows, t2.rows
    mapping = [-1] * n
    used = [False] * n

    def consistent(assigned, x):
        # a constraint (y, z, y^z) is checked when the last of the three is
        # assigned: pairs with x as operand, then pairs whose result is x
        u = mapping[x]
        for y in assigned:
            v = mapping[y]
            a = mapping[r1[x][y]]
            if a != -1 and r2[u][v] != a:
                return False
            a = mapping[r1[y][x]]
            if a != -1 and r2[v][u] != a:
                return False
        a = mapping[r1[x][x]]
        if a != -1 and r2[u][u] != a:
            return False
        for y in assigned:
            ry = r1[y]
            v = mapping[y]
            for z in assigned:
                if ry[z] == x and r2[v][mapping[z]] != u:
                    return False
        return True

    def rec(i):
        if i == n:
            return True
        x = order[i]
        assigned = order[:i]
        for u in cand[x]:
            if used[u]:
                continue
            mapping[x] = u
            used[u] = True
            if consistent(assigned, x) and rec(i + 1):
                return True
            mapping[x] = -1
            used[u] = False
        return False

    if rec(0):
        witness = tuple(mapping)
        if not is_quandle_iso(t1, t2, witness):
            raise RuntimeError("internal: search returned a non-isomorphism")
        return IsoWitness(witness, "brute-force")
    return None


def theorem1_iso(m: LambdaModule, n: LambdaModule) -> bool:
    """Decide quandle isomorphism by comparing the Im(1-t) submodules.

    Equal-order modules give isomorphic quandles exactly when their
    Im(1-t) submodules are isomorphic as t-modules.
    """
    if m.order != n.order:
        return False
    sub_m = image_one_minus_t(m)
    sub_n = image_one_minus_t(n)
    return lambda_iso(sub_m.as_module, sub_n.as_module) is not None


def _validate_submodule_witness(a: LambdaModule, b: LambdaModule, h) -> None:
    size = a.order
    h = tuple(h)
    if len(h) != size or b.order != size or sorted(h) != list(range(size)):
        raise ValueError("h is not a bijection between the submodules")
    for x in range(size):
        if h[a.t(x)] != b.t(h[x]):
            raise ValueError("h does not commute with t")
        for y in range(x, size):
            if h[a.group.add(x, y)] != b.group.add(h[x], h[y]):
                raise ValueError("h is not additive")


def construct_quandle_iso(m: LambdaModule, n: LambdaModule, h=None) -> IsoWitness:
    """Build an explicit table bijection from a submodule isomorphism.

    h maps indices of image_one_minus_t(m).as_module to indices of
    image_one_minus_t(n).as_module; when omitted one is searched for.
    Coset representatives are matched through the induced map on
    Im(1-t)/Im(1-t)^2 and corrected by elements of (1-t)Im(1-t) so that
    (1-t) k(alpha) = h((1-t) alpha); the result is verified before return.
    """
    if m.order != n.order:
        raise ValueError("modules have different orders")
    sub_m = image_one_minus_t(m)
    sub_n = image_one_minus_t(n)
    if h is None:
        h = lambda_iso(sub_m.as_module, sub_n.as_module)
        if h is None:
            raise ValueError("Im(1-t) submodules are not isomorphic")
    else:
        h = tuple(h)
        _validate_submodule_witness(sub_m.as_module, sub_n.as_module, h)
    hmap = {
        x: sub_n.from_abstract[h[sub_m.to_abstract[x]]]
        for x in sub_m.member_indices
    }

    gm, gn = m.group, n.group
    size = m.order

    def coset_reps(group, members, total):
        reps, covered = [], [False] * total
        for x in range(total):
            if not covered[x]:
                reps.append(x)
                for w in members:
                    covered[group.add(x, w)] = True
        return reps

    reps_m = coset_reps(gm, sub_m.member_indices, size)
    reps_n = coset_reps(gn, sub_n.member_indices, size)

    im2_n = tuple(n.one_minus_t(x) for x in sub_n.member_indices)

    def class_in_n(u):
        # canonical label of u + (1-t)^2 N inside (1-t)N
        return min(gn.add(u, w) for w in im2_n)

    target = {alpha: class_in_n(hmap[m.one_minus_t(alpha)]) for alpha in reps_m}
    source = {beta: class_in_n(n.one_minus_t(beta)) for beta in reps_n}
    buckets_m: dict[int, list[int]] = {}
    for alpha in reps_m:
        buckets_m.setdefault(target[alpha], []).append(alpha)
    buckets_n: dict[int, list[int]] = {}
    for beta in reps_n:
        buckets_n.setdefault(source[beta], []).append(beta)
    if sorted(buckets_m) != sorted(buckets_n):
        raise RuntimeError("internal: quotient classes failed to match")
    k = {}
    for cls, alphas in buckets_m.items():
        betas = buckets_n[cls]
        if len(alphas) != len(betas):
            raise RuntimeError("internal: quotient classes failed to match")
        k.update(zip(sorted(alphas), sorted(betas)))

    for alpha in reps_m:
        u = hmap[m.one_minus_t(alpha)]
        v = n.one_minus_t(k[alpha])
        if u != v:
            diff = gn.sub(u, v)
            xi = next(
                (x for x in range(size) if n.one_minus_t(n.one_minus_t(x)) == diff),
                None,
            )
            if xi is None:
                raise RuntimeError("internal: no correction element found")
            k[alpha] = gn.add(k[alpha], n.one_minus_t(xi))
        if n.one_minus_t(k[alpha]) != u:
            raise RuntimeError("internal: correction failed")

    rep_of = [0] * size
    for alpha in reps_m:
        for w in sub_m.member_indices:
            rep_of[gm.add(alpha, w)] = alpha
    f = [0] * size
    for x in range(size):
        alpha = rep_of[x]
        f[x] = gn.add(k[alpha], hmap[gm.sub(x, alpha)])
    witness = IsoWitness(tuple(f), "theorem1-constructive")
    if not is_quandle_iso(alexander_table(m), alexander_table(n), witness.map):
        raise RuntimeError("internal: constructed map is not an isomorphism")
    return witness


def table_to_json_dict(table: QuandleTable) -> dict:
    return {"order": table.order, "table": [list(row) for row in table.rows]}


def table_from_json_dict(data) -> QuandleTable:
    try:
        order = int(data["order"])
        rows = data["table"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad table JSON: {exc}") from None
    table = QuandleTable(tuple(tuple(int(v) for v in row) for row in rows))
    if table.order != order:
        raise ValueError(f"declared order {order} does not match table size {table.order}")
    return table


def table_to_text(table: QuandleTable) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in table.rows)


def table_from_text(text: str) -> QuandleTable:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            rows.append(tuple(int(v) for v in line.split()))
    if not rows:
        raise ValueError("empty table")
    return QuandleTable(tuple(rows))
