"""Classification of Alexander quandles of a given finite order.

Every structure is a pair (abelian group of order n, automorphism); the
classifier buckets structures by cheap invariants of the Im(1-t)
submodule and resolves each bucket with exact module-isomorphism tests.
Conjugate automorphisms always give isomorphic quandles, so enumeration
can be pruned to one representative per conjugacy class; reported class
sizes still count the full enumeration either way.

Representatives are the smallest matching named module (linear, then
polynomial quotient, then direct sum); structures matching no named
module keep their raw (group, automorphism) descriptor.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

from .abelian import (
    abelian_groups_of_order,
    conjugacy_classes,
    enumerate_automorphisms,
    factorize,
    is_prime,
)
from .lambda_module import (
    LambdaModule,
    Polynomial,
    descriptor_key,
    descriptor_str,
    identify_as_quotient,
    image_one_minus_t,
    lambda_iso,
    module_certificate,
    module_from_descriptor,
    module_from_pair,
    named_candidates,
)

DEFAULT_MAX_ORDER = 15


@dataclass(frozen=True)
class QuandleClass:
    """One isomorphism class: named representative, connectivity, and the
    number of (group, automorphism) pairs realizing it."""

    representative: tuple
    connected: bool
    class_size_in_enumeration: int


@dataclass(frozen=True)
class ClassificationReport:
    order: int
    classes: tuple[QuandleClass, ...]

    @property
    def distinct_count(self) -> int:
        return len(self.classes)

    @property
    def connected_count(self) -> int:
        return sum(1 for c in self.classes if c.connected)

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "distinct": self.distinct_count,
            "connected": self.connected_count,
            "classes": [
                {
                    "representative": descriptor_str(c.representative),
                    "connected": c.connected,
                    "class_size_in_enumeration": c.class_size_in_enumeration,
                }
                for c in self.classes
            ],
        }


def _structures_weighted(n: int, conjugacy_prune: bool):
    out = []
    for group in abelian_groups_of_order(n):
        auts = enumerate_automorphisms(group)
        if conjugacy_prune:
            for cls in conjugacy_classes(auts, assume_closed=True):
                out.append((module_from_pair(group, cls[0]), len(cls)))
        else:
            out.extend((module_from_pair(group, a), 1) for a in auts)
    return out


def enumerate_structures(n: int, conjugacy_prune: bool = False) -> list[LambdaModule]:
    """One module per (group, automorphism) pair of order n.

    With conjugacy_prune, one per conjugacy class of automorphisms.
    """
    if n < 1:
        raise ValueError(f"no structures of order {n}")
    return [m for m, _ in _structures_weighted(n, conjugacy_prune)]


def classify_order(
    n: int, *, conjugacy_prune: bool = True, allow_large: bool = False
) -> ClassificationReport:
    """All Alexander quandles of order n up to isomorphism.

    Orders above DEFAULT_MAX_ORDER are refused unless allow_large is set
    (they still work, with a runtime warning; cost grows quickly).
    """
    if n < 1:
        raise ValueError(f"no quandles of order {n}")
    if n > DEFAULT_MAX_ORDER:
        if not allow_large:
            raise ValueError(
                f"order {n} exceeds the default bound {DEFAULT_MAX_ORDER}; "
                "pass allow_large=True to override"
            )
        warnings.warn(
            f"classifying order {n} above the default bound {DEFAULT_MAX_ORDER}; "
            "this may take a while",
            RuntimeWarning,
            stacklevel=2,
        )

    classes: list[dict] = []
    by_certificate: dict[tuple, list[int]] = {}
    for module, weight in _structures_weighted(n, conjugacy_prune):
        sub = image_one_minus_t(module)
        cert = module_certificate(sub.as_module)
        placed = False
        for pos in by_certificate.get(cert, ()):
            if lambda_iso(classes[pos]["abs"], sub.as_module) is not None:
                classes[pos]["weight"] += weight
                classes[pos]["members"].append(module)
                placed = True
                break
        if not placed:
            by_certificate.setdefault(cert, []).append(len(classes))
            classes.append(
                {
                    "abs": sub.as_module,
                    "weight": weight,
                    "members": [module],
                    "connected": len(sub.member_indices) == n,
                }
            )

    named = named_candidates(n)
    records = []
    for cls in classes:
        desc = None
        for cand_desc, cand_mod in named:
            cand_sub = image_one_minus_t(cand_mod)
            if lambda_iso(cand_sub.as_module, cls["abs"]) is not None:
                desc = cand_desc
                break
        if desc is None:
            desc = min(
                (m.provenance for m in cls["members"] if m.provenance is not None),
                key=descriptor_key,
            )
        records.append(QuandleClass(desc, cls["connected"], cls["weight"]))
    records.sort(key=lambda r: descriptor_key(r.representative))
    return ClassificationReport(n, tuple(records))


def count_table(max_n: int, **kwargs) -> list[tuple[int, int, int]]:
    """(order, distinct, connected) rows for orders 2..max_n."""
    return [
        (
            n,
            (rep := classify_order(n, **kwargs)).distinct_count,
            rep.connected_count,
        )
        for n in range(2, max_n + 1)
    ]


# Modules of order 4, 8, 9 over the non-cyclic groups, with their images
# identified; reproduces a fixed reference listing.
_TABLE1_DESCRIPTORS = (
    ("sum", (("linear", 2, 1), ("linear", 2, 1))),
    ("poly", 2, (1, 0, 1)),
    ("poly", 2, (1, 1, 1)),
    ("sum", (("linear", 2, 1), ("linear", 2, 1), ("linear", 2, 1))),
    ("sum", (("linear", 2, 1), ("poly", 2, (1, 0, 1)))),
    ("poly", 2, (1, 0, 0, 1)),
    ("poly", 2, (1, 1, 0, 1)),
    ("poly", 2, (1, 0, 1, 1)),
    ("poly", 2, (1, 1, 1, 1)),
    ("sum", (("linear", 3, 1), ("linear", 3, 1))),
    ("sum", (("linear", 3, 2), ("linear", 3, 2))),
    ("poly", 3, (2, 0, 1)),
    ("poly", 3, (1, 0, 1)),
    ("poly", 3, (2, 2, 1)),
    ("poly", 3, (1, 2, 1)),
    ("poly", 3, (2, 1, 1)),
    ("poly", 3, (1, 1, 1)),
)


def table1_report() -> list[tuple[tuple[int, ...], tuple, tuple]]:
    """(group factors, module descriptor, image descriptor) per module."""
    rows = []
    for desc in _TABLE1_DESCRIPTORS:
        module = module_from_descriptor(desc)
        image = image_one_minus_t(module).as_module
        rows.append((module.group.invariant_factors, desc, identify_as_quotient(image)))
    return rows


def predicted_counts(n: int):
    """Closed-form (distinct, connected) predictions, None when unknown.

    Primes p give (p - 1, p - 2); prime squares give a connected count of
    2p^2 - 3p - 1 with no distinct-count formula; orders with at least two
    prime factors multiply the per-prime-power counts (a sum is connected
    exactly when every summand is). Returns None for p^e with e >= 3,
    and None in a slot with no formula.
    """
    if n < 2:
        raise ValueError(f"no prediction for order {n}")
    fact = factorize(n)
    if len(fact) == 1:
        ((p, e),) = fact.items()
        if e == 1:
            return (p - 1, p - 2)
        if e == 2:
            return (None, 2 * p * p - 3 * p - 1)
        return None
    distinct, connected = 1, 1
    for p, e in fact.items():
        q = p ** e
        report = classify_order(q, allow_large=q > DEFAULT_MAX_ORDER)
        distinct *= report.distinct_count
        connected *= report.connected_count
    return (distinct, connected)


def poly_connected(p: int, poly: Polynomial) -> bool:
    """Connectivity of Z_p[t]/(h) read off the coefficients: h(1) != 0 mod p.

    1 - t is surjective on the quotient exactly when t - 1 does not divide
    h, i.e. when the coefficient sum h(1) is nonzero mod p. (A frequently
    quoted form of this criterion, "connected when the non-leading
    coefficients sum to -1", has the sign inverted; that condition is
    equivalent to h(1) = 0 and characterizes the disconnected case.)
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if poly.modulus != p:
        raise ValueError(f"polynomial is over Z_{poly.modulus}, not Z_{p}")
    return sum(poly.coeffs) % p != 0
