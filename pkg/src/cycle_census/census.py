"""The n-cycle census: counts, conjugacy classes, subgroup counts, verdicts.

For a transitive group G of degree n the census enumerates every element
(below a hard cap), collects the n-cycles, partitions them into G-classes,
and derives the quantities of interest: the number of cyclic transitive
subgroups (= n-cycle count / phi(n)), the bound |G|/n, whether the bound
is attained, and, in the attained case, solvability plus a prime-tower
certificate for the wreath-like block structure.

Conjugacy of two n-cycles sigma, tau is decidable with n membership
tests: every relabeling carrying sigma to tau lies in the coset <sigma>x0
for any one such relabeling x0, because the centralizer of an n-cycle in
the full symmetric group is exactly <sigma>.  Class partitioning itself
walks conjugation orbits under the generators, which is faster and gives
the same classes; the two routes are cross-checked in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from multiprocessing import get_context

from . import catalog
from .blocks import (all_minimal_block_systems, block_action,
                     block_constituent, derived_series)
from .ntheory import euler_phi, is_prime
from .permutations import (DEFAULT_ELEMENT_CAP, CapExceeded,
                           NotTransitiveError, PermGroup, Permutation,
                           _compose, _contains_raw, _conjugate, _inverse,
                           _is_full_cycle, _iter_raw, group_from_generators,
                           is_transitive, random_element)

__all__ = [
    "CensusReport", "CensusInvariantError", "euler_phi", "count_n_cycles",
    "n_cycle_classes", "cyclic_transitive_count", "are_conjugate_n_cycles",
    "normalizer_order_of_cycle", "theorem_verdict", "extremal_structure_check",
    "validate_report", "run_sweep", "SweepRow",
]


class CensusInvariantError(RuntimeError):
    """An exact identity the census relies on failed; treat as a build break."""


@dataclass(frozen=True)
class CensusReport:
    """All census quantities for one transitive group.

    bound is the exact rational |G|/n; equality means the cyclic
    transitive subgroup count attains it.  solvable is only computed when
    equality holds (None otherwise); structure_verdict is one of "pass",
    "fail", "not_applicable"; tower is the prime tower certificate when
    the structure check passed.  count_divides_order reports whether the
    subgroup count divides |G| (None when the count is zero).
    """

    degree: int
    order: int
    n_cycle_count: int
    class_count: int
    cyclic_transitive_count: int
    bound: Fraction
    phi_n: int
    equality: bool
    solvable: bool | None
    structure_verdict: str
    count_divides_order: bool | None
    tower: tuple[int, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "n_cycle_count": self.n_cycle_count,
            "class_count": self.class_count,
            "cyclic_transitive_count": self.cyclic_transitive_count,
            "bound": {"num": self.bound.numerator, "den": self.bound.denominator},
            "phi_n": self.phi_n,
            "equality": self.equality,
            "solvable": self.solvable,
            "structure_verdict": self.structure_verdict,
            "count_divides_order": self.count_divides_order,
            "tower": list(self.tower) if self.tower is not None else None,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "CensusReport":
        return CensusReport(
            degree=d["degree"],
            order=d["order"],
            n_cycle_count=d["n_cycle_count"],
            class_count=d["class_count"],
            cyclic_transitive_count=d["cyclic_transitive_count"],
            bound=Fraction(d["bound"]["num"], d["bound"]["den"]),
            phi_n=d["phi_n"],
            equality=d["equality"],
            solvable=d["solvable"],
            structure_verdict=d["structure_verdict"],
            count_divides_order=d["count_divides_order"],
            tower=tuple(d["tower"]) if d["tower"] is not None else None,
        )


# collection --------------------------------------------------------------

def _collect_slice(args):
    group, points = args
    return [t for t in _iter_raw(group, points) if _is_full_cycle(t)]


def _top_slices(G: PermGroup, workers: int) -> list[list[int]]:
    points = sorted(G.transversals[0]) if G.base else [0]
    return [points[w::workers] for w in range(workers) if points[w::workers]]


def _collect_n_cycles(G: PermGroup, cap: int, workers: int = 1) -> list[tuple[int, ...]]:
    if G.order > cap:
        raise CapExceeded(G.order, cap)
    if workers <= 1 or not G.base or G.order < 50_000:
        return [t for t in _iter_raw(G) if _is_full_cycle(t)]
    slices = _top_slices(G, workers)
    with get_context("fork").Pool(len(slices)) as pool:
        chunks = pool.map(_collect_slice, [(G, pts) for pts in slices])
    merged: list[tuple[int, ...]] = []
    for chunk in chunks:
        merged.extend(chunk)
    return merged


def count_n_cycles(G: PermGroup, cap: int = DEFAULT_ELEMENT_CAP,
                   workers: int = 1) -> int:
    """Exact number of n-cycles, by exhaustive enumeration under the cap."""
    if not is_transitive(G):
        raise NotTransitiveError("the census requires a transitive group")
    return len(_collect_n_cycles(G, cap, workers))


# conjugacy ---------------------------------------------------------------

def _cycle_order_from(t: tuple[int, ...], start: int) -> list[int]:
    out = [start]
    x = t[start]
    while x != start:
        out.append(x)
        x = t[x]
    return out


def are_conjugate_n_cycles(G: PermGroup, sigma: Permutation,
                           tau: Permutation) -> bool:
    """Whether two n-cycles are conjugate inside G.

    Tests the n candidate conjugators sigma^k * x0 for membership, where
    x0 is the relabeling matching up the two cycles.
    """
    if not (sigma.is_n_cycle() and tau.is_n_cycle()):
        raise ValueError("both permutations must be full cycles")
    if sigma.degree != G.degree or tau.degree != G.degree:
        raise ValueError("degree mismatch with the group")
    return _are_conjugate_raw(G, sigma.images, tau.images)


def _are_conjugate_raw(G: PermGroup, s: tuple[int, ...], t: tuple[int, ...]) -> bool:
    n = len(s)
    a = _cycle_order_from(s, 0)
    b = _cycle_order_from(t, 0)
    x0 = [0] * n
    for ai, bi in zip(a, b):
        x0[ai] = bi
    x0 = tuple(x0)
    cand = x0
    for _ in range(n):
        if _contains_raw(G, cand):
            return True
        cand = _compose(s, cand)
    return False


def _conjugacy_orbits(G: PermGroup,
                      cycles: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], int]]:
    """Partition the n-cycles into G-conjugacy orbits.

    Returns (minimal representative, orbit size) per class, sorted by
    representative, independent of the input order.
    """
    conjugators = [(g.images, _inverse(g.images)) for g in G.generators]
    remaining = set(cycles)
    classes = []
    for start in sorted(cycles):
        if start not in remaining:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g, ginv in conjugators:
                    y = _conjugate(x, g, ginv)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        if not orbit <= remaining:
            raise CensusInvariantError(
                "conjugation orbit left the collected n-cycle set")
        remaining -= orbit
        classes.append((min(orbit), len(orbit)))
    classes.sort(key=lambda item: item[0])
    return classes


def n_cycle_classes(G: PermGroup, cap: int = DEFAULT_ELEMENT_CAP,
                    workers: int = 1) -> tuple[int, tuple[Permutation, ...]]:
    """Number of conjugacy classes of n-cycles, with one representative each."""
    if not is_transitive(G):
        raise NotTransitiveError("the census requires a transitive group")
    cycles = _collect_n_cycles(G, cap, workers)
    classes = _conjugacy_orbits(G, cycles)
    return len(classes), tuple(Permutation(rep) for rep, _ in classes)


def cyclic_transitive_count(G: PermGroup, cap: int = DEFAULT_ELEMENT_CAP,
                            workers: int = 1) -> int:
    """Number of cyclic transitive subgroups: n-cycle count / phi(n), exactly."""
    if not is_transitive(G):
        raise NotTransitiveError("the census requires a transitive group")
    count = len(_collect_n_cycles(G, cap, workers))
    phi = euler_phi(G.degree)
    quotient, remainder = divmod(count, phi)
    if remainder:
        raise CensusInvariantError(
            f"n-cycle count {count} is not divisible by phi({G.degree}) = {phi}")
    return quotient


def normalizer_order_of_cycle(G: PermGroup, sigma: Permutation) -> int:
    """Order of the normalizer of <sigma> in G, for an n-cycle sigma.

    The normalizer of <sigma> in the full symmetric group has exactly
    n * phi(n) elements (cycle rotations composed with unit-multiplier
    relabelings); each is tested for membership in G.
    """
    if not sigma.is_n_cycle():
        raise ValueError("normalizer_order_of_cycle needs a full cycle")
    if not contains_safe(G, sigma):
        raise ValueError("the cycle does not lie in the group")
    n = G.degree
    if n == 1:
        return 1
    a = _cycle_order_from(sigma.images, 0)
    count = 0
    for u in range(1, n):
        if gcd(u, n) != 1:
            continue
        for t in range(n):
            images = [0] * n
            for i in range(n):
                images[a[i]] = a[(u * i + t) % n]
            if _contains_raw(G, tuple(images)):
                count += 1
    return count


def contains_safe(G: PermGroup, p: Permutation) -> bool:
    return p.degree == G.degree and _contains_raw(G, p.images)


# verdicts ----------------------------------------------------------------

def _has_full_cycle(G: PermGroup, cap: int) -> bool:
    if G.order > cap:
        raise CapExceeded(G.order, cap)
    return any(_is_full_cycle(t) for t in _iter_raw(G))


def _structure_tower(G: PermGroup, cap: int) -> tuple[bool, tuple[int, ...] | None]:
    """Search for a chain of invariant partitions with prime ratios.

    Each step must induce, on the sub-blocks inside one super-block, a
    group that sits between C_p and AGL_1(p): degree p, containing a
    p-cycle, order dividing p(p-1).  Greedy over minimal systems with
    backtracking; the first passing tower is reported, finest step first.
    """

    def rec(H: PermGroup):
        m = H.degree
        if m == 1:
            return []
        systems = all_minimal_block_systems(H)
        if not systems:
            if is_prime(m) and (m * (m - 1)) % H.order == 0 \
                    and _has_full_cycle(H, cap):
                return [m]
            return None
        for system in systems:
            s = system.s
            if not is_prime(s):
                continue
            constituent = block_constituent(H, system, 0, cap=cap)
            if (s * (s - 1)) % constituent.order != 0:
                continue
            if not _has_full_cycle(constituent, cap):
                continue
            image, _ = block_action(H, system)
            rest = rec(image)
            if rest is not None:
                return [s] + rest
        return None

    tower = rec(G)
    if tower is None:
        return False, None
    return True, tuple(tower)


def extremal_structure_check(G: PermGroup, cap: int = DEFAULT_ELEMENT_CAP):
    """Certify the block structure of a group attaining the bound.

    Only meaningful when the cyclic-transitive-subgroup count equals
    |G|/n; raises ValueError otherwise.  Returns (passed, tower).
    """
    report = theorem_verdict(G, cap=cap, with_structure=False)
    if not report.equality:
        raise ValueError("extremal structure check requires the bound to be attained")
    _, solvable = derived_series(G)
    passed, tower = _structure_tower(G, cap)
    return (passed and solvable), tower


def _verdict_full(G: PermGroup, cap: int, workers: int = 1,
                  with_structure: bool = True):
    if not is_transitive(G):
        raise NotTransitiveError("the census requires a transitive group")
    n = G.degree
    order = G.order
    phi = euler_phi(n)
    violations: list[str] = []

    cycles = _collect_n_cycles(G, cap, workers)
    count = len(cycles)
    classes = _conjugacy_orbits(G, cycles) if cycles else []
    class_count = len(classes)

    class_size = order // n
    for rep, size in classes:
        if size != class_size:
            violations.append(
                f"class of {Permutation(rep)} has size {size}, expected |G|/n = {class_size}")

    subcount, remainder = divmod(count, phi)
    if remainder:
        violations.append(
            f"n-cycle count {count} not divisible by phi({n}) = {phi}")
    bound = Fraction(order, n)
    equality = remainder == 0 and Fraction(subcount) == bound
    if class_count > phi:
        violations.append(f"class count {class_count} exceeds phi({n}) = {phi}")
    if subcount > bound:
        violations.append(f"subgroup count {subcount} exceeds bound {bound}")

    solvable = None
    verdict = "not_applicable"
    tower = None
    if equality and with_structure:
        _, solvable = derived_series(G)
        passed, tower = _structure_tower(G, cap)
        verdict = "pass" if (solvable and passed) else "fail"
        if not solvable:
            violations.append("bound attained by a non-solvable group")

    report = CensusReport(
        degree=n, order=order, n_cycle_count=count, class_count=class_count,
        cyclic_transitive_count=subcount, bound=bound, phi_n=phi,
        equality=equality, solvable=solvable, structure_verdict=verdict,
        count_divides_order=(order % subcount == 0) if subcount else None,
        tower=tower)
    return report, violations


def theorem_verdict(G: PermGroup, cap: int = DEFAULT_ELEMENT_CAP,
                    workers: int = 1, with_structure: bool = True) -> CensusReport:
    """Full census of one group; raises CensusInvariantError on any
    violated identity (which would mean a bug or a counterexample)."""
    report, violations = _verdict_full(G, cap, workers, with_structure)
    if violations:
        raise CensusInvariantError("; ".join(violations))
    return report


def validate_report(report: CensusReport) -> list[str]:
    """Re-check every exact identity a report must satisfy."""
    problems = []
    if report.n_cycle_count != report.cyclic_transitive_count * report.phi_n:
        problems.append("count != subgroup count * phi(n)")
    if report.n_cycle_count * report.degree != report.class_count * report.order:
        problems.append("class size identity fails")
    if report.class_count > report.phi_n:
        problems.append("class count exceeds phi(n)")
    if report.cyclic_transitive_count > report.bound:
        problems.append("subgroup count exceeds |G|/n")
    if report.equality and report.solvable is False:
        problems.append("equality without solvability")
    return problems


# the catalog sweep ---------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    name: str
    degree: int
    order: int
    status: str                      # "ok" | "skipped" | "violation"
    report: CensusReport | None
    detail: str = ""


def run_sweep(instance_cap: int = 200_000,
              subgroup_count: int = 200,
              subgroup_order_cap: int = 100_000,
              seed: int = 20240809,
              workers: int = 1,
              include_m23: bool = False) -> list[SweepRow]:
    """Census every standard catalog instance, then random subgroups.

    Instances above instance_cap are reported as skipped rather than
    sampled.  The random phase draws 2-generator subgroups of the
    catalog instances, keeping the transitive ones of order at most
    subgroup_order_cap, until subgroup_count of them have been censused.
    """
    rows: list[SweepRow] = []
    instances = catalog.standard_instances(include_m23=include_m23)

    for name, group in instances:
        if group.order > instance_cap:
            rows.append(SweepRow(name, group.degree, group.order, "skipped",
                                 None, f"order above sweep cap {instance_cap}"))
            continue
        report, violations = _verdict_full(group, cap=instance_cap,
                                           workers=workers)
        violations.extend(validate_report(report))
        if violations:
            rows.append(SweepRow(name, group.degree, group.order, "violation",
                                 report, "; ".join(violations)))
        else:
            rows.append(SweepRow(name, group.degree, group.order, "ok", report))

    rng = random.Random(seed)
    produced = 0
    attempts = 0
    max_attempts = 60 * subgroup_count
    while produced < subgroup_count and attempts < max_attempts:
        attempts += 1
        parent_name, parent = instances[rng.randrange(len(instances))]
        g1 = random_element(parent, rng)
        g2 = random_element(parent, rng)
        H = group_from_generators(parent.degree, [g1, g2])
        if H.order > subgroup_order_cap or not is_transitive(H):
            continue
        produced += 1
        name = f"rand{produced:03d}<{parent_name}"
        report, violations = _verdict_full(H, cap=subgroup_order_cap,
                                           workers=workers)
        violations.extend(validate_report(report))
        if violations:
            rows.append(SweepRow(name, H.degree, H.order, "violation",
                                 report, "; ".join(violations)))
        else:
            rows.append(SweepRow(name, H.degree, H.order, "ok", report))
    if produced < subgroup_count:
        rows.append(SweepRow("random-phase", 0, 0, "violation", None,
                             f"only {produced} random subgroups found in "
                             f"{max_attempts} attempts"))
    return rows
