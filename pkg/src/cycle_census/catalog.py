"""Constructors for the permutation-group families under study.

Covers regular cyclic groups, holomorphs of cyclic groups, symmetric and
alternating groups, imprimitive wreath products, projective linear groups
PGL_d(q) and their field-automorphism extensions, Singer cycles, the
point-hyperplane duality extension of PGL_3(q), the sharp family of
degree 2*3^k, and loading of validated generator files for the sporadic
entries (M11, M23, PSL2(11) on 11 points).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from pathlib import Path

from .gf import FqField, make_field
from .ntheory import (prime_power, smallest_primitive_root,
                      unit_group_generators)
from .permutations import (CycleParseError, PermGroup, Permutation,
                           format_cycles, group_from_generators,
                           parse_permutation)

MAX_DEGREE = 64

DATA_ENV_VAR = "CYCLE_CENSUS_DATA"


class GroupSpecError(ValueError):
    """Bad group-spec file: syntax, degree, or order validation failure."""


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


# elementary families ---------------------------------------------------

def cyclic_regular(n: int) -> PermGroup:
    """The cyclic group generated by the n-cycle (1,2,...,n)."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    images = tuple((i + 1) % n for i in range(n))
    return group_from_generators(n, [Permutation(images)])


def holomorph_cyclic(m: int) -> PermGroup:
    """All maps i -> u*i + t on Z/m; order m * phi(m).

    For prime m this is AGL_1(m), the full normalizer of a regular cyclic
    group inside the symmetric group.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    translation = Permutation(tuple((i + 1) % m for i in range(m)))
    gens = [translation]
    for u in unit_group_generators(m):
        gens.append(Permutation(tuple((u * i) % m for i in range(m))))
    return group_from_generators(m, gens)


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return group_from_generators(1, [Permutation.identity(1)])
    cycle = Permutation(tuple((i + 1) % n for i in range(n)))
    if n == 2:
        return group_from_generators(2, [cycle])
    swap = parse_permutation("(1,2)", n)
    return group_from_generators(n, [swap, cycle])


def alternating(n: int) -> PermGroup:
    if n < 3:
        raise ValueError("alternating groups need degree at least 3")
    three = parse_permutation("(1,2,3)", n)
    if n == 3:
        return group_from_generators(3, [three])
    if n % 2 == 1:
        long = Permutation(tuple((i + 1) % n for i in range(n)))
    else:
        # (2,3,...,n) is an even (n-1)-cycle
        long = parse_permutation(
            "(" + ",".join(str(i) for i in range(2, n + 1)) + ")", n)
    return group_from_generators(n, [three, long])


def wreath_imprimitive(inner: PermGroup, outer: PermGroup) -> PermGroup:
    """Imprimitive wreath product: r blocks of size s, blocks permuted by outer.

    Point i of block j (both 1-based) is point (j-1)*s + i; the order is
    |inner|^r * |outer|.
    """
    s, r = inner.degree, outer.degree
    n = s * r
    if n > MAX_DEGREE:
        raise ValueError(f"wreath degree {n} exceeds supported maximum {MAX_DEGREE}")
    gens = []
    for a in inner.raw_generators():
        for j in range(r):
            images = list(range(n))
            for i in range(s):
                images[j * s + i] = j * s + a[i]
            gens.append(Permutation(tuple(images)))
    for b in outer.raw_generators():
        images = [0] * n
        for j in range(r):
            for i in range(s):
                images[j * s + i] = b[j] * s + i
        gens.append(Permutation(tuple(images)))
    return group_from_generators(n, gens)


# projective linear groups ----------------------------------------------

def projective_points(field: FqField, d: int) -> list[tuple[int, ...]]:
    """1-dimensional subspaces of GF(q)^d as normalized representatives.

    Representatives have first nonzero coordinate 1 and are listed in
    lexicographic order of their coordinate vectors (field elements
    ordered by their integer encoding).
    """
    pts = []
    for vec in itertools.product(field.elements(), repeat=d):
        for c in vec:
            if c != 0:
                if c == 1:
                    pts.append(vec)
                break
    return pts


def _normalize_point(field: FqField, vec: tuple[int, ...]) -> tuple[int, ...]:
    for c in vec:
        if c != 0:
            if c == 1:
                return vec
            inv = field.inv(c)
            return tuple(field.mul(inv, w) for w in vec)
    raise ValueError("zero vector does not span a projective point")


def _matrix_point_perm(field: FqField, mat, points, index) -> Permutation:
    images = []
    for v in points:
        w = tuple(_dot(field, row, v) for row in mat)
        images.append(index[_normalize_point(field, w)])
    return Permutation(tuple(images))


def _dot(field: FqField, row, v) -> int:
    acc = 0
    for a, b in zip(row, v):
        if a and b:
            acc = field.add(acc, field.mul(a, b))
    return acc


def _gl_generators(field: FqField, d: int):
    """Matrices generating GL_d(q): a transvection, a basis cycle, and a
    diagonal torus generator (omitted for q = 2 where it is trivial)."""
    one, zero = field.one, field.zero
    ident = [[one if i == j else zero for j in range(d)] for i in range(d)]
    transvection = [row[:] for row in ident]
    transvection[0][1] = one
    basis_cycle = [[one if i == (j + 1) % d else zero for j in range(d)]
                   for i in range(d)]
    mats = [transvection, basis_cycle]
    if field.q > 2:
        diag = [row[:] for row in ident]
        diag[0][0] = field.primitive_element()
        mats.append(diag)
    return mats


def pgl_order(d: int, q: int) -> int:
    order = q ** (d * (d - 1) // 2)
    for i in range(2, d + 1):
        order *= q ** i - 1
    return order


def _check_pgl_params(d: int, q: int) -> tuple[int, int]:
    if d < 2:
        raise ValueError("projective dimension parameter d must be at least 2")
    p, e = prime_power(q)
    n = (q ** d - 1) // (q - 1)
    if n > MAX_DEGREE:
        raise ValueError(f"projective degree {n} exceeds supported maximum {MAX_DEGREE}")
    return p, e


def pgl(d: int, q: int) -> PermGroup:
    """PGL_d(q) acting on the (q^d - 1)/(q - 1) projective points."""
    p, e = _check_pgl_params(d, q)
    field = make_field(p, e)
    points = projective_points(field, d)
    index = {v: i for i, v in enumerate(points)}
    gens = [_matrix_point_perm(field, mat, points, index)
            for mat in _gl_generators(field, d)]
    return group_from_generators(len(points), gens)


def frobenius_point_perm(d: int, q: int) -> Permutation:
    """Coordinatewise p-th power map on projective points."""
    p, e = _check_pgl_params(d, q)
    field = make_field(p, e)
    points = projective_points(field, d)
    index = {v: i for i, v in enumerate(points)}
    images = [index[_normalize_point(field, tuple(field.frobenius(c) for c in v))]
              for v in points]
    return Permutation(tuple(images))


def pgammal(d: int, q: int) -> PermGroup:
    """PGL_d(q) extended by the field automorphisms; index e = log_p q."""
    p, e = _check_pgl_params(d, q)
    base = pgl(d, q)
    if e == 1:
        return base
    gens = list(base.generators) + [frobenius_point_perm(d, q)]
    return group_from_generators(base.degree, gens)


def _gauss_inverse_mod_p(matrix: list[list[int]], p: int) -> list[list[int]]:
    n = len(matrix)
    aug = [row[:] + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] % p != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular mod p")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [(x * inv) % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [(a - factor * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def singer_cycle(d: int, q: int) -> Permutation:
    """An n-cycle of PGL_d(q) from multiplication by a generator of GF(q^d)*.

    GF(q^d) is identified with GF(q)^d through the basis 1, x, ..., x^(d-1),
    where x is the canonical generator of the big field; multiplication by
    x then permutes the projective points in a single cycle.
    """
    p, e = _check_pgl_params(d, q)
    if p ** (e * d) > 128:
        raise ValueError(f"GF({q}^{d}) is larger than the supported field range")
    big = make_field(p, e * d)
    small = make_field(p, e)

    # embed the small field: send its canonical generator to the least
    # power of the subfield generator that satisfies the small modulus
    if e == 1:
        embed = list(range(p))
    else:
        u = big.pow_(big.x, (big.q - 1) // (small.q - 1))
        root = None
        cand = big.one
        for _ in range(small.q - 1):
            cand = big.mul(cand, u)
            acc = big.zero
            # evaluate the small modulus at cand, Horner from the top
            for coeff in reversed(small.modulus):
                acc = big.add(big.mul(acc, cand), coeff % p)
            if acc == big.zero:
                root = cand
                break
        if root is None:
            raise AssertionError("small-field modulus has no root in the big field")
        embed = [0] * small.q
        root_pows = [big.one]
        for _ in range(1, small.e):
            root_pows.append(big.mul(root_pows[-1], root))
        for a in range(small.q):
            acc = big.zero
            for c, pw in zip(small.coeffs(a), root_pows):
                # prime-field scalars embed as themselves
                acc = big.add(acc, big.mul(c, pw))
            embed[a] = acc

    # change of basis: columns are the GF(p)-digit vectors of y^j * x^i,
    # y the embedded small-field generator, x the big-field generator
    dim = e * d
    x_pows = [big.one]
    for _ in range(1, d):
        x_pows.append(big.mul(x_pows[-1], big.x))
    y_pows = [embed[small.from_coeffs(tuple(1 if t == j else 0 for t in range(e)))]
              for j in range(e)] if e > 1 else [big.one]
    columns = []
    for i in range(d):
        for j in range(e):
            columns.append(big.coeffs(big.mul(y_pows[j], x_pows[i])))
    basis_matrix = [[columns[c][r] for c in range(dim)] for r in range(dim)]
    inverse_basis = _gauss_inverse_mod_p(basis_matrix, p)

    def lift(vec: tuple[int, ...]) -> int:
        acc = big.zero
        for i, c in enumerate(vec):
            acc = big.add(acc, big.mul(embed[c], x_pows[i]))
        return acc

    def coords(alpha: int) -> tuple[int, ...]:
        digits = big.coeffs(alpha)
        solved = [sum(inverse_basis[r][c] * digits[c] for c in range(dim)) % p
                  for r in range(dim)]
        return tuple(small.from_coeffs(tuple(solved[i * e:(i + 1) * e]))
                     for i in range(d))

    points = projective_points(small, d)
    index = {v: i for i, v in enumerate(points)}
    images = []
    for v in points:
        w = coords(big.mul(lift(v), big.x))
        images.append(index[_normalize_point(small, w)])
    return Permutation(tuple(images))


def duality_extension(d: int, q: int) -> PermGroup:
    """PGL_3(q) plus field automorphisms, extended by point-hyperplane duality.

    Acts on 2n points: 1..n are the projective points, n+1..2n the
    hyperplanes (indexed by the same normalized coordinate vectors); the
    extra generator swaps point i with hyperplane i.
    """
    if d != 3 or q not in (2, 3):
        raise ValueError("duality extension is built for d = 3 and q in {2, 3}")
    p, e = _check_pgl_params(d, q)
    field = make_field(p, e)
    points = projective_points(field, d)
    index = {v: i for i, v in enumerate(points)}
    n = len(points)

    hyperplane_sets = []
    for w in points:
        member = frozenset(i for i, v in enumerate(points) if _dot(field, w, v) == 0)
        hyperplane_sets.append(member)
    set_index = {s: j for j, s in enumerate(hyperplane_sets)}

    def paired(point_perm: Permutation) -> Permutation:
        pi = point_perm.images
        images = list(pi)
        for j, s in enumerate(hyperplane_sets):
            moved = frozenset(pi[i] for i in s)
            images.append(n + set_index[moved])
        return Permutation(tuple(images))

    gens = [paired(_matrix_point_perm(field, mat, points, index))
            for mat in _gl_generators(field, d)]
    if e > 1:
        gens.append(paired(frobenius_point_perm(d, q)))
    swap = Permutation(tuple((i + n) % (2 * n) for i in range(2 * n)))
    gens.append(swap)
    return group_from_generators(2 * n, gens)


# the sharp family -------------------------------------------------------

def sharpness_group(k: int) -> PermGroup:
    """Degree 2*3^k subgroup of Hol(C_{3^k}) wr C_2 with diagonal multiplier.

    Generated by a translation on each of the two blocks, the diagonal
    multiplication (u, u) for a generator u of the units of Z/3^k, and the
    block swap; order 2 * 3^(2k) * phi(3^k).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    m = 3 ** k
    n = 2 * m
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds supported maximum {MAX_DEGREE}")
    u = smallest_primitive_root(m)

    def block_translation(block: int) -> Permutation:
        images = list(range(n))
        off = block * m
        for i in range(m):
            images[off + i] = off + (i + 1) % m
        return Permutation(tuple(images))

    diag = Permutation(tuple((i // m) * m + (u * (i % m)) % m for i in range(n)))
    swap = Permutation(tuple((i + m) % n for i in range(n)))
    return group_from_generators(
        n, [block_translation(0), block_translation(1), diag, swap])


# group-spec files --------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    """Parsed group-spec text: a named generator list with optional order."""

    name: str
    degree: int
    generator_texts: tuple[str, ...]
    expected_order: int | None

    def build(self) -> PermGroup:
        gens = []
        for text in self.generator_texts:
            try:
                gens.append(parse_permutation(text, self.degree))
            except CycleParseError as exc:
                raise GroupSpecError(f"{self.name}: bad generator {text!r}: {exc}") from exc
        group = group_from_generators(self.degree, gens)
        if self.expected_order is not None and group.order != self.expected_order:
            raise GroupSpecError(
                f"{self.name}: constructed order {group.order} "
                f"does not match expected_order {self.expected_order}")
        return group


def parse_group_spec(text: str, name: str = "<string>") -> GroupSpec:
    """Parse the group-spec format.

    Grammar: optional comment lines starting with '#'; one line
    "degree N"; one line "gen <cycles>" per generator; blank lines are
    ignored.  A comment of the exact form "# expected_order N" declares
    the order the constructed group must have.
    """
    degree = None
    expected = None
    gens: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("expected_order"):
                parts = body.split()
                if len(parts) != 2 or not parts[1].isdigit():
                    raise GroupSpecError(
                        f"{name}:{lineno}: malformed expected_order annotation")
                expected = int(parts[1])
            continue
        if line.startswith("degree"):
            if degree is not None:
                raise GroupSpecError(f"{name}:{lineno}: duplicate degree line")
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise GroupSpecError(f"{name}:{lineno}: malformed degree line")
            degree = int(parts[1])
            continue
        if line.startswith("gen"):
            if degree is None:
                raise GroupSpecError(f"{name}:{lineno}: generator before degree line")
            gens.append(line[3:].strip())
            continue
        raise GroupSpecError(f"{name}:{lineno}: unrecognized line {line!r}")
    if degree is None:
        raise GroupSpecError(f"{name}: missing degree line")
    if not gens:
        raise GroupSpecError(f"{name}: no generators")
    return GroupSpec(name=name, degree=degree, generator_texts=tuple(gens),
                     expected_order=expected)


def load_group_spec(path) -> PermGroup:
    """Load and validate a .grp file; order mismatches fail loudly."""
    path = Path(path)
    spec = parse_group_spec(path.read_text(), name=path.name)
    return spec.build()


def load_named(name: str) -> PermGroup:
    """Load <name>.grp from the data directory (see CYCLE_CENSUS_DATA)."""
    return load_group_spec(data_dir() / f"{name}.grp")


def write_group_spec(group: PermGroup, name: str, comment: str = "") -> str:
    """Render a group in the group-spec format, with its order annotation."""
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}".rstrip())
    lines.append(f"# expected_order {group.order}")
    lines.append(f"degree {group.degree}")
    for g in group.generators:
        lines.append(f"gen {format_cycles(g)}")
    return "\n".join(lines) + "\n"


# family codes and the standard instance list -----------------------------

def family_instance(code: str) -> PermGroup:
    """Build a group from a compact code: c<N>, s<N>, a<N>, hol<N>, sharp<K>."""
    code = code.strip().lower()
    for prefix, builder in (("hol", holomorph_cyclic), ("sharp", sharpness_group),
                            ("c", cyclic_regular), ("s", symmetric),
                            ("a", alternating)):
        if code.startswith(prefix) and code[len(prefix):].isdigit():
            return builder(int(code[len(prefix):]))
    raise ValueError(f"unknown family code {code!r} "
                     "(expected c<N>, s<N>, a<N>, hol<N>, or sharp<K>)")


def standard_instances(include_m23: bool = False) -> list[tuple[str, PermGroup]]:
    """The fixed catalog sweep: every family at its standard parameters.

    Wreath products are taken over all ordered pairs of the degree <= 9
    instances whose product degree stays <= 18; duplicate generator sets
    are constructed only once.
    """
    out: list[tuple[str, PermGroup]] = []
    pool: list[tuple[str, PermGroup]] = []
    seen_gens = set()

    def add(name: str, group: PermGroup, to_pool: bool = False) -> None:
        key = (group.degree, tuple(g.images for g in group.generators))
        if key in seen_gens:
            return
        seen_gens.add(key)
        out.append((name, group))
        if to_pool and 2 <= group.degree <= 9:
            pool.append((name, group))

    for n in range(1, 25):
        add(f"c{n}", cyclic_regular(n), to_pool=True)
    for m in range(2, 28):
        add(f"hol{m}", holomorph_cyclic(m), to_pool=True)
    for n in range(2, 9):
        add(f"s{n}", symmetric(n), to_pool=True)
    for n in range(3, 9):
        add(f"a{n}", alternating(n), to_pool=True)

    for iname, inner in list(pool):
        for oname, outer in list(pool):
            if inner.degree * outer.degree <= 18:
                add(f"{iname}_wr_{oname}", wreath_imprimitive(inner, outer))

    for d, q in ((2, 4), (2, 5), (2, 7), (2, 8), (3, 2), (3, 3)):
        add(f"pgl({d},{q})", pgl(d, q))
        _, e = prime_power(q)
        if e > 1:
            add(f"pgammal({d},{q})", pgammal(d, q))

    add("sharpness(1)", sharpness_group(1))
    add("sharpness(2)", sharpness_group(2))
    add("duality(3,2)", duality_extension(3, 2))
    add("m11", load_named("m11"))
    add("psl2_11", load_named("psl2_11"))
    if include_m23:
        add("m23", load_named("m23"))
    return out
