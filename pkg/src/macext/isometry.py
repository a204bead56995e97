"""Groups acting on the alphabet, swc isometries and monomial extensions.

The alphabet A = M_{k x ell}(GF(q)) is acted on by GL_ell(GF(q)) (= Aut_R(A))
through right multiplication, so points are k-tuples of rows of length ell.
A monomial map with permutation ``perm`` and group elements ``gs`` sends a
word ``a`` to ``(a[perm[0]] gs[0], ..., a[perm[n-1]] gs[n-1])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Iterable, Mapping, Sequence

from ._config import BudgetExceeded, check_cap, group_cap, point_cap
from .construction import (AlphabetSpec, Certificate, CodeMap, ConstructionInapplicable,
                           construct_counterexample)
from .gf import FieldSpec
from .lattice import Subspace, enumerate_subspaces
from .linalg import MatrixFq, Row, kernel_fq, mat_mul, rank, vec_mat

Point = tuple[Row, ...]
Matrix = tuple[Row, ...]


def encode_point(a: Point, q: int) -> int:
    """Row-major, most significant entry first."""
    code = 0
    for row in a:
        for x in row:
            code = code * q + x
    return code


def decode_point(code: int, k: int, ell: int, q: int) -> Point:
    flat = []
    for _ in range(k * ell):
        flat.append(code % q)
        code //= q
    flat.reverse()
    return tuple(tuple(flat[r * ell:(r + 1) * ell]) for r in range(k))


def alphabet_points(alphabet: AlphabetSpec) -> list[Point]:
    F, k, ell = alphabet.field, alphabet.k, alphabet.ell
    check_cap(alphabet.point_count, point_cap(), "alphabet enumeration")
    rows = list(product(range(F.q), repeat=ell))
    return [tuple(p) for p in product(rows, repeat=k)]


def act(F: FieldSpec, a: Point, g: Matrix) -> Point:
    ell = len(g[0]) if g else 0
    return tuple(vec_mat(F, r, g, ell) for r in a)


def _mat_prod(F: FieldSpec, g: Matrix, h: Matrix) -> Matrix:
    return tuple(vec_mat(F, r, h, len(h[0])) for r in g)


@dataclass(frozen=True)
class AutGroup:
    """A finite subgroup of GL_ell(GF(q)), stored as a sorted element tuple."""

    field: FieldSpec
    ell: int
    elements: tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Matrix) -> bool:
        return g in set(self.elements)

    def identity(self) -> Matrix:
        return tuple(tuple(int(i == j) for j in range(self.ell)) for i in range(self.ell))

    def to_json(self) -> dict:
        return {"q": self.field.q, "ell": self.ell, "order": self.order,
                "elements": [[list(r) for r in g] for g in self.elements]}


def _is_invertible(F: FieldSpec, g: Matrix) -> bool:
    return rank(MatrixFq(F, len(g), len(g), g)) == len(g)


def general_linear(F: FieldSpec, ell: int) -> AutGroup:
    check_cap(F.q ** (ell * ell), group_cap(), "GL enumeration")
    rows = list(product(range(F.q), repeat=ell))
    elements = [g for g in product(rows, repeat=ell) if _is_invertible(F, g)]
    return AutGroup(F, ell, tuple(sorted(elements)))


def trivial_group(F: FieldSpec, ell: int) -> AutGroup:
    return AutGroup(F, ell, (tuple(tuple(int(i == j) for j in range(ell)) for i in range(ell)),))


def generate(F: FieldSpec, ell: int, gens: Iterable[Sequence[Sequence[int]]]) -> AutGroup:
    """Saturate the generators under multiplication (finite, so inverses come free)."""
    ident = tuple(tuple(int(i == j) for j in range(ell)) for i in range(ell))
    gens = [tuple(tuple(r) for r in g) for g in gens]
    for g in gens:
        if len(g) != ell or not _is_invertible(F, g):
            raise ValueError(f"generator {g} is not in GL_{ell}")
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = _mat_prod(F, h, g)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return AutGroup(F, ell, tuple(sorted(seen)))


def all_subgroups(G: AutGroup) -> list[AutGroup]:
    """Every subgroup of a small group, by joining cyclic subgroups to a fixed point."""
    F, ell = G.field, G.ell
    found = {generate(F, ell, [g]).elements for g in G.elements}
    while True:
        current = list(found)
        new = set()
        for a in current:
            for b in current:
                joined = generate(F, ell, list(a) + list(b)).elements
                if joined not in found:
                    new.add(joined)
        if not new:
            break
        found |= new
    return [AutGroup(F, ell, e) for e in sorted(found, key=lambda e: (len(e), e))]


@dataclass(frozen=True)
class OrbitPartition:
    points: tuple[Point, ...]
    orbit_of: Mapping[Point, int]
    representatives: tuple[Point, ...]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def members(self, oid: int) -> list[Point]:
        return [a for a in self.points if self.orbit_of[a] == oid]

    def labels(self) -> tuple[int, ...]:
        return tuple(self.orbit_of[a] for a in self.points)


def orbits(G: AutGroup, alphabet: AlphabetSpec) -> OrbitPartition:
    """Orbits of a -> a g; ids follow the smallest point of each orbit."""
    F = alphabet.field
    points = alphabet_points(alphabet)
    orbit_of: dict[Point, int] = {}
    reps = []
    for a in points:
        if a in orbit_of:
            continue
        oid = len(reps)
        reps.append(a)
        for g in G.elements:
            orbit_of[act(F, a, g)] = oid
    return OrbitPartition(tuple(points), orbit_of, tuple(reps))


def closure(G: AutGroup, alphabet: AlphabetSpec) -> AutGroup:
    """All of GL_ell fixing every G-orbit setwise."""
    F = alphabet.field
    part = orbits(G, alphabet)
    keep = [g for g in general_linear(F, G.ell).elements
            if all(part.orbit_of[act(F, a, g)] == part.orbit_of[a] for a in part.points)]
    return AutGroup(F, G.ell, tuple(keep))


def hamming_weight(word: Sequence[Point]) -> int:
    return sum(1 for a in word if any(any(r) for r in a))


def swc(word: Sequence[Point], partition: OrbitPartition) -> tuple[int, ...]:
    """Number of coordinates of the word in each orbit, indexed by orbit id."""
    counts = [0] * partition.count
    for a in word:
        counts[partition.orbit_of[a]] += 1
    return tuple(counts)


def _w_points(F: FieldSpec, m: int, k: int) -> Iterable[Point]:
    check_cap(F.q ** (k * m), point_cap(), "W enumeration")
    vectors = list(product(range(F.q), repeat=m))
    return product(vectors, repeat=k)


def _image_tables(code: CodeMap) -> list[dict[Row, Row]]:
    F = code.field
    vectors = list(product(range(F.q), repeat=code.m))
    return [{v: vec_mat(F, v, M.rows, code.ell) for v in vectors} for M in code.maps]


def is_swc_isometry(lam: CodeMap, mu: CodeMap, partition: OrbitPartition, k: int = 1) -> bool:
    """swc(lambda(w)) == swc(mu(w)) for every point w of W."""
    if lam.m != mu.m or lam.n != mu.n:
        return False
    tl, tm = _image_tables(lam), _image_tables(mu)
    for w in _w_points(lam.field, lam.m, k):
        a = [tuple(t[r] for r in w) for t in tl]
        b = [tuple(t[r] for r in w) for t in tm]
        if swc(a, partition) != swc(b, partition):
            return False
    return True


@dataclass(frozen=True)
class MonomialMap:
    perm: tuple[int, ...]
    gs: tuple[Matrix, ...]

    def apply(self, F: FieldSpec, word: Sequence[Point]) -> tuple[Point, ...]:
        return tuple(act(F, word[j], g) for j, g in zip(self.perm, self.gs))

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "gs": [[list(r) for r in g] for g in self.gs]}


def _transforms(lam: CodeMap, mu: CodeMap, Gbar: AutGroup) -> dict[tuple[int, int], list[Matrix]]:
    """For coordinate pairs (i, j): the g in Gbar with mu_i = lambda_j g."""
    products = {}
    for j, L in enumerate(lam.maps):
        for g in Gbar.elements:
            products[j, g] = tuple(vec_mat(lam.field, r, g, lam.ell) for r in L.rows)
    out = {}
    for i, Mu in enumerate(mu.maps):
        for j in range(lam.n):
            out[i, j] = [g for g in Gbar.elements if products[j, g] == Mu.rows]
    return out


def _preimage_counts(code: CodeMap, idx: int, partition: OrbitPartition, k: int) -> tuple[int, ...]:
    F = code.field
    table = _image_tables(CodeMap(F, code.m, code.ell, (code.maps[idx],)))[0]
    counts = [0] * partition.count
    for w in _w_points(F, code.m, k):
        counts[partition.orbit_of[tuple(table[r] for r in w)]] += 1
    return tuple(counts)


def extend_search(lam: CodeMap, mu: CodeMap, G: AutGroup, alphabet: AlphabetSpec,
                  budget: int = 10**7) -> MonomialMap | None:
    """A Gbar-monomial h with h o lambda = mu, or None.

    Pairs (i, j) are pruned by kernel equality and then by per-orbit preimage
    counts before any group element is tried; the surviving pairs are matched
    by backtracking in lexicographic order.
    """
    if lam.n != mu.n:
        return None
    Gbar = closure(G, alphabet)
    part = orbits(Gbar, alphabet)
    n, k = lam.n, alphabet.k
    kl, km = lam.kernels(), mu.kernels()
    counts_l: dict[int, tuple[int, ...]] = {}
    counts_m: dict[int, tuple[int, ...]] = {}
    work = 0
    options: list[list[tuple[int, Matrix]]] = []
    products = {}
    for i in range(n):
        opts = []
        for j in range(n):
            if kl[j] != km[i]:
                continue
            if j not in counts_l:
                counts_l[j] = _preimage_counts(lam, j, part, k)
            if i not in counts_m:
                counts_m[i] = _preimage_counts(mu, i, part, k)
            if counts_l[j] != counts_m[i]:
                continue
            for g in Gbar.elements:
                work += 1
                if work > budget:
                    raise BudgetExceeded(f"extension search exceeded budget {budget}")
                key = (j, g)
                if key not in products:
                    products[key] = mat_mul(lam.maps[j], MatrixFq(lam.field, lam.ell, lam.ell, g)).rows
                if products[key] == mu.maps[i].rows:
                    opts.append((j, g))
                    break
        if not opts:
            return None
        options.append(opts)

    chosen: list[tuple[int, Matrix]] = []
    used: set[int] = set()

    def backtrack(i: int) -> bool:
        if i == n:
            return True
        for j, g in options[i]:
            if j not in used:
                used.add(j)
                chosen.append((j, g))
                if backtrack(i + 1):
                    return True
                chosen.pop()
                used.discard(j)
        return False

    if not backtrack(0):
        return None
    return MonomialMap(tuple(j for j, _ in chosen), tuple(g for _, g in chosen))


def brute_force_extension(lam: CodeMap, mu: CodeMap, Gbar: AutGroup,
                          budget: int = 10**7) -> tuple[MonomialMap | None, int]:
    """Try every (perm, g_1..g_n) with g_i in Gbar; returns (witness, candidates tried).

    Gbar is used as given, so pass a closed group.
    """
    n = lam.n
    if mu.n != n:
        return None, 0
    total = factorial(n) * Gbar.order**n
    if total > budget:
        raise BudgetExceeded(f"{total} monomial candidates exceed budget {budget}")
    F, ell = lam.field, lam.ell
    prods = [[tuple(vec_mat(F, r, g, ell) for r in L.rows) for g in Gbar.elements] for L in lam.maps]
    targets = [M.rows for M in mu.maps]
    tried = 0
    for perm in permutations(range(n)):
        for gidx in product(range(Gbar.order), repeat=n):
            tried += 1
            if all(prods[perm[i]][gidx[i]] == targets[i] for i in range(n)):
                return MonomialMap(perm, tuple(Gbar.elements[x] for x in gidx)), tried
    return None, tried


def is_monomial_matrix(T: Matrix, n: int, ell: int, Gbar: AutGroup) -> MonomialMap | None:
    """Read a (n ell) x (n ell) matrix as a Gbar-monomial map when it is one."""
    perm, gs = [], []
    members = set(Gbar.elements)
    for i in range(n):
        nonzero = []
        for j in range(n):
            block = tuple(tuple(T[j * ell + r][i * ell:(i + 1) * ell]) for r in range(ell))
            if any(any(r) for r in block):
                nonzero.append((j, block))
        if len(nonzero) != 1 or nonzero[0][1] not in members:
            return None
        perm.append(nonzero[0][0])
        gs.append(nonzero[0][1])
    if sorted(perm) != list(range(n)):
        return None
    return MonomialMap(tuple(perm), tuple(gs))


def monomial_iff_isometry_check(alphabet: AlphabetSpec, n: int,
                                groups: Sequence[AutGroup], cap: int = 2**17) -> dict:
    """Exhaustively compare 'preserves swc_G on A^n' with 'is G-monomial'.

    Ranges over every linear endomorphism of A^n, i.e. every (n ell) x (n ell)
    matrix over the field acting on the right of each row.
    """
    F, k, ell = alphabet.field, alphabet.k, alphabet.ell
    if n == 0:
        return {"n": 0, "maps": 1, "groups": [], "holds": True}
    N = n * ell
    check_cap(F.q ** (N * N), cap, "endomorphism enumeration")
    rows = list(product(range(F.q), repeat=N))
    words = [tuple(p) for p in product(rows, repeat=k)]

    def split(x: Point) -> tuple[Point, ...]:
        return tuple(tuple(r[c * ell:(c + 1) * ell] for r in x) for c in range(n))

    setups = []
    for G in groups:
        Gbar = closure(G, alphabet)
        part = orbits(G, alphabet)
        base = [swc(split(x), part) for x in words]
        setups.append((G, Gbar, part, base))
    results = [{"group_order": G.order, "isometries": 0, "monomial": 0, "mismatches": 0} for G in groups]
    for T in product(rows, repeat=N):
        images = [split(tuple(vec_mat(F, r, T, N) for r in x)) for x in words]
        for res, (G, Gbar, part, base) in zip(results, setups):
            iso = all(swc(img, part) == b for img, b in zip(images, base))
            mono = is_monomial_matrix(T, n, ell, Gbar) is not None
            res["isometries"] += iso
            res["monomial"] += mono
            res["mismatches"] += iso != mono
    return {"n": n, "maps": F.q ** (N * N), "groups": results,
            "holds": all(r["mismatches"] == 0 for r in results)}


WeightFn = Mapping[Point, Fraction]


def hamming_weight_fn(alphabet: AlphabetSpec) -> dict[Point, Fraction]:
    return {a: Fraction(int(any(any(r) for r in a))) for a in alphabet_points(alphabet)}


def load_weight(data: Mapping[str, str], alphabet: AlphabetSpec) -> dict[Point, Fraction]:
    """Parse {point_encoding: rational string}; every point must be present."""
    F = alphabet.field
    omega = {}
    for key, value in data.items():
        code = int(key)
        if not 0 <= code < alphabet.point_count:
            raise ValueError(f"point encoding {code} out of range")
        omega[decode_point(code, alphabet.k, alphabet.ell, F.q)] = Fraction(value)
    missing = [a for a in alphabet_points(alphabet) if a not in omega]
    if missing:
        raise ValueError(f"weight undefined at {len(missing)} points (e.g. {encode_point(missing[0], F.q)})")
    return omega


def dump_weight(omega: WeightFn, q: int) -> dict[str, str]:
    return {str(encode_point(a, q)): str(v) for a, v in sorted(omega.items(), key=lambda kv: encode_point(kv[0], q))}


def weight_symmetry_group(omega: WeightFn, alphabet: AlphabetSpec) -> AutGroup:
    F = alphabet.field
    keep = [g for g in general_linear(F, alphabet.ell).elements
            if all(omega[act(F, a, g)] == w for a, w in omega.items())]
    return AutGroup(F, alphabet.ell, tuple(keep))


def weight_preserved(lam: CodeMap, mu: CodeMap, omega: WeightFn, k: int) -> bool:
    """sum_i omega(lambda_i(w)) == sum_i omega(mu_i(w)) for every w in W."""
    tl, tm = _image_tables(lam), _image_tables(mu)
    for w in _w_points(lam.field, lam.m, k):
        a = sum(omega[tuple(t[r] for r in w)] for t in tl)
        b = sum(omega[tuple(t[r] for r in w)] for t in tm)
        if a != b:
            return False
    return True


def unextendable_for_weight(omega: WeightFn, alphabet: AlphabetSpec,
                            m: int | None = None) -> tuple[Certificate, dict]:
    if alphabet.ell <= alphabet.k:
        raise ConstructionInapplicable("cyclic socle: extension property holds, no counterexample")
    cert = construct_counterexample(alphabet, m)
    U = weight_symmetry_group(omega, alphabet)
    preserving = weight_preserved(cert.lam, cert.mu, omega, alphabet.k)
    ext = extend_search(cert.lam, cert.mu, U, alphabet)
    report = {
        "symmetry_group_order": U.order,
        "omega_preserving": "pass" if preserving else "fail",
        "extension": "none found" if ext is None else ext.to_json(),
        "ok": preserving and ext is None,
    }
    return cert, report


@dataclass
class PseudoInjectivity:
    verdict: bool
    witness: tuple[Subspace, Matrix] | None
    code_verdict: bool
    agree: bool

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            B, phi = self.witness
            w = {"B": B.to_json(), "images": [list(r) for r in phi]}
        return {"pseudo_injective": self.verdict, "witness": w,
                "length1_code_verdict": self.code_verdict, "agree": self.agree}


def g_pseudo_injective(alphabet: AlphabetSpec, G: AutGroup) -> PseudoInjectivity:
    """Decide G-pseudo-injectivity two ways and compare.

    Definition: every injective orbit-respecting B -> A extends to Gbar.
    Codes: every swc_G isometry of a length-1 code B in A^1 extends to a
    G-monomial map.
    """
    F, k, ell = alphabet.field, alphabet.k, alphabet.ell
    Gbar = closure(G, alphabet)
    part = orbits(G, alphabet)
    vectors = list(product(range(F.q), repeat=ell))
    witness = None
    code_ok = True
    for d in range(ell + 1):
        for B in enumerate_subspaces(ell, d, F):
            coeff_pts = [tuple(c) for c in product(product(range(F.q), repeat=d), repeat=k)]
            lam = CodeMap(F, d, ell, (MatrixFq(F, d, ell, B.basis),))
            for phi in product(vectors, repeat=d):
                # Definition route.
                if witness is None and d and rank(MatrixFq(F, d, ell, phi)) == d:
                    respects = all(
                        part.orbit_of[tuple(vec_mat(F, c, phi, ell) for c in x)]
                        == part.orbit_of[tuple(vec_mat(F, c, B.basis, ell) for c in x)]
                        for x in coeff_pts)
                    if respects and not any(_mat_prod(F, B.basis, g) == phi for g in Gbar.elements):
                        witness = (B, phi)
                # Length-1 code route.
                if code_ok:
                    mu = CodeMap(F, d, ell, (MatrixFq(F, d, ell, phi),))
                    if is_swc_isometry(lam, mu, part, k) and extend_search(lam, mu, G, alphabet) is None:
                        code_ok = False
    verdict = witness is None
    return PseudoInjectivity(verdict, witness, code_ok, verdict == code_ok)
