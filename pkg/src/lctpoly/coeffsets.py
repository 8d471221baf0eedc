"""Coefficient-set algebra.

Two layers live here:

* :class:`SetExpr` -- real sets built from finite lists and the families
  ``a - b/m`` / ``a + b/m`` (``m = 1, 2, ...``), where DCC and ACC are decidable.
* Derived sets of affine functions on an interval ``[a, b]``: sums
  ``v = sum n_i f_i <= 1``, their "adjunction transforms" ``(m - 1 + v)/m``,
  unions over shrinking intervals ``[a, c]``, inverse images, and the
  enumerator of decompositions ``K = sum r_j w_j`` of a constant.

The function sets are infinite, so every enumeration reports whether it is
complete or was cut off at a cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from lctpoly.errors import PreconditionError
from lctpoly.linfun import AffineFn, zero_fn

ONE = Fraction(1)


# --------------------------------------------------------------------------
# Real sets
# --------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Family:
    """``{a - b/m}`` (kind ``"desc"``, increasing in m) or ``{a + b/m}`` (``"asc"``, decreasing in m)."""

    kind: str
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.kind not in ("desc", "asc"):
            raise PreconditionError(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b <= 0:
            raise PreconditionError("family step b must be positive")

    def member(self, m: int) -> Fraction:
        return self.a - self.b / m if self.kind == "desc" else self.a + self.b / m

    def members(self, count: int) -> list[Fraction]:
        return [self.member(m) for m in range(1, count + 1)]


def DescFamily(a, b) -> Family:
    return Family("desc", Fraction(a), Fraction(b))


def AscFamily(a, b) -> Family:
    return Family("asc", Fraction(a), Fraction(b))


@dataclass(frozen=True)
class SetExpr:
    """Finite union of a finite set and one-parameter families."""

    finite: tuple[Fraction, ...] = ()
    families: tuple[Family, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(sorted({Fraction(x) for x in self.finite})))
        object.__setattr__(self, "families", tuple(sorted(set(self.families))))

    @classmethod
    def of(cls, *atoms) -> "SetExpr":
        finite, fams = [], []
        for atom in atoms:
            if isinstance(atom, Family):
                fams.append(atom)
            elif isinstance(atom, SetExpr):
                finite += atom.finite
                fams += atom.families
            else:
                finite += list(atom)
        return cls(tuple(finite), tuple(fams))

    @classmethod
    def from_sequence(cls, values: Sequence) -> "SetExpr":
        """Recognise ``v_m = a + s/m`` (m = 1, 2, ...) from a computed sequence.

        Raises if the values do not fit that shape exactly.
        """
        vals = [Fraction(v) for v in values]
        if len(vals) < 2:
            return cls(tuple(vals))
        s = 2 * (vals[0] - vals[1])
        a = vals[0] - s
        for m, v in enumerate(vals, start=1):
            if a + s / m != v:
                raise PreconditionError(f"sequence is not of the form a + s/m (fails at m={m})")
        if s == 0:
            return cls((a,))
        return cls((), (AscFamily(a, s) if s > 0 else DescFamily(a, -s),))

    def union(self, other: "SetExpr") -> "SetExpr":
        return SetExpr(self.finite + other.finite, self.families + other.families)

    @property
    def is_empty(self) -> bool:
        return not self.finite and not self.families

    def enumerate(self, per_family: int) -> list[Fraction]:
        """Sorted distinct members using ``m <= per_family`` in every family."""
        vals = set(self.finite)
        for fam in self.families:
            vals.update(fam.members(per_family))
        return sorted(vals)

    def sequence(self, per_family: int) -> list[Fraction]:
        """Members in enumeration order: finite part, then families interleaved by m."""
        out = list(self.finite)
        for m in range(1, per_family + 1):
            out += [fam.member(m) for fam in self.families]
        return out

    def infimum(self) -> Fraction | None:
        cands = list(self.finite)
        for fam in self.families:
            cands.append(fam.member(1) if fam.kind == "desc" else fam.a)
        return min(cands) if cands else None


@dataclass(frozen=True)
class ChainVerdict:
    """Outcome of a DCC/ACC decision with its certificate."""

    holds: bool
    certificate: str
    violator: Family | None = None
    witness: tuple[Fraction, ...] = ()


def _chain_condition(e: SetExpr, bad_kind: str, name: str, witness_len: int) -> ChainVerdict:
    for fam in e.families:
        if fam.kind == bad_kind:
            return ChainVerdict(False, f"family {fam.kind}({fam.a}, {fam.b}) is an infinite strictly "
                                       f"{'decreasing' if bad_kind == 'asc' else 'increasing'} chain",
                                fam, tuple(fam.members(witness_len)))
    return ChainVerdict(True, f"every atom is {name}; a finite union of {name} sets is {name}")


def is_dcc(e: SetExpr, witness_len: int = 3) -> ChainVerdict:
    """DCC holds iff no ``a + b/m`` family occurs."""
    return _chain_condition(e, "asc", "DCC", witness_len)


def is_acc(e: SetExpr, witness_len: int = 3) -> ChainVerdict:
    """ACC holds iff no ``a - b/m`` family occurs."""
    return _chain_condition(e, "desc", "ACC", witness_len)


def min_element(e: SetExpr) -> Fraction:
    """Least element of a nonempty DCC set."""
    if e.is_empty:
        raise PreconditionError("min_element of an empty set")
    if not is_dcc(e).holds:
        raise PreconditionError("min_element needs a DCC set (an a + b/m family has no minimum)")
    return min(list(e.finite) + [fam.member(1) for fam in e.families])


@dataclass(frozen=True)
class SumProbe:
    values: tuple[Fraction, ...]
    complete: bool
    note: str


def sum_closure_probe(e: SetExpr, value_bound, term_bound: int, m_cap: int = 64) -> SumProbe:
    """All finite sums of at most ``term_bound`` members that are ``<= value_bound``.

    Families contributing infinitely many members below the bound are cut at
    ``m <= m_cap`` and the result is flagged incomplete.
    """
    bound = Fraction(value_bound)
    inf_e = e.infimum()
    if inf_e is None:
        return SumProbe((), True, "empty set")
    if inf_e <= 0:
        raise PreconditionError("sum closure probe needs members bounded away from 0")
    atoms = {x for x in e.finite if x <= bound}
    truncated = []
    for fam in e.families:
        if fam.kind == "desc":
            if fam.a <= bound:
                ms = range(1, m_cap + 1)
                truncated.append(fam)
            else:
                top = int(fam.b / (fam.a - bound))  # a - b/m <= bound  <=>  m <= b/(a - bound)
                ms = range(1, top + 1)
        else:
            if fam.a < bound:
                ms = range(1, m_cap + 1)
                truncated.append(fam)
            else:
                ms = range(0)
        atoms.update(v for v in (fam.member(m) for m in ms) if v <= bound)
    atoms = sorted(atoms)
    sums: set[Fraction] = set()
    frontier = {Fraction(0)}
    for _ in range(term_bound):
        nxt = set()
        for s in frontier:
            for x in atoms:
                t = s + x
                if t > bound:
                    break
                if t not in sums:
                    nxt.add(t)
        sums |= nxt
        frontier = nxt
        if not frontier:
            break
    enough_terms = term_bound * inf_e >= bound
    complete = not truncated and enough_terms
    notes = []
    if truncated:
        notes.append(f"families truncated at m <= {m_cap}")
    if not enough_terms:
        notes.append(f"term bound {term_bound} < value_bound/inf = {bound / inf_e}")
    return SumProbe(tuple(sorted(sums)), complete, "; ".join(notes) or "exact")


# --------------------------------------------------------------------------
# Families of affine functions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ParametricAtom:
    """The functions ``g_m(t) = alpha(t) + beta(t)/m`` for ``m = 1, 2, ...``."""

    alpha: AffineFn
    beta: AffineFn

    def member(self, m: int) -> AffineFn:
        return self.alpha + self.beta.scale(Fraction(1, m))


@dataclass(frozen=True)
class FnFamily:
    """A set of non-negative affine functions on ``[lo, hi]``.

    Identically-zero members are dropped: they never change a sum, and the
    zero function is added to every sum set explicitly.
    """

    lo: Fraction
    hi: Fraction
    fns: tuple[AffineFn, ...] = ()
    parametric: tuple[ParametricAtom, ...] = ()

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo >= hi:
            raise PreconditionError("function family needs an interval lo < hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        fns = []
        for f in self.fns:
            if f(lo) < 0 or f(hi) < 0:
                raise PreconditionError(f"{f} is negative on [{lo}, {hi}]")
            if not f.is_zero and f not in fns:
                fns.append(f.on(lo, hi))
        object.__setattr__(self, "fns", tuple(sorted(fns)))
        object.__setattr__(self, "parametric", tuple(self.parametric))

    @classmethod
    def constants(cls, values: Iterable, lo=0, hi=1) -> "FnFamily":
        return cls(Fraction(lo), Fraction(hi), tuple(AffineFn.const(v) for v in values))

    @property
    def contains_one(self) -> bool:
        return AffineFn.const(1) in self.fns

    def members(self, param_cap: int = 20) -> tuple[list[AffineFn], bool]:
        """Concrete members with parametric atoms expanded for ``m <= param_cap``.

        The flag says whether the list is the whole family.
        """
        out = list(self.fns)
        for atom in self.parametric:
            for m in range(1, param_cap + 1):
                g = atom.member(m).on(self.lo, self.hi)
                if g(self.lo) >= 0 and g(self.hi) >= 0 and not g.is_zero and g not in out:
                    out.append(g)
        return sorted(out), not self.parametric

    def check_point(self, c) -> Fraction:
        c = Fraction(c)
        if not self.lo < c <= self.hi:
            raise PreconditionError(f"c = {c} must lie in ({self.lo}, {self.hi}]")
        return c


@dataclass(frozen=True)
class Caps:
    """Enumeration caps: adjunction denominators, inner denominators, sum length, parametric index."""

    m_cap: int = 6
    n_cap: int = 6
    term_cap: int = 6
    param_cap: int = 20


@dataclass(frozen=True)
class DecompWitness:
    """``w = (m - 1 + sum n_i f_i)/m``, certified on ``[lo, c]``."""

    m: int
    terms: tuple[tuple[int, AffineFn], ...]
    lo: Fraction
    c: Fraction

    @property
    def v(self) -> AffineFn:
        total = zero_fn()
        for n, f in self.terms:
            total = total + f.scale(n)
        return total

    @property
    def w(self) -> AffineFn:
        return self.v.shift(self.m - 1).scale(Fraction(1, self.m))

    def check(self) -> bool:
        v = self.v
        return self.m >= 1 and all(n >= 1 for n, _ in self.terms) and v(self.lo) <= 1 and v(self.c) <= 1


@dataclass(frozen=True)
class FnEnumeration:
    """Functions with one witness each, in canonical order, plus a completeness flag."""

    items: tuple[tuple[AffineFn, DecompWitness], ...]
    complete: bool
    note: str = ""

    @property
    def functions(self) -> list[AffineFn]:
        return [f for f, _ in self.items]

    def __contains__(self, f: AffineFn) -> bool:
        return any(g == f for g, _ in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def witness(self, f: AffineFn) -> DecompWitness | None:
        return next((w for g, w in self.items if g == f), None)


def _sum_closure(members: Sequence[AffineFn], lo: Fraction, c: Fraction, term_cap: int | None = None,
                 limit=ONE) -> dict[AffineFn, tuple[tuple[int, AffineFn], ...]]:
    """Every ``sum n_i f_i`` with endpoint values ``<= limit`` on ``[lo, c]``, with a witness.

    Terminates because each member is positive at lo or c.  Witnesses are the
    first-found multiset in breadth-first (fewest terms, then member order).
    """
    zero = zero_fn()
    found: dict[AffineFn, tuple[int, ...]] = {zero: tuple(0 for _ in members)}
    frontier = [zero]
    depth = 0
    while frontier and (term_cap is None or depth < term_cap):
        depth += 1
        nxt = []
        for v in frontier:
            counts = found[v]
            for i, f in enumerate(members):
                w = v + f
                if w(lo) > limit or w(c) > limit or w in found:
                    continue
                nc = list(counts)
                nc[i] += 1
                found[w] = tuple(nc)
                nxt.append(w)
        frontier = nxt
    return {v: tuple((n, f) for n, f in zip(cnt, members) if n) for v, cnt in found.items()}


def f_plus(F: FnFamily, c, param_cap: int = 20) -> FnEnumeration:
    """``(F_+, [a, c])``: all finite sums ``v = sum n_i f_i`` with ``v <= 1`` on ``[a, c]``, plus 0."""
    c = F.check_point(c)
    members, whole = F.members(param_cap)
    sums = _sum_closure(members, F.lo, c)
    items = tuple(sorted(((v.on(F.lo, c), DecompWitness(1, terms, F.lo, c)) for v, terms in sums.items()),
                         key=lambda it: it[0]))
    note = "exact" if whole else f"parametric atoms expanded for m <= {param_cap}"
    return FnEnumeration(items, whole, note)


def derived_set(F: FnFamily, c, m_cap: int, param_cap: int = 20) -> FnEnumeration:
    """``D(F, [a, c])`` restricted to adjunction denominators ``m <= m_cap``."""
    if m_cap < 1:
        raise PreconditionError("m_cap must be >= 1")
    fp = f_plus(F, c, param_cap)
    out: dict[AffineFn, DecompWitness] = {}
    for m in range(1, m_cap + 1):
        for v, wit in fp.items:
            dw = DecompWitness(m, wit.terms, wit.lo, wit.c)
            w = dw.w.on(F.lo, wit.c)
            if w not in out:
                out[w] = dw
    items = tuple(sorted(out.items(), key=lambda it: it[0]))
    only_one = all(v == AffineFn.const(1) or v.is_zero for v in fp.functions) and len(fp) == 1
    complete = fp.complete and only_one
    return FnEnumeration(items, complete, f"exact for m <= {m_cap}; larger m adds new members")


def script_d(F: FnFamily, c_grid: Sequence, m_cap: int, param_cap: int = 20) -> FnEnumeration:
    """Union of ``D(F, [a, c])`` over the grid points, always including the ``v = 0`` slice."""
    out: dict[AffineFn, DecompWitness] = {}
    for m in range(1, m_cap + 1):
        w = AffineFn.const(Fraction(m - 1, m))
        out[w] = DecompWitness(m, (), F.lo, F.hi)
    for c in sorted({Fraction(x) for x in c_grid}, reverse=True):
        for w, dw in derived_set(F, c, m_cap, param_cap).items:
            if w not in out:
                out[w] = dw
    items = tuple(sorted(((w.on(F.lo, F.hi), dw) for w, dw in out.items()), key=lambda it: it[0]))
    return FnEnumeration(items, False, f"grid of {len(set(c_grid))} points, m <= {m_cap}")


# --------------------------------------------------------------------------
# Exact membership queries
# --------------------------------------------------------------------------


def _combos(target: AffineFn, members: Sequence[AffineFn], lo: Fraction, hi: Fraction,
            start: int = 0) -> Iterator[tuple[tuple[int, AffineFn], ...]]:
    """All ``n_i >= 0`` with ``sum n_i f_i == target`` exactly (members non-negative on [lo, hi])."""
    if target.is_zero:
        yield ()
        return
    if target(lo) < 0 or target(hi) < 0 or start >= len(members):
        return
    f = members[start]
    fl, fh = f(lo), f(hi)
    caps = [target(lo) / fl for fl_ in (fl,) if fl_ > 0] + [target(hi) / fh for fh_ in (fh,) if fh_ > 0]
    top = int(min(caps)) if caps else 0
    for n in range(top, -1, -1):
        rest = target - f.scale(n)
        for tail in _combos(rest, members, lo, hi, start + 1):
            yield (((n, f),) if n else ()) + tail


def solve_combination(target: AffineFn, members: Sequence[AffineFn], lo, hi):
    """One non-negative integer combination of ``members`` equal to ``target``, or ``None``."""
    return next(_combos(target, list(members), Fraction(lo), Fraction(hi)), None)


def _largest_c(v: AffineFn, lo: Fraction, hi: Fraction) -> Fraction | None:
    """Largest ``c`` in ``(lo, hi]`` with ``v <= 1`` on ``[lo, c]``, if any."""
    if v(lo) > 1:
        return None
    if v(hi) <= 1:
        return hi
    if v(lo) == 1:
        return None  # increasing from 1: no room at all
    return (1 - v.intercept) / v.slope


def in_derived_set(g: AffineFn, F: FnFamily, c, m_cap: int, param_cap: int = 20) -> DecompWitness | None:
    """Exact test of ``g in D(F, [a, c])`` with denominators ``m <= m_cap``."""
    c = F.check_point(c)
    members, _ = F.members(param_cap)
    for m in range(1, m_cap + 1):
        v = g.scale(m).shift(-(m - 1))
        if v(F.lo) > 1 or v(c) > 1:
            continue
        terms = solve_combination(v, members, F.lo, F.hi)
        if terms is not None:
            return DecompWitness(m, terms, F.lo, c)
    return None


def in_script_d(g: AffineFn, F: FnFamily, m_cap: int, param_cap: int = 20) -> DecompWitness | None:
    """Exact test of ``g`` in the union over ``c`` of ``D(F, [a, c])`` (``m <= m_cap``).

    The witness interval end ``c`` is solved for, not sampled: it is the
    largest ``c`` keeping ``v <= 1`` on ``[a, c]``.
    """
    members, _ = F.members(param_cap)
    for m in range(1, m_cap + 1):
        v = g.scale(m).shift(-(m - 1))
        c = _largest_c(v, F.lo, F.hi)
        if c is None or c <= F.lo:
            continue
        terms = solve_combination(v, members, F.lo, F.hi)
        if terms is not None:
            return DecompWitness(m, terms, F.lo, c)
    return None


@dataclass(frozen=True)
class InverseWitness:
    """``(m - 1 + n f + sum n_j f_j)/m = target``."""

    f: AffineFn
    m: int
    n: int
    rest: tuple[tuple[int, AffineFn], ...]
    target: AffineFn


def script_d_inverse(D0: Sequence[AffineFn], F: FnFamily, caps: Caps = Caps()) -> list[InverseWitness]:
    """Members ``f`` of F that occur (with n >= 1) in some adjunction expression landing in D0."""
    members, _ = F.members(caps.param_cap)
    out = []
    for f in members:
        wit = None
        for g in sorted(set(D0)):
            for m in range(1, caps.m_cap + 1):
                v = g.scale(m).shift(-(m - 1))
                fmax = max(f(F.lo), f(F.hi))
                top = int(max(v(F.lo), v(F.hi)) / fmax) if fmax > 0 else 0
                for n in range(1, top + 1):
                    rest = solve_combination(v - f.scale(n), members, F.lo, F.hi)
                    if rest is not None:
                        wit = InverseWitness(f, m, n, rest, g)
                        break
                if wit:
                    break
            if wit:
                break
        if wit:
            out.append(wit)
    return out


# --------------------------------------------------------------------------
# Idempotence of the derived-set operators
# --------------------------------------------------------------------------


@dataclass
class IdempotenceReport:
    passed: bool
    sums_checked: int = 0
    nested_checked: int = 0
    violations: list[str] = field(default_factory=list)
    truncation_flags: list[str] = field(default_factory=list)
    collapses: list[tuple[int, int, int]] = field(default_factory=list)  # (m, n, r) with r = m*n


def _bounded_multiset_sums(members: Sequence[AffineFn], lo: Fraction, hi: Fraction, term_cap: int) -> Iterator[AffineFn]:
    """Sums of every multiset of 2..term_cap members that stays <= 1 at both endpoints."""

    def rec(start: int, acc: AffineFn, count: int):
        if count >= 2:
            yield acc
        if count == term_cap:
            return
        for i in range(start, len(members)):
            nxt = acc + members[i]
            if nxt(lo) <= 1 and nxt(hi) <= 1:
                yield from rec(i, nxt, count + 1)

    yield from rec(0, zero_fn(), 0)


def default_grid(F: FnFamily, k: int = 3) -> list[Fraction]:
    return [F.lo + (F.hi - F.lo) / j for j in range(1, k + 1)]


def nested_collapse(h_m: int, g: DecompWitness) -> DecompWitness:
    """``(m-1 + (n-1 + v)/n)/m`` rewritten with denominator ``r = m n`` over the same v."""
    return DecompWitness(h_m * g.m, g.terms, g.lo, g.c)


def check_idempotence(F: FnFamily, caps: Caps = Caps(), grid: Sequence | None = None) -> IdempotenceReport:
    """Check that D(F) is closed under bounded sums and that nesting the derived-set construction adds nothing.

    (i)  every sum of at most ``term_cap`` members of D(F) (``m <= m_cap``)
         that stays ``<= 1`` is again in D(F);
    (ii) every member of D(G, [a, c]) for G = D(F) built on the grid
         (inner ``n <= n_cap``, outer ``m <= m_cap``) lies in the union
         over c of D(F, [a, c]) with denominator ``r = m n``.
    A failure that disappears with a larger denominator cap is a truncation
    artifact; anything else is a violation.
    """
    if not F.contains_one:
        raise PreconditionError("idempotence needs the constant function 1 in the family")
    report = IdempotenceReport(True)
    grid = sorted({F.check_point(c) for c in (grid if grid is not None else default_grid(F))}, reverse=True)

    dF = derived_set(F, F.hi, caps.m_cap, caps.param_cap)
    nonzero = [w for w in dF.functions if not w.is_zero]
    for g in _bounded_multiset_sums(nonzero, F.lo, F.hi, caps.term_cap):
        report.sums_checked += 1
        if in_derived_set(g, F, F.hi, caps.m_cap, caps.param_cap) is not None:
            continue
        if in_derived_set(g, F, F.hi, caps.m_cap * caps.term_cap, caps.param_cap) is not None:
            report.truncation_flags.append(f"sum {g} needs m > {caps.m_cap}")
        else:
            report.violations.append(f"sum {g} of D(F) members is not in D(F)")

    G_enum = script_d(F, grid, caps.n_cap, caps.param_cap)
    inner = {w: dw for w, dw in G_enum.items if not w.is_zero}
    G = FnFamily(F.lo, F.hi, tuple(inner))
    seen = set()
    for c in grid:
        for h, hw in derived_set(G, c, caps.m_cap).items:
            if h in seen:
                continue
            seen.add(h)
            report.nested_checked += 1
            r_cap = caps.m_cap * caps.n_cap
            wit = in_script_d(h, F, r_cap, caps.param_cap)
            if wit is None:
                if in_script_d(h, F, r_cap * caps.term_cap, caps.param_cap) is not None:
                    report.truncation_flags.append(f"nested {h} needs r > {r_cap}")
                else:
                    report.violations.append(f"nested {h} is not in the union of D(F, [a, c])")
                continue
            if len(hw.terms) == 1 and hw.terms[0][0] == 1:
                g = hw.terms[0][1]
                gw = inner.get(g)
                if gw is not None and hw.m > 1 and gw.m > 1:
                    report.collapses.append((hw.m, gw.m, hw.m * gw.m))
                    if nested_collapse(hw.m, gw).w != h:
                        report.violations.append(f"r = m n collapse fails for {h}")
    report.passed = not report.violations
    return report


# --------------------------------------------------------------------------
# Numerically trivial decompositions  K = sum r_j w_j(t)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    terms: tuple[tuple[int, DecompWitness], ...]  # (r_j, witness of w_j)

    @property
    def values(self) -> tuple[AffineFn, ...]:
        """The multiset of w's, expanded by multiplicity and sorted."""
        out = []
        for r, dw in self.terms:
            out += [dw.w] * r
        return tuple(sorted(out))

    def total(self) -> AffineFn:
        acc = zero_fn()
        for r, dw in self.terms:
            acc = acc + dw.w.scale(r)
        return acc


def trivial_decompositions(K, F: FnFamily, caps: Caps = Caps()) -> list[Decomposition]:
    """All multisets of nonzero ``w in D(F)`` (``m <= m_cap``), at most ``term_cap`` terms, summing to K identically."""
    K = Fraction(K)
    if K <= 0:
        raise PreconditionError("K must be positive")
    cands = [(w, dw) for w, dw in derived_set(F, F.hi, caps.m_cap, caps.param_cap).items if not w.is_zero]
    lo, hi = F.lo, F.hi
    target = AffineFn.const(K)
    out: list[Decomposition] = []

    def rec(i: int, acc: AffineFn, left: int, chosen: list):
        if acc == target:
            out.append(Decomposition(tuple(chosen)))
            return
        if i >= len(cands) or left == 0:
            return
        w, dw = cands[i]
        r = 0
        nxt = acc
        while r <= left:
            if nxt(lo) > K or nxt(hi) > K:
                break
            rec(i + 1, nxt, left - r, chosen + ([(r, dw)] if r else []))
            r += 1
            nxt = nxt + w

    rec(0, zero_fn(), caps.term_cap, [])
    return sorted(out, key=lambda d: d.values)


# --------------------------------------------------------------------------
# Surface relation  sum_j (a_j lam + b_j t(lam)) = 2
# --------------------------------------------------------------------------


def surface_relation_solve(coeff_pairs: Sequence[tuple], lam) -> Fraction:
    """``t(lam) = (2 - lam * sum a_j) / sum b_j``."""
    sa = sum((Fraction(a) for a, _ in coeff_pairs), Fraction(0))
    sb = sum((Fraction(b) for _, b in coeff_pairs), Fraction(0))
    if sb == 0:
        raise PreconditionError("at least one b_j must be nonzero")
    return (2 - Fraction(lam) * sa) / sb


def surface_relation_monotone(pairs_small: Sequence[tuple], pairs_big: Sequence[tuple], lam) -> tuple[Fraction, Fraction, bool]:
    """Compare solutions for componentwise-ordered coefficient lists.

    Returns ``(t_small, t_big, t_small >= t_big)``.  The comparison is
    guaranteed whenever ``t_big >= 0``.
    """
    if len(pairs_small) != len(pairs_big):
        raise PreconditionError("coefficient lists must have equal length")
    for (a, b), (a2, b2) in zip(pairs_small, pairs_big):
        if Fraction(a) > Fraction(a2) or Fraction(b) > Fraction(b2):
            raise PreconditionError("first list must be componentwise <= the second")
    t1 = surface_relation_solve(pairs_small, lam)
    t2 = surface_relation_solve(pairs_big, lam)
    return t1, t2, t1 >= t2
