"""Double description method for polyhedral cones over the integers.

``cone_generators(rows, dim)`` returns the extreme rays and a lineality basis
of ``{y in R^dim : r . y <= 0 for every r in rows}``.  Rows and outputs are
integer tuples; outputs are primitive (coprime entries).  Both H->V and V->H
conversion are driven through this one routine, the latter by applying it to
the polar cone.

Adjacency uses the combinatorial test on zero sets, which is valid because the
ray list is kept minimal after every step.
"""

from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]


def _prim(v: Sequence[int]) -> IntVec:
    g = reduce(gcd, (abs(x) for x in v), 0)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _idot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def cone_generators(rows: Sequence[IntVec], dim: int) -> tuple[list[IntVec], list[IntVec]]:
    lines: list[IntVec] = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    rays: list[tuple[IntVec, int]] = []  # (ray, zero-set bitmask over processed rows)
    seen_mask = 0

    uniq: list[IntVec] = []
    seen_rows: set[IntVec] = set()
    for r in rows:
        pr = _prim(r)
        if any(pr) and pr not in seen_rows:
            seen_rows.add(pr)
            uniq.append(pr)

    for idx, h in enumerate(uniq):
        bit = 1 << idx
        pivot = next((k for k, l in enumerate(lines) if _idot(h, l) != 0), None)
        if pivot is not None:
            l = lines.pop(pivot)
            hl = _idot(h, l)
            if hl > 0:
                l = tuple(-x for x in l)
                hl = -hl
            new_lines = []
            for l2 in lines:
                v = _idot(h, l2)
                if v:
                    l2 = _prim(tuple(a * hl - b * v for a, b in zip(l2, l)))
                new_lines.append(l2)
            lines = new_lines
            new_rays = []
            for r, z in rays:
                v = _idot(h, r)
                if v:
                    r = _prim(tuple(-hl * a + v * b for a, b in zip(r, l)))
                new_rays.append((r, z | bit))
            new_rays.append((_prim(l), seen_mask))
            rays = new_rays
        else:
            pos, zero, neg = [], [], []
            for r, z in rays:
                v = _idot(h, r)
                if v > 0:
                    pos.append((r, z, v))
                elif v < 0:
                    neg.append((r, z, v))
                else:
                    zero.append((r, z | bit))
            if pos:
                pointed_dim = dim - len(lines)
                need = pointed_dim - 2
                everything = [z for _, z, _ in pos] + [z for _, z in zero] + [z for _, z, _ in neg]
                created = []
                for p, zp, vp in pos:
                    for n, zn, vn in neg:
                        common = zp & zn
                        if bin(common).count("1") < need:
                            continue
                        # distinct extreme rays have distinct zero sets
                        if any(z & common == common and z != zp and z != zn for z in everything):
                            continue
                        new = _prim(tuple(-vn * a + vp * b for a, b in zip(p, n)))
                        created.append((new, common | bit))
                rays = [(r, z) for r, z, _ in neg] + zero + created
            else:
                rays = [(r, z) for r, z, _ in neg] + zero
        seen_mask |= bit

    out, seen = [], set()
    for r, _ in rays:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out, lines
