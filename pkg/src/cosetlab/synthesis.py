"""Minimum-complexity boolean combinations of translates of a set.

Expressions are built from atoms ``g+A`` and their complements with union
and intersection; complexity counts atom occurrences. By De Morgan every
boolean combination has such a form with the same number of atoms.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exceptions import BudgetExceeded, NotAbelianError
from .sets import GroupSet, left_translate_bits

DEFAULT_MAX_COMPLEXITY = 6
DEFAULT_MAX_SETS = 500_000
DEFAULT_MAX_PAIRS = 20_000_000


@dataclass(frozen=True)
class BoolExpr:
    op: str  # "atom", "union" or "intersect"
    shift: int = 0
    negated: bool = False
    left: BoolExpr | None = None
    right: BoolExpr | None = None
    bits: int | None = None  # cached denotation

    @classmethod
    def atom(cls, g, negated=False, bits=None):
        return cls("atom", shift=g, negated=negated, bits=bits)

    @property
    def complexity(self):
        if self.op == "atom":
            return 1
        return self.left.complexity + self.right.complexity

    def evaluate(self, A: GroupSet) -> GroupSet:
        """Recompute the denotation from the tree (ignores the cache)."""
        G = A.group
        if self.op == "atom":
            S = GroupSet(G, left_translate_bits(A)[self.shift])
            return ~S if self.negated else S
        lhs, rhs = self.left.evaluate(A), self.right.evaluate(A)
        if self.op == "union":
            return lhs | rhs
        if self.op == "intersect":
            return lhs & rhs
        raise ValueError(f"unknown operator {self.op!r}")

    def __str__(self):
        if self.op == "atom":
            s = f"({self.shift}+A)"
            return f"~{s}" if self.negated else s
        sym = "|" if self.op == "union" else "&"
        return f"({self.left} {sym} {self.right})"

    def to_dict(self):
        if self.op == "atom":
            return {"op": "atom", "shift": self.shift, "negated": self.negated}
        return {"op": self.op, "left": self.left.to_dict(), "right": self.right.to_dict()}

    @classmethod
    def from_dict(cls, d):
        if d["op"] == "atom":
            return cls.atom(int(d["shift"]), bool(d.get("negated", False)))
        return cls(d["op"], left=cls.from_dict(d["left"]), right=cls.from_dict(d["right"]))


@dataclass(frozen=True)
class SynthesisResult:
    expr: BoolExpr | None
    reached: int  # distinct sets generated
    max_complexity: int

    @property
    def exhausted(self):
        return self.expr is None


def boolean_synthesis(
    target: GroupSet,
    A: GroupSet,
    max_complexity: int = DEFAULT_MAX_COMPLEXITY,
    max_sets: int = DEFAULT_MAX_SETS,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> SynthesisResult:
    """Breadth-first search for a smallest expression over translates of ``A`` denoting ``target``.

    Level ``c`` holds every set first reached with ``c`` atoms; sets are
    deduplicated by bit pattern across levels, so the first hit has minimum
    complexity. An exhausted result says nothing about higher complexity.
    """
    G = A.group
    A._check(target)
    if not G.is_abelian:
        raise NotAbelianError(f"{G.descriptor} is not abelian")
    if max_complexity < 1:
        raise ValueError("max_complexity must be at least 1")
    full = (1 << G.order) - 1
    goal = target.bits
    seen = {}
    levels = {1: []}
    for g, bits in enumerate(left_translate_bits(A)):
        for neg in (False, True):
            b = full ^ bits if neg else bits
            if b in seen:
                continue
            e = BoolExpr.atom(g, neg, bits=b)
            seen[b] = e
            levels[1].append(e)
            if b == goal:
                return SynthesisResult(e, len(seen), max_complexity)

    pairs = 0
    for c in range(2, max_complexity + 1):
        levels[c] = []
        for i in range(1, c // 2 + 1):
            Li, Lj = levels[i], levels[c - i]
            for x, e1 in enumerate(Li):
                start = x if i == c - i else 0
                for e2 in Lj[start:]:
                    pairs += 1
                    if pairs > max_pairs:
                        raise BudgetExceeded(f"synthesis exceeded {max_pairs} combinations at complexity {c}")
                    for op, b in (("union", e1.bits | e2.bits), ("intersect", e1.bits & e2.bits)):
                        if b in seen:
                            continue
                        e = BoolExpr(op, left=e1, right=e2, bits=b)
                        seen[b] = e
                        levels[c].append(e)
                        if b == goal:
                            return SynthesisResult(e, len(seen), max_complexity)
                        if len(seen) > max_sets:
                            raise BudgetExceeded(f"synthesis reached more than {max_sets} distinct sets")
    return SynthesisResult(None, len(seen), max_complexity)
