"""First-order terms and formulas with de Bruijn binders.

Bound variables carry a 0-based distance to their binder, so alpha-equivalent
formulas are structurally equal. Quantifier nodes keep an optional display
name for printing only; it is excluded from equality and hashing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union


class NegativeShiftCapture(Exception):
    """Unshifting would move a bound-variable index below its cutoff.

    Raised when an instantiation term turns out to reference a binder that is
    internal to the body it is being matched against.
    """


@dataclass(frozen=True)
class BoundVar:
    index: int


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple["Term", ...] = ()


Term = Union[BoundVar, App]


def const(name: str) -> App:
    """A 0-ary function application, i.e. a constant."""
    return App(name, ())


@dataclass(frozen=True)
class Pred:
    symbol: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Dis:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Con:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class Uni:
    body: "Formula"
    name: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Exi:
    body: "Formula"
    name: str | None = field(default=None, compare=False)


Formula = Union[Pred, Imp, Dis, Con, Neg, Uni, Exi]


def shift(t: Term, amount: int, cutoff: int = 0) -> Term:
    """Shift every bound-variable index >= cutoff by amount.

    Indices below the cutoff are untouched. A negative amount raises
    NegativeShiftCapture if any index would land below the cutoff.
    """
    match t:
        case BoundVar(index=i):
            if i < cutoff:
                return t
            j = i + amount
            if j < cutoff:
                raise NegativeShiftCapture(
                    f"cannot shift bound variable {i} by {amount} at cutoff {cutoff}"
                )
            return BoundVar(j)
        case App(symbol=s, args=args):
            return App(s, tuple(shift(a, amount, cutoff) for a in args))
    raise TypeError(f"unexpected term: {t!r}")


def instantiate(body: Formula, t: Term) -> Formula:
    """Substitute t for the removed binder's variable throughout body.

    body is the immediate body of a quantifier: index 0 (at depth d, index d)
    is the binder's variable and is replaced by shift(t, d, 0); indices above
    it are decremented past the removed binder.
    """

    def sub_term(u: Term, depth: int) -> Term:
        match u:
            case BoundVar(index=i):
                if i == depth:
                    return shift(t, depth, 0)
                if i > depth:
                    return BoundVar(i - 1)
                return u
            case App(symbol=s, args=args):
                return App(s, tuple(sub_term(a, depth) for a in args))
        raise TypeError(f"unexpected term: {u!r}")

    def sub(f: Formula, depth: int) -> Formula:
        match f:
            case Pred(symbol=s, args=args):
                return Pred(s, tuple(sub_term(a, depth) for a in args))
            case Imp(left=a, right=b):
                return Imp(sub(a, depth), sub(b, depth))
            case Dis(left=a, right=b):
                return Dis(sub(a, depth), sub(b, depth))
            case Con(left=a, right=b):
                return Con(sub(a, depth), sub(b, depth))
            case Neg(body=a):
                return Neg(sub(a, depth))
            case Uni(body=a, name=n):
                return Uni(sub(a, depth + 1), n)
            case Exi(body=a, name=n):
                return Exi(sub(a, depth + 1), n)
        raise TypeError(f"unexpected formula: {f!r}")

    return sub(body, 0)


@dataclass(frozen=True)
class SymbolInventory:
    """Function and predicate symbols with their arities."""

    functions: frozenset[tuple[str, int]]
    predicates: frozenset[tuple[str, int]]

    def names(self) -> frozenset[str]:
        return frozenset(s for s, _ in self.functions) | frozenset(
            s for s, _ in self.predicates
        )


def constants_of(formulas: Iterable[Formula]) -> SymbolInventory:
    """Every function and predicate symbol occurring in the formulas, by arity."""
    functions: set[tuple[str, int]] = set()
    predicates: set[tuple[str, int]] = set()

    def walk_term(t: Term) -> None:
        if isinstance(t, App):
            functions.add((t.symbol, len(t.args)))
            for a in t.args:
                walk_term(a)

    def walk(f: Formula) -> None:
        match f:
            case Pred(symbol=s, args=args):
                predicates.add((s, len(args)))
                for a in args:
                    walk_term(a)
            case Imp(left=a, right=b) | Dis(left=a, right=b) | Con(left=a, right=b):
                walk(a)
                walk(b)
            case Neg(body=a):
                walk(a)
            case Uni(body=a) | Exi(body=a):
                walk(a)

    for f in formulas:
        walk(f)
    return SymbolInventory(frozenset(functions), frozenset(predicates))


def is_closed(f: Formula, depth: int = 0) -> bool:
    """True when every bound-variable index is under `depth` enclosing binders."""

    def term_ok(t: Term, d: int) -> bool:
        match t:
            case BoundVar(index=i):
                return i < d
            case App(args=args):
                return all(term_ok(a, d) for a in args)
        return False

    match f:
        case Pred(args=args):
            return all(term_ok(a, depth) for a in args)
        case Imp(left=a, right=b) | Dis(left=a, right=b) | Con(left=a, right=b):
            return is_closed(a, depth) and is_closed(b, depth)
        case Neg(body=a):
            return is_closed(a, depth)
        case Uni(body=a) | Exi(body=a):
            return is_closed(a, depth + 1)
    raise TypeError(f"unexpected formula: {f!r}")
