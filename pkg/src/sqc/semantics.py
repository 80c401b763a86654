"""Finite-model semantics: evaluation and bounded validity checking.

Interpretations range over domains {0..n-1}. check_validity enumerates every
interpretation of a formula's symbols for domain sizes 1..max_domain in a
fixed order (domain size ascending, function tables lexicographic, predicate
extensions by cardinality then lexicographic), so countermodels are
deterministic and reproducible.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union

from .syntax import (
    App,
    BoundVar,
    Con,
    Dis,
    Exi,
    Formula,
    Imp,
    Neg,
    Pred,
    Term,
    Uni,
    constants_of,
)


class UncoveredSymbol(Exception):
    """The interpretation has no table for a symbol of the formula."""


class EnumerationTooLarge(Exception):
    """The interpretation space exceeds the configured ceiling."""

    def __init__(self, count: int, ceiling: int):
        super().__init__(
            f"enumerating {count} interpretations exceeds the ceiling of {ceiling}"
        )
        self.count = count
        self.ceiling = ceiling


class Cancelled(Exception):
    """The cooperative cancellation token was set."""


@dataclass(frozen=True)
class Interpretation:
    domain_size: int
    functions: Mapping[tuple[str, int], Mapping[tuple[int, ...], int]]
    predicates: Mapping[tuple[str, int], frozenset[tuple[int, ...]]]


@dataclass
class Limits:
    """Bounds shared by the model enumerator and the bounded prover."""

    max_domain: int = 2
    gamma_depth: int = 1
    max_steps: int = 100
    enum_ceiling: int = 10_000_000
    cancel: threading.Event | None = field(default=None, repr=False)

    def check_cancelled(self) -> None:
        if self.cancel is not None and self.cancel.is_set():
            raise Cancelled()


@dataclass(frozen=True)
class ValidUpTo:
    max_domain: int


@dataclass(frozen=True)
class Countermodel:
    interpretation: Interpretation


def eval_term(t: Term, interp: Interpretation, env: Sequence[int] = ()) -> int:
    """env is a stack: BoundVar(k) reads the k-th element from the top."""
    match t:
        case BoundVar(index=i):
            if i >= len(env):
                raise UncoveredSymbol(f"dangling bound variable {i}")
            return env[i]
        case App(symbol=s, args=args):
            table = interp.functions.get((s, len(args)))
            if table is None:
                raise UncoveredSymbol(f"function symbol {s}/{len(args)} not interpreted")
            return table[tuple(eval_term(a, interp, env) for a in args)]
    raise TypeError(f"unexpected term: {t!r}")


def eval_formula(f: Formula, interp: Interpretation, env: Sequence[int] = ()) -> bool:
    """Standard classical satisfaction; quantifiers push each domain element."""
    match f:
        case Pred(symbol=s, args=args):
            extension = interp.predicates.get((s, len(args)))
            if extension is None:
                raise UncoveredSymbol(f"predicate symbol {s}/{len(args)} not interpreted")
            return tuple(eval_term(a, interp, env) for a in args) in extension
        case Imp(left=a, right=b):
            return (not eval_formula(a, interp, env)) or eval_formula(b, interp, env)
        case Dis(left=a, right=b):
            return eval_formula(a, interp, env) or eval_formula(b, interp, env)
        case Con(left=a, right=b):
            return eval_formula(a, interp, env) and eval_formula(b, interp, env)
        case Neg(body=a):
            return not eval_formula(a, interp, env)
        case Uni(body=a):
            return all(
                eval_formula(a, interp, (d,) + tuple(env))
                for d in range(interp.domain_size)
            )
        case Exi(body=a):
            return any(
                eval_formula(a, interp, (d,) + tuple(env))
                for d in range(interp.domain_size)
            )
    raise TypeError(f"unexpected formula: {f!r}")


def _function_tables(
    arity: int, size: int
) -> Iterator[Mapping[tuple[int, ...], int]]:
    points = list(itertools.product(range(size), repeat=arity))
    for values in itertools.product(range(size), repeat=len(points)):
        yield dict(zip(points, values))


def _predicate_extensions(
    arity: int, size: int
) -> Iterator[frozenset[tuple[int, ...]]]:
    points = list(itertools.product(range(size), repeat=arity))
    for k in range(len(points) + 1):
        for chosen in itertools.combinations(points, k):
            yield frozenset(chosen)


def interpretation_count(f: Formula, max_domain: int) -> int:
    """How many interpretations check_validity would enumerate."""
    inventory = constants_of([f])
    total = 0
    for size in range(1, max_domain + 1):
        per_size = 1
        for _, arity in inventory.functions:
            per_size *= size ** (size**arity)
        for _, arity in inventory.predicates:
            per_size *= 2 ** (size**arity)
        total += per_size
    return total


def interpretations(f: Formula, max_domain: int) -> Iterator[Interpretation]:
    """Every interpretation of exactly f's symbols, in the canonical order."""
    inventory = constants_of([f])
    fun_syms = sorted(inventory.functions)
    pred_syms = sorted(inventory.predicates)
    for size in range(1, max_domain + 1):
        fun_choices = [list(_function_tables(a, size)) for _, a in fun_syms]
        pred_choices = [list(_predicate_extensions(a, size)) for _, a in pred_syms]
        for tables in itertools.product(*fun_choices):
            for extensions in itertools.product(*pred_choices):
                yield Interpretation(
                    size,
                    dict(zip(fun_syms, tables)),
                    dict(zip(pred_syms, extensions)),
                )


def check_validity(f: Formula, limits: Limits) -> Union[ValidUpTo, Countermodel]:
    """Search domains 1..max_domain for a falsifying interpretation."""
    count = interpretation_count(f, limits.max_domain)
    if count > limits.enum_ceiling:
        raise EnumerationTooLarge(count, limits.enum_ceiling)
    for interp in interpretations(f, limits.max_domain):
        limits.check_cancelled()
        if not eval_formula(f, interp):
            return Countermodel(interp)
    return ValidUpTo(limits.max_domain)


def describe_interpretation(interp: Interpretation) -> str:
    """Human-readable model listing, one symbol per line."""
    lines = [f"domain: {{{', '.join(str(d) for d in range(interp.domain_size))}}}"]
    for (name, arity), table in sorted(interp.functions.items()):
        if arity == 0:
            lines.append(f"{name} = {table[()]}")
        else:
            cells = ", ".join(
                f"{name}({', '.join(map(str, point))}) = {value}"
                for point, value in sorted(table.items())
            )
            lines.append(cells)
    for (name, arity), extension in sorted(interp.predicates.items()):
        if arity == 0:
            lines.append(f"{name} = {'true' if () in extension else 'false'}")
        else:
            tuples = ", ".join(
                "(" + ", ".join(map(str, point)) + ")" for point in sorted(extension)
            )
            lines.append(f"{name} = {{{tuples}}}")
    return "\n".join(lines)
