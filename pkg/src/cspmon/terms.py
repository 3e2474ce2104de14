"""Process terms, event-set expressions, and syntactic classification.

A process emits events drawn from a finite alphabet.  The term language has
five constructors: STOP (stuck, emits nothing), FAIL (global failure),
prefix (emit one event from a set, binding it to a variable), external
choice, and parallel composition synchronized on an event set.

All values here are immutable; structural equality doubles as semantic
identity for deduplication in the transition engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Union

from .errors import UnboundVariableError


# --- events and event-set expressions ------------------------------------


@dataclass(frozen=True)
class Event:
    """A concrete event symbol from the declared alphabet."""

    name: str


@dataclass(frozen=True)
class EventVar:
    """A variable bound by a prefix binder; ranges over events."""

    name: str


EventParam = Union[Event, EventVar]


@dataclass(frozen=True)
class Literal:
    """An explicit, possibly empty, list of events and variables."""

    params: tuple[EventParam, ...]


@dataclass(frozen=True)
class FullAlphabet:
    """The whole declared alphabet (written ``Sigma`` in spec files)."""


@dataclass(frozen=True)
class SetUnion:
    left: "EventSetExpr"
    right: "EventSetExpr"


@dataclass(frozen=True)
class SetIntersection:
    left: "EventSetExpr"
    right: "EventSetExpr"


@dataclass(frozen=True)
class SetDifference:
    left: "EventSetExpr"
    right: "EventSetExpr"


EventSetExpr = Union[Literal, FullAlphabet, SetUnion, SetIntersection, SetDifference]

EMPTY_SET = Literal(())


def literal(*names: str) -> Literal:
    """Shorthand for a literal set of concrete events."""
    return Literal(tuple(Event(n) for n in names))


# --- terms ----------------------------------------------------------------


@dataclass(frozen=True)
class Stop:
    """The stuck process: emits nothing, but is not a failure."""


@dataclass(frozen=True)
class Fail:
    """Global failure: aborts every parallel component."""


@dataclass(frozen=True)
class Prefix:
    """``?x:E -> P``: emit one event e in E, then run P with x bound to e."""

    var: EventVar
    events: EventSetExpr
    body: "Term"


@dataclass(frozen=True)
class Choice:
    """External choice, resolved by whichever side emits first."""

    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Parallel:
    """Parallel composition with mandatory synchronization on ``sync``."""

    left: "Term"
    sync: EventSetExpr
    right: "Term"


Term = Union[Stop, Fail, Prefix, Choice, Parallel]

STOP = Stop()
FAIL = Fail()


# --- operations -----------------------------------------------------------


def eval_event_set(
    expr: EventSetExpr,
    env: Mapping[EventVar, Event],
    alphabet: frozenset[str],
) -> frozenset[str]:
    """Evaluate a set expression to a concrete subset of the alphabet.

    ``env`` must bind every free variable of ``expr``; an unbound variable
    raises UnboundVariableError naming it.
    """
    if isinstance(expr, Literal):
        out = set()
        for p in expr.params:
            if isinstance(p, Event):
                out.add(p.name)
            else:
                if p not in env:
                    raise UnboundVariableError(p.name)
                out.add(env[p].name)
        return frozenset(out) & alphabet
    if isinstance(expr, FullAlphabet):
        return alphabet
    left = eval_event_set(expr.left, env, alphabet)
    right = eval_event_set(expr.right, env, alphabet)
    if isinstance(expr, SetUnion):
        return left | right
    if isinstance(expr, SetIntersection):
        return left & right
    return left - right


def _subst_set(e: Event, x: EventVar, expr: EventSetExpr) -> EventSetExpr:
    if isinstance(expr, Literal):
        return Literal(tuple(e if p == x else p for p in expr.params))
    if isinstance(expr, FullAlphabet):
        return expr
    return type(expr)(_subst_set(e, x, expr.left), _subst_set(e, x, expr.right))


def substitute(e: Event, x: EventVar, term: Term) -> Term:
    """Replace every free occurrence of ``x`` in ``term`` with the event ``e``.

    Capture cannot occur (events are ground), but shadowing is respected: the
    set of a prefix rebinding ``x`` is still substituted (it is evaluated in
    the enclosing scope), while its body is left alone.
    """
    if isinstance(term, (Stop, Fail)):
        return term
    if isinstance(term, Prefix):
        new_set = _subst_set(e, x, term.events)
        if term.var == x:
            return Prefix(term.var, new_set, term.body)
        return Prefix(term.var, new_set, substitute(e, x, term.body))
    if isinstance(term, Choice):
        return Choice(substitute(e, x, term.left), substitute(e, x, term.right))
    return Parallel(
        substitute(e, x, term.left),
        _subst_set(e, x, term.sync),
        substitute(e, x, term.right),
    )


@lru_cache(maxsize=None)
def is_doomed(term: Term) -> bool:
    """Syntactic doomed check: D ::= FAIL | D [] D | D || P | P || D.

    A doomed term inevitably propagates failure; a viable term is any other.
    """
    if isinstance(term, Fail):
        return True
    if isinstance(term, Choice):
        return is_doomed(term.left) and is_doomed(term.right)
    if isinstance(term, Parallel):
        return is_doomed(term.left) or is_doomed(term.right)
    return False


def term_size(term: Term) -> int:
    """Constructor count; event sets do not contribute."""
    if isinstance(term, (Stop, Fail)):
        return 1
    if isinstance(term, Prefix):
        return term_size(term.body) + 1
    return term_size(term.left) + term_size(term.right) + 1


def _set_free_vars(expr: EventSetExpr) -> frozenset[EventVar]:
    if isinstance(expr, Literal):
        return frozenset(p for p in expr.params if isinstance(p, EventVar))
    if isinstance(expr, FullAlphabet):
        return frozenset()
    return _set_free_vars(expr.left) | _set_free_vars(expr.right)


@lru_cache(maxsize=None)
def free_vars(term: Term) -> frozenset[EventVar]:
    if isinstance(term, (Stop, Fail)):
        return frozenset()
    if isinstance(term, Prefix):
        return _set_free_vars(term.events) | (free_vars(term.body) - {term.var})
    if isinstance(term, Choice):
        return free_vars(term.left) | free_vars(term.right)
    return free_vars(term.left) | _set_free_vars(term.sync) | free_vars(term.right)


def is_closed(term: Term) -> bool:
    return not free_vars(term)


def prefix_depth(term: Term) -> int:
    """Upper bound on the length of any trace the term can emit.

    Prefix nesting counts 1 per binder; parallel operands run concurrently,
    so their bounds add.
    """
    if isinstance(term, (Stop, Fail)):
        return 0
    if isinstance(term, Prefix):
        return prefix_depth(term.body) + 1
    if isinstance(term, Choice):
        return max(prefix_depth(term.left), prefix_depth(term.right))
    return prefix_depth(term.left) + prefix_depth(term.right)
