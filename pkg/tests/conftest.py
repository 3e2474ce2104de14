"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the production code paths they check:
doomed classification is re-derived by naive grammar matching, and the
parallel trace operator by brute-force merging of trace pairs.
"""

from __future__ import annotations

import pytest

from cspmon.terms import Choice, Fail, Parallel, Term
from cspmon.traces import EPSILON, Trace


@pytest.fixture
def ab() -> frozenset[str]:
    return frozenset({"a", "b"})


@pytest.fixture
def abc() -> frozenset[str]:
    return frozenset({"a", "b", "c"})


def doomed_by_grammar(term: Term) -> bool:
    """Naive membership in D ::= FAIL | D [] D | D || P | P || D."""
    if isinstance(term, Fail):
        return True
    if isinstance(term, Choice):
        return doomed_by_grammar(term.left) and doomed_by_grammar(term.right)
    if isinstance(term, Parallel):
        return doomed_by_grammar(term.left) or doomed_by_grammar(term.right)
    return False


def merges(s: Trace, t: Trace, sync: frozenset[str]) -> frozenset[Trace]:
    """All full synchronized interleavings of two single traces."""
    if not s and not t:
        return frozenset({EPSILON})
    out = set()
    if s and s[0] not in sync:
        out |= {(s[0],) + r for r in merges(s[1:], t, sync)}
    if t and t[0] not in sync:
        out |= {(t[0],) + r for r in merges(s, t[1:], sync)}
    if s and t and s[0] == t[0] and s[0] in sync:
        out |= {(s[0],) + r for r in merges(s[1:], t[1:], sync)}
    return frozenset(out)


def parcomp_bruteforce(
    traces1: frozenset[Trace],
    sync: frozenset[str],
    traces2: frozenset[Trace],
    max_len: int,
) -> frozenset[Trace]:
    """Union of pairwise merges, truncated; empty if either side is empty.

    Valid for prefix-closed inputs: every prefix of a merge is a merge of
    prefixes, so the union is prefix-closed by itself.
    """
    if not traces1 or not traces2:
        return frozenset()
    out = set()
    for s in traces1:
        for t in traces2:
            out |= {m for m in merges(s, t, sync) if len(m) <= max_len}
    return frozenset(out)


def prefix_closure(traces) -> frozenset[Trace]:
    out = set()
    for t in traces:
        for i in range(len(t) + 1):
            out.add(t[:i])
    return frozenset(out)
