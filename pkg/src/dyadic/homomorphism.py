"""Indexed atom storage and backtracking homomorphism search."""

from __future__ import annotations

from .model import Atom, Variable


class AtomIndex:
    """A set of atoms indexed by predicate and by (predicate, position, term)."""

    def __init__(self, atoms=()):
        self._atoms = {}
        self.by_pred = {}
        self.by_arg = {}
        for a in atoms:
            self.add(a)

    def add(self, atom: Atom) -> bool:
        if atom in self._atoms:
            return False
        self._atoms[atom] = None
        self.by_pred.setdefault(atom.predicate, []).append(atom)
        for i, t in enumerate(atom.args):
            self.by_arg.setdefault((atom.predicate, i, t), []).append(atom)
        return True

    def __contains__(self, atom):
        return atom in self._atoms

    def __len__(self):
        return len(self._atoms)

    def __iter__(self):
        return iter(self._atoms)

    def candidates(self, pattern: Atom, binding: dict):
        best = self.by_pred.get(pattern.predicate, ())
        for i, t in enumerate(pattern.args):
            if isinstance(t, Variable):
                t = binding.get(t)
                if t is None:
                    continue
            bucket = self.by_arg.get((pattern.predicate, i, t), ())
            if len(bucket) < len(best):
                best = bucket
                if not best:
                    break
        return best


def match(pattern: Atom, fact: Atom, binding: dict):
    """Extend ``binding`` so that ``pattern`` maps onto ``fact``, or return None."""
    if pattern.predicate != fact.predicate or len(pattern.args) != len(fact.args):
        return None
    out = binding
    for p, f in zip(pattern.args, fact.args):
        if isinstance(p, Variable):
            bound = out.get(p)
            if bound is None:
                if out is binding:
                    out = dict(binding)
                out[p] = f
            elif bound != f:
                return None
        elif p != f:
            return None
    return out


def homomorphisms(patterns, sources, binding=None):
    """Yield every extension of ``binding`` mapping all ``patterns`` into their sources.

    ``sources`` is either one AtomIndex for all patterns or a list aligned with
    ``patterns`` of ``(index, accept)`` pairs, where ``accept`` is an optional
    predicate on candidate facts.  The next pattern to match is always the one
    with the fewest candidates under the current binding.
    """
    patterns = list(patterns)
    if isinstance(sources, AtomIndex):
        sources = [(sources, None)] * len(patterns)
    binding = {} if binding is None else dict(binding)
    yield from _search(patterns, list(sources), list(range(len(patterns))), binding)


def _search(patterns, sources, remaining, binding):
    if not remaining:
        yield binding
        return
    best_pos, best_cands = 0, None
    for pos, k in enumerate(remaining):
        cands = sources[k][0].candidates(patterns[k], binding)
        if best_cands is None or len(cands) < len(best_cands):
            best_pos, best_cands = pos, cands
            if not cands:
                return
    k = remaining[best_pos]
    rest = remaining[:best_pos] + remaining[best_pos + 1:]
    accept = sources[k][1]
    for fact in list(best_cands):
        if accept is not None and not accept(fact):
            continue
        extended = match(patterns[k], fact, binding)
        if extended is not None:
            yield from _search(patterns, sources, rest, extended)
