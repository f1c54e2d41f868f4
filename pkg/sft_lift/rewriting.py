"""
    sft_lift.rewriting
    ~~~~~~~~~~~~~~~~~~

    Word oracle backed by a user-supplied confluent string rewriting system.

    Rules must strictly decrease in the shortlex order, so that rewriting always
    terminates. Local confluence is checked on every critical pair whose overlap
    word is short enough; no completion is attempted.

    :license: MIT, see LICENSE for more details.
"""
import itertools
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sft_lift.exceptions import NotConfluent, PresentationError
from sft_lift.groups import GeneratorSymbol, Word, WordOracle

logger = logging.getLogger(__name__)

Rule = Tuple[Word, Word]

CRITICAL_PAIR_LENGTH = 8


def shortlex_key(word: Word) -> Tuple[int, Word]:
    return len(word), tuple(word)


def _find(word: Word, pattern: Word, start: int = 0) -> int:
    n = len(pattern)
    for i in range(start, len(word) - n + 1):
        if word[i:i + n] == pattern:
            return i
    return -1


def rewrite(word: Iterable[str], rules: Sequence[Rule]) -> Word:
    """ Rewrites `word` to its irreducible form, always at the leftmost redex """
    word = tuple(word)
    while True:
        best = None
        for left, right in rules:
            position = _find(word, left)
            if position >= 0 and (best is None or position < best[0]):
                best = (position, left, right)
        if best is None:
            return word
        position, left, right = best
        word = word[:position] + right + word[position + len(left):]


def _one_step(word: Word, position: int, rule: Rule) -> Word:
    left, right = rule
    return word[:position] + right + word[position + len(left):]


def critical_pairs(rules: Sequence[Rule], max_length: int = CRITICAL_PAIR_LENGTH):
    """ Yields (word, first result, second result) for every overlap of two left-hand sides """
    for r1, r2 in itertools.product(rules, repeat=2):
        l1, l2 = r1[0], r2[0]
        # l2 inside l1
        if r1 is not r2:
            position = _find(l1, l2)
            while position >= 0:
                yield l1, r1[1], _one_step(l1, position, r2)
                position = _find(l1, l2, position + 1)
        # a proper suffix of l1 is a prefix of l2
        for k in range(1, min(len(l1), len(l2))):
            if l1[-k:] != l2[:k]:
                continue
            word = l1 + l2[k:]
            if len(word) > max_length:
                continue
            yield word, r1[1] + l2[k:], _one_step(word, len(l1) - k, r2)


class RewritingSystem(WordOracle):
    """ Word oracle whose canonical forms are irreducible words

    Args:
        generators: the generator symbols
        rules: the rewriting rules (left, right), each strictly shortlex-decreasing
        amenable: whether the presented group is known to be amenable

    Raises:
        PresentationError: if a rule does not decrease in the shortlex order
        NotConfluent: if a critical pair rewrites to two different normal forms
    """
    kind = 'rewriting'

    def __init__(self, generators: Sequence[GeneratorSymbol], rules: Iterable[Tuple[Iterable[str], Iterable[str]]],
                 amenable: bool = False) -> None:
        super().__init__(generators)
        self.amenable = amenable
        self.rules: List[Rule] = []
        for left, right in rules:
            self._add_rule(tuple(left), tuple(right))
        for g in self.generators:
            if g.inverse is not None and ((g.name, g.inverse), ()) not in self.rules:
                self._add_rule((g.name, g.inverse), ())
        self.check_confluence()

    def _add_rule(self, left: Word, right: Word) -> None:
        self.check_word(left)
        self.check_word(right)
        if shortlex_key(left) <= shortlex_key(right):
            raise PresentationError(f"The rule {left} -> {right} does not decrease in the shortlex order")
        self.rules.append((left, right))

    def check_confluence(self, max_length: int = CRITICAL_PAIR_LENGTH) -> None:
        count = 0
        for word, first, second in critical_pairs(self.rules, max_length):
            count += 1
            if rewrite(first, self.rules) != rewrite(second, self.rules):
                raise NotConfluent(f"The overlap {word} rewrites to {rewrite(first, self.rules)} "
                                   f"and to {rewrite(second, self.rules)}")
        logger.debug(f" {count} critical pairs resolved for {len(self.rules)} rules")

    def identity(self) -> Word:
        return ()

    def _apply(self, element: Word, letter: str) -> Word:
        return rewrite(element + (letter,), self.rules)

    def to_word(self, element: Word) -> Word:
        return element

    def _relations(self):
        return [rule for rule in self.rules if rule[1] != () or len(rule[0]) != 2
                or self._inverses.get(rule[0][0]) != rule[0][1]]

    def to_spec(self) -> Dict[str, Any]:
        return {'kind': self.kind,
                'generators': [{'name': g.name, 'inverse': g.inverse} for g in self.generators],
                'rules': [[list(left), list(right)] for left, right in self.rules],
                'amenable': self.amenable}


def from_rules(names: Sequence[str], rules: Iterable[Tuple[str, str]],
               inverses: Optional[Dict[str, str]] = None, amenable: bool = False) -> RewritingSystem:
    """ Convenience constructor taking single-character generator names and string rules """
    inverses = inverses or {}
    generators = [GeneratorSymbol(name, inverses.get(name)) for name in names]
    return RewritingSystem(generators, [(tuple(left), tuple(right)) for left, right in rules], amenable)
