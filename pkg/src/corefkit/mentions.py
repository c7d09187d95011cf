"""Mention detection from constituency trees, pleonastic pronouns, and
annotation-scheme filtering."""
import logging
import re
from dataclasses import replace
from functools import lru_cache

from . import tags
from .corpus import classify_mention_type, isbarepronoun
from .entities import Entity, EntitySet, Mention, _order
from .features import assign_features
from .tree import (findhead, headofspan, iscoordination, isappositive,
		minimalspan, strip_relative, trimpunct)

LOG = logging.getLogger(__name__)
SCHEMES = ('riddle', 'sonar')
EXPLETIVES = frozenset(('het', "'t"))
GAP = 6


class MentionDetectionError(ValueError):
	pass


def head_of(node, sentence):
	"""Token index of the head of a constituent (or a bare token index).

	Falls back to the last token when the constituent contains no noun,
	name or pronoun; that case is logged."""
	idx, fallback = findhead(node, sentence)
	if fallback:
		LOG.info('no nominal head for %r; using last token %d', node, idx)
	return idx


def minimal_span(node, sentence):
	"""Span of an NP without trailing relative clauses and post-head PPs."""
	return minimalspan(node, sentence)


def make_mention(doc_id, sentence, sentence_index, span, node=None,
		full_span=None, corrected_span=None, referring=True, lexicon=None):
	"""Build a Mention with head, minimal span, type and features.

	When no constituent is given, one with exactly this span is looked up
	in the parse tree; without a tree the head comes from POS tags."""
	start, end = span
	if not 0 <= start <= end < len(sentence.tokens):
		raise ValueError('span %r outside sentence %d of length %d' % (
				span, sentence_index, len(sentence.tokens)))
	if node is None and sentence.parse_tree is not None:
		node = sentence.parse_tree.find(start, end, 'np')
		if node is not None and node.category not in ('np', 'coord'):
			node = None
	if node is not None:
		head, _ = findhead(node, sentence)
		mstart, mend = minimalspan(node, sentence)
	else:
		head, _ = headofspan(sentence, start, end)
		mstart, mend = start, end
	head = min(max(head, start), end)
	mstart, mend = max(mstart, start), min(mend, end)
	if not mstart <= head <= mend:
		mstart, mend = min(mstart, head), max(mend, head)
	mention = Mention(doc_id=doc_id, sentence_index=sentence_index,
			span=(start, end), head_index=head, min_span=(mstart, mend),
			text=' '.join(sentence.words(start, end)),
			full_span=full_span, corrected_span=corrected_span,
			referring=referring)
	mention = replace(mention,
			surface_type=classify_mention_type(mention, sentence))
	return replace(mention,
			features=assign_features(mention, sentence, lexicon))


def _ispronountoken(token):
	"""Personal, possessive or reflexive pronoun; excludes relative and
	demonstrative pronouns, which share POS tags in CGN."""
	form = token.form.lower()
	cat = tags.category(token.pos)
	if cat is None:
		return isbarepronoun(form)
	return cat == 'pronoun' and form in tags.PRONOUNS


def _candidates(sentence):
	"""Yield (full span, node or None) pairs for one sentence."""
	tree = sentence.parse_tree
	for node in tree.subtrees():
		if node.category == 'np':
			if len(node.leaves()) == 1 and tags.category(
					sentence.tokens[node.start].pos) == 'pronoun' and (
					not _ispronountoken(sentence.tokens[node.start])):
				continue
			if isappositive(node, sentence):
				continue
			parent = node.parent
			if (parent is not None and parent.category == 'np'
					and not iscoordination(parent, sentence)
					and not isappositive(parent, sentence)
					and findhead(parent, sentence)[0]
						== findhead(node, sentence)[0]):
				continue
			yield node.span, node
		elif node.category == 'coord' and sum(
				1 for child in node.children
				if not isinstance(child, int) and child.category == 'np'
				) >= 2:
			yield node.span, node
	for n, token in enumerate(sentence.tokens):
		if _ispronountoken(token):
			yield (n, n), None
	for start, end, _label in sentence.ner_spans:
		yield (start, end), None


def detect_mentions(document, scheme='riddle', lexicon=None,
		pleonastic_default=True):
	"""Extract candidate mentions from parse trees, pronouns and NER spans.

	Returns mentions ordered by (sentence, start, end descending), with
	duplicate spans removed.  The scheme determines the mention boundary:
	'riddle' strips relative clauses and drops pleonastic pronouns;
	'sonar' keeps full constituents and keeps pleonastic pronouns (marked
	non-referring).  ``pleonastic_default`` decides "het" outside the
	listed expletive constructions (see is_pleonastic)."""
	if scheme not in SCHEMES:
		raise ValueError('unknown scheme %r' % scheme)
	result = {}
	for sentno, sentence in enumerate(document.sentences):
		if sentence.parse_tree is None:
			raise MentionDetectionError(
					'document %s, sentence %d has no parse tree'
					% (document.id, sentno))
		for span, node in _candidates(sentence):
			full = trimpunct(sentence, *span)
			if node is not None:
				corrected = strip_relative(node, sentence)
			else:
				corrected = full
			target = corrected if scheme == 'riddle' else full
			key = (sentno, ) + target
			if key in result:
				continue
			mention = make_mention(document.id, sentence, sentno, target,
					node=node,
					full_span=full, corrected_span=corrected, lexicon=lexicon)
			if mention.surface_type == 'pronoun' and is_pleonastic(
					mention, sentence, pleonastic_default):
				if scheme == 'riddle':
					continue
				mention = replace(mention, referring=False)
			result[key] = mention
	return sorted(result.values(), key=_order)


@lru_cache(maxsize=None)
def pleonastic_patterns():
	"""Compiled patterns from the bundled pleonastic list."""
	return tuple(parsepattern(line.split('#')[0])
			for line in tags.readlines('pleonastic.txt')
			if line.split('#')[0].strip())


def parsepattern(line):
	"""Turn a pattern line into a tuple of elements.

	Elements are ('pron', None), ('any', None), ('gap', None) or
	('word', frozenset of forms)."""
	result = []
	for item in re.findall(r'\[[^\]]*\]|\S+', line):
		if item == 'het':
			result.append(('pron', None))
		elif item == '*':
			result.append(('any', None))
		elif item == '...':
			result.append(('gap', None))
		elif item.startswith('['):
			result.append(('word', frozenset(
					a.strip().lower() for a in item[1:-1].split('|'))))
		else:
			result.append(('word', frozenset((item.lower(), ))))
	if sum(1 for kind, _ in result if kind == 'pron') != 1:
		raise ValueError('pattern needs exactly one "het": %r' % line)
	return tuple(result)


def _match(pattern, words, pos, target):
	"""True if pattern matches words starting at pos with its pronoun
	element at index target."""
	if not pattern:
		return True
	kind, forms = pattern[0]
	rest = pattern[1:]
	if kind == 'gap':
		return any(_match(rest, words, pos + n, target)
				for n in range(GAP + 1) if pos + n <= len(words))
	if pos >= len(words):
		return False
	if kind == 'pron':
		return pos == target and _match(rest, words, pos + 1, target)
	if kind == 'word' and words[pos] not in forms:
		return False
	return _match(rest, words, pos + 1, target)


def matches_pleonastic_pattern(sentence, index):
	"""True if the token at index is the pronoun slot of a listed
	expletive construction."""
	words = [token.form.lower() for token in sentence.tokens]
	if words[index] not in EXPLETIVES:
		return False
	return any(_match(pattern, words, start, index)
			for pattern in pleonastic_patterns()
			for start in range(index + 1))


def is_pleonastic(mention, sentence, default=True):
	"""True if the mention is a non-referring (expletive) "het".

	A "het" in a listed construction (weather verb, cleft, fixed
	expression) is pleonastic.  Other occurrences of "het" are ambiguous
	between expletive and anaphoric use; they get the value of
	``default``, which treats them as non-mentions unless set to False.
	Other pronouns are never pleonastic."""
	start, end = mention.span
	if start != end or sentence.tokens[start].form.lower() not in EXPLETIVES:
		return False
	if matches_pleonastic_pattern(sentence, start):
		return True
	return default


def scheme_filter(mentions, entities, scheme):
	"""Apply an annotation scheme's mention rules to mentions and entities.

	'sonar' keeps every markable, including non-referring ones, with the
	boundary of the full constituent.  'riddle' drops non-referring
	mentions and uses corrected boundaries (without relative clauses).
	Mentions whose adjusted spans coincide are merged into the first one;
	entities left empty are dropped.  Returns (mentions, entities)."""
	if scheme not in SCHEMES:
		raise ValueError('unknown scheme %r' % scheme)
	mapping = {}
	seen = {}
	for mention in sorted(mentions, key=_order):
		if scheme == 'riddle' and not mention.referring:
			continue
		span = mention.corrected_span if scheme == 'riddle' else (
				mention.full_span)
		new = mention.with_span(span) if span != mention.span else mention
		if new.key in seen:
			mapping[mention.key] = seen[new.key]
			continue
		seen[new.key] = new
		mapping[mention.key] = new
	kept = sorted(seen.values(), key=_order)
	newentities = []
	assigned = set()
	for entity in entities:
		members = []
		for mention in entity.mentions:
			new = mapping.get(mention.key)
			if new is not None and new.key not in assigned:
				assigned.add(new.key)
				members.append(new)
		newentities.append(Entity(entity.id, tuple(members)))
	return kept, EntitySet(newentities)
