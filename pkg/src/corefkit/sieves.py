"""Deterministic multi-pass (sieve) coreference resolution.

Every mention starts as its own entity.  Each sieve visits the mentions in
document order and may merge the entity of a mention with the entity of
an earlier mention; sieves never split entities.  A merge only happens
when the two entities are agreement-compatible.
"""
from dataclasses import dataclass, replace

from . import tags
from .entities import EntitySet, _order
from .features import compatible
from .quotes import detect_quotes
from .tags import UNKNOWN
from .tree import isappositive

SIEVES = ('exact_match', 'precise_constructs', 'strict_head_match',
		'relaxed_head_match', 'proper_head_match', 'pronoun_resolution')
SUBJECT_TAGS = frozenset(('sbj', 'su', 'subj', 'nsubj'))
OBJECT_TAGS = frozenset(('obj', 'obj1', 'obj2', 'dobj', 'iobj', 'vc'))


@dataclass(frozen=True)
class SieveConfig:
	"""Ordered sieve names plus tunable parameters.

	:ivar pronoun_window: number of sentences searched for a pronoun
		antecedent, counting the pronoun's own sentence.
	:ivar relaxed_window: number of most recent prior entities considered
		by relaxed head match.
	:ivar addressee_links: link second-person pronouns inside quotes to
		the addressee."""
	sieves: tuple = SIEVES
	scheme: str = 'riddle'
	pronoun_window: int = 3
	relaxed_window: int = 5
	addressee_links: bool = True

	def __post_init__(self):
		object.__setattr__(self, 'sieves', tuple(self.sieves))
		for name in self.sieves:
			if name not in SIEVES:
				raise ValueError('unknown sieve %r; choose from %s'
						% (name, ', '.join(SIEVES)))
		if len(set(self.sieves)) != len(self.sieves):
			raise ValueError('sieve listed twice: %r' % (self.sieves, ))
		if self.scheme not in ('riddle', 'sonar'):
			raise ValueError('unknown scheme %r' % self.scheme)
		if self.pronoun_window < 1 or self.relaxed_window < 1:
			raise ValueError('windows must be positive')

	@classmethod
	def from_names(cls, names, **kwds):
		"""Parse 'all', 'none', or a comma-separated list of sieve names."""
		if names in (None, 'all'):
			return cls(**kwds)
		if names == 'none':
			return cls(sieves=(), **kwds)
		return cls(sieves=tuple(a.strip() for a in names.split(',')
				if a.strip()), **kwds)

	@classmethod
	def from_text(cls, text):
		"""Read a config file: one sieve name per line in order, and
		optional ``key=value`` lines (scheme, pronoun_window,
		relaxed_window, addressee_links); '#' starts a comment."""
		sieves = []
		kwds = {}
		for line in text.splitlines():
			line = line.split('#')[0].strip()
			if not line:
				continue
			if '=' in line:
				key, value = (a.strip() for a in line.split('=', 1))
				if key in ('pronoun_window', 'relaxed_window'):
					kwds[key] = int(value)
				elif key == 'addressee_links':
					kwds[key] = value.lower() in ('1', 'true', 'yes', 'on')
				elif key == 'scheme':
					kwds[key] = value
				else:
					raise ValueError('unknown config key %r' % key)
			else:
				sieves.append(line)
		return cls(sieves=tuple(sieves), **kwds)

	def to_text(self):
		return ''.join(name + '\n' for name in self.sieves) + (
				'scheme=%s\npronoun_window=%d\nrelaxed_window=%d\n'
				'addressee_links=%s\n' % (self.scheme, self.pronoun_window,
					self.relaxed_window, self.addressee_links))


def merge_compatible(a, b):
	"""Agreement check used when merging entities.  Person is not compared:
	a first-person pronoun in a quote refers to a third-person speaker."""
	return compatible(replace(a.features, person=UNKNOWN),
			replace(b.features, person=UNKNOWN))


class Resolver:
	"""Mutable clustering state for one document."""

	def __init__(self, document, mentions, config):
		self.document = document
		self.config = config
		self.mentions = sorted(mentions, key=_order)
		self.index = {m.key: n for n, m in enumerate(self.mentions)}
		if len(self.index) != len(self.mentions):
			raise ValueError('duplicate mention spans')
		self.cluster = list(range(len(self.mentions)))
		self.members = {n: [n] for n in range(len(self.mentions))}
		self._quotes = None

	@property
	def quotes(self):
		if self._quotes is None:
			self._quotes = detect_quotes(self.document, self.mentions)
		return self._quotes

	def entity_count(self):
		return len(self.members)

	def same(self, i, j):
		return self.cluster[i] == self.cluster[j]

	def compatible(self, i, j):
		"""True if the entities of mentions i and j may be merged."""
		left = self.members[self.cluster[i]]
		right = self.members[self.cluster[j]]
		return all(merge_compatible(self.mentions[a], self.mentions[b])
				for a in left for b in right)

	def merge(self, i, j):
		"""Merge entities of mentions i and j if compatible; returns True
		if they are (now) in the same entity."""
		a, b = self.cluster[i], self.cluster[j]
		if a == b:
			return True
		if not self.compatible(i, j):
			return False
		keep, drop = min(a, b), max(a, b)
		for n in self.members[drop]:
			self.cluster[n] = keep
		self.members[keep] = sorted(self.members[keep] + self.members[drop])
		del self.members[drop]
		return True

	def result(self):
		return EntitySet.from_clusters(
				[self.mentions[n] for n in members]
				for members in self.members.values())

	def sentence(self, mention):
		return self.document.sentences[mention.sentence_index]

	def words(self, mention):
		return self.sentence(mention).words(*mention.span)

	# helpers shared by sieves

	def usable(self, n):
		return self.mentions[n].referring

	def nested(self, i, j):
		a, b = self.mentions[i], self.mentions[j]
		return a.sentence_index == b.sentence_index and (
				a.span[0] <= b.span[0] <= b.span[1] <= a.span[1]
				or b.span[0] <= a.span[0] <= a.span[1] <= b.span[1])

	def head(self, n):
		m = self.mentions[n]
		return self.sentence(m).tokens[m.head_index].form.lower()

	def contentwords(self, n):
		m = self.mentions[n]
		sent = self.sentence(m)
		return {tok.form.lower()
				for tok in sent.tokens[m.span[0]:m.span[1] + 1]
				if tok.form.lower() not in tags.STOPWORDS
				and not tags.ispunct(tok)}

	def modifiers(self, n):
		"""Content words before the head."""
		m = self.mentions[n]
		sent = self.sentence(m)
		return {tok.form.lower()
				for tok in sent.tokens[m.span[0]:m.head_index]
				if tok.form.lower() not in tags.STOPWORDS
				and not tags.ispunct(tok)}


def _exact_match(state):
	groups = {}
	for n, m in enumerate(state.mentions):
		if m.surface_type == 'pronoun' or not state.usable(n):
			continue
		reps = groups.setdefault(tags.normalize(state.words(m)), [])
		if not any(state.merge(prev, n) for prev in reps):
			reps.append(n)


def _precise_constructs(state):
	bystart = {}
	for n, m in enumerate(state.mentions):
		bystart.setdefault((m.sentence_index, m.span[0]), []).append(n)
	for n, m in enumerate(state.mentions):
		if not state.usable(n):
			continue
		sent = state.sentence(m)
		after = m.span[1] + 1
		if after >= len(sent.tokens):
			continue
		form = sent.tokens[after].form.lower()
		for j in bystart.get((m.sentence_index, after + 1), ()):
			other = state.mentions[j]
			if not state.usable(j) or other.surface_type == 'pronoun':
				continue
			if form == ',' and _appositive(state, m, other):
				state.merge(n, j)
				break
			if form in tags.COPULAS and _predicative(state, m, other):
				state.merge(n, j)
				break


def _appositive(state, first, second):
	"""NP , NP [,] where one is a name and the other a nominal, or the
	parse tree has an appositive NP over both."""
	sent = state.sentence(first)
	tree = sent.parse_tree
	if tree is not None:
		for node in tree.subtrees():
			if isappositive(node, sent) and (
					node.children[0].span[0] == first.span[0]
					and node.children[2].span[0] == second.span[0]):
				return True
	types = {first.surface_type, second.surface_type}
	if types != {'name', 'nominal'}:
		return False
	end = second.span[1] + 1
	return end >= len(sent.tokens) or tags.ispunct(sent.tokens[end])


def _predicative(state, subject, predicate):
	"""Subject copula predicate-nominal; the predicate must end the clause
	and its head must not be a pronoun."""
	sent = state.sentence(subject)
	end = predicate.span[1] + 1
	return end >= len(sent.tokens) or tags.ispunct(sent.tokens[end])


def _head_match(state, strict):
	for n, m in enumerate(state.mentions):
		if m.surface_type == 'pronoun' or not state.usable(n):
			continue
		window = _recent_entities(state, n) if not strict else None
		for j in range(n - 1, -1, -1):
			other = state.mentions[j]
			if (other.surface_type == 'pronoun' or not state.usable(j)
					or state.same(n, j) or state.nested(n, j)):
				continue
			if strict:
				if state.head(n) != state.head(j):
					continue
				words = set().union(*(state.contentwords(a)
						for a in state.members[state.cluster[n]]))
				antwords = set().union(*(state.contentwords(a)
						for a in state.members[state.cluster[j]]))
				if not words <= antwords:
					continue
				if not state.modifiers(n) <= state.modifiers(j):
					continue
			else:
				if state.cluster[j] not in window:
					continue
				if state.head(n) not in {state.head(a)
						for a in state.members[state.cluster[j]]}:
					continue
			if state.merge(n, j):
				break


def _recent_entities(state, n):
	"""Ids of the entities of the most recent mentions before n."""
	result = []
	for j in range(n - 1, -1, -1):
		cid = state.cluster[j]
		if cid != state.cluster[n] and cid not in result:
			result.append(cid)
			if len(result) == state.config.relaxed_window:
				break
	return set(result)


def _strict_head_match(state):
	_head_match(state, strict=True)


def _relaxed_head_match(state):
	_head_match(state, strict=False)


def _proper_head_match(state):
	for n, m in enumerate(state.mentions):
		if m.surface_type != 'name' or not state.usable(n):
			continue
		for j in range(n - 1, -1, -1):
			other = state.mentions[j]
			if (other.surface_type != 'name' or state.same(n, j)
					or state.nested(n, j) or not state.usable(j)):
				continue
			if state.head(n) != state.head(j):
				continue
			if _conflicting_modifiers(state, m, other):
				continue
			if state.merge(n, j):
				break


def _conflicting_modifiers(state, a, b):
	"""Different numbers or location names inside the two mentions."""
	def mods(m):
		sent = state.sentence(m)
		numbers = {tok.form for tok in sent.tokens[m.span[0]:m.span[1] + 1]
				if tok.form.isdigit() or tags.category(tok.pos) == 'num'}
		locations = {' '.join(sent.words(s, e))
				for s, e, label in sent.ner_spans
				if label.upper() in ('LOC', 'GPE')
				and m.span[0] <= s and e <= m.span[1]
				and not (s <= m.head_index <= e)}
		return numbers, locations
	anum, aloc = mods(a)
	bnum, bloc = mods(b)
	return (anum and bnum and anum != bnum) or (
			aloc and bloc and aloc != bloc)


def grammatical_role(mention, sentence):
	"""'subject', 'object', or 'other', from function tags when present,
	otherwise from the position of the NP in its clause."""
	tree = sentence.parse_tree
	if tree is None:
		return 'other'
	node = tree.find(*mention.full_span)
	if node is None:
		node = tree.find(*mention.span)
	if node is None:
		return 'other'
	label = tags.function_tag(node.label)
	if label in SUBJECT_TAGS:
		return 'subject'
	if label in OBJECT_TAGS:
		return 'object'
	parent = node.parent
	if parent is None:
		return 'other'
	if parent.category in ('clause', 'top'):
		nps = [child for child in parent.children
				if not isinstance(child, int) and child.category == 'np']
		if nps and nps[0] is node:
			return 'subject'
		return 'object'
	if parent.category == 'vp':
		return 'object'
	return 'other'


ROLE_ORDER = {'subject': 0, 'object': 1, 'other': 2}


def _pronoun_resolution(state):
	quotes = state.quotes if any(
			m.surface_type == 'pronoun' and m.features.person in ('1', '2')
			for m in state.mentions) else []
	narrator = {}
	for n, m in enumerate(state.mentions):
		if m.surface_type != 'pronoun' or not state.usable(n):
			continue
		person = m.features.person
		if person in ('1', '2'):
			quote = next((q for q in quotes if q.contains(m)), None)
			if quote is None:
				if person in narrator:
					state.merge(narrator[person], n)
				else:
					narrator[person] = n
				continue
			target = quote.speaker if person == '1' else (
					quote.addressee if state.config.addressee_links else None)
			if target is not None and target.key in state.index:
				state.merge(state.index[target.key], n)
			continue
		for j in _antecedent_candidates(state, n):
			if state.merge(n, j):
				break


def _antecedent_candidates(state, n):
	"""Earlier mentions in the pronoun's window: by sentence, nearest
	first; within a sentence subjects, then objects, then the rest, each
	from nearest to farthest."""
	m = state.mentions[n]
	first = m.sentence_index - state.config.pronoun_window + 1
	bysent = {}
	for j in range(n - 1, -1, -1):
		other = state.mentions[j]
		if other.sentence_index < first:
			break
		if (state.same(n, j) or state.nested(n, j) or not state.usable(j)
				or other.features.person not in ('3', UNKNOWN)):
			continue
		if other.sentence_index == m.sentence_index and (
				other.span[0] >= m.span[0]):
			continue
		if not compatible(m.features, other.features):
			continue
		role = grammatical_role(other, state.sentence(other))
		bysent.setdefault(other.sentence_index, []).append(
				(ROLE_ORDER[role], -other.span[1], -other.span[0], j))
	for sentno in sorted(bysent, reverse=True):
		for *_, j in sorted(bysent[sentno]):
			yield j


SIEVE_FUNCTIONS = {
		'exact_match': _exact_match,
		'precise_constructs': _precise_constructs,
		'strict_head_match': _strict_head_match,
		'relaxed_head_match': _relaxed_head_match,
		'proper_head_match': _proper_head_match,
		'pronoun_resolution': _pronoun_resolution,
		}


def resolve(document, mentions, config=None, trace=None):
	"""Cluster mentions into entities by applying the configured sieves.

	:param trace: if a list is given, (sieve name, entity count) is
		appended after the initial state ('init') and after every pass.
	:returns: EntitySet with entity ids numbered by first mention."""
	config = config or SieveConfig()
	state = Resolver(document, mentions, config)
	if trace is not None:
		trace.append(('init', state.entity_count()))
	for name in config.sieves:
		SIEVE_FUNCTIONS[name](state)
		if trace is not None:
			trace.append((name, state.entity_count()))
	return state.result()
