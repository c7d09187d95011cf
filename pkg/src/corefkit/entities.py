"""Mentions, agreement features, and entity partitions."""
from dataclasses import dataclass, field, replace

from .tags import UNKNOWN

GENDERS = ('masc', 'fem', 'neuter', UNKNOWN)
NUMBERS = ('sg', 'pl', UNKNOWN)
ANIMACIES = ('animate', 'inanimate', UNKNOWN)
PERSONS = ('1', '2', '3', UNKNOWN)
MENTION_TYPES = ('name', 'nominal', 'pronoun')


@dataclass(frozen=True)
class AgreementFeatures:
	gender: str = UNKNOWN
	number: str = UNKNOWN
	animacy: str = UNKNOWN
	person: str = UNKNOWN

	def __post_init__(self):
		for name, legal in (('gender', GENDERS), ('number', NUMBERS),
				('animacy', ANIMACIES), ('person', PERSONS)):
			if getattr(self, name) not in legal:
				raise ValueError('illegal %s %r' % (name, getattr(self, name)))

	def __str__(self):
		return 'g=%s n=%s a=%s p=%s' % (
				self.gender, self.number, self.animacy, self.person)


@dataclass(frozen=True)
class Mention:
	"""A token span within one sentence; all spans are inclusive.

	``full_span`` is the span of the complete constituent the mention was
	extracted from; ``corrected_span`` the same constituent without a
	trailing relative clause.  Both default to ``span``.  ``referring`` is
	False for expletive pronouns."""
	doc_id: str
	sentence_index: int
	span: tuple
	head_index: int
	min_span: tuple = None
	surface_type: str = 'nominal'
	features: AgreementFeatures = field(default_factory=AgreementFeatures)
	text: str = ''
	full_span: tuple = None
	corrected_span: tuple = None
	referring: bool = True

	def __post_init__(self):
		start, end = self.span
		if self.min_span is None:
			object.__setattr__(self, 'min_span', (start, end))
		for name in ('full_span', 'corrected_span'):
			if getattr(self, name) is None:
				object.__setattr__(self, name, (start, end))
		mstart, mend = self.min_span
		if not start <= end:
			raise ValueError('empty span %r' % (self.span, ))
		if not (start <= mstart <= self.head_index <= mend <= end):
			raise ValueError('need start <= head <= end with head in minimal '
					'span; got span=%r min_span=%r head=%d' % (
						self.span, self.min_span, self.head_index))
		if self.surface_type not in MENTION_TYPES:
			raise ValueError('illegal mention type %r' % self.surface_type)

	@property
	def start(self):
		return self.span[0]

	@property
	def end(self):
		return self.span[1]

	@property
	def key(self):
		"""(sentence, start, end): the identity used to align mentions."""
		return self.sentence_index, self.span[0], self.span[1]

	def with_span(self, span):
		"""Copy with a new span, clamping head and minimal span into it."""
		start, end = span
		head = min(max(self.head_index, start), end)
		mstart = min(max(self.min_span[0], start), head)
		mend = max(min(self.min_span[1], end), head)
		return replace(self, span=(start, end), head_index=head,
				min_span=(mstart, mend))

	def __repr__(self):
		return 'Mention(%d, %d-%d, %r)' % (
				self.sentence_index, self.span[0], self.span[1], self.text)


@dataclass(frozen=True)
class Entity:
	id: int
	mentions: tuple

	@property
	def features(self):
		"""Accumulated features: per field, the value asserted by members.

		Where members assert distinct values for gender (possible only
		through the animate-neuter exception), the non-neuter value wins."""
		result = {}
		for name in ('gender', 'number', 'animacy', 'person'):
			values = {getattr(m.features, name) for m in self.mentions} - {
					UNKNOWN}
			if len(values) > 1 and name == 'gender':
				values.discard('neuter')
			result[name] = values.pop() if len(values) == 1 else UNKNOWN
		return AgreementFeatures(**result)

	def __len__(self):
		return len(self.mentions)

	def __iter__(self):
		return iter(self.mentions)


class EntitySet:
	"""A partition of mentions into entities.

	Entities are kept sorted by their first mention; mentions within an
	entity are kept in document order.  Two entity sets are equal when
	they have the same entity ids with the same mention spans."""

	def __init__(self, entities=()):
		entities = [e if isinstance(e, Entity) else Entity(e[0], tuple(e[1]))
				for e in entities]
		seen = {}
		ids = set()
		result = []
		for entity in entities:
			if not entity.mentions:
				continue
			if entity.id in ids:
				raise ValueError('duplicate entity id %r' % entity.id)
			ids.add(entity.id)
			for mention in entity.mentions:
				if mention.key in seen:
					raise ValueError('mention %r is in entities %r and %r' % (
							mention, seen[mention.key], entity.id))
				seen[mention.key] = entity.id
			result.append(Entity(entity.id, tuple(
					sorted(entity.mentions, key=_order))))
		result.sort(key=lambda e: _order(e.mentions[0]))
		self.entities = result
		self._entityof = seen

	@classmethod
	def from_clusters(cls, clusters):
		"""Build from a sequence of mention collections; ids are assigned
		in order of first mention."""
		clusters = [sorted(c, key=_order) for c in clusters if c]
		clusters.sort(key=lambda c: _order(c[0]))
		return cls(Entity(n, tuple(c)) for n, c in enumerate(clusters))

	def mentions(self):
		"""All mentions in document order."""
		return sorted((m for e in self.entities for m in e.mentions),
				key=_order)

	def entity_of(self, mention):
		"""Return the id of the entity containing mention (or its key)."""
		key = mention.key if isinstance(mention, Mention) else mention
		return self._entityof.get(key)

	def get(self, entity_id):
		for entity in self.entities:
			if entity.id == entity_id:
				return entity
		raise KeyError(entity_id)

	def clusters(self):
		"""List of frozensets of mention keys, for scoring."""
		return [frozenset(m.key for m in e.mentions) for e in self.entities]

	def as_dict(self):
		return {e.id: tuple(m.key for m in e.mentions) for e in self.entities}

	def without_singletons(self):
		return EntitySet(e for e in self.entities if len(e.mentions) > 1)

	def restrict(self, keep):
		"""Keep only mentions for which keep(mention) is true; entities
		that become empty are dropped."""
		return EntitySet(Entity(e.id, tuple(m for m in e.mentions if keep(m)))
				for e in self.entities)

	def renumbered(self):
		"""Copy with entity ids 0..n-1 in order of first mention."""
		return EntitySet(Entity(n, e.mentions)
				for n, e in enumerate(self.entities))

	def __len__(self):
		return len(self.entities)

	def __iter__(self):
		return iter(self.entities)

	def __eq__(self, other):
		if not isinstance(other, EntitySet):
			return NotImplemented
		return self.as_dict() == other.as_dict()

	def __repr__(self):
		return 'EntitySet(%d entities, %d mentions)' % (
				len(self.entities), len(self._entityof))


def _order(mention):
	"""Document order: sentence, start, longer spans first."""
	return mention.sentence_index, mention.span[0], -mention.span[1]
