"""Documents, sentences and tokens of a CoNLL-2012 style corpus."""
from dataclasses import dataclass, field
from functools import cached_property

from . import tags
from .tree import fromparsebits


@dataclass(frozen=True)
class Token:
	"""One line of a CoNLL file.

	``columns`` holds the raw fields of the input line without the final
	coreference column, so that columns this package does not interpret
	(lemma, frameset, speaker, arguments) survive a round trip.  It is
	None for tokens that were not read from a file, and is ignored when
	comparing tokens."""
	index_in_sentence: int
	form: str
	pos: str = '-'
	parse_bit: str = '-'
	ner_bit: str = '*'
	coref_bit: str = '-'
	columns: tuple = field(default=None, compare=False)

	def __post_init__(self):
		if not self.form:
			raise ValueError('empty token form at index %d'
					% self.index_in_sentence)


@dataclass(frozen=True, eq=False)
class Sentence:
	tokens: tuple
	paragraph_start: bool = False

	def __post_init__(self):
		object.__setattr__(self, 'tokens', tuple(self.tokens))
		for n, token in enumerate(self.tokens):
			if token.index_in_sentence != n:
				raise ValueError('token indices not contiguous: %r at %d'
						% (token.index_in_sentence, n))

	@cached_property
	def parse_tree(self):
		"""Constituency tree recovered from parse bits, or None."""
		return fromparsebits([token.parse_bit for token in self.tokens])

	@cached_property
	def ner_spans(self):
		"""List of (start, end, label) named-entity spans, inclusive.

		Accepts CoNLL-2012 brackets (``(PER*``, ``*``, ``*)``, ``(LOC)``)
		and IOB tags (``B-PER``, ``I-PER``, ``O``)."""
		result = []
		openspan = None
		for n, token in enumerate(self.tokens):
			bit = token.ner_bit
			if bit[:2] in ('B-', 'I-', 'E-', 'S-'):
				label = bit[2:]
				if bit[0] in 'BS' or openspan is None or openspan[1] != label:
					if openspan is not None:
						result.append((openspan[0], n - 1, openspan[1]))
					openspan = (n, label)
				if bit[0] in 'ES':
					result.append((openspan[0], n, openspan[1]))
					openspan = None
				continue
			if bit in ('O', '-', '_') and openspan is not None and (
					self.tokens[openspan[0]].ner_bit[:2] in ('B-', 'I-')):
				result.append((openspan[0], n - 1, openspan[1]))
				openspan = None
			if bit.startswith('('):
				label = bit[1:].rstrip(')*')
				if bit.endswith(')'):
					result.append((n, n, label))
				else:
					openspan = (n, label)
			elif bit.endswith(')') and openspan is not None:
				result.append((openspan[0], n, openspan[1]))
				openspan = None
		if openspan is not None:
			result.append((openspan[0], len(self.tokens) - 1, openspan[1]))
		return result

	def ner_label(self, index):
		"""Named-entity label of the span containing token index, or None."""
		for start, end, label in self.ner_spans:
			if start <= index <= end:
				return label
		return None

	def words(self, start=0, end=None):
		"""Token forms of an inclusive span."""
		end = len(self.tokens) - 1 if end is None else end
		return [token.form for token in self.tokens[start:end + 1]]

	def __len__(self):
		return len(self.tokens)

	def __eq__(self, other):
		if not isinstance(other, Sentence):
			return NotImplemented
		return (self.tokens == other.tokens
				and self.paragraph_start == other.paragraph_start)

	def __hash__(self):
		return hash(self.tokens)


@dataclass
class Document:
	"""A document (one ``#begin document`` part).

	``entities`` are the entities encoded in the coreference column: the
	gold annotation for a key file, the system output for a response."""
	id: str
	sentences: list
	part: int = 0
	genre: str = None
	entities: object = None

	@property
	def key(self):
		"""Unique name of this document part."""
		return '%s/%03d' % (self.id, self.part) if self.part else self.id

	@property
	def gold_entities(self):
		return self.entities

	def n_tokens(self):
		return sum(len(sent.tokens) for sent in self.sentences)

	def mention_text(self, mention):
		return ' '.join(self.sentences[mention.sentence_index].words(
				*mention.span))


@dataclass
class Corpus:
	documents: list = field(default_factory=list)
	split_label: str = None

	def __post_init__(self):
		seen = set()
		for doc in self.documents:
			if doc.key in seen:
				raise ValueError('duplicate document id %r' % doc.key)
			seen.add(doc.key)

	def __iter__(self):
		return iter(self.documents)

	def __len__(self):
		return len(self.documents)

	def __getitem__(self, key):
		for doc in self.documents:
			if doc.key == key:
				return doc
		raise KeyError(key)

	def keys(self):
		return [doc.key for doc in self.documents]


def classify_mention_type(mention, sentence):
	"""Return 'pronoun', 'name' or 'nominal' for a mention.

	Pronoun if the head has a pronominal POS tag (or, without a tag, is an
	unambiguous pronoun form); name if the head is inside a named-entity
	span or has a proper-noun tag; nominal otherwise."""
	head = mention.head_index
	if not 0 <= head < len(sentence.tokens):
		raise IndexError('head index %d out of range for sentence of '
				'length %d' % (head, len(sentence.tokens)))
	token = sentence.tokens[head]
	cat = tags.category(token.pos)
	if cat == 'pronoun' or (cat is None and isbarepronoun(token.form)):
		return 'pronoun'
	if cat == 'name' or sentence.ner_label(head) is not None:
		return 'name'
	return 'nominal'


def isbarepronoun(form):
	"""Pronoun identified by form alone (used when POS tags are absent)."""
	form = form.lower()
	return form in tags.PRONOUNS and form not in tags.AMBIGUOUS_PRONOUNS
