"""Agreement features (gender, number, animacy, person) and compatibility."""
from itertools import combinations

from . import tags
from .entities import AgreementFeatures
from .tags import UNKNOWN

# NER labels denoting persons and non-persons.
PERSON_LABELS = frozenset(('PER', 'PERSON', 'per', 'person'))
NONPERSON_LABELS = frozenset((
		'LOC', 'ORG', 'GPE', 'FAC', 'MISC', 'PRO', 'EVENT', 'WORK_OF_ART',
		'loc', 'org', 'gpe', 'misc'))


def _posnumber(pos):
	"""Grammatical number encoded in a POS tag, if any."""
	if pos in ('NNS', 'NNPS'):
		return 'pl'
	if pos in ('NN', 'NNP'):
		return 'sg'
	attrs = pos.partition('(')[2].rstrip(')').split(',')
	if 'mv' in attrs:
		return 'pl'
	if 'ev' in attrs:
		return 'sg'
	return UNKNOWN


def _zijnumber(sentence, idx):
	"""Number of "zij"/"ze" from an adjacent finite verb."""
	for n in (idx + 1, idx - 1):
		if 0 <= n < len(sentence.tokens):
			form = sentence.tokens[n].form.lower()
			if form in tags.PLURAL_VERBS:
				return 'pl'
			if form in tags.SINGULAR_VERBS:
				return 'sg'
	return UNKNOWN


def pronoun_features(form, sentence=None, idx=None):
	"""Features of a pronoun from the closed-class table; None if the
	form is not a listed pronoun."""
	form = form.lower()
	if form not in tags.PRONOUNS:
		return None
	gender, number, person, animacy, _kind = tags.PRONOUNS[form]
	if form in ('zij', 'ze') and sentence is not None and idx is not None:
		number = _zijnumber(sentence, idx)
		if number == 'sg':
			gender = 'fem'
	return AgreementFeatures(gender=gender, number=number, animacy=animacy,
			person=person)


def assign_features(mention, sentence, lexicon=None):
	"""Infer agreement features of a mention.

	Pronouns use the closed-class table; common nouns use the lexicon, which
	records grammatical gender and animacy separately (so "meisje" is
	neuter and animate); names use their NER type and, for persons, the
	first name.  Anything without evidence stays unknown."""
	lexicon = tags.lexicon() if lexicon is None else lexicon
	head = mention.head_index
	token = sentence.tokens[head]
	form = token.form.lower()
	if mention.surface_type == 'pronoun':
		result = pronoun_features(form, sentence, head)
		return result if result is not None else AgreementFeatures(person='3')
	number = _posnumber(token.pos)
	if mention.surface_type == 'name':
		label = sentence.ner_label(head)
		first = sentence.tokens[mention.min_span[0]].form.lower()
		gender, lexnumber, animacy = lexicon.get(first, (UNKNOWN, ) * 3)
		if label in NONPERSON_LABELS:
			gender, animacy = UNKNOWN, 'inanimate'
		elif label in PERSON_LABELS:
			animacy = 'animate'
		if number == UNKNOWN:
			number = 'sg' if label is not None else lexnumber
		return AgreementFeatures(gender=gender, number=number,
				animacy=animacy, person='3')
	if form not in lexicon:
		return AgreementFeatures(number=number)
	gender, lexnumber, animacy = lexicon[form]
	return AgreementFeatures(gender=gender,
			number=lexnumber if number == UNKNOWN else number,
			animacy=animacy, person='3')


def compatible(a, b):
	"""True if two feature bundles can describe the same referent.

	Unknown unifies with anything.  Gender is the exception to strict
	equality: a neuter animate noun (grammatical gender) may be referred to
	by a masculine or feminine pronoun (natural gender)."""
	for name in ('number', 'animacy', 'person'):
		x, y = getattr(a, name), getattr(b, name)
		if x != UNKNOWN and y != UNKNOWN and x != y:
			return False
	x, y = a.gender, b.gender
	if x == UNKNOWN or y == UNKNOWN or x == y:
		return True
	if x == 'neuter' and a.animacy == 'animate' and y in ('masc', 'fem'):
		return True
	if y == 'neuter' and b.animacy == 'animate' and x in ('masc', 'fem'):
		return True
	return False


def mentions_compatible(mentions):
	"""True if all pairs of the given mentions are compatible."""
	distinct = {m.features for m in mentions}
	return all(compatible(a, b) for a, b in combinations(distinct, 2))
