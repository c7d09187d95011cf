"""Tag sets, word lists and other closed-class resources.

POS tags and constituent labels from different treebank conventions are
mapped onto a small set of coarse categories by ``data/tagmap.tsv``.
"""
from functools import lru_cache
from importlib import resources

UNKNOWN = 'unknown'

# Tags that mean "no annotation" in CoNLL columns.
EMPTY_TAGS = frozenset(('-', '_', '', '*'))

DETERMINERS = frozenset((
		'de', 'het', "'t", 'een', "'n", 'deze', 'die', 'dit', 'dat',
		'the', 'a', 'an'))

STOPWORDS = frozenset((
		'aan af al als bij dan dat de die dit een en er had heb hem het hij '
		'hoe ik in is je kan me men met mij nog nu of ons ook te tot uit '
		'van was wat we wel wij zal ze zei zij zo zou , . " \' ( )').split())

COPULAS = frozenset((
		'is was zijn waren wordt werd worden werden blijft bleef blijven '
		'bleven lijkt leek bleek blijkt heet heette').split())

COORDINATORS = frozenset(('en', 'of', 'maar', 'noch', 'and', 'or'))

QUOTE_PAIRS = {
		'"': ('"',),
		'``': ("''",),
		'“': ('”', '“'),
		'„': ('”', '“'),
		'«': ('»',),
		'‘': ('’',),
		"'": ("'",),
		}

# Closed-class pronoun table:
# form -> (gender, number, person, animacy, kind)
# "zij" and "ze" are left unspecified for gender and number (feminine
# singular or plural); context may resolve the number later.
PRONOUNS = {
		'ik': (UNKNOWN, 'sg', '1', 'animate', 'personal'),
		'mij': (UNKNOWN, 'sg', '1', 'animate', 'personal'),
		'me': (UNKNOWN, 'sg', '1', 'animate', 'personal'),
		'mijn': (UNKNOWN, 'sg', '1', 'animate', 'possessive'),
		'm\'n': (UNKNOWN, 'sg', '1', 'animate', 'possessive'),
		'mezelf': (UNKNOWN, 'sg', '1', 'animate', 'reflexive'),
		'mijzelf': (UNKNOWN, 'sg', '1', 'animate', 'reflexive'),
		'wij': (UNKNOWN, 'pl', '1', 'animate', 'personal'),
		'we': (UNKNOWN, 'pl', '1', 'animate', 'personal'),
		'ons': (UNKNOWN, 'pl', '1', 'animate', 'personal'),
		'onze': (UNKNOWN, 'pl', '1', 'animate', 'possessive'),
		'jij': (UNKNOWN, 'sg', '2', 'animate', 'personal'),
		'je': (UNKNOWN, 'sg', '2', 'animate', 'personal'),
		'jou': (UNKNOWN, 'sg', '2', 'animate', 'personal'),
		'jouw': (UNKNOWN, 'sg', '2', 'animate', 'possessive'),
		'jezelf': (UNKNOWN, 'sg', '2', 'animate', 'reflexive'),
		'u': (UNKNOWN, UNKNOWN, '2', 'animate', 'personal'),
		'uw': (UNKNOWN, UNKNOWN, '2', 'animate', 'possessive'),
		'jullie': (UNKNOWN, 'pl', '2', 'animate', 'personal'),
		'hij': ('masc', 'sg', '3', 'animate', 'personal'),
		'hem': ('masc', 'sg', '3', UNKNOWN, 'personal'),
		'zijn': (UNKNOWN, 'sg', '3', UNKNOWN, 'possessive'),
		'z\'n': (UNKNOWN, 'sg', '3', UNKNOWN, 'possessive'),
		'zij': (UNKNOWN, UNKNOWN, '3', UNKNOWN, 'personal'),
		'ze': (UNKNOWN, UNKNOWN, '3', UNKNOWN, 'personal'),
		'haar': ('fem', 'sg', '3', UNKNOWN, 'personal'),
		'het': ('neuter', 'sg', '3', UNKNOWN, 'personal'),
		"'t": ('neuter', 'sg', '3', UNKNOWN, 'personal'),
		'hen': (UNKNOWN, 'pl', '3', 'animate', 'personal'),
		'hun': (UNKNOWN, 'pl', '3', 'animate', 'possessive'),
		'zich': (UNKNOWN, UNKNOWN, '3', UNKNOWN, 'reflexive'),
		'zichzelf': (UNKNOWN, UNKNOWN, '3', UNKNOWN, 'reflexive'),
		# English, for test data and mixed input
		'i': (UNKNOWN, 'sg', '1', 'animate', 'personal'),
		'he': ('masc', 'sg', '3', 'animate', 'personal'),
		'him': ('masc', 'sg', '3', 'animate', 'personal'),
		'his': ('masc', 'sg', '3', 'animate', 'possessive'),
		'she': ('fem', 'sg', '3', 'animate', 'personal'),
		'her': ('fem', 'sg', '3', 'animate', 'personal'),
		'it': ('neuter', 'sg', '3', 'inanimate', 'personal'),
		'its': ('neuter', 'sg', '3', 'inanimate', 'possessive'),
		'they': (UNKNOWN, 'pl', '3', UNKNOWN, 'personal'),
		'them': (UNKNOWN, 'pl', '3', UNKNOWN, 'personal'),
		'their': (UNKNOWN, 'pl', '3', UNKNOWN, 'possessive'),
		}

# Pronoun forms that are also common non-pronoun words; without a POS tag
# these are not treated as pronouns ("zijn" is also the verb "to be").
AMBIGUOUS_PRONOUNS = frozenset(('zijn', 'haar', 'u', 'her'))

# Finite verb forms that disambiguate the number of an adjacent "zij"/"ze".
PLURAL_VERBS = frozenset((
		'zijn waren hebben hadden worden werden zullen zouden kunnen konden '
		'moeten moesten willen wilden gaan gingen komen kwamen lopen liepen '
		'zeiden vroegen lachten').split())
SINGULAR_VERBS = frozenset((
		'is was heeft had wordt werd zal zou kan kon moet moest wil wilde '
		'gaat ging komt kwam loopt liep zei vroeg lachte riep').split())


def _datafile(name):
	return resources.files('corefkit').joinpath('data').joinpath(name)


def readlines(name):
	"""Yield non-empty, non-comment lines of a bundled data file."""
	with _datafile(name).open(encoding='utf8') as inp:
		for line in inp:
			line = line.rstrip('\n')
			if line.strip() and not line.lstrip().startswith('#'):
				yield line


@lru_cache(maxsize=None)
def tagmap():
	"""Return dict mapping POS tags and labels to coarse categories."""
	result = {}
	for line in readlines('tagmap.tsv'):
		label, category = line.split('\t')
		result[label] = category
	return result


@lru_cache(maxsize=4096)
def category(tag):
	"""Coarse category of a POS tag or constituent label.

	Function tags (``NP-SBJ``, ``np-su``) and indices (``NP=2``) are
	ignored.  Returns ``'other'`` for unlisted tags and ``None`` for empty
	annotation."""
	if tag is None or tag in EMPTY_TAGS:
		return None
	table = tagmap()
	candidates = [tag, tag.split(',')[0], tag.split(',')[0].rstrip(')'),
			tag.split('(')[0]]
	base = tag.split('(')[0]
	for sep in '-=':
		if sep in base and not base.startswith(sep):
			base = base.split(sep)[0]
	candidates.extend((base, base.upper(), base.lower()))
	for candidate in candidates:
		if candidate in table:
			return table[candidate]
	return 'other'


def function_tag(label):
	"""Return the grammatical function suffix of a label, if any.

	>>> function_tag('NP-SBJ'), function_tag('np-su'), function_tag('NP')
	('sbj', 'su', None)
	"""
	if '-' in label[1:]:
		return label[1:].split('-', 1)[1].split('=')[0].lower() or None
	return None


def ispunct(token):
	"""True for punctuation tokens, by POS tag or by form."""
	cat = category(token.pos)
	if cat is not None:
		return cat == 'punct'
	return not any(char.isalnum() for char in token.form)


def isnominal(tag):
	return category(tag) in ('noun', 'name', 'pronoun')


@lru_cache(maxsize=None)
def lexicon():
	"""Return dict mapping lowercased words to (gender, number, animacy)."""
	result = {}
	for line in readlines('lexicon.tsv'):
		word, gender, number, animacy = line.split('\t')
		result[word] = (gender, number, animacy)
	return result


@lru_cache(maxsize=None)
def speechverbs():
	return frozenset(line.strip().lower() for line in readlines(
			'speechverbs.txt'))


def normalize(tokens):
	"""Normalized string for exact matching: lowercase, without leading
	determiners, whitespace collapsed.

	>>> normalize(['De', 'zeventiende', 'eeuw'])
	'zeventiende eeuw'
	"""
	words = [a.lower() for token in tokens for a in token.split()]
	while len(words) > 1 and words[0] in DETERMINERS:
		words = words[1:]
	return ' '.join(words)
