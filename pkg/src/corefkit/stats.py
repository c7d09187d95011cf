"""Corpus statistics and genre-stratified train/dev/test splits."""
import logging
import math
import random
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass

from .corpus import Corpus

LOG = logging.getLogger(__name__)
DEFAULT_GENRE = 'novel'
SPLIT_LABELS = ('train', 'dev', 'test')
RATIO_FIELDS = ('sents_per_doc', 'avg_sent_len', 'mentions_per_token',
		'mentions_per_entity', 'entities_per_token')
PCT_FIELDS = ('pct_pronouns', 'pct_nominal', 'pct_names')


@dataclass(frozen=True)
class StatsReport:
	"""Dataset statistics over gold mentions and entities.

	Ratios and percentages are stored unrounded; ``format_stats`` rounds
	ratios to two decimals and percentages to one."""
	n_documents: int = 0
	n_sentences: int = 0
	n_tokens: int = 0
	sents_per_doc: float = 0.0
	avg_sent_len: float = 0.0
	n_mentions: int = 0
	n_entities: int = 0
	mentions_per_token: float = 0.0
	mentions_per_entity: float = 0.0
	entities_per_token: float = 0.0
	pct_pronouns: float = 0.0
	pct_nominal: float = 0.0
	pct_names: float = 0.0
	label: str = ''

	def rounded(self):
		"""Dict of values as printed: ratios to 2 decimals, percentages to
		1 decimal (largest-remainder rounding so they sum to 100)."""
		result = asdict(self)
		for name in RATIO_FIELDS:
			result[name] = round(result[name], 2)
		pcts = round_percentages([result[name] for name in PCT_FIELDS])
		result.update(zip(PCT_FIELDS, pcts))
		return result


def _ratio(a, b):
	return a / b if b else 0.0


def corpus_stats(corpus, label=''):
	"""Compute dataset statistics from gold annotations, singletons
	included.  ``label`` names the annotation scheme in reports."""
	docs = list(corpus)
	nsents = sum(len(doc.sentences) for doc in docs)
	ntokens = sum(doc.n_tokens() for doc in docs)
	types = Counter()
	nentities = 0
	for doc in docs:
		if doc.entities is None:
			raise ValueError('document %s has no gold entities' % doc.key)
		nentities += len(doc.entities)
		types.update(m.surface_type for m in doc.entities.mentions())
	nmentions = sum(types.values())
	return StatsReport(
			n_documents=len(docs),
			n_sentences=nsents,
			n_tokens=ntokens,
			sents_per_doc=_ratio(nsents, len(docs)),
			avg_sent_len=_ratio(ntokens, nsents),
			n_mentions=nmentions,
			n_entities=nentities,
			mentions_per_token=_ratio(nmentions, ntokens),
			mentions_per_entity=_ratio(nmentions, nentities),
			entities_per_token=_ratio(nentities, ntokens),
			pct_pronouns=100 * _ratio(types['pronoun'], nmentions),
			pct_nominal=100 * _ratio(types['nominal'], nmentions),
			pct_names=100 * _ratio(types['name'], nmentions),
			label=label)


def round_percentages(values, decimals=1):
	"""Round values that sum to 100 so that the rounded values do too.

	>>> round_percentages([100 / 3] * 3)
	[33.4, 33.3, 33.3]
	"""
	total = sum(values)
	if not values or abs(total - 100) > 1e-6:
		return [round(a, decimals) for a in values]
	scale = 10 ** decimals
	floors = [math.floor(a * scale + 1e-9) for a in values]
	missing = round(100 * scale) - sum(floors)
	order = sorted(range(len(values)),
			key=lambda n: (-(values[n] * scale - floors[n]), n))
	for n in order[:missing]:
		floors[n] += 1
	return [a / scale for a in floors]


def format_stats(reports, columns=None):
	"""Aligned plain-text table with one column per report."""
	columns = columns or [r.label or 'corpus' for r in reports]
	rows = [r.rounded() for r in reports]
	names = [name for name in asdict(StatsReport()) if name != 'label']
	width = max(len(name) for name in names)
	colwidth = max([10] + [len(c) for c in columns])
	lines = [' ' * width + ''.join(c.rjust(colwidth + 2) for c in columns)]
	for name in names:
		cells = []
		for row in rows:
			value = row[name]
			if name in RATIO_FIELDS:
				cells.append('%.2f' % value)
			elif name in PCT_FIELDS:
				cells.append('%.1f' % value)
			else:
				cells.append('{:,}'.format(value))
		lines.append(name.ljust(width) + ''.join(
				c.rjust(colwidth + 2) for c in cells))
	return '\n'.join(lines) + '\n'


def format_stats_tsv(report):
	"""Machine-readable key-value lines (one metric per line)."""
	row = report.rounded()
	return ''.join('%s\t%s\n' % (key, value) for key, value in row.items())


def sonar_genre(doc):
	"""Genre of a SoNaR document, from its id prefix (e.g. WR-P-P-H-0000000012
	-> WR-P-P-H)."""
	return doc.id.rsplit('-', 1)[0] if '-' in doc.id else doc.id


def default_genre(doc):
	return doc.genre or DEFAULT_GENRE


def allocate(n, ratios, rng):
	"""Split n items over len(ratios) bins by largest remainder.

	Ties between equal remainders are broken by rng, so each count
	deviates from n * ratio by less than one."""
	exact = [n * r for r in ratios]
	counts = [math.floor(a + 1e-9) for a in exact]
	order = sorted(range(len(ratios)),
			key=lambda i: (-round(exact[i] - counts[i], 9), rng.random()))
	for i in order[:n - sum(counts)]:
		counts[i] += 1
	return counts


def stratified_split(corpus, ratios=(0.7, 0.15, 0.15), genre_key=None,
		seed=0):
	"""Split a corpus into train/dev/test, stratified by genre.

	Within each genre, the documents are shuffled with the seeded random
	generator and divided by largest-remainder allocation.  A genre with
	fewer documents than splits is allocated to the largest splits first
	and triggers a warning.

	:returns: three Corpus objects labeled train, dev and test."""
	ratios = tuple(ratios)
	if len(ratios) != 3 or any(r < 0 for r in ratios):
		raise ValueError('need three non-negative ratios, got %r' % (ratios, ))
	if abs(sum(ratios) - 1) > 1e-9:
		raise ValueError('ratios must sum to 1, got %r' % sum(ratios))
	genre_key = genre_key or default_genre
	bygenre = defaultdict(list)
	for doc in corpus:
		genre = genre_key(doc)
		if genre is None:
			raise ValueError('document %s has no genre' % doc.key)
		bygenre[genre].append(doc)
	rng = random.Random(seed)
	assigned = {}
	for genre in sorted(bygenre):
		docs = sorted(bygenre[genre], key=lambda d: d.key)
		if len(docs) < len(ratios):
			LOG.warning('genre %r has %d document(s), fewer than %d splits',
					genre, len(docs), len(ratios))
		rng.shuffle(docs)
		counts = allocate(len(docs), ratios, rng)
		start = 0
		for n, count in enumerate(counts):
			for doc in docs[start:start + count]:
				assigned[doc.key] = n
			start += count
	return tuple(Corpus([doc for doc in corpus if assigned[doc.key] == n],
			split_label=label) for n, label in enumerate(SPLIT_LABELS))
