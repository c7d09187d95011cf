"""Coreference evaluation: mention detection, MUC, B-cubed, CEAFe, LEA and
the CoNLL average.

Metrics operate on entities given as collections of hashable mention keys
(an EntitySet is converted with its ``clusters`` method).  Mentions are
aligned by exact span.  A mention present on one side only gets no
credit; for MUC it forms its own partition.

Every metric returns a ``Counts`` object holding recall and precision
numerators and denominators, so that corpus scores are micro-averages:
counts are summed over documents before dividing.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .entities import EntitySet

SINGLETON_MODES = ('included', 'excluded')
MENTION_MODES = ('predicted', 'gold')
METRICS = ('muc', 'b3', 'ceafe', 'lea')


@dataclass(frozen=True)
class PRFScore:
	"""Recall, precision and F1 as fractions in [0, 1].

	``flag`` is set when a denominator was zero (the corresponding value
	is then reported as 0)."""
	recall: float = 0.0
	precision: float = 0.0
	f1: float = 0.0
	flag: str = None

	@classmethod
	def from_rp(cls, recall, precision, flag=None):
		return cls(recall, precision, f1(recall, precision), flag)


def f1(recall, precision):
	"""Harmonic mean; 0 when both are 0."""
	if recall + precision == 0:
		return 0.0
	return 2 * recall * precision / (recall + precision)


@dataclass(frozen=True)
class Counts:
	"""Numerators and denominators of recall and precision."""
	recall_num: float = 0.0
	recall_den: float = 0.0
	precision_num: float = 0.0
	precision_den: float = 0.0

	def __add__(self, other):
		return Counts(self.recall_num + other.recall_num,
				self.recall_den + other.recall_den,
				self.precision_num + other.precision_num,
				self.precision_den + other.precision_den)

	@property
	def score(self):
		flags = []
		if self.recall_den:
			recall = self.recall_num / self.recall_den
		else:
			recall = 0.0
			flags.append('recall undefined')
		if self.precision_den:
			precision = self.precision_num / self.precision_den
		else:
			precision = 0.0
			flags.append('precision undefined')
		return PRFScore.from_rp(recall, precision,
				'; '.join(flags) if flags else None)


def clusters(entities):
	"""Normalize an EntitySet or a collection of collections to a list of
	non-empty frozensets of mention keys."""
	if isinstance(entities, EntitySet):
		return entities.clusters()
	return [frozenset(c) for c in entities if c]


def _index(entities):
	return {m: n for n, entity in enumerate(entities) for m in entity}


def filter_singletons(entities):
	"""Remove entities with a single mention."""
	if isinstance(entities, EntitySet):
		return entities.without_singletons()
	return [c for c in clusters(entities) if len(c) > 1]


@dataclass(frozen=True)
class MentionAlignment:
	matched: frozenset
	missing: frozenset
	extra: frozenset

	@property
	def counts(self):
		n = len(self.matched)
		return Counts(n, n + len(self.missing), n, n + len(self.extra))


def align_mentions(gold, sys):
	"""Match mentions by exact span; unmatched gold mentions are missing,
	unmatched system mentions extra."""
	goldm = set().union(*clusters(gold))
	sysm = set().union(*clusters(sys))
	return MentionAlignment(frozenset(goldm & sysm), frozenset(goldm - sysm),
			frozenset(sysm - goldm))


def _muc_side(key, response):
	index = _index(response)
	num = den = 0
	for entity in key:
		partitions = {index.get(m, ('unaligned', m)) for m in entity}
		num += len(entity) - len(partitions)
		den += len(entity) - 1
	return num, den


def muc(gold, sys):
	"""Link-based MUC counts."""
	gold, sys = clusters(gold), clusters(sys)
	rn, rd = _muc_side(gold, sys)
	pn, pd = _muc_side(sys, gold)
	return Counts(rn, rd, pn, pd)


def _b3_side(key, response):
	index = _index(response)
	num = 0.0
	for entity in key:
		overlap = {}
		for m in entity:
			if m in index:
				overlap[index[m]] = overlap.get(index[m], 0) + 1
		num += sum(a * a for a in overlap.values()) / len(entity)
	return num, sum(len(entity) for entity in key)


def b_cubed(gold, sys):
	"""Mention-based B-cubed counts."""
	gold, sys = clusters(gold), clusters(sys)
	rn, rd = _b3_side(gold, sys)
	pn, pd = _b3_side(sys, gold)
	return Counts(rn, rd, pn, pd)


def phi4(key, response):
	return 2 * len(key & response) / (len(key) + len(response))


def similarity_matrix(gold, sys):
	"""Matrix of phi4 entity similarities (gold rows, system columns)."""
	result = np.zeros((len(gold), len(sys)))
	index = _index(sys)
	for i, entity in enumerate(gold):
		for j in {index[m] for m in entity if m in index}:
			result[i, j] = phi4(entity, sys[j])
	return result


def ceaf_e(gold, sys):
	"""Entity-based CEAF counts with phi4 similarity and an optimal
	one-to-one alignment."""
	gold, sys = clusters(gold), clusters(sys)
	total = 0.0
	if gold and sys:
		matrix = similarity_matrix(gold, sys)
		rows, cols = linear_sum_assignment(matrix, maximize=True)
		total = float(matrix[rows, cols].sum())
	return Counts(total, len(gold), total, len(sys))


def _links(n):
	return n * (n - 1) / 2


def _lea_side(key, response):
	index = _index(response)
	num = den = 0.0
	for entity in key:
		size = len(entity)
		if size == 1:
			(m, ) = entity
			if m in index and len(response[index[m]]) == 1:
				num += 1
		else:
			overlap = {}
			for m in entity:
				if m in index:
					overlap[index[m]] = overlap.get(index[m], 0) + 1
			num += size * sum(_links(a) for a in overlap.values()) / _links(size)
		den += size
	return num, den


def lea(gold, sys):
	"""Link-based entity-aware counts.  Entities are weighted by size; a
	singleton has one self-link, which is resolved only if the mention is
	also a singleton on the other side."""
	gold, sys = clusters(gold), clusters(sys)
	rn, rd = _lea_side(gold, sys)
	pn, pd = _lea_side(sys, gold)
	return Counts(rn, rd, pn, pd)


def conll_score(muc_score, b3_score, ceafe_score):
	"""Arithmetic mean of the MUC, B-cubed and CEAFe F1 values."""
	return (muc_score.f1 + b3_score.f1 + ceafe_score.f1) / 3


METRIC_FUNCTIONS = {'muc': muc, 'b3': b_cubed, 'ceafe': ceaf_e, 'lea': lea}


@dataclass(frozen=True)
class ScoreReport:
	"""Counts for mention detection and each coreference metric.

	Scores are derived from the counts; ``conll`` is a fraction (multiply
	by 100 for the customary percentage).  Reports add up to corpus-level
	micro-averages."""
	mention: Counts = field(default_factory=Counts)
	muc: Counts = field(default_factory=Counts)
	b3: Counts = field(default_factory=Counts)
	ceafe: Counts = field(default_factory=Counts)
	lea: Counts = field(default_factory=Counts)
	singleton_mode: str = 'included'
	mention_mode: str = 'predicted'

	def __add__(self, other):
		if (self.singleton_mode, self.mention_mode) != (
				other.singleton_mode, other.mention_mode):
			raise ValueError('cannot add reports of different conditions')
		return ScoreReport(*(getattr(self, name) + getattr(other, name)
				for name in ('mention', ) + METRICS),
				self.singleton_mode, self.mention_mode)

	def prf(self, name):
		return getattr(self, name).score

	@property
	def conll(self):
		return conll_score(self.prf('muc'), self.prf('b3'), self.prf('ceafe'))

	def values(self):
		"""Flat dict of percentages rounded to 2 decimals."""
		result = {'singleton_mode': self.singleton_mode,
				'mention_mode': self.mention_mode}
		for name in ('mention', ) + METRICS:
			score = self.prf(name)
			for part in ('recall', 'precision', 'f1'):
				result['%s_%s' % (name, part)] = pct(getattr(score, part))
		result['conll'] = pct(self.conll)
		return result


def pct(value):
	"""Fraction as a percentage rounded to 2 decimals."""
	return round(100 * value + 0.0, 2)


def score(gold, sys, singleton_mode='included', mention_mode='predicted'):
	"""Score one document's system entities against gold entities."""
	if singleton_mode not in SINGLETON_MODES:
		raise ValueError('singleton_mode must be one of %r' % (
				SINGLETON_MODES, ))
	if mention_mode not in MENTION_MODES:
		raise ValueError('mention_mode must be one of %r' % (MENTION_MODES, ))
	gold, sys = clusters(gold), clusters(sys)
	if singleton_mode == 'excluded':
		gold, sys = filter_singletons(gold), filter_singletons(sys)
	return ScoreReport(align_mentions(gold, sys).counts,
			*(METRIC_FUNCTIONS[name](gold, sys) for name in METRICS),
			singleton_mode=singleton_mode, mention_mode=mention_mode)


def score_corpus(gold, sys, singleton_mode='included',
		mention_mode='predicted', per_document=False):
	"""Micro-averaged scores over aligned corpora.

	:returns: the corpus ScoreReport, or with per_document=True a pair
		(corpus report, dict of document key -> report)."""
	check_aligned(gold, sys)
	sysdocs = {doc.key: doc for doc in sys}
	total = ScoreReport(singleton_mode=singleton_mode,
			mention_mode=mention_mode)
	docs = {}
	for doc in gold:
		report = score(doc.entities, sysdocs[doc.key].entities,
				singleton_mode, mention_mode)
		docs[doc.key] = report
		total = total + report
	return (total, docs) if per_document else total


def check_aligned(gold, sys):
	"""Raise ValueError listing document ids present on one side only."""
	goldkeys, syskeys = set(gold.keys()), set(sys.keys())
	if goldkeys != syskeys:
		raise ValueError('unmatched document ids: gold only %s; system only %s'
				% (sorted(goldkeys - syskeys) or '-',
					sorted(syskeys - goldkeys) or '-'))


TABLE_COLUMNS = (('mention', 'Mentions'), ('lea', 'LEA'))
DETAIL_COLUMNS = (('muc', 'MUC'), ('b3', 'B3'), ('ceafe', 'CEAFe'))


def format_report(reports, detail=True):
	"""Aligned plain-text table; ``reports`` is a list of (label, report).

	The first table has the columns Mentions R/P/F1, LEA R/P/F1 and CoNLL;
	with detail=True a second table gives MUC, B3 and CEAFe.  Each table is
	headed by the singleton and mention modes."""
	if not reports:
		return ''
	modes = sorted({(r.singleton_mode, r.mention_mode) for _, r in reports})
	header = '# singletons: %s; mentions: %s\n' % (
			'/'.join(sorted({a for a, _ in modes})),
			'/'.join(sorted({b for _, b in modes})))
	width = max([8] + [len(label) for label, _ in reports])
	groups = [TABLE_COLUMNS + (('conll', 'CoNLL'), )]
	if detail:
		groups.append(DETAIL_COLUMNS)
	out = []
	for columns in groups:
		if out:
			out.append('\n')
		out.append(header)
		top = ' ' * width
		sub = ' ' * width
		for name, title in columns:
			if name == 'conll':
				top += '%8s' % title
				sub += '%8s' % 'F1'
			else:
				top += '  ' + title.center(22)
				sub += '  %6s %7s %7s' % ('R', 'P', 'F1')
		out.append(top.rstrip() + '\n' + sub + '\n')
		for label, report in reports:
			row = label.ljust(width)
			values = report.values()
			for name, _ in columns:
				if name == 'conll':
					row += '%8.2f' % values['conll']
				else:
					row += '  %6.2f %7.2f %7.2f' % tuple(
							values['%s_%s' % (name, part)]
							for part in ('recall', 'precision', 'f1'))
			out.append(row + '\n')
	return ''.join(out)


def format_report_tsv(report, prefix=''):
	"""Machine-readable key-value lines."""
	return ''.join('%s%s\t%s\n' % (prefix, key, value)
			for key, value in report.values().items())
