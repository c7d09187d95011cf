"""Analysis procedures: document truncation and length correlation,
per-document comparisons, evaluation condition grids, annotation audits."""
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from . import tags
from .corpus import Document
from .entities import _order
from .metrics import check_aligned, score, score_corpus
from .tree import iscoordination

DEFAULT_FRACTIONS = tuple(range(10, 101, 10))
DEFAULT_METRICS = ('lea', 'conll')
METRIC_NAMES = ('mention', 'muc', 'b3', 'ceafe', 'lea', 'conll')


def metric_value(report, metric):
	"""F1 of a metric (or the CoNLL score) as a fraction."""
	if metric == 'conll':
		return report.conll
	if metric not in METRIC_NAMES:
		raise ValueError('unknown metric %r' % metric)
	return report.prf(metric).f1


def cut_point(document, fraction):
	"""Number of sentences kept when truncating to fraction percent of the
	words: the sentence boundary nearest to the target, ties toward the
	shorter document, at least one sentence."""
	if not 0 < fraction <= 100:
		raise ValueError('fraction must be in (0, 100], got %r' % fraction)
	total = document.n_tokens()
	target = fraction * total / 100
	best, bestdist = 1, None
	words = 0
	for n, sent in enumerate(document.sentences, 1):
		words += len(sent.tokens)
		dist = abs(words - target)
		if bestdist is None or dist < bestdist - 1e-9:
			best, bestdist = n, dist
	return best


def truncate(document, nsents):
	entities = None
	if document.entities is not None:
		entities = document.entities.restrict(
				lambda m: m.sentence_index < nsents)
	return Document(id=document.id, sentences=document.sentences[:nsents],
			part=document.part, genre=document.genre, entities=entities)


def truncate_pair(gold, sys, fraction):
	"""Cut gold and system documents at the same sentence boundary.

	:returns: (gold, sys) truncated documents; entities keep only mentions
		before the cut, and entities left empty are dropped."""
	if [len(s.tokens) for s in gold.sentences] != [
			len(s.tokens) for s in sys.sentences]:
		raise ValueError('documents %s and %s differ in sentence structure'
				% (gold.key, sys.key))
	nsents = cut_point(gold, fraction)
	return truncate(gold, nsents), truncate(sys, nsents)


@dataclass(frozen=True)
class TruncationPoint:
	fraction: float
	doc_id: str
	words: int
	score: object

	def __post_init__(self):
		if not 0 < self.fraction <= 100:
			raise ValueError('fraction out of range: %r' % self.fraction)


@dataclass(frozen=True)
class CorrelationResult:
	"""Pearson r; None with a flag when undefined (zero variance)."""
	r: float
	n: int
	flag: str = None


def length_correlation(points):
	"""Pearson correlation of (length, score) pairs."""
	points = list(points)
	if len(points) < 2:
		raise ValueError('need at least two points, got %d' % len(points))
	xs = [float(x) for x, _ in points]
	ys = [float(y) for _, y in points]
	try:
		r = statistics.correlation(xs, ys)
	except statistics.StatisticsError:
		return CorrelationResult(None, len(points), 'zero variance')
	return CorrelationResult(max(-1.0, min(1.0, r)), len(points))


@dataclass
class TruncationStudy:
	points: list
	correlations: dict
	metrics: tuple

	def rows(self):
		"""(doc_id, fraction, words, metric, value) sorted canonically."""
		result = [(p.doc_id, p.fraction, p.words, metric,
				metric_value(p.score, metric))
				for p in self.points for metric in self.metrics]
		return sorted(result, key=lambda row: (row[0], row[1], row[3]))


def _study_document(args):
	gold, sys, fractions, singleton_mode = args
	result = []
	for fraction in fractions:
		tgold, tsys = truncate_pair(gold, sys, fraction)
		result.append(TruncationPoint(fraction, gold.key, tgold.n_tokens(),
				score(tgold.entities, tsys.entities, singleton_mode)))
	return result


def run_truncation_study(gold, sys, fractions=DEFAULT_FRACTIONS,
		metrics=DEFAULT_METRICS, singleton_mode='included', jobs=1):
	"""Score every document truncated at each fraction and correlate each
	metric with the absolute truncated length in words."""
	check_aligned(gold, sys)
	sysdocs = {doc.key: doc for doc in sys}
	for metric in metrics:
		if metric not in METRIC_NAMES:
			raise ValueError('unknown metric %r' % metric)
	tasks = [(doc, sysdocs[doc.key], tuple(fractions), singleton_mode)
			for doc in sorted(gold, key=lambda d: d.key)]
	if jobs > 1 and len(tasks) > 1:
		with ProcessPoolExecutor(jobs) as pool:
			results = list(pool.map(_study_document, tasks))
	else:
		results = [_study_document(task) for task in tasks]
	points = [point for result in results for point in result]
	correlations = {}
	for metric in metrics:
		pairs = [(p.words, metric_value(p.score, metric)) for p in points]
		correlations[metric] = (length_correlation(pairs) if len(pairs) > 1
				else CorrelationResult(None, len(pairs), 'too few points'))
	return TruncationStudy(points, correlations, tuple(metrics))


def format_study(study):
	"""Tab-separated study table with the correlations as comment lines."""
	lines = ['doc_id\tfraction\twords\tmetric\tvalue']
	for doc_id, fraction, words, metric, value in study.rows():
		lines.append('%s\t%g\t%d\t%s\t%.4f' % (doc_id, fraction, words, metric,
				100 * value))
	for metric in study.metrics:
		corr = study.correlations[metric]
		if corr.r is None:
			lines.append('# pearson_r\t%s\tundefined (%s)\tn=%d' % (
					metric, corr.flag, corr.n))
		else:
			lines.append('# pearson_r\t%s\t%.4f\tn=%d' % (metric, corr.r, corr.n))
	return '\n'.join(lines) + '\n'


TABLE_METRICS = (('mention', 'Mentions'), ('lea', 'LEA'))


def per_document_table(gold, outputs, singleton_mode='included'):
	"""Compare systems per document.

	:param outputs: dict mapping system name to a Corpus aligned with gold.
	:returns: list of row dicts with keys doc, system, the percentages of
		Mentions and LEA R/P/F1 and CoNLL, and best_mention, best_lea,
		best_conll flags (ties are all flagged)."""
	rows = []
	perdoc = {}
	for name, corpus in outputs.items():
		_, docs = score_corpus(gold, corpus, singleton_mode,
				per_document=True)
		perdoc[name] = docs
	for doc in sorted(gold.keys()):
		group = []
		for name in outputs:
			values = perdoc[name][doc].values()
			row = {'doc': doc, 'system': name}
			for metric, _ in TABLE_METRICS:
				for part in ('recall', 'precision', 'f1'):
					key = '%s_%s' % (metric, part)
					row[key] = values[key]
			row['conll'] = values['conll']
			group.append(row)
		for flag, key in (('best_mention', 'mention_f1'),
				('best_lea', 'lea_f1'), ('best_conll', 'conll')):
			best = max(row[key] for row in group)
			for row in group:
				row[flag] = row[key] == best
		rows.extend(group)
	return rows


def format_per_document_table(rows):
	if not rows:
		return ''
	width = max(len(row['doc']) for row in rows)
	syswidth = max(6, max(len(row['system']) for row in rows))
	lines = ['%s  %s  %-22s  %-22s  %7s' % ('doc'.ljust(width),
			'system'.ljust(syswidth), 'Mentions R/P/F1', 'LEA R/P/F1', 'CoNLL')]
	for row in rows:
		cells = []
		for metric, flag in (('mention', 'best_mention'), ('lea', 'best_lea')):
			cells.append('%6.2f %6.2f %6.2f%s' % (row[metric + '_recall'],
					row[metric + '_precision'], row[metric + '_f1'],
					'*' if row[flag] else ' '))
		lines.append('%s  %s  %-22s  %-22s  %6.2f%s' % (row['doc'].ljust(width),
				row['system'].ljust(syswidth), cells[0], cells[1],
				row['conll'], '*' if row['best_conll'] else ' '))
	return '\n'.join(lines) + '\n'


def condition_grid(gold, sys_predicted, sys_gold):
	"""Corpus scores under predicted/gold mentions x included/excluded
	singletons.

	:param sys_predicted: system output from predicted mentions.
	:param sys_gold: system output produced from the gold mention spans.
	:returns: dict mapping (mention_mode, singleton_mode) to ScoreReport."""
	result = {}
	for mention_mode, sys in (('predicted', sys_predicted),
			('gold', sys_gold)):
		if sys is None:
			continue
		for singleton_mode in ('included', 'excluded'):
			result[mention_mode, singleton_mode] = score_corpus(
					gold, sys, singleton_mode, mention_mode)
	return result


def format_grid(grid, label='system'):
	lines = ['%-10s %-10s %-10s %12s %8s %8s' % ('system', 'mentions',
			'singletons', 'Mentions F1', 'LEA F1', 'CoNLL')]
	for (mention_mode, singleton_mode) in sorted(grid, key=lambda k: (
			k[0] != 'predicted', k[1] != 'excluded')):
		values = grid[mention_mode, singleton_mode].values()
		lines.append('%-10s %-10s %-10s %12.2f %8.2f %8.2f' % (label,
				mention_mode, singleton_mode, values['mention_f1'],
				values['lea_f1'], values['conll']))
	return '\n'.join(lines) + '\n'


@dataclass(frozen=True)
class AuditFinding:
	kind: str
	doc_id: str
	mentions: tuple
	text: str = ''


def _suspicious(mention, sentence):
	start, end = mention.span
	if mention.surface_type != 'nominal':
		return None
	tree = sentence.parse_tree
	if tree is not None:
		node = tree.find(start, end)
		if node is not None and iscoordination(node, sentence):
			return None
	for n in range(start + 1, end):
		token = sentence.tokens[n]
		if token.form.lower() in tags.COORDINATORS or tags.category(
				token.pos) == 'conj':
			if mention.head_index >= n:
				continue
			following = sentence.tokens[n + 1].form.lower()
			if following in tags.DETERMINERS:
				continue
			return n
	return None


def audit_annotations(corpus):
	"""Look for likely annotation errors in gold entities.

	unlinked_exact_match: name or nominal mentions with the same
	normalized string in different entities; one finding per string and
	pair of entities.  suspicious_boundary: a nominal mention containing a
	coordinating conjunction after its head (not a coordinated NP)."""
	findings = []
	for doc in sorted(corpus, key=lambda d: d.key):
		if doc.entities is None:
			raise ValueError('document %s has no entities' % doc.key)
		bystring = {}
		for mention in doc.entities.mentions():
			if mention.surface_type == 'pronoun':
				continue
			sent = doc.sentences[mention.sentence_index]
			norm = tags.normalize(sent.words(*mention.span))
			bystring.setdefault(norm, {}).setdefault(
					doc.entities.entity_of(mention), []).append(mention)
		for norm in sorted(bystring):
			entities = bystring[norm]
			for a, b in combinations(sorted(entities,
					key=lambda e: _order(entities[e][0])), 2):
				findings.append(AuditFinding('unlinked_exact_match', doc.key,
						(entities[a][0], entities[b][0]), norm))
		for mention in doc.entities.mentions():
			sent = doc.sentences[mention.sentence_index]
			if _suspicious(mention, sent) is not None:
				findings.append(AuditFinding('suspicious_boundary', doc.key,
						(mention, ), ' '.join(sent.words(*mention.span))))
	return findings


def format_findings(findings):
	return ''.join('%s\t%s\t%s\t%s\n' % (f.kind, f.doc_id,
			' '.join('%d:%d-%d' % m.key for m in f.mentions), f.text)
			for f in findings)
