"""Error analysis: explain the difference between system and gold entities
as a sequence of typed, replayable errors.

Errors are attributed in a fixed order, and the order is part of the
contract because a different order gives different counts:

1. span_error: a system mention with the same head as an unmatched gold
   mention in the same sentence, but different boundaries, is repaired.
2. extra_entity / extra_mention: system mentions that are not gold
   mentions are removed; a system entity without any gold mention is one
   extra_entity, otherwise each spurious mention is an extra_mention.
3. conflated_entities: a system entity with mentions of several gold
   entities is split, one error per gold entity beyond the largest.
4. divided_entity: a gold entity spread over several system entities is
   merged, one error per system entity beyond the largest.
5. missing_entity / missing_mention: gold mentions not yet present are
   added, as a new entity when none of the gold entity's mentions is
   present, otherwise to the entity holding them.
"""
from collections import Counter
from dataclasses import dataclass

from .entities import EntitySet, _order

KINDS = ('span_error', 'conflated_entities', 'extra_mention', 'extra_entity',
		'divided_entity', 'missing_mention', 'missing_entity')
TITLES = ('Span Error', 'Conflated Entities', 'Extra Mention', 'Extra Entity',
		'Divided Entity', 'Missing Mention', 'Missing Entity')
MENTION_TYPES = ('name', 'nominal', 'pronoun')

# Composition rows (incorrect part: name, nominal, pronoun | rest of
# entity: name, nominal, pronoun); True means one or more mentions.
COMPOSITION_ROWS = (
		((False, False, True), (False, True, True)),
		((False, False, True), (True, True, True)),
		((False, False, True), (False, True, False)),
		((False, True, False), (False, True, False)),
		((False, True, True), (False, True, True)),
		((False, True, False), (False, True, True)),
		((False, True, True), (True, True, True)),
		((False, False, True), (False, False, True)),
		)
OTHER = 'Other'


@dataclass(frozen=True)
class ErrorRecord:
	"""One error.

	:ivar mentions: the mentions the error is about: the repaired system
		mention (span_error), the removed or added mentions (extra/missing),
		or the incorrect part of an entity (conflated/divided).
	:ivar rest: the rest of the entity involved (conflated/divided), or the
		mentions of the entity a missing mention is added to.
	:ivar target: for span_error, the gold mention replacing the system
		mention."""
	kind: str
	doc_id: str
	mentions: tuple
	rest: tuple = ()
	target: object = None

	def __post_init__(self):
		if self.kind not in KINDS:
			raise ValueError('unknown error kind %r' % self.kind)

	def spans(self):
		return ' '.join('%d:%d-%d' % m.key for m in self.mentions)


class ErrorLog:
	"""Ordered error records that turn ``source`` into the gold entities.

	``source`` is the system EntitySet after singleton filtering."""

	def __init__(self, records=(), source=None):
		self.records = list(records)
		self.source = source

	def __iter__(self):
		return iter(self.records)

	def __len__(self):
		return len(self.records)

	def counts(self):
		result = Counter({kind: 0 for kind in KINDS})
		result.update(record.kind for record in self.records)
		return result

	def apply(self, entities=None):
		"""Replay the records on an EntitySet (default: ``source``)."""
		entities = self.source if entities is None else entities
		cluster = {}
		mentions = {}
		for n, entity in enumerate(entities):
			for m in entity.mentions:
				cluster[m.key] = n
				mentions[m.key] = m
		fresh = len(entities)
		for record in self.records:
			kind = record.kind
			if kind == 'span_error':
				(old, ) = record.mentions
				cluster[record.target.key] = cluster.pop(old.key)
				del mentions[old.key]
				mentions[record.target.key] = record.target
			elif kind in ('extra_mention', 'extra_entity'):
				for m in record.mentions:
					del cluster[m.key]
					del mentions[m.key]
			elif kind == 'conflated_entities':
				for m in record.mentions:
					cluster[m.key] = fresh
				fresh += 1
			elif kind == 'divided_entity':
				old = cluster[record.mentions[0].key]
				new = cluster[record.rest[0].key]
				for key, cid in cluster.items():
					if cid == old:
						cluster[key] = new
			elif kind == 'missing_mention':
				for m in record.mentions:
					cluster[m.key] = cluster[record.rest[0].key]
					mentions[m.key] = m
			elif kind == 'missing_entity':
				for m in record.mentions:
					cluster[m.key] = fresh
					mentions[m.key] = m
				fresh += 1
		groups = {}
		for key, cid in cluster.items():
			groups.setdefault(cid, []).append(mentions[key])
		return EntitySet.from_clusters(groups.values())


def _filter(gold, sys, ignore_singletons):
	if not ignore_singletons:
		return gold, sys
	gold = gold.without_singletons()
	goldkeys = {m.key for m in gold.mentions()}
	sys = EntitySet(e for e in sys
			if len(e.mentions) > 1 or e.mentions[0].key in goldkeys)
	return gold, sys


def _overlap(a, b):
	return (a.sentence_index == b.sentence_index
			and a.span[0] <= b.span[1] and b.span[0] <= a.span[1])


def _first(mentions):
	return min(_order(m) for m in mentions)


def analyze(gold, sys, ignore_singletons=True, doc_id=None):
	"""Return the ErrorLog transforming sys into gold.

	With ignore_singletons (the default), gold singletons are removed, and
	so are system singletons whose mention is not a gold mention."""
	gold, sys = _filter(gold, sys, ignore_singletons)
	if doc_id is None:
		anymention = next(iter(gold.mentions() or sys.mentions()), None)
		doc_id = anymention.doc_id if anymention is not None else ''
	records = []
	goldmentions = {m.key: m for m in gold.mentions()}
	goldentity = {m.key: gold.entity_of(m) for m in gold.mentions()}
	# working copy: list of mention lists
	work = [list(e.mentions) for e in sys]

	# 1. span errors
	syskeys = {m.key for e in work for m in e}
	unmatched = sorted((m for key, m in goldmentions.items()
			if key not in syskeys), key=_order)
	used = set()
	for entity in work:
		for n, m in enumerate(entity):
			if m.key in goldmentions:
				continue
			for g in unmatched:
				if (g.key not in used and _overlap(m, g)
						and g.head_index == m.head_index):
					used.add(g.key)
					records.append(ErrorRecord('span_error', doc_id, (m, ),
							target=g))
					entity[n] = g
					break

	# 2. extra mentions and entities
	for entity in work:
		extra = [m for m in entity if m.key not in goldmentions]
		if not extra:
			continue
		if len(extra) == len(entity):
			records.append(ErrorRecord('extra_entity', doc_id, tuple(extra)))
		else:
			for m in extra:
				records.append(ErrorRecord('extra_mention', doc_id, (m, )))
		entity[:] = [m for m in entity if m.key in goldmentions]
	work = [entity for entity in work if entity]

	# 3. conflated entities
	result = []
	for entity in work:
		groups = {}
		for m in entity:
			groups.setdefault(goldentity[m.key], []).append(m)
		groups = sorted(groups.values(), key=lambda g: (-len(g), _first(g)))
		remaining = list(entity)
		for group in reversed(groups[1:]):
			remaining = [m for m in remaining if m not in group]
			records.append(ErrorRecord('conflated_entities', doc_id,
					tuple(group), tuple(remaining)))
			result.append(group)
		result.append(groups[0])
	work = result

	# 4. divided entities
	bygold = {}
	for entity in work:
		bygold.setdefault(goldentity[entity[0].key], []).append(entity)
	work = []
	for gid in sorted(bygold, key=lambda gid: _first(bygold[gid][0])):
		pieces = sorted(bygold[gid], key=lambda p: (-len(p), _first(p)))
		merged = list(pieces[0])
		for piece in pieces[1:]:
			records.append(ErrorRecord('divided_entity', doc_id,
					tuple(piece), tuple(merged)))
			merged.extend(piece)
		work.append(merged)

	# 5. missing mentions and entities
	present = {m.key: n for n, entity in enumerate(work) for m in entity}
	for entity in gold:
		absent = [m for m in entity.mentions if m.key not in present]
		if not absent:
			continue
		if len(absent) == len(entity.mentions):
			records.append(ErrorRecord('missing_entity', doc_id, tuple(absent)))
			continue
		target = next(present[m.key] for m in entity.mentions
				if m.key in present)
		for m in absent:
			records.append(ErrorRecord('missing_mention', doc_id, (m, ),
					tuple(work[target])))
			work[target].append(m)
			present[m.key] = target
	return ErrorLog(records, sys)


def breakdown_by_mention_type(log):
	"""Counts of missing and extra mention errors per mention type.

	Only missing_mention and extra_mention records are counted."""
	result = {(mtype, kind): 0 for mtype in MENTION_TYPES
			for kind in ('missing', 'extra')}
	for record in log:
		if record.kind in ('missing_mention', 'extra_mention'):
			kind = record.kind.split('_')[0]
			for m in record.mentions:
				result[m.surface_type, kind] += 1
	return result


def composition(mentions):
	"""(has name, has nominal, has pronoun)."""
	types = {m.surface_type for m in mentions}
	return tuple(mtype in types for mtype in MENTION_TYPES)


def composition_breakdown(log):
	"""Group divided/conflated errors by the composition of the incorrect
	part and the rest of the entity.

	:returns: dict mapping a row of COMPOSITION_ROWS (or OTHER) to a
		Counter with keys 'divided_entity' and 'conflated_entities'; rows
		without errors are absent."""
	result = {}
	for record in log:
		if record.kind not in ('divided_entity', 'conflated_entities'):
			continue
		row = (composition(record.mentions), composition(record.rest))
		if row not in COMPOSITION_ROWS:
			row = OTHER
		result.setdefault(row, Counter())[record.kind] += 1
	return result


def total_counts(logs):
	result = Counter({kind: 0 for kind in KINDS})
	for log in logs:
		result.update(log.counts())
	return result


def format_error_table(rows):
	"""Plain-text table; rows is a list of (label, Counter of kinds)."""
	width = max([6] + [len(label) for label, _ in rows])
	colwidths = [max(len(title), 6) for title in TITLES]
	lines = [' ' * width + ''.join('  ' + t.rjust(w)
			for t, w in zip(TITLES, colwidths))]
	for label, counts in rows:
		lines.append(label.ljust(width) + ''.join('  ' + str(
				counts.get(kind, 0)).rjust(w)
				for kind, w in zip(KINDS, colwidths)))
	return '\n'.join(lines) + '\n'


def format_mention_type_table(breakdown):
	lines = ['%-8s %6s %8s %8s' % ('error', 'name', 'nominal', 'pronoun')]
	for kind in ('extra', 'missing'):
		lines.append('%-8s %6d %8d %8d' % ((kind, ) + tuple(
				breakdown[mtype, kind] for mtype in MENTION_TYPES)))
	return '\n'.join(lines) + '\n'


def _mark(flags):
	return ' '.join('1+' if flag else '-' for flag in flags)


def format_composition_table(breakdown):
	lines = ['%-9s %-9s %8s %10s' % ('part', 'rest', 'divided', 'conflated'),
			'%-9s %-9s' % ('Na No Pr', 'Na No Pr')]
	for row in COMPOSITION_ROWS + (OTHER, ):
		counts = breakdown.get(row, Counter())
		label = ('%-9s %-9s' % (_mark(row[0]), _mark(row[1]))
				if row != OTHER else '%-19s' % OTHER)
		lines.append('%s %8d %10d' % (label, counts['divided_entity'],
				counts['conflated_entities']))
	return '\n'.join(lines) + '\n'


def format_records(logs):
	"""Machine-readable log, one record per line: kind, doc id, spans."""
	return ''.join('%s\t%s\t%s\n' % (record.kind, record.doc_id,
			record.spans()) for log in logs for record in log)
