import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from corefkit import errors
from corefkit.entities import Entity, EntitySet, Mention


def m(sent, start, end=None, head=None, mtype='nominal'):
	end = start if end is None else end
	return Mention('d', sent, (start, end), end if head is None else head,
			surface_type=mtype)


A, B, C, D, E = (m(0, n * 2) for n in range(5))


def entities(*clusters):
	return EntitySet.from_clusters(clusters)


def kinds(log):
	return [record.kind for record in log]


def test_identity_empty():
	gold = entities([A, B], [C, D])
	assert len(errors.analyze(gold, gold)) == 0


def test_divided():
	gold = entities([A, B, C])
	sys = entities([A, B], [C])
	log = errors.analyze(gold, sys, ignore_singletons=False)
	assert kinds(log) == ['divided_entity']
	(record, ) = log
	assert record.mentions == (C, )
	assert set(record.rest) == {A, B}


def test_conflated():
	gold = entities([A, B], [C, D])
	sys = entities([A, B, C, D])
	log = errors.analyze(gold, sys)
	assert kinds(log) == ['conflated_entities']
	assert set(log.records[0].mentions) == {C, D}


def test_span_error():
	wide = m(0, 0, 2, head=2)
	narrow = m(0, 1, 2, head=2)
	gold = entities([narrow, E])
	sys = entities([wide, E])
	log = errors.analyze(gold, sys)
	assert kinds(log) == ['span_error']
	assert log.records[0].target == narrow
	assert log.apply().as_dict() == gold.as_dict()


def test_extra_and_missing():
	gold = entities([A, B, C], [D, E])
	sys = entities([A, B, m(1, 0)], [m(1, 3), m(1, 5)])
	log = errors.analyze(gold, sys)
	assert Counter(kinds(log)) == Counter(extra_mention=1, extra_entity=1,
			missing_mention=1, missing_entity=1)
	assert log.apply().renumbered().as_dict() == gold.renumbered().as_dict()


def test_singletons_ignored_by_default():
	gold = entities([A, B], [C])
	sys = entities([A, B], [D])
	assert len(errors.analyze(gold, sys)) == 0
	log = errors.analyze(gold, sys, ignore_singletons=False)
	assert Counter(kinds(log)) == Counter(extra_entity=1, missing_entity=1)


def test_system_singleton_on_gold_mention_kept():
	# C is a gold mention in a larger entity, so the system singleton is
	# kept and shows up as a divided entity
	gold = entities([A, B, C])
	sys = entities([A, B], [C])
	assert kinds(errors.analyze(gold, sys)) == ['divided_entity']


def test_mention_type_breakdown():
	name = m(1, 0, mtype='name')
	pron = m(1, 2, mtype='pronoun')
	gold = entities([A, B, name])
	sys = entities([A, B, pron])
	result = errors.breakdown_by_mention_type(errors.analyze(gold, sys))
	assert result['name', 'missing'] == 1
	assert result['pronoun', 'extra'] == 1
	assert sum(result.values()) == 2


def test_composition_row():
	# a pronoun split off from an entity of a nominal and a pronoun
	pron = m(1, 0, mtype='pronoun')
	pron2 = m(1, 2, mtype='pronoun')
	gold = entities([A, pron, pron2])
	sys = entities([A, pron], [pron2])
	result = errors.composition_breakdown(errors.analyze(gold, sys))
	row = ((False, False, True), (False, True, True))
	assert result == {row: Counter(divided_entity=1)}
	table = errors.format_composition_table(result)
	assert table.splitlines()[2].split()[-2:] == ['1', '0']


def test_composition_other():
	name = m(1, 0, mtype='name')
	gold = entities([A, B], [name, m(1, 2, mtype='name')])
	sys = entities([A, B, name, m(1, 2, mtype='name')])
	result = errors.composition_breakdown(errors.analyze(gold, sys))
	assert list(result) == [errors.OTHER]


def test_total_counts_and_tables():
	gold = entities([A, B, C])
	sys = entities([A, B], [C])
	logs = [errors.analyze(gold, sys), errors.analyze(gold, gold)]
	total = errors.total_counts(logs)
	assert total['divided_entity'] == 1 and sum(total.values()) == 1
	table = errors.format_error_table([('system', total)])
	assert 'Divided Entity' in table.splitlines()[0]
	records = errors.format_records(logs)
	assert records == 'divided_entity\td\t0:4-4\n'


def test_bad_kind():
	with pytest.raises(ValueError):
		errors.ErrorRecord('wrong', 'd', ())


pool = [m(s, n) for s in range(2) for n in range(4)]
partitions = st.lists(st.integers(0, 3), min_size=len(pool),
		max_size=len(pool))


def partition(labels, subset=None):
	groups = {}
	for mention, label in zip(pool, labels):
		if subset is None or mention in subset:
			groups.setdefault(label, []).append(mention)
	return EntitySet.from_clusters(groups.values())


@settings(max_examples=100, deadline=None)
@given(partitions, partitions, st.permutations(range(len(pool))))
def test_counts_invariant_under_relabeling(gl, sl, perm):
	gold, sys = partition(gl), partition(sl)
	relabeled = EntitySet(Entity(len(pool) + n, e.mentions)
			for n, e in zip(perm, sys))
	a = errors.analyze(gold, sys, ignore_singletons=False).counts()
	b = errors.analyze(gold, relabeled, ignore_singletons=False).counts()
	assert a == b


def missing_mentions(log):
	return sum(len(r.mentions) for r in log
			if r.kind in ('missing_mention', 'missing_entity'))


@settings(max_examples=100, deadline=None)
@given(partitions, st.integers(0, 2 ** 16))
def test_dropping_mentions_never_reduces_missing(gl, seed):
	"""Removing a gold mention from the system output cannot reduce the
	number of gold mentions reported missing."""
	gold = partition(gl)
	rng = random.Random(seed)
	keep = [x for x in pool if rng.random() < .8]
	fewer = set(keep[:-1])
	before = errors.analyze(gold, partition(gl, set(keep)),
			ignore_singletons=False)
	after = errors.analyze(gold, partition(gl, fewer),
			ignore_singletons=False)
	assert missing_mentions(after) == missing_mentions(before) + (
			1 if keep else 0)
