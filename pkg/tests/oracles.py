"""Brute-force reference implementations of the coreference metrics.

These are written from the metric definitions, independently of
corefkit.metrics: MUC and LEA count explicit links, CEAFe tries every
one-to-one entity alignment.  They are slow and only meant for small
inputs.  Entities are collections of hashable mentions.
"""
from fractions import Fraction
from itertools import combinations, permutations


def set_partitions(items):
	"""Yield every partition of a list as a list of frozensets."""
	items = list(items)
	if not items:
		yield []
		return
	first, rest = items[0], items[1:]
	for part in set_partitions(rest):
		for n in range(len(part)):
			yield part[:n] + [part[n] | {first}] + part[n + 1:]
		yield part + [frozenset([first])]


def _ratio(num, den):
	return Fraction(num, den) if den else Fraction(0)


def _f1(r, p):
	return 2 * r * p / (r + p) if r + p else Fraction(0)


def _components(entity, linked):
	"""Connected components of entity under the pair relation linked."""
	parent = {m: m for m in entity}

	def find(m):
		while parent[m] != m:
			m = parent[m]
		return m

	for a, b in combinations(sorted(entity), 2):
		if linked(a, b):
			parent[find(a)] = find(b)
	return len({find(m) for m in entity})


def _coreferent(entities):
	where = {m: n for n, e in enumerate(entities) for m in e}
	return lambda a, b: a in where and b in where and where[a] == where[b]


def muc(key, response):
	"""(recall, precision, f1): each key entity needs |K| - 1 links; the
	links recovered are those that leave fewer components once the
	response's coreference links are drawn inside K."""
	def side(key, response):
		linked = _coreferent(response)
		num = sum(len(k) - _components(k, linked) for k in key)
		den = sum(len(k) - 1 for k in key)
		return num, den
	rn, rd = side(key, response)
	pn, pd = side(response, key)
	r, p = _ratio(rn, rd), _ratio(pn, pd)
	return r, p, _f1(r, p)


def b_cubed(key, response):
	def side(key, response):
		mentions = [m for k in key for m in k]
		total = Fraction(0)
		for k in key:
			for m in k:
				r = next((e for e in response if m in e), frozenset())
				total += Fraction(len(set(k) & set(r)), len(k))
		return _ratio(total, 1) / len(mentions) if mentions else Fraction(0)
	r, p = side(key, response), side(response, key)
	return r, p, _f1(r, p)


def phi4(k, r):
	return Fraction(2 * len(set(k) & set(r)), len(k) + len(r))


def ceaf_e(key, response):
	"""Best total phi4 over every injective alignment of the smaller side
	into the larger."""
	key, response = list(key), list(response)
	best = Fraction(0)
	if len(key) <= len(response):
		for perm in permutations(range(len(response)), len(key)):
			best = max(best, sum((phi4(key[i], response[j])
					for i, j in enumerate(perm)), Fraction(0)))
	else:
		for perm in permutations(range(len(key)), len(response)):
			best = max(best, sum((phi4(key[j], response[i])
					for i, j in enumerate(perm)), Fraction(0)))
	r, p = _ratio(best, len(key)), _ratio(best, len(response))
	return r, p, _f1(r, p)


def links(entity):
	"""Coreference links of an entity; a singleton has one self-link."""
	entity = sorted(entity)
	if len(entity) == 1:
		return {(entity[0], entity[0])}
	return set(combinations(entity, 2))


def lea(key, response):
	def side(key, response):
		allresponse = set().union(*(links(e) for e in response)) if response \
				else set()
		num = sum(len(k) * Fraction(len(links(k) & allresponse),
				len(links(k))) for k in key)
		den = sum(len(k) for k in key)
		return _ratio(num, den)
	r, p = side(key, response), side(response, key)
	return r, p, _f1(r, p)


ORACLES = {'muc': muc, 'b3': b_cubed, 'ceafe': ceaf_e, 'lea': lea}
