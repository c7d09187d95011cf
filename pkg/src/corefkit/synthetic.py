"""A small generated corpus of Dutch-like sentences with parse trees,
named entities and gold coreference, for tests and demonstrations.

Sentences are built from templates as trees whose NP nodes may carry an
entity id; parse bits, NER bits and coreference bits are derived from
the trees.  The bundled ``data/synthetic.conll`` is the output of
``generate()`` with the default arguments.
"""
import random
from importlib import resources

from .conll import parse_conll, with_entities
from .corpus import Corpus, Document, Sentence, Token
from .entities import Entity, EntitySet
from .mentions import make_mention

PEOPLE = (
		('Jan', 'masc'), ('Piet', 'masc'), ('Kees', 'masc'), ('Willem', 'masc'),
		('Marie', 'fem'), ('Anna', 'fem'), ('Els', 'fem'), ('Sophie', 'fem'))
SURNAMES = ('Jansen', 'de Vries', 'Bakker', 'Visser', 'Smit', 'Mulder')
ROLES = {'masc': ('schilder', 'dokter', 'leraar', 'burgemeester'),
		'fem': ('schilder', 'dokter', 'lerares', 'burgemeester')}
PLACES = ('Amsterdam', 'Utrecht', 'Franeker', 'Haarlem', 'Leiden', 'Delft')
OBJECTS = (('boek', 'het'), ('brief', 'de'), ('schilderij', 'het'),
		('fiets', 'de'), ('gedicht', 'het'), ('auto', 'de'))
VERBS = ('zag', 'vond', 'zocht', 'las', 'kocht')
MOVES = ('liep', 'reed', 'fietste', 'ging')
SUBJECT = {'masc': 'hij', 'fem': 'zij'}
POSSESSIVE = {'masc': 'zijn', 'fem': 'haar'}


def leaf(form, pos):
	return (form, pos)


def np(children, eid=None, ner=None, label='NP'):
	return {'label': label, 'children': children, 'eid': eid, 'ner': ner}


def node(label, children):
	return {'label': label, 'children': children, 'eid': None, 'ner': None}


def name_np(person):
	words = person['name'].split()
	return np([leaf(w, 'N(eigen)') for w in words], person['eid'], 'PER')


def place_np(place):
	return np([leaf(place['name'], 'N(eigen)')], place['eid'], 'LOC')


def pron_np(form, eid):
	return np([leaf(form, 'VNW')], eid)


def desc_np(det, noun, eid, adj=None):
	children = [leaf(det, 'LID')]
	if adj:
		children.append(leaf(adj, 'ADJ'))
	children.append(leaf(noun, 'N(soort)'))
	return np(children, eid)


def period():
	return leaf('.', 'LET')


class Generator:
	"""Stateful document generator: tracks entities and salience."""

	def __init__(self, rng):
		self.rng = rng
		self.eid = 0
		self.people = []
		self.places = []
		self.objects = []
		self.last = None

	def newid(self):
		self.eid += 1
		return self.eid

	def person(self):
		if len(self.people) < 3 and (not self.people or self.rng.random() < .4):
			first, gender = self.rng.choice([p for p in PEOPLE if p[0] not in {
					q['name'].split()[0] for q in self.people}])
			name = first
			if self.rng.random() < .5:
				name += ' ' + self.rng.choice(SURNAMES)
			self.people.append({'name': name, 'gender': gender,
					'eid': self.newid(), 'role': self.rng.choice(ROLES[gender])})
		return self.rng.choice(self.people)

	def place(self):
		if not self.places or self.rng.random() < .3:
			name = self.rng.choice(PLACES)
			for place in self.places:
				if place['name'] == name:
					return place
			self.places.append({'name': name, 'eid': self.newid()})
		return self.rng.choice(self.places)

	def thing(self):
		if not self.objects or self.rng.random() < .4:
			noun, det = self.rng.choice(OBJECTS)
			for obj in self.objects:
				if obj['noun'] == noun:
					return obj
			self.objects.append({'noun': noun, 'det': det, 'eid': self.newid()})
		return self.rng.choice(self.objects)

	def mention_person(self, person):
		"""A pronoun if the person was the previous subject, else a name."""
		if self.last is person:
			return pron_np(SUBJECT[person['gender']].capitalize(),
					person['eid'])
		return name_np(person)

	def sentence(self):
		rng = self.rng
		kind = rng.choice(('copula', 'apposition', 'action', 'action',
				'quote', 'quote', 'move', 'weather', 'possessive', 'object'))
		if kind == 'copula':
			person = self.person()
			tree = node('SMAIN', [name_np(person), leaf('is', 'WW'),
					desc_np('de', person['role'], person['eid']), period()])
			self.last = person
		elif kind == 'apposition':
			person = self.person()
			place = self.place()
			tree = node('SMAIN', [
					np([name_np(person), leaf(',', 'LET'),
						desc_np('de', person['role'], None), leaf(',', 'LET')]),
					leaf('woonde', 'WW'),
					node('PP', [leaf('in', 'VZ'), place_np(place)]), period()])
			# the appositive NP and its parts are one entity
			tree['children'][0]['children'][2]['eid'] = person['eid']
			self.last = person
		elif kind == 'action':
			person = self.person()
			obj = self.thing()
			tree = node('SMAIN', [self.mention_person(person),
					leaf(rng.choice(VERBS), 'WW'),
					desc_np(obj['det'], obj['noun'], obj['eid']), period()])
			self.last = person
		elif kind == 'quote':
			person = self.person()
			if rng.random() < .5:
				content = [leaf('Ik', 'VNW'), leaf('ben', 'WW'),
						leaf('moe', 'ADJ')]
				content[0] = pron_np('Ik', person['eid'])
			else:
				content = [leaf('Ga', 'WW'), leaf('weg', 'BW')]
			tree = node('SMAIN', [leaf('"', 'LET'), node('DU', content),
					leaf(',', 'LET'), leaf('"', 'LET'), leaf('zei', 'WW'),
					self.mention_person(person), period()])
			self.last = person
		elif kind == 'move':
			person = self.person()
			place = self.place()
			tree = node('SMAIN', [self.mention_person(person),
					leaf(rng.choice(MOVES), 'WW'),
					node('PP', [leaf('naar', 'VZ'), place_np(place)]), period()])
			self.last = person
		elif kind == 'weather':
			place = self.place()
			tree = node('SMAIN', [leaf('Het', 'VNW'), leaf('regende', 'WW'),
					node('PP', [leaf('in', 'VZ'), place_np(place)]), period()])
		elif kind == 'possessive':
			person = self.person()
			obj = self.thing()
			tree = node('SMAIN', [
					np([pron_np(POSSESSIVE[person['gender']].capitalize(),
						person['eid']), leaf(obj['noun'], 'N(soort)')],
						self.newid()),
					leaf('lag', 'WW'), node('PP', [leaf('op', 'VZ'),
						desc_np('de', 'tafel', self.newid())]), period()])
			# "zijn boek" names a new entity only when it is a possessed
			# object seen for the first time; keep it simple and fresh.
		else:
			obj = self.thing()
			place = self.place()
			tree = node('SMAIN', [
					np([leaf(obj['det'].capitalize(), 'LID'),
						leaf(obj['noun'], 'N(soort)'),
						node('PP', [leaf('uit', 'VZ'), place_np(place)])],
						obj['eid']),
					leaf('was', 'WW'), leaf('oud', 'ADJ'), period()])
		return node('TOP', [tree])


def flatten(tree):
	"""Return (leaves, parse bits, ner bits, mentions) of a sentence tree;
	mentions are (start, end, eid)."""
	leaves = []
	mentions = []
	ner = []

	def walk(item):
		if isinstance(item, tuple):
			leaves.append(item)
			return ['*']
		start = len(leaves)
		bits = []
		for child in item['children']:
			bits.extend(walk(child))
		end = len(leaves) - 1
		bits[0] = '(' + item['label'] + bits[0]
		bits[-1] += ')'
		if item['eid'] is not None:
			mentions.append((start, end, item['eid']))
		if item['ner'] is not None:
			ner.append((start, end, item['ner']))
		return bits

	parsebits = walk(tree)
	nerbits = ['*'] * len(leaves)
	for start, end, label in ner:
		if start == end:
			nerbits[start] = '(%s)' % label
		else:
			nerbits[start] = '(%s*' % label
			nerbits[end] = '*)'
	return leaves, parsebits, nerbits, mentions


def make_document(doc_id, nsents, rng):
	gen = Generator(rng)
	sentences = []
	spans = []
	for sentno in range(nsents):
		leaves, parsebits, nerbits, mentions = flatten(gen.sentence())
		tokens = tuple(Token(n, form, pos, pbit, nbit)
				for n, ((form, pos), pbit, nbit) in enumerate(
					zip(leaves, parsebits, nerbits)))
		sentences.append(Sentence(tokens, paragraph_start=sentno % 5 == 0))
		spans.extend((sentno, start, end, eid) for start, end, eid in mentions)
	clusters = {}
	for sentno, start, end, eid in spans:
		clusters.setdefault(eid, []).append(make_mention(doc_id,
				sentences[sentno], sentno, (start, end)))
	entities = EntitySet(Entity(eid, tuple(mentions))
			for eid, mentions in clusters.items()).renumbered()
	doc = Document(id=doc_id, sentences=sentences, entities=entities)
	return with_entities(doc, entities)


def generate(ndocs=10, nsents=20, seed=1):
	"""Generate a corpus of ndocs documents with nsents sentences each."""
	rng = random.Random(seed)
	return Corpus([make_document('synthetic-%02d' % n, nsents, rng)
			for n in range(ndocs)])


def load_synthetic():
	"""Read the bundled 200-sentence synthetic corpus."""
	path = resources.files('corefkit').joinpath('data').joinpath(
			'synthetic.conll')
	with path.open(encoding='utf8') as inp:
		return parse_conll(inp)


def inject_errors(corpus, rate, where='uniform', seed=0, tail=0.3):
	"""System output made from gold by detaching mentions into singletons.

	:param where: 'uniform' gives every mention the same chance to be
		detached; 'tail' only detaches mentions in the last ``tail``
		fraction of each document's sentences.
	:returns: Corpus aligned with the input."""
	if where not in ('uniform', 'tail'):
		raise ValueError('where must be uniform or tail, got %r' % where)
	rng = random.Random(seed)
	docs = []
	for doc in corpus:
		first = int(len(doc.sentences) * (1 - tail)) if where == 'tail' else 0
		nextid = max((e.id for e in doc.entities), default=-1) + 1
		entities = []
		for entity in doc.entities:
			kept = []
			for mention in entity.mentions:
				if mention.sentence_index >= first and rng.random() < rate:
					entities.append(Entity(nextid, (mention, )))
					nextid += 1
				else:
					kept.append(mention)
			if kept:
				entities.append(Entity(entity.id, tuple(kept)))
		docs.append(with_entities(doc, EntitySet(entities)))
	return Corpus(docs, split_label=corpus.split_label)
