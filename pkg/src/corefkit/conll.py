"""Reading and writing CoNLL-2012 coreference files.

The coreference column is always the last one.  Full CoNLL-2012 lines
have at least 12 columns: document id, part, token index, word, POS,
parse bit, lemma, frameset, sense, speaker, NER, [arguments ...],
coreference.  Shorter lines are accepted with the word in the fourth
column (or earlier for very short lines); missing annotation defaults to
empty.
"""
import io
import logging
import re
from collections import defaultdict

from .corpus import Corpus, Document, Sentence, Token
from .entities import Entity, EntitySet
from .mentions import make_mention
from .tree import ParseTreeError

LOG = logging.getLogger(__name__)
BEGIN = re.compile(r'#begin document \(?([^);]*)\)?;?\s*(?:part\s+(\d+))?')
COREFBIT = re.compile(r'^(\()?([^()]+?)(\))?$')
NEWPAR = '# newpar'


class CoNLLError(ValueError):
	pass


def layout(ncols):
	"""Column positions of word, POS, parse bit and NER for a line with
	ncols columns (including the coreference column)."""
	if ncols >= 12:
		return {'form': 3, 'pos': 4, 'parse_bit': 5, 'ner_bit': 10}
	if ncols >= 7:
		return {'form': 3, 'pos': 4, 'parse_bit': 5}
	if ncols == 6:
		return {'form': 3, 'pos': 4}
	if ncols >= 2:
		return {'form': min(3, ncols - 2)}
	raise ValueError('need at least two columns')


def parsecorefbit(bit):
	"""Split a coreference bit into (kind, entity id) pairs.

	>>> parsecorefbit('(0)|(1')
	[('single', 0), ('open', 1)]
	"""
	if bit in ('-', '_'):
		return []
	result = []
	for part in bit.split('|'):
		match = COREFBIT.match(part)
		if match is None or not (match.group(1) or match.group(3)):
			raise ValueError('malformed coreference bit %r' % bit)
		opening, label, closing = match.groups()
		if not label.isdigit():
			raise ValueError('non-numeric entity id %r in %r' % (label, bit))
		kind = 'single' if opening and closing else (
				'open' if opening else 'close')
		result.append((kind, int(label)))
	return result


def corefbits(sentences, entities):
	"""Return per-sentence lists of coreference bits for an EntitySet.

	On each token, closing brackets come first (innermost first), then
	single-token mentions, then opening brackets (outermost first)."""
	opens = [defaultdict(list) for _ in sentences]
	closes = [defaultdict(list) for _ in sentences]
	singles = [defaultdict(list) for _ in sentences]
	for entity in entities:
		seen = set()
		for mention in entity.mentions:
			if mention.key in seen:
				raise CoNLLError('entity %d has span %r twice' % (
						entity.id, mention.key))
			seen.add(mention.key)
			sent, start, end = mention.key
			if not 0 <= start <= end < len(sentences[sent]):
				raise CoNLLError('mention %r outside sentence %d' % (
						mention, sent))
			if start == end:
				singles[sent][start].append(entity.id)
			else:
				opens[sent][start].append((-end, entity.id))
				closes[sent][end].append((-start, entity.id))
	result = []
	for sentno, sent in enumerate(sentences):
		bits = []
		for n in range(len(sent)):
			parts = ['%d)' % eid for _, eid in sorted(closes[sentno][n])]
			parts += ['(%d)' % eid for eid in sorted(singles[sentno][n])]
			parts += ['(%d' % eid for _, eid in sorted(opens[sentno][n])]
			bits.append('|'.join(parts) or '-')
		result.append(bits)
	return result


def _maketoken(fields, n, where):
	ncols = len(fields)
	try:
		cols = layout(ncols)
	except ValueError:
		raise CoNLLError('%s: line has %d column(s)' % (where, ncols))
	values = {name: fields[idx] for name, idx in cols.items()}
	return Token(index_in_sentence=n, coref_bit=fields[-1],
			columns=tuple(fields[:-1]), **values)


def _spans(docid, sentno, tokens):
	"""Collect (entity id, start, end) from coreference bits."""
	stack = defaultdict(list)
	result = []
	for token in tokens:
		where = 'document %s, sentence %d, token %d' % (
				docid, sentno, token.index_in_sentence)
		try:
			parts = parsecorefbit(token.coref_bit)
		except ValueError as err:
			raise CoNLLError('%s: %s' % (where, err)) from None
		for kind, eid in parts:
			if kind == 'single':
				result.append((eid, token.index_in_sentence,
						token.index_in_sentence))
			elif kind == 'open':
				stack[eid].append(token.index_in_sentence)
			elif not stack[eid]:
				raise CoNLLError('%s: closing bracket for entity %d without '
						'matching opening bracket' % (where, eid))
			else:
				result.append((eid, stack[eid].pop(), token.index_in_sentence))
	for eid, starts in stack.items():
		if starts:
			raise CoNLLError('document %s, sentence %d, token %d: bracket for '
					'entity %d is never closed' % (docid, sentno, starts[-1], eid))
	return result


def _finishdocument(docid, part, sentences, genre):
	clusters = defaultdict(list)
	seen = {}
	for sentno, sentence in enumerate(sentences):
		try:
			sentence.parse_tree
		except ParseTreeError as err:
			raise CoNLLError('document %s, sentence %d: %s' % (
					docid, sentno, err)) from None
		for eid, start, end in _spans(docid, sentno, sentence.tokens):
			key = (sentno, start, end)
			if key in seen:
				if seen[key] == eid:
					LOG.warning('document %s: duplicate mention %r in entity %d '
							'ignored', docid, key, eid)
					continue
				raise CoNLLError('document %s, sentence %d, tokens %d-%d: span '
						'assigned to entities %d and %d' % (
							docid, sentno, start, end, seen[key], eid))
			seen[key] = eid
			clusters[eid].append(make_mention(docid, sentence, sentno,
					(start, end)))
	entities = EntitySet(Entity(eid, tuple(mentions))
			for eid, mentions in clusters.items())
	document = Document(id=docid, part=part, genre=genre,
			sentences=sentences, entities=entities)
	return with_entities(document, entities)


def with_entities(document, entities):
	"""Copy of a document with other entities and matching coreference
	bits."""
	bits = corefbits(document.sentences, entities)
	sentences = [Sentence(tuple(
			Token(tok.index_in_sentence, tok.form, tok.pos, tok.parse_bit,
				tok.ner_bit, bit, tok.columns)
			for tok, bit in zip(sent.tokens, sentbits)),
			paragraph_start=sent.paragraph_start)
			for sent, sentbits in zip(document.sentences, bits)]
	return Document(id=document.id, part=document.part, genre=document.genre,
			sentences=sentences, entities=entities)


def parse_conll(stream, genre=None, split_label=None):
	"""Read a CoNLL-2012 file into a Corpus.

	:param stream: a file object, or a string with the file contents.
	:param genre: genre label given to every document (optional).
	:returns: Corpus whose documents carry the entities encoded in the
		coreference column, singletons included.
	:raises CoNLLError: on malformed brackets, duplicate document ids or
		non-numeric entity ids; the message names document, sentence and
		token."""
	if isinstance(stream, str):
		stream = io.StringIO(stream)
	documents = []
	keys = set()
	docid = part = None
	sentences, tokens = [], []
	newpar = False

	def endsentence():
		nonlocal tokens, newpar
		if tokens:
			sentences.append(Sentence(tuple(tokens), paragraph_start=newpar))
			newpar = False
		tokens = []

	for lineno, line in enumerate(stream, 1):
		line = line.rstrip('\r\n')
		if line.startswith('#begin document'):
			if docid is not None:
				raise CoNLLError('line %d: document %s not ended' % (
						lineno, docid))
			match = BEGIN.match(line)
			docid = match.group(1).strip()
			part = int(match.group(2) or 0)
			if (docid, part) in keys:
				raise CoNLLError('line %d: duplicate document id %s part %d'
						% (lineno, docid, part))
			keys.add((docid, part))
			sentences, tokens = [], []
			newpar = False
		elif line.startswith('#end document'):
			if docid is None:
				raise CoNLLError('line %d: #end document without #begin'
						% lineno)
			endsentence()
			documents.append(_finishdocument(docid, part, sentences, genre))
			docid = None
		elif line.strip() == NEWPAR:
			endsentence()
			newpar = True
		elif line.startswith('#'):
			continue
		elif not line.strip():
			endsentence()
		else:
			if docid is None:
				raise CoNLLError('line %d: token outside document' % lineno)
			where = 'document %s, sentence %d, token %d' % (
					docid, len(sentences), len(tokens))
			tokens.append(_maketoken(line.split(), len(tokens), where))
	if docid is not None:
		raise CoNLLError('document %s has no #end document line' % docid)
	return Corpus(documents, split_label=split_label)


def _tokenfields(doc, token, bit):
	if token.columns is None:
		return [doc.id, str(doc.part), str(token.index_in_sentence),
				token.form, token.pos, token.parse_bit, '-', '-', '-', '-',
				token.ner_bit, bit]
	fields = list(token.columns)
	for name, idx in layout(len(fields) + 1).items():
		fields[idx] = getattr(token, name)
	return fields + [bit]


def write_conll(corpus, stream=None):
	"""Write a Corpus in CoNLL-2012 format.

	Coreference bits are generated from each document's entities.  Returns
	the text when no stream is given."""
	out = io.StringIO() if stream is None else stream
	for doc in corpus.documents:
		out.write('#begin document (%s); part %03d\n' % (doc.id, doc.part))
		if doc.entities is not None:
			bits = corefbits(doc.sentences, doc.entities)
		else:
			bits = [[tok.coref_bit for tok in sent.tokens]
					for sent in doc.sentences]
		for sentno, sent in enumerate(doc.sentences):
			if sentno:
				out.write('\n')
			if sent.paragraph_start:
				out.write(NEWPAR + '\n')
			for token, bit in zip(sent.tokens, bits[sentno]):
				out.write('\t'.join(_tokenfields(doc, token, bit)) + '\n')
		out.write('\n#end document\n')
	if stream is None:
		return out.getvalue()
	return None


def read_conll(path, **kwds):
	with open(path, encoding='utf8') as inp:
		return parse_conll(inp, **kwds)


def save_conll(corpus, path):
	with open(path, 'w', encoding='utf8') as out:
		write_conll(corpus, out)
