"""Direct speech: quotation spans with speaker and addressee heuristics."""
from dataclasses import dataclass

from . import tags
from .entities import _order

# Mentions this close (in tokens) to a speech verb can be its subject.
SPEAKER_DISTANCE = 4


@dataclass(frozen=True)
class QuoteSpan:
	"""Quoted text between a pair of quotation marks (marks excluded).

	``start`` and ``end`` are (sentence, token) positions, inclusive; a
	quote may cover several sentences.  ``speaker`` and ``addressee`` are
	mentions; the entity they belong to is the speaker/addressee entity.
	``source`` records how the speaker was found: 'framing' (a speech verb
	next to the quote) or 'alternation' (dialogue turn taking)."""
	start: tuple
	end: tuple
	speaker: object = None
	addressee: object = None
	source: str = None

	def contains(self, mention):
		return (self.start <= (mention.sentence_index, mention.span[0])
				and (mention.sentence_index, mention.span[1]) <= self.end)


def _positions(document):
	return [(sentno, n) for sentno, sent in enumerate(document.sentences)
			for n in range(len(sent.tokens))]


def quote_marks(document):
	"""Return list of (open position, close position) pairs of quote marks.

	A straight quote both opens and closes.  An unterminated quote is
	closed at the end of its paragraph (or of the document)."""
	result = []
	current = None
	positions = _positions(document)
	for n, (sentno, idx) in enumerate(positions):
		sent = document.sentences[sentno]
		if idx == 0 and sent.paragraph_start and current is not None:
			result.append((current[0], positions[n - 1], True))
			current = None
		form = sent.tokens[idx].form
		if current is None:
			if form in tags.QUOTE_PAIRS:
				current = ((sentno, idx), form)
		elif form in tags.QUOTE_PAIRS[current[1]]:
			result.append((current[0], (sentno, idx), False))
			current = None
	if current is not None:
		result.append((current[0], positions[-1], True))
	return result


def _inner(document, openpos, closepos, unterminated):
	"""Content span of a quote, without its marks."""
	positions = _positions(document)
	first = positions.index(openpos) + 1
	last = positions.index(closepos) - (0 if unterminated else 1)
	if first > last:
		return None
	return positions[first], positions[last]


def _candidate(mention, quotes):
	return (mention.referring and mention.features.person in ('3', tags.UNKNOWN)
			and not any(q.contains(mention) for q in quotes)
			and (mention.surface_type != 'pronoun' or tags.PRONOUNS.get(
				mention.text.lower(), ('', '', '', '', 'personal'))[4]
				== 'personal'))


def _framing(document, start, end, mentions, quotes):
	"""Find speaker and addressee in the clauses around a quote: the text
	before the opening mark in its sentence and after the closing mark in
	its sentence."""
	spans = []
	sentno, idx = start
	if idx > 1:
		spans.append((sentno, 0, idx - 2))
	sentno, idx = end
	length = len(document.sentences[sentno].tokens)
	if idx + 2 < length:
		spans.append((sentno, idx + 2, length - 1))
	speaker = addressee = None
	for sentno, first, last in spans:
		sent = document.sentences[sentno]
		verbs = [n for n in range(first, last + 1)
				if sent.tokens[n].form.lower() in tags.speechverbs()]
		if not verbs:
			continue
		verb = verbs[0]
		inclause = [m for m in mentions if m.sentence_index == sentno
				and first <= m.span[0] and m.span[1] <= last
				and _candidate(m, quotes)]
		near = [m for m in inclause
				if min(abs(m.span[0] - verb), abs(m.span[1] - verb))
				<= SPEAKER_DISTANCE]
		# closest to the verb; after the verb (inversion) wins ties;
		# the outermost mention at a position
		near.sort(key=lambda m: (
				min(abs(m.span[0] - verb), abs(m.span[1] - verb)),
				m.span[0] < verb, _order(m)))
		if near and speaker is None:
			speaker = near[0]
		for n in range(first, last):
			if sent.tokens[n].form.lower() in ('tegen', 'to'):
				after = [m for m in inclause if m.span[0] == n + 1]
				if after and addressee is None:
					addressee = after[0]
	return speaker, addressee


def _vocative(document, start, end, mentions):
	"""A name at the edge of the quote set off by a comma."""
	for m in mentions:
		if m.surface_type != 'name':
			continue
		sent = document.sentences[m.sentence_index]
		pos = (m.sentence_index, m.span[0]), (m.sentence_index, m.span[1])
		if pos[0] == start and m.span[1] + 1 < len(sent.tokens) and (
				sent.tokens[m.span[1] + 1].form == ','):
			return m
		if pos[1] == end and m.span[0] > 0 and (
				sent.tokens[m.span[0] - 1].form == ','):
			return m
		if pos[1][0] == end[0] and m.span[0] > 0 and (
				sent.tokens[m.span[0] - 1].form == ',') and (
				m.span[1] + 1 == end[1] and tags.ispunct(
					sent.tokens[end[1]])):
			return m
	return None


def _participant(mention):
	"""Identity used to tell dialogue participants apart before
	resolution: the normalized string of the speaker mention."""
	return None if mention is None else tags.normalize([mention.text])


def detect_quotes(document, mentions=None):
	"""Find quotations in a document and attribute speakers.

	The speaker is the mention nearest a speech verb in the framing clause
	(the text before or after the quote in the same sentence); the
	addressee is the object of "tegen" in that clause or a vocative name
	inside the quote.  Quotes without a framing speaker take turns: the
	previous quote's addressee, else the other of the two most recent
	speakers, else the most recent animate mention that is not the
	previous speaker.

	:param mentions: candidate mentions; defaults to the document's
		entities, or detected mentions when it has none."""
	if mentions is None:
		if document.entities is not None:
			mentions = document.entities.mentions()
		else:
			from .mentions import detect_mentions
			mentions = detect_mentions(document)
	mentions = sorted(mentions, key=_order)
	spans = []
	for openpos, closepos, unterminated in quote_marks(document):
		inner = _inner(document, openpos, closepos, unterminated)
		if inner is not None:
			spans.append(QuoteSpan(*inner))
	result = []
	speakers = []
	for n, quote in enumerate(spans):
		inside = [m for m in mentions if quote.contains(m)]
		speaker, addressee = _framing(document, quote.start, quote.end,
				mentions, spans)
		source = 'framing' if speaker is not None else None
		if addressee is None:
			addressee = _vocative(document, quote.start, quote.end, inside)
		prev = result[-1] if result else None
		if speaker is None and prev is not None:
			speaker = _alternate(prev, speakers, mentions, quote, spans)
			source = 'alternation' if speaker is not None else None
		if (addressee is None and prev is not None
				and prev.speaker is not None
				and _participant(prev.speaker) != _participant(speaker)):
			addressee = prev.speaker
		if speaker is not None and (not speakers or _participant(
				speakers[-1]) != _participant(speaker)):
			speakers.append(speaker)
		result.append(QuoteSpan(quote.start, quote.end, speaker, addressee,
				source))
	return result


def _alternate(prev, speakers, mentions, quote, spans):
	previous = _participant(prev.speaker)
	if prev.addressee is not None and _participant(
			prev.addressee) != previous:
		return prev.addressee
	for mention in reversed(speakers):
		if _participant(mention) != previous:
			return mention
	before = [m for m in mentions
			if (m.sentence_index, m.span[1]) < quote.start
			and m.features.animacy == 'animate'
			and m.surface_type != 'pronoun'
			and _candidate(m, spans)
			and _participant(m) != previous]
	return before[-1] if before else None
