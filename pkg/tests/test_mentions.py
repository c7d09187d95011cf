import pytest
from hypothesis import given, settings, strategies as st

from corefkit.conll import parse_conll
from corefkit.entities import Entity, EntitySet
from corefkit.mentions import (MentionDetectionError, detect_mentions, head_of,
		is_pleonastic, make_mention, minimal_span, parsepattern, scheme_filter)
from corefkit.corpus import Document, Sentence, Token
from corefkit.synthetic import load_synthetic
from fuzz import random_corpus_text
from helpers import JAN, document

RELATIVE = '''
de LID (TOP(SMAIN(NP* * -
man N(soort) * * -
die VNW (REL(NP*) * -
lachte WW *)) * -
viel WW * * -
. LET *)) * -
'''
WEATHER = '''
Het VNW (TOP(SMAIN(NP*) * -
regent WW * * -
. LET *)) * -
'''


def spans(mentions):
	return [m.key for m in mentions]


def test_single_np():
	doc = document('''
de LID (TOP(NP* * -
burgemeester N(soort) *)) * -
''')
	(mention, ) = detect_mentions(doc)
	assert mention.span == (0, 1) and mention.head_index == 1
	assert mention.surface_type == 'nominal'


def test_nested_nps():
	found = spans(detect_mentions(document(*JAN)))
	assert (0, 2, 5) in found and (0, 5, 5) in found
	assert found == sorted(found, key=lambda k: (k[0], k[1], -k[2]))


def test_pleonastic_by_scheme():
	doc = document(WEATHER)
	assert detect_mentions(doc, 'riddle') == []
	(het, ) = detect_mentions(doc, 'sonar')
	assert het.surface_type == 'pronoun' and not het.referring


def test_relative_clause_boundaries():
	doc = document(RELATIVE)
	riddle = spans(detect_mentions(doc, 'riddle'))
	sonar = spans(detect_mentions(doc, 'sonar'))
	assert (0, 0, 1) in riddle and (0, 0, 3) not in riddle
	assert (0, 0, 3) in sonar


def test_head_of():
	doc = document('''
de LID (TOP(NP* * -
oude ADJ * * -
man N(soort) *)) * -
''', '''
Caspar N(eigen) (TOP(NP* (PER* -
Barlaeus N(eigen) *)) *) -
''', '''
hij VNW (TOP(NP*)) * -
''')
	heads = [head_of(sent.parse_tree.find(0, len(sent) - 1, 'np'), sent)
			for sent in doc.sentences]
	assert heads == [2, 1, 0]


def test_head_fallback_logged(caplog):
	doc = document('''
snel ADJ (TOP(NP*)) * -
''')
	sent = doc.sentences[0]
	with caplog.at_level('INFO'):
		assert head_of(sent.parse_tree.children[0], sent) == 0
	assert 'no nominal head' in caplog.text


def test_minimal_span():
	doc = document(RELATIVE, '''
burgemeester N(soort) (TOP(NP* * -
van VZ (PP* * -
Franeker N(eigen) (NP*)))) (LOC) -
''', '''
de LID (TOP(NP* * -
man N(soort) *)) * -
''')
	rel, pp, plain = doc.sentences
	assert minimal_span(rel.parse_tree.find(0, 3, 'np'), rel) == (0, 1)
	assert minimal_span(pp.parse_tree.find(0, 2, 'np'), pp) == (0, 0)
	assert minimal_span(plain.parse_tree.find(0, 1, 'np'), plain) == (0, 1)
	mention = make_mention('doc', pp, 0, (0, 2))
	assert (mention.span, mention.min_span) == ((0, 2), (0, 0))


def test_is_pleonastic():
	doc = document(WEATHER, '''
Het LID (TOP(SMAIN(NP* * -
boek N(soort) *) * -
lag WW * * -
en VG * * -
het VNW (NP*) * -
viel WW * * -
. LET *)) * -
''', '''
hij VNW (TOP(NP*)) * -
''')
	weather, book, hij = doc.sentences
	het = make_mention('doc', weather, 0, (0, 0))
	assert is_pleonastic(het, weather)
	assert is_pleonastic(het, weather, default=False)
	anaphoric = make_mention('doc', book, 1, (4, 4))
	assert is_pleonastic(anaphoric, book)
	assert not is_pleonastic(anaphoric, book, default=False)
	assert not is_pleonastic(make_mention('doc', hij, 2, (0, 0)), hij)


def test_pattern_needs_one_pronoun():
	with pytest.raises(ValueError):
		parsepattern('[regent|sneeuwt]')


def test_missing_tree_is_error():
	doc = Document('notree', [Sentence([Token(0, 'Jan', 'N(eigen)')])])
	with pytest.raises(MentionDetectionError, match='sentence 0'):
		detect_mentions(doc)


def test_unknown_scheme():
	with pytest.raises(ValueError):
		detect_mentions(document(WEATHER), 'ontonotes')


def test_zijn_without_pos_is_not_a_mention():
	doc = document('''
zijn - (TOP* * -
boek - *) * -
''')
	assert (0, 0, 0) not in spans(detect_mentions(doc))


def test_scheme_filter():
	doc = document(WEATHER, RELATIVE)
	mentions = detect_mentions(doc, 'sonar')
	entities = EntitySet.from_clusters([[m] for m in mentions])
	kept, ents = scheme_filter(mentions, entities, 'riddle')
	assert (0, 0, 0) not in spans(kept)
	assert (1, 0, 1) in spans(kept) and (1, 0, 3) not in spans(kept)
	assert len(ents) == len(kept)
	kept, ents = scheme_filter(mentions, entities, 'sonar')
	assert (0, 0, 0) in spans(kept)
	assert len(ents.get(0).mentions) == 1


def test_scheme_filter_drops_empty_entity():
	doc = document(WEATHER)
	mentions = detect_mentions(doc, 'sonar')
	_, entities = scheme_filter(mentions, EntitySet([Entity(7, tuple(
			mentions))]), 'riddle')
	assert len(entities) == 0


def test_invariants_on_synthetic():
	for doc in load_synthetic():
		for scheme in ('riddle', 'sonar'):
			mentions = detect_mentions(doc, scheme)
			assert mentions == detect_mentions(doc, scheme)
			for m in mentions:
				assert m.span[0] <= m.min_span[0] <= m.head_index
				assert m.head_index <= m.min_span[1] <= m.span[1]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_riddle_subset_of_sonar_markables(seed):
	"""Every riddle mention comes from a sonar markable: same candidate,
	possibly with the relative clause stripped."""
	for doc in parse_conll(random_corpus_text(seed)):
		sonar = detect_mentions(doc, 'sonar')
		corrected = {(m.sentence_index, ) + m.corrected_span for m in sonar}
		for m in detect_mentions(doc, 'riddle'):
			assert m.key in corrected
			# each mention maps to a constituent, pronoun or NER span
			sent = doc.sentences[m.sentence_index]
			assert m.span[1] < len(sent)
