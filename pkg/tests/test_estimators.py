import pytest
from sklearn.base import clone

from corefkit import MentionDetector, SieveResolver, load_synthetic
from corefkit.corpus import Corpus
from corefkit.sieves import SIEVES
from helpers import JAN, document


@pytest.fixture(scope='module')
def corpus():
	return Corpus(load_synthetic().documents[:4])


def test_params_and_clone():
	est = SieveResolver(sieves='exact_match', pronoun_window=2)
	assert est.get_params()['pronoun_window'] == 2
	copy = clone(est)
	assert copy.get_params() == est.get_params()
	est.set_params(scheme='sonar')
	assert est.scheme == 'sonar' and copy.scheme == 'riddle'


def test_mention_detector():
	doc = document(*JAN)
	detector = MentionDetector().fit([doc])
	assert detector.n_documents_ == 1
	(mentions, ) = detector.transform(doc)
	assert [m.text for m in mentions][:1] == ['Jan']
	assert MentionDetector().fit_transform([doc]) == [mentions]


def test_fit_predict_score(corpus):
	est = SieveResolver().fit(corpus)
	assert est.config_.sieves == SIEVES
	predicted = est.predict(corpus)
	assert len(predicted) == len(corpus)
	gold_est = SieveResolver(mention_source='gold')
	assert 0 < est.score(corpus) <= gold_est.score(corpus) <= 1


def test_none_sieves(corpus):
	for entities in SieveResolver(sieves='none').predict(corpus):
		assert all(len(e.mentions) == 1 for e in entities)


def test_parallel_same(corpus):
	one = SieveResolver().resolve_corpus(corpus)
	two = SieveResolver(n_jobs=2).resolve_corpus(corpus)
	assert [d.entities for d in one] == [d.entities for d in two]


@pytest.mark.parametrize('params', [
		dict(sieves='bogus'), dict(scheme='ontonotes'), dict(n_jobs=0),
		dict(pronoun_window=1.5), dict(mention_source='oracle')])
def test_validation(params, corpus):
	with pytest.raises(ValueError):
		SieveResolver(**params).fit(corpus)


def test_bad_input():
	with pytest.raises(TypeError):
		SieveResolver().predict(42)
	with pytest.raises(TypeError):
		SieveResolver().predict(['not a document'])
	with pytest.raises(ValueError):
		MentionDetector(scheme='x').fit([])


def test_gold_mentions_need_entities():
	doc = document(*JAN)
	bare = type(doc)(doc.id, doc.sentences)
	with pytest.raises(ValueError, match='no gold entities'):
		SieveResolver(mention_source='gold').predict([bare])
