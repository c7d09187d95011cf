"""Input validation helpers for the estimator interface."""
from .corpus import Corpus, Document
from .sieves import SIEVES

SCHEMES = ('riddle', 'sonar')


def check_documents(X):
	"""Return X as a list of Documents; accepts a Corpus, a Document, or
	an iterable of Documents."""
	if isinstance(X, Document):
		return [X]
	if isinstance(X, Corpus):
		return list(X.documents)
	try:
		docs = list(X)
	except TypeError:
		raise TypeError('expected a Corpus or documents, got %s'
				% type(X).__name__) from None
	for doc in docs:
		if not isinstance(doc, Document):
			raise TypeError('expected Document, got %s' % type(doc).__name__)
	return docs


def check_scheme(scheme):
	if scheme not in SCHEMES:
		raise ValueError('scheme must be one of %r, got %r' % (SCHEMES, scheme))
	return scheme


def check_sieves(sieves):
	"""Normalize a sieve list ('all', 'none', comma-separated string or
	sequence of names) to a tuple."""
	if sieves is None or sieves == 'all':
		return SIEVES
	if sieves == 'none':
		return ()
	if isinstance(sieves, str):
		sieves = [a.strip() for a in sieves.split(',') if a.strip()]
	sieves = tuple(sieves)
	for name in sieves:
		if name not in SIEVES:
			raise ValueError('unknown sieve %r' % name)
	return sieves


def check_positive_int(value, name):
	if isinstance(value, bool) or not isinstance(value, int) or value < 1:
		raise ValueError('%s must be a positive integer, got %r' % (name, value))
	return value


def check_gold(docs):
	for doc in docs:
		if doc.entities is None:
			raise ValueError('document %s has no gold entities' % doc.key)
	return docs
