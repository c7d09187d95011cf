"""scikit-learn style wrappers around mention detection and resolution.

Nothing is learned: ``fit`` only validates parameters and input, so the
estimators can be dropped into pipelines and parameter grids (for
example, a grid over sieve orders or pronoun windows).
"""
from concurrent.futures import ProcessPoolExecutor

from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import (check_documents, check_gold, check_positive_int,
		check_scheme, check_sieves)
from .conll import with_entities
from .corpus import Corpus
from .mentions import detect_mentions
from .metrics import score_corpus
from .sieves import SIEVES, SieveConfig, resolve

MENTION_SOURCES = ('predicted', 'gold')


class MentionDetector(TransformerMixin, BaseEstimator):
	"""Transform documents into lists of candidate mentions.

	:param scheme: 'riddle' or 'sonar' boundary and filtering rules.
	:param pleonastic_default: whether "het" outside the listed expletive
		constructions is treated as pleonastic."""

	def __init__(self, scheme='riddle', pleonastic_default=True):
		self.scheme = scheme
		self.pleonastic_default = pleonastic_default

	def fit(self, X, y=None):
		check_scheme(self.scheme)
		self.n_documents_ = len(check_documents(X))
		return self

	def transform(self, X):
		check_scheme(self.scheme)
		return [detect_mentions(doc, self.scheme,
				pleonastic_default=self.pleonastic_default)
				for doc in check_documents(X)]


def _resolve_one(args):
	doc, config, mention_source, pleonastic_default = args
	if mention_source == 'gold':
		mentions = doc.entities.mentions()
	else:
		mentions = detect_mentions(doc, config.scheme,
				pleonastic_default=pleonastic_default)
	return with_entities(doc, resolve(doc, mentions, config))


class SieveResolver(BaseEstimator):
	"""Multi-pass sieve coreference resolver.

	:param sieves: sieve names in order, 'all', or 'none'.
	:param mention_source: 'predicted' (detect mentions) or 'gold' (use the
		mentions of the input's entities).
	:param n_jobs: documents resolved in parallel processes."""

	def __init__(self, sieves=SIEVES, scheme='riddle', pronoun_window=3,
			relaxed_window=5, addressee_links=True, mention_source='predicted',
			pleonastic_default=True, n_jobs=1):
		self.sieves = sieves
		self.scheme = scheme
		self.pronoun_window = pronoun_window
		self.relaxed_window = relaxed_window
		self.addressee_links = addressee_links
		self.mention_source = mention_source
		self.pleonastic_default = pleonastic_default
		self.n_jobs = n_jobs

	def _config(self):
		if self.mention_source not in MENTION_SOURCES:
			raise ValueError('mention_source must be one of %r'
					% (MENTION_SOURCES, ))
		check_positive_int(self.n_jobs, 'n_jobs')
		return SieveConfig(sieves=check_sieves(self.sieves),
				scheme=check_scheme(self.scheme),
				pronoun_window=check_positive_int(
					self.pronoun_window, 'pronoun_window'),
				relaxed_window=check_positive_int(
					self.relaxed_window, 'relaxed_window'),
				addressee_links=bool(self.addressee_links))

	def fit(self, X=None, y=None):
		self.config_ = self._config()
		return self

	def resolve_corpus(self, X):
		"""Return a Corpus of copies of the input documents whose entities
		are the system output, in input order."""
		config = self._config()
		docs = check_documents(X)
		if self.mention_source == 'gold':
			check_gold(docs)
		tasks = [(doc, config, self.mention_source, self.pleonastic_default)
				for doc in docs]
		if self.n_jobs > 1 and len(tasks) > 1:
			with ProcessPoolExecutor(self.n_jobs) as pool:
				result = list(pool.map(_resolve_one, tasks))
		else:
			result = [_resolve_one(task) for task in tasks]
		label = X.split_label if isinstance(X, Corpus) else None
		return Corpus(result, split_label=label)

	def predict(self, X):
		"""Return one EntitySet per document."""
		return [doc.entities for doc in self.resolve_corpus(X)]

	def score(self, X, y=None, singleton_mode='included'):
		"""CoNLL score (fraction) of the output against the gold entities
		of X (or of y, a gold Corpus, if given)."""
		gold = Corpus(check_gold(check_documents(X if y is None else y)))
		sys = self.resolve_corpus(X)
		mention_mode = 'gold' if self.mention_source == 'gold' else 'predicted'
		return score_corpus(gold, sys, singleton_mode, mention_mode).conll
