"""Rule-based coreference resolution and evaluation for CoNLL-2012 corpora."""
from .conll import CoNLLError, parse_conll, read_conll, save_conll, write_conll
from .corpus import Corpus, Document, Sentence, Token
from .entities import AgreementFeatures, Entity, EntitySet, Mention
from .errors import ErrorLog, ErrorRecord, analyze
from .estimators import MentionDetector, SieveResolver
from .mentions import detect_mentions
from .metrics import ScoreReport, score, score_corpus
from .sieves import SIEVES, SieveConfig, resolve
from .stats import corpus_stats, stratified_split
from .synthetic import generate, load_synthetic

__version__ = '0.1.0'

__all__ = [
		'AgreementFeatures', 'CoNLLError', 'Corpus', 'Document', 'Entity',
		'EntitySet', 'ErrorLog', 'ErrorRecord', 'Mention', 'MentionDetector',
		'SIEVES', 'ScoreReport', 'Sentence', 'SieveConfig', 'SieveResolver',
		'Token', 'analyze', 'corpus_stats', 'detect_mentions', 'generate',
		'load_synthetic', 'parse_conll', 'read_conll', 'resolve', 'save_conll', 'score', 'score_corpus',
		'stratified_split', 'write_conll']
