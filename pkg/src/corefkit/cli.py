"""Command line interface.

Usage: corefkit <command> [options]; run ``corefkit <command> --help`` for
the options of each command.  Exit status is 0 on success, 1 on a usage
error and 2 on a data error (unreadable or malformed input).
"""
import argparse
import os
import sys
from dataclasses import dataclass

from . import errors, experiments, stats
from .conll import CoNLLError, read_conll, save_conll, write_conll
from .corpus import Corpus
from .estimators import SieveResolver
from .metrics import format_report, format_report_tsv, score_corpus
from .sieves import SieveConfig

USAGE_ERROR = 1
DATA_ERROR = 2
SINGLETONS = {'include': 'included', 'exclude': 'excluded'}


class UsageError(Exception):
	pass


class ArgumentParser(argparse.ArgumentParser):
	"""Report usage errors with exit status 1 instead of 2."""

	def error(self, message):
		self.print_usage(sys.stderr)
		self.exit(USAGE_ERROR, '%s: error: %s\n' % (self.prog, message))


@dataclass
class RunConfig:
	"""Validated settings of one invocation."""
	subcommand: str
	inputs: dict
	output: str = None
	scheme: str = 'riddle'
	singleton_mode: str = 'included'
	mention_mode: str = 'predicted'
	sieve_config: SieveConfig = None
	seed: int = 0
	fractions: tuple = experiments.DEFAULT_FRACTIONS

	@classmethod
	def from_args(cls, args):
		inputs = {}
		for name in ('input', 'gold', 'sys', 'sys_gold'):
			value = getattr(args, name, None)
			if value is None:
				continue
			paths = value if isinstance(value, list) else [value]
			for path in paths:
				if not os.path.isfile(path):
					raise FileNotFoundError('no such file: %s' % path)
			inputs[name] = value
		output = getattr(args, 'output', None)
		if output is not None:
			parent = os.path.dirname(os.path.abspath(output))
			if args.command != 'split' and not os.path.isdir(parent):
				raise FileNotFoundError('no such directory: %s' % parent)
		sieve_config = None
		if getattr(args, 'sieve_config', None) is not None:
			with open(args.sieve_config, encoding='utf8') as inp:
				sieve_config = SieveConfig.from_text(inp.read())
			if args.scheme is not None and args.scheme != sieve_config.scheme:
				raise UsageError('--scheme conflicts with --sieve-config')
		elif getattr(args, 'sieves', None) is not None or args.command == 'resolve':
			sieve_config = SieveConfig.from_names(args.sieves,
					scheme=args.scheme or 'riddle')
		fractions = experiments.DEFAULT_FRACTIONS
		if getattr(args, 'fractions', None):
			fractions = tuple(_numbers(args.fractions, float, 'fractions'))
			for fraction in fractions:
				if not 0 < fraction <= 100:
					raise UsageError('fractions must be in (0, 100]')
		return cls(args.command, inputs, output,
				scheme=getattr(args, 'scheme', None) or 'riddle',
				singleton_mode=SINGLETONS[getattr(args, 'singletons', None)
					or 'include'],
				mention_mode=getattr(args, 'mentions', None) or 'predicted',
				sieve_config=sieve_config, seed=getattr(args, 'seed', 0),
				fractions=fractions)


def _numbers(text, kind, name):
	try:
		return [kind(a) for a in text.split(',') if a.strip()]
	except ValueError:
		raise UsageError('--%s: expected comma-separated numbers, got %r'
				% (name, text)) from None


def _sorted(corpus):
	return Corpus(sorted(corpus, key=lambda doc: doc.key),
			split_label=corpus.split_label)


def _write(text, path):
	if path is None:
		sys.stdout.write(text)
	else:
		with open(path, 'w', encoding='utf8') as out:
			out.write(text)


def _resolver(config, args):
	sieve = config.sieve_config
	return SieveResolver(sieves=sieve.sieves, scheme=sieve.scheme,
			pronoun_window=sieve.pronoun_window,
			relaxed_window=sieve.relaxed_window,
			addressee_links=sieve.addressee_links,
			mention_source=config.mention_mode, n_jobs=args.jobs)


def cmd_resolve(config, args):
	corpus = _sorted(read_conll(config.inputs['input']))
	result = _resolver(config, args).resolve_corpus(corpus)
	_write(write_conll(result), config.output)


def cmd_score(config, args):
	gold = _sorted(read_conll(config.inputs['gold']))
	reports = []
	outputs = {}
	for path in config.inputs['sys']:
		label = os.path.splitext(os.path.basename(path))[0]
		if label in outputs:
			label = path
		outputs[label] = read_conll(path)
		reports.append((label, score_corpus(gold, outputs[label],
				config.singleton_mode, config.mention_mode)))
	if args.per_document:
		text = experiments.format_per_document_table(
				experiments.per_document_table(gold, outputs,
					config.singleton_mode))
		text = '# singletons: %s; mentions: %s\n%s' % (
				config.singleton_mode, config.mention_mode, text)
	elif args.format == 'tsv':
		text = ''.join(format_report_tsv(report, label + '\t')
				for label, report in reports)
		text = '# singletons: %s; mentions: %s\n%s' % (
				config.singleton_mode, config.mention_mode, text)
	else:
		text = format_report(reports)
	_write(text, config.output)


def cmd_analyze_errors(config, args):
	gold = _sorted(read_conll(config.inputs['gold']))
	sysdocs = {doc.key: doc for doc in read_conll(config.inputs['sys'])}
	missing = set(gold.keys()) ^ set(sysdocs)
	if missing:
		raise ValueError('unmatched document ids: %s' % ', '.join(
				sorted(missing)))
	ignore = config.singleton_mode == 'excluded'
	logs = [errors.analyze(doc.entities, sysdocs[doc.key].entities,
			ignore_singletons=ignore, doc_id=doc.key) for doc in gold]
	if args.format == 'tsv':
		text = errors.format_records(logs)
	else:
		merged = errors.ErrorLog([r for log in logs for r in log],
				source=config.inputs['sys'])
		text = '# singletons: %s; mentions: %s\n' % (
				config.singleton_mode, config.mention_mode)
		text += errors.format_error_table(
				[('system', errors.total_counts(logs))])
		text += '\n' + errors.format_mention_type_table(
				errors.breakdown_by_mention_type(merged))
		text += '\n' + errors.format_composition_table(
				errors.composition_breakdown(merged))
	_write(text, config.output)


def cmd_stats(config, args):
	reports = []
	for path in config.inputs['input']:
		label = os.path.splitext(os.path.basename(path))[0]
		reports.append(stats.corpus_stats(read_conll(path), label))
	if args.format == 'tsv':
		text = ''.join(''.join('%s\t%s' % (report.label, line)
				for line in stats.format_stats_tsv(report).splitlines(True))
				for report in reports)
	else:
		text = stats.format_stats(reports)
	_write(text, config.output)


def cmd_split(config, args):
	ratios = _numbers(args.ratios, float, 'ratios')
	corpus = read_conll(config.inputs['input'])
	genre_key = stats.sonar_genre if args.genre == 'id' else None
	splits = stats.stratified_split(corpus, ratios, genre_key=genre_key,
			seed=config.seed)
	os.makedirs(config.output, exist_ok=True)
	for split in splits:
		path = os.path.join(config.output, split.split_label + '.conll')
		save_conll(split, path)
		print('%s\t%d documents\t%s' % (split.split_label, len(split), path))


def cmd_truncate_study(config, args):
	metrics = tuple(a.strip() for a in args.metrics.split(',') if a.strip())
	for metric in metrics:
		if metric not in experiments.METRIC_NAMES:
			raise UsageError('unknown metric %r; choose from %s' % (
					metric, ', '.join(experiments.METRIC_NAMES)))
	study = experiments.run_truncation_study(
			read_conll(config.inputs['gold']), read_conll(config.inputs['sys']),
			config.fractions, metrics, config.singleton_mode, args.jobs)
	text = '# singletons: %s; mentions: %s\n%s' % (config.singleton_mode,
			config.mention_mode, experiments.format_study(study))
	_write(text, config.output)


def cmd_audit(config, args):
	findings = experiments.audit_annotations(read_conll(config.inputs['gold']))
	_write(experiments.format_findings(findings), config.output)


def cmd_grid(config, args):
	gold = _sorted(read_conll(config.inputs['gold']))
	sys_gold = None
	if 'sys_gold' in config.inputs:
		sys_gold = read_conll(config.inputs['sys_gold'])
	grid = experiments.condition_grid(gold, read_conll(config.inputs['sys']),
			sys_gold)
	_write(experiments.format_grid(grid), config.output)


COMMANDS = {
		'resolve': cmd_resolve, 'score': cmd_score,
		'analyze-errors': cmd_analyze_errors, 'stats': cmd_stats,
		'split': cmd_split, 'truncate-study': cmd_truncate_study,
		'audit': cmd_audit, 'grid': cmd_grid}


def build_parser():
	parser = ArgumentParser(prog='corefkit', description=__doc__.split(
			'\n')[0])
	sub = parser.add_subparsers(dest='command', metavar='command')
	sub.required = True

	def add(name, helptext):
		cmd = sub.add_parser(name, help=helptext, description=helptext)
		cmd.add_argument('--output', '-o', help='output file (default: stdout)')
		return cmd

	def singletons(cmd):
		cmd.add_argument('--singletons', choices=sorted(SINGLETONS),
				default='include', help='evaluate with or without singletons')
		cmd.add_argument('--mentions', choices=('predicted', 'gold'),
				default='predicted', help='label of the mention condition')

	def fmt(cmd):
		cmd.add_argument('--format', choices=('text', 'tsv'), default='text')

	cmd = add('resolve', 'resolve coreference in a CoNLL file')
	cmd.add_argument('--input', '-i', required=True)
	cmd.add_argument('--scheme', choices=('riddle', 'sonar'))
	group = cmd.add_mutually_exclusive_group()
	group.add_argument('--sieves', help="'all', 'none' or comma-separated "
			'sieve names in order')
	group.add_argument('--sieve-config', help='file with sieve names and '
			'key=value settings')
	cmd.add_argument('--mentions', choices=('predicted', 'gold'),
			default='predicted', help='detect mentions or use the input '
			'mentions')
	cmd.add_argument('--jobs', type=int, default=1)

	cmd = add('score', 'score system output against gold')
	cmd.add_argument('--gold', '-g', required=True)
	cmd.add_argument('--sys', '-s', required=True, action='append',
			help='system file; repeat to compare systems')
	singletons(cmd)
	fmt(cmd)
	cmd.add_argument('--per-document', action='store_true',
			help='per-document comparison with best F1 flagged')

	cmd = add('analyze-errors', 'classify system errors')
	cmd.add_argument('--gold', '-g', required=True)
	cmd.add_argument('--sys', '-s', required=True)
	singletons(cmd)
	cmd.set_defaults(singletons='exclude')
	cmd.add_argument('--format', choices=('text', 'tsv'), default='text',
			help='tsv lists the individual error records')

	cmd = add('stats', 'corpus statistics')
	cmd.add_argument('--input', '-i', required=True, nargs='+')
	fmt(cmd)

	cmd = sub.add_parser('split', help='stratified train/dev/test split',
			description='stratified train/dev/test split')
	cmd.add_argument('--input', '-i', required=True)
	cmd.add_argument('--output', '-o', required=True,
			help='directory for train.conll, dev.conll, test.conll')
	cmd.add_argument('--ratios', default='0.7,0.15,0.15')
	cmd.add_argument('--seed', type=int, default=0)
	cmd.add_argument('--genre', choices=('none', 'id'), default='none',
			help="'id' takes the genre from the document id prefix")

	cmd = add('truncate-study', 'score documents truncated at several '
			'lengths')
	cmd.add_argument('--gold', '-g', required=True)
	cmd.add_argument('--sys', '-s', required=True)
	cmd.add_argument('--fractions', help='comma-separated percentages')
	cmd.add_argument('--metrics', default=','.join(experiments.DEFAULT_METRICS))
	singletons(cmd)
	cmd.add_argument('--jobs', type=int, default=1)

	cmd = add('audit', 'look for likely gold annotation errors')
	cmd.add_argument('--gold', '-g', required=True)

	cmd = add('grid', 'scores under mention and singleton conditions')
	cmd.add_argument('--gold', '-g', required=True)
	cmd.add_argument('--sys', '-s', required=True,
			help='output from predicted mentions')
	cmd.add_argument('--sys-gold', help='output from gold mentions')
	return parser


def main(argv=None):
	parser = build_parser()
	args = parser.parse_args(argv)
	if getattr(args, 'jobs', 1) < 1:
		parser.error('--jobs must be positive')
	try:
		config = RunConfig.from_args(args)
		COMMANDS[args.command](config, args)
	except UsageError as err:
		parser.error(str(err))
	except (CoNLLError, ValueError, OSError) as err:
		print('%s: error: %s' % (parser.prog, err), file=sys.stderr)
		return DATA_ERROR
	return 0


if __name__ == '__main__':
	sys.exit(main())
