import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

CRITERIA = {}


def pytest_configure(config):
	config.addinivalue_line('markers',
			'criterion(number, title): acceptance criterion checked by a test')


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
	outcome = yield
	report = outcome.get_result()
	marker = item.get_closest_marker('criterion')
	if marker is None:
		return
	number, title = marker.args
	entry = CRITERIA.setdefault(number, {'title': title, 'outcomes': []})
	if report.when == 'call' or report.outcome != 'passed':
		entry['outcomes'].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
	if not CRITERIA:
		return
	terminalreporter.section('acceptance criteria')
	for number in sorted(CRITERIA):
		entry = CRITERIA[number]
		outcomes = entry['outcomes']
		if 'failed' in outcomes:
			status = 'FAIL'
		elif outcomes and all(o == 'skipped' for o in outcomes):
			status = 'SKIP'
		else:
			status = 'PASS'
		terminalreporter.write_line('criterion %d: %s: %s' % (
				number, status, entry['title']))
