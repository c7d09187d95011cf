"""Compact construction of CoNLL test documents."""
from corefkit.conll import parse_conll


def conll_text(*sentences, docid='doc', part=0, newpar=()):
	"""Build 12-column CoNLL text.  Each sentence is a string with one
	token per line: ``form pos parse_bit ner_bit coref_bit``."""
	lines = ['#begin document (%s); part %03d' % (docid, part)]
	for sentno, sent in enumerate(sentences):
		if sentno:
			lines.append('')
		if sentno in newpar:
			lines.append('# newpar')
		rows = [row.split() for row in sent.strip().splitlines()]
		for n, (form, pos, parse, ner, coref) in enumerate(rows):
			lines.append('\t'.join([docid, str(part), str(n), form, pos, parse,
					'-', '-', '-', '-', ner, coref]))
	lines += ['', '#end document']
	return '\n'.join(lines) + '\n'


def document(*sentences, **kwds):
	return parse_conll(conll_text(*sentences, **kwds)).documents[0]


# "Jan zag de burgemeester van Franeker. Hij lachte."
JAN = ('''
Jan N(eigen) (TOP(SMAIN(NP*) (PER) (0)
zag WW (VP* * -
de LID (NP* * (1
burgemeester N(soort) * * -
van VZ (PP* * -
Franeker N(eigen) (NP*)))) (LOC) 1)|(2)
. LET *)) * -
''', '''
Hij VNW (TOP(SMAIN(NP*) * (0)
lachte WW * * -
. LET *)) * -
''')
