"""Constituency trees recovered from CoNLL parse bits, and head rules."""
import logging
import re

from . import tags

LOG = logging.getLogger(__name__)
PARSEBIT = re.compile(r'\(([^()*\s]+)|(\*)|(\))')


class ParseTreeError(ValueError):
	pass


class Tree:
	"""A constituent; children are Tree objects or token indices (int).

	:ivar label: constituent label as it appears in the parse bits.
	:ivar start, end: inclusive token span within the sentence."""

	__slots__ = ('label', 'children', 'parent', 'start', 'end')

	def __init__(self, label, children=None):
		self.label = label
		self.children = children if children is not None else []
		self.parent = None
		self.start = self.end = None

	@property
	def category(self):
		return tags.category(self.label)

	@property
	def span(self):
		return self.start, self.end

	def leaves(self):
		return list(range(self.start, self.end + 1))

	def subtrees(self):
		"""Pre-order traversal of all constituents."""
		agenda = [self]
		while agenda:
			node = agenda.pop()
			yield node
			agenda.extend(child for child in reversed(node.children)
					if isinstance(child, Tree))

	def find(self, start, end, category=None):
		"""Return the lowest constituent with the given span, preferring
		constituents of the given category; None if not found."""
		matches = [node for node in self.subtrees()
				if node.start == start and node.end == end]
		if category is not None:
			preferred = [node for node in matches if node.category == category]
			matches = preferred or matches
		return matches[-1] if matches else None

	def __repr__(self):
		return '(%s %s)' % (self.label, ' '.join(
				repr(child) for child in self.children))


def _setspans(node):
	for child in node.children:
		if isinstance(child, Tree):
			child.parent = node
			_setspans(child)
	first, last = node.children[0], node.children[-1]
	node.start = first if isinstance(first, int) else first.start
	node.end = last if isinstance(last, int) else last.end


def fromparsebits(bits):
	"""Build a tree from the parse-bit column of one sentence.

	Each bit contains one ``*`` standing for its token, e.g.
	``['(TOP(S(NP*', '*)', '(VP*', '*)))']``.  Returns None when the
	sentence has no parse annotation."""
	if all(bit in tags.EMPTY_TAGS and bit != '*' for bit in bits):
		return None
	if all(bit == '*' for bit in bits):
		return None
	stack = [Tree('ROOT')]
	for n, bit in enumerate(bits):
		stars = 0
		for match in PARSEBIT.finditer(bit):
			label, star, close = match.groups()
			if label is not None:
				node = Tree(label)
				stack[-1].children.append(node)
				stack.append(node)
			elif star is not None:
				stars += 1
				stack[-1].children.append(n)
			elif close is not None:
				if len(stack) == 1:
					raise ParseTreeError(
							'unbalanced parse bit %r at token %d' % (bit, n))
				stack.pop()
		if stars != 1:
			raise ParseTreeError(
					'parse bit %r at token %d should contain one "*"'
					% (bit, n))
	if len(stack) != 1:
		raise ParseTreeError('unclosed constituent %r in parse bits'
				% stack[-1].label)
	root = stack[0]
	if len(root.children) == 1 and isinstance(root.children[0], Tree):
		root = root.children[0]
	_setspans(root)
	root.parent = None
	return root


def toparsebits(tree, length):
	"""Inverse of fromparsebits."""
	bits = [''] * length

	def visit(node):
		bits[node.start] += '(' + node.label
		for child in node.children:
			if isinstance(child, Tree):
				visit(child)
			else:
				bits[child] += '*'
		bits[node.end] += ')'
	visit(tree)
	return bits


def iscoordination(node, sentence):
	"""True if node is a coordinated phrase: a coordinating conjunction
	between nominal conjuncts."""
	if node.category == 'coord':
		return True
	children = node.children
	for n, child in enumerate(children[1:-1], 1):
		if (isinstance(child, int)
				and (sentence.tokens[child].form.lower() in tags.COORDINATORS
					or tags.category(sentence.tokens[child].pos) == 'conj')
				and _isnp(children[n - 1], sentence)
				and _isnp(children[n + 1], sentence)):
			return True
	return False


def isappositive(node, sentence):
	"""True if node has the shape NP , NP [,] ."""
	children = node.children
	if node.category != 'np' or not 3 <= len(children) <= 4:
		return False
	if not (isinstance(children[0], Tree) and isinstance(children[2], Tree)
			and children[0].category == 'np' and children[2].category == 'np'
			and isinstance(children[1], int)
			and sentence.tokens[children[1]].form == ','):
		return False
	return len(children) == 3 or (isinstance(children[3], int)
			and sentence.tokens[children[3]].form == ',')


def _isnp(child, sentence):
	if isinstance(child, Tree):
		return child.category == 'np'
	return tags.isnominal(sentence.tokens[child].pos)


def _ispostmodifier(child):
	return isinstance(child, Tree) and child.category in (
			'pp', 'rel', 'clause')


def findhead(node, sentence):
	"""Return (token index, fallback) for the head of a constituent.

	The head is the rightmost noun, name, or pronoun before any trailing
	PP or relative clause, descending into nominal children.  Coordinations
	and appositives take the head of their first conjunct.  When no
	nominal token is found the last token is returned with fallback=True."""
	if isinstance(node, int):
		return node, not tags.isnominal(sentence.tokens[node].pos)
	if iscoordination(node, sentence) or isappositive(node, sentence):
		first = next((child for child in node.children
				if isinstance(child, Tree) or tags.isnominal(
					sentence.tokens[child].pos)), None)
		if first is not None:
			return findhead(first, sentence)
	prehead = []
	for child in node.children:
		if prehead and _ispostmodifier(child):
			break
		prehead.append(child)
	for child in reversed(prehead):
		if isinstance(child, int):
			if tags.isnominal(sentence.tokens[child].pos):
				return child, False
		elif child.category in ('np', 'coord'):
			idx, fallback = findhead(child, sentence)
			if not fallback:
				return idx, False
	for child in reversed(node.children):
		if isinstance(child, Tree):
			idx, fallback = findhead(child, sentence)
			if not fallback:
				return idx, False
	LOG.debug('no nominal head in %r; using last token', node)
	return node.end, True


def headofspan(sentence, start, end):
	"""Head of an arbitrary span: via a matching constituent if the
	sentence has a parse tree, otherwise the last of the first run of
	nouns and names (a pronoun if the span contains no noun or name)."""
	tree = sentence.parse_tree
	if tree is not None:
		node = tree.find(start, end, 'np')
		if node is not None:
			return findhead(node, sentence)
	candidate = pronoun = None
	for n in range(start, end + 1):
		cat = tags.category(sentence.tokens[n].pos)
		if cat in ('noun', 'name'):
			candidate = n
		elif candidate is not None:
			break
		elif cat == 'pronoun' and pronoun is None:
			pronoun = n
	if candidate is not None:
		return candidate, False
	if pronoun is not None:
		return pronoun, False
	return end, True


def minimalspan(node, sentence):
	"""Span of an NP without trailing relative clauses and PP modifiers
	that follow the head; always contains the head."""
	head, _ = findhead(node, sentence)
	if isinstance(node, int):
		return node, node
	if iscoordination(node, sentence):
		return node.start, node.end
	if isappositive(node, sentence):
		return minimalspan(node.children[0], sentence)
	end = node.end
	for child in node.children:
		if isinstance(child, Tree) and child.start > head and (
				child.category in ('pp', 'rel', 'clause')):
			end = child.start - 1
			break
	return node.start, trimpunct(sentence, node.start, end)[1]


def strip_relative(node, sentence):
	"""Span of an NP without a trailing relative clause."""
	if isinstance(node, int):
		return node, node
	head, _ = findhead(node, sentence)
	end = node.end
	for child in node.children:
		if (isinstance(child, Tree) and child.start > head
				and child.category == 'rel'):
			end = child.start - 1
			break
	return trimpunct(sentence, node.start, end)


def trimpunct(sentence, start, end):
	"""Remove leading and trailing punctuation from a span."""
	while start < end and tags.ispunct(sentence.tokens[start]):
		start += 1
	while end > start and tags.ispunct(sentence.tokens[end]):
		end -= 1
	return start, end
