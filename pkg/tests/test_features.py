from hypothesis import given, strategies as st

from corefkit.entities import (ANIMACIES, GENDERS, NUMBERS, PERSONS,
		AgreementFeatures)
from corefkit.features import (assign_features, compatible,
		mentions_compatible, pronoun_features)
from corefkit.mentions import make_mention
from helpers import document

MASC_SG = AgreementFeatures('masc', 'sg')


def test_hij():
	assert pronoun_features('hij') == AgreementFeatures(
			'masc', 'sg', 'animate', '3')
	assert pronoun_features('Hij') == pronoun_features('hij')
	assert pronoun_features('boek') is None


def test_zij_number_from_verb():
	doc = document('''
zij VNW (TOP(SMAIN(NP*) * -
is WW * * -
. LET *)) * -
''', '''
zij VNW (TOP(SMAIN(NP*) * -
zijn WW * * -
. LET *)) * -
''', '''
zij VNW (TOP(NP*)) * -
''')
	sg, pl, bare = (pronoun_features('zij', sent, 0) for sent in doc.sentences)
	assert (sg.gender, sg.number) == ('fem', 'sg')
	assert pl.number == 'pl' and pl.gender != 'fem'
	assert bare.number == 'unknown'


def test_meisje_neuter_animate():
	doc = document('''
het LID (TOP(NP* * -
meisje N(soort) *)) * -
''')
	sent = doc.sentences[0]
	features = make_mention('doc', sent, 0, (0, 1)).features
	assert (features.gender, features.animacy) == ('neuter', 'animate')
	assert compatible(features, pronoun_features('zij'))
	assert compatible(features, pronoun_features('het'))
	assert compatible(features, pronoun_features('hij'))


def test_unlisted_noun_unknown():
	doc = document('''
de LID (TOP(NP* * -
fnorp N(soort) *)) * -
''')
	sent = doc.sentences[0]
	mention = make_mention('doc', sent, 0, (0, 1))
	assert assign_features(mention, sent) == AgreementFeatures()


def test_names_from_ner():
	doc = document('''
Marie N(eigen) (TOP(NP*)) (PER) -
''', '''
Leiden N(eigen) (TOP(NP*)) (LOC) -
''')
	marie = make_mention('doc', doc.sentences[0], 0, (0, 0)).features
	leiden = make_mention('doc', doc.sentences[1], 1, (0, 0)).features
	assert (marie.gender, marie.animacy) == ('fem', 'animate')
	assert leiden.animacy == 'inanimate'
	assert not compatible(leiden, pronoun_features('hij'))


def test_compatible_examples():
	assert compatible(MASC_SG, AgreementFeatures(number='sg'))
	assert not compatible(MASC_SG, AgreementFeatures('fem', 'sg'))
	assert compatible(AgreementFeatures('neuter', animacy='animate'),
			AgreementFeatures('fem'))
	assert not compatible(AgreementFeatures('neuter', animacy='inanimate'),
			AgreementFeatures('fem'))


features = st.builds(AgreementFeatures, st.sampled_from(GENDERS),
		st.sampled_from(NUMBERS), st.sampled_from(ANIMACIES),
		st.sampled_from(PERSONS))


@given(features, features)
def test_compatible_symmetric(a, b):
	assert compatible(a, b) == compatible(b, a)
	assert compatible(a, a)
	assert compatible(a, AgreementFeatures())


def test_plural_pronoun_never_singular():
	for form in ('wij', 'we', 'jullie', 'zij', 'ze', 'hun', 'hen'):
		result = pronoun_features(form)
		assert result is None or result.number != 'sg'


def test_mentions_compatible():
	doc = document('''
hij VNW (TOP(NP*)) * -
''', '''
zij VNW (TOP(SMAIN(NP*) * -
lachte WW *)) * -
''')
	hij = make_mention('doc', doc.sentences[0], 0, (0, 0))
	zij = make_mention('doc', doc.sentences[1], 1, (0, 0))
	assert mentions_compatible([hij])
	assert not mentions_compatible([hij, zij])
