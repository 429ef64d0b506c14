import shutil

import pytest

from isosing import paperdata
from isosing.paperdata import CorpusError, corpus_checksum, load_corpus

# sha256 over the packaged corpus files; changes to the data must be deliberate
CORPUS_SHA256 = "737d8de22d14bf47682376facb501508fec25d99e02ef6e644667a39b84823c3"


def test_corpus_checksum_is_pinned():
    assert corpus_checksum() == CORPUS_SHA256


def test_corpus_shape(corpus):
    assert len(corpus.generators) == 12
    assert len(corpus.g5_relations) == 35
    assert len(corpus.yogh_relations) == 35
    assert set(paperdata.YOGH_NAMES) <= set(corpus.Y.names)


def test_generators_are_real_and_bihomogeneous(corpus):
    for name, p in corpus.generators.items():
        assert p.is_real(), name
        assert p.bidegree() is not None, name


@pytest.mark.parametrize(
    "verifier",
    [
        paperdata.verify_invariant_generators,
        paperdata.verify_relations_G5,
        paperdata.verify_relations_yogh,
        paperdata.verify_singular_locus_factorizations,
        paperdata.verify_symmetries,
        paperdata.verify_yogh_dimension,
        paperdata.verify_hilbert_yogh,
    ],
)
def test_verifiers_pass(verifier, corpus):
    rep = verifier(corpus)
    assert rep.ok, [i for i in rep.items if not i.ok]


def test_molien_g5():
    rep = paperdata.verify_molien_g5()
    assert rep.ok


def test_yogh_dimension_is_four(corpus):
    assert paperdata.verify_yogh_dimension(corpus).data["dimension"] == 4


def test_regular_sequence_with_control(corpus):
    rep = paperdata.verify_regular_sequence(corpus)
    assert rep.ok
    assert any("not regular" in i.label for i in rep.items)


def test_wrong_bidegree_is_rejected(tmp_path):
    root = tmp_path / "corpus"
    shutil.copytree(paperdata.CORPUS_DIR, root)
    path = root / "g5_generators.txt"
    text = path.read_text()
    assert "h @ 1,1 = F11" in text
    path.write_text(text.replace("h @ 1,1 = F11", "h @ 2,0 = F11"))
    with pytest.raises(CorpusError, match="bidegree"):
        load_corpus(root)


def test_garbled_line_is_rejected(tmp_path):
    root = tmp_path / "corpus"
    shutil.copytree(paperdata.CORPUS_DIR, root)
    path = root / "g5_generators.txt"
    path.write_text(path.read_text() + "\nthis is not an entry\n")
    with pytest.raises(CorpusError):
        load_corpus(root)


def test_symmetry_maps_form_a_group(corpus):
    tau = paperdata.derive_tau_yogh(corpus)
    group = paperdata.generate_map_group([tau])
    assert len(group) >= 2
