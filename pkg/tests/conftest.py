import pathlib

import pytest

from treesum import parse_tree_tsv

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def ontology():
    """13-node running example: two optimal 5-summaries, score 160."""
    return parse_tree_tsv(FIXTURES / "disease_ontology.tsv")


@pytest.fixture(scope="session")
def gap_tree():
    """7-node tree where greedy (64) is strictly below the optimum (81)."""
    return parse_tree_tsv(FIXTURES / "greedy_gap.tsv")


@pytest.fixture(scope="session")
def sparse_tree():
    """9-node tree, three weighted leaves; reduces to 5 nodes."""
    return parse_tree_tsv(FIXTURES / "sparse_weights.tsv")
