import contextlib
import random
from pathlib import Path

import pytest

from igbosim.analysis import DistanceMatrix

import reference_tables as ref

DATA = Path(__file__).parent / "data"

_ACCEPTANCE = pytest.StashKey[list]()

IGBO_WORDS = [
    "ụlọ", "akwụkwọ", "nne", "nna", "ụmụaka", "ọrụ", "ahịa", "mmiri", "ọkụ", "ụgbọala",
    "obodo", "egwu", "nri", "azụ", "anụ", "ego", "oge", "ihe", "mmadụ", "ala",
    "ọchịchị", "ndụ", "ụbọchị", "abalị", "ụtụtụ", "ezinụlọ", "nkuzi", "ọmụmụ", "asụsụ", "ṅụọ",
    "àkwụ\u0301kwọ\u0301", "ọ\u0301kụ\u0300",
]


@pytest.fixture(scope="session")
def fig3_path():
    return DATA / "fig3.txt"


@pytest.fixture(scope="session")
def fig3_text(fig3_path):
    return fig3_path.read_text(encoding="utf-8")


@pytest.fixture
def unigram_matrix():
    return DistanceMatrix("euclidean", 1, ref.ROW_IDS, ref.COL_IDS, ref.UNIGRAM_DISTANCES)


@pytest.fixture
def bigram_matrix():
    return DistanceMatrix("euclidean", 2, ref.ROW_IDS, ref.COL_IDS, ref.BIGRAM_DISTANCES)


def write_synthetic_corpus(directory: Path, count: int = 10, seed: int = 7) -> Path:
    """Write ``count`` small Igbo-like documents with shared compounds."""
    rng = random.Random(seed)
    directory.mkdir(parents=True, exist_ok=True)
    for i in range(count):
        words = []
        for _ in range(rng.randint(20, 40)):
            word = rng.choice(IGBO_WORDS)
            if rng.random() < 0.1:
                word = word.capitalize() + rng.choice([",", ".", "!"])
            if rng.random() < 0.05:
                word = "na-" + word
            words.append(word)
        (directory / f"doc{i:02d}.txt").write_text(" ".join(words) + "\n", encoding="utf-8")
    return directory


@pytest.fixture
def synthetic_corpus(tmp_path):
    return write_synthetic_corpus(tmp_path / "corpus")


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Context manager recording a labelled acceptance check as PASS/FAIL."""
    log = request.config.stash[_ACCEPTANCE]

    @contextlib.contextmanager
    def check(label):
        try:
            yield
        except BaseException:
            log.append((label, False))
            print(f"FAIL  {label}")
            raise
        log.append((label, True))
        print(f"PASS  {label}")

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in log:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
