import pytest

from phrasemap.corpus import build_corpus, load_profile

# One line per acceptance criterion, shown in the terminal summary so the
# pass/fail record survives pytest's output capture.
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def toy_corpus():
    return build_corpus({"the": 100, "data": 10, "magnetosphere": 1})


@pytest.fixture(scope="session")
def written_corpus():
    return load_profile("written")


@pytest.fixture
def oracle_corpus():
    # Richer toy table for randomized extraction checks: three clear
    # stopwords up top, a graded middle, and a near-singleton tail.
    return build_corpus(
        {
            "the": 1000,
            "of": 500,
            "and": 400,
            "data": 50,
            "model": 40,
            "ocean": 30,
            "polar": 20,
            "sensor": 10,
            "quantum": 5,
            "neural": 3,
            "vortex": 2,
            "magnetosphere": 1,
        }
    )
