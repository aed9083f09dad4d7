import random

import pytest

ACCEPTANCE_FILE = "test_acceptance.py"
_acceptance: dict[str, tuple[str, str]] = {}

# Syllables for three synthetic languages in different scripts.
_ALPHABETS = {
    "english": "th he an er in re on at en nd st es or te of ed is it al ar ou".split(),
    "latin_accented": "ça é è ê à ù ô î ü ñ la le de que ción ão ões ß ø å ë ï œ mi tu".split(),
    "mixed_scripts": "мо ско ва да не ал λό γο ς κα ι 水 火 山 川 日 本 語 中 文 ж ш я ω".split(),
}


def _corpus(lang: str, size: int) -> bytes:
    rng = random.Random(lang)
    syll = _ALPHABETS[lang]
    vocab = ["".join(rng.choices(syll, k=rng.randint(1, 5))) for _ in range(20_000)]
    weights = [1 / (i + 1) for i in range(len(vocab))]
    seps = [" "] * 40 + ["\n", "\t", "  ", "\r\n", "\f", "\v"]
    parts, n = [], 0
    while n < size:
        words = rng.choices(vocab, weights, k=1000)
        # Occasional punctuation and capitals make near-duplicate words.
        words = [w.capitalize() + "," if rng.random() < 0.05 else w for w in words]
        chunk = "".join(w + rng.choice(seps) for w in words).encode()
        parts.append(chunk)
        n += len(chunk)
    return b"".join(parts)


@pytest.fixture(scope="session")
def corpora(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpora")
    paths = {}
    for lang in _ALPHABETS:
        p = d / f"{lang}.txt"
        p.write_bytes(_corpus(lang, 1_100_000))
        paths[lang] = p
    return paths


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.fspath.basename != ACCEPTANCE_FILE:
        return
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _acceptance[item.name] = (doc, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for doc, verdict in _acceptance.values():
        terminalreporter.write_line(f"{verdict}  {doc}")
