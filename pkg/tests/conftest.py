import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dmod_hodge import ArtifactCache, gpv, parse_poly


CORPUS = {
    "smooth": ("x", ("x", "y")),
    "node": ("x*y", ("x", "y")),
    "cusp": ("x^2+y^3", ("x", "y")),
    "twolines": ("x^2+y^2", ("x", "y")),
    "f1": ("x^5+y^5+x^2*y^2", ("x", "y")),
    "f2": ("y^4+x^3*y^2-2*x^6", ("x", "y")),
    "f3": ("x^3+y^3+z^3+x*y*z", ("x", "y", "z")),
}


def corpus_poly(name):
    src, vars = CORPUS[name]
    return parse_poly(src, vars)


@pytest.fixture(scope="session")
def heavy_cache(tmp_path_factory):
    return ArtifactCache(tmp_path_factory.mktemp("heavy"))


@pytest.fixture(scope="session")
def filtrations(heavy_cache):
    """Shared gpv results, computed once per session.

    The acceptance tests run first (file order) and pay the cold cost
    with their own timers; later files reuse the same store and the
    same on-disk cache.
    """
    store = {}

    def get(name, p, **kw):
        key = (name, p, tuple(sorted(kw.items())))
        if key not in store:
            store[key] = gpv(corpus_poly(name), p, cache=heavy_cache, **kw)
        return store[key]

    return get
