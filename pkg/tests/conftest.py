import sys
from pathlib import Path

import pytest

from cihash.harness import default_message

sys.path.insert(0, str(Path(__file__).parent))

LINE = b"The skies they were ashen and sober"


def message_variants(poem: bytes) -> dict[str, bytes]:
    """The original poem plus four single-edit variants."""
    last = poem.rindex(b".")
    assert LINE in poem
    return {
        "original": poem,
        "last point to comma": poem[:last] + b"," + poem[last + 1:],
        "The to the": poem.replace(LINE, b"t" + LINE[1:], 1),
        "The to Th": poem.replace(LINE, b"Th" + LINE[3:], 1),
        "trailing space": poem + b" ",
    }


@pytest.fixture(scope="session")
def poem() -> bytes:
    return default_message()


@pytest.fixture(scope="session")
def variants(poem) -> dict[str, bytes]:
    return message_variants(poem)
