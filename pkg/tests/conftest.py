import pytest

from scriptforge.config import load_config
from scriptforge.service.context import ServiceContext

EP1 = """INT. STUDY - NIGHT

Maya enters the study and lights a lamp.

MAYA
Where did you put the ledger?

JONAS
It is locked in the desk drawer.

Maya crosses to the desk and pulls the drawer open.

EXT. COURTYARD - DAY

Jonas paces beside the fountain.

JONAS
We cannot keep this from her forever.

MAYA
Then we tell her tonight.

CUT TO:
"""

EP2 = """INT. KITCHEN - MORNING

Steam rises from a battered kettle.

IRENE
You were out past curfew again.

MAYA
The archive does not close itself.

EXT. MARKET - DAY

Stalls crowd the narrow lane.

IRENE
Two apples and not a coin more.

VENDOR
For you, three.

INT. STUDY - NIGHT

The lamp gutters as Maya reads.

MAYA
This entry was altered.

JONAS
Then someone else has the key.
"""

SERIES_B_EP1 = """SCENE: THE OLD PIER

Waves slap the rotted pilings.

CAPTAIN RUIZ
The manifest lists four crates. I count three.

DOCKHAND
One went ashore at dawn.

INT. HARBOR OFFICE - DAY

Charts cover every surface.

CAPTAIN RUIZ
Pull the customs log.

CLERK
It was signed out yesterday.

EXT. BREAKWATER - DUSK

Gulls wheel over the spray.

DOCKHAND
Storm is coming in early.

CAPTAIN RUIZ
Then we search tonight.
"""


def write_corpus(root):
    """Two-series fixture corpus: 2 + 3 + 3 + 2 = 10 scenes."""
    alpha = root / "alpha"
    beta = root / "beta"
    alpha.mkdir(parents=True)
    beta.mkdir(parents=True)
    (alpha / "1.txt").write_text(EP1, encoding="utf-8")
    (alpha / "2.txt").write_text(EP2, encoding="utf-8")
    (beta / "1.txt").write_text(SERIES_B_EP1, encoding="utf-8")
    (beta / "2.txt").write_text(
        """INT. GALLEY - NIGHT

A single candle burns low.

COOK
Eat while it is hot.

CAPTAIN RUIZ
I have no appetite tonight.

EXT. DECK - NIGHT

Rain needles the boards.

CAPTAIN RUIZ
Wake the crew.

DOCKHAND
All hands, then.
""",
        encoding="utf-8",
    )
    return root


@pytest.fixture
def corpus_dir(tmp_path):
    return write_corpus(tmp_path / "corpus")


@pytest.fixture
def mock_context(tmp_path):
    ctx = ServiceContext(load_config(None), data_dir=str(tmp_path / "data"), mock=True)
    yield ctx
    ctx.close()


def make_brief():
    from scriptforge.synthesis import CharacterProfile, StructuredInput

    return StructuredInput(
        outline="Maya confronts Jonas about the altered ledger entry in the study.",
        previous_context="series opening",
        character_profiles=[
            CharacterProfile(
                name="Maya",
                background="an archivist",
                personality="sharp and persistent",
                relationships="sister of Jonas",
            ),
            CharacterProfile(
                name="Jonas",
                background="a clerk",
                personality="anxious",
                relationships="brother of Maya",
            ),
        ],
        metadata=["Focus on what Maya wants in this scene."],
    )
