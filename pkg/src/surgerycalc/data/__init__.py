"""Bundled example surgery diagrams.

* ``figure1.json``: a knot L with tb = -1 in the manifold obtained by a
  contact (+1)-surgery and a contact (-1)-surgery on two tb = -1
  unknots; in the surgered manifold L has tb = -3, which makes tight
  (+2)-surgery along it a counterexample to the conjecture that
  (+n)-surgery on a tb <= -2 knot is overtwisted for n < |tb|.
* ``s1xs2.json``: contact (+1)-surgery on the standard tb = -1
  Legendrian unknot (the tight S^1 x S^2) with an unsurgered push-off,
  the degenerate case whose dual invariants are undefined.
"""

from importlib import resources

from ..diagram import SurgeryDiagram, parse_diagram

__all__ = ["load", "path", "read_text"]


def path(name: str):
    """Traversable path of a bundled diagram file."""
    return resources.files(__name__).joinpath(name)


def read_text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def load(name: str) -> SurgeryDiagram:
    """Parse a bundled diagram by file name."""
    return parse_diagram(read_text(name))
