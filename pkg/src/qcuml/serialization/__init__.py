from .plantuml import write_plantuml
from .xmi import PROFILE_NS, load_xmi, read_xmi, write_xmi

__all__ = ["PROFILE_NS", "load_xmi", "read_xmi", "write_plantuml", "write_xmi"]
