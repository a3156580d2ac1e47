"""Builtin example models, stored as canonical model text."""

from .errors import UnknownExampleError

# Each entry parses, validates, and exercises a distinct corner: nonzero
# characteristic classes with a killable top degree, a projective base with a
# relation, a lone odd sphere fiber, fully trivial differentials, and circle
# fibers over varying bases.
CATALOG: dict[str, str] = {
    # S1 x S3 fiber over a polynomial degree-2 class; x detects the class,
    # y carries its square and can be normalized away.
    "remark-s1s3": """\
base {
  truncate 5
  gen e:2
}
fiber {
  gen x:1
  gen y:3
  D x = e
  D y = e^2
}
""",
    # CP^3-like base with the top relation d z = a^4; fiber degrees 3 and 5
    # hit a^2 and a^3, and the degree-5 class dies against a * (degree-3).
    "cp3-su-type": """\
base {
  truncate 8
  gen a:2
  gen z:7
  d z = a^4
}
fiber {
  gen y3:3
  gen y5:5
  D y3 = a^2
  D y5 = a^3
}
""",
    # Quaternionic Hopf pattern: S7 total space as an S3 fiber over S4.
    "hopf-s7": """\
base {
  truncate 5
  gen u:4
}
fiber {
  gen y:3
  D y = u
}
""",
    # Product bundle with fiber degrees 1 and 3 over the S4 model.
    "trivial-s4-s1s3": """\
base {
  truncate 5
  gen u:4
}
fiber {
  gen x:1
  gen y:3
}
""",
    # A circle fiber detecting the base degree-2 class.
    "circle-any": """\
base {
  truncate 4
  gen a:2
}
fiber {
  gen v:1
  D v = a
}
""",
    # Product bundle with a single fiber degree.
    "trivial-s4-su2": """\
base {
  truncate 5
  gen u:4
}
fiber {
  gen y:3
}
""",
    # Product bundle with three fiber degrees 3 < 5 < 7; also the model used
    # for the nested-bracket construction with all differentials zero.
    "trivial-s4-s3s5s7": """\
base {
  truncate 9
  gen u:4
}
fiber {
  gen y3:3
  gen y5:5
  gen z7:7
}
""",
    # Product circle bundle.
    "circle-s4-trivial": """\
base {
  truncate 4
  gen u:4
}
fiber {
  gen v:1
}
""",
    # Circle fiber over the CP^3-like base, detecting its degree-2 class.
    "circle-cp3": """\
base {
  truncate 8
  gen a:2
  gen z:7
  d z = a^4
}
fiber {
  gen v:1
  D v = a
}
""",
}


def example_names() -> list[str]:
    return list(CATALOG)


def builtin_example(name: str) -> str:
    """Model text for a named builtin; unknown names list the catalog."""
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownExampleError(name, CATALOG) from None
