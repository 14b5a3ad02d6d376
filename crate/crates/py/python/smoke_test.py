"""Smoke test for the orderpoly extension module.

Build and install first:  maturin develop -m crates/py/Cargo.toml
"""

import json

import orderpoly


def main():
    d2 = orderpoly.from_text("digraph\nvertex 2\n3 -> 1\n")
    assert isinstance(d2, orderpoly.Digraph)
    assert d2.vertices == [1, 2, 3]
    assert sorted(d2.linear_extensions()) == [[2, 3, 1], [3, 1, 2], [3, 2, 1]]
    assert d2.psi() == {0: 1, 2: 2}
    assert d2.defect() == [1]
    assert d2.witnesses() == [[1, 2, 3]]
    assert d2.omega() == orderpoly.Digraph([1, 2, 3], [(1, 3)]).omega()
    final = d2.gamma([2, 1, 3])[-1]
    assert final.arcs == [(3, 5)]

    wedge = orderpoly.Graph(3, [(1, 3)])
    holds, defect = wedge.identity()
    assert not holds and defect == {0: 1}
    assert wedge.relabeling() == [1, 3, 2]
    assert orderpoly.Graph(2, [(1, 2)]).chromatic() == {1: "-1", 2: "1"}

    report = json.loads(orderpoly.scan("graphs", 4, "identity-iff"))
    assert report["instances"] == 64 and report["failures"] == 0

    try:
        orderpoly.from_text("digraph\n1 -> 2\n2 -> 1\n")
    except ValueError:
        pass
    else:
        raise AssertionError("a cycle must be rejected")
    print("orderpoly smoke test: ok")


if __name__ == "__main__":
    main()
