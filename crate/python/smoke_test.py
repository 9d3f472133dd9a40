"""Smoke test for the ggrid Python module.

Build first:  cd crates/py && maturin develop --release
"""

import math

import ggrid


def main():
    inst = ggrid.Instance([(0.5, 0.5), (1.5, 0.5), (2.5, 0.5), (2.9, 0.1)])
    assert (inst.n, inst.k) == (4, 3)
    assert inst.cells == [(0, 0), (1, 0), (2, 0)]
    assert ggrid.Instance.from_text(inst.to_text()).points == inst.points

    tree = ggrid.solve_ggmst(inst)
    assert math.isclose(tree.weight, 2.0)
    assert tree.provenance == "exact-enumeration"
    assert len(tree.edges) == 2

    for variant in ("double-tree", "christofides"):
        tour = ggrid.solve_ggtsp(inst, variant=variant)
        assert math.isclose(tour.weight, 4.0), (variant, tour)
    assert math.isclose(ggrid.exact_ggtsp(inst).weight, 4.0)

    gen = ggrid.generate(mode="clustered", rows=5, cols=5, cells=9, ppc=(1, 3), seed=7)
    assert gen.k == 9
    approx = ggrid.approximate_ggmst(gen)
    opt = ggrid.exact_ggmst(gen)
    assert opt.weight <= approx.weight + 1e-9
    assert approx.weight <= opt.weight + math.sqrt(2) * (gen.k - 1) - math.sqrt(2) + 1e-9

    rows = ggrid.audit(gen, lemmas=[4, 7, 8])
    assert all(passed for _, passed, _, _ in rows), rows

    svg = ggrid.render_svg(gen, tree=approx)
    assert svg.startswith("<svg") and svg.count("<line") == gen.k - 1

    try:
        ggrid.Instance([(float("nan"), 0.0)])
    except ValueError:
        pass
    else:
        raise AssertionError("NaN accepted")

    print("python smoke test ok:", inst, tree, gen)


if __name__ == "__main__":
    main()
