"""Smoke test for the Python bindings.

Build and install first:  cd crates/py && maturin build --release && pip install <wheel>
Then run:                 python python/smoke_test.py
"""

import homthresh as ht


def main():
    f3 = ht.andrasfai(3)
    assert (f3.order(), f3.size()) == (12, 18)
    assert ht.andrasfai(2).is_isomorphic(ht.named("cycle", 7))
    assert f3.is_maximal_free(3)
    assert ht.Graph.from_graph6(f3.graph6()) == f3

    c7 = ht.named("cycle", 7)
    assert c7.odd_girth() == 7 and c7.is_maximal_free()
    assert ht.fold(c7)["k"] == 2
    c9 = ht.named("cycle", 9)
    assert not c9.is_maximal_free()
    sat = c9.saturate()
    assert sat.is_maximal_free() and sat.size() > 9
    res = ht.fold(sat)
    assert ht.verify_hom(sat, ht.andrasfai(res["k"]), res["hom"])

    search = ht.find_hom(ht.named("cycle", 5), ht.named("complete", 2))
    assert search["status"] == "absent"
    assert ht.chromatic_number(ht.named("grotzsch")) == 4
    assert ht.is_core(ht.named("grotzsch"))

    lp = ht.optimize(ht.named("grotzsch"))
    assert lp["t"] == "10/29" and lp["certified"]

    b = ht.blow_up(f3, [2] * 12)
    assert b.order() == 24 and ht.fold(b)["k"] == 3

    assert len(ht.enumerate(4, n_min=4, connected=True)) == 6
    assert len(ht.enumerate(7, n_min=7, connected=True, odd_girth=7)) == 45

    v = ht.check("two-seven-cycles", ht.named("cycle", 7))
    assert v["holds"], v
    try:
        ht.check("nonsense", c7)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown statement accepted")

    report = ht.campaign("theorem_main", {"n_max": 8, "seed": 3})
    assert report["violations"] == [] and report["instances"] > 0
    print("smoke test ok:", ht.CAMPAIGNS)


if __name__ == "__main__":
    main()
