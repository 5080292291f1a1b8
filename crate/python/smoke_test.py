"""Smoke test for the cluster_algebra extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import cluster_algebra as ca

A2 = [[0, 1], [-1, 0]]
B2 = [[0, 1], [-2, 0]]
G2 = [[0, 1], [-3, 0]]


def main():
    s = ca.Seed(A2).mutate(1)
    assert s.f == ["1 + y1", "1"], s.f
    assert s.c_vectors[0] == [-1, 0]
    assert s.cluster_variables[0] == "x1^-1*(x2 + y1)"
    assert s.mutate(1) == ca.Seed(A2)
    assert ca.Seed(A2).mutate_path([1, 2, 1, 2, 1]) == ca.Seed(A2).relabel([2, 1])
    assert ca.Seed(B2).mutate_path([1, 2] * 3) == ca.Seed(B2)
    assert s.verify()["passed"]
    assert ca.Seed.from_json(s.to_json()) == s

    g2 = ca.enumerate(G2)
    assert (g2["seed_count"], g2["variable_count"], g2["complete"]) == (8, 8, True)
    assert not ca.enumerate([[0, -2], [2, 0]], max_seeds=30)["complete"]

    assert [ca.classify(b) for b in (A2, B2, G2, [[0, 2], [-2, 0]])] == ["A2", "B2", "G2", "infinite"]
    assert ca.ExchangeMatrix(A2).mutate(1).rows == [[0, -1], [1, 0]]

    gca = ca.GcaSeed([[0, -1], [1, 0]], [2, 1], [["1", "z", "1"], ["1", "1"]])
    assert gca.mutate_path([1, 2] * 3) == gca
    assert gca.mutate(2).verify()["passed"]

    geo = ca.GeometricSeed([[0, 1], [-1, 0], [1, 0]])
    assert geo.mutate_path([1, 2] * 5) == geo
    assert geo.mutate(1).strong_laurent()

    assert ca.check_separation(A2, [1, 2, 1])["passed"]
    assert all(ca.replay_example(name)["passed"] for name in ca.examples())

    try:
        ca.Seed([[0, 1], [1, 0]])
    except ca.ClusterError:
        pass
    else:
        raise AssertionError("expected ClusterError")
    try:
        ca.Seed([[0, 3], [-3, 0]]).mutate_path([1, 2]).mutate(1, max_terms=2)
    except ca.BudgetError:
        pass
    else:
        raise AssertionError("expected BudgetError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
