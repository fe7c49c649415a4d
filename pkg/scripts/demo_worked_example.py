#!/usr/bin/env python3
"""Walk through the library on one four-element example, printing each object.

Covers the inducing image of an elementary symmetric polynomial, the matching
statistics table, a feasibility witness, the Lorentzian certificate, and the
induced polymatroid whose base points carry the image support.
"""

from lormatch import (
    SubsetSeq,
    apply_inducing,
    base_points,
    certify_lorentzian,
    elementary_symmetric,
    find_witness,
    induce_polymatroid,
    match_poly,
    stat_table,
    uniform_matroid,
)


def main() -> None:
    seq = SubsetSeq(4, (frozenset({1, 2, 3, 4}), frozenset({2, 3}), frozenset({3, 4})))
    print(f"sequence: m={seq.m}, sets={[sorted(s) for s in seq.sets]}")

    e2 = elementary_symmetric(4, 2)
    image = apply_inducing(seq, e2)
    print(f"\ninput   e_2 = {e2!r}")
    print(f"image       = {image!r}")
    print("normalized coefficients:")
    for exp in sorted(image.support(), reverse=True):
        print(f"  y^{exp}: {image.normalized_coeff(exp)}")

    print("\npair-matching counts:")
    for row in stat_table(seq, 2).to_json():
        print(f"  T={row['T']}: {row['count']}")

    alpha, beta = (0, 2, 2, 1), (2, 2, 1)
    witness = find_witness(seq, alpha, beta)
    print(f"\nwitness for alpha={alpha} <-> beta={beta}:")
    for edge, weight in sorted(witness.weights.items()):
        print(f"  edge {edge}: weight {weight}")

    f2 = match_poly(seq, 2)
    report = certify_lorentzian(f2)
    print(f"\nf_2 = {f2!r}")
    print(
        f"certificate: lorentzian={report.verdict},"
        f" derivatives checked={report.checked_derivatives}"
    )

    induced = induce_polymatroid(uniform_matroid(4, 2).underlying, seq)
    points = base_points(induced)
    print(f"\ninduced rank table: {induced.rank}")
    print(f"base points:        {sorted(points, reverse=True)}")
    print(f"image support:      {sorted(image.support(), reverse=True)}")
    assert points == image.support()
    print("base points coincide with the image support")


if __name__ == "__main__":
    main()
