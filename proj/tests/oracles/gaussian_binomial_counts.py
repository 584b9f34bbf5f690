"""Subspace counts of GF(q)^n via Gaussian binomial sums.

Independent of the C++ enumeration; the printed values are frozen into the
lattice tests and the acceptance suite.
"""


def gaussian_binomial(n, k, q):
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n, q):
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


if __name__ == "__main__":
    for n, q in [(2, 2), (3, 2), (3, 3), (4, 2)]:
        per_rank = [gaussian_binomial(n, k, q) for k in range(n + 1)]
        print(f"n={n} q={q} total={subspace_count(n, q)} per_rank={per_rank}")
