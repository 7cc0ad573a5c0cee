"""
Regenerate the frozen reference constants used by the test suite.

Everything here runs in mpmath at 40 digits and shares no code with the
package, so the values act as an independent check.

    python3 tools/oracles.py
"""

from mpmath import findroot, mp, mpf, sqrt

mp.dps = 40


def w3_copy_residual(m):
    joint = (1 + 4 * sqrt(2) / 3) ** m
    pair = (mpf(7) / 3) ** m
    return (joint - 1) / 2 - (pair - 1)


def main():
    for m in (3, 4):
        print(f"W3 closed-form copy residual m={m}: {mp.nstr(w3_copy_residual(m), 20)}")
    print(f"W3 closed-form joint m=4: {mp.nstr(((1 + 4 * sqrt(2) / 3) ** 4 - 1) / 2, 20)}")
    print(f"W3 residual at power 3: {mp.nstr((2 * sqrt(2) / 3) ** 3 - 2 * (mpf(2) / 3) ** 3, 20)}")
    root = findroot(lambda g: mpf("0.9") ** g + mpf("0.3") ** g - 1, 1.5)
    print(f"root of 0.9^g + 0.3^g = 1: {mp.nstr(root, 20)}")
    print(f"W3 two-copy definitional value: {mp.nstr((1 + 2 * sqrt(2) / 3) ** 2 - 1, 20)}")
    print(f"W3 two-copy closed-form value: {mp.nstr(((1 + 4 * sqrt(2) / 3) ** 2 - 1) / 2, 20)}")
    print(f"W3 pair-reduction negativity: {mp.nstr((sqrt(5) - 1) / 3, 20)}")


if __name__ == "__main__":
    main()
