"""Reference leading-order coefficients, transcribed as exact rationals.

Keys are ``(ensemble, k1, k2, n1, n2)``.
"""

from fractions import Fraction as F

SP_0K_03 = [F(-1, 2**3), F(23, 2**7 * 3 * 5 * 7), F(-1, 2**8 * 5**2 * 7 * 11), F(233, 2**18 * 3**4 * 5**3 * 7**2 * 11)]
SP_0K_04 = [
    F(1, 2 * 5),
    F(251, 2**4 * 3**2 * 5**2 * 7 * 11),
    F(89 * 13103, 2**9 * 3**5 * 5**3 * 7**2 * 11 * 13 * 17),
    F(1627 * 693731, 2**10 * 3**5 * 5**5 * 7**3 * 11**2 * 13**2 * 17 * 19 * 23),
]
SO_0K_03 = [F(1), F(3, 2**2 * 5), F(1, 2**4 * 3 * 7), F(1613, 2**9 * 3 * 5**2 * 7**2 * 11 * 13)]
SO_0K_04 = [
    F(1),
    F(71, 2 * 3**2 * 5 * 7),
    F(23 * 2657, 2 * 3**3 * 5**3 * 7**2 * 11 * 13),
    F(7159 * 316201, 2**6 * 3**5 * 5**4 * 7**3 * 11**2 * 13 * 17 * 19),
]

# b_{k1,k2}(n1, n2) for n1 = 0..n2
SP_LISTS = {
    (1, 1, 1): [F(-1, 48), F(1, 96)],
    (1, 1, 2): [F(1, 80), F(-1, 160), F(19, 5040)],
    (1, 1, 3): [F(-1, 120), F(1, 240), F(-17, 6720), F(23, 13440)],
    (1, 2, 1): [F(1, 11520), F(-1, 23040)],
    (1, 2, 2): [F(103, 3628800), F(-103, 7257600), F(487, 59875200)],
    (1, 2, 3): [F(1, 89600), F(-1, 179200), F(19, 5913600), F(-1, 492800)],
}
SO_LISTS = {
    (1, 1, 1): [F(1), F(1, 2)],
    (1, 1, 2): [F(2, 3), F(1, 3), F(7, 30)],
    (1, 1, 3): [F(1, 2), F(1, 4), F(11, 60), F(3, 20)],
    (1, 2, 1): [F(1, 12), F(1, 24)],
    (1, 2, 2): [F(19, 630), F(19, 1260), F(26, 2835)],
    (1, 2, 3): [F(23, 1680), F(23, 3360), F(43, 10080), F(1, 336)],
}


def reference_table() -> dict[tuple, F]:
    out = {}
    for ens, lists in (("sp", (SP_0K_03, SP_0K_04)), ("so", (SO_0K_03, SO_0K_04))):
        for n2, values in zip((3, 4), lists):
            for k, v in enumerate(values, start=1):
                out[(ens, 0, k, 0, n2)] = v
    for ens, lists in (("sp", SP_LISTS), ("so", SO_LISTS)):
        for (k1, k2, n2), values in lists.items():
            for n1, v in enumerate(values):
                out[(ens, k1, k2, n1, n2)] = v
    return out
