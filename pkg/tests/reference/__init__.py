"""
published ten digit minimizers and minima and brute force helpers the fast implementations are checked against
"""
import typing
from fractions import Fraction
from itertools import combinations


# m, x_m, f_m(x_m) rounded to ten decimal places
minima_table = """
2 -0.5000000000 0.7500000000
4 -0.6058295862 0.6735532235
6 -0.6703320476 0.6350938940
8 -0.7145377272 0.6115666906
10 -0.7470540749 0.5955429324
12 -0.7721416355 0.5838576922
14 -0.7921778546 0.5749221276
16 -0.8086048979 0.5678463037
18 -0.8223534102 0.5620909079
20 -0.8340533676 0.5573090540
22 -0.8441478047 0.5532669587
24 -0.8529581644 0.5498010211
26 -0.8607238146 0.5467931483
28 -0.8676269763 0.5441558518
30 -0.8738090154 0.5418228660
32 -0.8793814184 0.5397430347
34 -0.8844333818 0.5378762052
36 -0.8890371830 0.5361903986
38 -0.8932520563 0.5346598151
40 -0.8971270425 0.5332633990
42 -0.9007031162 0.5319837878
44 -0.9040147981 0.5308065300
46 -0.9070913919 0.5297194951
48 -0.9099579456 0.5287124219
50 -0.9126360054 0.5277765690
52 -0.9151442141 0.5269044410
54 -0.9174987898 0.5260895727
56 -0.9197139122 0.5253263565
58 -0.9218020367 0.5246099035
60 -0.9237741513 0.5239359311
62 -0.9256399895 0.5233006711
64 -0.9274082062 0.5227007942
66 -0.9290865244 0.5221333471
68 -0.9306818591 0.5215957008
70 -0.9322004214 0.5210855067
72 -0.9336478067 0.5206006599
74 -0.9350290699 0.5201392683
76 -0.9363487901 0.5196996259
78 -0.9376111258 0.5192801905
80 -0.9388198625 0.5188795643
82 -0.9399784542 0.5184964771
84 -0.9410900592 0.5181297723
86 -0.9421575717 0.5177783938
88 -0.9431836485 0.5174413759
90 -0.9441707340 0.5171178332
92 -0.9451210804 0.5168069528
94 -0.9460367670 0.5165079864
96 -0.9469197164 0.5162202447
98 -0.9477717091 0.5159430910
100 -0.9485943966 0.5156759367
102 -0.9493893132 0.5154182363
104 -0.9501578860 0.5151694840
106 -0.9509014444 0.5149292100
108 -0.9516212282 0.5146969770
110 -0.9523183955 0.5144723780
112 -0.9529940289 0.5142550329
114 -0.9536491420 0.5140445872
116 -0.9542846846 0.5138407092
118 -0.9549015479 0.5136430885
120 -0.9555005690 0.5134514340
122 -0.9560825347 0.5132654729
124 -0.9566481855 0.5130849489
126 -0.9571982191 0.5129096209
128 -0.9577332933 0.5127392623
130 -0.9582540286 0.5125736594
132 -0.9587610115 0.5124126108
134 -0.9592547961 0.5122559267
136 -0.9597359069 0.5121034274
138 -0.9602048403 0.5119549436
140 -0.9606620669 0.5118103146
142 -0.9611080328 0.5116693885
144 -0.9615431615 0.5115320215
146 -0.9619678551 0.5113980772
148 -0.9623824957 0.5112674259
150 -0.9627874469 0.5111399447
"""

minima = {
    int(m) : (x_m, f_min) for m, x_m, f_min in (line.split() for line in minima_table.strip().splitlines())
} # type: typing.Dict[int, typing.Tuple[str, str]]

limit_row = ('inf', '-1.0000000000', '0.5000000000')


def set_partitions(elements : typing.Tuple[int, ...]) -> typing.Iterator[typing.List[typing.Tuple[int, ...]]]:
    """all partitions of ``elements`` into nonempty blocks"""
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for size in range(len(rest) + 1):
        for companions in combinations(rest, size):
            remaining = tuple(element for element in rest if element not in companions)
            for partition in set_partitions(remaining):
                yield [(first,) + companions] + partition


def brute_force_bell(n : int, k : int, x : typing.Sequence[Fraction]) -> Fraction:
    """partial Bell polynomial B_{n,k}(x_1, ...) as the sum over partitions of {1..n} into k blocks"""
    total = Fraction(0)
    for partition in set_partitions(tuple(range(1, n + 1))):
        if len(partition) == k:
            product = Fraction(1)
            for block in partition:
                product *= x[len(block) - 1]
            total += product
    return total


def brute_force_power(a : typing.Sequence[Fraction], p : int, k : int) -> Fraction:
    """coefficient of e^k in (sum_j a_j e^j)^p by expanding the product"""
    coefficients = [Fraction(1)]
    for _ in range(p):
        product = [Fraction(0)] * (k + 1)
        for i, left in enumerate(coefficients):
            for j, right in enumerate(a[:k + 1 - i]):
                product[i + j] += left * right
        coefficients = product
    return coefficients[k]
