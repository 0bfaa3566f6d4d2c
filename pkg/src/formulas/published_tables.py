"""
内嵌的已发表数值表
只用于对照和 n = 10 这种无法在常规时间内重算的点；来源统一标记为 PUBLISHED_CONSTANT
"""

from typing import Dict, List

# q_7(i, j)，行 i = 1..7，列 j = 1..7
Q7_ALL: List[List[int]] = [
    [65536, 48729, 40953, 35328, 30208, 24583, 16807],
    [53248, 41243, 35627, 31502, 27662, 23287, 16807],
    [43008, 32728, 29869, 27406, 24924, 21866, 16807],
    [34496, 24660, 22967, 22788, 21866, 20256, 16807],
    [27440, 17712, 16055, 16608, 18138, 18312, 16807],
    [21609, 12096, 10125, 10240, 11875, 15552, 16807],
    [16807, 7776, 5625, 5120, 5625, 7776, 16807],
]

# 第 j 个车位幸运的停车函数个数，n = 1..10，j = 1..min(n, 6)
COLUMN_SUMS: Dict[int, List[int]] = {
    1: [1],
    2: [3, 2],
    3: [16, 11, 9],
    4: [125, 87, 74, 64],
    5: [1296, 908, 783, 708, 625],
    6: [16807, 11824, 10266, 9421, 8733, 7776],
    7: [262144, 184944, 161221, 148992, 140298, 131632],
    8: [4782969, 3381341, 2955366, 2742090, 2600879, 2480787],
    9: [100000000, 70805696, 61999923, 57671104, 54921875, 52779840],
    10: [2357947691, 1671605646, 1465709426, 1365730231, 1303885965, 1258181726],
}

# 第 n-1 列的列和，n = 2..10
SUBDIAGONAL: Dict[int, int] = {
    2: 3, 3: 11, 4: 74, 5: 708, 6: 8733, 7: 131632,
    8: 2342820, 9: 48068672, 10: 1116809255,
}

# q^d_7(i, j)：递减停车函数
Q7_DECREASING: List[List[int]] = [
    [1, 6, 20, 48, 90, 132, 132],
    [6, 25, 56, 84, 84, 42, 0],
    [20, 56, 81, 70, 28, 0, 0],
    [48, 84, 70, 25, 0, 0, 0],
    [90, 84, 28, 0, 0, 0, 0],
    [132, 42, 0, 0, 0, 0, 0],
    [132, 0, 0, 0, 0, 0, 0],
]

# rho_j 的六位小数
RHO_NUMERIC: Dict[int, str] = {
    1: "1.000000",
    2: "0.716166",
    3: "0.633475",
    4: "0.595237",
    5: "0.573497",
}


def column_sum_constant(n: int, j: int) -> int:
    """取内嵌的列和；表中没有时抛 KeyError"""
    if j == n - 1 and n in SUBDIAGONAL:
        return SUBDIAGONAL[n]
    row = COLUMN_SUMS[n]
    if not 1 <= j <= len(row):
        raise KeyError((n, j))
    return row[j - 1]
