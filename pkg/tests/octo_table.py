"""Hand-transcribed unit multiplication table (row * column), used as an oracle."""

import numpy as np

ROWS = """
t1 -1 t3 -t2 t5 -t4 -t7 t6
t2 -t3 -1 t1 t6 t7 -t4 -t5
t3 t2 -t1 -1 t7 -t6 t5 -t4
t4 -t5 -t6 -t7 -1 t1 t2 t3
t5 t4 -t7 t6 -t1 -1 -t3 t2
t6 t7 t4 -t5 -t2 t3 -1 -t1
t7 -t6 t5 t4 -t3 -t2 t1 -1
"""


def parse(entry: str) -> tuple[int, int]:
    sign = -1 if entry.startswith("-") else 1
    body = entry.lstrip("-")
    return sign, 0 if body == "1" else int(body[1:])


def table() -> tuple[np.ndarray, np.ndarray]:
    index = np.zeros((8, 8), dtype=int)
    sign = np.ones((8, 8), dtype=int)
    index[0, :] = np.arange(8)
    index[:, 0] = np.arange(8)
    for line in ROWS.strip().splitlines():
        cells = line.split()
        i = parse(cells[0])[1]
        for j, cell in enumerate(cells[1:], start=1):
            sign[i, j], index[i, j] = parse(cell)
    return index, sign
