import numpy as np

from turanlab import graph as gr


def random_mask(rng: np.random.Generator, nbits: int) -> int:
    """Uniform nbits-bit integer (nbits may exceed 63)."""
    nbytes = max(1, (nbits + 7) // 8)
    return int.from_bytes(rng.bytes(nbytes), "little") & ((1 << nbits) - 1)


def random_graph(rng: np.random.Generator, n_lo: int = 1, n_hi: int = 9) -> gr.Graph:
    n = int(rng.integers(n_lo, n_hi + 1))
    return gr.from_edge_mask(n, random_mask(rng, n * (n - 1) // 2))
