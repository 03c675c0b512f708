import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(state):
    """One splitmix64 step on Python ints: returns (next_state, output)."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def derive_seed(*words):
    """Hash a sequence of integers (negative ones wrap) into a 64-bit seed."""
    state = GOLDEN_GAMMA
    for word in words:
        _, state = splitmix64(state ^ (int(word) & MASK64))
    return state


def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


class Xoshiro256StarStar:
    """
    A family of independent xoshiro256** generators advanced in lockstep.
    Lane i is seeded by four splitmix64 outputs starting from
    derive_seed(seed, i); the output stream interleaves the lanes
    step-major, so it depends only on (seed, lanes).
    """

    def __init__(self, seed, lanes=1024):
        words = []
        for lane in range(lanes):
            state = derive_seed(seed, lane)
            lane_words = []
            for _ in range(4):
                state, output = splitmix64(state)
                lane_words.append(output)
            words.append(lane_words)
        self.state = np.array(words, dtype=np.uint64).T.copy()
        self.lanes = lanes
        self._buffer = np.empty(0, dtype=np.uint64)

    def _step(self):
        s0, s1, s2, s3 = self.state
        result = _rotl(s1 * np.uint64(5), 7) * np.uint64(9)
        t = s1 << np.uint64(17)
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self.state[3] = _rotl(s3, 45)
        return result

    def next_uint64(self, count):
        chunks = [self._buffer]
        available = len(self._buffer)
        while available < count:
            chunk = self._step()
            chunks.append(chunk)
            available += len(chunk)
        stream = np.concatenate(chunks)
        self._buffer = stream[count:]
        return stream[:count]

    def random(self, count):
        """Doubles in [0, 1) from the top 53 bits of each output."""
        return (self.next_uint64(count) >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)
