"""Pure-Python bitset branch-and-bound kernel for maximum independent set.

Fallback for the compiled extension in `_mis_core`; same contract.  Vertices
are bit positions; `masks[v]` is the neighbor bitmask of v.  Returns the
bitmask of one maximum independent set.
"""


def solve_masks(masks):
    n = len(masks)
    if n == 0:
        return 0
    best = {"mask": 0, "size": 0}

    def search(avail, cur_mask, cur_size):
        while avail:
            if cur_size + avail.bit_count() <= best["size"]:
                return
            # take any vertex of residual degree <= 1 outright; otherwise
            # branch on a maximum-residual-degree vertex
            pivot = -1
            pivot_deg = -1
            low = -1
            m = avail
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                d = (masks[v] & avail).bit_count()
                if d <= 1:
                    low = v
                    break
                if d > pivot_deg:
                    pivot_deg = d
                    pivot = v
            if low >= 0:
                cur_mask |= 1 << low
                cur_size += 1
                avail &= ~(masks[low] | (1 << low))
                continue
            search(avail & ~(1 << pivot), cur_mask, cur_size)
            cur_mask |= 1 << pivot
            cur_size += 1
            avail &= ~(masks[pivot] | (1 << pivot))
        if cur_size > best["size"]:
            best["size"] = cur_size
            best["mask"] = cur_mask

    search((1 << n) - 1, 0, 0)
    return best["mask"]
