"""Compiled in-place kernels over dense density matrices.

Every kernel works on a C-contiguous complex128 matrix of shape
(2^k, 2^k). Qubits are addressed by bit masks: the qubit at local index q
of a k-qubit factor owns bit (1 << (k - 1 - q)) of the basis index
(MSB-first, matching the package-wide convention).

The gate kernels fuse the full per-gate noise schedule into a single pass:
the targets' pending idle noise (amplitude damping `g` plus pure-dephasing
coherence factor `s`) is applied before the gate and the depolarizing kick
`p` on the manipulated qubit after it. Passing g=0, s=1, p=0 makes those
steps exact no-ops, so the same kernels serve the noiseless path.

Kernels that produce a new matrix write into a caller-supplied buffer;
repeated cycles then run allocation-free (fresh 10-qubit-plus buffers cost
more in page faults than the arithmetic does).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _expand(i, mask):
    """Spread a reduced index over the gap left by one mask bit (bit = 0)."""
    low = i & (mask - 1)
    return ((i - low) << 1) | low


@njit(cache=True)
def apply_u1(rho, m, g, s, p, u00, u01, u10, u11):
    """Idle noise (g, s), then rho <- U rho U^dag, then depolarization p."""
    dim = rho.shape[0]
    half = dim // 2
    coh = s * np.sqrt(1.0 - g)
    dk = 1.0 - 2.0 * p / 3.0
    dm = 2.0 * p / 3.0
    doff = 1.0 - 4.0 * p / 3.0
    c00 = np.conj(u00)
    c01 = np.conj(u01)
    c10 = np.conj(u10)
    c11 = np.conj(u11)
    for ih in range(half):
        i0 = _expand(ih, m)
        i1 = i0 | m
        for jh in range(half):
            j0 = _expand(jh, m)
            j1 = j0 | m
            a = rho[i0, j0]
            b = rho[i0, j1]
            c = rho[i1, j0]
            d = rho[i1, j1]
            a = a + g * d
            d = (1.0 - g) * d
            b = coh * b
            c = coh * c
            ra = u00 * a + u01 * c
            rb = u00 * b + u01 * d
            rc = u10 * a + u11 * c
            rd = u10 * b + u11 * d
            a = ra * c00 + rb * c01
            b = ra * c10 + rb * c11
            c = rc * c00 + rd * c01
            d = rc * c10 + rd * c11
            rho[i0, j0] = dk * a + dm * d
            rho[i0, j1] = doff * b
            rho[i1, j0] = doff * c
            rho[i1, j1] = dm * a + dk * d
    return rho


@njit(cache=True)
def apply_cnot(rho, cm, tm, gc, sc, gt, st, p):
    """Idle noise on control/target, CNOT, then depolarization p on the
    target (control mask cm, target mask tm)."""
    dim = rho.shape[0]
    quar = dim // 4
    mlo = min(cm, tm)  # expansion must open the low-bit gap first
    mhi = max(cm, tm)
    cohc = sc * np.sqrt(1.0 - gc)
    coht = st * np.sqrt(1.0 - gt)
    dk = 1.0 - 2.0 * p / 3.0
    dm = 2.0 * p / 3.0
    doff = 1.0 - 4.0 * p / 3.0
    for ig in range(quar):
        i0 = _expand(_expand(ig, mlo), mhi)
        r0 = i0
        r1 = i0 | tm
        r2 = i0 | cm
        r3 = i0 | cm | tm
        for jg in range(quar):
            j0 = _expand(_expand(jg, mlo), mhi)
            c0 = j0
            c1 = j0 | tm
            c2 = j0 | cm
            c3 = j0 | cm | tm
            b00 = rho[r0, c0]; b01 = rho[r0, c1]; b02 = rho[r0, c2]; b03 = rho[r0, c3]
            b10 = rho[r1, c0]; b11 = rho[r1, c1]; b12 = rho[r1, c2]; b13 = rho[r1, c3]
            b20 = rho[r2, c0]; b21 = rho[r2, c1]; b22 = rho[r2, c2]; b23 = rho[r2, c3]
            b30 = rho[r3, c0]; b31 = rho[r3, c1]; b32 = rho[r3, c2]; b33 = rho[r3, c3]
            # damping on the control qubit: (ket, bra) bits are (row>=2, col>=2)
            b00 = b00 + gc * b22; b01 = b01 + gc * b23
            b10 = b10 + gc * b32; b11 = b11 + gc * b33
            b22 = (1.0 - gc) * b22; b23 = (1.0 - gc) * b23
            b32 = (1.0 - gc) * b32; b33 = (1.0 - gc) * b33
            b02 = cohc * b02; b03 = cohc * b03; b12 = cohc * b12; b13 = cohc * b13
            b20 = cohc * b20; b21 = cohc * b21; b30 = cohc * b30; b31 = cohc * b31
            # damping on the target qubit: (ket, bra) bits are (row odd, col odd)
            b00 = b00 + gt * b11; b02 = b02 + gt * b13
            b20 = b20 + gt * b31; b22 = b22 + gt * b33
            b11 = (1.0 - gt) * b11; b13 = (1.0 - gt) * b13
            b31 = (1.0 - gt) * b31; b33 = (1.0 - gt) * b33
            b01 = coht * b01; b03 = coht * b03; b21 = coht * b21; b23 = coht * b23
            b10 = coht * b10; b12 = coht * b12; b30 = coht * b30; b32 = coht * b32
            # CNOT permutes (c,t): 10 <-> 11, i.e. indices 2 <-> 3
            n00 = b00; n01 = b01; n03 = b02; n02 = b03
            n10 = b10; n11 = b11; n13 = b12; n12 = b13
            n30 = b20; n31 = b21; n33 = b22; n32 = b23
            n20 = b30; n21 = b31; n23 = b32; n22 = b33
            # depolarization on the target: mix its diagonal pairs
            rho[r0, c0] = dk * n00 + dm * n11
            rho[r1, c1] = dm * n00 + dk * n11
            rho[r2, c2] = dk * n22 + dm * n33
            rho[r3, c3] = dm * n22 + dk * n33
            rho[r0, c2] = dk * n02 + dm * n13
            rho[r1, c3] = dm * n02 + dk * n13
            rho[r2, c0] = dk * n20 + dm * n31
            rho[r3, c1] = dm * n20 + dk * n31
            rho[r0, c1] = doff * n01
            rho[r1, c0] = doff * n10
            rho[r0, c3] = doff * n03
            rho[r1, c2] = doff * n12
            rho[r2, c1] = doff * n21
            rho[r3, c0] = doff * n30
            rho[r2, c3] = doff * n23
            rho[r3, c2] = doff * n32
    return rho


@njit(cache=True)
def apply_cz(rho, cm, tm, gc, sc, gt, st, p):
    """Idle noise on both qubits, CZ, then depolarization p on the target."""
    dim = rho.shape[0]
    quar = dim // 4
    mlo = min(cm, tm)  # expansion must open the low-bit gap first
    mhi = max(cm, tm)
    cohc = sc * np.sqrt(1.0 - gc)
    coht = st * np.sqrt(1.0 - gt)
    dk = 1.0 - 2.0 * p / 3.0
    dm = 2.0 * p / 3.0
    doff = 1.0 - 4.0 * p / 3.0
    for ig in range(quar):
        i0 = _expand(_expand(ig, mlo), mhi)
        r0 = i0
        r1 = i0 | tm
        r2 = i0 | cm
        r3 = i0 | cm | tm
        for jg in range(quar):
            j0 = _expand(_expand(jg, mlo), mhi)
            c0 = j0
            c1 = j0 | tm
            c2 = j0 | cm
            c3 = j0 | cm | tm
            b00 = rho[r0, c0]; b01 = rho[r0, c1]; b02 = rho[r0, c2]; b03 = rho[r0, c3]
            b10 = rho[r1, c0]; b11 = rho[r1, c1]; b12 = rho[r1, c2]; b13 = rho[r1, c3]
            b20 = rho[r2, c0]; b21 = rho[r2, c1]; b22 = rho[r2, c2]; b23 = rho[r2, c3]
            b30 = rho[r3, c0]; b31 = rho[r3, c1]; b32 = rho[r3, c2]; b33 = rho[r3, c3]
            b00 = b00 + gc * b22; b01 = b01 + gc * b23
            b10 = b10 + gc * b32; b11 = b11 + gc * b33
            b22 = (1.0 - gc) * b22; b23 = (1.0 - gc) * b23
            b32 = (1.0 - gc) * b32; b33 = (1.0 - gc) * b33
            b02 = cohc * b02; b03 = cohc * b03; b12 = cohc * b12; b13 = cohc * b13
            b20 = cohc * b20; b21 = cohc * b21; b30 = cohc * b30; b31 = cohc * b31
            b00 = b00 + gt * b11; b02 = b02 + gt * b13
            b20 = b20 + gt * b31; b22 = b22 + gt * b33
            b11 = (1.0 - gt) * b11; b13 = (1.0 - gt) * b13
            b31 = (1.0 - gt) * b31; b33 = (1.0 - gt) * b33
            b01 = coht * b01; b03 = coht * b03; b21 = coht * b21; b23 = coht * b23
            b10 = coht * b10; b12 = coht * b12; b30 = coht * b30; b32 = coht * b32
            # CZ: sign flip wherever exactly one side sits in |11> (index 3)
            b03 = -b03; b13 = -b13; b23 = -b23
            b30 = -b30; b31 = -b31; b32 = -b32
            rho[r0, c0] = dk * b00 + dm * b11
            rho[r1, c1] = dm * b00 + dk * b11
            rho[r2, c2] = dk * b22 + dm * b33
            rho[r3, c3] = dm * b22 + dk * b33
            rho[r0, c2] = dk * b02 + dm * b13
            rho[r1, c3] = dm * b02 + dk * b13
            rho[r2, c0] = dk * b20 + dm * b31
            rho[r3, c1] = dm * b20 + dk * b31
            rho[r0, c1] = doff * b01
            rho[r1, c0] = doff * b10
            rho[r0, c3] = doff * b03
            rho[r1, c2] = doff * b12
            rho[r2, c1] = doff * b21
            rho[r3, c0] = doff * b30
            rho[r2, c3] = doff * b23
            rho[r3, c2] = doff * b32
    return rho


@njit(cache=True)
def apply_damping(rho, m, g, s):
    """Standalone idle-noise flush: amplitude damping g + dephasing factor s."""
    dim = rho.shape[0]
    half = dim // 2
    coh = s * np.sqrt(1.0 - g)
    for ih in range(half):
        i0 = _expand(ih, m)
        i1 = i0 | m
        for jh in range(half):
            j0 = _expand(jh, m)
            j1 = j0 | m
            rho[i0, j0] = rho[i0, j0] + g * rho[i1, j1]
            rho[i1, j1] = (1.0 - g) * rho[i1, j1]
            rho[i0, j1] = coh * rho[i0, j1]
            rho[i1, j0] = coh * rho[i1, j0]


@njit(cache=True)
def apply_depol(rho, m, p):
    """Depolarizing kick: (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)."""
    dim = rho.shape[0]
    half = dim // 2
    dk = 1.0 - 2.0 * p / 3.0
    dm = 2.0 * p / 3.0
    doff = 1.0 - 4.0 * p / 3.0
    for ih in range(half):
        i0 = _expand(ih, m)
        i1 = i0 | m
        for jh in range(half):
            j0 = _expand(jh, m)
            j1 = j0 | m
            a = rho[i0, j0]
            d = rho[i1, j1]
            rho[i0, j0] = dk * a + dm * d
            rho[i1, j1] = dm * a + dk * d
            rho[i0, j1] = doff * rho[i0, j1]
            rho[i1, j0] = doff * rho[i1, j0]


@njit(cache=True)
def apply_bitflip(rho, m, p):
    """Bit-flip channel (1-p) rho + p X rho X, used for SPAM errors."""
    dim = rho.shape[0]
    half = dim // 2
    q = 1.0 - p
    for ih in range(half):
        i0 = _expand(ih, m)
        i1 = i0 | m
        for jh in range(half):
            j0 = _expand(jh, m)
            j1 = j0 | m
            a = rho[i0, j0]
            b = rho[i0, j1]
            c = rho[i1, j0]
            d = rho[i1, j1]
            rho[i0, j0] = q * a + p * d
            rho[i1, j1] = q * d + p * a
            rho[i0, j1] = q * b + p * c
            rho[i1, j0] = q * c + p * b


@njit(cache=True)
def diag_probs(rho, m):
    """(p0, p1): diagonal weight with the mask bit clear/set."""
    dim = rho.shape[0]
    p0 = 0.0
    p1 = 0.0
    for i in range(dim):
        if i & m:
            p1 += rho[i, i].real
        else:
            p0 += rho[i, i].real
    return p0, p1


@njit(cache=True)
def extract_block(rho, m, bit, scale, out):
    """The (bit, bit) block of one qubit, scaled; the post-measurement state
    of the remaining qubits."""
    half = rho.shape[0] // 2
    off = m if bit else 0
    for ih in range(half):
        i = _expand(ih, m) | off
        for jh in range(half):
            j = _expand(jh, m) | off
            out[ih, jh] = scale * rho[i, j]
    return out


@njit(cache=True)
def ptrace_qubit(rho, m, out):
    """Partial trace over one qubit: sum of its two diagonal blocks."""
    half = rho.shape[0] // 2
    for ih in range(half):
        i0 = _expand(ih, m)
        i1 = i0 | m
        for jh in range(half):
            j0 = _expand(jh, m)
            j1 = j0 | m
            out[ih, jh] = rho[i0, j0] + rho[i1, j1]
    return out


@njit(cache=True)
def kron_join(a, b, out):
    """Kronecker product into a preallocated buffer; the factor merge."""
    da = a.shape[0]
    db = b.shape[0]
    for ia in range(da):
        for ib in range(db):
            i = ia * db + ib
            for ja in range(da):
                av = a[ia, ja]
                base = ja * db
                for jb in range(db):
                    out[i, base + jb] = av * b[ib, jb]
    return out


@njit(cache=True)
def diag_real(rho):
    dim = rho.shape[0]
    out = np.empty(dim, dtype=np.float64)
    for i in range(dim):
        out[i] = rho[i, i].real
    return out


@njit(cache=True)
def probe_sample(rho, masks, gs, ps, r):
    """Sample a basis index from the diagonal after applying, per listed
    qubit, the damping population transfer g and the measurement bit-flip p.

    The register itself is untouched; this is the classical shadow of
    flushing, SPAM-flipping, and measuring, and it reproduces that path's
    arithmetic term for term.
    """
    dim = rho.shape[0]
    d = np.empty(dim, dtype=np.float64)
    for i in range(dim):
        d[i] = rho[i, i].real
    half = dim // 2
    for t in range(len(masks)):
        m = masks[t]
        g = gs[t]
        p = ps[t]
        if g == 0.0 and p == 0.0:
            continue
        for ih in range(half):
            i0 = _expand(ih, m)
            i1 = i0 | m
            a = d[i0]
            b = d[i1]
            if g != 0.0:
                a = a + g * b
                b = (1.0 - g) * b
            if p != 0.0:
                na = (1.0 - p) * a + p * b
                b = (1.0 - p) * b + p * a
                a = na
            d[i0] = a
            d[i1] = b
    total = 0.0
    for i in range(dim):
        total += d[i]
    want = r * total
    acc = 0.0
    for i in range(dim):
        acc += d[i]
        if want < acc:
            return i
    return dim - 1
