"""Torus purity oracle: the qubit purity after exp(-(i/2) sum c_k s_k x s_k)
acting on (maximally mixed) x (ancilla state), via explicit kron/expm/partial
trace; checks the closed quadratic form and the unital special case.
"""
import numpy as np
from scipy.linalg import expm

S = [np.eye(2, dtype=complex),
     np.array([[0, 1], [1, 0]], dtype=complex),
     np.array([[0, -1j], [1j, 0]], dtype=complex),
     np.array([[1, 0], [0, -1]], dtype=complex)]


def purity_after(c, anc):
    h = sum(0.5 * ck * np.kron(S[k + 1], S[k + 1]) for k, ck in enumerate(c))
    u = expm(1j * h)  # gate convention: positive phase on the torus generators
    rho = np.kron(0.5 * S[0], anc)
    rho = u @ rho @ u.conj().T
    rs = np.trace(rho.reshape(2, 2, 2, 2), axis1=1, axis2=3)
    return np.trace(rs @ rs).real, rs


def quadratic_form(c, pg, pe, gam):
    s = np.sin(c) ** 2
    alpha = pg * pg + pe * pe - 0.5
    beta = 2 * gam.real ** 2
    delta = 2 * gam.imag ** 2
    return 0.5 + alpha * s[0] * s[1] + beta * s[1] * s[2] + delta * s[0] * s[2]


def main():
    rng = np.random.default_rng(21)
    worst = 0.0
    for _ in range(200):
        pe = rng.uniform(0, 0.5)
        pg = 1 - pe
        gmax = np.sqrt(pg * pe)
        g = rng.uniform(0, gmax) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        anc = np.array([[pe, g], [np.conj(g), pg]])
        c = rng.uniform(0, np.pi / 2, 3)
        p1, _ = purity_after(c, anc)
        p2 = quadratic_form(c, pg, pe, g)
        worst = max(worst, abs(p1 - p2))
    print("closed form worst dev %.3e" % worst)

    # Thermal ancilla, full swap point.
    pg = 1 / (1 + np.exp(-3.0))
    anc = np.diag([1 - pg, pg]).astype(complex)
    p, rs = purity_after([np.pi / 2] * 3, anc)
    print("apex purity %.10f" % p)
    print("ancilla (Gibbs) purity %.10f" % (pg * pg + (1 - pg) ** 2))

    # One-axis torus elements act unitally on the qubit.
    worst = 0.0
    for k in range(3):
        for _ in range(50):
            pe = rng.uniform(0, 0.5)
            g = rng.uniform(0, np.sqrt(pe * (1 - pe)))
            anc = np.array([[pe, g], [g, 1 - pe]])
            c = np.zeros(3)
            c[k] = rng.uniform(0, np.pi / 2)
            _, rs = purity_after(c, anc * 0 + anc)
            # unital: the image of the maximally mixed input stays maximally mixed
            worst = max(worst, abs(rs - 0.5 * S[0]).max())
    print("single-axis unitality dev %.3e" % worst)


if __name__ == "__main__":
    main()
