"""Extended-precision reference computations, written independently of the
double-precision code paths they check."""

from __future__ import annotations

import mpmath as mp


def _phi_mp(ell, t):
    ell = mp.mpf(ell)
    return 2 / (ell + 2) * mp.mpf(t) ** ((ell + 2) / 2)


def alpha_beta_mp(ell, t, b, r, dps: int = 40):
    """``alpha`` and ``beta`` from direct powers at ``dps`` digits."""
    with mp.workdps(dps):
        ell = mp.mpf(ell)
        gamma = ell / (2 * (ell + 2))
        pt, pb, r = _phi_mp(ell, t), _phi_mp(ell, b), mp.mpf(r)
        den = (pt + pb) ** 2 - r ** 2
        return den ** (-gamma), ((pt - pb) ** 2 - r ** 2) / den


def kernel_mp(ell, t, b, r, dps: int = 40):
    with mp.workdps(dps):
        ell = mp.mpf(ell)
        gamma = ell / (2 * (ell + 2))
        c = ((ell + 2) / 4) ** (-ell / (ell + 2))
        alpha, beta = alpha_beta_mp(ell, t, b, r, dps)
        return c * alpha * mp.hyp2f1(gamma, gamma, 1, beta)


def alpha_beta_fd(ell, t, b, r, h: float = 1e-5, dps: int = 40,
                  richardson: bool = True) -> dict:
    """Central differences of ``alpha`` and ``beta`` in t and r, evaluated
    at ``dps`` digits so the step is limited only by truncation error.

    With ``richardson`` the steps ``h`` and ``h/2`` are combined to cancel
    the leading ``h^2`` error term.
    """
    if richardson:
        coarse = alpha_beta_fd(ell, t, b, r, h, dps, False)
        fine = alpha_beta_fd(ell, t, b, r, h / 2, dps, False)
        return {k: (4.0 * fine[k] - coarse[k]) / 3.0 for k in fine}
    with mp.workdps(dps):
        h = mp.mpf(h)
        t, b, r = mp.mpf(t), mp.mpf(b), mp.mpf(r)

        def ab(tt, rr):
            return alpha_beta_mp(ell, tt, b, rr, dps)

        a0, b0 = ab(t, r)
        atp, btp = ab(t + h, r)
        atm, btm = ab(t - h, r)
        arp, brp = ab(t, r + h)
        arm, brm = ab(t, r - h)
        out = {
            "alpha_t": (atp - atm) / (2 * h),
            "alpha_tt": (atp - 2 * a0 + atm) / h ** 2,
            "beta_t": (btp - btm) / (2 * h),
            "beta_tt": (btp - 2 * b0 + btm) / h ** 2,
            "alpha_r": (arp - arm) / (2 * h),
            "alpha_rr": (arp - 2 * a0 + arm) / h ** 2,
            "beta_r": (brp - brm) / (2 * h),
            "beta_rr": (brp - 2 * b0 + brm) / h ** 2,
        }
        return {k: float(v) for k, v in out.items()}
