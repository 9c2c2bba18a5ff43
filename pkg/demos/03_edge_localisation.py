"""Edge localisation of an injected excitation as a function of g.

Flipping the leftmost qubit approximates the boundary scar when the
boundary state is edge-localized (|g| > 1). The site-resolved profile
shows the excitation staying pinned at g = 2 and melting at g = 2/3;
the closed-form imbalance and localisation length quantify the same
crossover.
"""

import numpy as np

from scarlab import pvbs, scars
from scarlab.dynamics import RunConfig, site_resolved_profile

N, STEPS = 14, 10


def main():
    for g in (2.0, 2.0 / 3.0):
        config = RunConfig(params=pvbs.ModelParams(g=g, n_qubits=N),
                           steps=STEPS, initial="left_edge",
                           observables=("m_sites",))
        profile = site_resolved_profile(config)  # N x (T+1) of <Z_n(t)>
        occupation = (1.0 - profile) / 2.0
        print(f"g = {g:g}: site occupation <n_i(t)>, row = site")
        for site in range(6):
            cells = " ".join(f"{occupation[site, t]:.2f}"
                             for t in range(STEPS + 1))
            print(f"  site {site}: {cells}")
        print(f"  ... (sites 6..{N - 1} omitted)")
        print(f"  localisation length xi = {scars.localization_length(g):.3f}")
        print(f"  boundary-state imbalance = "
              f"{scars.imbalance_expectation(g, N):+.4f}\n")


if __name__ == "__main__":
    main()
