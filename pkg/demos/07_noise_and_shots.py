"""Hardware-style runs: finite shots, SPAM errors, depolarizing noise.

Evolves the delocalized boundary state with a finite shot budget and a
coarse error model and compares the sampled magnetisation with the ideal
curve. All randomness flows from the seed: reruns (and any thread count)
reproduce the output bit for bit.
"""

from scarlab import pvbs
from scarlab.dynamics import NoiseModel, RunConfig, evolve, noisy_evolve

N, STEPS = 8, 8


def main():
    params = pvbs.ModelParams(g=1.0, n_qubits=N)
    ideal = evolve(RunConfig(params=params, steps=STEPS, initial="boundary",
                             observables=("m_total",)))
    sampled = evolve(RunConfig(params=params, steps=STEPS, initial="boundary",
                               observables=("m_total",), shots=500, seed=1))
    noisy = noisy_evolve(RunConfig(params=params, steps=STEPS,
                                   initial="boundary",
                                   observables=("m_total",), shots=200,
                                   noise=NoiseModel(p1=0.002, p2=0.01,
                                                    p_spam=0.02),
                                   seed=1))

    print(f"total magnetisation, boundary state, N = {N}, g = 1")
    print("t     ideal   500 shots   noisy (p2 = 1%)  +- stderr")
    for t in range(STEPS + 1):
        print(f"{t:<4d}{ideal.columns['m_total'][t]:8.3f}"
              f"{sampled.columns['m_total'][t]:10.3f}"
              f"{noisy.columns['m_total'][t]:14.3f}"
              f"{noisy.stderr['m_total'][t]:12.3f}")

    again = noisy_evolve(RunConfig(params=params, steps=STEPS,
                                   initial="boundary",
                                   observables=("m_total",), shots=200,
                                   noise=NoiseModel(p1=0.002, p2=0.01,
                                                    p_spam=0.02),
                                   seed=1))
    print(f"\nbit-identical rerun: {noisy.to_json() == again.to_json()}")


if __name__ == "__main__":
    main()
