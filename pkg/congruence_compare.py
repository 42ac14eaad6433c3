import timeit
import matplotlib.pyplot as plt
from algebra.semigroup_core import ElementSet
from algebra.semigroup_congruence import principal_congruence, principal_congruence_manual
from algebra.ufd_domains import DomainId
from algebra.ufd_residues import residue_semigroup

def measure_performance(moduli=(6, 12, 24, 48, 96, 150), number=5):
    """
    Measures the execution time of the literal (context by context) and the
    vectorised principal congruence P_{{0}} on the multiplication tables of Z/m.

    Returns:
    tuple: lists of per-call times in seconds for the manual and the vectorised routine.
    """
    manual_times, vector_times = [], []
    for m in moduli:
        S = residue_semigroup(DomainId.integers().element(m)).semigroup
        H = ElementSet.from_indices(S.order, [0])
        assert principal_congruence_manual(S, H) == principal_congruence(S, H)
        manual = timeit.timeit(lambda: principal_congruence_manual(S, H), number=number) / number
        vector = timeit.timeit(lambda: principal_congruence(S, H), number=number) / number
        manual_times.append(manual)
        vector_times.append(vector)
        print(f"Z/{m} - manual: {manual:.6f} s, vectorised: {vector:.6f} s, "
              f"improvement: {((manual - vector) / manual) * 100:.2f}%")
    return manual_times, vector_times

def plot_performance(moduli, manual_times, vector_times):
    plt.figure(figsize=(8, 5))
    plt.plot(moduli, manual_times, "o-", label="contexts (manual)")
    plt.plot(moduli, vector_times, "s-", label="product-set keys (vectorised)")
    plt.yscale("log")
    plt.xlabel("m (order of Z/m)")
    plt.ylabel("time per call [s]")
    plt.title("Principal congruence P_{0} on Z/m")
    plt.legend()
    plt.grid(True)
    plt.show()

if __name__ == "__main__":
    moduli = (6, 12, 24, 48, 96, 150)
    manual_times, vector_times = measure_performance(moduli)
    plot_performance(moduli, manual_times, vector_times)
