// Timings for the serial and OpenMP matrix kernels plus one end-to-end RK4
// propagation. Usage: bench_kernels [--sizes 32,64,128,192] [--reps 5]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "qdfs/gallery.hpp"
#include "qdfs/kernels.hpp"
#include "qdfs/oracle.hpp"
#include "qdfs/rng.hpp"

using namespace qdfs;
using clock_type = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& f, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clock_type::now();
        f();
        auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

ComplexMatrix random_matrix(std::size_t n, Rng& rng) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.complex_gaussian();
    return m;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::size_t> sizes = {32, 64, 128, 192};
    int reps = 5;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--sizes" && i + 1 < argc) {
            sizes.clear();
            std::stringstream ss(argv[++i]);
            std::string tok;
            while (std::getline(ss, tok, ',')) sizes.push_back(std::stoul(tok));
        } else if (arg == "--reps" && i + 1 < argc) {
            reps = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: bench_kernels [--sizes n1,n2,...] [--reps k]\n";
            return 1;
        }
    }

    std::cout << "threads: " << omp_get_max_threads() << "\n\n";
    std::cout << "gemm (complex, n x n)\n";
    std::cout << std::left << std::setw(8) << "n" << std::setw(14) << "serial [ms]"
              << std::setw(14) << "parallel [ms]" << "speedup\n";

    Rng rng(7, 0);
    for (std::size_t n : sizes) {
        ComplexMatrix a = random_matrix(n, rng), b = random_matrix(n, rng);
        ComplexMatrix c(n, n);
        const double ts =
            time_of([&] { kernels::gemm_serial(a.data(), b.data(), c.data(), n, n, n); }, reps);
        const double tp =
            time_of([&] { kernels::gemm_parallel(a.data(), b.data(), c.data(), n, n, n); }, reps);
        std::cout << std::setw(8) << n << std::setw(14) << std::setprecision(4) << ts * 1e3
                  << std::setw(14) << tp * 1e3 << std::setprecision(3) << ts / tp << "\n";
    }

    std::cout << "\naxpby (y = a x + b y, n x n)\n";
    std::cout << std::left << std::setw(8) << "n" << std::setw(14) << "serial [ms]"
              << std::setw(14) << "parallel [ms]" << "speedup\n";
    for (std::size_t n : sizes) {
        ComplexMatrix x = random_matrix(n, rng), y = random_matrix(n, rng);
        const Complex al(0.3, -0.1), be(0.9, 0.05);
        const double ts = time_of(
            [&] { kernels::axpby_serial(al, x.data(), be, y.data(), y.size()); }, reps);
        const double tp = time_of(
            [&] { kernels::axpby_parallel(al, x.data(), be, y.data(), y.size()); }, reps);
        std::cout << std::setw(8) << n << std::setw(14) << std::setprecision(4) << ts * 1e3
                  << std::setw(14) << tp * 1e3 << std::setprecision(3) << ts / tp << "\n";
    }

    // End-to-end: one damped-oscillator propagation, serial vs dispatched.
    const int n_max = 40;
    MasterEquationModel m = damped_oscillator_truncated(n_max, 1.0, 1.0, 1.0, true);
    ComplexMatrix psi = coherent_state(n_max, Complex(1, 0));
    ComplexMatrix rho = outer(psi, psi);
    kernels::force_serial(true);
    const double ts = time_of([&] { propagate(m, rho, 2.0, 512); }, std::max(1, reps / 2));
    kernels::force_serial(false);
    const double tp = time_of([&] { propagate(m, rho, 2.0, 512); }, std::max(1, reps / 2));
    std::cout << "\nRK4 propagation (dim " << n_max + 1 << ", 512 steps)\n";
    std::cout << "serial " << std::setprecision(4) << ts * 1e3 << " ms, dispatched " << tp * 1e3
              << " ms, speedup " << std::setprecision(3) << ts / tp << "\n";
    return 0;
}
