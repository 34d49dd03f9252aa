#include "qdfs/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <omp.h>

namespace qdfs::kernels {

namespace {

// Below this many multiply-adds the fork/join overhead dominates.
constexpr std::size_t parallel_work_threshold = 64 * 64 * 64;

std::atomic<bool> g_force_serial{[] {
    const char* v = std::getenv("QDFS_SERIAL");
    return v != nullptr && v[0] != '\0' && v[0] != '0';
}()};

bool pick_parallel(std::size_t work) {
    if (g_force_serial.load(std::memory_order_relaxed)) return false;
    if (work < parallel_work_threshold) return false;
    // Outer loops (verify trials, state scans) already parallelize; nested
    // regions would only add overhead.
    if (omp_in_parallel()) return false;
    return omp_get_max_threads() > 1;
}

} // namespace

void force_serial(bool on) { g_force_serial.store(on, std::memory_order_relaxed); }
bool serial_forced() { return g_force_serial.load(std::memory_order_relaxed); }
bool would_parallelize(std::size_t work) { return pick_parallel(work); }

void gemm(const Complex* a, const Complex* b, Complex* c,
          std::size_t n, std::size_t k, std::size_t m) {
    if (pick_parallel(n * k * m))
        gemm_parallel(a, b, c, n, k, m);
    else
        gemm_serial(a, b, c, n, k, m);
}

void axpby(Complex alpha, const Complex* x, Complex beta, Complex* y, std::size_t len) {
    if (pick_parallel(len))
        axpby_parallel(alpha, x, beta, y, len);
    else
        axpby_serial(alpha, x, beta, y, len);
}

} // namespace qdfs::kernels
