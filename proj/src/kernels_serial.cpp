#include "qdfs/kernels.hpp"

namespace qdfs::kernels {

// Reference implementations. The parallel variants must reproduce these
// element for element (same per-element summation order), which the kernel
// tests check at tight tolerance.

void gemm_serial(const Complex* a, const Complex* b, Complex* c,
                 std::size_t n, std::size_t k, std::size_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        Complex* ci = c + i * m;
        for (std::size_t j = 0; j < m; ++j) ci[j] = Complex(0, 0);
        const Complex* ai = a + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const Complex aip = ai[p];
            if (aip == Complex(0, 0)) continue;
            const Complex* bp = b + p * m;
            for (std::size_t j = 0; j < m; ++j) ci[j] += aip * bp[j];
        }
    }
}

void axpby_serial(Complex alpha, const Complex* x, Complex beta, Complex* y,
                  std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) y[i] = alpha * x[i] + beta * y[i];
}

} // namespace qdfs::kernels
