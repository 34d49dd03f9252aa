#include "qdfs/kernels.hpp"

namespace qdfs::kernels {

// OpenMP variants. Work is split over output rows (gemm) or output chunks
// (axpby); every output element is still accumulated by a single thread in
// the same order as the serial reference, so the results match it exactly
// up to compiler codegen differences.

void gemm_parallel(const Complex* a, const Complex* b, Complex* c,
                   std::size_t n, std::size_t k, std::size_t m) {
#pragma omp parallel for schedule(static)
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

void axpby_parallel(Complex alpha, const Complex* x, Complex beta, Complex* y,
                    std::size_t len) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < len; ++i) y[i] = alpha * x[i] + beta * y[i];
}

} // namespace qdfs::kernels
