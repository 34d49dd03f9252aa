#pragma once

#include <complex>
#include <cstddef>

// Low-level dense kernels, each in a serial and an OpenMP variant.
// The serial variants are the reference; tests assert the parallel ones
// reproduce them, and tools/bench_kernels.cpp times the two side by side.
//
// The dispatching entry points fall back to serial when the problem is small
// or when the caller is already inside a parallel region (trial/state sweeps
// in the oracle parallelize at the outer level).

namespace qdfs::kernels {

using Complex = std::complex<double>;

// c = a * b with a: n x k, b: k x m, c: n x m, all row-major. No aliasing.
void gemm_serial(const Complex* a, const Complex* b, Complex* c,
                 std::size_t n, std::size_t k, std::size_t m);
void gemm_parallel(const Complex* a, const Complex* b, Complex* c,
                   std::size_t n, std::size_t k, std::size_t m);
void gemm(const Complex* a, const Complex* b, Complex* c,
          std::size_t n, std::size_t k, std::size_t m);

// y = alpha * x + beta * y over len entries.
void axpby_serial(Complex alpha, const Complex* x, Complex beta, Complex* y,
                  std::size_t len);
void axpby_parallel(Complex alpha, const Complex* x, Complex beta, Complex* y,
                    std::size_t len);
void axpby(Complex alpha, const Complex* x, Complex beta, Complex* y,
           std::size_t len);

// True when the dispatchers would pick the parallel variant for this many
// scalar multiply-adds.
bool would_parallelize(std::size_t work);

// Force serial dispatch regardless of size (also honoured when the
// environment variable QDFS_SERIAL is set to a nonzero value).
void force_serial(bool on);
bool serial_forced();

} // namespace qdfs::kernels
