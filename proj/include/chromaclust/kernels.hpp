#pragma once

#include <cstddef>
#include <string_view>

// Arithmetic inner-loop kernels over contiguous double arrays. The scalar
// versions are the reference implementations; SIMD variants are selected at
// runtime and must agree with the scalar ones up to floating-point
// reassociation (equivalence-tested in tests/test_kernels.cpp).
//
// Env override: CHROMACLUST_KERNELS=scalar|avx2|neon forces a backend.
namespace chromaclust::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
void accumulate(double* acc, const double* x, std::size_t n) noexcept;  // acc += x
void axpy(double* y, double alpha, const double* x, std::size_t n) noexcept;  // y += alpha*x
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
bool supported() noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
void accumulate(double* acc, const double* x, std::size_t n) noexcept;
void axpy(double* y, double alpha, const double* x, std::size_t n) noexcept;
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
bool supported() noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
void accumulate(double* acc, const double* x, std::size_t n) noexcept;
void axpy(double* y, double alpha, const double* x, std::size_t n) noexcept;
}  // namespace neon
#endif

// Dispatched entry points, resolved once at startup.
extern double (*dot)(const double* a, const double* b, std::size_t n);
extern double (*squared_distance)(const double* a, const double* b, std::size_t n);
extern void (*accumulate)(double* acc, const double* x, std::size_t n);
extern void (*axpy)(double* y, double alpha, const double* x, std::size_t n);

const char* active_backend() noexcept;
// Returns false (and leaves the dispatch unchanged) if the backend is
// unknown or unsupported on this CPU.
bool select_backend(std::string_view name) noexcept;

}  // namespace chromaclust::kernels
