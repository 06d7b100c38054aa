#include "chromaclust/kernels.hpp"

#include <cstdlib>

namespace chromaclust::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void accumulate(double* acc, const double* x, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void axpy(double* y, double alpha, const double* x, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace scalar

double (*dot)(const double*, const double*, std::size_t) = &scalar::dot;
double (*squared_distance)(const double*, const double*, std::size_t) = &scalar::squared_distance;
void (*accumulate)(double*, const double*, std::size_t) = &scalar::accumulate;
void (*axpy)(double*, double, const double*, std::size_t) = &scalar::axpy;

namespace {
const char* g_backend = "scalar";
}

const char* active_backend() noexcept { return g_backend; }

bool select_backend(std::string_view name) noexcept {
    if (name == "scalar") {
        dot = &scalar::dot;
        squared_distance = &scalar::squared_distance;
        accumulate = &scalar::accumulate;
        axpy = &scalar::axpy;
        g_backend = "scalar";
        return true;
    }
#if defined(__x86_64__)
    if (name == "avx2" && avx2::supported()) {
        dot = &avx2::dot;
        squared_distance = &avx2::squared_distance;
        accumulate = &avx2::accumulate;
        axpy = &avx2::axpy;
        g_backend = "avx2";
        return true;
    }
#endif
#if defined(__aarch64__)
    if (name == "neon" && neon::supported()) {
        dot = &neon::dot;
        squared_distance = &neon::squared_distance;
        accumulate = &neon::accumulate;
        axpy = &neon::axpy;
        g_backend = "neon";
        return true;
    }
#endif
    return false;
}

namespace {

struct BackendInit {
    BackendInit() {
        if (const char* env = std::getenv("CHROMACLUST_KERNELS")) {
            if (select_backend(env)) return;
        }
#if defined(__x86_64__)
        if (select_backend("avx2")) return;
#endif
#if defined(__aarch64__)
        if (select_backend("neon")) return;
#endif
        select_backend("scalar");
    }
};

const BackendInit g_backend_init{};

}  // namespace

}  // namespace chromaclust::kernels
