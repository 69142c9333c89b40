#include "coreg/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace coreg::kern {

namespace {

void axpy_u32_scalar(uint32_t* y, const uint32_t* x, uint32_t c, size_t n, uint32_t p) {
    for (size_t i = 0; i < n; ++i) {
        uint64_t v = y[i] + static_cast<uint64_t>(c) * x[i];
        y[i] = static_cast<uint32_t>(v % p);
    }
}

void scal_u32_scalar(uint32_t* y, uint32_t c, size_t n, uint32_t p) {
    for (size_t i = 0; i < n; ++i)
        y[i] = static_cast<uint32_t>(static_cast<uint64_t>(c) * y[i] % p);
}

void xor_u64_scalar(uint64_t* y, const uint64_t* x, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] ^= x[i];
}

const Kernels kScalar = {axpy_u32_scalar, scal_u32_scalar, xor_u64_scalar, "scalar"};

}  // namespace

const Kernels& scalar() { return kScalar; }

#if defined(COREG_HAVE_AVX2)
const Kernels& avx2();  // kernels_avx2.cpp
bool cpu_has_avx2();
#endif

const Kernels* by_name(std::string_view name) {
    if (name == "scalar") return &kScalar;
#if defined(COREG_HAVE_AVX2)
    if (name == "avx2" && cpu_has_avx2()) return &avx2();
#endif
    return nullptr;
}

std::vector<const Kernels*> available() {
    std::vector<const Kernels*> v{&kScalar};
#if defined(COREG_HAVE_AVX2)
    if (cpu_has_avx2()) v.push_back(&avx2());
#endif
    return v;
}

const Kernels& active() {
    static const Kernels* chosen = [] {
        if (const char* env = std::getenv("COREG_KERNELS")) {
            if (const Kernels* k = by_name(env)) return k;
        }
#if defined(COREG_HAVE_AVX2)
        if (cpu_has_avx2()) return &avx2();
#endif
        return &kScalar;
    }();
    return *chosen;
}

}  // namespace coreg::kern
