#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace coreg::kern {

// Hot inner loops of the exact linear algebra, factored out so that scalar
// reference code and SIMD variants share one contract. A variant is a table
// of function pointers; the active table is chosen once at startup from CPU
// capabilities and may be overridden with COREG_KERNELS=scalar|avx2.
//
// Contracts (all lanewise, exact):
//   axpy_u32: y[i] = (y[i] + c*x[i]) mod p      with 0 < c < p, inputs in [0,p)
//   scal_u32: y[i] = (c*y[i]) mod p             with 0 < c < p
//   xor_u64 : y[i] ^= x[i]                      (bit-packed GF(2) rows)
struct Kernels {
    void (*axpy_u32)(uint32_t* y, const uint32_t* x, uint32_t c, size_t n, uint32_t p);
    void (*scal_u32)(uint32_t* y, uint32_t c, size_t n, uint32_t p);
    void (*xor_u64)(uint64_t* y, const uint64_t* x, size_t n);
    const char* name;
};

const Kernels& scalar();
const Kernels& active();

// nullptr if the name is unknown or the variant is unavailable on this CPU.
const Kernels* by_name(std::string_view name);

// All variants usable on this machine (for equivalence tests).
std::vector<const Kernels*> available();

}  // namespace coreg::kern
