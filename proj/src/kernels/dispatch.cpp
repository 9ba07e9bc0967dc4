/// @file dispatch.cpp
/// @brief Runtime selection of the kernel implementation.

#include "anse/kernels.hpp"

namespace anse::kernels {

#if defined(__x86_64__) || defined(__i386__)
const Ops* avx2_ops();  // defined in kernels_avx2.cpp
#endif
#if defined(__aarch64__)
const Ops* neon_ops();  // defined in kernels_neon.cpp
#endif

std::vector<const Ops*> available() {
    std::vector<const Ops*> list;
    list.push_back(&scalar());
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2")) list.push_back(avx2_ops());
#endif
#if defined(__aarch64__)
    list.push_back(neon_ops());
#endif
    return list;
}

const Ops& active() {
    static const Ops* chosen = [] {
        const Ops* best = &scalar();
#if defined(__x86_64__) || defined(__i386__)
        if (__builtin_cpu_supports("avx2")) best = avx2_ops();
#endif
#if defined(__aarch64__)
        best = neon_ops();
#endif
        return best;
    }();
    return *chosen;
}

}  // namespace anse::kernels
