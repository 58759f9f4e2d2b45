#pragma once

#include "penair/kernels.hpp"

namespace penair::kernels::detail {

#if defined(PENAIR_HAVE_AVX2)
const KernelSet& avx2_set();
#endif

}  // namespace penair::kernels::detail
