#pragma once

#include "ptrie/kernels.hpp"

namespace ptrie::kernels::detail {

// Defined in avx2.cpp when that variant is built.
const KernelTable& avx2_table_unchecked() noexcept;

}  // namespace ptrie::kernels::detail
