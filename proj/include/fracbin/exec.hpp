// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace fracbin {

/// Execution policy for the data-parallel kernels. Serial is the reference
/// implementation; Parallel uses OpenMP and must produce bit-identical output.
enum class Exec { Serial, Parallel };

}  // namespace fracbin
