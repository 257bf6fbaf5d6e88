#pragma once

#include <string_view>

#include "mercerlab/kernels.hpp"

namespace mercerlab::cli {

/// Parses a kernel argument.
///
/// Inline form is `name[:item,item,...]` where an item is `key=value` or a
/// bare flag:
///
///   brownian-bridge
///   pathological:n_max=6,symmetrized
///   legendre:terms=100
///   slow-trace:terms=100
///   heat:dirichlet,t=1,modes=100        (modes defaults to max(100, ceil(8/sqrt t)))
///   tabulated:path=kernel.csv
///
/// A value ending in `.json` is read as a JSON object with a "kernel" name and
/// the same keys; one ending in `.csv` is loaded as a tabulated kernel.
/// Unknown keys are rejected with InvalidArgument.
KernelSpec parse_kernel(std::string_view text);

}  // namespace mercerlab::cli
