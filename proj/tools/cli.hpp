#pragma once

#include <string>
#include <vector>

namespace halloss::cli {

/// Entry point behind the halloss binary. args excludes the program name.
/// Returns 0 on success, 1 when a check fails (verify residual over
/// tolerance, gradcheck error over tolerance, sweep ordering violated),
/// 2 on usage errors.
int run(const std::vector<std::string>& args);

}  // namespace halloss::cli
