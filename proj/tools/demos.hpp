#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace fenchel::cli {

struct DemoOutcome {
    json payload;
    bool pass = true;
};

const std::vector<std::string>& demo_names();

/// Runs a named scenario end to end. UnknownDemo for other names.
DemoOutcome run_demo(const std::string& name, const RunOptions& opts);

/// Sampling grid k·h for k in [lo_k, hi_k], so x = 0 is a node exactly.
Grid1D integer_step_grid(long lo_k, long hi_k, double h);

/// Grid wide enough that every slope needed on [-window, window] for the
/// member is reached by a sampled node.
Grid1D log_member_grid(const LogFamilyMember& m, double window, double h);

} // namespace fenchel::cli
