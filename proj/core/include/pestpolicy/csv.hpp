#pragma once

// CSV tables consumed by downstream plotting. Floating values carry nine
// significant digits; quantities that are undefined are written as "nan".

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "pestpolicy/epidemic.hpp"
#include "pestpolicy/sweep.hpp"

namespace pestpolicy {

/// %.9g formatting.
std::string format_number(double value);

// Each writer returns the number of data rows written (header excluded).
std::size_t write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);
std::size_t write_policy_map_csv(std::ostream& os, const std::vector<PolicyMapRow>& rows);
std::size_t write_delta_sweep_csv(std::ostream& os, const std::vector<DeltaSweepRow>& rows);
std::size_t write_timing_csv(std::ostream& os, const std::vector<TimingRow>& rows);

}  // namespace pestpolicy
