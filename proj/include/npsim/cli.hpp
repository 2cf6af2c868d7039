#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <npsim/metrics.hpp>
#include <npsim/schedule.hpp>

namespace npsim {

/// Human-readable schedule table, one row per path, one column per round.
std::string render_schedule(const TransmissionSchedule& schedule);

/// Exit code implied by report content alone: 2 if any session lost data, else 0.
int exit_code_for(const std::vector<SessionReport>& reports);

/// Full command-line entry point (args without the program name). Returns
/// the process exit code: 0 success, 1 usage or config error, 2 data loss
/// or model violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace npsim
