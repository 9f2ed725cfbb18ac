#pragma once

#include <exception>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minklab_cli/config.hpp"
#include "minklab_cli/io.hpp"

namespace minklab::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kHypothesisError = 3, kConstructionError = 4 };

struct Flags {
    std::string config;
    std::string out = "out";
    std::optional<long> grid, depth;
    std::optional<double> tol;

    std::map<std::string, std::string> echo() const;
};

/// 2 for config problems, 3 for failed hypotheses or preconditions, 4 otherwise.
int exit_code_for(const std::exception& e);

using Command = Json (*)(const Config&, const Flags&, RunOutput&);

Json cmd_infconv(const Config& cfg, const Flags& flags, RunOutput& out);
Json cmd_boman_blowup(const Config& cfg, const Flags& flags, RunOutput& out);
Json cmd_rotate_sweep(const Config& cfg, const Flags& flags, RunOutput& out);
Json cmd_curve(const Config& cfg, const Flags& flags, RunOutput& out);
Json cmd_hinge(const Config& cfg, const Flags& flags, RunOutput& out);
Json cmd_cantor(const Config& cfg, const Flags& flags, RunOutput& out);

/// Full command line (argv[0] included).  The summary JSON goes to `out`,
/// errors as JSON to `err` (and error.json under --out when possible).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace minklab::cli
