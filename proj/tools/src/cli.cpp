#include "minklab_cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "minklab/error.hpp"

namespace minklab::cli {

std::map<std::string, std::string> Flags::echo() const {
    std::map<std::string, std::string> m;
    m["config"] = config;
    m["out"] = out;
    if (grid) m["grid"] = std::to_string(*grid);
    if (depth) m["depth"] = std::to_string(*depth);
    if (tol) m["tol"] = fmt(*tol);
    return m;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kConfigError;
    if (dynamic_cast<const HypothesisError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
        dynamic_cast<const PreconditionError*>(&e))
        return kHypothesisError;
    return kConstructionError;
}

namespace {

void report_error(const std::exception& e, const Flags& flags, std::ostream& err) {
    const Json j = error_json(e);
    err << j.dump() << "\n";
    if (flags.out.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(flags.out, ec);
    if (ec) return;
    std::ofstream f(std::filesystem::path(flags.out) / "error.json");
    if (f) f << j.dump(2) << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"minklab: infimal convolution, hinge smoothing and Cantor-set experiments"};
    app.require_subcommand(1);
    Flags flags;
    long grid = 0, depth = 0;
    double tol = 0.0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config, "key=value config file");
        sub->add_option("--out", flags.out, "output directory");
        sub->add_option("--grid", grid, "grid size override");
        sub->add_option("--depth", depth, "depth override");
        sub->add_option("--tol", tol, "tolerance override");
    };
    const std::vector<std::pair<std::string, Command>> commands = {
        {"infconv", cmd_infconv},          {"boman-blowup", cmd_boman_blowup}, {"rotate-sweep", cmd_rotate_sweep},
        {"curve", cmd_curve},              {"hinge", cmd_hinge},               {"cantor", cmd_cantor},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        subs[name] = sub;
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        report_error(ConfigError("command line", e.what()), flags, err);
        return kConfigError;
    }

    try {
        for (const auto& [name, fn] : commands) {
            CLI::App* sub = subs[name];
            if (!sub->parsed()) continue;
            if (sub->count("--grid")) flags.grid = grid;
            if (sub->count("--depth")) flags.depth = depth;
            if (sub->count("--tol")) flags.tol = tol;
            if (flags.grid && *flags.grid < 2) throw ConfigError("--grid", "must be at least 2");
            if (flags.depth && *flags.depth < 0) throw ConfigError("--depth", "must be non-negative");
            if (flags.tol && !(*flags.tol > 0.0)) throw ConfigError("--tol", "must be positive");
            const Config cfg = flags.config.empty() ? Config{} : Config::load(flags.config);
            RunOutput run_out(flags.out);
            Json summary = fn(cfg, flags, run_out);
            cfg.require_all_used();
            summary["subcommand"] = name;
            run_out.write_json("summary.json", summary);
            run_out.write_manifest(name, cfg, flags.echo());
            out << summary.dump(2) << "\n";
            return kOk;
        }
    } catch (const std::exception& e) {
        report_error(e, flags, err);
        return exit_code_for(e);
    }
    return kConfigError;
}

} // namespace minklab::cli
