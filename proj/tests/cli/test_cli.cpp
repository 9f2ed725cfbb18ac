#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "minklab/error.hpp"
#include "minklab_cli/cli.hpp"
#include "minklab_cli/config.hpp"
#include "minklab_cli/io.hpp"

using namespace minklab;
using namespace minklab::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("minklab_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "run.cfg";
    std::ofstream(p) << text;
    return p;
}

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "minklab");
    std::ostringstream o, e;
    const int code = run(args, o, e);
    return {code, o.str(), e.str()};
}

const char* kInfconv = "[infconv]\n"
                       "f = poly:coeffs=0 0 1,lo=-1,hi=1\n"
                       "g = poly:coeffs=0 0 2,lo=-1,hi=1\n"
                       "lo = -1\nhi = 1\nroute = both\n"
                       "expect = poly:coeffs=0 0 2/3,lo=-1,hi=1\n";

} // namespace

TEST_CASE("config sections, comments and duplicates") {
    const Config c = Config::parse("top = 1\n[a]\nx = 2.5  # note\ny = 1/4\n");
    CHECK(c.get_int("top") == 1);
    CHECK(c.get_double("a.x") == 2.5);
    CHECK(parse_number("a.y", c.get_string("a.y")) == 0.25);
    CHECK_THROWS_AS(Config::parse("x = 1\nx = 2\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("no equals sign\n"), ConfigError);
    Config d = Config::parse("[s]\nused = 1\nunused = 2\n");
    d.get_int("s.used");
    CHECK_THROWS_AS(d.require_all_used(), ConfigError);
}

TEST_CASE("tagged values") {
    const Tagged t = parse_tagged("f", "exp_flat:A=20,s=1e-6");
    CHECK(t.tag == "exp_flat");
    CHECK(t.params.at("A") == "20");
    CHECK(t.params.at("s") == "1e-6");
}

TEST_CASE("infconv run succeeds and is byte-for-byte reproducible") {
    const fs::path dir = scratch("infconv");
    const fs::path cfg = write_config(dir, kInfconv);
    const Result a = invoke({"infconv", "--config", cfg.string(), "--out", (dir / "a").string()});
    const Result b = invoke({"infconv", "--config", cfg.string(), "--out", (dir / "b").string()});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const Json s = Json::parse(slurp(dir / "a" / "summary.json"));
    CHECK(s["subcommand"] == "infconv");
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        const std::string name = entry.path().filename().string();
        if (name == "manifest.json") continue;
        CHECK_MESSAGE(slurp(entry.path()) == slurp(dir / "b" / name), name);
    }
    // manifest hashes match the files on disk
    const Json m = Json::parse(slurp(dir / "a" / "manifest.json"));
    CHECK(m["subcommand"] == "infconv");
    REQUIRE_FALSE(m["artifacts"].empty());
    for (const Json& art : m["artifacts"]) {
        const std::string body = slurp(dir / "a" / art["file"].get<std::string>());
        CHECK(art["bytes"].get<std::size_t>() == body.size());
        CHECK(art["fnv1a64"].get<std::string>() == hex64(fnv1a64(body)));
    }
}

TEST_CASE("malformed config exits 2 with an error JSON naming the field") {
    const fs::path dir = scratch("badcfg");
    const fs::path cfg = write_config(dir, "[infconv]\nf = poly:coeffs=0 0 x,lo=-1,hi=1\ng = poly:coeffs=0 0 1,lo=-1,hi=1\n");
    const Result r = invoke({"infconv", "--config", cfg.string(), "--out", (dir / "o").string()});
    CHECK(r.code == 2);
    const Json e = Json::parse(r.err);
    CHECK(e["error"]["kind"] == "config");
    CHECK(e["error"]["field"] == "infconv.f");
    CHECK(fs::exists(dir / "o" / "error.json"));
}

TEST_CASE("unknown keys and unknown flags exit 2") {
    const fs::path dir = scratch("unknown");
    const fs::path cfg = write_config(dir, std::string(kInfconv) + "typo = 1\n");
    CHECK(invoke({"infconv", "--config", cfg.string(), "--out", (dir / "o").string()}).code == 2);
    CHECK(invoke({"infconv", "--bogus"}).code == 2);
    CHECK(invoke({"no-such-command"}).code == 2);
}

TEST_CASE("a schedule that breaks the decay hypothesis exits 3") {
    const fs::path dir = scratch("hyp");
    const fs::path cfg = write_config(dir, "[boman]\nb = geometric:c=1,r=0.5\n");
    const Result r = invoke({"boman-blowup", "--config", cfg.string(), "--out", (dir / "o").string()});
    CHECK(r.code == 3);
    CHECK(Json::parse(r.err)["error"]["kind"] == "hypothesis");
}

TEST_CASE("resource limits exit 4") {
    const fs::path dir = scratch("resource");
    const fs::path cfg = write_config(dir, "[cantor]\ndepth = 30\n");
    CHECK(invoke({"cantor", "--config", cfg.string(), "--out", (dir / "o").string()}).code == 4);
}

TEST_CASE("cantor difference covers [-1, 1]") {
    const fs::path dir = scratch("cantor");
    const fs::path cfg = write_config(dir, "[cantor]\ndepth = 8\nop = difference\nexact = true\ntarget_lo = -1\ntarget_hi = 1\n");
    const Result r = invoke({"cantor", "--config", cfg.string(), "--out", (dir / "o").string()});
    REQUIRE(r.code == 0);
    const Json s = Json::parse(r.out);
    CHECK(s["result"]["covers"] == true);
}

TEST_CASE("exit codes by error class") {
    CHECK(exit_code_for(ConfigError("k", "m")) == 2);
    CHECK(exit_code_for(HypothesisError(3, "m")) == 3);
    CHECK(exit_code_for(PreconditionError("m")) == 3);
    CHECK(exit_code_for(ConstructionError("m")) == 4);
    CHECK(exit_code_for(std::runtime_error("m")) == 4);
}
