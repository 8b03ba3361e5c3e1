#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rsaudit/commands.hpp"
#include "rsaudit/error.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rsaudit;

namespace {

std::filesystem::path scratch(const char *name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(exit_code_for(ParseError("x", 3)) == ExitCode::parse);
    CHECK(exit_code_for(SchemaError("x")) == ExitCode::schema);
    CHECK(exit_code_for(LabelMapError("x")) == ExitCode::schema);
    CHECK(exit_code_for(ContractError("x")) == ExitCode::schema);
    CHECK(exit_code_for(IoError("x")) == ExitCode::io);
    CHECK(exit_code_for(std::invalid_argument("x")) == ExitCode::usage);
}

TEST_CASE("config resolution: flag, then environment, then defaults") {
    const auto dir = scratch("rsaudit_cfg_test");
    std::ofstream(dir / "env.json") << R"({"id_column": "from_env"})";
    std::ofstream(dir / "flag.json") << R"({"id_column": "from_flag"})";

    ::unsetenv(config_env_var);
    CHECK(resolve_config(std::nullopt).id_column == "id");
    ::setenv(config_env_var, (dir / "env.json").c_str(), 1);
    CHECK(resolve_config(std::nullopt).id_column == "from_env");
    CHECK(resolve_config(dir / "flag.json").id_column == "from_flag");
    ::unsetenv(config_env_var);
    std::filesystem::remove_all(dir);
}

TEST_CASE("audit command writes reports") {
    const auto dir = scratch("rsaudit_cmd_audit");
    std::ofstream(dir / "toy.csv") << fixtures::toy_csv;
    AuditCommand cmd;
    cmd.input = dir / "toy.csv";
    cmd.out_dir = dir / "out";
    std::ostringstream log;
    const AuditReport r = run_audit(cmd, log);
    CHECK(r.gamma == Rational(3, 8));
    CHECK(std::filesystem::exists(dir / "out" / "audit.json"));
    CHECK(std::filesystem::exists(dir / "out" / "audit.md"));
    CHECK(log.str().find("gamma 3/8") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("audit command rejects invalid data") {
    const auto dir = scratch("rsaudit_cmd_invalid");
    std::ofstream(dir / "dup.csv") << "id,c,label\n1,u,1\n1,v,0\n";
    std::ofstream(dir / "empty.csv") << "id,c,label\n";
    AuditCommand cmd;
    cmd.out_dir = dir / "out";
    std::ostringstream log;
    cmd.input = dir / "dup.csv";
    CHECK_THROWS_AS((void)run_audit(cmd, log), SchemaError);
    cmd.input = dir / "empty.csv";
    CHECK_THROWS_AS((void)run_audit(cmd, log), ContractError);
    cmd.input = dir / "missing.csv";
    CHECK_THROWS_AS((void)run_audit(cmd, log), IoError);
    CHECK_FALSE(std::filesystem::exists(dir / "out" / "audit.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("filter command, plain and split-aware") {
    const auto dir = scratch("rsaudit_cmd_filter");
    std::ofstream(dir / "toy.csv") << fixtures::toy_csv;
    FilterCommand cmd;
    cmd.input = dir / "toy.csv";
    cmd.out_dir = dir / "out";
    cmd.strategy = Strategy::asymmetric;
    std::ostringstream log;
    auto written = run_filter(cmd, log);
    REQUIRE(written.size() == 1);
    CHECK(written[0] == std::pair<std::string, std::size_t>{"asymmetric", 6});
    CHECK(std::filesystem::exists(dir / "out" / "asymmetric.removed.csv"));

    cmd.split_aware = true;
    cmd.strategy = Strategy::symmetric;
    written = run_filter(cmd, log);
    REQUIRE(written.size() == 3);
    CHECK(written[0] == std::pair<std::string, std::size_t>{"symmetric_train", 2});
    CHECK(std::filesystem::exists(dir / "out" / "symmetric_test.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("synth command writes data and sidecar") {
    const auto dir = scratch("rsaudit_cmd_synth");
    SynthCommand cmd;
    cmd.seed = 5;
    cmd.output = dir / "s.csv";
    std::ostringstream log;
    const SynthOutput out = run_synth(cmd, log);
    CHECK(std::filesystem::exists(dir / "s.expected.json"));
    const Dataset back = load_dataset(dir / "s.csv");
    CHECK(analyze(back).regions.gamma == out.expected.gamma);
    cmd.seed.reset();
    CHECK_THROWS_AS((void)run_synth(cmd, log), SpecError);
    std::filesystem::remove_all(dir);
}
