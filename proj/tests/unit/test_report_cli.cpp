#include <sstream>

#include "doctest.h"

#include "polyreg/cli.hpp"
#include "polyreg/errors.hpp"
#include "polyreg/regularity.hpp"
#include "polyreg/report.hpp"

using namespace polyreg;
namespace rg = polyreg::regularity;

namespace {

cli::ParseResult parse(std::vector<std::string> args, const char* env = nullptr) { return cli::parse_args(args, env); }

int run(std::vector<std::string> args, std::string& out)
{
    auto p = parse(std::move(args), "1");
    if (!p.config) return p.exit_code;
    std::ostringstream o, e;
    const int rc = cli::run(*p.config, o, e);
    out = o.str();
    return rc;
}

} // namespace

TEST_CASE("json round trips")
{
    CHECK(report::int_from_json(report::int_json(5)) == 5);
    const i128 big = i128(1) << 100;
    CHECK(report::int_json(big).is_string());
    CHECK(report::int_from_json(report::int_json(big)) == big);
    CHECK(report::rational_from_json(report::to_json(Rational(-7, 3))) == Rational(-7, 3));

    const auto L = rg::bound_ledger(5, 1, 2, 3);
    CHECK(report::ledger_from_json(report::to_json(L)) == L);
    const auto E = rg::exceptions(polyforms::PolygonalForm(3, {1, 1, 7}), 500);
    CHECK(report::exception_report_from_json(report::to_json(E)) == E);
    const auto S = rg::search(3, 3, 2000);
    CHECK(report::search_report_from_json(report::to_json(S)) == S);
    const auto W = rg::construct_N0_pair(3, 1, 1, 1);
    CHECK(report::witness_from_json(report::to_json(W)) == W);
    auto seq = rg::inert_sequence(5, 1, 2, 3, 3);
    const auto Wi = rg::construct_Ni(5, 1, 2, 3, seq, 2);
    CHECK(report::witness_from_json(report::to_json(Wi)) == Wi);
    const auto V = local::locally_represented(4, {1, 1, 1}, 7);
    const auto V2 = report::local_verdict_from_json(report::to_json(V));
    CHECK(V2.verdict == V.verdict);
    CHECK(V2.per_prime == V.per_prime);
}

TEST_CASE("candidate wording in search reports")
{
    const auto j = report::to_json(rg::search(3, 2, 1000));
    CHECK(j.dump().find("candidate") != std::string::npos);
    CHECK(j["params"]["N_max"] == 1000);
}

TEST_CASE("render")
{
    report::Table t{{"a", "b"}, {{"1", "x,y"}, {"2", "q\"r"}}};
    CHECK(report::render_csv(t) == "a,b\n1,\"x,y\"\n2,\"q\"\"r\"\n");
    const auto flat = report::flatten(report::Json{{"k", {{"x", 1}}}, {"l", {2, 3}}});
    // arrays of scalars stay in one cell
    REQUIRE(flat.rows.size() == 2);
    CHECK(flat.rows[0][0] == "k.x");
    CHECK(flat.rows[1][0] == "l");
    CHECK(report::render_plain(report::Json{{"k", 1}}).find("k: 1") != std::string::npos);
}

TEST_CASE("parse_args")
{
    auto p = parse({"search", "--m", "3", "--cmax", "6", "--nmax", "1000"});
    REQUIRE(p.config);
    CHECK(p.config->command == cli::Command::search);
    CHECK(p.config->seed == 0);
    CHECK(p.config->memory_budget == (std::uint64_t(1) << 30));
    CHECK_FALSE(p.config->format.has_value());

    p = parse({"--threads", "3", "--memory-budget", "64M", "--seed", "9", "--format", "csv", "exceptions", "--m",
               "4", "--coeffs", "1,1,5", "--nmax", "100"});
    REQUIRE(p.config);
    CHECK(p.config->threads == 3);
    CHECK(p.config->memory_budget == 64ull << 20);
    CHECK(p.config->seed == 9);
    CHECK(p.config->format == report::Format::csv);
    CHECK(p.config->coeffs == std::vector<i128>{1, 1, 5});

    CHECK(parse({"bounds", "--m", "3", "--coeffs", "1,1,1"}, "5").config->threads == 5);
    CHECK(parse({"--threads", "2", "bounds", "--m", "3", "--coeffs", "1,1,1"}, "5").config->threads == 2);

    CHECK(parse({"--help"}).exit_code == cli::kExitOk);
    CHECK_FALSE(parse({"--help"}).message.empty());
    CHECK(parse({}).exit_code == cli::kExitUsage);
    CHECK(parse({"nonsense"}).exit_code == cli::kExitUsage);
    CHECK(parse({"search", "--m", "2", "--cmax", "3", "--nmax", "10"}).exit_code == cli::kExitUsage);
    CHECK(parse({"bounds", "--m", "3", "--coeffs", "1,1"}).exit_code == cli::kExitUsage);
    CHECK(parse({"bounds", "--m", "3", "--coeffs", "1,0,1"}).exit_code == cli::kExitUsage);
    CHECK(parse({"--format", "xml", "bounds", "--m", "3", "--coeffs", "1,1,1"}).exit_code == cli::kExitUsage);
    CHECK(parse({"--threads", "zero", "bounds", "--m", "3", "--coeffs", "1,1,1"}).exit_code == cli::kExitUsage);
    CHECK(parse({"verify-paper", "--criteria", "12"}).exit_code == cli::kExitUsage);
    CHECK(parse({"eq34", "--m", "3", "--coeffs", "1,1,1"}).exit_code == cli::kExitUsage);

    CHECK(cli::parse_bytes("4K") == 4096);
    CHECK(cli::parse_bytes("123") == 123);
    CHECK_THROWS_AS(cli::parse_bytes("12Q"), DomainError);
}

TEST_CASE("run exit codes")
{
    std::string out;
    CHECK(run({"exceptions", "--m", "4", "--coeffs", "1,1,1", "--nmax", "5000"}, out) == cli::kExitOk);
    CHECK(out.find("\"scan_complete\": true") != std::string::npos);
    CHECK(run({"--memory-budget", "1K", "exceptions", "--m", "4", "--coeffs", "1,1,1", "--nmax", "100000"}, out) ==
          cli::kExitPartial);
    CHECK(run({"--format", "plain", "bounds", "--m", "3", "--coeffs", "1,1,1"}, out) == cli::kExitOk);
    CHECK(out.find("a_ok: true") != std::string::npos);
    CHECK(run({"represent", "--m", "4", "--coeffs", "1,1,1", "--n", "7"}, out) == cli::kExitOk);
    CHECK(out.find("\"represented\": false") != std::string::npos);
    CHECK(run({"inert-prime", "--D", "-4", "--M", "6"}, out) == cli::kExitUsage);
    CHECK(run({"verify-paper", "--criteria", "11"}, out) == cli::kExitInvariant);
    CHECK(out.find("FAIL 11") != std::string::npos);
}
