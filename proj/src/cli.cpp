#include "polyreg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "polyreg/acceptance.hpp"
#include "polyreg/characters.hpp"
#include "polyreg/errors.hpp"
#include "polyreg/kernels.hpp"
#include "polyreg/local.hpp"
#include "polyreg/numthy.hpp"
#include "polyreg/polyforms.hpp"
#include "polyreg/regularity.hpp"

namespace polyreg::cli {

namespace rg = polyreg::regularity;
namespace ch = polyreg::characters;
using report::Json;

const char* command_name(Command c)
{
    switch (c) {
    case Command::search: return "search";
    case Command::exceptions: return "exceptions";
    case Command::local: return "local";
    case Command::represent: return "represent";
    case Command::inert_prime: return "inert-prime";
    case Command::eq34: return "eq34";
    case Command::bounds: return "bounds";
    case Command::verify_charsum: return "verify-charsum";
    case Command::verify_paper: return "verify-paper";
    }
    return "?";
}

std::uint64_t parse_bytes(const std::string& s)
{
    require(!s.empty(), "empty byte count");
    std::uint64_t mult = 1;
    std::string digits = s;
    switch (std::toupper(static_cast<unsigned char>(s.back()))) {
    case 'K': mult = 1ull << 10; break;
    case 'M': mult = 1ull << 20; break;
    case 'G': mult = 1ull << 30; break;
    default: break;
    }
    if (mult != 1) digits.pop_back();
    require(!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit), "malformed byte count");
    const auto v = std::stoull(digits);
    require(v <= ~std::uint64_t(0) / mult, "byte count too large");
    return v * mult;
}

namespace {

struct Raw {
    std::int64_t m = 0, n = 0, D = 0, c_max = 0;
    std::vector<std::int64_t> coeffs;
    std::uint64_t n_max = 0, M = 0, H = 0, x = 0, prime = 0;
    std::size_t limit = 0, depth = 10;
    std::string mode = "auto", format, budget = "1G";
    std::vector<int> criteria;
};

ParseResult usage(const std::string& msg) { return {std::nullopt, kExitUsage, "error: " + msg}; }

void check_form(const RunConfig& c, std::size_t min_len, std::size_t max_len)
{
    require(c.m >= 3, "--m must be at least 3");
    require(c.coeffs.size() >= min_len && c.coeffs.size() <= max_len,
            min_len == max_len ? "--coeffs needs three values" : "--coeffs needs one to three values");
    for (auto a : c.coeffs) require(a >= 1, "--coeffs must be positive");
}

void write(const RunConfig& cfg, std::ostream& out, const std::string& text)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + cfg.out);
    f << text;
}

std::string render(const RunConfig& cfg, const Json& doc, const report::Table* table)
{
    switch (cfg.format.value_or(report::Format::json)) {
    case report::Format::json: return doc.dump(2) + "\n";
    case report::Format::csv: return report::render_csv(table ? *table : report::flatten(doc));
    case report::Format::plain: return report::render_plain(doc);
    }
    return {};
}

Json header(const RunConfig& cfg)
{
    return Json{{"command", command_name(cfg.command)}, {"kernel", kernels::name(kernels::active_isa())}};
}

int cmd_search(const RunConfig& cfg, std::ostream& out)
{
    rg::SearchOptions so;
    so.threads = cfg.threads;
    so.budget_bytes = cfg.memory_budget;
    const auto rep = rg::search(cfg.m, cfg.c_max, cfg.n_max, so);
    const auto table = report::search_table(rep);
    write(cfg, out, render(cfg, report::to_json(rep), &table));
    return rep.complete ? kExitOk : kExitPartial;
}

int cmd_exceptions(const RunConfig& cfg, std::ostream& out)
{
    const auto rep =
        rg::exceptions(polyforms::PolygonalForm(cfg.m, cfg.coeffs), cfg.n_max, cfg.memory_budget, cfg.limit);
    const auto table = report::exceptions_table(rep);
    write(cfg, out, render(cfg, report::to_json(rep), &table));
    return rep.scan_complete ? kExitOk : kExitPartial;
}

int cmd_local(const RunConfig& cfg, std::ostream& out)
{
    Json doc = header(cfg);
    doc["m"] = report::int_json(cfg.m);
    doc["coeffs"] = Json::array();
    for (auto a : cfg.coeffs) doc["coeffs"].push_back(report::int_json(a));
    doc["n"] = report::int_json(cfg.n);
    const i128 N = polyforms::target_N(cfg.m, cfg.coeffs, cfg.n);
    doc["N"] = report::int_json(N);
    if (cfg.prime) {
        require(numthy::is_prime(*cfg.prime), "--prime must be prime");
        local::LocalVerdict v;
        v.per_prime[*cfg.prime] = local::padic_solvable(cfg.m, cfg.coeffs, N, *cfg.prime);
        v.verdict = v.per_prime[*cfg.prime].represented;
        doc["result"] = report::to_json(v);
    } else {
        const auto v = local::locally_represented(cfg.m, {cfg.coeffs[0], cfg.coeffs[1], cfg.coeffs[2]}, cfg.n,
                                                  cfg.full_mode ? local::Mode::full : local::Mode::automatic);
        doc["result"] = report::to_json(v);
    }
    write(cfg, out, render(cfg, doc, nullptr));
    return kExitOk;
}

int cmd_represent(const RunConfig& cfg, std::ostream& out)
{
    Json doc = header(cfg);
    const polyforms::PolygonalForm form(cfg.m, cfg.coeffs);
    const auto w = polyforms::represents(form, cfg.n);
    doc["form"] = form.str();
    doc["n"] = report::int_json(cfg.n);
    doc["represented"] = w.xyz.has_value();
    Json xyz = nullptr;
    if (w.xyz) {
        xyz = Json::array();
        for (auto v : *w.xyz) xyz.push_back(report::int_json(v));
        ensure(polyforms::evaluate(form, *w.xyz) == cfg.n, "represent: witness does not evaluate to n");
    }
    doc["witness"] = xyz;
    write(cfg, out, render(cfg, doc, nullptr));
    return kExitOk;
}

int cmd_inert_prime(const RunConfig& cfg, std::ostream& out)
{
    const auto r = ch::least_inert_prime(cfg.D, cfg.M);
    Json doc = header(cfg);
    doc["D"] = report::int_json(cfg.D);
    doc["M"] = cfg.M;
    doc["q"] = r.q;
    doc["bound"] = r.H_bound.str();
    doc["ratio"] = r.ratio;
    write(cfg, out, render(cfg, doc, nullptr));
    return kExitOk;
}

int cmd_eq34(const RunConfig& cfg, std::ostream& out)
{
    require(cfg.m >= 4, "eq34 needs m >= 4");
    auto seq = rg::inert_sequence(cfg.m, cfg.coeffs[0], cfg.coeffs[1], cfg.coeffs[2]);
    const auto entries = rg::verify_eq34(seq, seq.K, seq.i0, seq.i0 + cfg.depth);
    Json doc = header(cfg);
    doc["m"] = report::int_json(cfg.m);
    doc["coeffs"] = {report::int_json(cfg.coeffs[0]), report::int_json(cfg.coeffs[1]), report::int_json(cfg.coeffs[2])};
    doc["q0"] = seq.q0;
    doc["K"] = report::to_json(seq.K);
    doc["threshold"] = report::to_json(seq.threshold_value);
    doc["i0"] = seq.i0;
    doc["q_i0"] = seq.i0 >= 1 ? Json(seq.q(seq.i0)) : Json(nullptr);
    doc["q_i0_plus_1"] = seq.q(seq.i0 + 1);
    Json rows = Json::array();
    bool all = true;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        rows.push_back({{"i", seq.i0 + k}, {"q_next", seq.q(seq.i0 + k + 1)}, {"holds", static_cast<bool>(entries[k])}});
        all = all && entries[k];
    }
    doc["entries"] = rows;
    doc["all"] = all;
    report::Table table{{"i", "q_next", "holds"}, {}};
    for (const auto& r : rows)
        table.rows.push_back({r["i"].dump(), r["q_next"].dump(), r["holds"].get<bool>() ? "1" : "0"});
    write(cfg, out, render(cfg, doc, &table));
    return all ? kExitOk : kExitInvariant;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out)
{
    const auto L = rg::bound_ledger(cfg.m, cfg.coeffs[0], cfg.coeffs[1], cfg.coeffs[2]);
    write(cfg, out, render(cfg, report::to_json(L), nullptr));
    return kExitOk;
}

int cmd_verify_charsum(const RunConfig& cfg, std::ostream& out)
{
    const auto sys = ch::decompose(cfg.D);
    require(sys.r() >= 1, "verify-charsum: the character system is empty");
    const auto lower = ch::lower_bound_S(cfg.H, sys.Gamma, cfg.M, sys.r());
    Json doc = header(cfg);
    doc["D"] = report::int_json(cfg.D);
    doc["Gamma"] = sys.Gamma;
    Json comps = Json::array();
    for (const auto& c : sys.components) comps.push_back(c.name());
    doc["components"] = comps;
    doc["M"] = cfg.M;
    doc["H"] = cfg.H;
    doc["x"] = cfg.x;
    doc["lower_bound"] = report::to_json(lower);
    doc["lower_bound_approx"] = enclosure::to_decimal(lower, 10);
    Json rows = Json::array();
    report::Table table{{"signs", "count", "lower_bound", "ok"}, {}};
    bool all = true;
    for (const auto& eta : ch::all_sign_assignments(sys.r())) {
        const auto count = ch::count_S(cfg.x, cfg.H, sys, eta, cfg.M);
        const bool ok = enclosure::BigRational(count) >= lower;
        all = all && ok;
        std::string signs;
        for (int e : eta.etas) signs += e > 0 ? '+' : '-';
        rows.push_back({{"signs", signs}, {"count", count}, {"ok", ok}});
        table.rows.push_back({signs, std::to_string(count), enclosure::to_decimal(lower, 10), ok ? "1" : "0"});
    }
    doc["assignments"] = rows;
    doc["all"] = all;
    write(cfg, out, render(cfg, doc, &table));
    return all ? kExitOk : kExitInvariant;
}

int cmd_verify_paper(const RunConfig& cfg, std::ostream& out)
{
    acceptance::Options o;
    o.seed = cfg.seed;
    o.threads = cfg.threads;
    const auto fmt = cfg.format.value_or(report::Format::plain);
    Json rows = Json::array();
    report::Table table{{"id", "name", "pass", "seconds", "limit", "detail"}, {}};
    std::ostringstream plain;
    auto results = acceptance::run_all(cfg.criteria, o, [&](const acceptance::Result& r) {
        if (fmt == report::Format::plain && cfg.out.empty()) out << acceptance::line(r) << std::endl;
        plain << acceptance::line(r) << "\n";
    });
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"limit", r.limit_seconds},
                        {"detail", r.detail}});
        table.rows.push_back({std::to_string(r.id), r.name, r.pass ? "1" : "0", std::to_string(r.seconds),
                              std::to_string(r.limit_seconds), r.detail});
    }
    Json doc = header(cfg);
    doc["seed"] = cfg.seed;
    doc["criteria"] = rows;
    doc["all"] = all;
    if (fmt == report::Format::plain) {
        if (!cfg.out.empty()) write(cfg, out, plain.str());
    } else {
        write(cfg, out, render(cfg, doc, &table));
    }
    return all ? kExitOk : kExitInvariant;
}

} // namespace

ParseResult parse_args(const std::vector<std::string>& args, const char* threads_env)
{
    CLI::App app{"Regular ternary polygonal forms: local/global representation, witness constructions and bounds",
                 "polyreg"};
    app.require_subcommand(1);
    app.fallthrough();
    Raw raw;
    RunConfig cfg;
    std::string threads_s;
    app.add_option("--format", raw.format, "json, csv or plain")->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--out", cfg.out, "write the report to this file");
    app.add_option("--threads", threads_s, "worker threads (default: THREADS or hardware)");
    app.add_option("--memory-budget", raw.budget, "working-memory budget per task, e.g. 512M");
    app.add_option("--seed", cfg.seed, "seed for randomized batteries");

    auto form_opts = [&](CLI::App* s, bool need_coeffs) {
        s->add_option("--m", raw.m, "polygon order m >= 3")->required();
        auto* o = s->add_option("--coeffs", raw.coeffs, "comma separated coefficients")->delimiter(',');
        if (need_coeffs) o->required();
    };
    auto* s_search = app.add_subcommand("search", "scan primitive triples a <= b <= c <= cmax");
    s_search->add_option("--m", raw.m)->required();
    s_search->add_option("--cmax", raw.c_max)->required();
    s_search->add_option("--nmax", raw.n_max)->required();
    auto* s_exc = app.add_subcommand("exceptions", "locally represented n <= nmax the form misses");
    form_opts(s_exc, true);
    s_exc->add_option("--nmax", raw.n_max)->required();
    s_exc->add_option("--limit", raw.limit, "stop after this many exceptions (0: no limit)");
    auto* s_loc = app.add_subcommand("local", "local representation of n, per prime");
    form_opts(s_loc, true);
    s_loc->add_option("--n", raw.n)->required();
    s_loc->add_option("--prime", raw.prime, "decide a single prime only");
    s_loc->add_option("--mode", raw.mode, "auto or full")->check(CLI::IsMember({"auto", "full"}));
    auto* s_rep = app.add_subcommand("represent", "find x with sum a_i p_m(x_i) = n");
    form_opts(s_rep, true);
    s_rep->add_option("--n", raw.n)->required();
    auto* s_inert = app.add_subcommand("inert-prime", "least prime q with (D/q) = -1 and q not dividing M");
    s_inert->add_option("--D", raw.D)->required();
    s_inert->add_option("--M", raw.M)->required();
    auto* s_eq = app.add_subcommand("eq34", "check K q0^2 q_{i+1} < (m-3) q_1...q_i on [i0, i0+depth]");
    form_opts(s_eq, true);
    s_eq->add_option("--depth", raw.depth);
    auto* s_bounds = app.add_subcommand("bounds", "explicit coefficient bounds for a triple");
    form_opts(s_bounds, true);
    auto* s_cs = app.add_subcommand("verify-charsum", "character-system counts against their lower bound");
    s_cs->add_option("--D", raw.D)->required();
    s_cs->add_option("--M", raw.M)->required();
    s_cs->add_option("--H", raw.H)->required();
    s_cs->add_option("--x", raw.x);
    auto* s_vp = app.add_subcommand("verify-paper", "run the acceptance battery");
    s_vp->add_option("--criteria", raw.criteria, "subset of criterion ids")->delimiter(',');

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        return {std::nullopt, kExitOk, app.help()};
    } catch (const CLI::CallForAllHelp&) {
        return {std::nullopt, kExitOk, app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        return usage(e.what());
    }

    const std::pair<CLI::App*, Command> subs[] = {
        {s_search, Command::search},          {s_exc, Command::exceptions}, {s_loc, Command::local},
        {s_rep, Command::represent},          {s_inert, Command::inert_prime}, {s_eq, Command::eq34},
        {s_bounds, Command::bounds},          {s_cs, Command::verify_charsum}, {s_vp, Command::verify_paper},
    };
    for (auto [s, c] : subs)
        if (s->parsed()) cfg.command = c;

    try {
        cfg.m = raw.m;
        for (auto a : raw.coeffs) cfg.coeffs.push_back(a);
        cfg.c_max = raw.c_max;
        cfg.n_max = raw.n_max;
        cfg.n = raw.n;
        if (raw.prime != 0) cfg.prime = raw.prime;
        cfg.full_mode = raw.mode == "full";
        cfg.limit = raw.limit;
        cfg.depth = raw.depth;
        cfg.D = raw.D;
        cfg.M = raw.M;
        cfg.H = raw.H;
        cfg.x = raw.x;
        cfg.criteria = raw.criteria;
        if (!raw.format.empty()) cfg.format = report::format_from_name(raw.format);
        cfg.memory_budget = parse_bytes(raw.budget);
        require(cfg.memory_budget >= 1, "--memory-budget must be positive");

        if (!threads_s.empty()) {
            cfg.threads = static_cast<unsigned>(std::stoul(threads_s));
        } else if (threads_env && *threads_env) {
            cfg.threads = static_cast<unsigned>(std::stoul(threads_env));
        } else {
            cfg.threads = std::max(1u, std::thread::hardware_concurrency());
        }
        require(cfg.threads >= 1 && cfg.threads <= 1024, "--threads must be in [1, 1024]");

        switch (cfg.command) {
        case Command::search:
            require(cfg.m >= 3, "--m must be at least 3");
            require(cfg.c_max >= 1, "--cmax must be positive");
            require(cfg.n_max >= 1, "--nmax must be positive");
            break;
        case Command::exceptions:
            check_form(cfg, 3, 3);
            require(cfg.n_max >= 1, "--nmax must be positive");
            break;
        case Command::local:
            check_form(cfg, 3, 3);
            require(cfg.n >= 0, "--n must be nonnegative");
            break;
        case Command::represent:
            check_form(cfg, 1, 3);
            require(cfg.n >= 0, "--n must be nonnegative");
            break;
        case Command::inert_prime: require(cfg.M >= 2, "--M must be at least 2"); break;
        case Command::eq34:
            check_form(cfg, 3, 3);
            require(cfg.m >= 4, "eq34 needs --m >= 4");
            break;
        case Command::bounds: check_form(cfg, 3, 3); break;
        case Command::verify_charsum:
            require(cfg.M >= 1 && cfg.H >= 1, "--M and --H must be positive");
            break;
        case Command::verify_paper:
            for (int id : cfg.criteria)
                require(id >= 1 && id <= acceptance::kCount, "--criteria ids must be in [1, 11]");
            break;
        }
    } catch (const DomainError& e) {
        return usage(e.what());
    } catch (const std::logic_error& e) {
        return usage(std::string("malformed number: ") + e.what());
    }
    return {cfg, kExitOk, {}};
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        switch (cfg.command) {
        case Command::search: return cmd_search(cfg, out);
        case Command::exceptions: return cmd_exceptions(cfg, out);
        case Command::local: return cmd_local(cfg, out);
        case Command::represent: return cmd_represent(cfg, out);
        case Command::inert_prime: return cmd_inert_prime(cfg, out);
        case Command::eq34: return cmd_eq34(cfg, out);
        case Command::bounds: return cmd_bounds(cfg, out);
        case Command::verify_charsum: return cmd_verify_charsum(cfg, out);
        case Command::verify_paper: return cmd_verify_paper(cfg, out);
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitPartial;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitInvariant;
}

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    auto parsed = parse_args(args, std::getenv("THREADS"));
    if (!parsed.config) {
        (parsed.exit_code == kExitOk ? std::cout : std::cerr) << parsed.message << "\n";
        return parsed.exit_code;
    }
    return run(*parsed.config, std::cout, std::cerr);
}

} // namespace polyreg::cli
