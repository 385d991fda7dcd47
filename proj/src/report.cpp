#include "polyreg/report.hpp"

#include <limits>
#include <sstream>

#include "polyreg/errors.hpp"

namespace polyreg::report {

using enclosure::BigInt;
using enclosure::BigRational;
using enclosure::Interval;
namespace rg = polyreg::regularity;

Format format_from_name(const std::string& s)
{
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "plain") return Format::plain;
    throw DomainError("unknown format: " + s);
}

const char* format_name(Format f)
{
    switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::plain: return "plain";
    }
    return "?";
}

Json int_json(i128 v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return to_string(v);
}

i128 int_from_json(const Json& j)
{
    if (j.is_number_unsigned()) return static_cast<i128>(j.get<std::uint64_t>());
    if (j.is_number_integer()) return static_cast<i128>(j.get<std::int64_t>());
    if (j.is_string()) return parse_i128(j.get<std::string>());
    throw DomainError("expected an integer in JSON, got " + j.dump());
}

Json to_json(const Rational& r)
{
    if (r.is_integer()) return int_json(r.num());
    return to_string(r.num()) + "/" + to_string(r.den());
}

Rational rational_from_json(const Json& j)
{
    if (!j.is_string()) return Rational(int_from_json(j));
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_i128(s));
    return Rational(parse_i128(s.substr(0, slash)), parse_i128(s.substr(slash + 1)));
}

Json to_json(const BigRational& r)
{
    return numerator(r).str() + "/" + denominator(r).str();
}

BigRational bigrational_from_json(const Json& j)
{
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return BigRational(BigInt(s));
    return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

Json to_json(const Interval& iv)
{
    return Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}, {"approx", enclosure::to_decimal(iv.hi, 15)}};
}

Interval interval_from_json(const Json& j)
{
    return {bigrational_from_json(j.at("lo")), bigrational_from_json(j.at("hi"))};
}

namespace {

Json int_array(const std::vector<std::uint64_t>& v)
{
    Json out = Json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

std::vector<std::uint64_t> u64_vector(const Json& j)
{
    std::vector<std::uint64_t> out;
    for (const auto& x : j) out.push_back(x.get<std::uint64_t>());
    return out;
}

Json coeff_array(std::span<const i128> v)
{
    Json out = Json::array();
    for (auto x : v) out.push_back(int_json(x));
    return out;
}

std::string cell(const Json& j)
{
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

} // namespace

Json to_json(const rg::BoundLedger& L)
{
    return Json{
        {"m", int_json(L.m)},
        {"a", int_json(L.a)},
        {"b", int_json(L.b)},
        {"c", int_json(L.c)},
        {"C0", to_json(L.C0)},
        {"C1", to_json(L.C1)},
        {"C2", to_json(L.C2)},
        {"C3", to_json(L.C3)},
        {"C4", to_json(L.C4)},
        {"K", to_json(L.K)},
        {"P_abc", int_json(L.P_abc)},
        {"rho_abc", to_json(L.rho_abc)},
        {"rhs_a", to_json(L.rhs_a)},
        {"rhs_b", to_json(L.rhs_b)},
        {"rhs_ab", to_json(L.rhs_ab)},
        {"rhs_c", to_json(L.rhs_c)},
        {"rhs_final", to_json(L.rhs_final)},
        {"a_ok", L.a_ok},
        {"b_ok", L.b_ok},
        {"c_ok", L.c_ok},
        {"abc_ok", L.abc_ok},
        {"final_ok", L.final_ok},
    };
}

rg::BoundLedger ledger_from_json(const Json& j)
{
    rg::BoundLedger L;
    L.m = int_from_json(j.at("m"));
    L.a = int_from_json(j.at("a"));
    L.b = int_from_json(j.at("b"));
    L.c = int_from_json(j.at("c"));
    L.C0 = interval_from_json(j.at("C0"));
    L.C1 = interval_from_json(j.at("C1"));
    L.C2 = interval_from_json(j.at("C2"));
    L.C3 = interval_from_json(j.at("C3"));
    L.C4 = interval_from_json(j.at("C4"));
    L.K = rational_from_json(j.at("K"));
    L.P_abc = int_from_json(j.at("P_abc"));
    L.rho_abc = rational_from_json(j.at("rho_abc"));
    L.rhs_a = rational_from_json(j.at("rhs_a"));
    L.rhs_b = rational_from_json(j.at("rhs_b"));
    L.rhs_ab = rational_from_json(j.at("rhs_ab"));
    L.rhs_c = interval_from_json(j.at("rhs_c"));
    L.rhs_final = interval_from_json(j.at("rhs_final"));
    L.a_ok = j.at("a_ok").get<bool>();
    L.b_ok = j.at("b_ok").get<bool>();
    L.c_ok = j.at("c_ok").get<bool>();
    L.abc_ok = j.at("abc_ok").get<bool>();
    L.final_ok = j.at("final_ok").get<bool>();
    return L;
}

Json to_json(const rg::ExceptionReport& r)
{
    return Json{
        {"m", int_json(r.form.m)},
        {"coeffs", coeff_array(r.form.coeffs)},
        {"N_max", r.N_max},
        {"scanned_to", r.scanned_to},
        {"scan_complete", r.scan_complete},
        {"truncated", r.truncated},
        {"exceptions", int_array(r.exceptions)},
        {"note", "candidate check only: every n <= scanned_to that is locally represented was tested"},
    };
}

rg::ExceptionReport exception_report_from_json(const Json& j)
{
    rg::ExceptionReport r;
    std::vector<i128> coeffs;
    for (const auto& x : j.at("coeffs")) coeffs.push_back(int_from_json(x));
    r.form = polyforms::PolygonalForm(int_from_json(j.at("m")), coeffs);
    r.N_max = j.at("N_max").get<std::uint64_t>();
    r.scanned_to = j.at("scanned_to").get<std::uint64_t>();
    r.scan_complete = j.at("scan_complete").get<bool>();
    r.truncated = j.at("truncated").get<bool>();
    r.exceptions = u64_vector(j.at("exceptions"));
    return r;
}

Json to_json(const rg::SearchReport& r)
{
    Json triples = Json::array();
    for (const auto& t : r.triples) {
        Json e{{"a", int_json(t.abc[0])},
               {"b", int_json(t.abc[1])},
               {"c", int_json(t.abc[2])},
               {"status", rg::status_name(t.status)},
               {"exceptions", int_array(t.exceptions)}};
        if (!t.G.empty()) e["G"] = int_array(t.G);
        e["ledger"] = t.ledger ? to_json(*t.ledger) : Json(nullptr);
        triples.push_back(std::move(e));
    }
    Json wm = nullptr;
    if (r.watermark) wm = coeff_array(*r.watermark);
    return Json{
        {"m", int_json(r.m)},
        {"params", {{"c_max", int_json(r.c_max)}, {"N_max", r.N_max}}},
        {"complete", r.complete},
        {"note", "candidate-regular means no exception up to N_max; it is not a proof of regularity"},
        {"triples", std::move(triples)},
        {"watermark", std::move(wm)},
    };
}

rg::SearchReport search_report_from_json(const Json& j)
{
    rg::SearchReport r;
    r.m = int_from_json(j.at("m"));
    r.c_max = int_from_json(j.at("params").at("c_max"));
    r.N_max = j.at("params").at("N_max").get<std::uint64_t>();
    r.complete = j.at("complete").get<bool>();
    for (const auto& e : j.at("triples")) {
        rg::TripleResult t;
        t.abc = {int_from_json(e.at("a")), int_from_json(e.at("b")), int_from_json(e.at("c"))};
        t.status = rg::status_from_name(e.at("status").get<std::string>());
        t.exceptions = u64_vector(e.at("exceptions"));
        if (e.contains("G")) t.G = u64_vector(e.at("G"));
        if (!e.at("ledger").is_null()) t.ledger = ledger_from_json(e.at("ledger"));
        r.triples.push_back(std::move(t));
    }
    if (!j.at("watermark").is_null()) {
        const auto& w = j.at("watermark");
        r.watermark = std::array<i128, 3>{int_from_json(w.at(0)), int_from_json(w.at(1)), int_from_json(w.at(2))};
    }
    return r;
}

Json to_json(const rg::WitnessIntegers& w)
{
    Json out{
        {"kind", w.kind == rg::WitnessIntegers::Kind::Ni ? "Ni" : "N0-pair"},
        {"m", int_json(w.m)},
        {"a", int_json(w.a)},
        {"b", int_json(w.b)},
        {"c", int_json(w.c)},
        {"i", w.i},
        {"q", w.q},
        {"N", int_json(w.N)},
        {"n", int_json(w.n)},
        {"v", int_json(w.v)},
    };
    auto opt = [](const std::optional<i128>& v) { return v ? int_json(*v) : Json(nullptr); };
    out["N_bar"] = opt(w.N_bar);
    out["n_bar"] = opt(w.n_bar);
    out["v_bar"] = opt(w.v_bar);
    out["w0"] = int_json(w.w0);
    out["u"] = int_json(w.u);
    out["s"] = int_json(w.s);
    out["certificates"] = w.certificates;
    return out;
}

rg::WitnessIntegers witness_from_json(const Json& j)
{
    rg::WitnessIntegers w;
    w.kind = j.at("kind").get<std::string>() == "Ni" ? rg::WitnessIntegers::Kind::Ni
                                                     : rg::WitnessIntegers::Kind::N0_pair;
    w.m = int_from_json(j.at("m"));
    w.a = int_from_json(j.at("a"));
    w.b = int_from_json(j.at("b"));
    w.c = int_from_json(j.at("c"));
    w.i = j.at("i").get<std::size_t>();
    w.q = j.at("q").get<std::uint64_t>();
    w.N = int_from_json(j.at("N"));
    w.n = int_from_json(j.at("n"));
    w.v = int_from_json(j.at("v"));
    auto opt = [](const Json& v) { return v.is_null() ? std::optional<i128>{} : std::optional<i128>{int_from_json(v)}; };
    w.N_bar = opt(j.at("N_bar"));
    w.n_bar = opt(j.at("n_bar"));
    w.v_bar = opt(j.at("v_bar"));
    w.w0 = int_from_json(j.at("w0"));
    w.u = int_from_json(j.at("u"));
    w.s = int_from_json(j.at("s"));
    w.certificates = j.at("certificates").get<std::vector<std::string>>();
    return w;
}

Json to_json(const local::LocalVerdict& v)
{
    Json primes = Json::array();
    for (const auto& [p, d] : v.per_prime) {
        Json e{{"p", p}, {"represented", d.represented}, {"rule", local::rule_name(d.rule)}};
        if (d.certificate) {
            e["certificate"] = Json{{"residues", coeff_array(d.certificate->residues)},
                                    {"t", d.certificate->t},
                                    {"index", d.certificate->index}};
        }
        primes.push_back(std::move(e));
    }
    return Json{{"locally_represented", v.verdict}, {"narrowed", v.narrowed}, {"primes", std::move(primes)}};
}

local::LocalVerdict local_verdict_from_json(const Json& j)
{
    local::LocalVerdict v;
    v.verdict = j.at("locally_represented").get<bool>();
    v.narrowed = j.at("narrowed").get<bool>();
    for (const auto& e : j.at("primes")) {
        local::LocalDecision d;
        d.represented = e.at("represented").get<bool>();
        d.rule = local::rule_from_name(e.at("rule").get<std::string>());
        if (e.contains("certificate")) {
            local::HenselCertificate c;
            for (const auto& x : e.at("certificate").at("residues")) c.residues.push_back(int_from_json(x));
            c.t = e.at("certificate").at("t").get<unsigned>();
            c.index = e.at("certificate").at("index").get<unsigned>();
            d.certificate = c;
        }
        v.per_prime[e.at("p").get<std::uint64_t>()] = d;
    }
    return v;
}

Table search_table(const rg::SearchReport& r)
{
    Table t;
    t.columns = {"m", "a", "b", "c", "status", "exceptions", "a_ok", "b_ok", "c_ok", "abc_ok", "N_max"};
    for (const auto& x : r.triples) {
        std::string ex;
        for (auto n : x.exceptions) ex += (ex.empty() ? "" : ";") + std::to_string(n);
        auto flag = [&](bool rg::BoundLedger::*f) { return x.ledger ? ((*x.ledger).*f ? "1" : "0") : ""; };
        t.rows.push_back({to_string(r.m), to_string(x.abc[0]), to_string(x.abc[1]), to_string(x.abc[2]),
                          rg::status_name(x.status), ex, flag(&rg::BoundLedger::a_ok), flag(&rg::BoundLedger::b_ok),
                          flag(&rg::BoundLedger::c_ok), flag(&rg::BoundLedger::abc_ok), std::to_string(r.N_max)});
    }
    return t;
}

Table exceptions_table(const rg::ExceptionReport& r)
{
    Table t;
    t.columns = {"m", "coeffs", "n"};
    std::string coeffs;
    for (auto c : r.form.coeffs) coeffs += (coeffs.empty() ? "" : ";") + to_string(c);
    for (auto n : r.exceptions) t.rows.push_back({to_string(r.form.m), coeffs, std::to_string(n)});
    return t;
}

namespace {

void flatten_into(const Json& j, const std::string& path, Table& t)
{
    if (j.is_object() && !j.empty()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_into(it.value(), path.empty() ? it.key() : path + "." + it.key(), t);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten_into(j[i], path + "." + std::to_string(i), t);
    } else {
        t.rows.push_back({path, cell(j)});
    }
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void plain_into(const Json& j, int depth, std::ostringstream& os)
{
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        const std::string key = j.is_object() ? it.key() : "-";
        if ((v.is_object() || v.is_array()) && !v.empty() && !(v.is_array() && !v.front().is_structured())) {
            os << pad << key << ":\n";
            plain_into(v, depth + 1, os);
        } else {
            os << pad << key << ": " << cell(v) << "\n";
        }
    }
}

} // namespace

Table flatten(const Json& doc)
{
    Table t;
    t.columns = {"key", "value"};
    flatten_into(doc, "", t);
    return t;
}

std::string render_csv(const Table& t)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string render_plain(const Json& doc)
{
    std::ostringstream os;
    plain_into(doc, 0, os);
    return os.str();
}

} // namespace polyreg::report
