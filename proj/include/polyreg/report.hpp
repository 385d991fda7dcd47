#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "polyreg/enclosure.hpp"
#include "polyreg/local.hpp"
#include "polyreg/rational.hpp"
#include "polyreg/regularity.hpp"

/// JSON, CSV and plain-text serialization of results. Every report type
/// has a matching *_from_json that inverts to_json exactly.
namespace polyreg::report {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, plain };
Format format_from_name(const std::string& s);
const char* format_name(Format f);

/// Integers that fit in 64 bits are JSON numbers, larger ones strings.
Json int_json(i128 v);
i128 int_from_json(const Json& j);

Json to_json(const Rational& r); // "p/q" or an integer
Rational rational_from_json(const Json& j);

Json to_json(const enclosure::BigRational& r); // "p/q" string, exact
enclosure::BigRational bigrational_from_json(const Json& j);

Json to_json(const enclosure::Interval& iv); // {lo, hi, approx}
enclosure::Interval interval_from_json(const Json& j);

Json to_json(const regularity::BoundLedger& L);
regularity::BoundLedger ledger_from_json(const Json& j);

Json to_json(const regularity::ExceptionReport& r);
regularity::ExceptionReport exception_report_from_json(const Json& j);

Json to_json(const regularity::SearchReport& r);
regularity::SearchReport search_report_from_json(const Json& j);

Json to_json(const regularity::WitnessIntegers& w);
regularity::WitnessIntegers witness_from_json(const Json& j);

Json to_json(const local::LocalVerdict& v);
local::LocalVerdict local_verdict_from_json(const Json& j);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// One row per triple.
Table search_table(const regularity::SearchReport& r);
/// One row per exception.
Table exceptions_table(const regularity::ExceptionReport& r);
/// Generic (path, value) rows for any document; nested keys joined by '.'.
Table flatten(const Json& doc);

std::string render_csv(const Table& t);
/// Indented "key: value" lines.
std::string render_plain(const Json& doc);

} // namespace polyreg::report
