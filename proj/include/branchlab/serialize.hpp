#pragma once

// JSON and CSV forms of the reports. Complex numbers become [re, im] pairs and
// exact rationals become "p/q" decimal strings.

#include <string>
#include <string_view>

#include <json.hpp>

#include "branchlab/identities.hpp"
#include "branchlab/polycore.hpp"
#include "branchlab/quadrature.hpp"
#include "branchlab/roots.hpp"
#include "branchlab/series.hpp"

namespace branchlab {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const Rational& q);
Json to_json(const RationalPoly& p);
Json to_json(const EvalReport& r);
Json to_json(const SeriesFrame& f);
Json to_json(const SeriesResult& r);
Json to_json(const SumReport& r);
Json to_json(const IntegralDetail& d);
Json to_json(const JensenReport& r);
Json to_json(const RootReport& r);
Json to_json(const FitReport& f);
Json to_json(const JthRootRow& row);
Json to_json(const PolyVerifyReport& r);

// CSV of result[rows_key] (an array of objects, one row each, header from the
// first row's keys) or, when rows_key is empty or absent, one "key,value" row
// per top-level entry.
std::string to_csv(const Json& result, std::string_view rows_key = {});

// "key: value" lines, nested objects flattened with dotted keys.
std::string to_text(const Json& doc);

}  // namespace branchlab
