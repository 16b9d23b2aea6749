#pragma once

#include <string>

#include "json.hpp"
#include "mathieu/curve.hpp"
#include "mathieu/matcher.hpp"
#include "mathieu/oracle.hpp"
#include "mathieu/series.hpp"

namespace mathieu {

using nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {"var":"U","terms":[{"pow":-5,"log":0,"coeff":"-1/4"}],"trunc":21};
/// trunc is null for an exact series.
json to_json(const AsymptoticSeries& s);
AsymptoticSeries series_from_json(const json& j);

/// {"var":..,"trunc_eps":..,"floor_eps":..|null,"rows":[{"eps":e,"series":{..}}]}
json to_json(const EpsilonSeries& s);
EpsilonSeries eps_series_from_json(const json& j);

/// [{"coeff":"p/q","wpow":j,"dpow":k}, ...]
json to_json(const GeneratingOperator& op);
GeneratingOperator operator_from_json(int m, const json& j);

json to_json(const Poly& p);
Poly poly_from_json(const json& j);
json to_json(const RatFunc& r);
RatFunc ratfunc_from_json(const json& j);

json to_json(const NuRationalSeries& s);
NuRationalSeries nu_rational_from_json(const json& j);
json to_json(const InverseSeries& s);
InverseSeries inverse_from_json(const json& j);
json to_json(const LargeQSeries& s);
LargeQSeries large_q_from_json(const json& j);

/// {"nu":..,"method":..,"stable":..,"est_error":..,"nu_imag":..,"band_edge":..,"warnings":[..]}
json to_json(const FloquetResult& r);

std::string to_csv(const NuRationalSeries& s);
std::string to_csv(const InverseSeries& s);
std::string to_csv(const LargeQSeries& s);
std::string to_csv(const GeneratingOperator& op);

std::string to_latex(const NuRationalSeries& s);
std::string to_latex(const InverseSeries& s);
std::string to_latex(const LargeQSeries& s);
std::string to_latex(const GeneratingOperator& op);

}  // namespace mathieu
