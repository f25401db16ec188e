#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latcensus/bounded_real.hpp"
#include "latcensus/counting.hpp"
#include "latcensus/groups.hpp"
#include "latcensus/lattice.hpp"

namespace latcensus::io {

using Json = nlohmann::ordered_json;

// {"value": v, "err": e}; both as doubles, the error rounded upward.
Json to_json(const ErrBoundedReal& x);
// {"n": n, "rows": [[...], ...]}
Json to_json(const lattice::HnfBasis& b);
lattice::HnfBasis hnf_from_json(const Json& j);
Json to_json(const lattice::InvariantFactors& f);
// Counts are decimal strings.
Json to_json(const counting::DensityReport& r);
Json to_json(const arith::RationalSum& s);

// Compact single-line dump.
std::string dump(const Json& j);

// One CSV row per value, comma separated, no quoting needed for numbers.
void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);
std::string format_real(long double x, int digits = 17);

}  // namespace latcensus::io
