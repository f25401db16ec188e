#include "latcensus/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace latcensus::io {

namespace {

double round_up(long double e) {
  const auto d = static_cast<double>(e);
  return static_cast<long double>(d) < e ? std::nextafter(d, INFINITY) : d;
}

}  // namespace

Json to_json(const ErrBoundedReal& x) {
  Json j;
  j["value"] = static_cast<double>(x.value);
  // The double rounding of value adds up to half an ulp of a double.
  const long double from_value = std::fabs(x.value - static_cast<long double>(static_cast<double>(x.value)));
  j["err"] = round_up(x.err + from_value);
  return j;
}

Json to_json(const lattice::HnfBasis& b) {
  Json j;
  j["n"] = b.n();
  Json rows = Json::array();
  for (const auto& r : b.rows()) rows.push_back(r);
  j["rows"] = std::move(rows);
  return j;
}

lattice::HnfBasis hnf_from_json(const Json& j) {
  const auto n = j.at("n").get<unsigned>();
  auto rows = j.at("rows").get<lattice::Matrix>();
  if (rows.size() != n) throw std::invalid_argument("hnf_from_json: row count != n");
  return lattice::HnfBasis::from_rows(rows);
}

Json to_json(const lattice::InvariantFactors& f) {
  Json a = Json::array();
  for (const auto& d : f.chain) a.push_back(d.get_str());
  return a;
}

Json to_json(const arith::RationalSum& s) {
  Json j;
  j["exact"] = s.exact.has_value();
  if (s.exact) j["rational"] = s.exact->get_str();
  j["approx"] = to_json(s.approx);
  return j;
}

Json to_json(const counting::DensityReport& r) {
  Json j;
  j["n"] = r.n;
  j["V"] = r.V;
  j["count_cocyclic"] = r.count_cocyclic.get_str();
  j["count_squarefree"] = r.count_squarefree.get_str();
  j["count_total"] = r.count_total.get_str();
  if (r.oracle_cocyclic) {
    Json o;
    o["count_cocyclic"] = r.oracle_cocyclic->get_str();
    o["count_squarefree"] = r.oracle_squarefree->get_str();
    o["count_total"] = r.oracle_total->get_str();
    Json by_rank;
    for (const auto& [m, c] : r.counts_by_rank) by_rank[std::to_string(m)] = c.get_str();
    o["counts_by_rank"] = std::move(by_rank);
    o["agrees"] = r.oracle_agrees();
    j["oracle"] = std::move(o);
  }
  Json pred;
  pred["note"] = "leading-order terms only";
  pred["cocyclic"] = to_json(r.predicted_cocyclic);
  pred["squarefree"] = to_json(r.predicted_squarefree);
  pred["total"] = to_json(r.predicted_total);
  j["predicted"] = std::move(pred);
  Json ratios;
  ratios["cocyclic_fraction"] = to_json(r.cocyclic_fraction);
  ratios["squarefree_fraction"] = to_json(r.squarefree_fraction);
  ratios["cocyclic_over_prediction"] = to_json(r.cocyclic_ratio);
  ratios["squarefree_over_prediction"] = to_json(r.squarefree_ratio);
  ratios["total_over_prediction"] = to_json(r.total_ratio);
  ratios["limit_cocyclic_fraction"] = to_json(r.limit_cocyclic_fraction);
  ratios["limit_squarefree_fraction"] = to_json(r.limit_squarefree_fraction);
  j["ratios"] = std::move(ratios);
  return j;
}

std::string dump(const Json& j) { return j.dump(); }

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << '\n';
}

std::string format_real(long double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
  return buf;
}

}  // namespace latcensus::io
