#include "laplace/io.hpp"

#include <fstream>
#include <stdexcept>

namespace laplace {

Json series_to_json(const TruncatedSeries& s) {
  Json terms = Json::array();
  for (const auto& [a, c] : s.coeffs()) {
    Json t;
    t["alpha"] = a.exp;
    t["coeff"] = rat_str(c);
    terms.push_back(t);
  }
  Json j;
  j["dim"] = s.dim();
  j["trunc"] = s.trunc();
  j["terms"] = terms;
  return j;
}

TruncatedSeries series_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("trunc"))
    throw std::invalid_argument("series literal needs dim and trunc");
  TruncatedSeries s(j.at("dim").get<int>(), j.at("trunc").get<int>());
  for (const auto& t : j.value("terms", Json::array())) {
    MultiIndex a(t.at("alpha").get<std::vector<int>>());
    if (a.dim() != s.dim())
      throw std::invalid_argument("series term has wrong alpha length");
    for (int e : a.exp)
      if (e < 0) throw std::invalid_argument("negative exponent in series term");
    s.set_coeff(a, parse_rat(t.at("coeff").get<std::string>()));
  }
  return s;
}

Json phylon_to_json(const PhylonMap& p) {
  Json comps = Json::array();
  for (const auto& c : p.components()) comps.push_back(series_to_json(c));
  Json j;
  j["dim"] = p.dim();
  j["trunc"] = p.trunc();
  j["components"] = comps;
  return j;
}

PhylonMap phylon_from_json(const Json& j) {
  std::vector<TruncatedSeries> comps;
  for (const auto& c : j.at("components")) comps.push_back(series_from_json(c));
  return PhylonMap(j.at("dim").get<int>(), j.at("trunc").get<int>(),
                   std::move(comps));
}

Json instance_to_json(const ProblemInstance& inst) {
  Json j;
  j["dim"] = inst.pair.dim();
  j["trunc"] = std::max(inst.pair.f().trunc(), inst.pair.b().trunc());
  j["f"] = series_to_json(inst.pair.f());
  j["b"] = series_to_json(inst.pair.b());
  if (inst.psi) j["psi"] = phylon_to_json(*inst.psi);
  return j;
}

ProblemInstance instance_from_json(const Json& j) {
  TruncatedSeries f = series_from_json(j.at("f"));
  TruncatedSeries b = series_from_json(j.at("b"));
  if (j.contains("dim") && j.at("dim").get<int>() != f.dim())
    throw std::invalid_argument("instance dim disagrees with f");
  std::optional<PhylonMap> psi;
  if (j.contains("psi")) psi = phylon_from_json(j.at("psi"));
  return ProblemInstance{PairInstance(std::move(f), std::move(b)), std::move(psi)};
}

Json invariant_to_json(const ScaledInvariant& v) {
  Json pre;
  pre["two_pi_exp"] = std::to_string(v.dim) + "/2";
  pre["det_f"] = rat_str(v.det_f);
  Json j;
  j["order"] = v.order;
  j["prefactor"] = pre;
  j["rational_part"] = rat_str(v.rational_part);
  return j;
}

Json invariant_sequence_to_json(const InvariantSequence& seq) {
  Json arr = Json::array();
  for (const auto& v : seq.values) arr.push_back(invariant_to_json(v));
  return arr;
}

Json witness_to_json(const EquivalenceWitness& w) {
  Json j = phylon_to_json(w.psi);
  j["verified_to"] = w.verified_to;
  return j;
}

EquivalenceWitness witness_from_json(const Json& j) {
  return EquivalenceWitness{phylon_from_json(j), j.at("verified_to").get<int>()};
}

Json verdict_to_json(const EquivalenceVerdict& v) {
  Json j;
  j["equivalent"] = v.equivalent;
  if (v.failure_order) j["failure_order"] = *v.failure_order;
  if (v.witness) j["witness"] = witness_to_json(*v.witness);
  return j;
}

Json lambda_sequence_to_json(const LambdaSequence& seq) {
  Json vals = Json::array();
  for (const auto& v : seq.values) {
    Json e;
    e["a"] = rat_str(v.rat_part());
    e["b"] = rat_str(v.irr_part());
    vals.push_back(e);
  }
  Json j;
  j["radicand"] = rat_str(seq.radicand);
  j["values"] = vals;
  return j;
}

Json report_to_json(const QuadratureReport& rep) {
  Json j;
  j["partial_order"] = rep.partial_order;
  j["n_values"] = rep.n_values;
  j["numeric_integrals"] = rep.numeric_integrals;
  j["series_values"] = rep.series_values;
  j["residuals"] = rep.residuals;
  j["fitted_slope"] = rep.fitted_slope;
  return j;
}

ProblemInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j = Json::parse(in);
  return instance_from_json(j);
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace laplace
