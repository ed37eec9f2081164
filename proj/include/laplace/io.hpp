#ifndef LAPLACE_IO_HPP
#define LAPLACE_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "laplace/invariants.hpp"
#include "laplace/normalize.hpp"
#include "laplace/one_dim.hpp"
#include "laplace/phylon.hpp"
#include "laplace/quadrature.hpp"

namespace laplace {

// ordered_json keeps insertion order, so emitted fields diff stably
using Json = nlohmann::ordered_json;

Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);

Json phylon_to_json(const PhylonMap& p);
PhylonMap phylon_from_json(const Json& j);

/// An (f, b) problem instance, optionally carrying a transport map psi.
struct ProblemInstance {
  PairInstance pair;
  std::optional<PhylonMap> psi;
};

Json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const Json& j);

Json invariant_to_json(const ScaledInvariant& v);
Json invariant_sequence_to_json(const InvariantSequence& seq);

Json witness_to_json(const EquivalenceWitness& w);
EquivalenceWitness witness_from_json(const Json& j);
Json verdict_to_json(const EquivalenceVerdict& v);

Json lambda_sequence_to_json(const LambdaSequence& seq);

Json report_to_json(const QuadratureReport& rep);

ProblemInstance load_instance_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace laplace

#endif
