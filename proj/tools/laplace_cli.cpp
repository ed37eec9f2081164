// Command-line front end: exact Laplace-expansion invariants, equivalence
// decisions with explicit witnesses, and the numeric quadrature check.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "laplace/io.hpp"
#include "laplace/normalize.hpp"
#include "laplace/one_dim.hpp"
#include "laplace/quadrature.hpp"

namespace {

using laplace::Json;

std::vector<double> parse_n_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw std::invalid_argument("empty n list");
  return out;
}

int cmd_invariants(const std::string& file, int orders, bool reduced) {
  laplace::ProblemInstance inst = laplace::load_instance_file(file);
  laplace::InvariantSequence seq;
  seq.dim = inst.pair.dim();
  seq.max_order = orders;
  for (int i = 0; i <= orders; ++i)
    seq.values.push_back(reduced
                             ? laplace::lambda_reduced(inst.pair.b(), i)
                             : laplace::lambda_general(inst.pair, i));
  std::cout << laplace::invariant_sequence_to_json(seq).dump(2) << "\n";
  return 0;
}

int cmd_equiv(const std::string& fa, const std::string& fc, int degree,
              const std::string& witness_out) {
  laplace::ProblemInstance a = laplace::load_instance_file(fa);
  laplace::ProblemInstance c = laplace::load_instance_file(fc);
  laplace::EquivalenceVerdict v =
      laplace::decide_equivalence(a.pair, c.pair, degree);
  std::cout << laplace::verdict_to_json(v).dump(2) << "\n";
  if (v.equivalent && !witness_out.empty())
    laplace::save_json_file(witness_out, laplace::witness_to_json(*v.witness));
  return v.equivalent ? 0 : 1;
}

int cmd_equiv1d(const std::string& fa, const std::string& fc, int degree,
                const std::string& witness_out) {
  laplace::ProblemInstance a = laplace::load_instance_file(fa);
  laplace::ProblemInstance c = laplace::load_instance_file(fc);
  laplace::EquivalenceVerdict v =
      laplace::decide_equivalence_1d(a.pair, c.pair, degree);
  std::cout << laplace::verdict_to_json(v).dump(2) << "\n";
  if (v.equivalent && !witness_out.empty())
    laplace::save_json_file(witness_out, laplace::witness_to_json(*v.witness));
  return v.equivalent ? 0 : 1;
}

int cmd_morse(const std::string& file) {
  laplace::ProblemInstance inst = laplace::load_instance_file(file);
  laplace::PhylonMap phi = laplace::morse_normalize(inst.pair.f());
  std::cout << laplace::phylon_to_json(phi).dump(2) << "\n";
  return 0;
}

int cmd_lambda1d(const std::string& file, int orders) {
  laplace::ProblemInstance inst = laplace::load_instance_file(file);
  laplace::LambdaSequence seq = laplace::lambda_1d(inst.pair, orders);
  std::cout << laplace::lambda_sequence_to_json(seq).dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& file, const std::string& ns, int orders,
               int points, const std::string& radius) {
  laplace::ProblemInstance inst = laplace::load_instance_file(file);
  laplace::QuadratureConfig cfg;
  if (points > 0) cfg.points = points;
  if (radius != "auto") cfg.radius = std::stod(radius);
  laplace::QuadratureReport rep =
      laplace::compare_expansion(inst.pair, orders, parse_n_list(ns), cfg);
  std::cout << laplace::report_to_json(rep).dump(2) << "\n";
  return 0;
}

int cmd_act(const std::string& file, const std::string& psi_file,
            const std::string& out) {
  laplace::ProblemInstance inst = laplace::load_instance_file(file);
  std::optional<laplace::PhylonMap> psi = inst.psi;
  if (!psi_file.empty()) {
    std::ifstream in(psi_file);
    if (!in) throw std::invalid_argument("cannot open " + psi_file);
    psi = laplace::phylon_from_json(Json::parse(in));
  }
  if (!psi)
    throw std::invalid_argument("act: no psi in the instance and none supplied");
  laplace::PairInstance moved = laplace::act_on_pair(*psi, inst.pair);
  Json j = laplace::instance_to_json(laplace::ProblemInstance{moved, {}});
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    laplace::save_json_file(out, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffeomorphism invariants of the Laplace expansion"};
  app.require_subcommand(1);

  std::string in_a, in_c, witness_out, psi_file, out_file;
  std::string n_list = "10,100,1000", radius = "auto";
  int orders = 6, degree = 8, points = 0;
  bool reduced = false;

  auto* inv = app.add_subcommand("invariants", "Lambda_0..Lambda_K of an instance");
  inv->add_option("instance", in_a)->required();
  inv->add_option("--orders", orders);
  inv->add_flag("--reduced", reduced, "use the f = q complete-trace formula");

  auto* eq = app.add_subcommand("equiv", "decide equivalence, d > 1");
  eq->add_option("a", in_a)->required();
  eq->add_option("c", in_c)->required();
  eq->add_option("--degree", degree);
  eq->add_option("--witness", witness_out);

  auto* eq1 = app.add_subcommand("equiv1d", "decide P_0(1)-equivalence, d = 1");
  eq1->add_option("a", in_a)->required();
  eq1->add_option("c", in_c)->required();
  eq1->add_option("--degree", degree);
  eq1->add_option("--witness", witness_out);

  auto* mo = app.add_subcommand("morse", "Morse normalizer phi with q(phi(x)) = f(x)");
  mo->add_option("instance", in_a)->required();

  auto* la = app.add_subcommand("lambda1d", "refined d = 1 invariants");
  la->add_option("instance", in_a)->required();
  la->add_option("--orders", orders);

  auto* ve = app.add_subcommand("verify", "numeric quadrature report");
  ve->add_option("instance", in_a)->required();
  ve->add_option("--n", n_list);
  ve->add_option("--orders", orders);
  ve->add_option("--points", points);
  ve->add_option("--radius", radius);

  auto* ac = app.add_subcommand("act", "apply a phylon map to an instance");
  ac->add_option("instance", in_a)->required();
  ac->add_option("--psi", psi_file);
  ac->add_option("-o,--output", out_file);

  CLI11_PARSE(app, argc, argv);

  try {
    if (inv->parsed()) return cmd_invariants(in_a, orders, reduced);
    if (eq->parsed()) return cmd_equiv(in_a, in_c, degree, witness_out);
    if (eq1->parsed()) return cmd_equiv1d(in_a, in_c, degree, witness_out);
    if (mo->parsed()) return cmd_morse(in_a);
    if (la->parsed()) return cmd_lambda1d(in_a, orders);
    if (ve->parsed()) return cmd_verify(in_a, n_list, orders, points, radius);
    if (ac->parsed()) return cmd_act(in_a, psi_file, out_file);
  } catch (const std::exception& e) {
    Json err;
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 2;
  }
  return 2;
}
