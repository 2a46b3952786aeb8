#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "catq/experiment.hpp"
#include "catq/matrix_io.hpp"

using namespace catq;
using json = nlohmann::ordered_json;

namespace {

ErrorKind kind_of(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::EmptyInput;
}

}  // namespace

TEST_CASE("config parsing rejects bad input") {
  CHECK(kind_of(json{{"kind", "demo"}, {"bogus", 1}}) == ErrorKind::ConfigParse);
  CHECK(kind_of(json{{"kind", "nope"}}) == ErrorKind::ConfigParse);
  CHECK(kind_of(json{{"kind", "demo"}, {"t_a", 1.0}, {"t_b", 1.0}}) == ErrorKind::ConfigParse);
  CHECK(kind_of(json{{"kind", "demo"}, {"tolerances", {{"saturation", 1.0}}}}) == ErrorKind::ConfigParse);
  CHECK(kind_of(json{{"kind", "max_bound"}, {"hamiltonian", {{"source", "random"}, {"colour", 1}}}}) ==
        ErrorKind::ConfigParse);
  CHECK(kind_of(json{{"kind", "max_bound"}, {"hamiltonian", {{"source", "file"}, {"path", "/no/such/file"}}}}) ==
        ErrorKind::ConfigParse);
  CHECK(kind_of(json{{"kind", "oscillator"}, {"hamiltonian", {{"source", "random"}}}}) == ErrorKind::ConfigParse);
  CHECK(kind_of(json{{"kind", "demo"}, {"params", {{"steps", 0}}}}) == ErrorKind::ConfigParse);
}

TEST_CASE("config round trips through to_json") {
  const json j = {{"kind", "reality_sweep"},
                  {"hamiltonian", {{"source", "random"}, {"dim", 5}, {"cond_target", 20.0}}},
                  {"t_a", 0.5},
                  {"t_b", 2.0},
                  {"seed", 9},
                  {"tolerances", {{"max_imag_residual", 1e-8}}},
                  {"params", {{"n_observables", 4}, {"n_times", 3}}}};
  const ExperimentConfig cfg = parse_config(j);
  CHECK(cfg.hamiltonian.random.dim == 5);
  CHECK(cfg.tolerances.at("max_imag_residual") == 1e-8);
  CHECK(cfg.params.n_times == 3);
  const ExperimentConfig again = parse_config(to_json(cfg));
  CHECK(to_json(again).dump() == to_json(cfg).dump());
}

TEST_CASE("seed override from the environment") {
  ExperimentConfig cfg;
  cfg.seed = 3;
  ::setenv("CATQ_SEED", "77", 1);
  apply_seed_override(cfg);
  CHECK(cfg.seed == 77);
  ::setenv("CATQ_SEED", "7x", 1);
  CHECK_THROWS_AS(apply_seed_override(cfg), Error);
  ::unsetenv("CATQ_SEED");
  apply_seed_override(cfg);
  CHECK(cfg.seed == 77);
}

TEST_CASE("demo suite") {
  const ExperimentResult r = run_experiment(parse_config(json{{"kind", "demo"}}));
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("Q = [[1,-1],[-1,3]]") != std::string::npos);
  CHECK(r.summary["results"]["h_qa_norm"].get<double>() <= 1e-12);
}

TEST_CASE("max_bound suite on the 2x2 example") {
  const auto path = (std::filesystem::temp_directory_path() / "catq_tests_h.txt").string();
  CMatrix h(2, 2);
  h << Complex(0, 1), 1, 0, Complex(0, -1);
  save_hamiltonian(path, h);
  const ExperimentResult r =
      run_experiment(parse_config(json{{"kind", "max_bound"}, {"hamiltonian", {{"source", "file"}, {"path", path}}}}));
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("attained=2.718282 bound=2.718282") != std::string::npos);
  std::istringstream csv(r.csv);
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  CHECK(header == "t,overlap_re,overlap_im,attained,bound");
  CHECK(row.find("2.71828") != std::string::npos);
}

TEST_CASE("reality suite") {
  const ExperimentResult r = run_experiment(
      parse_config(json{{"kind", "reality_sweep"}, {"hamiltonian", {{"source", "random"}, {"dim", 8}}}, {"seed", 1}}));
  CHECK(r.exit_code == 0);
  CHECK(r.summary["results"]["max_imag_residual"].get<double>() <= 1e-9);
}

TEST_CASE("numerical failures produce exit 1 with a summary") {
  const auto path = (std::filesystem::temp_directory_path() / "catq_tests_jordan.txt").string();
  CMatrix h(2, 2);
  h << 1, 1, 0, 1;
  save_hamiltonian(path, h);
  const ExperimentResult r =
      run_experiment(parse_config(json{{"kind", "max_bound"}, {"hamiltonian", {{"source", "file"}, {"path", path}}}}));
  CHECK(r.exit_code == 1);
  CHECK(r.summary.contains("error"));
  CHECK(r.summary["pass"] == false);
}

TEST_CASE("verify is deterministic") {
  const ExperimentResult a = run_verify(4, 42, 1.0);
  const ExperimentResult b = run_verify(4, 42, 1.0);
  CHECK(a.exit_code == 0);
  CHECK(a.summary.dump(2) == b.summary.dump(2));
}
