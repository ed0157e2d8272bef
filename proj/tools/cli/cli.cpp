// Copyright 2026 The telepovm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "telepovm/errors.hpp"
#include "telepovm/povm.hpp"
#include "telepovm/protocols.hpp"
#include "telepovm/sampling.hpp"
#include "telepovm/states.hpp"
#include "telepovm/steering.hpp"

namespace telepovm::cli {

namespace {

constexpr double kStopSlack = 1e-12;
constexpr std::size_t kMaxSweepPoints = 1'000'000;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(std::uint64_t u) const { return std::to_string(u); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

nlohmann::ordered_json json_value(const Value& v) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(std::int64_t i) const { return i; }
    nlohmann::ordered_json operator()(std::uint64_t u) const { return u; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return nullptr;
      return d;
    }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

double parse_number(const std::string& name, const std::string& text) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("--" + name + ": not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(x)) {
    throw ValidationError("--" + name + ": not a finite number: '" + text + "'");
  }
  return x;
}

const std::vector<double>& values_or(const RunConfig& c, std::string_view name,
                                     const std::vector<double>& fallback) {
  const Range* r = c.find(name);
  return r ? r->values : fallback;
}

PureState input_state(const RunConfig& c) {
  return PureState({c.alpha, c.beta});
}

double binomial_sigma(double q, std::uint64_t trials) {
  return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

Value z_score(double rate, double q, double sigma) {
  if (!(sigma > 0.0)) return std::monostate{};
  return (rate - q) / sigma;
}

void check_domain(const Range& r) {
  for (double x : r.values) {
    bool ok = true;
    std::string domain;
    if (r.name == "a2") {
      ok = x >= 0.5 && x <= 1.0;
      domain = "[0.5, 1]";
    } else if (r.name == "p") {
      ok = x > 0.0 && x < 1.0;
      domain = "(0, 1)";
    } else if (r.name == "n") {
      ok = x >= 1.0;
      domain = "[1, inf)";
    } else if (r.name == "epsilon") {
      ok = x > 0.0 && x < 1.0;
      domain = "(0, 1)";
    } else {
      throw ValidationError("unknown sweep parameter '" + r.name + "'");
    }
    if (!ok) {
      throw ValidationError("--" + r.name + " value " + format_double(x) +
                            " outside " + domain);
    }
  }
}

Table teleport_table(const RunConfig& c) {
  Table t{{"trials", "seed", "max_probability_deviation", "min_fidelity",
           "mean_sampled_fidelity", "count_phi_plus", "count_phi_minus",
           "count_psi_plus", "count_psi_minus"},
          {}};
  const PureState singlet = bell_state(BellLabel::PsiMinus);
  double max_dev = 0.0;
  double min_fid = 1.0;
  double sampled = 0.0;
  std::array<std::uint64_t, 4> counts{};
  for (std::uint64_t i = 0; i < c.trials; ++i) {
    auto engine = trial_engine(c.seed, i);
    const PureState phi = haar_qubit(engine);
    const auto records = standard_teleport(phi, singlet);
    for (const ProtocolRecord& r : records) {
      max_dev = std::max(max_dev, std::abs(r.probability - 0.25));
      min_fid = std::min(min_fid, r.fidelity);
    }
    const std::size_t k = sample_branch(records, uniform01(engine));
    ++counts[k];
    sampled += records[k].fidelity;
  }
  t.rows.push_back({c.trials, c.seed, max_dev, min_fid,
                    sampled / static_cast<double>(c.trials), counts[0],
                    counts[1], counts[2], counts[3]});
  return t;
}

Table naive_table(const RunConfig& c) {
  Table t{{"a2", "alpha_re", "alpha_im", "beta_re", "beta_im",
           "phi_plus_probability", "phi_plus_probability_formula",
           "phi_plus_fidelity", "phi_plus_fidelity_formula", "mean_fidelity",
           "trials", "seed", "sampled_mean_fidelity"},
          {}};
  const PureState phi = input_state(c);
  static const std::vector<double> kDefault = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  for (double a2 : values_or(c, "a2", kDefault)) {
    const SchmidtPair s = SchmidtPair::from_a2(a2);
    const auto records = naive_partial_teleport(phi, s);
    double mean = 0.0;
    for (const ProtocolRecord& r : records) mean += r.probability * r.fidelity;
    double sampled = 0.0;
    for (std::uint64_t i = 0; i < c.trials; ++i) {
      auto engine = trial_engine(c.seed, i);
      sampled += records[sample_branch(records, uniform01(engine))].fidelity;
    }
    t.rows.push_back({a2, c.alpha.real(), c.alpha.imag(), c.beta.real(),
                      c.beta.imag(), records[0].probability,
                      naive_phi_plus_probability(phi, s), records[0].fidelity,
                      naive_phi_plus_fidelity(phi, s), mean, c.trials, c.seed,
                      sampled / static_cast<double>(c.trials)});
  }
  return t;
}

Table conclusive_table(const RunConfig& c) {
  Table t{{"a2", "success_probability", "trials", "seed", "successes",
           "empirical_rate", "sigma", "z_score", "wrong_outcomes",
           "min_success_fidelity"},
          {}};
  static const std::vector<double> kDefault = {0.8};
  constexpr double kExact = 1e-9;
  for (double a2 : values_or(c, "a2", kDefault)) {
    const SchmidtPair s = SchmidtPair::from_a2(a2);
    const ConclusiveTeleporter tele(s);
    std::uint64_t successes = 0;
    std::uint64_t wrong = 0;
    double min_fid = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < c.trials; ++i) {
      auto engine = trial_engine(c.seed, i);
      const PureState phi = haar_qubit(engine);
      const auto records = tele.run(phi);
      const ProtocolRecord& r =
          records[sample_branch(records, uniform01(engine))];
      if (!r.success) continue;
      ++successes;
      min_fid = std::min(min_fid, r.fidelity);
      if (r.fidelity < 1.0 - kExact) ++wrong;
    }
    const double q = conclusive_success_probability(s);
    const double rate =
        static_cast<double>(successes) / static_cast<double>(c.trials);
    const double sigma = binomial_sigma(q, c.trials);
    t.rows.push_back({a2, q, c.trials, c.seed, successes, rate, sigma,
                      z_score(rate, q, sigma), wrong,
                      successes ? Value{min_fid} : Value{}});
  }
  return t;
}

Table quasi_table(const RunConfig& c) {
  Table t{{"p", "n", "lambda", "epsilon", "p_prime", "simulated_p_prime",
           "success_prob", "simulated_success_prob", "fidelity_bound",
           "average_fidelity", "trials", "seed", "empirical_success_rate"},
          {}};
  const Range* n_range = c.find("n");
  const Range* eps_range = c.find("epsilon");
  if (n_range && eps_range) {
    throw ValidationError("quasi takes either --n or --epsilon, not both");
  }
  static const std::vector<double> kDefaultP = {0.5};
  static const std::vector<double> kDefaultEps = {0.01};
  const CorrectionTable table =
      CorrectionTable::for_bell_resource(BellLabel::PsiMinus);
  const PureState singlet = bell_state(BellLabel::PsiMinus);

  for (double p : values_or(c, "p", kDefaultP)) {
    const DensityMatrix rho = mixed_resource(p);
    std::vector<std::pair<double, Value>> points;  // (n, epsilon)
    if (n_range) {
      for (double n : n_range->values) points.emplace_back(n, Value{});
    } else {
      for (double eps : eps_range ? eps_range->values : kDefaultEps) {
        points.emplace_back(static_cast<double>(plan_filter_strength(p, eps)),
                            eps);
      }
    }
    for (const auto& [n, eps] : points) {
      const FilterParams fp = FilterParams::from_n(n);
      const FilterOutcome out = bilocal_filter(rho, fp);
      const double p_prime = filtered_singlet_fraction(p, n);

      const KrausSet local = filter_pair(ComplexMatrix::diagonal(
          {Complex{fp.lambda()}, Complex{1.0}}));
      const ComplexMatrix id = ComplexMatrix::identity(2);
      const KrausSet alice({kron(local.op(0), id), kron(local.op(1), id)});
      const KrausSet bob({kron(id, local.op(0)), kron(id, local.op(1))});
      std::uint64_t kept = 0;
      for (std::uint64_t i = 0; i < c.trials; ++i) {
        auto engine = trial_engine(c.seed, i);
        const MeasurementOutcome a = measure(alice, rho, uniform01(engine));
        if (a.index != 0) continue;
        const MeasurementOutcome b =
            measure(bob, a.post_state, uniform01(engine));
        if (b.index == 0) ++kept;
      }
      t.rows.push_back(
          {p, n, fp.lambda(), eps, p_prime, fidelity(singlet, out.post_state),
           filter_success_probability(p, n), out.success_probability,
           max_teleport_fidelity(p_prime),
           average_teleport_fidelity(out.post_state, table), c.trials, c.seed,
           static_cast<double>(kept) / static_cast<double>(c.trials)});
    }
  }
  return t;
}

Povm steer_povm(const RunConfig& c) {
  if (c.povm == "rectilinear") return rectilinear_povm();
  if (c.povm == "diagonal") return diagonal_povm();
  return teleportation_povm(c.alpha, c.beta);
}

Table steer_table(const RunConfig& c) {
  Table t{{"a2", "povm", "branch", "label", "probability", "defined",
           "bob_0_re", "bob_0_im", "bob_1_re", "bob_1_im", "hjw_residual"},
          {}};
  const bool b92 = c.povm == "b92" || c.povm == "b92-hadamard";
  static const std::vector<double> kB92Default = {0.8};
  static const std::vector<double> kSinglet = {};
  const Range* a2_range = c.find("a2");
  const std::vector<double>& a2s =
      a2_range ? a2_range->values : (b92 ? kB92Default : kSinglet);

  const auto emit_rows = [&](Value a2, const PureState& shared,
                             const SteeringResult& r) {
    const ComplexMatrix bob =
        partial_trace(shared.projector(), {2, 2}, Subsystem::A);
    const double residual = max_abs_diff(steered_density(r), bob);
    for (std::size_t i = 0; i < r.branches.size(); ++i) {
      const SteeringBranch& b = r.branches[i];
      t.rows.push_back({a2, c.povm, static_cast<std::uint64_t>(i), b.label,
                        b.probability, b.defined, b.bob_state[0].real(),
                        b.bob_state[0].imag(), b.bob_state[1].real(),
                        b.bob_state[1].imag(), residual});
    }
  };

  if (a2s.empty()) {
    const PureState shared = bell_state(BellLabel::PsiMinus);
    emit_rows(Value{}, shared, steer(shared, steer_povm(c)));
    return t;
  }
  for (double a2 : a2s) {
    const SchmidtPair s = SchmidtPair::from_a2(a2);
    const PureState shared = partially_entangled(s);
    if (b92) {
      emit_rows(a2, shared,
                b92_generation(s, c.povm == "b92" ? B92Basis::Diagonal
                                                  : B92Basis::HadamardRotated));
    } else {
      emit_rows(a2, shared, steer(shared, steer_povm(c)));
    }
  }
  return t;
}

Table povm_check_table(const RunConfig& c) {
  Table t{{"builder", "a2", "elements", "completeness_residual",
           "min_eigenvalue", "psd_ok", "complete_ok", "deviation"},
          {}};
  constexpr double kTol = 1e-9;
  const auto add = [&](std::string builder, Value a2,
                       const std::vector<ComplexMatrix>& elements,
                       Value deviation) {
    const double residual = completeness_residual(elements);
    const double least = min_eigenvalue(elements);
    t.rows.push_back({std::move(builder), a2,
                      static_cast<std::uint64_t>(elements.size()), residual,
                      least, least >= -kTol, residual < kTol, deviation});
  };

  const Povm tele = teleportation_povm(c.alpha, c.beta);
  add("telepovm", Value{}, tele.elements(), Value{});
  const auto projectors = telepovm_bell_projectors();
  const Povm induced = induced_povm(
      projectors, DensityMatrix::from_pure(input_state(c)));
  double dev = 0.0;
  for (std::size_t i = 0; i < tele.size(); ++i) {
    dev = std::max(dev, max_abs_diff(tele.element(i), induced.element(i)));
  }
  add("induced-bell", Value{}, induced.elements(), dev);

  static const std::vector<double> kDefault = {0.8};
  for (double a2 : values_or(c, "a2", kDefault)) {
    const SchmidtPair s = SchmidtPair::from_a2(a2);
    add("discrimination", a2, discrimination_povm(s).povm.elements(),
        Value{});
    add("discrimination-unnormalized", a2,
        unnormalized_discrimination_elements(s), Value{});
  }
  return t;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Teleport:
      return "teleport";
    case Command::Naive:
      return "naive";
    case Command::Conclusive:
      return "conclusive";
    case Command::Quasi:
      return "quasi";
    case Command::Steer:
      return "steer";
    case Command::PovmCheck:
      return "povm-check";
  }
  return "?";
}

const Range* RunConfig::find(std::string_view name) const {
  for (const Range& r : sweep) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

Range parse_range(const std::string& name, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (!text.empty() && text.back() == ':') parts.emplace_back();
  if (parts.size() == 1) return Range{name, {parse_number(name, parts[0])}};
  if (parts.size() != 3) {
    throw ValidationError("--" + name +
                          ": expected a value or start:stop:step, got '" +
                          text + "'");
  }
  const double start = parse_number(name, parts[0]);
  const double stop = parse_number(name, parts[1]);
  const double step = parse_number(name, parts[2]);
  if (!(step > 0.0)) throw ValidationError("--" + name + ": step must be > 0");
  if (start > stop) throw ValidationError("--" + name + ": start > stop");
  Range r{name, {}};
  for (std::size_t k = 0;; ++k) {
    double x = start + static_cast<double>(k) * step;
    if (x > stop + kStopSlack) break;
    if (std::abs(x - stop) <= kStopSlack) x = stop;
    r.values.push_back(x);
    if (r.values.size() > kMaxSweepPoints) {
      throw ValidationError("--" + name + ": too many sweep points");
    }
  }
  return r;
}

void validate(const RunConfig& c) {
  if (c.trials < 1) throw ValidationError("--trials must be >= 1");
  for (const Range& r : c.sweep) {
    if (r.values.empty()) {
      throw ValidationError("--" + r.name + ": empty range");
    }
    check_domain(r);
  }
  const double n2 = std::norm(c.alpha) + std::norm(c.beta);
  if (std::abs(n2 - 1.0) > Tolerance::kDefault) {
    throw ValidationError(
        "input state (alpha, beta) must satisfy |alpha|^2 + |beta|^2 = 1");
  }
  static const std::vector<std::string> kPovms = {
      "rectilinear", "diagonal", "telepovm", "b92", "b92-hadamard"};
  if (std::find(kPovms.begin(), kPovms.end(), c.povm) == kPovms.end()) {
    throw ValidationError("unknown --povm '" + c.povm + "'");
  }
}

Table build_table(const RunConfig& c) {
  validate(c);
  switch (c.command) {
    case Command::Teleport:
      return teleport_table(c);
    case Command::Naive:
      return naive_table(c);
    case Command::Conclusive:
      return conclusive_table(c);
    case Command::Quasi:
      return quasi_table(c);
    case Command::Steer:
      return steer_table(c);
    case Command::PovmCheck:
      return povm_check_table(c);
  }
  throw ValidationError("unknown command");
}

std::string render(const Table& table, Format format) {
  if (format == Format::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < table.columns.size(); ++i) {
        obj[table.columns[i]] = json_value(row.at(i));
      }
      arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
  }
  std::string out = "# schema=1\n";
  const auto line = [&](const auto& cells, auto to_text) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_quote(to_text(cells[i]));
    }
    out += '\n';
  };
  line(table.columns, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::logic_error("row width differs from header");
    }
    line(row, csv_field);
  }
  return out;
}

bool write_output(const std::string& text, const std::string& path,
                  std::ostream& out) {
  if (path == "-") {
    out << text;
    out.flush();
    return static_cast<bool>(out);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return false;
  file << text;
  file.flush();
  return static_cast<bool>(file);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = render(build_table(config), config.format);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!write_output(text, config.output_path, out)) {
    err << "error: cannot write output to '" << config.output_path << "'\n";
    return 1;
  }
  return 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Teleportation-as-POVM simulator: analytic sweeps and seeded "
               "Monte Carlo runs emitted as CSV or JSON tables.",
               "telepovm"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "csv";
  std::string a2;
  std::string p;
  std::string n;
  std::string epsilon;
  double alpha_re = config.alpha.real();
  double alpha_im = 0.0;
  double beta_re = config.beta.real();
  double beta_im = 0.0;

  app.add_option("--seed", config.seed, "Monte Carlo seed (u64)");
  app.add_option("--trials", config.trials, "Monte Carlo trials (>= 1)");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", config.output_path, "Output path, '-' for stdout");
  app.add_option("--a2", a2, "Schmidt weight a^2: value or start:stop:step");
  app.add_option("--p", p, "Singlet weight p: value or start:stop:step");
  app.add_option("--n", n, "Filter index n: value or start:stop:step");
  app.add_option("--epsilon", epsilon,
                 "Fidelity shortfall: value or start:stop:step");
  app.add_option("--alpha-re", alpha_re, "Re(alpha) of the input state");
  app.add_option("--alpha-im", alpha_im, "Im(alpha) of the input state");
  app.add_option("--beta-re", beta_re, "Re(beta) of the input state");
  app.add_option("--beta-im", beta_im, "Im(beta) of the input state");
  app.add_option("--povm", config.povm, "Alice's POVM for steer")
      ->check(CLI::IsMember(
          {"rectilinear", "diagonal", "telepovm", "b92", "b92-hadamard"}));

  const std::pair<const char*, Command> commands[] = {
      {"teleport", Command::Teleport},
      {"naive", Command::Naive},
      {"conclusive", Command::Conclusive},
      {"quasi", Command::Quasi},
      {"steer", Command::Steer},
      {"povm-check", Command::PovmCheck},
  };
  const std::pair<const char*, const char*> blurbs[] = {
      {"teleport", "Standard teleportation over the singlet"},
      {"naive", "Standard protocol over a|00> + b|11>"},
      {"conclusive", "Conclusive teleportation success statistics"},
      {"quasi", "Bilocal filtering then teleportation over rho_p"},
      {"steer", "Bob's ensemble steered by Alice's POVM"},
      {"povm-check", "PSD and completeness of every POVM builder"},
  };
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, blurbs[i].second);
    sub->fallthrough();
    const Command cmd = commands[i].second;
    sub->callback([&config, cmd] { config.command = cmd; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    config.format = format == "json" ? Format::Json : Format::Csv;
    config.alpha = Complex{alpha_re, alpha_im};
    config.beta = Complex{beta_re, beta_im};
    const std::pair<const char*, const std::string*> ranges[] = {
        {"a2", &a2}, {"p", &p}, {"n", &n}, {"epsilon", &epsilon}};
    for (const auto& [name, text] : ranges) {
      if (!text->empty()) config.sweep.push_back(parse_range(name, *text));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return 2;
  }
  return run(config, out, err);
}

}  // namespace telepovm::cli
