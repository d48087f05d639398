#pragma once

// Command-line front end. `run_cli` is the whole program minus process
// plumbing, so tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 2 input error, 3 mathematical precondition failure,
// 4 verification failure or oracle budget exhausted.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "padic_lattice/instance_io.hpp"
#include "padic_lattice/solvers.hpp"

namespace padic::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kPreconditionError = 3, kVerifyFailure = 4 };

inline constexpr const char* kBudgetEnv = "PADIC_ORACLE_BUDGET";

/// Error carrying its exit code up to run_cli.
struct Failure {
  int code;
  std::string message;
};

inline std::uint64_t oracle_budget() {
  const char* env = std::getenv(kBudgetEnv);
  if (env == nullptr || *env == '\0') return kDefaultOracleBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw Failure{kInputError, std::string(kBudgetEnv) + " must be a positive integer"};
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInputError, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kInputError, "cannot write " + path};
}

struct Loaded {
  InstanceFile file;
  std::optional<LatticeBasis> basis;
};

inline Loaded load(const std::string& path) {
  Loaded l;
  try {
    l.file = parse_instance(read_file(path));
  } catch (const ParseError& e) {
    throw Failure{kInputError, path + ":" + e.what()};
  }
  l.basis = basis_of(l.file, space_of(l.file));
  return l;
}

/// Collects result fields and renders them as text lines or a JSON object.
class Report {
 public:
  Report(std::string command, std::string digest) {
    add("command", std::move(command));
    add("instance", std::move(digest));
  }

  void add(const std::string& key, std::string value) { fields_.push_back({key, Value{std::move(value), {}}}); }
  void add_rows(const std::string& key, const Mat& rows) {
    std::vector<std::string> r;
    for (const auto& v : rows) r.push_back(to_string(v));
    fields_.push_back({key, Value{std::nullopt, std::move(r)}});
  }

  std::string render(bool json) const {
    if (json) {
      nlohmann::ordered_json j;
      for (const auto& [k, v] : fields_) {
        if (v.scalar) {
          j[k] = *v.scalar;
        } else {
          j[k] = v.rows;
        }
      }
      return j.dump(2) + "\n";
    }
    std::string out;
    for (const auto& [k, v] : fields_) {
      if (v.scalar) {
        out += k + ": " + *v.scalar + "\n";
      } else {
        out += k + ":\n";
        for (const auto& r : v.rows) out += "  " + r + "\n";
      }
    }
    return out;
  }

 private:
  struct Value {
    std::optional<std::string> scalar;
    std::vector<std::string> rows;
  };
  std::vector<std::pair<std::string, Value>> fields_;
};

inline std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

struct Options {
  std::string file;
  bool via_cvp = false;
  bool verify = false;
  std::size_t ladder = 5;
  std::string format = "text";

  // gen
  std::int64_t p = 2;
  std::size_t dim = 4;
  std::size_t rank = 4;
  std::uint64_t seed = 1;
  std::string out;
  std::string weights = "zero";
  long wlo = 0;
  long whi = 0;
  long vmin = 0;
  long vmax = 3;
  bool random_frame = false;
  bool target = false;
  bool orthogonal = false;
  std::optional<std::size_t> ops;
};

inline Report cmd_orthogonalize(const Options& o) {
  const Loaded l = load(o.file);
  Report r(o.via_cvp ? "orthogonalize --via-cvp" : "orthogonalize", instance_digest(l.file));
  const Prime p = l.basis->prime();
  if (o.via_cvp) {
    const auto res = orthogonalize_via_cvp_detailed(*l.basis, cvp_with_frame);
    r.add_rows("basis", res.basis.vectors());
    r.add("norms", join_norms(p, res.basis.norms()));
    r.add("oracle-calls", std::to_string(res.oracle_calls));
  } else {
    const auto res = orthogonalize_with_frame_detailed(*l.basis);
    r.add_rows("basis", res.basis.vectors());
    r.add("norms", join_norms(p, res.basis.norms()));
    r.add("frame-order", join_indices(res.frame_order));
  }
  return r;
}

inline Report cmd_cvp(const Options& o, int& code) {
  const Loaded l = load(o.file);
  if (!l.file.target) throw Failure{kInputError, o.file + ": target: missing (required by cvp)"};
  Report r(o.verify ? "cvp --verify" : "cvp", instance_digest(l.file));
  const Prime p = l.basis->prime();
  const CvpSolution sol = cvp_with_frame(*l.basis, *l.file.target);
  r.add("vector", to_string(sol.vector));
  r.add("coefficients", to_string(sol.coefficients));
  r.add("distance", sol.distance.str(p));
  if (o.verify) {
    const CvpSolution ref = brute_cvp(*l.basis, *l.file.target, oracle_budget());
    const bool ok = ref.distance == sol.distance && l.basis->space().norm(*l.file.target - sol.vector) == sol.distance &&
                    contains(*l.basis, sol.vector);
    r.add("oracle-distance", ref.distance.str(p));
    r.add("verify", ok ? "PASS" : "FAIL");
    if (!ok) code = kVerifyFailure;
  }
  return r;
}

inline Report cmd_lvp(const Options& o, int& code) {
  const Loaded l = load(o.file);
  Report r(o.verify ? "lvp --verify" : "lvp", instance_digest(l.file));
  const Prime p = l.basis->prime();
  const LvpSolution sol = lvp_with_frame(*l.basis);
  r.add("vector", to_string(sol.vector));
  r.add("coefficients", to_string(sol.coefficients));
  r.add("norm", sol.norm.str(p));
  if (o.verify) {
    const LvpSolution ref = brute_lambda2(*l.basis);
    const bool ok = ref.norm == sol.norm && l.basis->space().norm(sol.vector) == sol.norm && contains(*l.basis, sol.vector);
    r.add("oracle-norm", ref.norm.str(p));
    r.add("verify", ok ? "PASS" : "FAIL");
    if (!ok) code = kVerifyFailure;
  }
  return r;
}

inline Report cmd_invariants(const Options& o) {
  const Loaded l = load(o.file);
  Report r("invariants --ladder " + std::to_string(o.ladder), instance_digest(l.file));
  const Prime p = l.basis->prime();
  const InvariantReport inv = compute_invariants(*l.basis, o.ladder);
  r.add("lambda~", join_norms(p, inv.maxima));
  r.add("mu", inv.escape ? inv.escape->str(p) : "undefined: not full rank");
  r.add("ladder", join_norms(p, inv.ladder));
  return r;
}

/// Validates an instance and, with --verify, cross-checks every solver
/// against its independent counterpart.
inline Report cmd_check(const Options& o, int& code) {
  const Loaded l = load(o.file);
  Report r(o.verify ? "check --verify" : "check", instance_digest(l.file));
  const LatticeBasis& b = *l.basis;
  r.add("status", "valid");
  r.add("p", std::to_string(b.prime().value()));
  r.add("dim", std::to_string(b.dim()));
  r.add("rank", std::to_string(b.rank()));
  r.add("orthogonal", is_orthogonal_basis(b) ? "yes" : "no");
  if (o.verify) {
    bool ok = true;
    const auto frame = orthogonalize_with_frame(b);
    const auto via = orthogonalize_via_cvp(b, cvp_with_frame);
    ok = ok && sorted_descending(frame.norms()) == sorted_descending(via.norms());
    ok = ok && same_lattice(b, frame) && same_lattice(b, via) && is_orthogonal_basis(frame) && is_orthogonal_basis(via);
    ok = ok && lvp_with_frame(b).norm == brute_lambda2(b).norm;
    if (l.file.target) {
      ok = ok && cvp_with_frame(b, *l.file.target).distance == brute_cvp(b, *l.file.target, oracle_budget()).distance;
    }
    r.add("verify", ok ? "PASS" : "FAIL");
    if (!ok) code = kVerifyFailure;
  }
  return r;
}

inline Report cmd_gen(const Options& o) {
  if (o.out.empty()) throw Failure{kInputError, "gen needs --out"};
  GenParams g;
  g.p = o.p;
  g.dim = o.dim;
  g.rank = o.rank;
  g.seed = o.seed;
  g.val_lo = o.vmin;
  g.val_hi = o.vmax;
  g.random_frame = o.random_frame;
  g.with_target = o.target;
  g.scramble_ops = o.ops;
  g.scramble = o.orthogonal ? OpCheck::Full : OpCheck::LatticeOnly;
  g.ladder_len = o.ladder;
  g.weights.lo = o.wlo;
  g.weights.hi = o.whi;
  if (o.weights == "zero") {
    g.weights.kind = WeightSpec::Kind::Zero;
  } else if (o.weights == "int") {
    g.weights.kind = WeightSpec::Kind::Integer;
  } else {
    g.weights.kind = WeightSpec::Kind::Half;
  }
  const GeneratedInstance inst = [&] {
    try {
      return gen_instance(g);
    } catch (const InvalidParameter& e) {
      throw Failure{kInputError, e.what()};
    }
  }();
  const InstanceFile f = instance_of(inst);
  const std::string truth_path = o.out + ".truth";
  write_file(o.out, serialize_instance(f));
  write_file(truth_path, format_report(inst.space->prime(), inst.truth));
  Report r("gen --p " + std::to_string(o.p) + " --dim " + std::to_string(o.dim) + " --rank " + std::to_string(o.rank) +
               " --seed " + std::to_string(o.seed),
           instance_digest(f));
  r.add("wrote", o.out);
  r.add("truth", truth_path);
  return r;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonal bases, CVP/LVP solvers and invariants of p-adic lattices"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "Instance file (JSON)")->required(); };

  auto* orth = app.add_subcommand("orthogonalize", "Print an orthogonal basis of the lattice");
  add_file(orth);
  orth->add_flag("--via-cvp", o.via_cvp, "Use the CVP-oracle algorithm instead of frame elimination");
  add_format(orth);

  auto* cvp = app.add_subcommand("cvp", "Closest lattice vector to the instance target");
  add_file(cvp);
  cvp->add_flag("--verify", o.verify, "Re-check against the brute-force oracle");
  add_format(cvp);

  auto* lvp = app.add_subcommand("lvp", "A lattice vector of norm lambda_2");
  add_file(lvp);
  lvp->add_flag("--verify", o.verify, "Re-check against the brute-force oracle");
  add_format(lvp);

  auto* inv = app.add_subcommand("invariants", "Successive maxima, escape distance and norm ladder");
  add_file(inv);
  inv->add_option("--ladder", o.ladder, "Number of ladder values")->check(CLI::PositiveNumber);
  add_format(inv);

  auto* chk = app.add_subcommand("check", "Validate an instance");
  add_file(chk);
  chk->add_flag("--verify", o.verify, "Cross-check all solvers against the oracles");
  add_format(chk);

  auto* gen = app.add_subcommand("gen", "Generate a seeded instance with known invariants");
  gen->add_option("--p", o.p, "Prime")->required();
  gen->add_option("--dim", o.dim, "Dimension")->required();
  gen->add_option("--rank", o.rank, "Lattice rank")->required();
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--out", o.out, "Output instance path; ground truth goes to <out>.truth")->required();
  gen->add_option("--weights", o.weights, "Frame weights")->check(CLI::IsMember({"zero", "int", "half"}));
  gen->add_option("--wlo", o.wlo, "Lowest weight");
  gen->add_option("--whi", o.whi, "Highest weight");
  gen->add_option("--vmin", o.vmin, "Lowest diagonal valuation");
  gen->add_option("--vmax", o.vmax, "Highest diagonal valuation");
  gen->add_option("--ops", o.ops, "Number of re-basing operations");
  gen->add_option("--ladder", o.ladder, "Ladder length in the truth file")->check(CLI::PositiveNumber);
  gen->add_flag("--random-frame", o.random_frame, "Use a random invertible integer frame");
  gen->add_flag("--target", o.target, "Include a random CVP target");
  gen->add_flag("--orthogonal", o.orthogonal, "Re-base only with norm-bounded operations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  int code = kOk;
  try {
    std::optional<Report> r;
    if (*orth) r = cmd_orthogonalize(o);
    if (*cvp) r = cmd_cvp(o, code);
    if (*lvp) r = cmd_lvp(o, code);
    if (*inv) r = cmd_invariants(o);
    if (*chk) r = cmd_check(o, code);
    if (*gen) r = cmd_gen(o);
    out << r->render(o.format == "json");
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionError;
  }
  return code;
}

}  // namespace padic::cli
