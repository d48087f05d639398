#pragma once

// Instance files: one JSON document per instance, every rational written as a
// string "a" or "a/b".
//
//   {
//     "p": 2,
//     "dim": 4,
//     "frame": [["1", "0", ...], ...],     optional, default identity
//     "weights": ["0", "0", "0", "0"],     optional, default zeros
//     "basis": [["1", "0", "0", "0"], ...],
//     "target": ["1", "2", "0", "0"]       optional
//   }

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "padic_lattice/errors.hpp"
#include "padic_lattice/generator.hpp"
#include "padic_lattice/lattice.hpp"

namespace padic {

struct InstanceFile {
  std::int64_t p = 2;
  std::size_t dim = 0;
  std::optional<Mat> frame;
  std::optional<std::vector<Rat>> weights;
  Mat basis;
  std::optional<Vec> target;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Rat rat_field(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a rational string such as \"3\" or \"-1/2\"");
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const InvalidParameter& e) {
    throw ParseError(path, e.what());
  }
}

inline Vec vec_field(const Json& j, const std::string& path, std::size_t len) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  if (j.size() != len) {
    throw ParseError(path, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  }
  Vec v;
  v.reserve(len);
  for (std::size_t i = 0; i < len; ++i) v.push_back(rat_field(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline Mat mat_field(const Json& j, const std::string& path, std::optional<std::size_t> rows, std::size_t cols) {
  if (!j.is_array()) throw ParseError(path, "expected an array of rows");
  if (rows && j.size() != *rows) {
    throw ParseError(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(j.size()));
  }
  Mat m;
  for (std::size_t i = 0; i < j.size(); ++i) m.push_back(vec_field(j[i], path + "[" + std::to_string(i) + "]", cols));
  return m;
}

inline std::string quoted_row(const Vec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += '"' + v[i].str() + '"';
  }
  return out + "]";
}

inline std::string quoted_matrix(const Mat& m) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += "    " + quoted_row(m[i]) + (i + 1 < m.size() ? ",\n" : "\n");
  }
  return out + "  ]";
}

}  // namespace detail

/// Parses and structurally validates an instance. Mathematical checks (prime,
/// invertible frame, independent basis) happen when building the space and
/// basis.
inline InstanceFile parse_instance(std::string_view text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col), "invalid JSON");
  }
  if (!j.is_object()) throw ParseError("line 1, column 1", "expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "p" && key != "dim" && key != "frame" && key != "weights" && key != "basis" && key != "target") {
      throw ParseError(key, "unknown field");
    }
  }
  InstanceFile f;
  if (!j.contains("p") || !j["p"].is_number_integer()) throw ParseError("p", "expected an integer prime");
  f.p = j["p"].get<std::int64_t>();
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    throw ParseError("dim", "expected a positive integer");
  }
  f.dim = j["dim"].get<std::size_t>();
  if (j.contains("frame")) f.frame = detail::mat_field(j["frame"], "frame", f.dim, f.dim);
  if (j.contains("weights")) f.weights = detail::vec_field(j["weights"], "weights", f.dim);
  if (!j.contains("basis")) throw ParseError("basis", "missing");
  f.basis = detail::mat_field(j["basis"], "basis", std::nullopt, f.dim);
  if (f.basis.empty()) throw ParseError("basis", "needs at least one vector");
  if (j.contains("target")) f.target = detail::vec_field(j["target"], "target", f.dim);
  return f;
}

/// Canonical text: fixed key order, one matrix row per line, LF endings.
inline std::string serialize_instance(const InstanceFile& f) {
  std::string out = "{\n";
  out += "  \"p\": " + std::to_string(f.p) + ",\n";
  out += "  \"dim\": " + std::to_string(f.dim) + ",\n";
  if (f.frame) out += "  \"frame\": " + detail::quoted_matrix(*f.frame) + ",\n";
  if (f.weights) out += "  \"weights\": " + detail::quoted_row(*f.weights) + ",\n";
  out += "  \"basis\": " + detail::quoted_matrix(f.basis);
  if (f.target) out += ",\n  \"target\": " + detail::quoted_row(*f.target);
  out += "\n}\n";
  return out;
}

inline SpacePtr space_of(const InstanceFile& f) {
  return make_space(f.p, f.frame.value_or(identity(f.dim)), f.weights.value_or(std::vector<Rat>(f.dim, Rat(0))));
}

inline LatticeBasis basis_of(const InstanceFile& f, SpacePtr space) { return LatticeBasis(std::move(space), f.basis); }

inline InstanceFile instance_of(const GeneratedInstance& g) {
  InstanceFile f;
  f.p = g.space->prime().value();
  f.dim = g.space->dim();
  f.frame = g.space->frame();
  f.weights = g.space->weights();
  f.basis = g.basis.vectors();
  f.target = g.target;
  return f;
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string instance_digest(const InstanceFile& f) { return "fnv1a64:" + fnv1a_hex(serialize_instance(f)); }

}  // namespace padic
