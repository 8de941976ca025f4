#pragma once

// Serialization for the command-line front end. Input potentials are parsed
// with nlohmann::json; output is written by a small emitter so that numbers
// always carry 12 significant digits, independent of locale.

#include <array>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "robinsl/eigensolver.hpp"
#include "robinsl/errors.hpp"
#include "robinsl/extremals.hpp"
#include "robinsl/potential.hpp"
#include "robinsl/verify.hpp"

namespace robinsl {

/// 12 significant digits, '.' decimal separator; non-finite values become
/// "null" in JSON and "nan"/"inf" in CSV.
inline std::string format_number(double v, bool json = true) {
  if (!std::isfinite(v)) {
    if (json) return "null";
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  }
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

/// Minimal streaming JSON writer with fixed field order.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view k) {
    separate();
    quote(k);
    out_ += ':';
    after_key_ = true;
    return *this;
  }
  JsonWriter& value(double v) { return raw(format_number(v)); }
  JsonWriter& value(int v) { return raw(std::to_string(v)); }
  JsonWriter& value(std::uint64_t v) { return raw(std::to_string(v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(std::string_view v) {
    separate();
    quote(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }

  const std::string& str() const { return out_; }

 private:
  JsonWriter& open(char c) {
    separate();
    out_ += c;
    first_ = true;
    return *this;
  }
  JsonWriter& close(char c) {
    out_ += c;
    first_ = false;
    return *this;
  }
  JsonWriter& raw(const std::string& s) {
    separate();
    out_ += s;
    return *this;
  }
  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_) out_ += ',';
    first_ = false;
  }
  void quote(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        default: out_ += c;
      }
    }
    out_ += '"';
  }

  std::string out_;
  bool first_ = true;
  bool after_key_ = false;
};

/// Parses {"segments":[{"l":..,"r":..,"v":..}],"atoms":[{"z":..,"w":..}]}.
/// Both arrays are optional. Throws InvalidArgument on malformed input.
inline Potential parse_potential(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed potential JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("potential JSON must be an object");
  const auto number = [](const nlohmann::json& obj, const char* name) {
    if (!obj.is_object() || !obj.contains(name) || !obj.at(name).is_number())
      throw InvalidArgument(std::string("potential JSON: missing numeric field '") + name + "'");
    return obj.at(name).get<double>();
  };
  std::vector<Segment> segments;
  std::vector<DeltaAtom> atoms;
  if (j.contains("segments")) {
    if (!j["segments"].is_array()) throw InvalidArgument("'segments' must be an array");
    for (const auto& s : j["segments"]) segments.push_back({number(s, "l"), number(s, "r"), number(s, "v")});
  }
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) throw InvalidArgument("'atoms' must be an array");
    for (const auto& a : j["atoms"]) atoms.push_back({number(a, "z"), number(a, "w")});
  }
  return Potential(std::move(segments), std::move(atoms));
}

inline void write_potential(JsonWriter& w, const Potential& q) {
  w.begin_object().key("segments").begin_array();
  for (const Segment& s : q.segments())
    w.begin_object().key("l").value(s.left).key("r").value(s.right).key("v").value(s.value).end_object();
  w.end_array().key("atoms").begin_array();
  for (const DeltaAtom& a : q.atoms())
    w.begin_object().key("z").value(a.position).key("w").value(a.weight).end_object();
  w.end_array().end_object();
}

inline std::string potential_to_json(const Potential& q) {
  JsonWriter w;
  write_potential(w, q);
  return w.str();
}

inline void write_bc(JsonWriter& w, const RobinBC& bc) {
  w.begin_object().key("k0sq").value(bc.k0sq).key("k1sq").value(bc.k1sq).end_object();
}

inline std::string eigen_result_to_json(const EigenResult& r, const RobinBC& bc) {
  JsonWriter w;
  w.begin_object();
  w.key("bc");
  write_bc(w, bc);
  w.key("lambda1").value(r.lambda1);
  w.key("bracket_width").value(r.bracket_width);
  w.key("residual").value(r.residual);
  w.key("eigenfunction").begin_array();
  for (const Sample& s : r.eigenfunction) w.begin_array().value(s.x).value(s.y).end_array();
  w.end_array().end_object();
  return w.str();
}

inline void write_extremum(JsonWriter& w, const ExtremumReport& r) {
  w.begin_object();
  w.key("kind").value(to_string(r.kind));
  w.key("value").value(r.value);
  w.key("cross_check").value(r.cross_check);
  w.key("branch").value(r.branch);
  w.key("q_star");
  write_potential(w, r.q_star);
  w.end_object();
}

inline std::string extrema_to_json(const RobinBC& bc, const std::array<ExtremumReport, 4>& reps) {
  JsonWriter w;
  w.begin_object().key("bc");
  write_bc(w, bc);
  w.key("extrema").begin_array();
  for (const ExtremumReport& r : reps) write_extremum(w, r);
  w.end_array().end_object();
  return w.str();
}

inline std::string sample_report_to_json(const SampleReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("seed").value(rep.seed);
  w.key("n_samples").value(rep.n_samples);
  w.key("bc");
  write_bc(w, rep.bc);
  w.key("classes").begin_array();
  for (int c = 1; c >= 0; --c) {
    w.begin_object();
    w.key("sign").value(c == 1 ? 1 : -1);
    w.key("count").value(rep.counts[c]);
    w.key("min_seen").value(rep.min_seen[c]);
    w.key("max_seen").value(rep.max_seen[c]);
    w.key("lower_bound").value(rep.lower_bound[c]);
    w.key("upper_bound").value(rep.upper_bound[c]);
    w.end_object();
  }
  w.end_array();
  w.key("extremum_gaps").begin_object();
  const std::array kinds{ExtremumKind::M1plus, ExtremumKind::M1minus, ExtremumKind::m1plus,
                         ExtremumKind::m1minus};
  for (std::size_t k = 0; k < kinds.size(); ++k) w.key(to_string(kinds[k])).value(rep.extremum_gaps[k]);
  w.end_object();
  w.key("violations").begin_array();
  for (const Violation& v : rep.violations) {
    w.begin_object();
    w.key("sign").value(v.sign);
    w.key("lambda1").value(v.lambda1);
    w.key("bound").value(v.bound);
    w.key("gap").value(v.gap);
    w.key("q");
    write_potential(w, v.q);
    w.end_object();
  }
  w.end_array().end_object();
  return w.str();
}

}  // namespace robinsl
